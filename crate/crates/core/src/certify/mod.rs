//! Certificates: invariants of an algebra combined by applicability-guarded rules
//! into verdicts with the evidence they used.

pub mod invariants;
pub mod rules;
pub mod shapes;

use std::fmt;

use serde::Serialize;

use crate::algebra::radical::DEFAULT_MAX_ENUM;
use crate::algebra::StructureAlgebra;
use crate::forms::nonsingular::DEFAULT_PRIMES;
use crate::forms::quadratic::DEFAULT_HEIGHT_BOUND;
use crate::presentation::Presentation;

pub use invariants::{Invariants, Summary, UnknownEntry};
pub use rules::{apply_rules, rule_ids, Verdict};
pub use shapes::{reductive_shape, section6_verify, torus_shape_check, ReductiveReport, Section6Report, TorusShapeReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisConfig {
    pub height_bound: u64,
    pub primes: Vec<u64>,
    pub max_enum: u128,
    /// Derivations are skipped above this algebra dimension.
    pub max_der_dim: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { height_bound: DEFAULT_HEIGHT_BOUND, primes: DEFAULT_PRIMES.to_vec(), max_enum: DEFAULT_MAX_ENUM, max_der_dim: 64 }
    }
}

/// Properties reported as unknown when no verdict settles them, with the flags that do.
const TRACKED: [(&str, &[&str]); 4] = [
    ("R_TRIVIAL", &["R_TRIVIAL"]),
    ("RATIONAL", &["RATIONAL"]),
    ("STABLY_RATIONAL", &["STABLY_RATIONAL", "RATIONAL"]),
    ("RANK", &["RANK"]),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub summary: Summary,
    pub invariants: Invariants,
    pub verdicts: Vec<Verdict>,
    pub unknowns: Vec<UnknownEntry>,
    /// Rules whose guards failed, with the reason.
    #[serde(skip)]
    pub log: Vec<String>,
}

impl Certificate {
    pub fn flags(&self) -> Vec<&str> {
        self.verdicts.iter().map(|v| v.flag.as_str()).collect()
    }

    pub fn has(&self, flag: &str, rule: &str) -> bool {
        self.verdicts.iter().any(|v| v.flag == flag && v.rule == rule)
    }

    pub fn fired_rules(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for v in &self.verdicts {
            if !out.contains(&v.rule.as_str()) {
                out.push(&v.rule);
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.summary;
        writeln!(f, "algebra: dim {} over {}, commutative: {}", s.dim, s.field, s.commutative)?;
        let opt = |b: Option<bool>| b.map_or("unknown".to_string(), |b| b.to_string());
        writeln!(f, "local: {}, split basic: {}, split local: {}", opt(s.local), opt(s.split_basic), opt(s.split_local))?;
        let inv = serde_json::to_value(&self.invariants).expect("invariants serialize");
        writeln!(f, "invariants:")?;
        if let serde_json::Value::Object(map) = inv {
            for (k, v) in map {
                if !v.is_null() {
                    writeln!(f, "  {k}: {v}")?;
                }
            }
        }
        writeln!(f, "verdicts:")?;
        for v in &self.verdicts {
            writeln!(f, "  {} [{}] {}", v.flag, v.rule, v.evidence)?;
        }
        if !self.unknowns.is_empty() {
            writeln!(f, "unknowns:")?;
            for u in &self.unknowns {
                writeln!(f, "  {}: {}", u.property, u.reason)?;
            }
        }
        Ok(())
    }
}

pub fn certify_algebra(a: &StructureAlgebra, cfg: &AnalysisConfig) -> Certificate {
    build(a, None, cfg)
}

/// Certificate for `k[X]/I`; the given generators are kept for the presentation invariants.
pub fn certify_presentation(p: &Presentation, cfg: &AnalysisConfig) -> Certificate {
    build(&p.quotient_algebra(), Some(p), cfg)
}

fn build(a: &StructureAlgebra, p: Option<&Presentation>, cfg: &AnalysisConfig) -> Certificate {
    let analysis = invariants::analyze(a, p, cfg);
    let outcome = apply_rules(&analysis.summary, &analysis.invariants, a.field().characteristic());
    let mut unknowns = analysis.unknowns;
    for (property, flags) in TRACKED {
        if !outcome.verdicts.iter().any(|v| flags.contains(&v.flag.as_str())) {
            unknowns.push(UnknownEntry { property: property.into(), reason: "no rule applies".into() });
        }
    }
    Certificate { summary: analysis.summary, invariants: analysis.invariants, verdicts: outcome.verdicts, unknowns, log: outcome.log }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::structure::examples::*;
    use crate::exactmath::Field;
    use crate::poly::parse_poly;

    fn pres(field: Field, n: usize, l: usize, gens: &[&str]) -> Presentation {
        Presentation::from_ideal(field, n, l, gens.iter().map(|g| parse_poly(g, n, field).unwrap()).collect()).unwrap()
    }

    fn bound(c: &Certificate, flag: &str) -> Vec<u64> {
        c.verdicts.iter().filter(|v| v.flag == flag).map(|v| v.evidence["bound"].as_u64().unwrap()).collect()
    }

    #[test]
    fn square_zero_radical() {
        let c = certify_presentation(&pres(Field::Rationals, 6, 2, &[]), &AnalysisConfig::default());
        assert!(c.has("R_TRIVIAL", "R-J2"));
        assert!(c.has("REDUCTIVE", "R-RED"));
    }

    #[test]
    fn anisotropic_quadric() {
        let c = certify_presentation(&pres(Field::Rationals, 2, 3, &["X1^2 + X2^2"]), &AnalysisConfig::default());
        assert!(c.has("R_TRIVIAL", "R-DIM5"));
        assert!(c.has("NOT_K_SPLIT", "R-QANIS"));
        assert!(c.has("RATIONAL", "R-QRAT"));
        let c5 = certify_presentation(&pres(Field::Prime(5), 2, 3, &["X1^2 + X2^2"]), &AnalysisConfig::default());
        assert!(!c5.fired_rules().contains(&"R-QANIS"));
        assert!(c5.has("R_TRIVIAL", "R-DIM5"));
        let q = c5.invariants.presentation.as_ref().unwrap().quadratic.as_ref().unwrap();
        assert_eq!(q.witness, Some(vec!["1".to_string(), "2".to_string()]));
    }

    #[test]
    fn matrix_algebra_is_semisimple() {
        let c = certify_algebra(&matrix_algebra(Field::Rationals, 2), &AnalysisConfig::default());
        assert!(c.has("SEMISIMPLE", "R-SEMI"));
        assert!(c.has("R_TRIVIAL", "R-SEMI"));
        assert_eq!(c.summary.local, Some(false));
    }

    #[test]
    fn rank_bounds_are_consistent() {
        let cfg = AnalysisConfig::default();
        for p in [
            pres(Field::Rationals, 2, 4, &["X1^2", "X1^3 + X2^3"]),
            pres(Field::Rationals, 3, 3, &["X2^2 + X3^2"]),
            pres(Field::Rationals, 2, 3, &["X1*X2"]),
        ] {
            let c = certify_presentation(&p, &cfg);
            let ub = bound(&c, "RANK_UPPER_BOUND");
            assert_eq!(ub.len(), 1);
            assert!(bound(&c, "RANK_LOWER_BOUND").iter().all(|&lb| lb <= ub[0]));
        }
    }

    #[test]
    fn nonsingular_cubic_gives_rank_one() {
        let c = certify_presentation(&pres(Field::Rationals, 2, 4, &["X1^3 + X2^3"]), &AnalysisConfig::default());
        assert!(c.has("RATIONAL", "R-NONSING"));
        assert!(c.has("RATIONAL", "R-W1"));
        assert!(c.has("K_ISOTROPIC", "R-ISO"));
    }

    #[test]
    fn unknowns_when_nothing_applies() {
        let c = certify_algebra(&truncated_polynomial(Field::Rationals, 9), &AnalysisConfig { max_der_dim: 4, ..Default::default() });
        assert!(c.unknowns.iter().any(|u| u.property == "derivations"));
        assert!(c.has("R_TRIVIAL", "R-DIM5"));
    }
}
