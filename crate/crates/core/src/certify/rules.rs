use serde::Serialize;
use serde_json::{json, Value};

use super::invariants::{FormRole, Invariants, NonsingularityReport, Summary};
use crate::algebra::SplitStatus;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub flag: String,
    pub rule: String,
    pub evidence: Value,
}

/// Fired verdicts plus one line per rule whose guard failed.
#[derive(Default)]
pub struct RuleOutcome {
    pub verdicts: Vec<Verdict>,
    pub log: Vec<String>,
}

impl RuleOutcome {
    fn fire(&mut self, rule: &str, flags: &[&str], evidence: Value) {
        for flag in flags {
            self.verdicts.push(Verdict { flag: (*flag).to_string(), rule: rule.to_string(), evidence: evidence.clone() });
        }
    }

    fn skip(&mut self, rule: &str, why: &str) {
        self.log.push(format!("{rule} skipped: {why}"));
    }

    pub fn has(&self, flag: &str) -> bool {
        self.verdicts.iter().any(|v| v.flag == flag)
    }
}

struct Ctx<'a> {
    s: &'a Summary,
    inv: &'a Invariants,
    characteristic: u64,
}

impl Ctx<'_> {
    fn split(&self) -> bool {
        matches!(self.s.split_status, Some(SplitStatus::Split | SplitStatus::SplitBasic))
    }

    fn split_local(&self) -> bool {
        self.s.split_local == Some(true)
    }

    /// Degree and characteristic conditions for a nonsingular form to give rationality.
    fn degree_ok(&self, d: usize) -> bool {
        match self.characteristic {
            0 => d >= 3,
            p => p > 3 && d > 2 && (d as u64) < p,
        }
    }
}

type Rule = fn(&Ctx, &mut RuleOutcome);

const RULES: [(&str, Rule); 16] = [
    ("R-SEMI", r_semi),
    ("R-RED", r_red),
    ("R-J2", r_j2),
    ("R-DIM5", r_dim5),
    ("R-RANKUB", r_rankub),
    ("R-MONO", r_mono),
    ("R-STAR", r_star),
    ("R-QRAT", r_qrat),
    ("R-QANIS", r_qanis),
    ("R-NONSING", r_nonsing),
    ("R-W1", r_w1),
    ("R-FLAG", r_flag),
    ("R-NILP", r_nilp),
    ("R-DIM7", r_dim7),
    ("R-ISO", r_iso),
    ("R-RANK", r_rank),
];

pub fn rule_ids() -> Vec<&'static str> {
    RULES.iter().map(|(id, _)| *id).collect()
}

/// Evaluates every rule in a fixed order.
pub fn apply_rules(s: &Summary, inv: &Invariants, characteristic: u64) -> RuleOutcome {
    let ctx = Ctx { s, inv, characteristic };
    let mut out = RuleOutcome::default();
    for (_, rule) in RULES {
        rule(&ctx, &mut out);
    }
    out
}

fn r_semi(c: &Ctx, o: &mut RuleOutcome) {
    match c.inv.dim_j {
        Some(0) if c.split() => o.fire("R-SEMI", &["SEMISIMPLE", "R_TRIVIAL"], json!({"dim_j": 0, "split_status": c.s.split_status})),
        Some(0) => o.skip("R-SEMI", "A/J is not known to be split"),
        _ => o.skip("R-SEMI", "J != 0"),
    }
}

fn r_red(c: &Ctx, o: &mut RuleOutcome) {
    match (c.inv.dim_j2, c.inv.j_in_center) {
        (Some(0), Some(true)) if c.split() => {
            o.fire("R-RED", &["REDUCTIVE", "R_TRIVIAL"], json!({"dim_j2": 0, "j_in_center": true, "dim_center": c.inv.dim_center}))
        }
        (Some(0), Some(true)) => o.skip("R-RED", "A/J is not known to be split"),
        _ => o.skip("R-RED", "needs J^2 = 0 and J inside the center"),
    }
}

fn r_j2(c: &Ctx, o: &mut RuleOutcome) {
    match c.inv.dim_j2 {
        Some(0) if c.split() => o.fire("R-J2", &["R_TRIVIAL"], json!({"dim_j2": 0, "dim_j": c.inv.dim_j})),
        Some(0) => o.skip("R-J2", "A/J is not known to be split"),
        _ => o.skip("R-J2", "J^2 != 0"),
    }
}

fn r_dim5(c: &Ctx, o: &mut RuleOutcome) {
    match c.inv.dim_jj2 {
        Some(n) if n <= 5 && c.split() => o.fire("R-DIM5", &["R_TRIVIAL", "STABLY_RATIONAL"], json!({"dim_jj2": n})),
        Some(n) if n <= 5 => o.skip("R-DIM5", "A/J is not known to be split"),
        _ => o.skip("R-DIM5", "dim J/J^2 > 5 or unknown"),
    }
}

fn r_rankub(c: &Ctx, o: &mut RuleOutcome) {
    match c.inv.dim_jj2 {
        Some(n) if c.split_local() => o.fire("R-RANKUB", &["RANK_UPPER_BOUND"], json!({"bound": n, "dim_jj2": n})),
        _ => o.skip("R-RANKUB", "algebra is not split local"),
    }
}

fn r_mono(c: &Ctx, o: &mut RuleOutcome) {
    match &c.inv.presentation {
        Some(p) if p.is_monomial => o.fire(
            "R-MONO",
            &["RANK_LOWER_BOUND", "RATIONAL", "R_TRIVIAL"],
            json!({"bound": p.n_vars, "n_vars": p.n_vars, "generators": p.generators}),
        ),
        Some(_) => o.skip("R-MONO", "ideal is not monomial"),
        None => o.skip("R-MONO", "no presentation"),
    }
}

fn r_star(c: &Ctx, o: &mut RuleOutcome) {
    let Some(p) = &c.inv.presentation else { return o.skip("R-STAR", "no presentation") };
    if c.characteristic != 0 {
        return o.skip("R-STAR", "needs an infinite base field");
    }
    match p.property_star_r {
        Some(r) => o.fire("R-STAR", &["RANK_LOWER_BOUND"], json!({"bound": r, "property_star_r": r})),
        None => o.skip("R-STAR", "Property * does not hold"),
    }
}

fn single_quadratic<'a>(c: &'a Ctx) -> Option<&'a super::invariants::QuadraticReport> {
    let p = c.inv.presentation.as_ref()?;
    (p.generators.len() == 1).then_some(p.quadratic.as_ref()?)
}

fn r_qrat(c: &Ctx, o: &mut RuleOutcome) {
    if c.characteristic == 2 {
        return o.skip("R-QRAT", "characteristic 2");
    }
    let Some(q) = single_quadratic(c) else { return o.skip("R-QRAT", "not a single quadratic generator") };
    let l = c.inv.presentation.as_ref().unwrap().lowey;
    if q.nondegenerate && l > 2 {
        o.fire("R-QRAT", &["RATIONAL"], json!({"form": q.form, "diagonal": q.diagonal, "lowey": l}));
    } else {
        o.skip("R-QRAT", "form is degenerate or l <= 2");
    }
}

fn r_qanis(c: &Ctx, o: &mut RuleOutcome) {
    if c.characteristic == 2 {
        return o.skip("R-QANIS", "characteristic 2");
    }
    let Some(q) = single_quadratic(c) else { return o.skip("R-QANIS", "not a single quadratic generator") };
    let l = c.inv.presentation.as_ref().unwrap().lowey;
    if q.isotropy == "ANISOTROPIC_CERTIFIED" && l > 2 {
        o.fire("R-QANIS", &["NOT_K_SPLIT"], json!({"form": q.form, "isotropy": q.isotropy, "method": q.isotropy_method, "lowey": l}));
    } else {
        o.skip("R-QANIS", &format!("isotropy verdict {} or l <= 2", q.isotropy));
    }
}

fn r_nonsing(c: &Ctx, o: &mut RuleOutcome) {
    let Some(p) = &c.inv.presentation else { return o.skip("R-NONSING", "no presentation") };
    if !p.is_graded {
        return o.skip("R-NONSING", "presentation is not graded");
    }
    let Some(r) = p.nonsingularity.iter().find(|r| r.role == FormRole::MinimalGenerator) else {
        return o.skip("R-NONSING", "no unique generator of least degree");
    };
    if !c.degree_ok(r.degree) {
        return o.skip("R-NONSING", "degree or characteristic condition fails");
    }
    let ev = json!({"form": r.form, "degree": r.degree, "nonsingularity": r.verdict, "method": r.method, "primes_used": r.primes_used, "rank": 1, "bound": 1});
    match r.verdict.as_str() {
        "NONSINGULAR_CERTIFIED" => o.fire("R-NONSING", &["RATIONAL", "RANK_LOWER_BOUND", "RANK"], ev),
        "PROBABLY_NONSINGULAR" => o.fire("R-NONSING", &["PROBABLY_RATIONAL"], ev),
        v => o.skip("R-NONSING", &format!("nonsingularity verdict {v}")),
    }
}

/// A `W` basis element whose nonsingularity evidence satisfies the degree condition.
fn w_nonsingular<'a>(c: &Ctx, reports: &'a [NonsingularityReport], verdict: &str) -> Option<&'a NonsingularityReport> {
    reports.iter().find(|r| r.role == FormRole::WBasis && r.verdict == verdict && c.degree_ok(r.degree))
}

fn r_w1(c: &Ctx, o: &mut RuleOutcome) {
    let Some(p) = &c.inv.presentation else { return o.skip("R-W1", "no presentation") };
    if !p.is_graded || p.dim_w != 1 || p.w_truncation_only {
        return o.skip("R-W1", "needs a graded presentation with dim W = 1");
    }
    if let Some(r) = w_nonsingular(c, &p.nonsingularity, "NONSINGULAR_CERTIFIED") {
        o.fire("R-W1", &["RATIONAL"], json!({"dim_w": 1, "w": r.form, "nonsingularity": r.verdict}));
    } else if let Some(r) = w_nonsingular(c, &p.nonsingularity, "PROBABLY_NONSINGULAR") {
        o.fire("R-W1", &["PROBABLY_RATIONAL"], json!({"dim_w": 1, "w": r.form, "nonsingularity": r.verdict}));
    } else {
        let found: Vec<_> = p.nonsingularity.iter().filter(|r| r.role == FormRole::WBasis).map(|r| format!("{}: {}", r.form, r.verdict)).collect();
        o.skip("R-W1", &format!("no nonsingular element of admissible degree in W ({})", found.join(", ")));
    }
}

fn r_flag(c: &Ctx, o: &mut RuleOutcome) {
    let Some(p) = &c.inv.presentation else { return o.skip("R-FLAG", "no presentation") };
    if !p.is_graded || p.w_flag.as_deref() != Some("FULL_FLAG") || p.w_truncation_only {
        return o.skip("R-FLAG", "needs a graded presentation with a stable full flag in W");
    }
    if let Some(r) = w_nonsingular(c, &p.nonsingularity, "NONSINGULAR_CERTIFIED") {
        o.fire("R-FLAG", &["RATIONAL"], json!({"dim_w": p.dim_w, "flag": "FULL_FLAG", "w": r.form}));
    } else if let Some(r) = w_nonsingular(c, &p.nonsingularity, "PROBABLY_NONSINGULAR") {
        o.fire("R-FLAG", &["PROBABLY_RATIONAL"], json!({"dim_w": p.dim_w, "flag": "FULL_FLAG", "w": r.form, "nonsingularity": r.verdict}));
    } else {
        o.skip("R-FLAG", "no nonsingular element of admissible degree in W");
    }
}

fn r_nilp(c: &Ctx, o: &mut RuleOutcome) {
    if c.characteristic != 0 {
        return o.skip("R-NILP", "needs characteristic 0");
    }
    match c.inv.der_nilpotent {
        Some(true) if c.split() => o.fire("R-NILP", &["RATIONAL"], json!({"dim_der": c.inv.dim_der, "lower_central_dims": c.inv.der_lower_central_dims})),
        Some(true) => o.skip("R-NILP", "A/J is not known to be split"),
        _ => o.skip("R-NILP", "Der(A) is not nilpotent or unknown"),
    }
}

fn r_dim7(c: &Ctx, o: &mut RuleOutcome) {
    if c.split_local() && c.s.dim <= 7 {
        o.fire("R-DIM7", &["STABLY_RATIONAL", "R_TRIVIAL"], json!({"dim": c.s.dim}));
    } else {
        o.skip("R-DIM7", "needs a split local algebra of dimension <= 7");
    }
}

fn r_iso(c: &Ctx, o: &mut RuleOutcome) {
    match &c.inv.presentation {
        Some(p) if p.is_graded => o.fire("R-ISO", &["K_ISOTROPIC"], json!({"note": "k-isotropic, not unipotent", "generators": p.generators})),
        _ => o.skip("R-ISO", "no graded presentation"),
    }
}

fn r_rank(c: &Ctx, o: &mut RuleOutcome) {
    let Some(n) = c.inv.dim_jj2 else { return o.skip("R-RANK", "dim J/J^2 unknown") };
    let matching = o
        .verdicts
        .iter()
        .find(|v| v.flag == "RANK_LOWER_BOUND" && (v.rule == "R-MONO" || v.rule == "R-STAR") && v.evidence["bound"] == json!(n))
        .map(|v| v.rule.clone());
    match matching {
        Some(source) if c.split_local() => o.fire("R-RANK", &["RANK", "R_TRIVIAL"], json!({"rank": n, "dim_jj2": n, "lower_bound_from": source})),
        _ => o.skip("R-RANK", "no lower bound matching dim J/J^2"),
    }
}
