use serde::Serialize;

use super::AnalysisConfig;
use crate::algebra::{
    derivation_algebra, inner_derivations, jacobson_radical_with, ker_phi_lie, phi_lie_image, split_info, RadicalData, RadicalMethod,
    SplitInfo, SplitStatus, StructureAlgebra,
};
use crate::exactmath::Scalar;
use crate::forms::{
    action_on_w, flag_search, im_phi_lie, isotropy, nonsingularity, quadratic_from_poly, diagonalize, IsotropyMethod, IsotropyVerdict,
    NonsingularityConfig, NonsingularityMethod, NonsingularityVerdict,
};
use crate::poly::MultiPoly;
use crate::presentation::{minimal_degree_subspace, normal_form, presentation_from_algebra, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub dim: usize,
    pub field: String,
    pub commutative: bool,
    pub local: Option<bool>,
    pub split_basic: Option<bool>,
    pub split_status: Option<SplitStatus>,
    /// `A/J` is the base field.
    pub split_local: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub dim_j: Option<usize>,
    pub dim_j2: Option<usize>,
    pub dim_jj2: Option<usize>,
    pub lowey_length: Option<usize>,
    pub radical_method: Option<RadicalMethod>,
    pub j_in_center: Option<bool>,
    pub dim_center: usize,
    pub dim_der: Option<usize>,
    pub dim_inner_der: Option<usize>,
    pub der_derived_dims: Option<Vec<usize>>,
    pub der_lower_central_dims: Option<Vec<usize>>,
    pub der_solvable: Option<bool>,
    pub der_nilpotent: Option<bool>,
    pub dim_im_phi_lie: Option<usize>,
    pub dim_ker_phi_lie: Option<usize>,
    pub presentation: Option<PresentationInvariants>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationInvariants {
    pub n_vars: usize,
    pub lowey: usize,
    pub generators: Vec<String>,
    pub generator_degrees: Vec<usize>,
    pub is_monomial: bool,
    pub property_star_r: Option<usize>,
    pub is_graded: bool,
    pub w_degree: usize,
    pub dim_w: usize,
    pub w_basis: Vec<String>,
    pub w_truncation_only: bool,
    pub dim_im_phi_lie: Option<usize>,
    pub w_flag: Option<String>,
    pub quadratic: Option<QuadraticReport>,
    pub nonsingularity: Vec<NonsingularityReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticReport {
    pub form: String,
    pub gram: Vec<Vec<String>>,
    pub diagonal: Vec<String>,
    pub nondegenerate: bool,
    pub isotropy: String,
    pub isotropy_method: IsotropyMethod,
    pub witness: Option<Vec<String>>,
    pub height_searched: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormRole {
    /// The unique generator of least degree.
    MinimalGenerator,
    /// A basis element of the minimal degree subspace.
    WBasis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonsingularityReport {
    pub form: String,
    pub role: FormRole,
    pub degree: usize,
    pub verdict: String,
    pub method: NonsingularityMethod,
    pub witness: Option<Vec<String>>,
    pub primes_used: Vec<u64>,
    pub primes_with_zeros: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnknownEntry {
    pub property: String,
    pub reason: String,
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Everything the rules look at, plus the problems met while computing it.
pub struct Analysis {
    pub summary: Summary,
    pub invariants: Invariants,
    pub unknowns: Vec<UnknownEntry>,
    pub radical: Option<RadicalData>,
    pub split: Option<SplitInfo>,
}

pub fn analyze(a: &StructureAlgebra, given: Option<&Presentation>, cfg: &AnalysisConfig) -> Analysis {
    let mut unknowns = Vec::new();
    let center = a.center();
    let mut summary = Summary {
        dim: a.dim(),
        field: a.field().to_string(),
        commutative: a.is_commutative(),
        local: None,
        split_basic: None,
        split_status: None,
        split_local: None,
    };
    let mut inv = Invariants {
        dim_j: None,
        dim_j2: None,
        dim_jj2: None,
        lowey_length: None,
        radical_method: None,
        j_in_center: None,
        dim_center: center.dim(),
        dim_der: None,
        dim_inner_der: None,
        der_derived_dims: None,
        der_lower_central_dims: None,
        der_solvable: None,
        der_nilpotent: None,
        dim_im_phi_lie: None,
        dim_ker_phi_lie: None,
        presentation: None,
    };
    let rad = match jacobson_radical_with(a, cfg.max_enum) {
        Ok(r) => r,
        Err(e) => {
            unknowns.push(UnknownEntry { property: "radical".into(), reason: e.to_string() });
            return Analysis { summary, invariants: inv, unknowns, radical: None, split: None };
        }
    };
    inv.dim_j = Some(rad.dim());
    inv.dim_j2 = Some(rad.j2().dim());
    inv.dim_jj2 = Some(rad.jj2_dim());
    inv.lowey_length = Some(rad.lowey_length);
    inv.radical_method = Some(rad.method);
    inv.j_in_center = Some(rad.radical.is_subspace_of(&center).unwrap());

    let info = split_info(a, &rad);
    let quotient_commutative = a.quotient(&rad.radical).0.is_commutative();
    summary.split_status = Some(info.status);
    summary.split_basic = match info.status {
        SplitStatus::Unknown => None,
        s => Some(s == SplitStatus::SplitBasic),
    };
    summary.split_local = Some(info.is_split_local());
    summary.local = if quotient_commutative {
        Some(info.central_blocks == 1)
    } else if info.is_split() {
        Some(false)
    } else {
        None
    };
    if info.status == SplitStatus::Unknown {
        unknowns.push(UnknownEntry { property: "split".into(), reason: "no splitting witness found for a central simple factor of A/J".into() });
    }

    if a.dim() <= cfg.max_der_dim {
        let der = derivation_algebra(a);
        let series = der.series();
        inv.dim_der = Some(der.dim());
        inv.dim_inner_der = Some(inner_derivations(a).dim());
        inv.der_derived_dims = Some(series.derived_dims());
        inv.der_lower_central_dims = Some(series.lower_central_dims());
        inv.der_solvable = Some(series.is_solvable);
        inv.der_nilpotent = Some(series.is_nilpotent);
        inv.dim_ker_phi_lie = Some(ker_phi_lie(&der, &rad).dim());
        match phi_lie_image(&der, &rad) {
            Some(im) => inv.dim_im_phi_lie = Some(im.dim()),
            None => unknowns.push(UnknownEntry { property: "im_phi_lie".into(), reason: "a derivation does not preserve the radical".into() }),
        }
    } else {
        unknowns.push(UnknownEntry {
            property: "derivations".into(),
            reason: format!("algebra dimension {} exceeds the derivation limit {}", a.dim(), cfg.max_der_dim),
        });
    }

    if a.is_commutative() && info.is_split_local() && rad.jj2_dim() > 0 {
        let built;
        let p = match given {
            Some(p) => Some(p),
            None => match presentation_from_algebra(a, &rad) {
                Ok((p, _)) => {
                    built = p;
                    Some(&built)
                }
                Err(e) => {
                    unknowns.push(UnknownEntry { property: "presentation".into(), reason: e.to_string() });
                    None
                }
            },
        };
        if let Some(p) = p {
            inv.presentation = Some(presentation_invariants(p, cfg, &mut unknowns));
        }
    }
    Analysis { summary, invariants: inv, unknowns, radical: Some(rad), split: Some(info) }
}

fn presentation_invariants(p: &Presentation, cfg: &AnalysisConfig, unknowns: &mut Vec<UnknownEntry>) -> PresentationInvariants {
    let nf = normal_form(p);
    let is_graded = nf.generators.iter().all(MultiPoly::is_homogeneous);
    let w = minimal_degree_subspace(p);
    let w_elems = w.elements();
    let mut out = PresentationInvariants {
        n_vars: p.n_vars(),
        lowey: p.lowey(),
        generators: nf.generators.iter().map(ToString::to_string).collect(),
        generator_degrees: nf.generators.iter().map(|g| g.degree().unwrap()).collect(),
        is_monomial: nf.is_monomial,
        property_star_r: nf.property_star_r,
        is_graded,
        w_degree: w.degree,
        dim_w: w.dim(),
        w_basis: w_elems.iter().map(ToString::to_string).collect(),
        w_truncation_only: w.truncation_only,
        dim_im_phi_lie: None,
        w_flag: None,
        quadratic: None,
        nonsingularity: Vec::new(),
    };
    if is_graded {
        match im_phi_lie(p) {
            Ok(im) => {
                out.dim_im_phi_lie = Some(im.dim());
                match action_on_w(&im, &w) {
                    Ok(act) => out.w_flag = Some(flag_search(&act).label().to_string()),
                    Err(e) => unknowns.push(UnknownEntry { property: "w_flag".into(), reason: e.to_string() }),
                }
            }
            Err(e) => unknowns.push(UnknownEntry { property: "im_phi_lie".into(), reason: e.to_string() }),
        }
    } else {
        unknowns.push(UnknownEntry { property: "graded".into(), reason: "normal-form generators are not homogeneous".into() });
    }

    if let [g] = nf.generators.as_slice() {
        if g.degree() == Some(2) && g.is_homogeneous() {
            match quadratic_from_poly(g) {
                Ok(q) => {
                    let (_, diag) = diagonalize(&q);
                    let ev = isotropy(&q, cfg.height_bound, cfg.max_enum);
                    let witness = match &ev.verdict {
                        IsotropyVerdict::IsotropicWitness(v) => Some(strings(v)),
                        _ => None,
                    };
                    out.quadratic = Some(QuadraticReport {
                        form: g.to_string(),
                        gram: q.gram.row_vectors().iter().map(|r| strings(r)).collect(),
                        diagonal: strings(&diag),
                        nondegenerate: !q.is_degenerate(),
                        isotropy: ev.verdict.label().to_string(),
                        isotropy_method: ev.method,
                        witness,
                        height_searched: ev.height_searched,
                    });
                }
                Err(e) => unknowns.push(UnknownEntry { property: "quadratic_form".into(), reason: e.to_string() }),
            }
        }
    }

    let ns_cfg = NonsingularityConfig { height_bound: cfg.height_bound, primes: cfg.primes.clone(), max_enum: cfg.max_enum };
    let mut forms: Vec<(MultiPoly, FormRole)> = Vec::new();
    if is_graded {
        if let Some(&dmin) = out.generator_degrees.iter().min() {
            let minimal: Vec<&MultiPoly> = nf.generators.iter().filter(|g| g.degree() == Some(dmin)).collect();
            if let [f] = minimal.as_slice() {
                forms.push(((*f).clone(), FormRole::MinimalGenerator));
            }
        }
        if !w.truncation_only {
            forms.extend(w_elems.iter().map(|g| (g.clone(), FormRole::WBasis)));
        }
    }
    for (f, role) in forms {
        match nonsingularity(&f, &ns_cfg) {
            Ok(ev) => {
                let witness = match &ev.verdict {
                    NonsingularityVerdict::SingularWitness(v) => Some(strings(v)),
                    _ => None,
                };
                out.nonsingularity.push(NonsingularityReport {
                    form: f.to_string(),
                    role,
                    degree: f.degree().unwrap(),
                    verdict: ev.verdict.label().to_string(),
                    method: ev.method,
                    witness,
                    primes_used: ev.primes_used,
                    primes_with_zeros: ev.primes_with_zeros,
                });
            }
            Err(e) => unknowns.push(UnknownEntry { property: format!("nonsingularity of {f}"), reason: e.to_string() }),
        }
    }
    out
}
