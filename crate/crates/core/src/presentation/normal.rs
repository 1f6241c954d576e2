use super::ideal::{ideal_closure, Presentation};
use crate::exactmath::Subspace;
use crate::poly::{Monomial, MultiPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    /// Generators of degree `2..l-1` in increasing degree; together with `<X>^l` they generate `I`.
    pub generators: Vec<MultiPoly>,
    pub is_monomial: bool,
    pub property_star_r: Option<usize>,
}

/// Degreewise minimal generators: at degree `d`, each ideal basis row of order `d`
/// that is not already in `<earlier generators> + I_{>d}` becomes a generator.
pub fn normal_form(p: &Presentation) -> NormalForm {
    let ring = p.ring();
    let f = p.field();
    let rows = p.ideal().basis_vectors();
    let degrees = p.pivot_degrees();
    let mut chosen: Vec<Vec<_>> = Vec::new();
    for d in 2..p.lowey() {
        let higher: Vec<_> = rows.iter().zip(&degrees).filter(|(_, &e)| e > d).map(|(r, _)| r.clone()).collect();
        let mut span = chosen.clone();
        span.extend(higher);
        let mut u = ideal_closure(ring, Subspace::from_vectors(f, ring.dim(), span));
        for (r, _) in rows.iter().zip(&degrees).filter(|(_, &e)| e == d) {
            if !u.contains(r).unwrap() {
                u = u.sum(&Subspace::from_vectors(f, ring.dim(), vec![r.clone()])).unwrap();
                chosen.push(r.clone());
            }
        }
    }
    debug_assert_eq!(&ideal_closure(ring, Subspace::from_vectors(f, ring.dim(), chosen.clone())), p.ideal());
    let generators: Vec<MultiPoly> = chosen.iter().map(|v| ring.to_poly(v)).collect();
    let is_monomial = is_monomial_ideal(p);
    let property_star_r = star_index(&generators);
    NormalForm { generators, is_monomial, property_star_r }
}

/// Whether the ideal has a basis of monomials.
pub fn is_monomial_ideal(p: &Presentation) -> bool {
    p.ideal().basis_vectors().iter().all(|r| r.iter().filter(|c| !c.is_zero()).count() == 1)
}

fn star_index(generators: &[MultiPoly]) -> Option<usize> {
    let mut r: Option<usize> = None;
    for g in generators.iter().filter(|g| !g.is_monomial()) {
        let (_, h) = g.monomial_gcd_factor().ok()?;
        let s = h.s_index().ok()?;
        r = Some(r.map_or(s, |r| r.min(s)));
    }
    r
}

/// Largest `r` such that every non-monomial normal-form generator is a monomial times
/// a homogeneous polynomial in `X_s..X_n` with `s >= r`.
pub fn property_star(p: &Presentation) -> Option<usize> {
    normal_form(p).property_star_r
}

/// Lowest-degree part of the ideal: the degree-`d_min` initial forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalDegreeSubspace {
    pub degree: usize,
    /// The degree-`degree` monomials, in the order used for coordinates of `space`.
    pub monomials: Vec<Monomial>,
    pub space: Subspace,
    /// Set when `I = <X>^l`, in which case `W` is the whole degree-`l` slice.
    pub truncation_only: bool,
}

impl MinimalDegreeSubspace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn elements(&self) -> Vec<MultiPoly> {
        let f = self.space.field();
        let n = self.monomials.first().map_or(0, Monomial::n_vars);
        self.space
            .basis_vectors()
            .iter()
            .map(|v| MultiPoly::from_terms(f, n, self.monomials.iter().cloned().zip(v.iter().cloned()).filter(|(_, c)| !c.is_zero())))
            .collect()
    }

    pub fn to_slice_coords(&self, g: &MultiPoly) -> Vec<crate::exactmath::Scalar> {
        self.monomials.iter().map(|m| g.coefficient(m)).collect()
    }
}

pub fn minimal_degree_subspace(p: &Presentation) -> MinimalDegreeSubspace {
    let ring = p.ring();
    let f = p.field();
    let Some(&d) = p.pivot_degrees().iter().min() else {
        let monomials = Monomial::of_degree(p.n_vars(), p.lowey());
        let space = Subspace::full(f, monomials.len());
        return MinimalDegreeSubspace { degree: p.lowey(), monomials, space, truncation_only: true };
    };
    let range = ring.degree_range(d);
    let monomials = ring.monomials()[range.clone()].to_vec();
    let vs = p
        .ideal()
        .basis_vectors()
        .iter()
        .zip(p.pivot_degrees())
        .filter(|(_, e)| *e == d)
        .map(|(r, _)| r[range.clone()].to_vec())
        .collect();
    MinimalDegreeSubspace { degree: d, monomials: monomials.clone(), space: Subspace::from_vectors(f, monomials.len(), vs), truncation_only: false }
}

/// The ideal of initial forms `I_+`, as a presentation with homogeneous generators.
pub fn associated_graded_ideal(p: &Presentation) -> Presentation {
    let ring = p.ring();
    let initial = p
        .ideal()
        .basis_vectors()
        .iter()
        .zip(p.pivot_degrees())
        .map(|(r, d)| ring.project_degree(r, d))
        .collect();
    let space = ideal_closure(ring, Subspace::from_vectors(p.field(), ring.dim(), initial));
    Presentation::from_subspace(ring.clone(), space).expect("initial ideal is admissible")
}

/// Sufficient criterion: all normal-form generators are homogeneous.
pub fn is_graded_presentation(p: &Presentation) -> bool {
    normal_form(p).generators.iter().all(MultiPoly::is_homogeneous)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::Field;
    use crate::poly::parse_poly;

    fn pres(field: Field, n: usize, l: usize, gens: &[&str]) -> Presentation {
        let gens = gens.iter().map(|g| parse_poly(g, n, field).unwrap()).collect();
        Presentation::from_ideal(field, n, l, gens).unwrap()
    }

    fn q(n: usize, l: usize, gens: &[&str]) -> Presentation {
        pres(Field::Rationals, n, l, gens)
    }

    fn strs(ps: &[MultiPoly]) -> Vec<String> {
        ps.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn normal_form_examples() {
        let nf = normal_form(&q(2, 3, &[]));
        assert!(nf.generators.is_empty());
        assert!(nf.is_monomial);
        assert_eq!(nf.property_star_r, None);

        let nf = normal_form(&q(2, 4, &["X1^2", "X1^3 + X2^3"]));
        assert_eq!(strs(&nf.generators), vec!["X1^2", "X2^3"]);
        assert!(nf.is_monomial);

        let nf = normal_form(&q(2, 3, &["X1^2 + X2^2"]));
        assert_eq!(strs(&nf.generators), vec!["X1^2 + X2^2"]);
        assert!(!nf.is_monomial);
    }

    #[test]
    fn normal_form_drops_redundant_generators() {
        let nf = normal_form(&q(2, 5, &["X1^2", "X1^3", "X1*X2^2 + X1^2*X2", "X2^2 - X1^2"]));
        assert_eq!(strs(&nf.generators), vec!["X1^2", "X2^2"]);
    }

    #[test]
    fn monomial_detection() {
        assert!(is_monomial_ideal(&q(2, 4, &["X1*X2", "X1^3"])));
        assert!(!is_monomial_ideal(&q(2, 3, &["X1^2 + X2^2"])));
        assert!(!is_monomial_ideal(&pres(Field::Prime(2), 2, 3, &["X1^2 + X2^2"])));
    }

    #[test]
    fn property_star_examples() {
        let p = q(4, 18, &["X1^2*X2^3*X3^4*X4^8 + X1^2*X2^3*X3^12"]);
        assert_eq!(property_star(&p), Some(3));
        assert_eq!(property_star(&q(2, 3, &["X1^2 + X2^2"])), Some(1));
        assert_eq!(property_star(&q(2, 4, &["X1^2 + X2^3"])), None);
        assert_eq!(property_star(&q(2, 3, &["X1*X2"])), None);
    }

    #[test]
    fn minimal_degree_subspace_examples() {
        let w = minimal_degree_subspace(&q(2, 4, &["X1^2", "X1^3 + X2^3"]));
        assert_eq!((w.degree, w.dim()), (2, 1));
        assert_eq!(strs(&w.elements()), vec!["X1^2"]);

        let w = minimal_degree_subspace(&q(2, 3, &["X1^2 + X2^2"]));
        assert_eq!(strs(&w.elements()), vec!["X1^2 + X2^2"]);

        let w = minimal_degree_subspace(&q(2, 3, &["X1^2", "X2^2"]));
        assert_eq!((w.degree, w.dim()), (2, 2));

        let w = minimal_degree_subspace(&q(2, 3, &[]));
        assert!(w.truncation_only);
        assert_eq!((w.degree, w.dim()), (3, 4));
    }

    #[test]
    fn associated_graded_examples() {
        let p = q(2, 4, &["X1^2 + X2^3"]);
        let g = associated_graded_ideal(&p);
        let w2 = minimal_degree_subspace(&g);
        assert_eq!(strs(&w2.elements()), vec!["X1^2"]);
        let x1x1x2 = parse_poly("X1^2*X2", 2, Field::Rationals).unwrap();
        let x1cube = parse_poly("X1^3", 2, Field::Rationals).unwrap();
        assert!(g.contains(&x1x1x2) && g.contains(&x1cube));
        assert!(!g.contains(&parse_poly("X2^3", 2, Field::Rationals).unwrap()));
        assert_eq!(associated_graded_ideal(&g).ideal(), g.ideal());
        assert!(is_graded_presentation(&g));

        let h = q(2, 3, &["X1^2 + X1*X2"]);
        assert_eq!(associated_graded_ideal(&h).ideal(), h.ideal());
    }

    #[test]
    fn graded_criterion() {
        assert!(is_graded_presentation(&q(2, 3, &["X1^2 + X2^2"])));
        assert!(!is_graded_presentation(&q(2, 4, &["X1^2 + X2^3"])));
        assert!(is_graded_presentation(&q(2, 3, &[])));
    }
}
