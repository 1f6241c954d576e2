use serde::Serialize;

use crate::algebra::semisimple::split_info;
use crate::algebra::{RadicalData, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::field::is_zero_vector;
use crate::exactmath::{Field, Matrix, Scalar, Subspace};
use crate::poly::{Monomial, MultiPoly, TruncatedRing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PresentationWarning {
    /// The supplied truncation degree was larger than the Lowey length, or some
    /// generators vanished after truncation.
    LoweyMismatch { supplied: usize, corrected: usize, redundant_generators: Vec<usize> },
}

/// `k[X1..Xn]/I` with `<X>^l ⊆ I ⊆ <X>^2`, the ideal stored as the subspace
/// `I/<X>^l` of the truncated ring `T(n, l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ring: TruncatedRing,
    ideal: Subspace,
    generators: Vec<MultiPoly>,
    warnings: Vec<PresentationWarning>,
}

impl Presentation {
    /// Presentation of `<X>^l + <gens>`; the Lowey length is recomputed and the
    /// truncation degree lowered if needed.
    pub fn from_ideal(field: Field, n_vars: usize, trunc_degree: usize, gens: Vec<MultiPoly>) -> Result<Self> {
        if n_vars == 0 {
            return Err(Error::NotAdmissible("at least one variable is required".into()));
        }
        if trunc_degree < 2 {
            return Err(Error::NotAdmissible(format!("truncation degree {trunc_degree} is below 2")));
        }
        let ring = TruncatedRing::new(field, n_vars, trunc_degree);
        let mut vectors = Vec::with_capacity(gens.len());
        let mut redundant = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if g.n_vars() != n_vars || g.field() != field {
                return Err(Error::Shape(format!("generator {} does not live in k[X1..X{n_vars}] over {field}", i + 1)));
            }
            let v = ring.truncate(g);
            if let Some(d) = ring.order(&v) {
                if d < 2 {
                    return Err(Error::NotAdmissible(format!("generator '{g}' has a nonzero part of degree {d}")));
                }
            } else {
                redundant.push(i);
            }
            vectors.push(v);
        }
        let ideal = ideal_closure(&ring, Subspace::from_vectors(field, ring.dim(), vectors));
        let corrected = lowey_of(&ring, &ideal);
        let mut warnings = Vec::new();
        if corrected < trunc_degree || !redundant.is_empty() {
            warnings.push(PresentationWarning::LoweyMismatch { supplied: trunc_degree, corrected, redundant_generators: redundant });
        }
        let (ring, ideal) = if corrected < trunc_degree { retruncate(&ring, &ideal, corrected) } else { (ring, ideal) };
        Ok(Presentation { ring, ideal, generators: gens, warnings })
    }

    /// Builds a presentation from an ideal subspace of `T(n, l)` that is already
    /// closed under multiplication; generators are taken from the normal form.
    pub fn from_subspace(ring: TruncatedRing, ideal: Subspace) -> Result<Self> {
        if ideal.ambient() != ring.dim() {
            return Err(Error::AmbientMismatch { left: ring.dim(), right: ideal.ambient() });
        }
        for v in ideal.basis_vectors() {
            if ring.order(&v).is_some_and(|d| d < 2) {
                return Err(Error::NotAdmissible("ideal has elements of degree below 2".into()));
            }
        }
        let closed = ideal_closure(&ring, ideal.clone());
        if closed != ideal {
            return Err(Error::NotAdmissible("subspace is not closed under multiplication by the variables".into()));
        }
        let l = lowey_of(&ring, &ideal);
        let (ring, ideal) = if l < ring.trunc_degree() { retruncate(&ring, &ideal, l) } else { (ring, ideal) };
        let mut p = Presentation { ring, ideal, generators: Vec::new(), warnings: Vec::new() };
        p.generators = super::normal::normal_form(&p).generators;
        Ok(p)
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn n_vars(&self) -> usize {
        self.ring.n_vars()
    }

    /// Lowey length `l` (the truncation degree).
    pub fn lowey(&self) -> usize {
        self.ring.trunc_degree()
    }

    pub fn ring(&self) -> &TruncatedRing {
        &self.ring
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn warnings(&self) -> &[PresentationWarning] {
        &self.warnings
    }

    /// Dimension of the presented algebra.
    pub fn algebra_dim(&self) -> usize {
        self.ring.dim() - self.ideal.dim()
    }

    /// Whether `f` lies in `I` (terms of degree `>= l` are in `I` automatically).
    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.ideal.contains(&self.ring.truncate(f)).unwrap()
    }

    /// Ideal elements as polynomials (the stored RREF basis).
    pub fn ideal_basis_polys(&self) -> Vec<MultiPoly> {
        self.ideal.basis_vectors().iter().map(|v| self.ring.to_poly(v)).collect()
    }

    /// Degree of the pivot (lowest-degree term) of each stored basis row.
    pub fn pivot_degrees(&self) -> Vec<usize> {
        self.ideal.pivots().iter().map(|&c| self.ring.degree_of(c)).collect()
    }

    /// Image of the ideal under `f -> f(X M)`.
    pub fn transformed_ideal(&self, m: &Matrix) -> Subspace {
        let images = self
            .ideal
            .basis_vectors()
            .iter()
            .map(|v| self.ring.truncate(&self.ring.to_poly(v).substitute_linear(m)))
            .collect();
        Subspace::from_vectors(self.field(), self.ring.dim(), images)
    }

    /// Whether the change of variables `M` maps `I` into itself.
    pub fn is_stabilized_by(&self, m: &Matrix) -> bool {
        self.transformed_ideal(m).is_subspace_of(&self.ideal).unwrap()
    }

    /// The algebra `k[X]/I` in the basis of monomials at the non-pivot coordinates
    /// (the constant first), with its radical attached.
    pub fn quotient_algebra(&self) -> StructureAlgebra {
        let f = self.field();
        let keep: Vec<usize> = (0..self.ring.dim()).filter(|c| !self.ideal.pivots().contains(c)).collect();
        let m = keep.len();
        let mut products = Vec::with_capacity(m * m);
        for &a in &keep {
            for &b in &keep {
                let prod = self.ring.monomial(a).mul(self.ring.monomial(b));
                let mut v = vec![f.zero(); self.ring.dim()];
                if let Some(i) = self.ring.index_of(&prod) {
                    v[i] = f.one();
                }
                let r = self.ideal.reduce(&v);
                products.push(keep.iter().enumerate().filter(|(_, &c)| !r[c].is_zero()).map(|(k, &c)| (k, r[c].clone())).collect());
            }
        }
        let mut one = vec![f.zero(); m];
        one[0] = f.one();
        let radical = Subspace::from_vectors(f, m, (1..m).map(|i| crate::exactmath::field::unit_vector(f, m, i)).collect());
        StructureAlgebra::from_products_unchecked(f, m, products, one).with_known_radical(radical)
    }

    /// Monomials labelling the basis of [`Presentation::quotient_algebra`].
    pub fn quotient_basis_monomials(&self) -> Vec<Monomial> {
        (0..self.ring.dim()).filter(|c| !self.ideal.pivots().contains(c)).map(|c| self.ring.monomial(c).clone()).collect()
    }
}

/// Smallest `X_i`-stable subspace containing `s`.
pub fn ideal_closure(ring: &TruncatedRing, mut s: Subspace) -> Subspace {
    let n = ring.n_vars();
    let vars: Vec<Monomial> = (0..n).map(|i| Monomial::var(n, i)).collect();
    let mut frontier = s.basis_vectors();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for v in &frontier {
            for x in &vars {
                let w = ring.mul_monomial(v, x);
                if !is_zero_vector(&w) && !s.contains(&w).unwrap() {
                    fresh.push(w);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        let grown = s.sum(&Subspace::from_vectors(ring.field(), ring.dim(), fresh)).unwrap();
        frontier = grown.basis_vectors().into_iter().filter(|v| !s.contains(v).unwrap()).collect();
        s = grown;
    }
    s
}

/// `min { m >= 2 : every degree-m monomial lies in the ideal }`, capped at the truncation degree.
fn lowey_of(ring: &TruncatedRing, ideal: &Subspace) -> usize {
    let l = ring.trunc_degree();
    for m in 1..l {
        let range = ring.degree_range(m);
        let count = ideal.pivots().iter().filter(|c| range.contains(c)).count();
        if count == range.len() {
            return m;
        }
    }
    l
}

fn retruncate(ring: &TruncatedRing, ideal: &Subspace, l: usize) -> (TruncatedRing, Subspace) {
    let small = TruncatedRing::new(ring.field(), ring.n_vars(), l);
    let vs = ideal.basis_vectors().iter().map(|v| small.truncate(&ring.to_poly(v))).collect();
    let sub = Subspace::from_vectors(ring.field(), small.dim(), vs);
    (small, sub)
}

/// Realizes a split local commutative algebra as `k[X1..Xn]/I`, with `x_i` the lifted
/// basis of `J/J^2`. Returns the presentation and the evaluation matrix `T(n, l) -> A`.
pub fn presentation_from_algebra(a: &StructureAlgebra, rad: &RadicalData) -> Result<(Presentation, Matrix)> {
    if !a.is_commutative() {
        return Err(Error::NotCommutative);
    }
    if a.dim() - rad.dim() != 1 {
        let info = split_info(a, rad);
        return Err(if info.central_blocks > 1 { Error::NotLocal } else { Error::NotSplit(format!("A/J has dimension {} and no idempotent over {}", info.quotient_dim, a.field())) });
    }
    let n = rad.jj2_dim();
    let l = rad.lowey_length;
    if n == 0 {
        return Err(Error::NotAdmissible("the algebra is the base field; there is nothing to present".into()));
    }
    let f = a.field();
    let ring = TruncatedRing::new(f, n, l);
    let mut images: Vec<Vec<Scalar>> = Vec::with_capacity(ring.dim());
    for (idx, m) in ring.monomials().iter().enumerate() {
        let img = match m.min_var() {
            None => a.one().to_vec(),
            Some(v) => {
                let parent = m.div(&Monomial::var(n, v)).unwrap();
                let pi = ring.index_of(&parent).unwrap();
                debug_assert!(pi < idx);
                a.multiply(&rad.jj2_basis[v], &images[pi])
            }
        };
        images.push(img);
    }
    let eval = Matrix::from_columns(f, a.dim(), &images);
    if eval.rank() != a.dim() {
        return Err(Error::NotAdmissible("evaluation map is not surjective".into()));
    }
    let ideal = eval.kernel();
    let p = Presentation::from_subspace(ring, ideal)?;
    debug_assert_eq!(p.lowey(), l);
    Ok((p, eval))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::jacobson_radical;
    use crate::algebra::structure::examples::*;
    use crate::poly::parse_poly;

    fn polys(gens: &[&str], n: usize) -> Vec<MultiPoly> {
        gens.iter().map(|g| parse_poly(g, n, Field::Rationals).unwrap()).collect()
    }

    #[test]
    fn free_truncated() {
        let p = Presentation::from_ideal(Field::Rationals, 2, 3, vec![]).unwrap();
        assert!(p.ideal().is_zero());
        assert_eq!(p.lowey(), 3);
        assert_eq!(p.algebra_dim(), 6);
        assert!(p.warnings().is_empty());
    }

    #[test]
    fn quadric_slice() {
        let p = Presentation::from_ideal(Field::Rationals, 2, 3, polys(&["X1^2 + X2^2"], 2)).unwrap();
        assert_eq!(p.ideal().dim(), 1);
        assert_eq!(p.pivot_degrees(), vec![2]);
        assert!(p.contains(&parse_poly("X1^2 + X2^2 + X1^3", 2, Field::Rationals).unwrap()));
    }

    #[test]
    fn lowey_mismatch_warnings() {
        let p = Presentation::from_ideal(Field::Rationals, 1, 2, polys(&["X1^2"], 1)).unwrap();
        assert_eq!(p.lowey(), 2);
        assert!(p.ideal().is_zero());
        assert_eq!(
            p.warnings(),
            &[PresentationWarning::LoweyMismatch { supplied: 2, corrected: 2, redundant_generators: vec![0] }]
        );
        let p = Presentation::from_ideal(Field::Rationals, 1, 5, polys(&["X1^3"], 1)).unwrap();
        assert_eq!(p.lowey(), 3);
        assert!(matches!(&p.warnings()[0], PresentationWarning::LoweyMismatch { corrected: 3, .. }));
    }

    #[test]
    fn rejects_linear_parts() {
        let e = Presentation::from_ideal(Field::Rationals, 2, 3, polys(&["X1 + X2^2"], 2));
        assert!(matches!(e, Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn from_truncated_polynomial_algebra() {
        let a = truncated_polynomial(Field::Rationals, 3);
        let rad = jacobson_radical(&a).unwrap();
        let (p, _) = presentation_from_algebra(&a, &rad).unwrap();
        assert_eq!((p.n_vars(), p.lowey()), (1, 3));
        assert!(p.ideal().is_zero());
    }

    #[test]
    fn product_is_not_local() {
        let a = split_semisimple(Field::Rationals, 2);
        let rad = jacobson_radical(&a).unwrap();
        assert_eq!(presentation_from_algebra(&a, &rad).unwrap_err(), Error::NotLocal);
    }

    #[test]
    fn quotient_round_trip() {
        let p = Presentation::from_ideal(Field::Rationals, 2, 4, polys(&["X1*X2", "X2^2 - X1^2"], 2)).unwrap();
        let a = p.quotient_algebra();
        assert_eq!(p.lowey(), 3);
        assert_eq!(a.dim(), 4);
        let rad = jacobson_radical(&a).unwrap();
        let (p2, eval) = presentation_from_algebra(&a, &rad).unwrap();
        assert_eq!(p2.n_vars(), 2);
        assert_eq!(p2.lowey(), 3);
        assert_eq!(p2.algebra_dim(), 4);
        // the evaluation map restricted to the quotient basis is an algebra isomorphism
        let b = p2.quotient_algebra();
        let keep: Vec<usize> = (0..p2.ring().dim()).filter(|c| !p2.ideal().pivots().contains(c)).collect();
        let phi = Matrix::from_columns(Field::Rationals, a.dim(), &keep.iter().map(|&c| eval.column(c)).collect::<Vec<_>>());
        assert!(phi.is_invertible());
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                let lhs = phi.mul_vec(&b.product_vector(i, j)).unwrap();
                let rhs = a.multiply(&phi.column(i), &phi.column(j));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
