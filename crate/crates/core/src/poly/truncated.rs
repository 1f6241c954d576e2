use std::collections::HashMap;
use std::ops::Range;

use super::monomial::Monomial;
use super::multipoly::MultiPoly;
use crate::exactmath::{Field, Scalar};

/// Coordinates on `k[X1..Xn] / <X1..Xn>^l`.
///
/// Coordinates run through the monomials of degree `< l` in ascending
/// degree; within one degree the graded-lex largest monomial comes first
/// (so in degree 2 the order starts `X1^2, X1*X2, ...`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedRing {
    n_vars: usize,
    trunc_degree: usize,
    field: Field,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    degree_start: Vec<usize>,
}

impl TruncatedRing {
    pub fn new(field: Field, n_vars: usize, trunc_degree: usize) -> Self {
        let mut monomials = Vec::new();
        let mut degree_start = Vec::with_capacity(trunc_degree + 1);
        for d in 0..trunc_degree {
            degree_start.push(monomials.len());
            monomials.extend(Monomial::of_degree(n_vars, d));
        }
        degree_start.push(monomials.len());
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        TruncatedRing { n_vars, trunc_degree, field, monomials, index, degree_start }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn trunc_degree(&self) -> usize {
        self.trunc_degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinate positions of the degree-`d` monomials (empty when `d >= l`).
    pub fn degree_range(&self, d: usize) -> Range<usize> {
        if d >= self.trunc_degree {
            return self.dim()..self.dim();
        }
        self.degree_start[d]..self.degree_start[d + 1]
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.monomials[i].degree()
    }

    /// Coordinate vector of `f` with all terms of degree `>= l` dropped.
    pub fn truncate(&self, f: &MultiPoly) -> Vec<Scalar> {
        assert_eq!(f.n_vars(), self.n_vars);
        let mut v = vec![self.field.zero(); self.dim()];
        for (m, c) in f.terms() {
            if let Some(i) = self.index_of(m) {
                v[i] = c.clone();
            }
        }
        v
    }

    pub fn to_poly(&self, v: &[Scalar]) -> MultiPoly {
        MultiPoly::from_terms(
            self.field,
            self.n_vars,
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.monomials[i].clone(), c.clone())),
        )
    }

    /// `m * v` in the truncated ring.
    pub fn mul_monomial(&self, v: &[Scalar], m: &Monomial) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(j) = self.index_of(&self.monomials[i].mul(m)) {
                out[j] = c.clone();
            }
        }
        out
    }

    /// Product of two coordinate vectors in the truncated ring.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if let Some(k) = self.index_of(&self.monomials[i].mul(&self.monomials[j])) {
                    out[k] = &out[k] + &(x * y);
                }
            }
        }
        out
    }

    /// Lowest degree carrying a nonzero coordinate.
    pub fn order(&self, v: &[Scalar]) -> Option<usize> {
        v.iter().position(|c| !c.is_zero()).map(|i| self.degree_of(i))
    }

    /// Zeroes every coordinate outside degree `d`.
    pub fn project_degree(&self, v: &[Scalar], d: usize) -> Vec<Scalar> {
        let r = self.degree_range(d);
        v.iter().enumerate().map(|(i, c)| if r.contains(&i) { c.clone() } else { self.field.zero() }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn dimension_formula() {
        for n in 1..4 {
            for l in 1..5 {
                assert_eq!(TruncatedRing::new(Field::Rationals, n, l).dim(), binom(n + l - 1, n));
            }
        }
    }

    #[test]
    fn truncation_examples() {
        let q = Field::Rationals;
        let r = TruncatedRing::new(q, 1, 3);
        assert!(r.truncate(&parse_poly("X1^3", 1, q).unwrap()).iter().all(Scalar::is_zero));
        let v = r.truncate(&parse_poly("X1 + X1^2", 1, q).unwrap());
        assert_eq!(v, vec![q.zero(), q.one(), q.one()]);
        let r2 = TruncatedRing::new(q, 2, 3);
        let cube = parse_poly("X1 + X2", 2, q).unwrap().pow(3);
        assert!(r2.truncate(&cube).iter().all(Scalar::is_zero));
    }

    #[test]
    fn coordinate_order() {
        let r = TruncatedRing::new(Field::Rationals, 2, 3);
        let names: Vec<String> = r.monomials().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["1", "X1", "X2", "X1^2", "X1*X2", "X2^2"]);
        assert_eq!(r.degree_range(2), 3..6);
    }
}
