use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix, Scalar, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LieAmbient {
    /// Subalgebra of `gl_n` acting on a coordinate space.
    Matrix,
    /// Subalgebra of the derivations of an algebra, as matrices on its basis.
    Derivation,
}

/// A Lie algebra of `n x n` matrices, stored as a subspace of flattened (row-major) matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieSubalgebra {
    n: usize,
    ambient: LieAmbient,
    space: Subspace,
}

type SparseRows = Vec<Vec<(usize, Scalar)>>;

fn sparse_rows(m: &Matrix) -> SparseRows {
    (0..m.rows()).map(|i| m.row(i).iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect()).collect()
}

/// Nonzero entries of `x y - y x`, keyed by row-major index, scaled so the first is 1.
fn sparse_commutator(n: usize, x: &SparseRows, y: &SparseRows) -> Vec<(usize, Scalar)> {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (sign, (u, v)) in [(false, (x, y)), (true, (y, x))] {
        for (i, row) in u.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &v[*k] {
                    let t = a * b;
                    let e = acc.entry(i * n + j).or_insert_with(|| t.field().zero());
                    *e = if sign { &*e - &t } else { &*e + &t };
                }
            }
        }
    }
    let entries: Vec<(usize, Scalar)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let Some((_, lead)) = entries.first() else { return entries };
    let inv = lead.inv().expect("nonzero");
    entries.into_iter().map(|(k, v)| (k, &v * &inv)).collect()
}

/// Derived and lower central series of a Lie algebra, each ending where it stabilizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSeries {
    pub derived: Vec<LieSubalgebra>,
    pub lower_central: Vec<LieSubalgebra>,
    pub is_solvable: bool,
    pub is_nilpotent: bool,
}

impl LieSeries {
    pub fn derived_dims(&self) -> Vec<usize> {
        self.derived.iter().map(LieSubalgebra::dim).collect()
    }

    pub fn lower_central_dims(&self) -> Vec<usize> {
        self.lower_central.iter().map(LieSubalgebra::dim).collect()
    }
}

impl LieSubalgebra {
    /// Wraps a subspace of flattened matrices without checking bracket closure.
    pub fn from_space(n: usize, ambient: LieAmbient, space: Subspace) -> Self {
        assert_eq!(space.ambient(), n * n);
        LieSubalgebra { n, ambient, space }
    }

    pub fn span(field: Field, n: usize, ambient: LieAmbient, mats: &[Matrix]) -> Self {
        let vs = mats.iter().map(Matrix::flatten).collect();
        LieSubalgebra { n, ambient, space: Subspace::from_vectors(field, n * n, vs) }
    }

    pub fn zero(field: Field, n: usize, ambient: LieAmbient) -> Self {
        LieSubalgebra { n, ambient, space: Subspace::zero(field, n * n) }
    }

    /// All of `gl_n`.
    pub fn gl(field: Field, n: usize) -> Self {
        LieSubalgebra { n, ambient: LieAmbient::Matrix, space: Subspace::full(field, n * n) }
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient(&self) -> LieAmbient {
        self.ambient
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn basis_matrices(&self) -> Vec<Matrix> {
        self.space
            .basis_vectors()
            .into_iter()
            .map(|v| Matrix::from_flat(self.field(), self.n, self.n, v))
            .collect()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.rows() == self.n && m.cols() == self.n && self.space.contains(&m.flatten()).unwrap()
    }

    fn check(&self, other: &LieSubalgebra) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// `[self, other]`, the span of brackets of basis elements.
    pub fn bracket(&self, other: &LieSubalgebra) -> Result<LieSubalgebra> {
        self.bracket_within(other, None)
    }

    /// `[self, other]`, stopping early once its dimension reaches `bound`
    /// (for callers that know the bracket lies in a space of that dimension).
    fn bracket_within(&self, other: &LieSubalgebra, bound: Option<usize>) -> Result<LieSubalgebra> {
        const BATCH: usize = 64;
        self.check(other)?;
        let n = self.n;
        let a: Vec<SparseRows> = self.basis_matrices().iter().map(sparse_rows).collect();
        let same = self == other;
        let b: Vec<SparseRows> = if same { a.clone() } else { other.basis_matrices().iter().map(sparse_rows).collect() };
        let f = self.field();
        let dense = |c: Vec<(usize, Scalar)>| {
            let mut v = vec![f.zero(); n * n];
            for (k, x) in c {
                v[k] = x;
            }
            v
        };
        let mut seen = HashSet::new();
        let mut space = Subspace::zero(f, n * n);
        let mut out = Vec::with_capacity(BATCH);
        'outer: for (i, x) in a.iter().enumerate() {
            let start = if same { i + 1 } else { 0 };
            for y in &b[start..] {
                let c = sparse_commutator(n, x, y);
                if c.is_empty() || !seen.insert(c.clone()) {
                    continue;
                }
                out.push(dense(c));
                if out.len() == BATCH {
                    space = space.sum(&Subspace::from_vectors(f, n * n, std::mem::take(&mut out)))?;
                    if bound.is_some_and(|b| space.dim() >= b) {
                        break 'outer;
                    }
                }
            }
        }
        space = space.sum(&Subspace::from_vectors(f, n * n, out))?;
        Ok(LieSubalgebra { n, ambient: self.ambient, space })
    }

    pub fn is_bracket_closed(&self) -> bool {
        let m = self.basis_matrices();
        for (i, x) in m.iter().enumerate() {
            for y in &m[i + 1..] {
                if !self.contains(&x.commutator(y)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_subalgebra_of(&self, other: &LieSubalgebra) -> bool {
        self.n == other.n && self.space.is_subspace_of(&other.space).unwrap()
    }

    /// `[other, self] ⊆ self` with `self ⊆ other`.
    pub fn is_ideal_of(&self, other: &LieSubalgebra) -> bool {
        self.is_subalgebra_of(other) && other.bracket(self).unwrap().is_subalgebra_of(self)
    }

    pub fn intersect(&self, other: &LieSubalgebra) -> Result<LieSubalgebra> {
        self.check(other)?;
        Ok(LieSubalgebra { n: self.n, ambient: self.ambient, space: self.space.intersect(&other.space)? })
    }

    pub fn sum(&self, other: &LieSubalgebra) -> Result<LieSubalgebra> {
        self.check(other)?;
        Ok(LieSubalgebra { n: self.n, ambient: self.ambient, space: self.space.sum(&other.space)? })
    }

    /// `{ P X P^-1 : X in self }`.
    pub fn conjugate(&self, p: &Matrix) -> Result<LieSubalgebra> {
        let pinv = p.inverse()?;
        let mats: Vec<Matrix> = self.basis_matrices().iter().map(|x| p.mul(x).unwrap().mul(&pinv).unwrap()).collect();
        Ok(LieSubalgebra::span(self.field(), self.n, self.ambient, &mats))
    }

    pub fn derived_series(&self) -> Vec<LieSubalgebra> {
        self.extend_series(vec![self.clone()], true)
    }

    pub fn lower_central_series(&self) -> Vec<LieSubalgebra> {
        self.extend_series(vec![self.clone()], false)
    }

    /// Continues a derived (`[last, last]`) or lower central (`[self, last]`) series until it stabilizes.
    fn extend_series(&self, mut series: Vec<LieSubalgebra>, derived: bool) -> Vec<LieSubalgebra> {
        loop {
            let last = series.last().unwrap();
            if last.is_zero() {
                return series;
            }
            let left = if derived { last } else { self };
            let next = left.bracket_within(last, Some(last.dim())).unwrap();
            if next.dim() == last.dim() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn series(&self) -> LieSeries {
        let mut start = vec![self.clone()];
        if !self.is_zero() {
            let first = self.bracket_within(self, Some(self.dim())).unwrap();
            if first.dim() < self.dim() {
                start.push(first);
            }
        }
        let derived = self.extend_series(start.clone(), true);
        let lower_central = self.extend_series(start, false);
        let is_solvable = derived.last().unwrap().is_zero();
        let is_nilpotent = lower_central.last().unwrap().is_zero();
        LieSeries { derived, lower_central, is_solvable, is_nilpotent }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(field: Field, n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        m.set(i, j, field.one());
        m
    }

    #[test]
    fn abelian_is_nilpotent() {
        let q = Field::Rationals;
        let l = LieSubalgebra::span(q, 2, LieAmbient::Matrix, &[unit(q, 2, 0, 0), unit(q, 2, 1, 1)]);
        let s = l.series();
        assert!(s.is_nilpotent && s.is_solvable);
    }

    #[test]
    fn strictly_upper_triangular_is_nilpotent() {
        let q = Field::Rationals;
        let l = LieSubalgebra::span(q, 3, LieAmbient::Matrix, &[unit(q, 3, 0, 1), unit(q, 3, 0, 2), unit(q, 3, 1, 2)]);
        assert!(l.is_bracket_closed());
        assert!(l.is_nilpotent());
        assert_eq!(l.series().lower_central_dims(), vec![3, 1, 0]);
    }

    #[test]
    fn gl2_is_not_solvable() {
        let q = Field::Rationals;
        let g = LieSubalgebra::gl(q, 2);
        let s = g.series();
        assert!(!s.is_solvable);
        assert_eq!(s.derived_dims(), vec![4, 3]);
    }

    #[test]
    fn upper_triangular_is_solvable_not_nilpotent() {
        let q = Field::Rationals;
        let b = LieSubalgebra::span(q, 2, LieAmbient::Matrix, &[unit(q, 2, 0, 0), unit(q, 2, 0, 1), unit(q, 2, 1, 1)]);
        assert!(b.is_solvable());
        assert!(!b.is_nilpotent());
    }
}
