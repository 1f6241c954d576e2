use super::field::{Field, Scalar};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A linear subspace of `field^ambient`, stored as its reduced row-echelon basis.
///
/// Because the RREF basis is canonical, two subspaces are equal iff their
/// stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn from_vectors(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        let vectors: Vec<_> = vectors.into_iter().filter(|v| !v.iter().all(Scalar::is_zero)).collect();
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, ambient, vectors).expect("vector length matches ambient");
        let r = m.rref();
        let rows: Vec<Vec<Scalar>> = (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis: Matrix::from_rows(field, ambient, rows).unwrap(),
            pivots: r.pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    /// Canonical representative of `v` modulo the subspace: pivot coordinates cleared.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(r).iter().enumerate() {
                if !b.is_zero() {
                    out[j] = &out[j] - &(&c * b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: v.len() });
        }
        Ok(self.reduce(v).iter().all(Scalar::is_zero))
    }

    /// Coordinates of `v` in the stored basis, when `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![self.field().zero(); self.ambient];
        for (c, row) in coords.iter().zip(self.basis_vectors()) {
            for (j, b) in row.iter().enumerate() {
                if !b.is_zero() {
                    recon[j] = &recon[j] + &(c * b);
                }
            }
        }
        (recon == v).then_some(coords)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Ok(Subspace::from_vectors(self.field(), self.ambient, vs))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let field = self.field();
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(field, self.ambient));
        }
        // columns u_1..u_a, -v_1..-v_b; a kernel vector (x, y) gives sum x_i u_i in both
        let us = self.basis_vectors();
        let vs = other.basis_vectors();
        let mut cols: Vec<Vec<Scalar>> = us.clone();
        cols.extend(vs.iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = Matrix::from_columns(field, self.ambient, &cols);
        let ker = m.kernel();
        let mut out = Vec::new();
        for k in ker.basis_vectors() {
            let mut w = vec![field.zero(); self.ambient];
            for (i, u) in us.iter().enumerate() {
                if k[i].is_zero() {
                    continue;
                }
                for (j, x) in u.iter().enumerate() {
                    w[j] = &w[j] + &(&k[i] * x);
                }
            }
            out.push(w);
        }
        let _ = b;
        Ok(Subspace::from_vectors(field, self.ambient, out))
    }

    /// Vectors of `outer` extending a basis of `self` to a basis of `outer`.
    pub fn quotient_basis(&self, outer: &Subspace) -> Result<Vec<Vec<Scalar>>> {
        self.check(outer)?;
        if !self.is_subspace_of(outer)? {
            return Err(Error::NotContained);
        }
        let mut current = self.clone();
        let mut out = Vec::new();
        for v in outer.basis_vectors() {
            if !current.contains(&v)? {
                current = current.sum(&Subspace::from_vectors(self.field(), self.ambient, vec![v.clone()]))?;
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Vectors `y` with `y . u = 0` for every `u` in the subspace.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.field(), self.ambient);
        }
        self.basis.kernel()
    }

    /// Image of the subspace under a linear map given as a matrix acting on column vectors.
    pub fn image_under(&self, map: &Matrix) -> Result<Subspace> {
        let mut out = Vec::with_capacity(self.dim());
        for v in self.basis_vectors() {
            out.push(map.mul_vec(&v)?);
        }
        Ok(Subspace::from_vectors(self.field(), map.rows(), out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(field: Field, n: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::from_vectors(field, n, vs.iter().map(|v| v.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    #[test]
    fn sum_and_intersection_of_axes() {
        let q = Field::Rationals;
        let u = span(q, 3, &[&[1, 0, 0]]);
        let v = span(q, 3, &[&[0, 1, 0]]);
        assert_eq!(u.sum(&v).unwrap().dim(), 2);
        assert_eq!(u.intersect(&v).unwrap().dim(), 0);
    }

    #[test]
    fn equal_subspaces() {
        let q = Field::Rationals;
        let u = span(q, 3, &[&[1, 1, 0], &[0, 1, 1]]);
        let v = span(q, 3, &[&[1, 2, 1], &[1, 0, -1]]);
        assert_eq!(u, v);
        assert_eq!(u.intersect(&v).unwrap(), u);
        assert!(u.quotient_basis(&v).unwrap().is_empty());
    }

    #[test]
    fn quotient_basis_extends() {
        let q = Field::Rationals;
        let u = span(q, 3, &[&[1, 1, 0]]);
        let v = span(q, 3, &[&[1, 1, 0], &[0, 0, 1]]);
        let ext = u.quotient_basis(&v).unwrap();
        assert_eq!(ext.len(), 1);
        let e3 = vec![q.zero(), q.zero(), q.one()];
        let diff: Vec<Scalar> = ext[0].iter().zip(&e3).map(|(a, b)| a - b).collect();
        assert!(u.contains(&diff).unwrap());
    }

    #[test]
    fn errors() {
        let q = Field::Rationals;
        let u = span(q, 3, &[&[1, 0, 0]]);
        let w = span(q, 2, &[&[1, 0]]);
        assert!(matches!(u.sum(&w), Err(Error::AmbientMismatch { .. })));
        let v = span(q, 3, &[&[0, 1, 0]]);
        assert!(matches!(u.quotient_basis(&v), Err(Error::NotContained)));
    }

    #[test]
    fn coordinates_roundtrip() {
        let q = Field::Rationals;
        let u = span(q, 3, &[&[1, 2, 3], &[0, 1, 1]]);
        let v: Vec<Scalar> = [2, 5, 7].iter().map(|&x| q.from_i64(x)).collect();
        assert!(u.coordinates(&v).is_some());
        let w: Vec<Scalar> = [0, 0, 1].iter().map(|&x| q.from_i64(x)).collect();
        assert!(u.coordinates(&w).is_none());
    }
}
