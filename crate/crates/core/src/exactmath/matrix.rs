use std::fmt;

use super::field::{Field, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Shape(format!("row of length {} in a {cols}-column matrix", r.len())));
            }
            if let Some(bad) = r.iter().find(|x| x.field() != field) {
                return Err(Error::Shape(format!("entry {bad} is not in {field}")));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, field, data })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| field.from_i64(x))).collect();
        Matrix { rows: rows.len(), cols, field, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, len: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| super::field::dot(self.field, self.row(i), v)).collect())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| c * a).collect();
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).unwrap().sub(&other.mul(self).unwrap())
    }

    /// Row-major flattening, used to treat matrices as vectors.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, field, data }
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pv = m.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&factor * pv);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `{ v : self * v = 0 }`.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, rank, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (r, &p) in pivots.iter().enumerate().take(rank) {
                v[p] = -matrix.get(r, f);
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.field, self.cols, basis)
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let Rref { matrix, rank, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for r in 0..rank {
            x[pivots[r]] = matrix.get(r, self.cols).clone();
        }
        debug_assert_eq!(self.mul_vec(&x).unwrap(), b);
        Ok(Some(x))
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = det * &pivot;
            let inv = pivot.inv().unwrap();
            for i in c + 1..n {
                let factor = m.get(i, c) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&factor * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let r = aug.rref();
        if r.rank < n || r.pivots[n - 1] != n - 1 {
            return Err(Error::NotInvertible);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.matrix.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Coefficients `c_0..c_n` (ascending) of `det(t I - self)`, by the
    /// division-free Berkowitz recursion.
    pub fn charpoly(&self) -> Vec<Scalar> {
        assert!(self.is_square());
        let n = self.rows;
        let f = self.field;
        // vector stored highest-degree first during the recursion
        let mut poly = vec![f.one()];
        for k in 0..n {
            // leading principal submatrix of size k+1, split as [[A, R], [C, a]]
            let a = self.get(k, k).clone();
            let r: Vec<Scalar> = (0..k).map(|j| self.get(k, j).clone()).collect();
            let c: Vec<Scalar> = (0..k).map(|i| self.get(i, k).clone()).collect();
            // Toeplitz column: 1, -a, -R C, -R A C, ...
            let mut col = Vec::with_capacity(k + 2);
            col.push(f.one());
            col.push(-&a);
            let mut v = c.clone();
            for _ in 0..k {
                let rv = super::field::dot(f, &r, &v);
                col.push(-rv);
                let mut nv = vec![f.zero(); k];
                for (i, item) in nv.iter_mut().enumerate() {
                    let mut acc = f.zero();
                    for (j, vj) in v.iter().enumerate() {
                        let m = self.get(i, j);
                        if !m.is_zero() && !vj.is_zero() {
                            acc = acc + m * vj;
                        }
                    }
                    *item = acc;
                }
                v = nv;
            }
            let mut next = vec![f.zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                let mut acc = f.zero();
                for (j, pj) in poly.iter().enumerate() {
                    if j <= i && i - j < col.len() {
                        acc = acc + &(&col[i - j] * pj);
                    }
                }
                *slot = acc;
            }
            poly = next;
        }
        poly.reverse();
        poly
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_proportional_rows() {
        let m = Matrix::from_i64(Field::Rationals, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = Matrix::identity(Field::Rationals, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_over_gf2() {
        let f = Field::Prime(2);
        let m = Matrix::from_i64(f, &[&[1, 1], &[1, 2]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::identity(f, 2));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn kernel_examples() {
        let q = Field::Rationals;
        let k = Matrix::from_i64(q, &[&[1, 2]]).kernel();
        assert_eq!(k.dim(), 1);
        let v = &k.basis_vectors()[0];
        assert_eq!(v[0], &q.from_i64(-2) * &v[1]);
        assert_eq!(Matrix::from_i64(q, &[&[1, 2], &[3, 4]]).kernel().dim(), 0);
        let f3 = Field::Prime(3);
        assert_eq!(Matrix::from_i64(f3, &[&[1, 1, 1], &[0, 0, 0]]).kernel().dim(), 2);
    }

    #[test]
    fn solve_examples() {
        let q = Field::Rationals;
        let x = Matrix::from_i64(q, &[&[2]]).solve(&[q.from_i64(1)]).unwrap().unwrap();
        assert_eq!(x[0].to_string(), "1/2");
        let none = Matrix::from_i64(q, &[&[1], &[1]]).solve(&[q.from_i64(0), q.from_i64(1)]).unwrap();
        assert!(none.is_none());
        let x = Matrix::from_i64(q, &[&[1, 1], &[0, 1]])
            .solve(&[q.from_i64(3), q.from_i64(1)])
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![q.from_i64(2), q.from_i64(1)]);
    }

    #[test]
    fn charpoly_matches_determinant_expansion() {
        let q = Field::Rationals;
        let m = Matrix::from_i64(q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let cp = m.charpoly();
        // det(tI - M) evaluated at t = 0..4 against direct determinants
        for t in 0..5i64 {
            let shifted = Matrix::identity(q, 3).scale(&q.from_i64(t)).sub(&m);
            let mut val = q.zero();
            let mut pow = q.one();
            for c in &cp {
                val = val + &(c * &pow);
                pow = pow * q.from_i64(t);
            }
            assert_eq!(val, shifted.determinant().unwrap());
        }
        let rot = Matrix::from_i64(q, &[&[0, -1], &[1, 0]]);
        assert_eq!(rot.charpoly(), vec![q.one(), q.zero(), q.one()]);
    }

    #[test]
    fn inverse_roundtrip() {
        let q = Field::Rationals;
        let m = Matrix::from_i64(q, &[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(q, 2));
        assert!(Matrix::from_i64(q, &[&[1, 2], &[2, 4]]).inverse().is_err());
    }
}
