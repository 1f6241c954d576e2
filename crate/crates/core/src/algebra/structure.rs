use crate::error::{Error, Result};
use crate::exactmath::field::{is_zero_vector, unit_vector, vec_sub};
use crate::exactmath::{Field, LinearSystem, Matrix, Scalar, Subspace};

/// Finite-dimensional unital associative algebra given by structure constants
/// `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    dim: usize,
    field: Field,
    /// Nonzero entries of `e_i e_j`, stored at `i * dim + j`.
    products: Vec<Vec<(usize, Scalar)>>,
    one: Vec<Scalar>,
    commutative: bool,
    known_radical: Option<Subspace>,
}

impl StructureAlgebra {
    /// Validates shape, unit and associativity (in that order).
    pub fn load(field: Field, table: Vec<Vec<Vec<Scalar>>>, one: Vec<Scalar>) -> Result<Self> {
        let d = table.len();
        if one.len() != d {
            return Err(Error::Shape(format!("identity has {} coordinates for dimension {d}", one.len())));
        }
        let mut products = Vec::with_capacity(d * d);
        for (i, row) in table.into_iter().enumerate() {
            if row.len() != d {
                return Err(Error::Shape(format!("table[{i}] has length {} instead of {d}", row.len())));
            }
            for (j, v) in row.into_iter().enumerate() {
                if v.len() != d {
                    return Err(Error::Shape(format!("table[{i}][{j}] has length {} instead of {d}", v.len())));
                }
                products.push(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        let mut a = StructureAlgebra { dim: d, field, products, one, commutative: false, known_radical: None };
        a.check_unit()?;
        a.check_associative()?;
        a.commutative = (0..d).all(|i| (0..i).all(|j| a.products[i * d + j] == a.products[j * d + i]));
        Ok(a)
    }

    /// Builds an algebra from per-pair products without validation.
    pub(crate) fn from_products_unchecked(field: Field, dim: usize, products: Vec<Vec<(usize, Scalar)>>, one: Vec<Scalar>) -> Self {
        let commutative = (0..dim).all(|i| (0..i).all(|j| products[i * dim + j] == products[j * dim + i]));
        StructureAlgebra { dim, field, products, one, commutative, known_radical: None }
    }

    /// Attaches a radical known by construction (e.g. from a presentation).
    pub fn with_known_radical(mut self, radical: Subspace) -> Self {
        self.known_radical = Some(radical);
        self
    }

    pub fn known_radical(&self) -> Option<&Subspace> {
        self.known_radical.as_ref()
    }

    fn check_unit(&self) -> Result<()> {
        for j in 0..self.dim {
            let e = unit_vector(self.field, self.dim, j);
            if self.multiply(&self.one, &e) != e || self.multiply(&e, &self.one) != e {
                return Err(Error::NotUnital);
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let ij = self.product_vector(i, j);
                for k in 0..d {
                    let jk = self.product_vector(j, k);
                    let left = self.mul_by_basis_right(&ij, k);
                    let right = self.mul_by_basis_left(i, &jk);
                    if left != right {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn one(&self) -> &[Scalar] {
        &self.one
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Structure constant `c[i][j][k]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.products[i * self.dim + j]
            .iter()
            .find(|(m, _)| *m == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Sparse `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.products[i * self.dim + j]
    }

    /// Dense `e_i e_j`.
    pub fn product_vector(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        for (k, c) in self.product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// The full table as `table[i][j][k]`.
    pub fn table(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.product_vector(i, j)).collect()).collect()
    }

    fn mul_by_basis_right(&self, x: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (m, xm) in x.iter().enumerate() {
            if xm.is_zero() {
                continue;
            }
            for (n, c) in self.product(m, k) {
                out[*n] = &out[*n] + &(xm * c);
            }
        }
        out
    }

    fn mul_by_basis_left(&self, i: usize, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (m, xm) in x.iter().enumerate() {
            if xm.is_zero() {
                continue;
            }
            for (n, c) in self.product(i, m) {
                out[*n] = &out[*n] + &(xm * c);
            }
        }
        out
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in self.product(i, j) {
                    out[*k] = &out[*k] + &(&c * s);
                }
            }
        }
        out
    }

    pub fn power(&self, x: &[Scalar], e: u32) -> Vec<Scalar> {
        let mut acc = self.one.clone();
        for _ in 0..e {
            acc = self.multiply(&acc, x);
        }
        acc
    }

    /// Matrix of `y -> x y` on coordinate columns.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.multiply(x, &unit_vector(self.field, self.dim, j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `y -> y x` on coordinate columns.
    pub fn right_mul_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.multiply(&unit_vector(self.field, self.dim, j), x)).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// `span{u v : u in basis(U), v in basis(V)}`.
    pub fn subspace_product(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut out = Vec::new();
        for a in u.basis_vectors() {
            for b in v.basis_vectors() {
                let p = self.multiply(&a, &b);
                if !is_zero_vector(&p) {
                    out.push(p);
                }
            }
        }
        Subspace::from_vectors(self.field, self.dim, out)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    /// `Z(A)`, the kernel of `x -> (x e_i - e_i x)_i`.
    pub fn center(&self) -> Subspace {
        let d = self.dim;
        if self.commutative {
            return self.full_space();
        }
        let mut sys = LinearSystem::new(self.field, d);
        for i in 0..d {
            for k in 0..d {
                let eq: Vec<(usize, Scalar)> = (0..d).map(|m| (m, &self.constant(m, i, k) - &self.constant(i, m, k))).collect();
                sys.add_equation(eq);
            }
        }
        sys.kernel()
    }

    /// Whether `S` is a two-sided ideal.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let full = self.full_space();
        self.subspace_product(&full, s).is_subspace_of(s).unwrap() && self.subspace_product(s, &full).is_subspace_of(s).unwrap()
    }

    /// The quotient `A / I` by a two-sided ideal, in the basis of unit vectors at the
    /// non-pivot columns of `I`. Returns the algebra and those column indices.
    pub fn quotient(&self, ideal: &Subspace) -> (StructureAlgebra, Vec<usize>) {
        let d = self.dim;
        let keep: Vec<usize> = (0..d).filter(|c| !ideal.pivots().contains(c)).collect();
        let m = keep.len();
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce(v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let mut products = Vec::with_capacity(m * m);
        for &a in &keep {
            for &b in &keep {
                let p = project(&self.product_vector(a, b));
                products.push(p.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        let one = project(&self.one);
        (StructureAlgebra::from_products_unchecked(self.field, m, products, one), keep)
    }

    /// The subalgebra spanned by a multiplicatively closed subspace containing
    /// an identity element `unit` for it, in the subspace's stored basis.
    pub fn subalgebra(&self, s: &Subspace, unit: &[Scalar]) -> Result<StructureAlgebra> {
        let basis = s.basis_vectors();
        let m = basis.len();
        let mut products = Vec::with_capacity(m * m);
        for a in &basis {
            for b in &basis {
                let p = self.multiply(a, b);
                let coords = s.coordinates(&p).ok_or(Error::NotContained)?;
                products.push(coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        let one = s.coordinates(unit).ok_or(Error::NotContained)?;
        Ok(StructureAlgebra::from_products_unchecked(self.field, m, products, one))
    }

    /// Direct product `A x B` with block-diagonal structure constants.
    pub fn direct_product(&self, other: &StructureAlgebra) -> StructureAlgebra {
        assert_eq!(self.field, other.field);
        let (d1, d2) = (self.dim, other.dim);
        let d = d1 + d2;
        let mut products = vec![Vec::new(); d * d];
        for i in 0..d1 {
            for j in 0..d1 {
                products[i * d + j] = self.product(i, j).to_vec();
            }
        }
        for i in 0..d2 {
            for j in 0..d2 {
                products[(d1 + i) * d + d1 + j] = other.product(i, j).iter().map(|(k, c)| (k + d1, c.clone())).collect();
            }
        }
        let mut one = self.one.clone();
        one.extend(other.one.iter().cloned());
        StructureAlgebra::from_products_unchecked(self.field, d, products, one)
    }

    /// Reduces rational structure constants modulo `p`; `None` if a denominator vanishes.
    pub fn reduce_mod(&self, p: u64) -> Option<StructureAlgebra> {
        let fp = Field::Prime(p);
        let conv = |c: &Scalar| c.as_rational().and_then(|q| fp.from_rational(q).ok());
        let mut products = Vec::with_capacity(self.products.len());
        for row in &self.products {
            let mut out = Vec::new();
            for (k, c) in row {
                let v = conv(c)?;
                if !v.is_zero() {
                    out.push((*k, v));
                }
            }
            products.push(out);
        }
        let one = self.one.iter().map(conv).collect::<Option<Vec<_>>>()?;
        let known = match &self.known_radical {
            Some(r) => Some(Subspace::from_vectors(
                fp,
                self.dim,
                r.basis_vectors().iter().map(|v| v.iter().map(conv).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()?,
            )),
            None => None,
        };
        let mut a = StructureAlgebra::from_products_unchecked(fp, self.dim, products, one);
        a.known_radical = known;
        Some(a)
    }

    /// `x y - y x`.
    pub fn commutator(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        vec_sub(&self.multiply(x, y), &self.multiply(y, x))
    }
}

/// Common example algebras.
pub mod examples {
    use super::*;

    /// `k[x]/(x^n)` in the basis `1, x, ..., x^(n-1)`.
    pub fn truncated_polynomial(field: Field, n: usize) -> StructureAlgebra {
        let mut table = vec![vec![vec![field.zero(); n]; n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                if i + j < n {
                    v[i + j] = field.one();
                }
            }
        }
        StructureAlgebra::load(field, table, unit_vector(field, n, 0)).unwrap()
    }

    /// `k^m` with componentwise product.
    pub fn split_semisimple(field: Field, m: usize) -> StructureAlgebra {
        let mut table = vec![vec![vec![field.zero(); m]; m]; m];
        for (i, row) in table.iter_mut().enumerate() {
            row[i][i] = field.one();
        }
        StructureAlgebra::load(field, table, vec![field.one(); m]).unwrap()
    }

    /// Full matrix algebra `M_n(k)` in the basis of matrix units `E_ab` at index `a n + b`.
    pub fn matrix_algebra(field: Field, n: usize) -> StructureAlgebra {
        let d = n * n;
        let mut table = vec![vec![vec![field.zero(); d]; d]; d];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    table[a * n + b][b * n + c][a * n + c] = field.one();
                }
            }
        }
        let mut one = vec![field.zero(); d];
        for a in 0..n {
            one[a * n + a] = field.one();
        }
        StructureAlgebra::load(field, table, one).unwrap()
    }

    /// Upper-triangular `n x n` matrices in the basis `E_ab`, `a <= b`, row by row.
    pub fn upper_triangular(field: Field, n: usize) -> StructureAlgebra {
        let units: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let idx = |a: usize, b: usize| units.iter().position(|&u| u == (a, b)).unwrap();
        let d = units.len();
        let mut table = vec![vec![vec![field.zero(); d]; d]; d];
        for (i, &(a, b)) in units.iter().enumerate() {
            for (j, &(c, e)) in units.iter().enumerate() {
                if b == c {
                    table[i][j][idx(a, e)] = field.one();
                }
            }
        }
        let mut one = vec![field.zero(); d];
        for a in 0..n {
            one[idx(a, a)] = field.one();
        }
        StructureAlgebra::load(field, table, one).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    #[test]
    fn load_examples() {
        let q = Field::Rationals;
        let a = split_semisimple(q, 2);
        assert!(a.is_commutative());
        let t = upper_triangular(q, 2);
        assert_eq!(t.dim(), 3);
        assert!(!t.is_commutative());
        // e1 e1 = e2, e2 e2 = e1, no unit
        let mut table = vec![vec![vec![q.zero(); 2]; 2]; 2];
        table[0][0][1] = q.one();
        table[1][1][0] = q.one();
        assert_eq!(StructureAlgebra::load(q, table, vec![q.one(), q.one()]), Err(Error::NotUnital));
    }

    #[test]
    fn detects_non_associativity() {
        let q = Field::Rationals;
        // basis 1, a, b with a a = b, a b = 0, b a = a: (a a) a = b a = a, a (a a) = a b = 0
        let mut table = vec![vec![vec![q.zero(); 3]; 3]; 3];
        for i in 0..3 {
            table[0][i][i] = q.one();
            table[i][0][i] = q.one();
        }
        table[1][1][2] = q.one();
        table[2][1][1] = q.one();
        assert!(matches!(StructureAlgebra::load(q, table, unit_vector(q, 3, 0)), Err(Error::NonAssociative(..))));
    }

    #[test]
    fn subspace_product_examples() {
        let q = Field::Rationals;
        let t = upper_triangular(q, 2);
        // basis E11, E12, E22
        let j = Subspace::from_vectors(q, 3, vec![unit_vector(q, 3, 1)]);
        assert!(t.subspace_product(&j, &j).is_zero());
        let e11 = Subspace::from_vectors(q, 3, vec![unit_vector(q, 3, 0)]);
        assert_eq!(t.subspace_product(&e11, &j), j);
        let a = truncated_polynomial(q, 3);
        let x = Subspace::from_vectors(q, 3, vec![unit_vector(q, 3, 1)]);
        assert_eq!(a.subspace_product(&x, &x), Subspace::from_vectors(q, 3, vec![unit_vector(q, 3, 2)]));
    }

    #[test]
    fn center_examples() {
        let q = Field::Rationals;
        assert_eq!(truncated_polynomial(q, 3).center().dim(), 3);
        assert_eq!(upper_triangular(q, 2).center().dim(), 1);
        let m2 = matrix_algebra(q, 2);
        let z = m2.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(m2.one()).unwrap());
    }

    #[test]
    fn quotient_of_truncated_polynomial() {
        let q = Field::Rationals;
        let a = truncated_polynomial(q, 3);
        let j = Subspace::from_vectors(q, 3, vec![unit_vector(q, 3, 1), unit_vector(q, 3, 2)]);
        let (b, keep) = a.quotient(&j);
        assert_eq!(keep, vec![0]);
        assert_eq!(b.dim(), 1);
        assert!(b.one()[0].is_one());
    }
}
