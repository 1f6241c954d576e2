use std::collections::BTreeMap;
use std::fmt;

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix, Scalar};

/// Polynomial in `X1..Xn` with exact coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n_vars: usize,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: Field, n_vars: usize) -> Self {
        MultiPoly { n_vars, field, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, n_vars: usize, c: Scalar) -> Self {
        Self::term(field, c, Monomial::one(n_vars))
    }

    pub fn term(field: Field, c: Scalar, m: Monomial) -> Self {
        let mut p = Self::zero(field, m.n_vars());
        p.add_term(m, c);
        p
    }

    pub fn monomial(field: Field, m: Monomial) -> Self {
        Self::term(field, field.one(), m)
    }

    /// The variable `X_{var+1}` (0-based index).
    pub fn var(field: Field, n_vars: usize, var: usize) -> Self {
        Self::monomial(field, Monomial::var(n_vars, var))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(field: Field, n_vars: usize, terms: I) -> Self {
        let mut p = Self::zero(field, n_vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        assert_eq!(m.n_vars(), self.n_vars, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.field, self.n_vars);
        }
        MultiPoly { n_vars: self.n_vars, field: self.field, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = Self::zero(self.field, self.n_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly { n_vars: self.n_vars, field: self.field, terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::constant(self.field, self.n_vars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.n_vars);
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Homogeneous pieces keyed by degree; empty for the zero polynomial.
    pub fn homogeneous_components(&self) -> BTreeMap<usize, MultiPoly> {
        let mut out: BTreeMap<usize, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Self::zero(self.field, self.n_vars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// The homogeneous component of degree `d` (possibly zero).
    pub fn component(&self, d: usize) -> MultiPoly {
        Self::from_terms(
            self.field,
            self.n_vars,
            self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Drops all terms of degree `>= l`.
    pub fn truncated(&self, l: usize) -> MultiPoly {
        Self::from_terms(
            self.field,
            self.n_vars,
            self.terms.iter().filter(|(m, _)| m.degree() < l).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Formal partial derivative with respect to the 0-based variable `var`.
    pub fn partial_derivative(&self, var: usize) -> MultiPoly {
        assert!(var < self.n_vars, "variable index out of range");
        let mut out = Self::zero(self.field, self.n_vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[var] -= 1;
            out.add_term(Monomial::new(ex), c * &self.field.from_u64(e as u64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.n_vars).map(|i| self.partial_derivative(i)).collect()
    }

    /// `f(X M)`: each `Xj` is replaced by `sum_i M[i][j] Xi`.
    pub fn apply_linear_change(&self, m: &Matrix) -> Result<MultiPoly> {
        LinearChange::new(m.clone())?.apply(self)
    }

    /// Substitution without the invertibility check; used for linearized actions.
    pub(crate) fn substitute_linear(&self, m: &Matrix) -> MultiPoly {
        let n = self.n_vars;
        let images: Vec<MultiPoly> = (0..n)
            .map(|j| Self::from_terms(self.field, n, (0..n).map(|i| (Monomial::var(n, i), m.get(i, j).clone()))))
            .collect();
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![Self::constant(self.field, n, self.field.one()), p.clone()]).collect();
        let mut out = Self::zero(self.field, n);
        for (mono, c) in &self.terms {
            let mut t = Self::constant(self.field, n, c.clone());
            for (j, &e) in mono.exponents().iter().enumerate() {
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().mul(&images[j]);
                    powers[j].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[j][e as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// `delta_M(f) = sum_j (sum_i m_ij Xi) df/dXj`, the derivative of `f(X(I + tM))` at `t = 0`.
    pub fn linearized_action(&self, m: &Matrix) -> MultiPoly {
        let n = self.n_vars;
        let mut out = Self::zero(self.field, n);
        for j in 0..n {
            let d = self.partial_derivative(j);
            if d.is_zero() {
                continue;
            }
            for i in 0..n {
                let c = m.get(i, j);
                if !c.is_zero() {
                    out = out.add(&d.mul_monomial(&Monomial::var(n, i)).scale(c));
                }
            }
        }
        out
    }

    /// `(M, g)` with `f = M g` and `M` the gcd of the monomials of `f`.
    pub fn monomial_gcd_factor(&self) -> Result<(Monomial, MultiPoly)> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroInput)?.clone();
        let g = it.fold(first, |acc, m| acc.gcd(m));
        let rest = Self::from_terms(self.field, self.n_vars, self.terms.iter().map(|(m, c)| (m.div(&g).unwrap(), c.clone())));
        Ok((g, rest))
    }

    /// 1-based index of the smallest variable occurring in a homogeneous non-monomial `g`.
    pub fn s_index(&self) -> Result<usize> {
        if self.terms.len() < 2 {
            return Err(Error::NotSHomogeneous(format!("'{self}' is a monomial or constant")));
        }
        if !self.is_homogeneous() {
            return Err(Error::NotSHomogeneous(format!("'{self}' is not homogeneous")));
        }
        let s = self.terms.keys().filter_map(Monomial::min_var).min().unwrap();
        Ok(s + 1)
    }

    /// 0-based indices of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.n_vars).filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0)).collect()
    }

    /// Reinterprets the coefficients in a prime field; `None` if a denominator vanishes mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<MultiPoly> {
        let fp = Field::Prime(p);
        let mut out = Self::zero(fp, self.n_vars);
        for (m, c) in &self.terms {
            let q = c.as_rational()?;
            out.add_term(m.clone(), fp.from_ratio(q.numer(), q.denom()).ok()?);
        }
        Some(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Invertible change of variables acting by `f(X) -> f(X M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    matrix: Matrix,
}

impl LinearChange {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok(LinearChange { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        if self.matrix.rows() != f.n_vars() {
            return Err(Error::Shape(format!("{}x{} change for {} variables", self.matrix.rows(), self.matrix.cols(), f.n_vars())));
        }
        Ok(f.substitute_linear(&self.matrix))
    }
}
