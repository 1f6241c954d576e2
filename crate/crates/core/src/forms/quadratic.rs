use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::field::{dot, is_zero_vector};
use crate::exactmath::{Field, Matrix, Scalar};
use crate::poly::{Monomial, MultiPoly};

pub const DEFAULT_HEIGHT_BOUND: u64 = 50;
/// Cap on candidate vectors examined by the rational witness search.
pub const SEARCH_BUDGET: u64 = 200_000;

/// A quadratic form with symmetric Gram matrix, `q(v) = v^T G v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub gram: Matrix,
    pub poly: MultiPoly,
}

impl QuadraticForm {
    pub fn n_vars(&self) -> usize {
        self.gram.rows()
    }

    pub fn field(&self) -> Field {
        self.gram.field()
    }

    pub fn eval(&self, v: &[Scalar]) -> Scalar {
        dot(self.field(), v, &self.gram.mul_vec(v).unwrap())
    }

    pub fn is_degenerate(&self) -> bool {
        !self.gram.is_invertible()
    }
}

pub fn quadratic_from_poly(f: &MultiPoly) -> Result<QuadraticForm> {
    let field = f.field();
    if field.characteristic() == 2 {
        return Err(Error::CharTwo);
    }
    if f.is_zero() || !f.is_homogeneous() || f.degree() != Some(2) {
        return Err(Error::NotDegreeTwo);
    }
    let n = f.n_vars();
    let half = field.from_i64(2).inv().unwrap();
    let mut gram = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in i..n {
            let m = Monomial::var(n, i).mul(&Monomial::var(n, j));
            let c = f.coefficient(&m);
            if i == j {
                gram.set(i, i, c);
            } else {
                let h = &c * &half;
                gram.set(i, j, h.clone());
                gram.set(j, i, h);
            }
        }
    }
    Ok(QuadraticForm { gram, poly: f.clone() })
}

/// Congruence diagonalization: returns `(P, d)` with `P^T G P = diag(d)` and `P` invertible.
pub fn diagonalize(q: &QuadraticForm) -> (Matrix, Vec<Scalar>) {
    let n = q.n_vars();
    let f = q.field();
    let mut a = q.gram.clone();
    let mut p = Matrix::identity(f, n);
    // both row and column operations on `a`, column operations on `p`
    let add_multiple = |a: &mut Matrix, p: &mut Matrix, target: usize, source: usize, c: &Scalar| {
        for r in 0..n {
            let v = a.get(r, target) + &(c * a.get(r, source));
            a.set(r, target, v);
            let v = p.get(r, target) + &(c * p.get(r, source));
            p.set(r, target, v);
        }
        for col in 0..n {
            let v = a.get(target, col) + &(c * a.get(source, col));
            a.set(target, col, v);
        }
    };
    for k in 0..n {
        if a.get(k, k).is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                add_multiple(&mut a, &mut p, k, j, &f.one());
            } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                add_multiple(&mut a, &mut p, k, j, &f.one());
            } else {
                continue;
            }
        }
        let inv = a.get(k, k).inv().unwrap();
        for i in k + 1..n {
            if a.get(i, k).is_zero() {
                continue;
            }
            let c = -(a.get(i, k) * &inv);
            add_multiple(&mut a, &mut p, i, k, &c);
        }
    }
    let d = (0..n).map(|i| a.get(i, i).clone()).collect();
    (p, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsotropyMethod {
    Definiteness,
    Degeneracy,
    ExhaustiveFiniteField,
    BoundedSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropyVerdict {
    AnisotropicCertified,
    IsotropicWitness(Vec<Scalar>),
    Unknown,
}

impl IsotropyVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            IsotropyVerdict::AnisotropicCertified => "ANISOTROPIC_CERTIFIED",
            IsotropyVerdict::IsotropicWitness(_) => "ISOTROPIC_WITNESS",
            IsotropyVerdict::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyEvidence {
    pub verdict: IsotropyVerdict,
    pub method: IsotropyMethod,
    /// Height bound actually searched (rational search only).
    pub height_searched: Option<u64>,
}

/// Anisotropy certificate or isotropic vector. Over `Q` the certificate is definiteness and the
/// witness search solves for the last diagonal coordinate over a box of height `height_bound`;
/// over `GF(p)` the scan is exhaustive up to `max_enum` prefixes and reports the lexicographically
/// smallest witness.
pub fn isotropy(q: &QuadraticForm, height_bound: u64, max_enum: u128) -> IsotropyEvidence {
    let n = q.n_vars();
    if q.is_degenerate() {
        let v = q.gram.kernel().basis_vectors().remove(0);
        if q.field().is_finite() {
            if let Some(w) = finite_scan(q, max_enum) {
                return IsotropyEvidence { verdict: IsotropyVerdict::IsotropicWitness(w), method: IsotropyMethod::ExhaustiveFiniteField, height_searched: None };
            }
        }
        return IsotropyEvidence { verdict: IsotropyVerdict::IsotropicWitness(v), method: IsotropyMethod::Degeneracy, height_searched: None };
    }
    match q.field() {
        Field::Prime(_) => {
            let prefixes = (q.field().characteristic() as u128).saturating_pow(n.saturating_sub(1) as u32);
            if prefixes > max_enum {
                return IsotropyEvidence { verdict: IsotropyVerdict::Unknown, method: IsotropyMethod::ExhaustiveFiniteField, height_searched: None };
            }
            let verdict = match finite_scan(q, max_enum) {
                Some(w) => IsotropyVerdict::IsotropicWitness(w),
                None => IsotropyVerdict::AnisotropicCertified,
            };
            IsotropyEvidence { verdict, method: IsotropyMethod::ExhaustiveFiniteField, height_searched: None }
        }
        Field::Rationals => {
            let (p, d) = diagonalize(q);
            let signs: Vec<i32> = d.iter().map(|x| x.signum().unwrap()).collect();
            if signs.iter().all(|&s| s > 0) || signs.iter().all(|&s| s < 0) {
                return IsotropyEvidence { verdict: IsotropyVerdict::AnisotropicCertified, method: IsotropyMethod::Definiteness, height_searched: None };
            }
            let (witness, h) = rational_search(&d, height_bound);
            let verdict = match witness {
                Some(y) => {
                    let v = p.mul_vec(&y).unwrap();
                    debug_assert!(q.eval(&v).is_zero());
                    IsotropyVerdict::IsotropicWitness(v)
                }
                None => IsotropyVerdict::Unknown,
            };
            IsotropyEvidence { verdict, method: IsotropyMethod::BoundedSearch, height_searched: Some(h) }
        }
    }
}

/// Searches `sum d_i y_i^2 = 0` with integer `y_1..y_{n-1}` in `[-h, h]` and rational `y_n`.
fn rational_search(d: &[Scalar], height_bound: u64) -> (Option<Vec<Scalar>>, u64) {
    let n = d.len();
    let f = Field::Rationals;
    let free = n - 1;
    let mut h = height_bound;
    while h > 1 && (2 * h + 1).saturating_pow(free as u32) > SEARCH_BUDGET {
        h -= 1;
    }
    let last_inv = d[n - 1].inv().unwrap();
    let mut y = vec![-(h as i64); free];
    loop {
        if y.iter().any(|&c| c != 0) {
            let ys: Vec<Scalar> = y.iter().map(|&c| f.from_i64(c)).collect();
            let partial = ys.iter().zip(d).fold(f.zero(), |acc, (c, di)| &acc + &(&(c * c) * di));
            let target = -(&partial * &last_inv);
            if let Some(t) = target.sqrt() {
                let mut v = ys;
                v.push(t);
                return (Some(v), h);
            }
        }
        let mut i = 0;
        loop {
            if i == free {
                return (None, h);
            }
            if y[i] < h as i64 {
                y[i] += 1;
                break;
            }
            y[i] = -(h as i64);
            i += 1;
        }
    }
}

/// Lexicographically smallest nonzero `v` in `GF(p)^n` with `q(v) = 0`, solving for the last coordinate.
fn finite_scan(q: &QuadraticForm, max_enum: u128) -> Option<Vec<Scalar>> {
    let f = q.field();
    let p = f.characteristic();
    let n = q.n_vars();
    if (p as u128).saturating_pow(n.saturating_sub(1) as u32) > max_enum {
        return None;
    }
    let g = |i: usize, j: usize| q.gram.get(i, j).residue().unwrap();
    let a = g(n - 1, n - 1);
    let mut prefix = vec![0u64; n - 1];
    loop {
        let mut b = 0u64;
        let mut c = 0u64;
        for i in 0..n - 1 {
            b = (b + 2 * g(i, n - 1) % p * prefix[i]) % p;
            for j in 0..n - 1 {
                c = (c + g(i, j) * prefix[i] % p * prefix[j]) % p;
            }
        }
        let prefix_zero = prefix.iter().all(|&x| x == 0);
        if let Some(t) = smallest_root(f, a, b, c, prefix_zero) {
            let mut v: Vec<Scalar> = prefix.iter().map(|&x| f.from_u64(x)).collect();
            v.push(f.from_u64(t));
            debug_assert!(q.eval(&v).is_zero() && !is_zero_vector(&v));
            return Some(v);
        }
        let mut i = n - 1;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if prefix[i] + 1 < p {
                prefix[i] += 1;
                for x in &mut prefix[i + 1..] {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Smallest `t` in `GF(p)` with `a t^2 + b t + c = 0`, excluding `t = 0` when `nonzero` is set.
fn smallest_root(f: Field, a: u64, b: u64, c: u64, nonzero: bool) -> Option<u64> {
    let p = f.characteristic();
    let ok = |t: u64| !(nonzero && t == 0);
    let mut roots: Vec<u64> = Vec::new();
    if a == 0 {
        if b == 0 {
            if c == 0 {
                return (0..p).find(|&t| ok(t));
            }
            return None;
        }
        let t = (p - c) % p * f.from_u64(b).inv().unwrap().residue().unwrap() % p;
        roots.push(t);
    } else {
        let disc = (b * b % p + p - 4 * a % p * c % p) % p;
        let s = f.from_u64(disc).sqrt()?.residue().unwrap();
        let inv2a = f.from_u64(2 * a % p).inv().unwrap().residue().unwrap();
        for sign_s in [s, (p - s) % p] {
            roots.push(((p - b) % p + sign_s) % p * inv2a % p);
        }
    }
    roots.into_iter().filter(|&t| ok(t)).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn form(text: &str, n: usize, field: Field) -> QuadraticForm {
        quadratic_from_poly(&parse_poly(text, n, field).unwrap()).unwrap()
    }

    #[test]
    fn gram_examples() {
        let q = Field::Rationals;
        assert_eq!(form("X1^2 + X2^2", 2, q).gram, Matrix::identity(q, 2));
        let h = form("X1*X2", 2, q);
        let half = q.from_ratio(&1.into(), &2.into()).unwrap();
        assert_eq!(h.gram.get(0, 1), &half);
        assert!(h.gram.get(0, 0).is_zero());
        let f5 = Field::Prime(5);
        assert_eq!(form("2*X1^2 + 3*X1*X2", 2, f5).gram, Matrix::from_i64(f5, &[&[2, 4], &[4, 0]]));
    }

    #[test]
    fn gram_errors() {
        let x = parse_poly("X1^2", 1, Field::Prime(2)).unwrap();
        assert_eq!(quadratic_from_poly(&x), Err(Error::CharTwo));
        let y = parse_poly("X1^3", 1, Field::Rationals).unwrap();
        assert_eq!(quadratic_from_poly(&y), Err(Error::NotDegreeTwo));
    }

    #[test]
    fn diagonalization_examples() {
        let q = Field::Rationals;
        let h = form("X1*X2", 2, q);
        let (p, d) = diagonalize(&h);
        assert_eq!(p.transpose().mul(&h.gram).unwrap().mul(&p).unwrap(), Matrix::from_columns(q, 2, &[vec![d[0].clone(), q.zero()], vec![q.zero(), d[1].clone()]]));
        assert_eq!((d[0].signum(), d[1].signum()), (Some(1), Some(-1)));
        let (_, d) = diagonalize(&form("X1^2 + X2^2", 2, q));
        assert_eq!(d, vec![q.one(), q.one()]);
        let (_, d) = diagonalize(&form("X1^2", 2, q));
        assert_eq!(d, vec![q.one(), q.zero()]);
    }

    #[test]
    fn isotropy_examples() {
        let q = Field::Rationals;
        let e = isotropy(&form("X1^2 + X2^2", 2, q), 50, 1 << 20);
        assert_eq!(e.verdict, IsotropyVerdict::AnisotropicCertified);
        assert_eq!(e.method, IsotropyMethod::Definiteness);

        let f5 = Field::Prime(5);
        let e = isotropy(&form("X1^2 + X2^2", 2, f5), 50, 1 << 20);
        assert_eq!(e.verdict, IsotropyVerdict::IsotropicWitness(vec![f5.one(), f5.from_i64(2)]));

        let e = isotropy(&form("X1^2 - 2*X2^2", 2, q), 50, 1 << 20);
        assert_eq!(e.verdict, IsotropyVerdict::Unknown);
        assert_eq!(e.height_searched, Some(50));

        let e = isotropy(&form("X1^2 - X2^2 - X3^2 + 3*X1*X2", 3, q), 50, 1 << 20);
        let IsotropyVerdict::IsotropicWitness(v) = e.verdict else { panic!("expected witness") };
        assert!(form("X1^2 - X2^2 - X3^2 + 3*X1*X2", 3, q).eval(&v).is_zero());
    }

    #[test]
    fn ternary_forms_over_finite_fields_are_isotropic() {
        for p in [3u64, 5, 7, 11] {
            let f = Field::Prime(p);
            let qf = form("X1^2 + X2^2 + X3^2", 3, f);
            assert!(matches!(isotropy(&qf, 50, 1 << 20).verdict, IsotropyVerdict::IsotropicWitness(_)));
        }
    }

    #[test]
    fn gf3_binary_sum_of_squares_is_anisotropic() {
        let f = Field::Prime(3);
        let e = isotropy(&form("X1^2 + X2^2", 2, f), 50, 1 << 20);
        assert_eq!(e.verdict, IsotropyVerdict::AnisotropicCertified);
    }
}
