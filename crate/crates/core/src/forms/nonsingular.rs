use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::quadratic::{DEFAULT_HEIGHT_BOUND, SEARCH_BUDGET};
use crate::algebra::radical::DEFAULT_MAX_ENUM;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Scalar, UniPoly};
use crate::poly::MultiPoly;

pub const DEFAULT_PRIMES: [u64; 4] = [5, 7, 11, 13];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonsingularityConfig {
    pub height_bound: u64,
    pub primes: Vec<u64>,
    pub max_enum: u128,
}

impl Default for NonsingularityConfig {
    fn default() -> Self {
        NonsingularityConfig { height_bound: DEFAULT_HEIGHT_BOUND, primes: DEFAULT_PRIMES.to_vec(), max_enum: DEFAULT_MAX_ENUM }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonsingularityVerdict {
    NonsingularCertified,
    SingularWitness(Vec<Scalar>),
    /// The partials share a projective zero defined only over an extension of the base field.
    SingularOverExtension,
    ProbablyNonsingular,
    Unknown,
}

impl NonsingularityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            NonsingularityVerdict::NonsingularCertified => "NONSINGULAR_CERTIFIED",
            NonsingularityVerdict::SingularWitness(_) => "SINGULAR_WITNESS",
            NonsingularityVerdict::SingularOverExtension => "SINGULAR_OVER_EXTENSION",
            NonsingularityVerdict::ProbablyNonsingular => "PROBABLY_NONSINGULAR",
            NonsingularityVerdict::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonsingularityMethod {
    DiagonalRule,
    BinaryGcd,
    RationalSearch,
    FiniteFieldScan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonsingularityEvidence {
    pub verdict: NonsingularityVerdict,
    pub method: NonsingularityMethod,
    /// Primes whose scan found no common zero of the partials.
    pub primes_used: Vec<u64>,
    /// Primes whose scan found a common zero (bad reduction or a genuine singularity).
    pub primes_with_zeros: Vec<u64>,
}

impl NonsingularityEvidence {
    fn exact(verdict: NonsingularityVerdict, method: NonsingularityMethod) -> Self {
        NonsingularityEvidence { verdict, method, primes_used: Vec::new(), primes_with_zeros: Vec::new() }
    }
}

/// For `f = sum a_i X_i^d`: nonsingular exactly when every `a_i != 0` and `char` does not divide `d`.
/// `None` when `f` is not of that shape.
pub fn diagonal_rule(f: &MultiPoly) -> Option<bool> {
    let d = f.degree()?;
    if !f.is_homogeneous() || d < 2 {
        return None;
    }
    let n = f.n_vars();
    let mut present = vec![false; n];
    for m in f.terms().keys() {
        let vars = (0..n).filter(|&i| m.exponents()[i] > 0).collect::<Vec<_>>();
        if vars.len() != 1 {
            return None;
        }
        present[vars[0]] = true;
    }
    let p = f.field().characteristic();
    Some(present.iter().all(|&x| x) && (p == 0 || d as u64 % p != 0))
}

/// Evidence that `0` is the only common zero of the partial derivatives of a homogeneous `f`.
pub fn nonsingularity(f: &MultiPoly, cfg: &NonsingularityConfig) -> Result<NonsingularityEvidence> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let field = f.field();
    let n = f.n_vars();
    let grad = f.gradient();
    if let Some(ok) = diagonal_rule(f) {
        let verdict = if ok {
            NonsingularityVerdict::NonsingularCertified
        } else {
            // a missing variable or a vanishing exponent factor gives a coordinate witness
            let i = (0..n).find(|&i| grad.iter().all(|g| g.eval(&crate::exactmath::field::unit_vector(field, n, i)).is_zero())).unwrap();
            NonsingularityVerdict::SingularWitness(crate::exactmath::field::unit_vector(field, n, i))
        };
        return Ok(NonsingularityEvidence::exact(verdict, NonsingularityMethod::DiagonalRule));
    }
    if n <= 2 {
        return Ok(NonsingularityEvidence::exact(binary_gcd(f, &grad), NonsingularityMethod::BinaryGcd));
    }
    match field {
        Field::Rationals => {
            if let Some(w) = rational_singular_point(&grad, cfg.height_bound) {
                return Ok(NonsingularityEvidence::exact(NonsingularityVerdict::SingularWitness(w), NonsingularityMethod::RationalSearch));
            }
            let mut used = Vec::new();
            let mut with_zeros = Vec::new();
            for &p in &cfg.primes {
                let Some(fp) = f.reduce_mod(p) else { continue };
                if fp.degree() != f.degree() || !fp.is_homogeneous() {
                    continue;
                }
                match projective_scan(&fp.gradient(), cfg.max_enum) {
                    Some(None) => used.push(p),
                    Some(Some(_)) => with_zeros.push(p),
                    None => {}
                }
            }
            let verdict = if !used.is_empty() && used.len() > with_zeros.len() {
                NonsingularityVerdict::ProbablyNonsingular
            } else {
                NonsingularityVerdict::Unknown
            };
            Ok(NonsingularityEvidence { verdict, method: NonsingularityMethod::FiniteFieldScan, primes_used: used, primes_with_zeros: with_zeros })
        }
        Field::Prime(p) => {
            let (verdict, used, zeros) = match projective_scan(&grad, cfg.max_enum) {
                Some(None) => (NonsingularityVerdict::ProbablyNonsingular, vec![p], vec![]),
                Some(Some(w)) => (NonsingularityVerdict::SingularWitness(w.iter().map(|&x| field.from_u64(x)).collect()), vec![], vec![p]),
                None => (NonsingularityVerdict::Unknown, vec![], vec![]),
            };
            Ok(NonsingularityEvidence { verdict, method: NonsingularityMethod::FiniteFieldScan, primes_used: used, primes_with_zeros: zeros })
        }
    }
}

/// Exact test in at most two variables via the gcd of the dehomogenized partials.
fn binary_gcd(f: &MultiPoly, grad: &[MultiPoly]) -> NonsingularityVerdict {
    let field = f.field();
    let n = f.n_vars();
    if n == 1 {
        return if grad[0].is_zero() {
            NonsingularityVerdict::SingularWitness(vec![field.one()])
        } else {
            NonsingularityVerdict::NonsingularCertified
        };
    }
    let at = |g: &MultiPoly, x: &Scalar, y: &Scalar| g.eval(&[x.clone(), y.clone()]);
    // dehomogenize at X2 = 1
    let uni = |g: &MultiPoly| {
        let mut coeffs = vec![field.zero(); g.degree().unwrap_or(0) + 1];
        for (m, c) in g.terms() {
            let e = m.exponents()[0] as usize;
            coeffs[e] = &coeffs[e] + c;
        }
        UniPoly::new(field, coeffs)
    };
    let h = uni(&grad[0]).gcd(&uni(&grad[1]));
    let point_at_infinity = grad.iter().all(|g| at(g, &field.one(), &field.zero()).is_zero());
    let roots = if h.is_zero() { vec![field.zero()] } else { h.roots() };
    if let Some(r) = roots.first() {
        return NonsingularityVerdict::SingularWitness(vec![r.clone(), field.one()]);
    }
    if point_at_infinity {
        return NonsingularityVerdict::SingularWitness(vec![field.one(), field.zero()]);
    }
    if h.degree().unwrap_or(0) > 0 {
        return NonsingularityVerdict::SingularOverExtension;
    }
    NonsingularityVerdict::NonsingularCertified
}

/// Polynomial with coefficients reduced modulo a prime, evaluated with machine integers.
struct ModPoly {
    p: u64,
    terms: Vec<(Vec<u32>, u64)>,
}

impl ModPoly {
    fn eval(&self, x: &[u64]) -> u64 {
        let p = self.p as u128;
        let mut acc: u128 = 0;
        for (e, c) in &self.terms {
            let mut t = *c as u128;
            for (xi, &ei) in x.iter().zip(e) {
                for _ in 0..ei {
                    t = t * (*xi as u128) % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc as u64
    }
}

fn compile_prime_field(g: &MultiPoly) -> ModPoly {
    let p = g.field().characteristic();
    ModPoly { p, terms: g.terms().iter().map(|(m, c)| (m.exponents().to_vec(), c.residue().unwrap())).collect() }
}

/// Lexicographically first projective zero (first nonzero coordinate 1) of all `polys` over `GF(p)`;
/// outer `None` when the point count exceeds `max_enum`.
fn projective_scan(polys: &[MultiPoly], max_enum: u128) -> Option<Option<Vec<u64>>> {
    let n = polys[0].n_vars();
    let p = polys[0].field().characteristic();
    let count = ((p as u128).saturating_pow(n as u32) - 1) / (p as u128 - 1);
    if count > max_enum {
        return None;
    }
    let compiled: Vec<ModPoly> = polys.iter().map(compile_prime_field).collect();
    for lead in 0..n {
        let mut tail = vec![0u64; n - lead - 1];
        loop {
            let mut x = vec![0u64; lead];
            x.push(1);
            x.extend(&tail);
            if compiled.iter().all(|c| c.eval(&x) == 0) {
                return Some(Some(x));
            }
            if !odometer(&mut tail, p) {
                break;
            }
        }
    }
    Some(None)
}

/// Advances `digits` lexicographically in base `p`; false after the last tuple.
fn odometer(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut().rev() {
        if *d + 1 < p {
            *d += 1;
            return true;
        }
        *d = 0;
    }
    false
}

/// Integer points of height `<= h` (first nonzero coordinate positive) zeroing all partials,
/// filtered modulo a large prime and confirmed exactly.
fn rational_singular_point(grad: &[MultiPoly], height_bound: u64) -> Option<Vec<Scalar>> {
    const FILTER_PRIME: u64 = (1 << 61) - 1;
    let n = grad[0].n_vars();
    let mut h = height_bound;
    while h > 1 && (2 * h + 1).saturating_pow(n as u32) > SEARCH_BUDGET {
        h -= 1;
    }
    let compiled: Vec<ModPoly> = grad.iter().map(|g| compile_rational(g, FILTER_PRIME)).collect();
    let q = Field::Rationals;
    let hi = h as i64;
    let mut x = vec![-hi; n];
    let residue = |v: i64| if v >= 0 { v as u64 } else { FILTER_PRIME - (-v) as u64 };
    loop {
        let first = x.iter().find(|&&v| v != 0);
        if first.is_some_and(|&v| v > 0) {
            let xr: Vec<u64> = x.iter().map(|&v| residue(v)).collect();
            if compiled.iter().all(|c| c.eval(&xr) == 0) {
                let point: Vec<Scalar> = x.iter().map(|&v| q.from_i64(v)).collect();
                if grad.iter().all(|g| g.eval(&point).is_zero()) {
                    return Some(point);
                }
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if x[i] < hi {
                x[i] += 1;
                break;
            }
            x[i] = -hi;
        }
    }
}

fn compile_rational(g: &MultiPoly, p: u64) -> ModPoly {
    let denom = g.terms().values().fold(BigInt::one(), |acc, c| acc.lcm(c.as_rational().unwrap().denom()));
    let pb = BigInt::from(p);
    let terms = g
        .terms()
        .iter()
        .map(|(m, c)| {
            let r = c.as_rational().unwrap();
            let v = (r.numer() * (&denom / r.denom())).mod_floor(&pb);
            debug_assert!(!v.is_negative());
            (m.exponents().to_vec(), v.to_u64().unwrap())
        })
        .collect();
    ModPoly { p, terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn poly(text: &str, n: usize, field: Field) -> MultiPoly {
        parse_poly(text, n, field).unwrap()
    }

    fn check(text: &str, n: usize, field: Field) -> NonsingularityEvidence {
        nonsingularity(&poly(text, n, field), &NonsingularityConfig::default()).unwrap()
    }

    #[test]
    fn binary_cubic_is_nonsingular() {
        let e = check("X1^3 + X2^3", 2, Field::Rationals);
        assert_eq!(e.verdict, NonsingularityVerdict::NonsingularCertified);
    }

    #[test]
    fn binary_gcd_path_without_diagonal_shape() {
        let q = Field::Rationals;
        let e = check("X1^3 + X1*X2^2 + X2^3", 2, q);
        assert_eq!(e.method, NonsingularityMethod::BinaryGcd);
        assert_eq!(e.verdict, NonsingularityVerdict::NonsingularCertified);
        // (X1^2 + X2^2)^2 is singular along X1^2 + X2^2 = 0, which has no rational point
        let e = check("X1^4 + 2*X1^2*X2^2 + X2^4", 2, q);
        assert_eq!(e.verdict, NonsingularityVerdict::SingularOverExtension);
        // (X1 - X2)^2 (X1 + X2)
        let e = check("X1^3 - X1^2*X2 - X1*X2^2 + X2^3", 2, q);
        assert_eq!(e.verdict, NonsingularityVerdict::SingularWitness(vec![q.one(), q.one()]));
    }

    #[test]
    fn coordinate_axis_witness() {
        let q = Field::Rationals;
        let e = check("X1^2*X2", 2, q);
        assert_eq!(e.verdict, NonsingularityVerdict::SingularWitness(vec![q.zero(), q.one()]));
    }

    #[test]
    fn diagonal_rule_cases() {
        let q = Field::Rationals;
        assert_eq!(diagonal_rule(&poly("X1^3 + 2*X2^3 - X3^3", 3, q)), Some(true));
        assert_eq!(diagonal_rule(&poly("X1^3 + X2^3", 3, q)), Some(false));
        assert_eq!(diagonal_rule(&poly("X1^3 + X2^3 + X3^3", 3, Field::Prime(3))), Some(false));
        assert_eq!(diagonal_rule(&poly("X1^3 + X2^3 + X3^3", 3, Field::Prime(5))), Some(true));
        assert_eq!(diagonal_rule(&poly("X1^2*X2 + X3^3", 3, q)), None);
        let e = check("X1^3 + X2^3", 3, q);
        assert_eq!(e.verdict, NonsingularityVerdict::SingularWitness(vec![q.zero(), q.zero(), q.one()]));
    }

    #[test]
    fn hesse_cubic_is_probably_nonsingular() {
        let e = check("X1^3 + X2^3 + X3^3 - 6*X1*X2*X3", 3, Field::Rationals);
        assert_eq!(e.verdict, NonsingularityVerdict::ProbablyNonsingular);
        assert_eq!(e.primes_with_zeros, vec![7]);
        assert_eq!(e.primes_used, vec![5, 11, 13]);
    }

    #[test]
    fn singular_ternary_cubic_has_rational_witness() {
        let q = Field::Rationals;
        // nodal cubic X2^2 X3 - X1^3 - X1^2 X3, singular at (0, 0, 1)
        let e = check("X2^2*X3 - X1^3 - X1^2*X3", 3, q);
        let NonsingularityVerdict::SingularWitness(w) = e.verdict else { panic!("expected witness") };
        let f = poly("X2^2*X3 - X1^3 - X1^2*X3", 3, q);
        assert!(f.gradient().iter().all(|g| g.eval(&w).is_zero()));
    }

    #[test]
    fn finite_field_scan() {
        let f7 = Field::Prime(7);
        let e = check("X1^3 + X2^3 + X3^3 - 6*X1*X2*X3", 3, f7);
        assert!(matches!(e.verdict, NonsingularityVerdict::SingularWitness(_)));
        let f5 = Field::Prime(5);
        let e = check("X1^3 + X2^3 + X3^3 - 6*X1*X2*X3", 3, f5);
        assert_eq!(e.verdict, NonsingularityVerdict::ProbablyNonsingular);
    }
}
