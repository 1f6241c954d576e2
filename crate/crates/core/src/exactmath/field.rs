use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base field: the rationals or a prime field GF(p) with `2 <= p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

pub const MAX_PRIME: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !(2..MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime in [2, 2^31)")));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `Q` or `GFp:<p>` (also accepts `GF(p)` and `GF<p>`).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
            return Ok(Field::Rationals);
        }
        let digits = t
            .strip_prefix("GFp:")
            .or_else(|| t.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')))
            .or_else(|| t.strip_prefix("GF"))
            .ok_or_else(|| Error::InvalidField(format!("unrecognized field '{t}'")))?;
        let p: u64 = digits
            .trim()
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad modulus in '{t}'")))?;
        Field::prime(p)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Modular { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular { value: n.rem_euclid(*p as i64) as u64, modulus: *p },
        }
    }

    pub fn from_u64(&self, n: u64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular { value: n % p, modulus: *p },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Modular { value: r.to_u64().unwrap(), modulus: *p }
            }
        }
    }

    /// `num/den` reduced into the field; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::BadScalar(format!("denominator {den} is zero in {self}")));
        }
        let n = self.from_bigint(num);
        Ok(&n * &d.inv().unwrap())
    }

    /// Maps a rational into this field (identity over Q, reduction over GF(p)).
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        self.from_ratio(q.numer(), q.denom())
    }

    /// Parses an integer or `p/q` literal.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| Error::BadScalar(format!("cannot parse '{t}'")))?;
        let den: BigInt = den.parse().map_err(|_| Error::BadScalar(format!("cannot parse '{t}'")))?;
        self.from_ratio(&num, &den)
    }

    /// Every field element, in increasing residue order. Only for prime fields.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar> + '_> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..*p).map(move |v| Scalar::Modular { value: v, modulus: *p })),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GFp:{p}"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator; residues are always in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Modular { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// Sign over Q (`-1`, `0`, `1`); `None` over GF(p).
    pub fn signum(&self) -> Option<i32> {
        self.as_rational().map(|q| {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        })
    }

    /// True when the printed form should carry a leading minus sign.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    /// Whether the element is a square in its field.
    pub fn is_square(&self) -> bool {
        match self {
            Scalar::Rational(q) => {
                if q.is_negative() {
                    return false;
                }
                is_perfect_square(q.numer()) && is_perfect_square(q.denom())
            }
            Scalar::Modular { value, modulus } => {
                *value == 0 || *modulus == 2 || mod_pow(*value, (modulus - 1) / 2, *modulus) == 1
            }
        }
    }

    /// A square root in the field, when one exists.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(Scalar::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Modular { value, modulus } => {
                tonelli_shanks(*value, *modulus).map(|r| Scalar::Modular { value: r, modulus: *modulus })
            }
        }
    }
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || p == 2 {
        return Some(a);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while mod_pow(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = mod_pow(z, q, p);
    let mut t = mod_pow(a, q, p);
    let mut r = mod_pow(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = tt * tt % p;
            i += 1;
        }
        let b = mod_pow(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

fn check_same(a: &Scalar, b: &Scalar) -> u64 {
    match (a, b) {
        (Scalar::Modular { modulus: p, .. }, Scalar::Modular { modulus: q, .. }) => {
            assert_eq!(p, q, "mixed prime fields");
            *p
        }
        (Scalar::Rational(_), Scalar::Rational(_)) => 0,
        _ => panic!("mixed fields in scalar arithmetic"),
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let p = check_same(self, rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular { value: (a + b) % p, modulus: p }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let p = check_same(self, rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular { value: (a + p - b) % p, modulus: p }
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let p = check_same(self, rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular { value: a * b % p, modulus: p }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular { value: (modulus - value) % modulus, modulus: *modulus },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Dot product of two equally long vectors.
pub fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x * y;
        }
    }
    acc
}

pub fn zero_vector(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fields() {
        assert_eq!(Field::parse("Q").unwrap(), Field::Rationals);
        assert_eq!(Field::parse("GFp:7").unwrap(), Field::Prime(7));
        assert!(Field::parse("GFp:9").is_err());
        assert!(Field::parse("GFp:1").is_err());
        assert!(Field::prime(MAX_PRIME + 11).is_err());
    }

    #[test]
    fn modular_inverse_of_two_mod_three() {
        let f = Field::Prime(3);
        let half = f.parse_scalar("1/2").unwrap();
        assert_eq!(half, f.from_i64(2));
        assert!(f.parse_scalar("1/3").is_err());
    }

    #[test]
    fn rationals_stay_reduced() {
        let f = Field::Rationals;
        let a = f.parse_scalar("6/4").unwrap();
        assert_eq!(a.to_string(), "3/2");
        let b = f.parse_scalar("-2/-4").unwrap();
        assert_eq!(b.to_string(), "1/2");
        assert_eq!((&a * &b).to_string(), "3/4");
    }

    #[test]
    fn square_roots() {
        let f = Field::Prime(13);
        for v in 0..13 {
            let s = f.from_u64(v);
            match s.sqrt() {
                Some(r) => assert_eq!(&r * &r, s),
                None => assert!(!s.is_square()),
            }
        }
        let q = Field::Rationals.parse_scalar("9/4").unwrap();
        assert_eq!(q.sqrt().unwrap().to_string(), "3/2");
        assert!(Field::Rationals.from_i64(2).sqrt().is_none());
    }
}
