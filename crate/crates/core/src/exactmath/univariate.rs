use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{is_prime, Field, Scalar};

/// Dense univariate polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(c.field(), vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: Field) -> Self {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Self {
        UniPoly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(self.field, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        UniPoly::new(self.field, out)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = divisor.lead().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(self.field, quot), UniPoly::new(self.field, rem))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.divrem(divisor).1
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor (zero when both inputs vanish).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| &self.field.from_u64(i as u64) * c).collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &UniPoly) -> UniPoly {
        let mut base = self.rem(modulus);
        let mut acc = UniPoly::constant(self.field.one()).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Distinct roots lying in the base field, sorted (numerically over Q, by residue over GF(p)).
    pub fn roots(&self) -> Vec<Scalar> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut roots = match self.field {
            Field::Rationals => rational_roots(self),
            Field::Prime(p) => modular_roots(self, p),
        };
        roots.sort_by(|a, b| match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => x.cmp(y),
            _ => a.residue().cmp(&b.residue()),
        });
        roots.dedup();
        roots
    }
}

fn modular_roots(f: &UniPoly, p: u64) -> Vec<Scalar> {
    let field = f.field;
    if p <= 64 {
        return field.elements().unwrap().filter(|x| f.eval(x).is_zero()).collect();
    }
    let x = UniPoly::x(field);
    let f = f.monic();
    // product of the distinct linear factors of f
    let xp = x.powmod(p, &f);
    let mut g = f.gcd(&xp.sub(&x));
    let mut roots = Vec::new();
    if g.degree() == Some(0) {
        return roots;
    }
    if g.eval(&field.zero()).is_zero() {
        roots.push(field.zero());
        g = g.divrem(&x).0;
    }
    split_linear_product(&g, p, &mut roots);
    roots
}

/// Equal-degree splitting of a squarefree product of linear factors with nonzero roots.
fn split_linear_product(g: &UniPoly, p: u64, out: &mut Vec<Scalar>) {
    let field = g.field;
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let c = g.monic();
            out.push(-&c.coeff(0));
            return;
        }
        _ => {}
    }
    let one = UniPoly::constant(field.one());
    for a in 0..p {
        let shifted = UniPoly::new(field, vec![field.from_u64(a), field.one()]);
        let h = shifted.powmod((p - 1) / 2, g).sub(&one);
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && Some(dd) < g.degree() {
            let (q, _) = g.divrem(&d);
            split_linear_product(&d, p, out);
            split_linear_product(&q.monic(), p, out);
            return;
        }
    }
    unreachable!("every squarefree split polynomial separates for some shift");
}

fn rational_roots(f: &UniPoly) -> Vec<Scalar> {
    let field = f.field;
    let sqfree = f.divrem(&f.gcd(&f.derivative())).0;
    let mut ints = integer_coeffs(&sqfree);
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(field.zero());
        ints.remove(0);
    }
    let n = ints.len() - 1;
    if n == 0 {
        return roots;
    }
    let lead = ints[n].clone();
    // monic h(y) = lead^(n-1) g(y / lead)
    let mut h = Vec::with_capacity(n + 1);
    for (i, c) in ints.iter().enumerate() {
        let e = (n - 1).saturating_sub(i);
        let c = if i == n { BigInt::one() } else { c * num_traits::pow(lead.clone(), e) };
        h.push(c);
    }
    for y in monic_integer_roots(&h) {
        let r = num_rational::BigRational::new(y, lead.clone());
        roots.push(Scalar::Rational(r));
    }
    roots
}

fn integer_coeffs(f: &UniPoly) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.as_rational().unwrap().denom());
    }
    let mut ints: Vec<BigInt> =
        f.coeffs().iter().map(|c| (c.as_rational().unwrap() * &den).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
    }
    ints
}

fn eval_int(h: &[BigInt], y: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in h.iter().rev() {
        acc = acc * y + c;
    }
    acc
}

fn eval_mod(h: &[BigInt], y: u64, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut acc = 0u64;
    for c in h.iter().rev() {
        let cm = c.mod_floor(&pb).to_u64().unwrap();
        acc = (acc * y % p + cm) % p;
    }
    acc
}

/// Integer roots of a monic squarefree integer polynomial with nonzero constant term,
/// by lifting simple roots modulo a prime of good reduction.
fn monic_integer_roots(h: &[BigInt]) -> Vec<BigInt> {
    let bound: BigInt = h.iter().map(|c| c.abs()).max().unwrap() + 1;
    let hq: Vec<Scalar> = h.iter().map(|c| Field::Rationals.from_bigint(c)).collect();
    let hq = UniPoly::new(Field::Rationals, hq);
    let dh: Vec<BigInt> = h.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let mut p = 3u64;
    loop {
        if is_prime(p) {
            let fp = Field::Prime(p);
            let pb = BigInt::from(p);
            let red = |v: &[BigInt]| {
                UniPoly::new(fp, v.iter().map(|c| fp.from_u64(c.mod_floor(&pb).to_u64().unwrap())).collect())
            };
            let hp = red(h);
            if hp.gcd(&hp.derivative()).degree() == Some(0) {
                let mut out = Vec::new();
                for r in hp.roots() {
                    let r0 = r.residue().unwrap();
                    debug_assert_eq!(eval_mod(h, r0, p), 0);
                    if let Some(y) = hensel_lift(h, &dh, r0, p, &bound) {
                        if eval_int(h, &y).is_zero() {
                            out.push(y);
                        }
                    }
                }
                debug_assert!(out.iter().all(|y| hq.eval(&Field::Rationals.from_bigint(y)).is_zero()));
                return out;
            }
        }
        p += 2;
    }
}

fn hensel_lift(h: &[BigInt], dh: &[BigInt], r0: u64, p: u64, bound: &BigInt) -> Option<BigInt> {
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut r = BigInt::from(r0);
    let target = bound * 2;
    while modulus <= target {
        modulus = &modulus * &modulus;
        let fr = eval_int(h, &r).mod_floor(&modulus);
        let dfr = eval_int(dh, &r).mod_floor(&modulus);
        let inv = mod_inverse(&dfr, &modulus)?;
        r = (r - fr * inv).mod_floor(&modulus);
    }
    let half = &modulus / 2;
    if r > half {
        r -= &modulus;
    }
    Some(r)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}
