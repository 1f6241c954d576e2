use rayon::prelude::*;
use serde::Serialize;

use super::structure::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Matrix, Scalar, Subspace};

/// Default cap on the number of elements a nilpotency scan may visit.
pub const DEFAULT_MAX_ENUM: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalMethod {
    TraceForm,
    NilpotentScan,
    Supplied,
}

/// The radical `J` with its powers `J, J^2, ..., J^l = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalData {
    pub radical: Subspace,
    /// `powers[m]` is `J^(m+1)`; the last entry is the zero subspace.
    pub powers: Vec<Subspace>,
    pub lowey_length: usize,
    /// Lifts to `J` of a basis of `J/J^2`.
    pub jj2_basis: Vec<Vec<Scalar>>,
    pub method: RadicalMethod,
}

impl RadicalData {
    pub fn dim(&self) -> usize {
        self.radical.dim()
    }

    pub fn jj2_dim(&self) -> usize {
        self.jj2_basis.len()
    }

    /// `J^m` for `m >= 1` (zero beyond the Lowey length).
    pub fn power(&self, m: usize) -> &Subspace {
        assert!(m >= 1);
        let i = (m - 1).min(self.powers.len() - 1);
        &self.powers[i]
    }

    pub fn j2(&self) -> &Subspace {
        self.power(2)
    }
}

/// Radical via the trace form `tau(x, y) = tr(L_x L_y) = tr(L_{xy})`; characteristic 0 only.
pub fn trace_form_radical(a: &StructureAlgebra) -> Result<Subspace> {
    if a.field() != Field::Rationals {
        return Err(Error::UnsupportedRadicalComputation("the trace-form criterion needs characteristic 0".into()));
    }
    Ok(trace_gram(a).kernel())
}

/// Gram matrix of the trace form in the standard basis.
pub fn trace_gram(a: &StructureAlgebra) -> Matrix {
    let d = a.dim();
    let f = a.field();
    let traces: Vec<Scalar> = (0..d)
        .map(|k| (0..d).fold(f.zero(), |acc, m| &acc + &a.constant(k, m, m)))
        .collect();
    let mut g = Matrix::zeros(f, d, d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = f.zero();
            for (k, c) in a.product(i, j) {
                acc = &acc + &(c * &traces[*k]);
            }
            g.set(i, j, acc);
        }
    }
    g
}

/// Span of all nilpotent elements of a commutative algebra over GF(p), by enumeration.
pub fn nilpotent_scan(a: &StructureAlgebra, max_enum: u128) -> Result<Subspace> {
    let Field::Prime(p) = a.field() else {
        return Err(Error::RequiresPrimeField);
    };
    if !a.is_commutative() {
        return Err(Error::UnsupportedRadicalComputation(
            "non-commutative algebras over GF(p) need a supplied radical".into(),
        ));
    }
    let d = a.dim();
    let total = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if total > max_enum {
        return Err(Error::UnsupportedRadicalComputation(format!(
            "nilpotency scan over {total} elements exceeds the limit {max_enum}"
        )));
    }
    let table: Vec<Vec<(usize, u64)>> = (0..d * d)
        .map(|ij| a.product(ij / d, ij % d).iter().map(|(k, c)| (*k, c.residue().unwrap())).collect())
        .collect();
    let squarings = (usize::BITS - (d.max(1) - 1).leading_zeros()) as usize;
    let chunk = 4096u128;
    let chunks = total.div_ceil(chunk) as u64;
    let bases: Vec<Vec<Vec<u64>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut basis = ModEchelon::new(p, d);
            let start = c as u128 * chunk;
            let end = (start + chunk).min(total);
            let mut x = vec![0u64; d];
            for idx in start..end {
                let mut r = idx;
                for xi in x.iter_mut() {
                    *xi = (r % p as u128) as u64;
                    r /= p as u128;
                }
                if basis.rank() == d {
                    break;
                }
                let mut y = x.clone();
                for _ in 0..squarings {
                    y = mul_mod(&table, d, p, &y, &y);
                }
                if y.iter().all(|&v| v == 0) {
                    basis.insert(&x);
                }
            }
            basis.rows
        })
        .collect();
    let mut vectors = Vec::new();
    for b in bases {
        for row in b {
            vectors.push(row.iter().map(|&v| Scalar::Modular { value: v, modulus: p }).collect());
        }
    }
    Ok(Subspace::from_vectors(a.field(), d, vectors))
}

fn mul_mod(table: &[Vec<(usize, u64)>], d: usize, p: u64, x: &[u64], y: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; d];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj == 0 {
                continue;
            }
            let c = xi * yj % p;
            for &(k, s) in &table[i * d + j] {
                out[k] = (out[k] + c * s) % p;
            }
        }
    }
    out
}

/// Row echelon basis over GF(p) with machine-word residues.
struct ModEchelon {
    p: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl ModEchelon {
    fn new(p: u64, _d: usize) -> Self {
        ModEchelon { p, rows: Vec::new(), pivots: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, v: &[u64]) {
        let p = self.p;
        let mut v = v.to_vec();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - c) * r) % p;
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = mod_inv(v[piv], p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            self.rows.push(v);
            self.pivots.push(piv);
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// The Jacobson radical with its power filtration.
///
/// Uses a supplied radical when the algebra carries one, the trace form over Q,
/// and a nilpotency scan for commutative algebras over GF(p).
pub fn jacobson_radical(a: &StructureAlgebra) -> Result<RadicalData> {
    jacobson_radical_with(a, DEFAULT_MAX_ENUM)
}

pub fn jacobson_radical_with(a: &StructureAlgebra, max_enum: u128) -> Result<RadicalData> {
    let (j, method) = if let Some(j) = a.known_radical() {
        (j.clone(), RadicalMethod::Supplied)
    } else if a.field() == Field::Rationals {
        (trace_form_radical(a)?, RadicalMethod::TraceForm)
    } else {
        (nilpotent_scan(a, max_enum)?, RadicalMethod::NilpotentScan)
    };
    radical_data(a, j, method)
}

/// Filtration data for a candidate radical; verifies it is a nilpotent two-sided ideal.
pub fn radical_data(a: &StructureAlgebra, j: Subspace, method: RadicalMethod) -> Result<RadicalData> {
    if !a.is_ideal(&j) {
        return Err(Error::UnsupportedRadicalComputation("candidate radical is not a two-sided ideal".into()));
    }
    let mut powers = vec![j.clone()];
    while !powers.last().unwrap().is_zero() {
        let next = a.subspace_product(powers.last().unwrap(), &j);
        if next.dim() == powers.last().unwrap().dim() {
            return Err(Error::UnsupportedRadicalComputation("candidate radical is not nilpotent".into()));
        }
        powers.push(next);
    }
    let lowey_length = powers.len();
    let j2 = if powers.len() > 1 { powers[1].clone() } else { powers[0].clone() };
    let jj2_basis = j2.quotient_basis(&j)?;
    Ok(RadicalData { radical: j, powers, lowey_length, jj2_basis, method })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::structure::examples::*;
    use crate::exactmath::field::unit_vector;

    #[test]
    fn dual_numbers_over_q() {
        let q = Field::Rationals;
        let a = truncated_polynomial(q, 2);
        assert_eq!(trace_gram(&a), Matrix::from_i64(q, &[&[2, 0], &[0, 0]]));
        let r = jacobson_radical(&a).unwrap();
        assert_eq!(r.radical, Subspace::from_vectors(q, 2, vec![unit_vector(q, 2, 1)]));
    }

    #[test]
    fn semisimple_matrix_algebra() {
        let r = jacobson_radical(&matrix_algebra(Field::Rationals, 2)).unwrap();
        assert!(r.radical.is_zero());
        assert_eq!(r.lowey_length, 1);
        assert_eq!(r.jj2_dim(), 0);
    }

    #[test]
    fn scan_over_gf3() {
        let f = Field::Prime(3);
        let a = truncated_polynomial(f, 3);
        let r = jacobson_radical(&a).unwrap();
        assert_eq!(r.method, RadicalMethod::NilpotentScan);
        assert_eq!(r.radical, Subspace::from_vectors(f, 3, vec![unit_vector(f, 3, 1), unit_vector(f, 3, 2)]));
        assert_eq!(r.lowey_length, 3);
        assert_eq!(r.jj2_dim(), 1);
    }

    #[test]
    fn unsupported_cases() {
        let t = upper_triangular(Field::Prime(5), 2);
        assert!(matches!(jacobson_radical(&t), Err(Error::UnsupportedRadicalComputation(_))));
        let big = truncated_polynomial(Field::Prime(7), 9);
        assert!(matches!(jacobson_radical(&big), Err(Error::UnsupportedRadicalComputation(_))));
    }

    #[test]
    fn upper_triangular_radical_over_q() {
        let q = Field::Rationals;
        let t = upper_triangular(q, 3);
        let r = jacobson_radical(&t).unwrap();
        assert_eq!(r.dim(), 3);
        assert_eq!(r.lowey_length, 3);
        assert_eq!(r.jj2_dim(), 2);
    }
}
