//! Brute-force ground truth over small prime fields: automorphism groups by exhaustive
//! enumeration and nilradicals by scanning every element.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{jacobson_radical_with, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::field::unit_vector;
use crate::exactmath::{Field, Matrix, Scalar, Subspace};

pub const DEFAULT_LIMIT: u128 = 10_000_000;

/// Orders above this skip the pairwise closure check.
const CLOSURE_CHECK_MAX: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumeratedGroup {
    pub p: u64,
    pub dim: usize,
    /// Row-major `dim x dim` residues; column `j` holds the image of `e_j`.
    pub elements: Vec<Vec<u64>>,
    pub order: usize,
    pub candidates: u128,
    /// Set when identity, inverses and closure were all checked.
    pub axioms_verified: bool,
}

impl EnumeratedGroup {
    pub fn matrices(&self) -> Vec<Matrix> {
        let f = Field::Prime(self.p);
        self.elements
            .iter()
            .map(|e| Matrix::from_flat(f, self.dim, self.dim, e.iter().map(|&x| f.from_u64(x)).collect()))
            .collect()
    }
}

struct ModTable {
    p: u64,
    d: usize,
    t: Vec<u64>,
    one: Vec<u64>,
}

impl ModTable {
    fn new(a: &StructureAlgebra, p: u64) -> Self {
        let d = a.dim();
        let mut t = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                for (k, c) in a.product(i, j) {
                    t[(i * d + j) * d + k] = residue(c);
                }
            }
        }
        ModTable { p, d, t, one: a.one().iter().map(residue).collect() }
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let (d, p) = (self.d, self.p);
        let mut z = vec![0u64; d];
        for i in (0..d).filter(|&i| x[i] != 0) {
            for j in (0..d).filter(|&j| y[j] != 0) {
                let xy = x[i] * y[j] % p;
                let row = &self.t[(i * d + j) * d..(i * d + j + 1) * d];
                for (zk, &c) in z.iter_mut().zip(row) {
                    if c != 0 {
                        *zk = (*zk + xy * c) % p;
                    }
                }
            }
        }
        z
    }

    fn basis_product(&self, i: usize, j: usize) -> &[u64] {
        &self.t[(i * self.d + j) * self.d..(i * self.d + j + 1) * self.d]
    }
}

fn residue(c: &Scalar) -> u64 {
    c.residue().expect("prime field scalar")
}

fn column(m: &[u64], d: usize, j: usize) -> Vec<u64> {
    (0..d).map(|i| m[i * d + j]).collect()
}

fn mat_mul(a: &[u64], b: &[u64], d: usize, p: u64) -> Vec<u64> {
    let mut c = vec![0u64; d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik != 0 {
                for j in 0..d {
                    c[i * d + j] = (c[i * d + j] + aik * b[k * d + j]) % p;
                }
            }
        }
    }
    c
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Inverse of a `d x d` matrix mod `p`, if it exists.
fn mat_inverse(m: &[u64], d: usize, p: u64) -> Option<Vec<u64>> {
    let w = 2 * d;
    let mut a = vec![0u64; d * w];
    for i in 0..d {
        a[i * w..i * w + d].copy_from_slice(&m[i * d..(i + 1) * d]);
        a[i * w + d + i] = 1;
    }
    for c in 0..d {
        let r = (c..d).find(|&r| a[r * w + c] != 0)?;
        for k in 0..w {
            a.swap(r * w + k, c * w + k);
        }
        let inv = inv_mod(a[c * w + c], p);
        for k in 0..w {
            a[c * w + k] = a[c * w + k] * inv % p;
        }
        for r in (0..d).filter(|&r| r != c) {
            let f = a[r * w + c];
            if f != 0 {
                for k in 0..w {
                    a[r * w + k] = (a[r * w + k] + (p - f) * a[c * w + k]) % p;
                }
            }
        }
    }
    Some((0..d).flat_map(|i| a[i * w + d..(i + 1) * w].to_vec()).collect())
}

/// How candidate maps are generated.
enum Candidates {
    /// Images of generators `x_i` of a split local commutative algebra, each ranging over `J`.
    Local { j_basis: Vec<Vec<u64>>, words: Vec<Vec<usize>>, n_gens: usize },
    /// `1` fixed; images of the other basis vectors of `C` arbitrary.
    General,
}

/// Exhaustive search for all algebra automorphisms of `A` over `GF(p)`.
pub fn enumerate_automorphisms(a: &StructureAlgebra, limit: u128) -> Result<EnumeratedGroup> {
    let Field::Prime(p) = a.field() else { return Err(Error::RequiresPrimeField) };
    let d = a.dim();
    let f = a.field();
    let tab = ModTable::new(a, p);
    let (source, kind) = candidate_source(a)?;
    let count: u128 = match &kind {
        Candidates::Local { j_basis, n_gens, .. } => (p as u128).checked_pow((n_gens * j_basis.len()) as u32),
        Candidates::General => (p as u128).checked_pow((d * (d - 1)) as u32),
    }
    .unwrap_or(u128::MAX);
    if count > limit {
        return Err(Error::SearchSpaceTooLarge { bound: count, limit });
    }
    let c = Matrix::from_columns(f, d, &source);
    let c_inv: Vec<u64> = c.inverse()?.flatten().iter().map(residue).collect();

    let images_of = |idx: u64| -> Vec<Vec<u64>> {
        let mut digits = Vec::new();
        let mut rest = idx;
        match &kind {
            Candidates::Local { j_basis, words, n_gens } => {
                let y: Vec<Vec<u64>> = (0..*n_gens)
                    .map(|_| {
                        let mut v = vec![0u64; d];
                        for b in j_basis {
                            let c = rest % p;
                            rest /= p;
                            for (vk, bk) in v.iter_mut().zip(b) {
                                *vk = (*vk + c * bk) % p;
                            }
                        }
                        v
                    })
                    .collect();
                words.iter().map(|w| w.iter().fold(tab.one.clone(), |acc, &g| tab.mul(&acc, &y[g]))).collect()
            }
            Candidates::General => {
                digits.push(tab.one.clone());
                for _ in 1..d {
                    digits.push((0..d).map(|_| {
                        let c = rest % p;
                        rest /= p;
                        c
                    }).collect());
                }
                digits
            }
        }
    };

    let mut elements: Vec<Vec<u64>> = (0..count as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let imgs = images_of(idx);
            let mut im = vec![0u64; d * d];
            for (j, v) in imgs.iter().enumerate() {
                for i in 0..d {
                    im[i * d + j] = v[i];
                }
            }
            let phi = mat_mul(&im, &c_inv, d, p);
            is_automorphism(&tab, &phi).then_some(phi)
        })
        .collect();
    elements.sort();
    let order = elements.len();
    let axioms_verified = order <= CLOSURE_CHECK_MAX && group_axioms(&elements, d, p);
    Ok(EnumeratedGroup { p, dim: d, elements, order, candidates: count, axioms_verified })
}

/// Candidate basis `C` and how its images are produced.
fn candidate_source(a: &StructureAlgebra) -> Result<(Vec<Vec<Scalar>>, Candidates)> {
    let d = a.dim();
    let f = a.field();
    if a.is_commutative() {
        let rad = jacobson_radical_with(a, DEFAULT_LIMIT)?;
        if d - rad.dim() == 1 {
            let gens = rad.jj2_basis.clone();
            let mut source: Vec<Vec<Scalar>> = Vec::new();
            let mut words: Vec<Vec<usize>> = Vec::new();
            let mut span = Subspace::zero(f, d);
            let mut frontier: Vec<(Vec<usize>, Vec<Scalar>)> = vec![(vec![], a.one().to_vec())];
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for (w, v) in frontier {
                    if span.contains(&v)? {
                        continue;
                    }
                    span = span.sum(&Subspace::from_vectors(f, d, vec![v.clone()]))?;
                    source.push(v.clone());
                    words.push(w.clone());
                    let last = w.last().copied().unwrap_or(0);
                    for (g, x) in gens.iter().enumerate().skip(last) {
                        let mut w2 = w.clone();
                        w2.push(g);
                        next.push((w2, a.multiply(&v, x)));
                    }
                }
                frontier = next;
            }
            debug_assert_eq!(span.dim(), d);
            let j_basis = rad.radical.basis_vectors().iter().map(|v| v.iter().map(residue).collect()).collect();
            return Ok((source, Candidates::Local { j_basis, words, n_gens: gens.len() }));
        }
    }
    let mut source = vec![a.one().to_vec()];
    let mut span = Subspace::from_vectors(f, d, source.clone());
    for i in 0..d {
        let e = unit_vector(f, d, i);
        if !span.contains(&e)? {
            span = span.sum(&Subspace::from_vectors(f, d, vec![e.clone()]))?;
            source.push(e);
        }
    }
    Ok((source, Candidates::General))
}

fn is_automorphism(tab: &ModTable, phi: &[u64]) -> bool {
    let d = tab.d;
    let p = tab.p;
    let apply = |v: &[u64]| -> Vec<u64> { (0..d).map(|i| (0..d).fold(0, |s, j| (s + phi[i * d + j] * v[j]) % p)).collect() };
    if apply(&tab.one) != tab.one {
        return false;
    }
    let cols: Vec<Vec<u64>> = (0..d).map(|j| column(phi, d, j)).collect();
    for i in 0..d {
        for j in 0..d {
            if apply(tab.basis_product(i, j)) != tab.mul(&cols[i], &cols[j]) {
                return false;
            }
        }
    }
    mat_inverse(phi, d, p).is_some()
}

fn group_axioms(elements: &[Vec<u64>], d: usize, p: u64) -> bool {
    let set: HashSet<&Vec<u64>> = elements.iter().collect();
    let id: Vec<u64> = (0..d * d).map(|k| u64::from(k / d == k % d)).collect();
    set.contains(&id)
        && elements.iter().all(|g| mat_inverse(g, d, p).is_some_and(|inv| set.contains(&inv)))
        && elements.iter().all(|g| elements.iter().all(|h| set.contains(&mat_mul(g, h, d, p))))
}

/// `|GL_n(GF(p))|`.
pub fn gl_order(n: usize, p: u64) -> u128 {
    let q = p as u128;
    let qn = q.pow(n as u32);
    (0..n as u32).map(|i| qn - q.pow(i)).product()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedBlocks {
    /// Per group element, its action on `J/J^2` in the `jj2` basis.
    #[serde(skip)]
    pub blocks: Vec<Matrix>,
    pub image_size: usize,
    pub kernel_count: usize,
}

/// Actions of the enumerated automorphisms on `J/J^2`.
pub fn induced_jj2_matrices(g: &EnumeratedGroup, a: &StructureAlgebra) -> Result<InducedBlocks> {
    let rad = jacobson_radical_with(a, DEFAULT_LIMIT)?;
    let f = a.field();
    let d = a.dim();
    let lifts = &rad.jj2_basis;
    let r = lifts.len();
    let mut cols = lifts.clone();
    cols.extend(rad.j2().basis_vectors());
    let basis = Matrix::from_columns(f, d, &cols);
    let mut blocks = Vec::with_capacity(g.order);
    for phi in g.matrices() {
        let mut block = Matrix::zeros(f, r, r);
        for (j, b) in lifts.iter().enumerate() {
            let coords = basis.solve(&phi.mul_vec(b)?)?.ok_or(Error::NotContained)?;
            for i in 0..r {
                block.set(i, j, coords[i].clone());
            }
        }
        blocks.push(block);
    }
    let identity = Matrix::identity(f, r);
    let kernel_count = blocks.iter().filter(|b| **b == identity).count();
    let image: HashSet<Vec<u64>> = blocks.iter().map(|b| b.flatten().iter().map(residue).collect()).collect();
    Ok(InducedBlocks { blocks, image_size: image.len(), kernel_count })
}

/// Span of all nilpotent elements of a commutative algebra, by scanning every element.
pub fn nilradical_by_scan(a: &StructureAlgebra, limit: u128) -> Result<Subspace> {
    let Field::Prime(p) = a.field() else { return Err(Error::RequiresPrimeField) };
    if !a.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let d = a.dim();
    let count = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if count > limit {
        return Err(Error::SearchSpaceTooLarge { bound: count, limit });
    }
    let tab = ModTable::new(a, p);
    let nilpotent: Vec<Vec<u64>> = (0..count as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let mut rest = idx;
            let x: Vec<u64> = (0..d).map(|_| {
                let c = rest % p;
                rest /= p;
                c
            }).collect();
            let mut y = x.clone();
            for _ in 0..d {
                y = tab.mul(&y, &x);
            }
            (y.iter().all(|&c| c == 0) && x.iter().any(|&c| c != 0)).then_some(x)
        })
        .collect();
    let f = a.field();
    Ok(Subspace::from_vectors(f, d, nilpotent.into_iter().map(|v| v.into_iter().map(|c| f.from_u64(c)).collect()).collect()))
}
