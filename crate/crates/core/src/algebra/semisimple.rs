use serde::Serialize;

use super::radical::RadicalData;
use super::structure::StructureAlgebra;
use crate::exactmath::field::{is_zero_vector, vec_scale};
use crate::exactmath::{Matrix, Scalar, Subspace, UniPoly};

/// Decomposition of a commutative semisimple algebra into ideals by
/// simultaneous eigenspaces of multiplication operators with roots in the base field.
#[derive(Clone, Debug)]
pub struct CommutativeBlocks {
    /// Primitive idempotents of the one-dimensional ideals (copies of `k`).
    pub idempotents: Vec<Vec<Scalar>>,
    /// Ideals of dimension `> 1` that no multiplication operator split over `k`.
    pub unsplit: Vec<Subspace>,
}

impl CommutativeBlocks {
    pub fn is_split(&self) -> bool {
        self.unsplit.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.idempotents.len() + self.unsplit.len()
    }
}

/// Matrix of `v -> x v` restricted to the invariant subspace `v`, in its stored basis.
fn restricted_left_mul(b: &StructureAlgebra, x: &[Scalar], v: &Subspace) -> Matrix {
    let cols: Vec<Vec<Scalar>> = v
        .basis_vectors()
        .iter()
        .map(|w| v.coordinates(&b.multiply(x, w)).expect("subspace is invariant"))
        .collect();
    Matrix::from_columns(b.field(), v.dim(), &cols)
}

fn lift(v: &Subspace, coords: &[Scalar]) -> Vec<Scalar> {
    let f = v.field();
    let mut out = vec![f.zero(); v.ambient()];
    for (c, row) in coords.iter().zip(v.basis_vectors()) {
        if c.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(&row) {
            *o = &*o + &(c * r);
        }
    }
    out
}

/// Eigenspaces of `x` acting on `v` for roots in `k`, plus the complementary invariant
/// part (image of the product of `L_x - lambda`); only the nonzero pieces are returned.
fn split_by(b: &StructureAlgebra, x: &[Scalar], v: &Subspace) -> Vec<Subspace> {
    let m = restricted_left_mul(b, x, v);
    let n = m.rows();
    let chi = UniPoly::new(b.field(), m.charpoly());
    let roots = chi.roots();
    let mut pieces = Vec::new();
    let mut rest = Matrix::identity(b.field(), n);
    for lambda in &roots {
        let shifted = m.sub(&Matrix::identity(b.field(), n).scale(lambda));
        let ker = shifted.kernel();
        pieces.push(Subspace::from_vectors(b.field(), v.ambient(), ker.basis_vectors().iter().map(|c| lift(v, c)).collect()));
        rest = shifted.mul(&rest).unwrap();
    }
    if !roots.is_empty() {
        let image: Vec<Vec<Scalar>> = (0..n).map(|j| lift(v, &rest.column(j))).filter(|w| !is_zero_vector(w)).collect();
        if !image.is_empty() {
            pieces.push(Subspace::from_vectors(b.field(), v.ambient(), image));
        }
    }
    pieces.retain(|p| !p.is_zero());
    if pieces.len() <= 1 {
        return vec![v.clone()];
    }
    pieces
}

/// Splits a commutative semisimple algebra into ideals using the basis elements as probes.
pub fn commutative_blocks(b: &StructureAlgebra) -> CommutativeBlocks {
    assert!(b.is_commutative());
    let d = b.dim();
    let mut blocks = vec![b.full_space()];
    if d == 0 {
        blocks.clear();
    }
    for t in 0..d {
        let x = crate::exactmath::field::unit_vector(b.field(), d, t);
        let mut next = Vec::new();
        for v in &blocks {
            if v.dim() == 1 {
                next.push(v.clone());
            } else {
                next.extend(split_by(b, &x, v));
            }
        }
        blocks = next;
    }
    let mut idempotents = Vec::new();
    let mut unsplit = Vec::new();
    for v in blocks {
        if v.dim() == 1 {
            let w = v.basis_vectors().remove(0);
            let sq = b.multiply(&w, &w);
            let c = v.coordinates(&sq).expect("ideal").remove(0);
            match c.inv() {
                Some(inv) => idempotents.push(vec_scale(&inv, &w)),
                None => unsplit.push(v),
            }
        } else {
            unsplit.push(v);
        }
    }
    idempotents.sort_by_key(|e| e.iter().position(|c| !c.is_zero()));
    CommutativeBlocks { idempotents, unsplit }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitStatus {
    /// `A/J` is a product of copies of `k`.
    SplitBasic,
    /// `A/J` is a product of full matrix algebras over `k`, not all of size 1.
    Split,
    /// Some simple factor of `A/J` has center larger than `k`.
    NotSplit,
    /// Central simple factors exist for which no splitting witness was found.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitInfo {
    pub status: SplitStatus,
    pub quotient_dim: usize,
    /// Matrix sizes of the simple factors that were identified.
    pub simple_degrees: Vec<usize>,
    /// Number of blocks found in the center of `A/J`.
    pub central_blocks: usize,
}

impl SplitInfo {
    pub fn is_split(&self) -> bool {
        matches!(self.status, SplitStatus::SplitBasic | SplitStatus::Split)
    }

    /// `A/J = k`.
    pub fn is_split_local(&self) -> bool {
        self.quotient_dim == 1
    }
}

/// Decides whether `A/J` is a product of matrix algebras over the base field.
///
/// For non-commutative quotients the test is a semi-decision: a central simple
/// factor of dimension `n^2` counts as split once a right ideal of dimension `n`
/// shows up among eigenspaces of left multiplications.
pub fn split_info(a: &StructureAlgebra, rad: &RadicalData) -> SplitInfo {
    let (b, _) = a.quotient(&rad.radical);
    let m = b.dim();
    if b.is_commutative() {
        let blocks = commutative_blocks(&b);
        let status = if blocks.is_split() { SplitStatus::SplitBasic } else { SplitStatus::NotSplit };
        return SplitInfo { status, quotient_dim: m, simple_degrees: vec![1; blocks.idempotents.len()], central_blocks: blocks.block_count() };
    }
    let z = b.center();
    let zalg = b.subalgebra(&z, b.one()).expect("center is a subalgebra containing one");
    let zblocks = commutative_blocks(&zalg);
    if !zblocks.is_split() {
        return SplitInfo { status: SplitStatus::NotSplit, quotient_dim: m, simple_degrees: Vec::new(), central_blocks: zblocks.block_count() };
    }
    let mut degrees = Vec::new();
    let mut unknown = false;
    for e in &zblocks.idempotents {
        let f = lift(&z, e);
        let block = Subspace::from_vectors(b.field(), m, (0..m).map(|j| b.multiply(&f, &crate::exactmath::field::unit_vector(b.field(), m, j))).collect());
        let dim = block.dim();
        let n = (dim as f64).sqrt().round() as usize;
        if n * n != dim {
            return SplitInfo { status: SplitStatus::NotSplit, quotient_dim: m, simple_degrees: degrees, central_blocks: zblocks.block_count() };
        }
        if n == 1 || has_minimal_right_ideal(&b, &block, n) {
            degrees.push(n);
        } else {
            unknown = true;
        }
    }
    let status = if unknown {
        SplitStatus::Unknown
    } else if degrees.iter().all(|&n| n == 1) {
        SplitStatus::SplitBasic
    } else {
        SplitStatus::Split
    };
    SplitInfo { status, quotient_dim: m, simple_degrees: degrees, central_blocks: zblocks.block_count() }
}

/// Looks for an eigenspace of some `L_x` (x in the block) of dimension `n`; such a
/// right ideal exists in a central simple algebra of dimension `n^2` only when it is split.
fn has_minimal_right_ideal(b: &StructureAlgebra, block: &Subspace, n: usize) -> bool {
    let basis = block.basis_vectors();
    let mut probes: Vec<Vec<Scalar>> = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            probes.push(crate::exactmath::field::vec_add(&basis[i], &basis[j]));
        }
    }
    for x in probes {
        let m = restricted_left_mul(b, &x, block);
        let chi = UniPoly::new(b.field(), m.charpoly());
        for lambda in chi.roots() {
            let shifted = m.sub(&Matrix::identity(b.field(), m.rows()).scale(&lambda));
            if shifted.kernel().dim() == n {
                return true;
            }
        }
    }
    false
}
