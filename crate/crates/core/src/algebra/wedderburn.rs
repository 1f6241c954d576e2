use super::radical::RadicalData;
use super::semisimple::commutative_blocks;
use super::structure::StructureAlgebra;
use crate::error::{Error, Result};
use crate::exactmath::field::{vec_add, vec_scale, vec_sub};
use crate::exactmath::{Scalar, Subspace};

/// `A = A_s + J` with `A_s` spanned by orthogonal idempotents summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WMDecomposition {
    pub semisimple_part: Subspace,
    pub radical: Subspace,
    pub idempotents: Vec<Vec<Scalar>>,
    /// Newton steps spent on each lifted idempotent.
    pub newton_steps: Vec<usize>,
}

const MAX_NEWTON_STEPS: usize = 64;

/// Iterates `e -> 3e^2 - 2e^3` until `e^2 = e` exactly.
pub fn newton_idempotent(a: &StructureAlgebra, start: &[Scalar]) -> Result<(Vec<Scalar>, usize)> {
    let f = a.field();
    let three = f.from_i64(3);
    let two = f.from_i64(2);
    let mut e = start.to_vec();
    for step in 0..=MAX_NEWTON_STEPS {
        let sq = a.multiply(&e, &e);
        if sq == e {
            return Ok((e, step));
        }
        let cube = a.multiply(&sq, &e);
        e = vec_sub(&vec_scale(&three, &sq), &vec_scale(&two, &cube));
    }
    Err(Error::NotSplitBasic("idempotent lifting did not stabilize".into()))
}

/// Wedderburn-Malcev complement of a split basic algebra (`A/J = k^m`).
pub fn wm_complement(a: &StructureAlgebra, rad: &RadicalData) -> Result<WMDecomposition> {
    let f = a.field();
    let d = a.dim();
    let (b, keep) = a.quotient(&rad.radical);
    if !b.is_commutative() {
        return Err(Error::NotSplitBasic("A/J is not commutative".into()));
    }
    let blocks = commutative_blocks(&b);
    if !blocks.is_split() {
        return Err(Error::NotSplitBasic(format!(
            "A/J has {} block(s) not split over {}",
            blocks.unsplit.len(),
            f
        )));
    }
    let preimage = |eps: &[Scalar]| {
        let mut v = vec![f.zero(); d];
        for (c, &col) in eps.iter().zip(&keep) {
            v[col] = c.clone();
        }
        v
    };
    let m = blocks.idempotents.len();
    let mut idempotents: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    let mut steps = Vec::with_capacity(m);
    let mut complement = a.one().to_vec();
    for eps in blocks.idempotents.iter().take(m.saturating_sub(1)) {
        let y = preimage(eps);
        let y = a.multiply(&a.multiply(&complement, &y), &complement);
        let (e, s) = newton_idempotent(a, &y)?;
        complement = vec_sub(&complement, &e);
        idempotents.push(e);
        steps.push(s);
    }
    if m > 0 {
        idempotents.push(complement);
        steps.push(0);
    }
    let semisimple_part = Subspace::from_vectors(f, d, idempotents.clone());
    let sum = semisimple_part.sum(&rad.radical)?;
    if semisimple_part.dim() != m || sum.dim() != d || !semisimple_part.intersect(&rad.radical)?.is_zero() {
        return Err(Error::NotSplitBasic("lifted idempotents do not complement the radical".into()));
    }
    debug_assert!(idempotents.iter().fold(vec![f.zero(); d], |acc, e| vec_add(&acc, e)) == a.one());
    Ok(WMDecomposition { semisimple_part, radical: rad.radical.clone(), idempotents, newton_steps: steps })
}
