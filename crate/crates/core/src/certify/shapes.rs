use serde::Serialize;

use crate::algebra::{jacobson_radical, wm_complement, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exactmath::field::unit_vector;
use crate::exactmath::{Matrix, Subspace};
use crate::forms::{im_phi_lie, sim_lie, stab_lie};
use crate::poly::MultiPoly;
use crate::presentation::Presentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockShape {
    pub dim: usize,
    pub dim_j: usize,
    pub dim_j2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusShapeReport {
    pub blocks: Vec<BlockShape>,
    /// Every block is `k` or `k[X]/X^2`.
    pub is_torus_shape: bool,
    /// Number of `k[X]/X^2` blocks.
    pub torus_rank: usize,
}

/// Local blocks `e_i A` of a commutative split basic algebra.
fn local_blocks(a: &StructureAlgebra) -> Option<Vec<(Subspace, Subspace)>> {
    if !a.is_commutative() {
        return None;
    }
    let rad = jacobson_radical(a).ok()?;
    let wm = wm_complement(a, &rad).ok()?;
    let d = a.dim();
    let f = a.field();
    let blocks = wm
        .idempotents
        .iter()
        .map(|e| {
            let block = Subspace::from_vectors(f, d, (0..d).map(|j| a.multiply(e, &unit_vector(f, d, j))).collect());
            let j = Subspace::from_vectors(f, d, rad.radical.basis_vectors().iter().map(|x| a.multiply(e, x)).collect());
            (block, j)
        })
        .collect();
    Some(blocks)
}

/// Whether `A` is a sum of copies of `k` and `k[X]/X^2`; `None` unless `A` is commutative split basic.
pub fn torus_shape_check(a: &StructureAlgebra) -> Option<TorusShapeReport> {
    let blocks: Vec<BlockShape> = local_blocks(a)?
        .into_iter()
        .map(|(b, j)| BlockShape { dim: b.dim(), dim_j: j.dim(), dim_j2: a.subspace_product(&j, &j).dim() })
        .collect();
    let is_torus_shape = blocks.iter().all(|b| b.dim == 1 || (b.dim == 2 && b.dim_j == 1 && b.dim_j2 == 0));
    let torus_rank = blocks.iter().filter(|b| b.dim == 2).count();
    Some(TorusShapeReport { blocks, is_torus_shape, torus_rank })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductiveReport {
    /// `lambda[i][j] = dim e_i J e_j`.
    pub lambda: Vec<Vec<usize>>,
    /// Sizes `n` of the factors `GL_n`.
    pub gl_factors: Vec<usize>,
}

/// Multiplicities of `J` as a bimodule over the split basic semisimple part, when `J^2 = 0` and `J` is central.
pub fn reductive_shape(a: &StructureAlgebra) -> Option<ReductiveReport> {
    let rad = jacobson_radical(a).ok()?;
    if !rad.j2().is_zero() || !rad.radical.is_subspace_of(&a.center()).unwrap() {
        return None;
    }
    let wm = wm_complement(a, &rad).ok()?;
    let d = a.dim();
    let jb = rad.radical.basis_vectors();
    let lambda: Vec<Vec<usize>> = wm
        .idempotents
        .iter()
        .map(|ei| {
            wm.idempotents
                .iter()
                .map(|ej| Subspace::from_vectors(a.field(), d, jb.iter().map(|x| a.multiply(&a.multiply(ei, x), ej)).collect()).dim())
                .collect()
        })
        .collect();
    debug_assert_eq!(lambda.iter().flatten().sum::<usize>(), rad.dim());
    let gl_factors = lambda.iter().flatten().copied().filter(|&x| x > 0).collect();
    Some(ReductiveReport { lambda, gl_factors })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section6Report {
    pub n_vars: usize,
    pub degree: usize,
    pub lowey: usize,
    pub dim_stab_q: usize,
    pub so_q_fixes_f: bool,
    pub dim_stab_f: usize,
    pub dim_sim_f: usize,
    pub dim_im_phi_lie: usize,
    pub im_phi_equals_sim: bool,
    /// `dim (stab(f) ∩ k I)`.
    pub stab_meets_scalars: usize,
    pub sim_is_stab_plus_scalars: bool,
}

/// Structural checks for `k[X]/(<X>^l + <f>)` with `f` an invariant of `SO(q)`.
pub fn section6_verify(q: &MultiPoly, f: &MultiPoly, l: usize) -> Result<Section6Report> {
    let d = f.degree().ok_or(Error::ZeroInput)?;
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if d <= 2 || d >= l {
        return Err(Error::DegreeOutOfRange(format!("need 2 < deg f = {d} < l = {l}")));
    }
    if q.n_vars() != f.n_vars() {
        return Err(Error::AmbientMismatch { left: q.n_vars(), right: f.n_vars() });
    }
    let n = f.n_vars();
    let field = f.field();
    let p = Presentation::from_ideal(field, n, l, vec![f.clone()])?;
    let im = im_phi_lie(&p)?;
    let stab_f = stab_lie(f)?;
    let sim_f = sim_lie(f)?;
    let stab_q = stab_lie(q)?;
    let scalars = crate::algebra::LieSubalgebra::span(field, n, crate::algebra::LieAmbient::Matrix, &[Matrix::identity(field, n)]);
    let meets = stab_f.intersect(&scalars)?.dim();
    let sim_is_sum = sim_f == stab_f.sum(&scalars)? && sim_f.dim() == stab_f.dim() + 1;
    Ok(Section6Report {
        n_vars: n,
        degree: d,
        lowey: p.lowey(),
        dim_stab_q: stab_q.dim(),
        so_q_fixes_f: stab_q.is_subalgebra_of(&stab_f),
        dim_stab_f: stab_f.dim(),
        dim_sim_f: sim_f.dim(),
        dim_im_phi_lie: im.dim(),
        im_phi_equals_sim: im == sim_f,
        stab_meets_scalars: meets,
        sim_is_stab_plus_scalars: sim_is_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::structure::examples::*;
    use crate::exactmath::Field;
    use crate::poly::parse_poly;

    fn poly(text: &str, n: usize) -> MultiPoly {
        parse_poly(text, n, Field::Rationals).unwrap()
    }

    #[test]
    fn torus_shapes() {
        let q = Field::Rationals;
        let a = split_semisimple(q, 1).direct_product(&truncated_polynomial(q, 2));
        let r = torus_shape_check(&a).unwrap();
        assert!(r.is_torus_shape);
        assert_eq!(r.torus_rank, 1);

        let r = torus_shape_check(&truncated_polynomial(q, 3)).unwrap();
        assert!(!r.is_torus_shape);

        let r = torus_shape_check(&split_semisimple(q, 3)).unwrap();
        assert!(r.is_torus_shape);
        assert_eq!(r.torus_rank, 0);

        assert!(torus_shape_check(&matrix_algebra(q, 2)).is_none());
    }

    #[test]
    fn reductive_shapes() {
        let q = Field::Rationals;
        let p = Presentation::from_ideal(q, 3, 2, vec![]).unwrap();
        assert_eq!(reductive_shape(&p.quotient_algebra()).unwrap().gl_factors, vec![3]);
        assert_eq!(reductive_shape(&truncated_polynomial(q, 2)).unwrap().gl_factors, vec![1]);

        let k1 = truncated_polynomial(q, 2);
        let k2 = Presentation::from_ideal(q, 2, 2, vec![]).unwrap().quotient_algebra();
        let r = reductive_shape(&k1.direct_product(&k2)).unwrap();
        assert_eq!(r.gl_factors, vec![1, 2]);
        assert!(reductive_shape(&truncated_polynomial(q, 3)).is_none());
    }

    #[test]
    fn section6_examples() {
        let q4 = poly("X1^2 + X2^2 + X3^2 + X4^2", 4);
        let f = poly("X1^2 + X2^2 + X3^2 + X4^2", 4).pow(2);
        let r = section6_verify(&q4, &f, 5).unwrap();
        assert_eq!(r.dim_sim_f, 7);
        assert!(r.so_q_fixes_f && r.im_phi_equals_sim && r.sim_is_stab_plus_scalars);
        assert_eq!(r.stab_meets_scalars, 0);

        let q3 = poly("X1^2 + X2^2 + X3^2", 3);
        let quartic = poly("X1^4 + X2^4 + X3^4", 3);
        let r = section6_verify(&q3, &quartic, 5).unwrap();
        assert_eq!((r.dim_stab_f, r.dim_im_phi_lie), (0, 1));

        assert!(matches!(section6_verify(&q3, &quartic, 4), Err(Error::DegreeOutOfRange(_))));
    }
}
