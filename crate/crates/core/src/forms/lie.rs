use crate::algebra::{LieAmbient, LieSubalgebra};
use crate::error::{Error, Result};
use crate::exactmath::field::{is_zero_vector, unit_vector};
use crate::exactmath::{Field, LinearSystem, Matrix, Scalar, Subspace, UniPoly};
use crate::poly::{Monomial, MultiPoly};
use crate::presentation::{is_graded_presentation, MinimalDegreeSubspace, Presentation};

/// `X_i * d f / d X_j`, the coefficient of `m_ij` in `delta_M(f)`.
fn action_generators(f: &MultiPoly) -> Vec<MultiPoly> {
    let n = f.n_vars();
    let partials = f.gradient();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for pj in &partials {
            out.push(pj.mul_monomial(&Monomial::var(n, i)));
        }
    }
    out
}

fn check_form(f: &MultiPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(())
}

/// Solves `delta_M(f) = lambda f` for `(M, lambda)` (or `lambda = 0` when `with_scale` is off);
/// returns the kernel in unknowns `m_ij` (index `i*n + j`) followed by `lambda`.
fn linearized_kernel(f: &MultiPoly, with_scale: bool) -> Subspace {
    let n = f.n_vars();
    let gens = action_generators(f);
    let unknowns = n * n + usize::from(with_scale);
    let mut monomials: Vec<&Monomial> = gens.iter().flat_map(|g| g.terms().keys()).chain(f.terms().keys()).collect();
    monomials.sort();
    monomials.dedup();
    let mut sys = LinearSystem::new(f.field(), unknowns);
    for mono in monomials {
        let mut eq: Vec<(usize, Scalar)> = gens.iter().enumerate().map(|(k, g)| (k, g.coefficient(mono))).collect();
        if with_scale {
            eq.push((n * n, -f.coefficient(mono)));
        }
        sys.add_equation(eq.into_iter().filter(|(_, c)| !c.is_zero()));
    }
    sys.kernel()
}

/// Lie algebra of the stabilizer: `{ M : delta_M(f) = 0 }`.
pub fn stab_lie(f: &MultiPoly) -> Result<LieSubalgebra> {
    check_form(f)?;
    let n = f.n_vars();
    Ok(LieSubalgebra::from_space(n, LieAmbient::Matrix, linearized_kernel(f, false)))
}

/// Lie algebra of the similarity group: `{ M : delta_M(f) in k f }`.
pub fn sim_lie(f: &MultiPoly) -> Result<LieSubalgebra> {
    check_form(f)?;
    let n = f.n_vars();
    let ker = linearized_kernel(f, true);
    let projected = ker.basis_vectors().into_iter().map(|mut v| {
        v.pop();
        v
    });
    Ok(LieSubalgebra::from_space(n, LieAmbient::Matrix, Subspace::from_vectors(f.field(), n * n, projected.collect())))
}

/// The scale `lambda` with `delta_M(f) = lambda f`, if any.
pub fn similarity_scale(f: &MultiPoly, m: &Matrix) -> Option<Scalar> {
    let image = f.linearized_action(m);
    let (lead, c) = f.terms().iter().next()?;
    let lambda = &image.coefficient(lead) * &c.inv()?;
    (image == f.scale(&lambda)).then_some(lambda)
}

/// `{ M in gl_n : delta_M(I) ⊆ I }` for a presentation with homogeneous generators.
pub fn im_phi_lie(p: &Presentation) -> Result<LieSubalgebra> {
    if !is_graded_presentation(p) {
        return Err(Error::NotGraded("normal-form generators are not homogeneous".into()));
    }
    let n = p.n_vars();
    let ring = p.ring();
    let ideal = p.ideal();
    let pivots = ideal.pivots();
    let free: Vec<usize> = (0..ring.dim()).filter(|c| !pivots.contains(c)).collect();
    let mut sys = LinearSystem::new(p.field(), n * n);
    for v in ideal.basis_vectors() {
        let g = ring.to_poly(&v);
        let images: Vec<Vec<Scalar>> = action_generators(&g).iter().map(|h| ideal.reduce(&ring.truncate(h))).collect();
        for &c in &free {
            sys.add_equation(images.iter().enumerate().filter(|(_, w)| !w[c].is_zero()).map(|(k, w)| (k, w[c].clone())));
        }
        if sys.is_full_rank() {
            break;
        }
    }
    Ok(LieSubalgebra::from_space(n, LieAmbient::Matrix, sys.kernel()))
}

/// Action `g -> delta_M(g)` of `l ⊆ gl_n` on the degree slice `W`, as matrices in the basis of `W`.
pub fn action_on_w(l: &LieSubalgebra, w: &MinimalDegreeSubspace) -> Result<LieSubalgebra> {
    let elems = w.elements();
    let k = elems.len();
    let mut mats = Vec::new();
    for m in l.basis_matrices() {
        let cols = elems
            .iter()
            .map(|g| w.space.coordinates(&w.to_slice_coords(&g.linearized_action(&m))).ok_or(Error::NotStable))
            .collect::<Result<Vec<_>>>()?;
        mats.push(Matrix::from_columns(l.field(), k, &cols));
    }
    Ok(LieSubalgebra::span(l.field(), k, LieAmbient::Matrix, &mats))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlagResult {
    /// `v_1, ..., v_k` with every `span(v_1..v_i)` stable.
    FullFlag(Vec<Vec<Scalar>>),
    NoRationalFlag,
    NotSolvable,
}

impl FlagResult {
    pub fn label(&self) -> &'static str {
        match self {
            FlagResult::FullFlag(_) => "FULL_FLAG",
            FlagResult::NoRationalFlag => "NO_RATIONAL_FLAG",
            FlagResult::NotSolvable => "NOT_SOLVABLE",
        }
    }
}

/// Searches a stable full flag defined over the base field, one common eigenvector at a time.
pub fn flag_search(l: &LieSubalgebra) -> FlagResult {
    if !l.is_solvable() {
        return FlagResult::NotSolvable;
    }
    let field = l.field();
    let k = l.n();
    let mats = l.basis_matrices();
    let mut flag_space = Subspace::zero(field, k);
    let mut flag = Vec::with_capacity(k);
    while flag_space.dim() < k {
        let free: Vec<usize> = (0..k).filter(|c| !flag_space.pivots().contains(c)).collect();
        let induced: Vec<Matrix> = mats
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Scalar>> = free
                    .iter()
                    .map(|&c| {
                        let image = flag_space.reduce(&a.column(c));
                        free.iter().map(|&r| image[r].clone()).collect()
                    })
                    .collect();
                Matrix::from_columns(field, free.len(), &cols)
            })
            .collect();
        let Some(u) = common_eigenvector(field, free.len(), &induced) else {
            return FlagResult::NoRationalFlag;
        };
        let mut v = vec![field.zero(); k];
        for (c, &col) in u.iter().zip(&free) {
            v[col] = c.clone();
        }
        flag_space = flag_space.sum(&Subspace::from_vectors(field, k, vec![v.clone()])).unwrap();
        flag.push(v);
    }
    FlagResult::FullFlag(flag)
}

/// A nonzero vector that is an eigenvector of every matrix, eigenvalues in the base field.
fn common_eigenvector(field: Field, dim: usize, mats: &[Matrix]) -> Option<Vec<Scalar>> {
    fn search(field: Field, mats: &[Matrix], space: Subspace) -> Option<Subspace> {
        let Some((a, rest)) = mats.split_first() else { return Some(space) };
        let chi = UniPoly::new(field, a.charpoly());
        for lambda in chi.roots() {
            let eig = a.sub(&Matrix::identity(field, a.rows()).scale(&lambda)).kernel();
            let next = space.intersect(&eig).unwrap();
            if next.is_zero() {
                continue;
            }
            if let Some(found) = search(field, rest, next) {
                return Some(found);
            }
        }
        None
    }
    let nonzero: Vec<Matrix> = mats.iter().filter(|m| !m.is_zero()).cloned().collect();
    let space = search(field, &nonzero, Subspace::full(field, dim))?;
    let v = space.basis_vectors().remove(0);
    debug_assert!(!is_zero_vector(&v));
    Some(v)
}

/// Standard basis of `k^k`.
pub fn standard_basis(field: Field, k: usize) -> Vec<Vec<Scalar>> {
    (0..k).map(|i| unit_vector(field, k, i)).collect()
}
