use super::lie::{LieAmbient, LieSubalgebra};
use super::radical::RadicalData;
use super::structure::StructureAlgebra;
use crate::exactmath::field::dot;
use crate::exactmath::{LinearSystem, Matrix, Scalar, Subspace};

/// `Der(A)`: matrices `D` (with `D e_k = sum_m D[m][k] e_m`) satisfying the Leibniz rule
/// on all basis pairs and `D(1) = 0`.
pub fn derivation_algebra(a: &StructureAlgebra) -> LieSubalgebra {
    let d = a.dim();
    let f = a.field();
    let var = |m: usize, k: usize| m * d + k;
    let mut sys = LinearSystem::new(f, d * d);
    for m in 0..d {
        sys.add_equation((0..d).map(|k| (var(m, k), a.one()[k].clone())));
    }
    // right-multiplication constants c[a][j][m] indexed by (j, m)
    for i in 0..d {
        for j in 0..d {
            if sys.is_full_rank() {
                break;
            }
            let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
            // D(e_i e_j)
            for (k, c) in a.product(i, j) {
                for (m, eq) in eqs.iter_mut().enumerate() {
                    eq.push((var(m, *k), c.clone()));
                }
            }
            // - D(e_i) e_j - e_i D(e_j)
            for s in 0..d {
                for (m, c) in a.product(s, j) {
                    eqs[*m].push((var(s, i), -c));
                }
                for (m, c) in a.product(i, s) {
                    eqs[*m].push((var(s, j), -c));
                }
            }
            for eq in eqs {
                sys.add_equation(eq);
            }
        }
    }
    LieSubalgebra::from_space(d, LieAmbient::Derivation, sys.kernel())
}

/// `span{ad_x}` with `ad_x(y) = x y - y x`.
pub fn inner_derivations(a: &StructureAlgebra) -> LieSubalgebra {
    let d = a.dim();
    let mats: Vec<Matrix> = (0..d)
        .map(|i| {
            let e = crate::exactmath::field::unit_vector(a.field(), d, i);
            a.left_mul_matrix(&e).sub(&a.right_mul_matrix(&e))
        })
        .collect();
    LieSubalgebra::span(a.field(), d, LieAmbient::Derivation, &mats)
}

/// `{ D in der : D(domain) ⊆ target }`.
pub fn der_into(der: &LieSubalgebra, domain: &Subspace, target: &Subspace) -> LieSubalgebra {
    let f = der.field();
    let basis = der.basis_matrices();
    let ann = target.annihilator().basis_vectors();
    let mut sys = LinearSystem::new(f, basis.len());
    let images: Vec<Vec<Vec<Scalar>>> = basis
        .iter()
        .map(|m| domain.basis_vectors().iter().map(|j| m.mul_vec(j).unwrap()).collect())
        .collect();
    for y in &ann {
        for jdx in 0..domain.dim() {
            sys.add_equation(images.iter().enumerate().map(|(t, im)| (t, dot(f, y, &im[jdx]))));
        }
    }
    let mats: Vec<Matrix> = sys
        .kernel()
        .basis_vectors()
        .iter()
        .map(|c| {
            let mut acc = Matrix::zeros(f, der.n(), der.n());
            for (ct, m) in c.iter().zip(&basis) {
                if !ct.is_zero() {
                    acc = acc.add(&m.scale(ct));
                }
            }
            acc
        })
        .collect();
    LieSubalgebra::span(f, der.n(), der.ambient(), &mats)
}

/// Lie algebra of the kernel of the action on `J/J^2`: `{ D : D(J) ⊆ J^2 }`.
pub fn ker_phi_lie(der: &LieSubalgebra, rad: &RadicalData) -> LieSubalgebra {
    der_into(der, &rad.radical, rad.j2())
}

/// Matrix of the map induced by `D` on `J/J^2` in the basis `rad.jj2_basis`;
/// `None` when `D` does not preserve `J`.
pub fn induced_on_jj2(d: &Matrix, rad: &RadicalData) -> Option<Matrix> {
    let f = d.field();
    let n = rad.jj2_dim();
    let j2 = rad.j2();
    // coordinates modulo J^2 relative to the lifted basis
    let mut ext = j2.basis_vectors();
    ext.extend(rad.jj2_basis.iter().cloned());
    let full = Subspace::from_vectors(f, d.rows(), ext.clone());
    let cols_matrix = Matrix::from_columns(f, d.rows(), &ext);
    let mut cols = Vec::with_capacity(n);
    for x in &rad.jj2_basis {
        let y = d.mul_vec(x).unwrap();
        if !full.contains(&y).unwrap() {
            return None;
        }
        let c = cols_matrix.solve(&y).unwrap().unwrap();
        cols.push(c[j2.dim()..].to_vec());
    }
    Some(Matrix::from_columns(f, n, &cols))
}

/// Image of `der` in `gl(J/J^2)`; `None` when some derivation moves `J`.
pub fn phi_lie_image(der: &LieSubalgebra, rad: &RadicalData) -> Option<LieSubalgebra> {
    let mats = der.basis_matrices().iter().map(|m| induced_on_jj2(m, rad)).collect::<Option<Vec<_>>>()?;
    Some(LieSubalgebra::span(der.field(), rad.jj2_dim(), LieAmbient::Matrix, &mats))
}
