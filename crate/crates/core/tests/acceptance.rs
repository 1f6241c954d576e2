//! Acceptance suite: one line per criterion, all run from a single test so the
//! summary prints in order. Every comparison is exact (tolerance 0).

use std::collections::BTreeSet;
use std::time::Instant;

use fdalg::algebra::structure::examples::{split_semisimple, truncated_polynomial};
use fdalg::algebra::{der_into, derivation_algebra, jacobson_radical, trace_form_radical, LieAmbient, LieSubalgebra, StructureAlgebra};
use fdalg::certify::{certify_presentation, torus_shape_check, AnalysisConfig};
use fdalg::exactmath::field::unit_vector;
use fdalg::exactmath::{Field, Matrix, Scalar, Subspace};
use fdalg::forms::{diagonal_rule, im_phi_lie, nonsingularity, sim_lie, stab_lie, NonsingularityConfig, NonsingularityVerdict};
use fdalg::oracle::{enumerate_automorphisms, induced_jj2_matrices, DEFAULT_LIMIT};
use fdalg::poly::{parse_poly, Monomial, MultiPoly};
use fdalg::presentation::{minimal_degree_subspace, property_star, Presentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criterion 10 cannot hold: `W = span{X1^2}` has no nonsingular element, so the
/// W-rule has nothing to fire on. It runs and is expected to report FAIL.
const KNOWN_FAILURES: [u32; 1] = [10];
const TIME_BUDGET_SECS: f64 = 60.0;

const Q: Field = Field::Rationals;

fn pres(field: Field, n: usize, l: usize, gens: &[&str]) -> Presentation {
    Presentation::from_ideal(field, n, l, gens.iter().map(|g| parse_poly(g, n, field).unwrap()).collect()).unwrap()
}

fn poly(text: &str, n: usize) -> MultiPoly {
    parse_poly(text, n, Q).unwrap()
}

/// The quotient algebra reloaded from its table alone, so no radical is carried along.
fn bare(a: &StructureAlgebra) -> StructureAlgebra {
    StructureAlgebra::load(a.field(), a.table(), a.one().to_vec()).unwrap()
}

fn nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    let v = loop {
        let v = rng.gen_range(-5i64..=5);
        if v != 0 {
            break v;
        }
    };
    Q.from_i64(v)
}

fn random_generator(rng: &mut ChaCha8Rng, n: usize, l: usize) -> MultiPoly {
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let d = rng.gen_range(2..l);
        let ms = Monomial::of_degree(n, d);
        terms.push((ms[rng.gen_range(0..ms.len())].clone(), nonzero(rng)));
    }
    let mut f = MultiPoly::zero(Q, n);
    for (m, c) in terms {
        f.add_term(m, c);
    }
    f
}

fn radical_correctness() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut ok = 0;
    for _ in 0..20 {
        let n = rng.gen_range(1..=3);
        let l = rng.gen_range(2..=4);
        let gens: Vec<MultiPoly> = if l > 2 { (0..rng.gen_range(0..=2)).map(|_| random_generator(&mut rng, n, l)).collect() } else { vec![] };
        let gens: Vec<MultiPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let p = Presentation::from_ideal(Q, n, l, gens).unwrap();
        let a = bare(&p.quotient_algebra());
        let d = a.dim();
        let expected = Subspace::from_vectors(
            Q,
            d,
            p.quotient_basis_monomials().iter().enumerate().filter(|(_, m)| !m.is_one()).map(|(i, _)| unit_vector(Q, d, i)).collect(),
        );
        if trace_form_radical(&a).unwrap() == expected {
            ok += 1;
        }
    }
    (ok == 20, format!("{ok}/20 random presentations"))
}

/// The derivation sending `X_i` to `b` and the other variables to 0, built monomial by monomial.
fn free_assignment(p: &Presentation, a: &StructureAlgebra, i: usize, b: &[Scalar]) -> Matrix {
    let mons = p.quotient_basis_monomials();
    let d = mons.len();
    let cols: Vec<Vec<Scalar>> = mons
        .iter()
        .map(|m| {
            let e = m.exponents()[i];
            if e == 0 {
                return vec![Q.zero(); d];
            }
            let lower = m.div(&Monomial::var(p.n_vars(), i)).unwrap();
            let k = mons.iter().position(|x| *x == lower).unwrap();
            a.multiply(&unit_vector(Q, d, k), b).iter().map(|c| c.clone() * Q.from_u64(e as u64)).collect()
        })
        .collect();
    Matrix::from_columns(Q, d, &cols)
}

fn is_derivation(a: &StructureAlgebra, m: &Matrix) -> bool {
    let d = a.dim();
    (0..d).all(|i| {
        (0..d).all(|j| {
            let (x, y) = (unit_vector(Q, d, i), unit_vector(Q, d, j));
            let lhs = m.mul_vec(&a.multiply(&x, &y)).unwrap();
            let r1 = a.multiply(&m.mul_vec(&x).unwrap(), &y);
            let r2 = a.multiply(&x, &m.mul_vec(&y).unwrap());
            lhs == r1.iter().zip(&r2).map(|(u, v)| u.clone() + v.clone()).collect::<Vec<_>>()
        })
    })
}

fn derivation_law() -> (bool, String) {
    let mut all = true;
    let mut parts = Vec::new();
    for (n, l) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
        let p = pres(Q, n, l, &[]);
        let a = bare(&p.quotient_algebra());
        let dim_j = a.dim() - 1;
        let der = derivation_algebra(&a);
        let mons = p.quotient_basis_monomials();
        let assignments: Vec<Matrix> = (0..n)
            .flat_map(|i| {
                let mons = &mons;
                let a = &a;
                let p = &p;
                (0..mons.len()).filter(move |&k| !mons[k].is_one()).map(move |k| free_assignment(p, a, i, &unit_vector(Q, a.dim(), k)))
            })
            .collect();
        let span = LieSubalgebra::span(Q, a.dim(), LieAmbient::Derivation, &assignments);
        let good = der.dim() == n * dim_j
            && span.dim() == n * dim_j
            && assignments.iter().all(|m| is_derivation(&a, m) && der.contains(m));
        all &= good;
        parts.push(format!("({n},{l}): {}={}", der.dim(), n * dim_j));
    }
    (all, parts.join(", "))
}

fn classical_stabilizers() -> (bool, String) {
    let mut all = true;
    let mut parts = Vec::new();
    for n in 2..=5 {
        let q = (1..=n).map(|i| format!("X{i}^2")).collect::<Vec<_>>().join(" + ");
        let f = poly(&q, n);
        let (s, m) = (stab_lie(&f).unwrap().dim(), sim_lie(&f).unwrap().dim());
        all &= s == n * (n - 1) / 2 && m == s + 1;
        parts.push(format!("n={n}: {s}/{m}"));
    }
    (all, parts.join(", "))
}

fn oracle_agreement() -> (bool, String) {
    let cases = [
        ("GF(3)[x]/x^3", truncated_polynomial(Field::Prime(3), 3), 6usize),
        ("GF(2)[x]/x^2", truncated_polynomial(Field::Prime(2), 2), 1),
        ("GF(2)[x,y]/<x,y>^2", pres(Field::Prime(2), 2, 2, &[]).quotient_algebra(), 6),
    ];
    let mut all = true;
    let mut parts = Vec::new();
    for (name, a, expected) in cases {
        let a = bare(&a);
        let g = enumerate_automorphisms(&a, DEFAULT_LIMIT).unwrap();
        let b = induced_jj2_matrices(&g, &a).unwrap();
        let mats = g.matrices();
        let index = |m: &Matrix| mats.iter().position(|x| x == m).unwrap();
        let homomorphic = mats.iter().enumerate().all(|(s, x)| {
            mats.iter().enumerate().all(|(t, y)| b.blocks[index(&x.mul(y).unwrap())] == b.blocks[s].mul(&b.blocks[t]).unwrap())
        });
        let good = g.order == expected && g.axioms_verified && b.image_size * b.kernel_count == g.order && homomorphic;
        all &= good;
        parts.push(format!("{name}: {}={}x{}", g.order, b.image_size, b.kernel_count));
    }
    (all, parts.join(", "))
}

fn dimension_identity() -> (bool, String) {
    let cases: [(usize, usize, &[&str]); 10] = [
        (2, 3, &["X1^2 + X2^2"]),
        (2, 3, &[]),
        (1, 4, &[]),
        (2, 4, &["X1^2", "X2^3"]),
        (3, 3, &["X1*X2", "X3^2"]),
        (2, 4, &["X1*X2"]),
        (3, 4, &["X1*X2", "X2*X3", "X1*X3"]),
        (2, 4, &["X1^3 + X2^3"]),
        (3, 3, &["X1^2 + X2^2 + X3^2"]),
        (3, 4, &["X1^2 - X2*X3", "X2^3"]),
    ];
    let mut ok = 0;
    for (n, l, gens) in cases {
        let p = pres(Q, n, l, gens);
        let a = bare(&p.quotient_algebra());
        let rad = jacobson_radical(&a).unwrap();
        let der = derivation_algebra(&a);
        let im = im_phi_lie(&p).unwrap().dim();
        let ker = der_into(&der, &rad.radical, rad.j2()).dim();
        if der.dim() == im + ker {
            ok += 1;
        }
    }
    (ok == 10, format!("{ok}/10 presentations"))
}

fn torus_shape_matrix(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Matrix {
    let beta = nonzero(rng);
    let mut m = Matrix::zeros(Q, n, n);
    for i in 0..n {
        m.set(i, i, if i + 1 < r { nonzero(rng) } else { beta.clone() });
    }
    m
}

fn torus_stabilizes() -> (bool, String) {
    let cases: [(usize, usize, &[&str], usize); 5] = [
        (4, 18, &["X1^2*X2^3*X3^4*X4^8 + X1^2*X2^3*X3^12"], 3),
        (2, 3, &["X1^2 + X2^2"], 1),
        (3, 4, &["X1*X2^2 + X1*X3^2"], 2),
        (3, 4, &["X1^2", "X2^3 + X3^3"], 2),
        (4, 5, &["X1*X2*X3^2 + X1*X2*X4^2", "X1^2*X2"], 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut all = true;
    let mut parts = Vec::new();
    for (n, l, gens, r) in cases {
        let p = pres(Q, n, l, gens);
        let got = property_star(&p);
        let stable = (0..5).all(|_| p.is_stabilized_by(&torus_shape_matrix(&mut rng, n, r)));
        all &= got == Some(r) && stable;
        parts.push(format!("r={}", got.map_or("-".into(), |r| r.to_string())));
    }
    (all, parts.join(", "))
}

fn certificate_scenarios() -> (bool, String) {
    let cfg = AnalysisConfig::default();
    let a = certify_presentation(&pres(Q, 6, 2, &[]), &cfg).has("R_TRIVIAL", "R-J2");
    let cb = certify_presentation(&pres(Q, 2, 3, &["X1^2 + X2^2"]), &cfg);
    let b = cb.has("R_TRIVIAL", "R-DIM5") && cb.has("NOT_K_SPLIT", "R-QANIS");
    let cc = certify_presentation(&pres(Field::Prime(5), 2, 3, &["X1^2 + X2^2"]), &cfg);
    let witness = cc.invariants.presentation.as_ref().and_then(|p| p.quadratic.as_ref()).and_then(|q| q.witness.clone());
    let c = !cc.fired_rules().contains(&"R-QANIS") && witness == Some(vec!["1".into(), "2".into()]);
    let cubic = torus_shape_check(&truncated_polynomial(Q, 3).direct_product(&split_semisimple(Q, 1))).unwrap();
    let dual = torus_shape_check(&truncated_polynomial(Q, 2).direct_product(&split_semisimple(Q, 1))).unwrap();
    let field_only = torus_shape_check(&split_semisimple(Q, 2)).unwrap();
    let d = !cubic.is_torus_shape && dual.is_torus_shape && dual.torus_rank == 1 && field_only.is_torus_shape && field_only.torus_rank == 0;
    (a && b && c && d, format!("a={a} b={b} c={c} d={d}"))
}

fn image_equals_similarities() -> (bool, String) {
    let cases: [(usize, usize, &str); 5] = [
        (2, 3, "X1^2 + X2^2"),
        (2, 3, "X1*X2"),
        (2, 4, "X1^3 + X2^3"),
        (3, 4, "X1^3 + X2^3 + X3^3"),
        (4, 5, "X1^4 + 2*X1^2*X2^2 + 2*X1^2*X3^2 + 2*X1^2*X4^2 + X2^4 + 2*X2^2*X3^2 + 2*X2^2*X4^2 + X3^4 + 2*X3^2*X4^2 + X4^4"),
    ];
    let mut ok = 0;
    let mut dims = Vec::new();
    for (n, l, f) in cases {
        let p = pres(Q, n, l, &[f]);
        let im = im_phi_lie(&p).unwrap();
        let sim = sim_lie(&poly(f, n)).unwrap();
        dims.push(sim.dim().to_string());
        if im == sim {
            ok += 1;
        }
    }
    (ok == 5, format!("{ok}/5 equal, dims [{}]", dims.join(",")))
}

fn nonsingularity_checks() -> (bool, String) {
    let cfg = NonsingularityConfig::default();
    let cubic = nonsingularity(&poly("X1^3 + X2^3", 2), &cfg).unwrap().verdict == NonsingularityVerdict::NonsingularCertified;
    let witness = matches!(nonsingularity(&poly("X1^2*X2", 2), &cfg).unwrap().verdict, NonsingularityVerdict::SingularWitness(_));
    let mut diag_ok = true;
    let mut checked = 0;
    for field in [Q, Field::Prime(2), Field::Prime(3), Field::Prime(5)] {
        for d in 2..=5u32 {
            for coeffs in [[1i64, 1, 1], [2, -1, 3], [1, 0, 1], [0, 0, 4], [3, 5, 7]] {
                let f = MultiPoly::from_terms(
                    field,
                    3,
                    (0..3).map(|i| {
                        let mut e = vec![0; 3];
                        e[i] = d;
                        (Monomial::new(e), field.from_i64(coeffs[i]))
                    }),
                );
                if f.is_zero() {
                    continue;
                }
                let all_nonzero = (0..3).all(|i| !field.from_i64(coeffs[i]).is_zero());
                let p = field.characteristic();
                let expected = all_nonzero && (p == 0 || u64::from(d) % p != 0);
                checked += 1;
                diag_ok &= diagonal_rule(&f) == Some(expected);
            }
        }
    }
    (cubic && witness && diag_ok, format!("cubic={cubic} witness={witness} diagonal rule {checked} forms ok={diag_ok}"))
}

fn w_extraction() -> (bool, String) {
    let p = pres(Q, 2, 4, &["X1^2", "X1^3 + X2^3"]);
    let w = minimal_degree_subspace(&p);
    let basis: Vec<String> = w.elements().iter().map(ToString::to_string).collect();
    let shape = w.degree == 2 && w.dim() == 1 && basis == ["X1^2"];
    let cert = certify_presentation(&p, &AnalysisConfig::default());
    let side = cert.invariants.presentation.as_ref().map_or(false, |pi| pi.nonsingularity.iter().any(|r| r.role == fdalg::certify::invariants::FormRole::WBasis));
    let w1 = cert.has("RATIONAL", "R-W1");
    (shape && side && w1, format!("d_min={} W=[{}] side-condition evaluated={side} R-W1={w1}", w.degree, basis.join(",")))
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let criteria: [(u32, &str, fn() -> (bool, String)); 10] = [
        (1, "radical correctness", radical_correctness),
        (2, "derivation dimension law", derivation_law),
        (3, "classical stabilizer dims", classical_stabilizers),
        (4, "finite-field oracle agreement", oracle_agreement),
        (5, "Der = im + ker dimension identity", dimension_identity),
        (6, "torus-shaped stabilizers", torus_stabilizes),
        (7, "certificate scenarios", certificate_scenarios),
        (8, "im_phi_lie = sim_lie", image_equals_similarities),
        (9, "nonsingularity", nonsingularity_checks),
        (10, "W extraction and R-W1", w_extraction),
    ];
    let mut failed = BTreeSet::new();
    for (id, name, run) in criteria {
        let t = Instant::now();
        let (pass, detail) = run();
        let tag = if pass { "PASS" } else if KNOWN_FAILURES.contains(&id) { "FAIL (known)" } else { "FAIL" };
        println!("criterion {id:>2} {tag:<12} {name} [tolerance: exact] {detail} ({:.2}s)", t.elapsed().as_secs_f64());
        if !pass {
            failed.insert(id);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    println!("acceptance total {elapsed:.2}s (budget {TIME_BUDGET_SECS}s)");
    assert_eq!(failed, KNOWN_FAILURES.into_iter().collect::<BTreeSet<_>>());
    assert!(elapsed < TIME_BUDGET_SECS);
}
