//! Python bindings for the `fdalg` toolkit.

use pyo3::exceptions::{PyNotImplementedError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fdalg::algebra::structure::examples;
use fdalg::algebra::{derivation_algebra, jacobson_radical_with, ker_phi_lie, StructureAlgebra};
use fdalg::certify::{certify_algebra, certify_presentation, AnalysisConfig};
use fdalg::cli::{parse_input, structure_constants_document, Input};
use fdalg::exactmath::Field;
use fdalg::forms::{isotropy, nonsingularity, quadratic_from_poly, sim_lie, stab_lie, IsotropyVerdict, NonsingularityConfig};
use fdalg::oracle::{enumerate_automorphisms, induced_jj2_matrices};
use fdalg::poly::{parse_poly, MultiPoly};
use fdalg::presentation::{minimal_degree_subspace, normal_form};
use fdalg::Error;

fn err(e: Error) -> PyErr {
    if e.is_unsupported() {
        PyNotImplementedError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn field(spec: &str) -> PyResult<Field> {
    Field::parse(spec).map_err(err)
}

fn poly(text: &str, n_vars: usize, spec: &str) -> PyResult<MultiPoly> {
    parse_poly(text, n_vars, field(spec)?).map_err(err)
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn config(height_bound: Option<u64>, primes: Option<Vec<u64>>, max_enum: Option<u128>) -> AnalysisConfig {
    let mut cfg = AnalysisConfig::default();
    if let Some(h) = height_bound {
        cfg.height_bound = h;
    }
    if let Some(p) = primes {
        cfg.primes = p;
    }
    if let Some(m) = max_enum {
        cfg.max_enum = m;
    }
    cfg
}

/// A finite-dimensional unital algebra given by structure constants.
#[pyclass(name = "Algebra", module = "fdalg", skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    inner: StructureAlgebra,
}

#[pymethods]
impl PyAlgebra {
    /// Loads a structure-constant or presentation JSON document.
    #[staticmethod]
    #[pyo3(signature = (text, field=None))]
    fn from_json(text: &str, field: Option<&str>) -> PyResult<Self> {
        let f = field.map(self::field).transpose()?;
        let input = parse_input(text, f).map_err(err)?;
        Ok(PyAlgebra { inner: input.algebra() })
    }

    /// `k[x]/(x^n)`.
    #[staticmethod]
    fn truncated_polynomial(field: &str, n: usize) -> PyResult<Self> {
        Ok(PyAlgebra { inner: examples::truncated_polynomial(self::field(field)?, n) })
    }

    /// The full matrix algebra `M_n(k)`.
    #[staticmethod]
    fn matrix_algebra(field: &str, n: usize) -> PyResult<Self> {
        Ok(PyAlgebra { inner: examples::matrix_algebra(self::field(field)?, n) })
    }

    fn direct_product(&self, other: &PyAlgebra) -> Self {
        PyAlgebra { inner: self.inner.direct_product(&other.inner) }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn to_json(&self) -> String {
        structure_constants_document(&self.inner).to_string()
    }

    /// Dimensions of `J`, `J^2`, `J/J^2` and the Lowey length.
    #[pyo3(signature = (max_enum=None))]
    fn radical<'py>(&self, py: Python<'py>, max_enum: Option<u128>) -> PyResult<Bound<'py, PyDict>> {
        let rad = jacobson_radical_with(&self.inner, config(None, None, max_enum).max_enum).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("dim_j", rad.dim())?;
        d.set_item("dim_j2", rad.j2().dim())?;
        d.set_item("dim_jj2", rad.jj2_dim())?;
        d.set_item("lowey_length", rad.lowey_length)?;
        Ok(d)
    }

    fn derivations<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let rad = jacobson_radical_with(&self.inner, AnalysisConfig::default().max_enum).map_err(err)?;
        let der = derivation_algebra(&self.inner);
        let d = PyDict::new(py);
        d.set_item("dim_der", der.dim())?;
        d.set_item("dim_ker_phi_lie", ker_phi_lie(&der, &rad).dim())?;
        Ok(d)
    }

    /// The certificate as a dict.
    #[pyo3(signature = (height_bound=None, primes=None, max_enum=None))]
    fn certify(&self, py: Python<'_>, height_bound: Option<u64>, primes: Option<Vec<u64>>, max_enum: Option<u128>) -> PyResult<Py<PyAny>> {
        let cert = certify_algebra(&self.inner, &config(height_bound, primes, max_enum));
        json_to_py(py, &cert.to_json())
    }

    /// Brute-force automorphism count over `GF(p)` with the induced action on `J/J^2`.
    #[pyo3(signature = (limit=None))]
    fn automorphisms<'py>(&self, py: Python<'py>, limit: Option<u128>) -> PyResult<Bound<'py, PyDict>> {
        let g = enumerate_automorphisms(&self.inner, limit.unwrap_or(fdalg::oracle::DEFAULT_LIMIT)).map_err(err)?;
        let b = induced_jj2_matrices(&g, &self.inner).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("order", g.order)?;
        d.set_item("jj2_image_size", b.image_size)?;
        d.set_item("jj2_kernel_count", b.kernel_count)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={}, field={})", self.inner.dim(), self.inner.field())
    }
}

/// `k[X_1..X_n] / (<X>^l + <generators>)`.
#[pyclass(name = "Presentation", module = "fdalg", skip_from_py_object)]
#[derive(Clone)]
struct PyPresentation {
    inner: fdalg::presentation::Presentation,
}

#[pymethods]
impl PyPresentation {
    #[new]
    fn new(field: &str, n_vars: usize, trunc_degree: usize, generators: Vec<String>) -> PyResult<Self> {
        let f = self::field(field)?;
        let gens = generators.iter().map(|g| parse_poly(g, n_vars, f)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let inner = fdalg::presentation::Presentation::from_ideal(f, n_vars, trunc_degree, gens).map_err(err)?;
        Ok(PyPresentation { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (text, field=None))]
    fn from_json(text: &str, field: Option<&str>) -> PyResult<Self> {
        let f = field.map(self::field).transpose()?;
        match parse_input(text, f).map_err(err)? {
            Input::Presentation(p) => Ok(PyPresentation { inner: p }),
            Input::Algebra(_) => Err(PyValueError::new_err("document is not a presentation")),
        }
    }

    #[getter]
    fn n_vars(&self) -> usize {
        self.inner.n_vars()
    }

    #[getter]
    fn lowey(&self) -> usize {
        self.inner.lowey()
    }

    #[getter]
    fn algebra_dim(&self) -> usize {
        self.inner.algebra_dim()
    }

    /// Minimal generators in increasing degree.
    fn normal_form(&self) -> Vec<String> {
        normal_form(&self.inner).generators.iter().map(ToString::to_string).collect()
    }

    fn is_monomial(&self) -> bool {
        normal_form(&self.inner).is_monomial
    }

    fn property_star(&self) -> Option<usize> {
        normal_form(&self.inner).property_star_r
    }

    /// `(degree, basis)` of the lowest-degree part of the ideal.
    fn minimal_degree_subspace(&self) -> (usize, Vec<String>) {
        let w = minimal_degree_subspace(&self.inner);
        (w.degree, w.elements().iter().map(ToString::to_string).collect())
    }

    fn algebra(&self) -> PyAlgebra {
        PyAlgebra { inner: self.inner.quotient_algebra() }
    }

    #[pyo3(signature = (height_bound=None, primes=None, max_enum=None))]
    fn certify(&self, py: Python<'_>, height_bound: Option<u64>, primes: Option<Vec<u64>>, max_enum: Option<u128>) -> PyResult<Py<PyAny>> {
        let cert = certify_presentation(&self.inner, &config(height_bound, primes, max_enum));
        json_to_py(py, &cert.to_json())
    }

    fn __repr__(&self) -> String {
        format!("Presentation(n_vars={}, lowey={}, generators={:?})", self.inner.n_vars(), self.inner.lowey(), self.normal_form())
    }
}

/// Dimension of the Lie stabilizer of a homogeneous form.
#[pyfunction]
#[pyo3(signature = (f, n_vars, field="Q"))]
fn stab_lie_dim(f: &str, n_vars: usize, field: &str) -> PyResult<usize> {
    Ok(stab_lie(&poly(f, n_vars, field)?).map_err(err)?.dim())
}

/// Dimension of the Lie algebra of similitudes of a homogeneous form.
#[pyfunction]
#[pyo3(signature = (f, n_vars, field="Q"))]
fn sim_lie_dim(f: &str, n_vars: usize, field: &str) -> PyResult<usize> {
    Ok(sim_lie(&poly(f, n_vars, field)?).map_err(err)?.dim())
}

/// Nonsingularity verdict label of a homogeneous form.
#[pyfunction]
#[pyo3(signature = (f, n_vars, field="Q"))]
fn nonsingularity_verdict(f: &str, n_vars: usize, field: &str) -> PyResult<String> {
    let ev = nonsingularity(&poly(f, n_vars, field)?, &NonsingularityConfig::default()).map_err(err)?;
    Ok(ev.verdict.label().to_string())
}

/// Isotropy verdict label and witness (if any) of a quadratic form.
#[pyfunction]
#[pyo3(signature = (f, n_vars, field="Q", height_bound=50))]
fn isotropy_verdict(f: &str, n_vars: usize, field: &str, height_bound: u64) -> PyResult<(String, Option<Vec<String>>)> {
    let q = quadratic_from_poly(&poly(f, n_vars, field)?).map_err(err)?;
    let ev = isotropy(&q, height_bound, AnalysisConfig::default().max_enum);
    let witness = match &ev.verdict {
        IsotropyVerdict::IsotropicWitness(v) => Some(v.iter().map(ToString::to_string).collect()),
        _ => None,
    };
    Ok((ev.verdict.label().to_string(), witness))
}

/// Canonical form of a polynomial string.
#[pyfunction]
#[pyo3(signature = (f, n_vars, field="Q"))]
fn normalize_poly(f: &str, n_vars: usize, field: &str) -> PyResult<String> {
    Ok(poly(f, n_vars, field)?.to_string())
}

#[pymodule]
#[pyo3(name = "fdalg")]
fn fdalg_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyPresentation>()?;
    m.add_function(wrap_pyfunction!(stab_lie_dim, m)?)?;
    m.add_function(wrap_pyfunction!(sim_lie_dim, m)?)?;
    m.add_function(wrap_pyfunction!(nonsingularity_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(isotropy_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_poly, m)?)?;
    Ok(())
}
