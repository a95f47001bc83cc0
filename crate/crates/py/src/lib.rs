//! Python bindings: `import pybsdft`.
//!
//! Vectors and matrices cross the boundary as plain lists (`list[float]`,
//! `list[list[float]]`, `list[complex]`).

use bsdft::multivariate::{schur_poly as core_schur_poly, DEFAULT_SIZE_CAP};
use bsdft::{
    build_kernel, build_kernel_mv, classic_kernel as core_classic_kernel,
    classic_nodes as core_classic_nodes, enumerate_partitions as core_enumerate, run_verification,
    solve_spectrum as core_solve, ClassicKind, Error, Partition, SquareMatrix, UnitaryKernel,
    VerifyConfig, DEFAULT_TOL,
};
use num_complex::Complex64;
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `(name, value, tolerance, passed)`
type CheckRow = (String, f64, f64, bool);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::SolverFailure { .. } | Error::Singular(_) => PyRuntimeError::new_err(e.to_string()),
        Error::IndexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn rows(mat: &SquareMatrix) -> Vec<Vec<f64>> {
    mat.rows().map(<[f64]>::to_vec).collect()
}

/// Boundary parameters `(p-, q-, p+, q+)` with `-1 < p <= q < 1` on each side.
#[pyclass(
    name = "BoundaryParams",
    module = "pybsdft",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyBoundaryParams(bsdft::BoundaryParams);

#[pymethods]
impl PyBoundaryParams {
    #[new]
    fn new(p_minus: f64, q_minus: f64, p_plus: f64, q_plus: f64) -> PyResult<Self> {
        bsdft::BoundaryParams::new(p_minus, q_minus, p_plus, q_plus)
            .map(Self)
            .map_err(to_py)
    }

    /// All parameters zero (Dirichlet at both ends).
    #[staticmethod]
    fn dirichlet() -> Self {
        Self(bsdft::BoundaryParams::dirichlet())
    }

    /// Uniform draw from the parameter domain, reproducible from `seed`.
    #[staticmethod]
    fn sample(seed: u64) -> Self {
        Self(bsdft::BoundaryParams::sample(
            &mut ChaCha8Rng::seed_from_u64(seed),
        ))
    }

    /// Parses `"p-,q-,p+,q+"`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(to_py)
    }

    #[getter]
    fn p_minus(&self) -> f64 {
        self.0.p_minus()
    }
    #[getter]
    fn q_minus(&self) -> f64 {
        self.0.q_minus()
    }
    #[getter]
    fn p_plus(&self) -> f64 {
        self.0.p_plus()
    }
    #[getter]
    fn q_plus(&self) -> f64 {
        self.0.q_plus()
    }

    fn as_tuple(&self) -> (f64, f64, f64, f64) {
        let [a, b, c, d] = self.0.as_array();
        (a, b, c, d)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        let [a, b, c, d] = self.0.as_array();
        format!("BoundaryParams({a:?}, {b:?}, {c:?}, {d:?})")
    }
}

/// Solved spectral points `ξ̂_0 < … < ξ̂_m` with `H(ξ̂)` and root residuals.
#[pyclass(name = "Spectrum", module = "pybsdft", frozen)]
struct PySpectrum(bsdft::SpectralData);

#[pymethods]
impl PySpectrum {
    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }
    #[getter]
    fn xi(&self) -> Vec<f64> {
        self.0.xi().to_vec()
    }
    #[getter]
    fn h(&self) -> Vec<f64> {
        self.0.h().to_vec()
    }
    #[getter]
    fn residual(&self) -> Vec<f64> {
        self.0.residual().to_vec()
    }
    fn __len__(&self) -> usize {
        self.0.len()
    }
}

#[pyfunction]
#[pyo3(signature = (m, params, tol = DEFAULT_TOL))]
fn solve_spectrum(m: usize, params: &PyBoundaryParams, tol: f64) -> PyResult<PySpectrum> {
    core_solve(m, &params.0, tol).map(PySpectrum).map_err(to_py)
}

/// Univariate unitary kernel on `{0, …, m}`; rows indexed by `l̂`.
#[pyclass(name = "Kernel1D", module = "pybsdft", frozen)]
struct PyKernel1D(bsdft::Kernel1D);

#[pymethods]
impl PyKernel1D {
    #[new]
    #[pyo3(signature = (m, params, tol = DEFAULT_TOL))]
    fn new(m: usize, params: &PyBoundaryParams, tol: f64) -> PyResult<Self> {
        build_kernel(m, &params.0, tol).map(Self).map_err(to_py)
    }
    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }
    #[getter]
    fn xi(&self) -> Vec<f64> {
        self.0.spectrum().xi().to_vec()
    }
    #[getter]
    fn delta(&self) -> Vec<f64> {
        self.0.weights().delta.clone()
    }
    #[getter]
    fn delta_hat(&self) -> Vec<f64> {
        self.0.weights().delta_hat.clone()
    }
    fn matrix(&self) -> Vec<Vec<f64>> {
        rows(self.0.matrix())
    }
    /// `2 cos ξ̂` for every row.
    fn eigenvalues(&self) -> Vec<f64> {
        self.0.eigenvalues()
    }
    fn forward(&self, f: Vec<f64>) -> PyResult<Vec<f64>> {
        self.0.forward(&f).map_err(to_py)
    }
    fn inverse(&self, f_hat: Vec<f64>) -> PyResult<Vec<f64>> {
        self.0.inverse(&f_hat).map_err(to_py)
    }
    fn forward_complex(&self, f: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        self.0.forward_complex(&f).map_err(to_py)
    }
    fn inverse_complex(&self, f_hat: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        self.0.inverse_complex(&f_hat).map_err(to_py)
    }
}

/// Multivariate kernel on partitions with at most `n` parts bounded by `m`.
#[pyclass(name = "KernelMV", module = "pybsdft", frozen)]
struct PyKernelMV(bsdft::KernelMV);

#[pymethods]
impl PyKernelMV {
    #[new]
    #[pyo3(signature = (m, n, params, tol = DEFAULT_TOL, cap = DEFAULT_SIZE_CAP))]
    fn new(m: usize, n: usize, params: &PyBoundaryParams, tol: f64, cap: usize) -> PyResult<Self> {
        build_kernel_mv(m, n, &params.0, tol, cap)
            .map(Self)
            .map_err(to_py)
    }
    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }
    /// Partition labels (`"2-1"`) in rank order.
    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.partitions().labels()
    }
    fn matrix(&self) -> Vec<Vec<f64>> {
        rows(self.0.matrix())
    }
    /// `E(ξ_λ̂) = Σ_j 2 cos ξ_j` for every row.
    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        self.0.eigenvalues().map_err(to_py)
    }
    fn nodes(&self, row: usize) -> PyResult<Vec<f64>> {
        self.0.nodes(row).map_err(to_py)
    }
    fn forward(&self, f: Vec<f64>) -> PyResult<Vec<f64>> {
        self.0.forward(&f).map_err(to_py)
    }
    fn inverse(&self, f_hat: Vec<f64>) -> PyResult<Vec<f64>> {
        self.0.inverse(&f_hat).map_err(to_py)
    }
    fn forward_complex(&self, f: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        self.0.forward_complex(&f).map_err(to_py)
    }
    fn inverse_complex(&self, f_hat: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        self.0.inverse_complex(&f_hat).map_err(to_py)
    }
}

fn parse_kind(kind: &str) -> PyResult<ClassicKind> {
    kind.parse().map_err(to_py)
}

/// Names of the sixteen classic transforms.
#[pyfunction]
fn classic_kinds() -> Vec<&'static str> {
    ClassicKind::ALL.iter().map(|k| k.name()).collect()
}

#[pyfunction]
fn classic_kernel(kind: &str, m: usize) -> PyResult<Vec<Vec<f64>>> {
    core_classic_kernel(parse_kind(kind)?, m)
        .map(|k| rows(&k))
        .map_err(to_py)
}

#[pyfunction]
fn classic_nodes(kind: &str, m: usize) -> PyResult<Vec<f64>> {
    let kind = parse_kind(kind)?;
    (0..=m)
        .map(|l| core_classic_nodes(kind, m, l))
        .collect::<bsdft::Result<_>>()
        .map_err(to_py)
}

/// Partitions of `Λ^(m,n)` in rank order, each as a tuple of `n` parts.
#[pyfunction]
#[pyo3(signature = (m, n, cap = DEFAULT_SIZE_CAP))]
fn enumerate_partitions(m: usize, n: usize, cap: usize) -> PyResult<Vec<Vec<usize>>> {
    core_enumerate(m, n, cap)
        .map(|set| set.iter().map(|p| p.parts().to_vec()).collect())
        .map_err(to_py)
}

/// Generalized Schur polynomial `P_λ(ξ)`; `len(xi)` must equal `len(parts)`.
#[pyfunction]
fn schur_poly(parts: Vec<usize>, xi: Vec<f64>, params: &PyBoundaryParams) -> PyResult<f64> {
    let bound = parts.iter().copied().max().unwrap_or(0);
    let lambda = Partition::new(parts, bound).map_err(to_py)?;
    core_schur_poly(&lambda, &xi, &params.0).map_err(to_py)
}

/// Runs the self-consistency checks; returns `(passed, [(name, value, tol, ok), …])`.
#[pyfunction]
#[pyo3(signature = (m, params, n = 1, seed = 0, tol = DEFAULT_TOL))]
fn verify(
    m: usize,
    params: &PyBoundaryParams,
    n: usize,
    seed: u64,
    tol: f64,
) -> PyResult<(bool, Vec<CheckRow>)> {
    let mut cfg = VerifyConfig::new(m, n, params.0);
    cfg.seed = seed;
    cfg.tol = tol;
    let report = run_verification(&cfg).map_err(to_py)?;
    let checks = report
        .checks
        .iter()
        .map(|c| (c.name.clone(), c.value, c.tolerance, c.passed()))
        .collect();
    Ok((report.passed(), checks))
}

#[pymodule]
fn pybsdft(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBoundaryParams>()?;
    m.add_class::<PySpectrum>()?;
    m.add_class::<PyKernel1D>()?;
    m.add_class::<PyKernelMV>()?;
    m.add_function(wrap_pyfunction!(solve_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(classic_kinds, m)?)?;
    m.add_function(wrap_pyfunction!(classic_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(classic_nodes, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(schur_poly, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
