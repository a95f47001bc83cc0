//! Self-consistency checks on a constructed transform, shared by the CLI
//! `verify` subcommand and the Python bindings.

use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bszego::{apply_laplacian, boundary_residuals, eigenfunction};
use crate::error::{Error, Result};
use crate::matrix::{max_abs, nan_max};
use crate::multivariate::{
    apply_laplacian_mv, cauchy_binet_check, enumerate_partitions, plancherel_unfactorized,
    KernelMV, DEFAULT_SIZE_CAP,
};
use crate::spectral::{
    node_bracket, phase_relation_residual, solve_spectrum, BoundaryParams, DEFAULT_TOL,
};
use crate::transform::{Kernel1D, UnitaryKernel};

pub const ORTHOGONALITY_TOL: f64 = 1e-10;
pub const MV_ORTHOGONALITY_TOL: f64 = 1e-9;
pub const EIGEN_TOL: f64 = 1e-9;
pub const IDENTITY_TOL: f64 = 1e-9;
pub const ROUND_TRIP_TOL: f64 = 1e-10;
pub const MV_ROUND_TRIP_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub m: usize,
    pub n: usize,
    pub params: BoundaryParams,
    /// Root-finder tolerance.
    pub tol: f64,
    /// Seeds the random test vectors and Cauchy-Binet pairs.
    pub seed: u64,
    pub cap: usize,
    /// Shifts node 0 by this amount before assembling the kernel, to exercise
    /// the failure path.
    pub corrupt_xi: Option<f64>,
}

impl VerifyConfig {
    pub fn new(m: usize, n: usize, params: BoundaryParams) -> Self {
        Self {
            m,
            n,
            params,
            tol: DEFAULT_TOL,
            seed: 0,
            cap: DEFAULT_SIZE_CAP,
            corrupt_xi: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: &str, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            tolerance,
        }
    }

    /// NaN never passes.
    pub fn passed(&self) -> bool {
        self.value <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} {:.3e} (tol {:.0e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.value,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.m == 0 || cfg.n == 0 {
        return Err(Error::InvalidArgument("m and n must be >= 1".into()));
    }
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut checks = Vec::new();

    let base = corrupted_kernel(cfg.m, cfg)?;
    univariate_checks(&base, &mut rng, &mut checks)?;

    if cfg.n > 1 {
        let partitions = enumerate_partitions(cfg.m, cfg.n, cfg.cap)?;
        let mv_base = corrupted_kernel(cfg.m + cfg.n - 1, cfg)?;
        let mv = KernelMV::from_base(partitions, mv_base)?;
        multivariate_checks(&mv, &mut rng, &mut checks)?;
    }
    Ok(VerifyReport { checks })
}

fn corrupted_kernel(order: usize, cfg: &VerifyConfig) -> Result<Kernel1D> {
    let mut spec = solve_spectrum(order, &cfg.params, cfg.tol)?;
    if let Some(delta) = cfg.corrupt_xi {
        spec = spec.perturbed(0, delta)?;
    }
    Ok(Kernel1D::from_spectrum(spec))
}

fn random_vector(rng: &mut StdRng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

fn round_trip_error(kernel: &impl UnitaryKernel, f: &[f64]) -> Result<f64> {
    let back = kernel.inverse(&kernel.forward(f)?)?;
    let diff: Vec<f64> = back.iter().zip(f).map(|(a, b)| a - b).collect();
    Ok(max_abs(&diff) / max_abs(f).max(f64::MIN_POSITIVE))
}

/// `max |Lψ − Eψ| / max |ψ|`
fn relative_eigen_residual(lpsi: &[f64], psi: &[f64], e: f64) -> f64 {
    let diff: Vec<f64> = lpsi.iter().zip(psi).map(|(a, b)| a - e * b).collect();
    max_abs(&diff) / max_abs(psi).max(f64::MIN_POSITIVE)
}

fn univariate_checks(k: &Kernel1D, rng: &mut StdRng, out: &mut Vec<Check>) -> Result<()> {
    let mat = k.matrix();
    out.push(Check::new(
        "orthogonality",
        nan_max(mat.row_gram_residual(), mat.column_gram_residual()),
        ORTHOGONALITY_TOL,
    ));

    let spec = k.spectrum();
    let params = k.params();
    let mut eigen: f64 = 0.0;
    let mut phase: f64 = 0.0;
    let mut boundary: f64 = 0.0;
    let mut bracket: f64 = 0.0;
    for (l_hat, &xi) in spec.xi().iter().enumerate() {
        let psi = eigenfunction(spec, l_hat)?;
        let lpsi = apply_laplacian(&psi, params)?;
        eigen = nan_max(eigen, relative_eigen_residual(&lpsi, &psi, 2.0 * xi.cos()));
        phase = nan_max(phase, phase_relation_residual(spec.m(), params, xi));
        let (left, right) = boundary_residuals(spec.m(), xi, params);
        boundary = nan_max(boundary, nan_max(left, right) / max_abs(&psi).max(1.0));
        let (lo, hi) = node_bracket(spec.m(), params, l_hat);
        // Signed distance outside the bracket; zero when inside.
        bracket = nan_max(bracket, (lo - xi).max(xi - hi).max(0.0));
    }
    out.push(Check::new("eigen-residual", eigen, EIGEN_TOL));
    out.push(Check::new("phase-relation", phase, IDENTITY_TOL));
    out.push(Check::new("boundary-conditions", boundary, IDENTITY_TOL));
    out.push(Check::new("node-brackets", bracket, 1e-12));

    let f = random_vector(rng, k.dim());
    out.push(Check::new(
        "round-trip",
        round_trip_error(k, &f)?,
        ROUND_TRIP_TOL,
    ));
    Ok(())
}

fn multivariate_checks(mv: &KernelMV, rng: &mut StdRng, out: &mut Vec<Check>) -> Result<()> {
    let mat = mv.matrix();
    out.push(Check::new(
        "mv-orthogonality",
        nan_max(mat.row_gram_residual(), mat.column_gram_residual()),
        MV_ORTHOGONALITY_TOL,
    ));

    let parts = mv.partitions();
    let size = parts.len();
    let mut plancherel: f64 = 0.0;
    for (r, lh) in parts.iter().enumerate() {
        let factorized = mv.weights().delta_hat[r];
        let direct = plancherel_unfactorized(lh, mv.base())?;
        plancherel = nan_max(
            plancherel,
            (factorized - direct).abs() / factorized.abs().max(1.0),
        );
    }
    out.push(Check::new(
        "mv-plancherel-factorization",
        plancherel,
        IDENTITY_TOL,
    ));

    let mut slater: f64 = 0.0;
    for r in 0..size {
        for c in 0..size {
            let schur = mv.entry_via_schur(r, c)?;
            slater = nan_max(slater, (schur - mv.get(r, c)).abs());
        }
    }
    out.push(Check::new("mv-slater-vs-schur", slater, IDENTITY_TOL));

    let energies = mv.eigenvalues()?;
    let mut eigen: f64 = 0.0;
    for (r, &e) in energies.iter().enumerate() {
        let psi = mv.eigenfunction(r)?;
        let lpsi = apply_laplacian_mv(&psi, parts, mv.params())?;
        eigen = nan_max(eigen, relative_eigen_residual(&lpsi, &psi, e));
    }
    out.push(Check::new("mv-eigen-residual", eigen, EIGEN_TOL));

    let pairs: Vec<(usize, usize)> = (0..20)
        .map(|i| {
            let a = rng.gen_range(0..size);
            // Keep a few diagonal pairs so both branches of δ are exercised.
            let b = if i % 4 == 0 {
                a
            } else {
                rng.gen_range(0..size)
            };
            (a, b)
        })
        .collect();
    out.push(Check::new(
        "mv-cauchy-binet",
        cauchy_binet_check(mv, &pairs)?,
        IDENTITY_TOL,
    ));

    let f = random_vector(rng, size);
    out.push(Check::new(
        "mv-round-trip",
        round_trip_error(mv, &f)?,
        MV_ROUND_TRIP_TOL,
    ));
    Ok(())
}
