//! Bernstein-Szegő polynomials, grid and Plancherel weights, and the
//! boundary-perturbed Laplacian on `{0, …, m}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::spectral::{BoundaryParams, SpectralData};

/// Chebyshev polynomial of the second kind, `U_l(cos ξ) = sin((l+1)ξ)/sin ξ`.
///
/// Negative degrees follow the reflection `U_{−l−2} = −U_l`, so `U_{−1} = 0`
/// and `U_{−2} = −1`.
pub fn chebyshev_u(l: i64, x: f64) -> f64 {
    if l < -1 {
        return -chebyshev_u(-l - 2, x);
    }
    if l == -1 {
        return 0.0;
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..l {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `p_l(ξ) = U_l(cos ξ) − b− U_{l−1}(cos ξ) + a− U_{l−2}(cos ξ)`.
pub fn p_poly(l: i64, xi: f64, params: &BoundaryParams) -> f64 {
    let x = xi.cos();
    chebyshev_u(l, x) - params.b_minus() * chebyshev_u(l - 1, x)
        + params.a_minus() * chebyshev_u(l - 2, x)
}

/// `p_0(ξ), …, p_len−1(ξ)` by the three-term recurrence.
pub fn p_sequence(len: usize, xi: f64, params: &BoundaryParams) -> Vec<f64> {
    let x2 = 2.0 * xi.cos();
    let mut out = Vec::with_capacity(len);
    let mut prev = params.b_minus() - params.a_minus() * x2; // p_{-1}
    let mut cur = 1.0 - params.a_minus();
    for _ in 0..len {
        out.push(cur);
        let next = x2 * cur - prev;
        prev = cur;
        cur = next;
    }
    out
}

/// Complex amplitude `c(ξ) = (1 − p e^{−iξ})(1 − q e^{−iξ}) / (1 − e^{−2iξ})`.
pub fn c_amp(xi: f64, p: f64, q: f64) -> Result<Complex64> {
    let turns = xi / PI;
    if (turns - turns.round()).abs() * PI <= 8.0 * f64::EPSILON * xi.abs().max(1.0) {
        return Err(Error::Singular(format!(
            "c(xi) has a pole at xi = {xi} (integer multiple of pi)"
        )));
    }
    let z = Complex64::from_polar(1.0, -xi);
    Ok((1.0 - p * z) * (1.0 - q * z) / (1.0 - z * z))
}

/// `|c(ξ)|²` in real arithmetic.
pub fn c_abs_sq(xi: f64, p: f64, q: f64) -> f64 {
    let cos = xi.cos();
    let sin = xi.sin();
    (1.0 - 2.0 * p * cos + p * p) * (1.0 - 2.0 * q * cos + q * q) / (4.0 * sin * sin)
}

/// Grid weights `Δ_l` and Plancherel weights `Δ̂_l̂` for one spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightData {
    pub m: usize,
    pub delta: Vec<f64>,
    pub delta_hat: Vec<f64>,
}

/// `Δ_l = (1 − a− δ_l)⁻¹ (1 − a+ δ_{m−l})⁻¹`.
pub fn grid_weights(m: usize, params: &BoundaryParams) -> Vec<f64> {
    let mut delta = vec![1.0; m + 1];
    delta[0] /= 1.0 - params.a_minus();
    delta[m] /= 1.0 - params.a_plus();
    delta
}

pub fn weights(spec: &SpectralData) -> WeightData {
    let params = spec.params();
    let delta_hat = spec
        .xi()
        .iter()
        .zip(spec.h())
        .map(|(&x, &h)| 1.0 / (c_abs_sq(x, params.p_minus(), params.q_minus()) * h))
        .collect();
    WeightData {
        m: spec.m(),
        delta: grid_weights(spec.m(), params),
        delta_hat,
    }
}

/// `ψ_l̂(l) = p_l(ξ̂_l̂)` for `l = 0..=m`.
pub fn eigenfunction(spec: &SpectralData, l_hat: usize) -> Result<Vec<f64>> {
    let xi = *spec.xi().get(l_hat).ok_or(Error::IndexOutOfRange {
        index: l_hat,
        size: spec.len(),
    })?;
    Ok(p_sequence(spec.m() + 1, xi, spec.params()))
}

/// Tridiagonal Laplacian with three-point boundary conditions.
pub fn apply_laplacian(f: &[f64], params: &BoundaryParams) -> Result<Vec<f64>> {
    let len = f.len();
    if len < 2 {
        return Err(Error::InvalidArgument(format!(
            "Laplacian needs at least 2 nodes, got {len}"
        )));
    }
    let m = len - 1;
    let mut out = vec![0.0; len];
    out[0] = (1.0 - params.a_minus()) * f[1] + params.b_minus() * f[0];
    for l in 1..m {
        out[l] = f[l + 1] + f[l - 1];
    }
    out[m] = (1.0 - params.a_plus()) * f[m - 1] + params.b_plus() * f[m];
    Ok(out)
}

pub fn laplacian_matrix(m: usize, params: &BoundaryParams) -> Result<SquareMatrix> {
    if m == 0 {
        return Err(Error::InvalidArgument("grid order m must be >= 1".into()));
    }
    let mut mat = SquareMatrix::zeros(m + 1);
    mat.set(0, 0, params.b_minus());
    mat.set(0, 1, 1.0 - params.a_minus());
    for l in 1..m {
        mat.set(l, l - 1, 1.0);
        mat.set(l, l + 1, 1.0);
    }
    mat.set(m, m - 1, 1.0 - params.a_plus());
    mat.set(m, m, params.b_plus());
    Ok(mat)
}

/// `Δ^{1/2} L Δ^{−1/2}`, symmetric.
pub fn symmetrized_laplacian(m: usize, params: &BoundaryParams) -> Result<SquareMatrix> {
    let l = laplacian_matrix(m, params)?;
    let sqrt_delta: Vec<f64> = grid_weights(m, params).iter().map(|d| d.sqrt()).collect();
    Ok(SquareMatrix::from_fn(m + 1, |r, c| {
        sqrt_delta[r] * l.get(r, c) / sqrt_delta[c]
    }))
}

/// Residuals of the two boundary conditions
/// `p_{−1} = −a− p_1 + b− p_0` and `p_{m+1} = −a+ p_{m−1} + b+ p_m` at `xi`.
pub fn boundary_residuals(m: usize, xi: f64, params: &BoundaryParams) -> (f64, f64) {
    let m = m as i64;
    let p = |l: i64| p_poly(l, xi, params);
    let left = p(-1) - (-params.a_minus() * p(1) + params.b_minus() * p(0));
    let right = p(m + 1) - (-params.a_plus() * p(m - 1) + params.b_plus() * p(m));
    (left.abs(), right.abs())
}
