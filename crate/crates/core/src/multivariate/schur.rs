//! Generalized Schur polynomials built from the Bernstein-Szegő family.
//!
//! `P_λ(ξ) = det[p_{n−j+λ_j}(ξ_k)] / V(ξ)` with the trigonometric Vandermonde
//! `V(ξ) = ∏_{j<k} 2(cos ξ_j − cos ξ_k)`. The signed-permutation expansion
//! `Σ_{(σ,ε)} C(εξ_σ) exp(i Σ_j ε_j ξ_{σ_j} λ_j)` is kept as an independent
//! oracle for small `n`.

use num_complex::Complex64;

use crate::bszego::p_sequence;
use crate::error::{Error, Result};
use crate::matrix::determinant;
use crate::spectral::BoundaryParams;

use super::partition::Partition;

/// `|V|` below this is treated as coincident nodes.
pub const VANDERMONDE_FLOOR: f64 = 1e-250;

/// Largest `n` the `2ⁿ·n!` expansion oracle accepts.
pub const EXPANSION_MAX_N: usize = 4;

pub fn vandermonde(xi: &[f64]) -> f64 {
    let cos: Vec<f64> = xi.iter().map(|x| x.cos()).collect();
    let mut v = 1.0;
    for j in 0..cos.len() {
        for k in j + 1..cos.len() {
            v *= 2.0 * (cos[j] - cos[k]);
        }
    }
    v
}

/// `det[p_{n−j+λ_j}(ξ_k)]_{j,k}`.
pub fn alternant(lambda: &Partition, xi: &[f64], params: &BoundaryParams) -> Result<f64> {
    let n = lambda.len();
    if xi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: xi.len(),
        });
    }
    let degrees = lambda.staircase_shift();
    let top = degrees[0] + 1;
    let columns: Vec<Vec<f64>> = xi.iter().map(|&x| p_sequence(top, x, params)).collect();
    let mut a = Vec::with_capacity(n * n);
    for &d in &degrees {
        for col in &columns {
            a.push(col[d]);
        }
    }
    Ok(determinant(n, &a))
}

pub fn schur_poly(lambda: &Partition, xi: &[f64], params: &BoundaryParams) -> Result<f64> {
    let num = alternant(lambda, xi, params)?;
    let v = vandermonde(xi);
    if v.is_nan() || v.abs() <= VANDERMONDE_FLOOR {
        return Err(Error::Singular(format!(
            "Vandermonde |V| = {:e} for xi = {xi:?}; nodes must be distinct",
            v.abs()
        )));
    }
    Ok(num / v)
}

/// `C(ξ) = ∏_j c(ξ_j) · ∏_{j<k} (1 − e^{−i(ξ_j+ξ_k)})⁻¹ (1 − e^{−i(ξ_j−ξ_k)})⁻¹`
/// with `c` built from the minus-side parameters.
pub fn c_coefficient(xi: &[f64], params: &BoundaryParams) -> Result<Complex64> {
    let (p, q) = (params.p_minus(), params.q_minus());
    let mut num = Complex64::new(1.0, 0.0);
    let mut den = Complex64::new(1.0, 0.0);
    for &x in xi {
        let z = Complex64::from_polar(1.0, -x);
        num *= (1.0 - p * z) * (1.0 - q * z);
        den *= 1.0 - z * z;
    }
    for j in 0..xi.len() {
        for k in j + 1..xi.len() {
            den *= (1.0 - Complex64::from_polar(1.0, -(xi[j] + xi[k])))
                * (1.0 - Complex64::from_polar(1.0, -(xi[j] - xi[k])));
        }
    }
    if den.norm() <= 1e-13 {
        return Err(Error::Singular(format!(
            "C(xi) denominator vanishes at xi = {xi:?}"
        )));
    }
    Ok(num / den)
}

/// `P_λ` by summing over the hyperoctahedral group. Returns the full complex sum;
/// its imaginary part vanishes up to rounding.
pub fn schur_poly_expansion(
    lambda: &Partition,
    xi: &[f64],
    params: &BoundaryParams,
) -> Result<Complex64> {
    let n = lambda.len();
    if xi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: xi.len(),
        });
    }
    if n > EXPANSION_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "expansion oracle limited to n <= {EXPANSION_MAX_N}, got {n}"
        )));
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut signed = vec![0.0; n];
    for perm in permutations(n) {
        for signs in 0..(1u32 << n) {
            for (j, &s) in perm.iter().enumerate() {
                let flip = signs >> j & 1 == 1;
                signed[j] = if flip { -xi[s] } else { xi[s] };
            }
            let phase: f64 = signed
                .iter()
                .zip(lambda.parts())
                .map(|(x, &l)| x * l as f64)
                .sum();
            total += c_coefficient(&signed, params)? * Complex64::from_polar(1.0, phase);
        }
    }
    Ok(total)
}

/// Real part of [`schur_poly_expansion`].
pub fn schur_poly_expansion_oracle(
    lambda: &Partition,
    xi: &[f64],
    params: &BoundaryParams,
) -> Result<f64> {
    Ok(schur_poly_expansion(lambda, xi, params)?.re)
}

/// All permutations of `0..n` (Heap's algorithm).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = vec![items.clone()];
    let mut c = vec![0; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            out.push(items.clone());
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}
