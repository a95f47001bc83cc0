//! Boundary parameters, the phase function `v_q` and the transcendental
//! spectral equation
//!
//! ```text
//! 2mξ + v_{p−}(ξ) + v_{q−}(ξ) + v_{p+}(ξ) + v_{q+}(ξ) = 2π(l̂ + 1),   l̂ = 0..m
//! ```
//!
//! whose roots `0 < ξ̂_0 < … < ξ̂_m < π` are the spectral points of the
//! boundary-perturbed Laplacian.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Default residual tolerance of the spectral solver.
pub const DEFAULT_TOL: f64 = 1e-13;

/// Iteration cap of the safeguarded Newton solver.
pub const MAX_ITERATIONS: usize = 200;

/// The four boundary parameters `p−, q−, p+, q+` with `−1 < p± ≤ q± < 1`.
///
/// The Laplacian itself is written in terms of `a± = p±·q±` and
/// `b± = p± + q±`, available through [`a_minus`](Self::a_minus) and friends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryParams {
    p_minus: f64,
    q_minus: f64,
    p_plus: f64,
    q_plus: f64,
}

impl BoundaryParams {
    pub fn new(p_minus: f64, q_minus: f64, p_plus: f64, q_plus: f64) -> Result<Self> {
        for (name, value) in [
            ("p_minus", p_minus),
            ("q_minus", q_minus),
            ("p_plus", p_plus),
            ("q_plus", q_plus),
        ] {
            if !value.is_finite() || value <= -1.0 || value >= 1.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} = {value} violates -1 < p <= q < 1"
                )));
            }
        }
        if p_minus > q_minus {
            return Err(Error::InvalidParams(format!(
                "p_minus = {p_minus} exceeds q_minus = {q_minus}; need -1 < p- <= q- < 1"
            )));
        }
        if p_plus > q_plus {
            return Err(Error::InvalidParams(format!(
                "p_plus = {p_plus} exceeds q_plus = {q_plus}; need -1 < p+ <= q+ < 1"
            )));
        }
        let params = Self {
            p_minus,
            q_minus,
            p_plus,
            q_plus,
        };
        debug_assert!(params.a_minus() < 1.0 && params.a_plus() < 1.0);
        Ok(params)
    }

    /// All four parameters zero: the DST-1 configuration.
    pub fn dirichlet() -> Self {
        Self {
            p_minus: 0.0,
            q_minus: 0.0,
            p_plus: 0.0,
            q_plus: 0.0,
        }
    }

    /// Uniform draw from the open parameter domain, each pair sorted.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut draw = || loop {
            let x: f64 = rng.gen_range(-1.0..1.0);
            if x > -1.0 {
                return x;
            }
        };
        let (a, b, c, d) = (draw(), draw(), draw(), draw());
        Self {
            p_minus: a.min(b),
            q_minus: a.max(b),
            p_plus: c.min(d),
            q_plus: c.max(d),
        }
    }

    pub fn p_minus(&self) -> f64 {
        self.p_minus
    }
    pub fn q_minus(&self) -> f64 {
        self.q_minus
    }
    pub fn p_plus(&self) -> f64 {
        self.p_plus
    }
    pub fn q_plus(&self) -> f64 {
        self.q_plus
    }

    pub fn a_minus(&self) -> f64 {
        self.p_minus * self.q_minus
    }
    pub fn b_minus(&self) -> f64 {
        self.p_minus + self.q_minus
    }
    pub fn a_plus(&self) -> f64 {
        self.p_plus * self.q_plus
    }
    pub fn b_plus(&self) -> f64 {
        self.p_plus + self.q_plus
    }

    /// `[p−, q−, p+, q+]`
    pub fn as_array(&self) -> [f64; 4] {
        [self.p_minus, self.q_minus, self.p_plus, self.q_plus]
    }
}

impl fmt::Display for BoundaryParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.p_minus, self.q_minus, self.p_plus, self.q_plus
        )
    }
}

/// Parses `p−,q−,p+,q+`.
impl FromStr for BoundaryParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::InvalidParams(format!("cannot parse {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match values[..] {
            [pm, qm, pp, qp] => Self::new(pm, qm, pp, qp),
            _ => Err(Error::InvalidParams(format!(
                "expected 4 comma-separated values p-,q-,p+,q+, got {}",
                values.len()
            ))),
        }
    }
}

fn check_q(q: f64) -> Result<()> {
    if q.is_finite() && q.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("|q| must be < 1, got {q}")))
    }
}

/// Phase function `v_q(ξ) = ∫₀^ξ (1−q²)/(1−2q cos x+q²) dx` on `[0, π]`.
pub fn v(q: f64, xi: f64) -> Result<f64> {
    check_q(q)?;
    if !(0.0..=PI).contains(&xi) {
        return Err(Error::InvalidArgument(format!(
            "xi must lie in [0, pi], got {xi}"
        )));
    }
    Ok(phase(q, xi))
}

/// `v_q'(ξ) = (1−q²)/(1−2q cos ξ+q²)`.
pub fn v_prime(q: f64, xi: f64) -> Result<f64> {
    check_q(q)?;
    Ok(phase_derivative(q, xi))
}

// Unchecked versions for the solver's inner loop. The cotangent form above
// π/2 keeps full relative accuracy near π where tan(ξ/2) blows up.
pub(crate) fn phase(q: f64, xi: f64) -> f64 {
    if xi >= PI {
        return PI;
    }
    if xi <= FRAC_PI_2 {
        2.0 * ((1.0 + q) / (1.0 - q) * (0.5 * xi).tan()).atan()
    } else {
        let half = 0.5 * xi;
        PI - 2.0 * ((1.0 - q) / (1.0 + q) * (half.cos() / half.sin())).atan()
    }
}

pub(crate) fn phase_derivative(q: f64, xi: f64) -> f64 {
    (1.0 - q * q) / (1.0 - 2.0 * q * xi.cos() + q * q)
}

/// Left-hand side minus right-hand side of the spectral equation for node `l_hat`.
pub fn spectral_residual(m: usize, params: &BoundaryParams, l_hat: usize, xi: f64) -> f64 {
    let phases: f64 = params.as_array().iter().map(|&q| phase(q, xi)).sum();
    2.0 * m as f64 * xi + phases - 2.0 * PI * (l_hat as f64 + 1.0)
}

/// `H^(m)(ξ) = 2m + Σ v'(ξ)`, the derivative of the spectral equation.
pub fn h_function(m: usize, params: &BoundaryParams, xi: f64) -> f64 {
    2.0 * m as f64
        + params
            .as_array()
            .iter()
            .map(|&q| phase_derivative(q, xi))
            .sum::<f64>()
}

/// `(κ−, κ+)`, with `κ+ ≤ 2 ≤ κ−`.
pub fn spectral_bounds(params: &BoundaryParams) -> (f64, f64) {
    let ratios = params.as_array().map(|q| (1.0 - q.abs()) / (1.0 + q.abs()));
    let kappa_plus = 0.5 * ratios.iter().sum::<f64>();
    let kappa_minus = 0.5 * ratios.iter().map(|r| r.recip()).sum::<f64>();
    (kappa_minus, kappa_plus)
}

/// Analytic location bracket `π(l̂+1)/(m+κ−) ≤ ξ̂_l̂ ≤ π(l̂+1)/(m+κ+)`.
///
/// The upper end is not clamped and may exceed π when κ+ is small.
pub fn node_bracket(m: usize, params: &BoundaryParams, l_hat: usize) -> (f64, f64) {
    let (kappa_minus, kappa_plus) = spectral_bounds(params);
    let numer = PI * (l_hat as f64 + 1.0);
    (
        numer / (m as f64 + kappa_minus),
        numer / (m as f64 + kappa_plus),
    )
}

/// Bounds on the gap `|ξ̂_l̂ − ξ̂_k̂|`.
pub fn gap_bounds(m: usize, params: &BoundaryParams, l_hat: usize, k_hat: usize) -> (f64, f64) {
    let (kappa_minus, kappa_plus) = spectral_bounds(params);
    let numer = PI * l_hat.abs_diff(k_hat) as f64;
    (
        numer / (m as f64 + kappa_minus),
        numer / (m as f64 + kappa_plus),
    )
}

/// `|e^{2imξ} − R(ξ)|` where `R` is the algebraic form of the spectral equation
/// (product of `(1 − p e^{iξ})/(e^{iξ} − p)` over the four parameters).
pub fn phase_relation_residual(m: usize, params: &BoundaryParams, xi: f64) -> f64 {
    let z = Complex64::from_polar(1.0, xi);
    let rhs = params
        .as_array()
        .iter()
        .map(|&p| (1.0 - p * z) / (z - p))
        .product::<Complex64>();
    let lhs = Complex64::from_polar(1.0, 2.0 * m as f64 * xi);
    (lhs - rhs).norm()
}

/// Solved spectral points for a grid of order `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    m: usize,
    params: BoundaryParams,
    xi: Vec<f64>,
    h: Vec<f64>,
    residual: Vec<f64>,
}

impl SpectralData {
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn params(&self) -> &BoundaryParams {
        &self.params
    }
    /// `ξ̂_0 < … < ξ̂_m`
    pub fn xi(&self) -> &[f64] {
        &self.xi
    }
    /// `H^(m)(ξ̂_l̂)`
    pub fn h(&self) -> &[f64] {
        &self.h
    }
    /// Achieved `|F(ξ̂_l̂)|` per node.
    pub fn residual(&self) -> &[f64] {
        &self.residual
    }
    pub fn len(&self) -> usize {
        self.xi.len()
    }
    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    /// Copy with node `l_hat` shifted by `delta` (H recomputed, residual updated).
    /// Only meant for sensitivity checks: the result is no longer a solution.
    pub fn perturbed(&self, l_hat: usize, delta: f64) -> Result<Self> {
        if l_hat >= self.xi.len() {
            return Err(Error::IndexOutOfRange {
                index: l_hat,
                size: self.xi.len(),
            });
        }
        let mut out = self.clone();
        let x = (out.xi[l_hat] + delta).clamp(f64::MIN_POSITIVE, PI - f64::EPSILON);
        out.xi[l_hat] = x;
        out.h[l_hat] = h_function(self.m, &self.params, x);
        out.residual[l_hat] = spectral_residual(self.m, &self.params, l_hat, x).abs();
        Ok(out)
    }
}

/// Solves the spectral equation for every `l̂ ∈ 0..=m`.
pub fn solve_spectrum(m: usize, params: &BoundaryParams, tol: f64) -> Result<SpectralData> {
    if m == 0 {
        return Err(Error::InvalidArgument("grid order m must be >= 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut xi = Vec::with_capacity(m + 1);
    let mut residual = Vec::with_capacity(m + 1);
    for l_hat in 0..=m {
        let (x, r) = solve_node(m, params, l_hat, tol)?;
        xi.push(x);
        residual.push(r);
    }
    let h = xi.iter().map(|&x| h_function(m, params, x)).collect();
    Ok(SpectralData {
        m,
        params: *params,
        xi,
        h,
        residual,
    })
}

/// Safeguarded Newton on `F(ξ) = spectral_residual`, which is strictly
/// increasing with `F' = H > 0`. Returns the root and `|F|` there.
fn solve_node(m: usize, params: &BoundaryParams, l_hat: usize, tol: f64) -> Result<(f64, f64)> {
    let f = |x: f64| spectral_residual(m, params, l_hat, x);

    let (lo0, hi0) = node_bracket(m, params, l_hat);
    let (mut lo, mut hi) = (lo0.max(0.0), hi0.min(PI));
    let (mut f_lo, mut f_hi) = (f(lo), f(hi));
    if !(lo < hi && f_lo <= 0.0 && f_hi >= 0.0) {
        // Bounds collided numerically; fall back to the full interval.
        lo = 0.0;
        hi = PI;
        f_lo = f(lo);
        f_hi = f(hi);
    }
    if f_lo.abs() <= tol {
        return Ok((lo, f_lo.abs()));
    }
    if f_hi.abs() <= tol {
        return Ok((hi, f_hi.abs()));
    }
    if lo == hi {
        return Ok((lo, f_lo.abs()));
    }

    let mut x = 0.5 * (lo + hi);
    let mut best = (x, f64::INFINITY);
    for _ in 0..MAX_ITERATIONS {
        let fx = f(x);
        if fx.abs() < best.1 {
            best = (x, fx.abs());
        }
        if fx.abs() <= tol {
            return Ok((x, fx.abs()));
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        // Bracket collapsed to neighbouring doubles: root found to machine
        // resolution even though |F| is still above tol.
        if hi - lo <= 2.0 * f64::EPSILON * hi {
            return Ok(best);
        }
        let newton = x - fx / h_function(m, params, x);
        x = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(Error::SolverFailure {
        l_hat,
        lo,
        hi,
        residual: best.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(p: [f64; 4]) -> BoundaryParams {
        BoundaryParams::new(p[0], p[1], p[2], p[3]).unwrap()
    }

    /// Composite Simpson quadrature of the phase integrand.
    fn v_by_quadrature(q: f64, xi: f64) -> f64 {
        let n = 20_000;
        let h = xi / n as f64;
        let g = |x: f64| (1.0 - q * q) / (1.0 - 2.0 * q * x.cos() + q * q);
        let mut s = g(0.0) + g(xi);
        for k in 1..n {
            s += if k % 2 == 1 { 4.0 } else { 2.0 } * g(k as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn params_validation() {
        assert!(BoundaryParams::new(0.5, 0.2, 0.0, 0.0).is_err());
        assert!(BoundaryParams::new(0.0, 0.0, 0.3, -0.3).is_err());
        assert!(BoundaryParams::new(-1.0, 0.0, 0.0, 0.0).is_err());
        assert!(BoundaryParams::new(0.0, 1.0, 0.0, 0.0).is_err());
        assert!(BoundaryParams::new(0.0, f64::NAN, 0.0, 0.0).is_err());
        let p = params([-0.4, 0.3, 0.2, 0.6]);
        assert!((p.a_minus() + 0.12).abs() < 1e-15);
        assert!((p.b_minus() + 0.1).abs() < 1e-15);
        assert!((p.a_plus() - 0.12).abs() < 1e-15);
        assert!((p.b_plus() - 0.8).abs() < 1e-15);
        let parsed: BoundaryParams = "-0.4, 0.3,0.2,0.6".parse().unwrap();
        assert_eq!(parsed, p);
        assert!("0,0,0".parse::<BoundaryParams>().is_err());
        assert!("0.9,0.1,0,0".parse::<BoundaryParams>().is_err());
    }

    #[test]
    fn v_examples() {
        assert!((v(0.0, 0.7).unwrap() - 0.7).abs() < 1e-15);
        for q in [-0.99, -0.3, 0.0, 0.5, 0.999] {
            assert_eq!(v(q, PI).unwrap(), PI);
            assert_eq!(v(q, 0.0).unwrap(), 0.0);
        }
        // Frozen from Simpson quadrature of the integrand.
        let quad = v_by_quadrature(0.5, FRAC_PI_2);
        assert!((quad - 2.498_091_544_796_509).abs() < 1e-12);
        assert!((v(0.5, FRAC_PI_2).unwrap() - 2.0 * 3f64.atan()).abs() < 1e-15);
        assert!((v(0.5, FRAC_PI_2).unwrap() - quad).abs() < 1e-12);
        // Both closed-form branches agree with quadrature on either side of π/2.
        for xi in [0.3, 1.5, 1.7, 2.9, 3.1] {
            assert!((v(-0.6, xi).unwrap() - v_by_quadrature(-0.6, xi)).abs() < 1e-10);
        }
    }

    #[test]
    fn v_rejects_bad_input() {
        assert!(v(1.0, 0.5).is_err());
        assert!(v(-1.0, 0.5).is_err());
        assert!(v(0.2, -0.1).is_err());
        assert!(v(0.2, 3.2).is_err());
        assert!(v_prime(1.5, 0.5).is_err());
    }

    #[test]
    fn v_prime_examples() {
        assert_eq!(v_prime(0.0, 1.234).unwrap(), 1.0);
        assert!((v_prime(0.5, 0.0).unwrap() - 3.0).abs() < 1e-15);
        let h = 1e-6;
        let fd = (v(-0.3, 1.1 + h).unwrap() - v(-0.3, 1.1 - h).unwrap()) / (2.0 * h);
        assert!((fd - v_prime(-0.3, 1.1).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn v_is_monotone_on_grid() {
        for q in [-0.95, -0.2, 0.0, 0.7, 0.995] {
            let mut prev = -1.0;
            for k in 0..=1000 {
                let x = PI * k as f64 / 1000.0;
                let y = v(q, x).unwrap();
                assert!(y > prev, "q={q} k={k}");
                prev = y;
            }
        }
    }

    #[test]
    fn odd_extension_matches_closed_form() {
        for q in [-0.7, 0.1, 0.8] {
            for xi in [0.2, 1.0, 2.5] {
                let closed = |x: f64| 2.0 * ((1.0 + q) / (1.0 - q) * (0.5 * x).tan()).atan();
                assert!((closed(-xi) + v(q, xi).unwrap()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn kappa_examples() {
        let (km, kp) = spectral_bounds(&BoundaryParams::dirichlet());
        assert_eq!((km, kp), (2.0, 2.0));
        let (km, kp) = spectral_bounds(&params([0.5, 0.5, 0.5, 0.5]));
        assert!((kp - 2.0 / 3.0).abs() < 1e-15);
        assert!((km - 6.0).abs() < 1e-14);
    }

    #[test]
    fn dirichlet_nodes_are_equispaced() {
        let s = solve_spectrum(4, &BoundaryParams::dirichlet(), DEFAULT_TOL).unwrap();
        assert!((s.xi()[2] - FRAC_PI_2).abs() < 1e-15);
        let s = solve_spectrum(3, &BoundaryParams::dirichlet(), DEFAULT_TOL).unwrap();
        for (l, &x) in s.xi().iter().enumerate() {
            assert!((x - PI * (l as f64 + 1.0) / 5.0).abs() < 1e-15);
        }
        assert!(s.h().iter().all(|&h| (h - 10.0).abs() < 1e-15));
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(solve_spectrum(0, &BoundaryParams::dirichlet(), 1e-13).is_err());
        assert!(solve_spectrum(3, &BoundaryParams::dirichlet(), 0.0).is_err());
        assert!(solve_spectrum(3, &BoundaryParams::dirichlet(), f64::NAN).is_err());
    }

    #[test]
    fn near_boundary_parameters_still_solve() {
        let p = params([-0.999_999, 0.999_999, -0.999_999, 0.999_999]);
        let s = solve_spectrum(6, &p, DEFAULT_TOL).unwrap();
        assert!(s.xi().windows(2).all(|w| w[0] < w[1]));
        assert!(s.xi()[0] > 0.0 && s.xi()[6] < PI);
    }

    #[test]
    fn phase_relation_holds_at_roots() {
        let p = params([-0.4, 0.3, 0.2, 0.6]);
        let s = solve_spectrum(5, &p, DEFAULT_TOL).unwrap();
        for &x in s.xi() {
            assert!(phase_relation_residual(5, &p, x) < 1e-12);
        }
        // and fails away from them
        assert!(phase_relation_residual(5, &p, 0.5 * (s.xi()[1] + s.xi()[2])) > 1e-3);
    }

    #[test]
    fn perturbed_moves_one_node() {
        let s = solve_spectrum(4, &BoundaryParams::dirichlet(), DEFAULT_TOL).unwrap();
        let t = s.perturbed(2, 1e-3).unwrap();
        assert!((t.xi()[2] - s.xi()[2] - 1e-3).abs() < 1e-15);
        assert_eq!(t.xi()[1], s.xi()[1]);
        assert!(t.residual()[2] > 1e-3);
        assert!(s.perturbed(5, 0.1).is_err());
    }

    fn arb_params() -> impl Strategy<Value = BoundaryParams> {
        let unit = -0.999f64..0.999;
        (unit.clone(), unit.clone(), unit.clone(), unit).prop_map(|(a, b, c, d)| {
            BoundaryParams::new(a.min(b), a.max(b), c.min(d), c.max(d)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn derivative_matches_central_difference(q in -0.95f64..0.95, xi in 0.01f64..3.13) {
            let h = 1e-5;
            let fd = (phase(q, xi + h) - phase(q, xi - h)) / (2.0 * h);
            prop_assert!((fd - phase_derivative(q, xi)).abs() < 1e-7);
        }

        #[test]
        fn v_prime_within_analytic_bounds(q in -0.999f64..0.999, xi in 0.0f64..PI) {
            let d = v_prime(q, xi).unwrap();
            let r = (1.0 - q.abs()) / (1.0 + q.abs());
            prop_assert!(d > 0.0);
            prop_assert!(d >= r * (1.0 - 1e-12) && d <= (1.0 + 1e-12) / r);
        }

        #[test]
        fn roots_are_interlaced_and_bracketed(p in arb_params(), m in 1usize..40) {
            let s = solve_spectrum(m, &p, DEFAULT_TOL).unwrap();
            prop_assert!(s.xi()[0] > 0.0 && s.xi()[m] < PI);
            prop_assert!(s.xi().windows(2).all(|w| w[0] < w[1]));
            let slack = 1e-12;
            for (l, &x) in s.xi().iter().enumerate() {
                let (lo, hi) = node_bracket(m, &p, l);
                prop_assert!(x >= lo - slack && x <= hi + slack);
                prop_assert!(s.residual()[l] <= 1e-12);
                prop_assert!(s.h()[l] > 0.0);
            }
            for l in 0..=m {
                for k in l + 1..=m {
                    let (glo, ghi) = gap_bounds(m, &p, l, k);
                    let gap = s.xi()[k] - s.xi()[l];
                    prop_assert!(gap >= glo - slack && gap <= ghi + slack);
                }
            }
        }
    }
}
