//! Closed forms of the sixteen discrete cosine and sine transforms and the
//! boundary-parameter limits that produce them.
//!
//! Each kind is stored as the data of
//!
//! ```text
//! ξ_l̂ = π(l̂ + α)/(m + d)
//! Ψ_{l̂,l} = √(2/(m+d)) · trig(π(l̂ + α)(l + β)/(m + d)) · (1/√2)^{corner factors}
//! ```
//!
//! Three printed corner exponents are not orthogonal as typeset and are
//! replaced by the readings that are (and that the generic kernel converges to):
//! DCT-7 uses `δ_l + δ_{m−l̂}`, DST-2 uses `δ_{m−l̂}`, and DST-8 uses
//! `δ_{m−l̂} + δ_{m−l}` with denominator `m + ½`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::spectral::BoundaryParams;
use crate::transform::{build_kernel, UnitaryKernel};

/// Errors below this level count as converged when checking monotonicity;
/// interior limits (DST-1) sit at rounding level for every ε.
pub const CONVERGENCE_NOISE_FLOOR: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicKind {
    Dct1,
    Dct2,
    Dct3,
    Dct4,
    Dct5,
    Dct6,
    Dct7,
    Dct8,
    Dst1,
    Dst2,
    Dst3,
    Dst4,
    Dst5,
    Dst6,
    Dst7,
    Dst8,
}

/// Boundary pairs of Neumann type `(−1, 1)`, `(0, 1)` and Dirichlet type `(0, 0)`, `(−1, 0)`.
const NN: (f64, f64) = (-1.0, 1.0);
const NH: (f64, f64) = (0.0, 1.0);
const DD: (f64, f64) = (0.0, 0.0);
const DH: (f64, f64) = (-1.0, 0.0);

#[derive(Clone, Copy)]
struct Corners {
    first_row: bool,
    last_row: bool,
    first_col: bool,
    last_col: bool,
}

const NONE: Corners = Corners {
    first_row: false,
    last_row: false,
    first_col: false,
    last_col: false,
};

struct Shape {
    cosine: bool,
    row_shift: f64,
    col_shift: f64,
    denom_shift: f64,
    corners: Corners,
}

impl ClassicKind {
    pub const ALL: [ClassicKind; 16] = [
        Self::Dct1,
        Self::Dct2,
        Self::Dct3,
        Self::Dct4,
        Self::Dct5,
        Self::Dct6,
        Self::Dct7,
        Self::Dct8,
        Self::Dst1,
        Self::Dst2,
        Self::Dst3,
        Self::Dst4,
        Self::Dst5,
        Self::Dst6,
        Self::Dst7,
        Self::Dst8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Dct1 => "dct-1",
            Self::Dct2 => "dct-2",
            Self::Dct3 => "dct-3",
            Self::Dct4 => "dct-4",
            Self::Dct5 => "dct-5",
            Self::Dct6 => "dct-6",
            Self::Dct7 => "dct-7",
            Self::Dct8 => "dct-8",
            Self::Dst1 => "dst-1",
            Self::Dst2 => "dst-2",
            Self::Dst3 => "dst-3",
            Self::Dst4 => "dst-4",
            Self::Dst5 => "dst-5",
            Self::Dst6 => "dst-6",
            Self::Dst7 => "dst-7",
            Self::Dst8 => "dst-8",
        }
    }

    /// `((p−, q−), (p+, q+))` limit values.
    pub fn limit_params(self) -> ((f64, f64), (f64, f64)) {
        match self {
            Self::Dct1 => (NN, NN),
            Self::Dct2 => (NH, NH),
            Self::Dct3 => (NN, DD),
            Self::Dct4 => (NH, DH),
            Self::Dct5 => (NN, NH),
            Self::Dct6 => (NH, NN),
            Self::Dct7 => (NN, DH),
            Self::Dct8 => (NH, DD),
            Self::Dst1 => (DD, DD),
            Self::Dst2 => (DH, DH),
            Self::Dst3 => (DD, NN),
            Self::Dst4 => (DH, NH),
            Self::Dst5 => (DD, DH),
            Self::Dst6 => (DH, DD),
            Self::Dst7 => (DD, NH),
            Self::Dst8 => (DH, NN),
        }
    }

    /// Limiting `((a−, b−), (a+, b+))`.
    pub fn limit_ab(self) -> ((f64, f64), (f64, f64)) {
        let ab = |(p, q): (f64, f64)| (p * q, p + q);
        let (minus, plus) = self.limit_params();
        (ab(minus), ab(plus))
    }

    /// Interior parameters approaching the limit: `±1 → ±(1 − ε)`, `0 → 0`.
    pub fn perturbed_params(self, eps: f64) -> Result<BoundaryParams> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "epsilon must lie in (0, 1), got {eps}"
            )));
        }
        let ((pm, qm), (pp, qp)) = self.limit_params();
        let s = 1.0 - eps;
        BoundaryParams::new(pm * s, qm * s, pp * s, qp * s)
    }

    /// Number of limit parameters equal to 0 and to 1.
    pub fn zero_one_counts(self) -> (usize, usize) {
        let ((pm, qm), (pp, qp)) = self.limit_params();
        let vals = [pm, qm, pp, qp];
        (
            vals.iter().filter(|&&v| v == 0.0).count(),
            vals.iter().filter(|&&v| v == 1.0).count(),
        )
    }

    fn shape(self) -> Shape {
        let c = |first_row, last_row, first_col, last_col| Corners {
            first_row,
            last_row,
            first_col,
            last_col,
        };
        let (cosine, row_shift, col_shift, denom_shift, corners) = match self {
            Self::Dct1 => (true, 0.0, 0.0, 0.0, c(true, true, true, true)),
            Self::Dct2 => (true, 0.0, 0.5, 1.0, c(true, false, false, false)),
            Self::Dct3 => (true, 0.5, 0.0, 1.0, c(false, false, true, false)),
            Self::Dct4 => (true, 0.5, 0.5, 1.0, NONE),
            Self::Dct5 => (true, 0.0, 0.0, 0.5, c(true, false, true, false)),
            Self::Dct6 => (true, 0.0, 0.5, 0.5, c(true, false, false, true)),
            Self::Dct7 => (true, 0.5, 0.0, 0.5, c(false, true, true, false)),
            Self::Dct8 => (true, 0.5, 0.5, 1.5, NONE),
            Self::Dst1 => (false, 1.0, 1.0, 2.0, NONE),
            Self::Dst2 => (false, 1.0, 0.5, 1.0, c(false, true, false, false)),
            Self::Dst3 => (false, 0.5, 1.0, 1.0, c(false, false, false, true)),
            Self::Dst4 => (false, 0.5, 0.5, 1.0, NONE),
            Self::Dst5 => (false, 1.0, 1.0, 1.5, NONE),
            Self::Dst6 => (false, 1.0, 0.5, 1.5, NONE),
            Self::Dst7 => (false, 0.5, 1.0, 1.5, NONE),
            Self::Dst8 => (false, 0.5, 0.5, 0.5, c(false, true, false, true)),
        };
        Shape {
            cosine,
            row_shift,
            col_shift,
            denom_shift,
            corners,
        }
    }
}

impl fmt::Display for ClassicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassicKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let needle = s.trim().to_ascii_lowercase();
        Self::ALL
            .iter()
            .copied()
            .find(|k| k.name() == needle)
            .ok_or_else(|| {
                let names: Vec<&str> = Self::ALL.iter().map(|k| k.name()).collect();
                Error::InvalidArgument(format!(
                    "unknown transform kind {s:?}; valid kinds: {}",
                    names.join(", ")
                ))
            })
    }
}

fn check_order(kind: ClassicKind, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument(format!(
            "{kind} requires grid order m >= 1"
        )));
    }
    Ok(())
}

/// Limiting spectral point `ξ_l̂` of the given kind.
pub fn classic_nodes(kind: ClassicKind, m: usize, l_hat: usize) -> Result<f64> {
    if kind == ClassicKind::Dct1 {
        check_order(kind, m)?;
    }
    if l_hat > m {
        return Err(Error::IndexOutOfRange {
            index: l_hat,
            size: m + 1,
        });
    }
    let s = kind.shape();
    Ok(PI * (l_hat as f64 + s.row_shift) / (m as f64 + s.denom_shift))
}

/// `π(l̂ + 1 − N₁/2)/(m + N₀/2)` from the counts of limit parameters at 0 and 1.
pub fn counted_node_limit(kind: ClassicKind, m: usize, l_hat: usize) -> f64 {
    let (n0, n1) = kind.zero_one_counts();
    PI * (l_hat as f64 + 1.0 - 0.5 * n1 as f64) / (m as f64 + 0.5 * n0 as f64)
}

/// Dense `(m+1)×(m+1)` closed-form kernel, rows indexed by `l̂`.
pub fn classic_kernel(kind: ClassicKind, m: usize) -> Result<SquareMatrix> {
    check_order(kind, m)?;
    let s = kind.shape();
    let denom = m as f64 + s.denom_shift;
    let scale = (2.0 / denom).sqrt();
    Ok(SquareMatrix::from_fn(m + 1, |l_hat, l| {
        let arg = PI * (l_hat as f64 + s.row_shift) * (l as f64 + s.col_shift) / denom;
        let trig = if s.cosine { arg.cos() } else { arg.sin() };
        let corners = [
            s.corners.first_row && l_hat == 0,
            s.corners.last_row && l_hat == m,
            s.corners.first_col && l == 0,
            s.corners.last_col && l == m,
        ];
        let exponent = corners.iter().filter(|&&b| b).count() as i32;
        scale * trig * FRAC_1_SQRT_2.powi(exponent)
    }))
}

/// `‖Ψ(ε) − Ψ_classic‖_max` for each ε, with Ψ(ε) the generic kernel at
/// [`ClassicKind::perturbed_params`].
pub fn limit_convergence(
    kind: ClassicKind,
    m: usize,
    epsilons: &[f64],
    tol: f64,
) -> Result<Vec<f64>> {
    if epsilons.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument(
            "epsilons must be strictly decreasing".into(),
        ));
    }
    let exact = classic_kernel(kind, m)?;
    epsilons
        .iter()
        .map(|&eps| {
            let params = kind.perturbed_params(eps)?;
            let generic = build_kernel(m, &params, tol)?;
            Ok(generic.matrix().max_abs_diff(&exact))
        })
        .collect()
}

/// Each error is strictly below its predecessor unless both sit under `floor`.
pub fn is_monotone_convergent(errors: &[f64], floor: f64) -> bool {
    errors.iter().all(|e| e.is_finite())
        && errors
            .windows(2)
            .all(|w| w[1] < w[0] || (w[0] <= floor && w[1] <= floor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::DEFAULT_TOL;

    #[test]
    fn node_examples() {
        assert!((classic_nodes(ClassicKind::Dst1, 4, 2).unwrap() - PI / 2.0).abs() < 1e-15);
        assert_eq!(classic_nodes(ClassicKind::Dct1, 8, 0).unwrap(), 0.0);
        assert!((classic_nodes(ClassicKind::Dct4, 5, 3).unwrap() - PI * 3.5 / 6.0).abs() < 1e-15);
        assert!(classic_nodes(ClassicKind::Dct1, 0, 0).is_err());
        assert!(classic_nodes(ClassicKind::Dct2, 3, 4).is_err());
    }

    #[test]
    fn kernel_examples() {
        let k = classic_kernel(ClassicKind::Dst1, 1).unwrap();
        let s = (2.0f64 / 3.0).sqrt();
        let expected = [
            [s * (PI / 3.0).sin(), s * (2.0 * PI / 3.0).sin()],
            [s * (2.0 * PI / 3.0).sin(), s * (4.0 * PI / 3.0).sin()],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                assert!((k.get(r, c) - e).abs() < 1e-15);
            }
        }
        let k = classic_kernel(ClassicKind::Dct2, 3).unwrap();
        assert!((k.get(0, 2) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn table_margins() {
        use ClassicKind::*;
        assert_eq!(Dct4.limit_params(), ((0.0, 1.0), (-1.0, 0.0)));
        assert_eq!(Dct1.limit_ab(), ((-1.0, 0.0), (-1.0, 0.0)));
        assert_eq!(Dct2.limit_ab(), ((0.0, 1.0), (0.0, 1.0)));
        assert_eq!(Dst1.limit_ab(), ((0.0, 0.0), (0.0, 0.0)));
        assert_eq!(Dst2.limit_ab(), ((-0.0, -1.0), (-0.0, -1.0)));
    }

    #[test]
    fn names_round_trip() {
        for k in ClassicKind::ALL {
            assert_eq!(k.name().parse::<ClassicKind>().unwrap(), k);
        }
        assert_eq!("DCT-3".parse::<ClassicKind>().unwrap(), ClassicKind::Dct3);
        let err = "dct-9".parse::<ClassicKind>().unwrap_err().to_string();
        assert!(err.contains("dst-8"));
    }

    #[test]
    fn printed_nodes_match_counting_formula() {
        for kind in ClassicKind::ALL {
            for m in 1..10 {
                for l in 0..=m {
                    let a = classic_nodes(kind, m, l).unwrap();
                    assert!(
                        (a - counted_node_limit(kind, m, l)).abs() < 1e-14,
                        "{kind} m={m} l={l}"
                    );
                }
            }
        }
    }

    #[test]
    fn kernels_are_orthogonal() {
        for kind in ClassicKind::ALL {
            let k = classic_kernel(kind, 7).unwrap();
            assert!(k.row_gram_residual() < 1e-12, "{kind}");
        }
    }

    #[test]
    fn interior_limit_is_exact() {
        let errs = limit_convergence(ClassicKind::Dst1, 4, &[1e-2], DEFAULT_TOL).unwrap();
        assert!(errs[0] < 1e-13);
    }

    #[test]
    fn dct_limits_converge() {
        let errs =
            limit_convergence(ClassicKind::Dct2, 4, &[1e-2, 1e-3, 1e-4], DEFAULT_TOL).unwrap();
        assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
        let errs = limit_convergence(ClassicKind::Dct1, 4, &[1e-3, 1e-4], DEFAULT_TOL).unwrap();
        assert!(errs[1] < errs[0] && errs[1] < 1e-2, "{errs:?}");
    }

    #[test]
    fn convergence_rejects_bad_epsilons() {
        assert!(limit_convergence(ClassicKind::Dct2, 4, &[1e-3, 1e-2], DEFAULT_TOL).is_err());
        assert!(limit_convergence(ClassicKind::Dct2, 4, &[0.0], DEFAULT_TOL).is_err());
        assert!(ClassicKind::Dct2.perturbed_params(1.5).is_err());
    }

    #[test]
    fn monotone_helper() {
        assert!(is_monotone_convergent(&[1e-2, 1e-3, 1e-4], 1e-11));
        assert!(is_monotone_convergent(&[5e-16, 6e-16, 5e-16], 1e-11));
        assert!(!is_monotone_convergent(&[1e-3, 1e-2], 1e-11));
        assert!(!is_monotone_convergent(&[1e-3, f64::NAN], 1e-11));
    }
}
