//! Executable form of the orthogonality argument: for `λ, μ ∈ Λ^(m,n)`,
//!
//! ```text
//! Σ_{m+n > λ̄₁ > … > λ̄ₙ ≥ 0} det[Ψ_{λ̄_j, n−k+λ_k}] det[Ψ_{λ̄_j, n−k+μ_k}]
//!     = det[⟨Ψ_{·, n−j+λ_j}, Ψ_{·, n−k+μ_k}⟩] = δ_{λμ}
//! ```
//!
//! with `Ψ` the univariate kernel of order `m+n−1`. The strict sequences
//! `λ̄` are the staircase shifts of the lattice.

use crate::error::{Error, Result};
use crate::matrix::{determinant, nan_max, SquareMatrix};
use crate::transform::UnitaryKernel;

use super::kernel::KernelMV;
use super::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyBinetEvaluation {
    /// Sum over strict sequences of products of Slater determinants.
    pub lattice_sum: f64,
    /// Determinant of the Gram matrix of kernel columns.
    pub gram_determinant: f64,
    /// `δ_{λμ}`
    pub expected: f64,
}

impl CauchyBinetEvaluation {
    pub fn residual(&self) -> f64 {
        nan_max(
            (self.lattice_sum - self.expected).abs(),
            (self.gram_determinant - self.expected).abs(),
        )
    }
}

pub fn cauchy_binet_pair(
    kernel: &KernelMV,
    lambda: &Partition,
    mu: &Partition,
) -> Result<CauchyBinetEvaluation> {
    let n = kernel.n();
    if lambda.len() != n || mu.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: lambda.len().min(mu.len()),
        });
    }
    let base = kernel.base().matrix();
    let cols_l = lambda.staircase_shift();
    let cols_m = mu.staircase_shift();

    let mut block_l = vec![0.0; n * n];
    let mut block_m = vec![0.0; n * n];
    let mut lattice_sum = 0.0;
    for strict in kernel.partitions().iter().map(Partition::staircase_shift) {
        fill(base, &strict, &cols_l, &mut block_l);
        fill(base, &strict, &cols_m, &mut block_m);
        lattice_sum += determinant(n, &block_l) * determinant(n, &block_m);
    }

    let mut gram = vec![0.0; n * n];
    for (j, &a) in cols_l.iter().enumerate() {
        for (k, &b) in cols_m.iter().enumerate() {
            gram[j * n + k] = (0..base.dim())
                .map(|i| base.get(i, a) * base.get(i, b))
                .sum();
        }
    }

    Ok(CauchyBinetEvaluation {
        lattice_sum,
        gram_determinant: determinant(n, &gram),
        expected: if lambda == mu { 1.0 } else { 0.0 },
    })
}

/// Max residual over the given `(rank λ, rank μ)` pairs.
pub fn cauchy_binet_check(kernel: &KernelMV, pairs: &[(usize, usize)]) -> Result<f64> {
    let parts = kernel.partitions();
    let lookup = |r: usize| {
        parts.unrank(r).ok_or(Error::IndexOutOfRange {
            index: r,
            size: parts.len(),
        })
    };
    pairs.iter().try_fold(0.0, |acc, &(a, b)| {
        let eval = cauchy_binet_pair(kernel, lookup(a)?, lookup(b)?)?;
        Ok(nan_max(acc, eval.residual()))
    })
}

fn fill(base: &SquareMatrix, rows: &[usize], cols: &[usize], out: &mut [f64]) {
    let n = rows.len();
    for (j, &r) in rows.iter().enumerate() {
        for (k, &c) in cols.iter().enumerate() {
            out[j * n + k] = base.get(r, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multivariate::kernel::build_kernel_mv;
    use crate::multivariate::partition::DEFAULT_SIZE_CAP;
    use crate::spectral::{BoundaryParams, DEFAULT_TOL};

    #[test]
    fn identity_pattern() {
        let p = BoundaryParams::new(-0.4, 0.3, 0.2, 0.6).unwrap();
        let mv = build_kernel_mv(3, 2, &p, DEFAULT_TOL, DEFAULT_SIZE_CAP).unwrap();
        let parts = mv.partitions();
        for a in 0..parts.len() {
            for b in 0..parts.len() {
                let e = cauchy_binet_pair(&mv, parts.unrank(a).unwrap(), parts.unrank(b).unwrap())
                    .unwrap();
                assert!(e.residual() < 1e-9, "{a} {b}: {e:?}");
                assert!((e.lattice_sum - e.gram_determinant).abs() < 1e-9);
            }
        }
        assert!(cauchy_binet_check(&mv, &[(0, 0), (1, 4)]).unwrap() < 1e-9);
        assert!(cauchy_binet_check(&mv, &[(0, 99)]).is_err());
    }
}
