//! Multivariate nodes, weights and the Slater-determinant kernel on `Λ^(m,n)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{determinant, SquareMatrix};
use crate::spectral::{BoundaryParams, SpectralData};
use crate::transform::{build_kernel, Kernel1D, UnitaryKernel};

use super::partition::{enumerate_partitions, Partition, PartitionSet};
use super::schur::{c_coefficient, schur_poly, vandermonde};

/// `ξ_λ̂ = (ξ̂_{λ̂₁+n−1}, …, ξ̂_{λ̂ₙ})` from a spectrum of order `m+n−1`.
pub fn multi_nodes(lambda_hat: &Partition, spec: &SpectralData) -> Result<Vec<f64>> {
    lambda_hat
        .staircase_shift()
        .into_iter()
        .map(|i| {
            spec.xi().get(i).copied().ok_or(Error::IndexOutOfRange {
                index: i,
                size: spec.len(),
            })
        })
        .collect()
}

/// `E(ξ) = Σ_j 2 cos ξ_j`
pub fn energy(xi: &[f64]) -> f64 {
    xi.iter().map(|x| 2.0 * x.cos()).sum()
}

/// `Δ_λ = (1 − a− δ_{λₙ})⁻¹ (1 − a+ δ_{m−λ₁})⁻¹`.
pub fn lattice_weight(lambda: &Partition, m: usize, params: &BoundaryParams) -> f64 {
    let parts = lambda.parts();
    let mut w = 1.0;
    if parts[parts.len() - 1] == 0 {
        w /= 1.0 - params.a_minus();
    }
    if parts[0] == m {
        w /= 1.0 - params.a_plus();
    }
    w
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiWeights {
    pub delta: Vec<f64>,
    pub delta_hat: Vec<f64>,
}

/// Weights over the ranked lattice; `base` is the univariate kernel of order `m+n−1`.
/// `Δ̂_λ̂ = V(ξ_λ̂)² ∏_j Δ̂_{n−j+λ̂_j}`.
pub fn multi_weights(partitions: &PartitionSet, base: &Kernel1D) -> Result<MultiWeights> {
    check_base(partitions, base)?;
    let m = partitions.m();
    let params = base.params();
    let delta = partitions
        .iter()
        .map(|l| lattice_weight(l, m, params))
        .collect();
    let delta_hat = partitions
        .iter()
        .map(|lh| {
            let xi = multi_nodes(lh, base.spectrum())?;
            let prod: f64 = lh
                .staircase_shift()
                .iter()
                .map(|&i| base.weights().delta_hat[i])
                .product();
            Ok(vandermonde(&xi).powi(2) * prod)
        })
        .collect::<Result<_>>()?;
    Ok(MultiWeights { delta, delta_hat })
}

/// `1 / (C(ξ) C(−ξ) ∏_j H^(m+n−1)(ξ_j))` at `ξ = ξ_λ̂`, the unfactorized
/// Plancherel weight.
pub fn plancherel_unfactorized(lambda_hat: &Partition, base: &Kernel1D) -> Result<f64> {
    let spec = base.spectrum();
    let xi = multi_nodes(lambda_hat, spec)?;
    let neg: Vec<f64> = xi.iter().map(|x| -x).collect();
    let cc = c_coefficient(&xi, spec.params())? * c_coefficient(&neg, spec.params())?;
    let h: f64 = lambda_hat
        .staircase_shift()
        .iter()
        .map(|&i| spec.h()[i])
        .product();
    Ok(1.0 / (cc.re * h))
}

fn check_base(partitions: &PartitionSet, base: &Kernel1D) -> Result<()> {
    let order = partitions.m() + partitions.n() - 1;
    if base.m() != order {
        return Err(Error::InvalidArgument(format!(
            "univariate kernel has order {}, lattice needs m+n-1 = {order}",
            base.m()
        )));
    }
    Ok(())
}

/// `Ψ^(m,n)_{λ̂,λ} = det[Ψ^(m+n−1)_{n−j+λ̂_j, n−k+λ_k}]`, rows and columns in
/// partition rank order.
#[derive(Debug, Clone)]
pub struct KernelMV {
    partitions: PartitionSet,
    base: Kernel1D,
    weights: MultiWeights,
    matrix: SquareMatrix,
}

impl KernelMV {
    /// Assembles from a univariate kernel of order `m+n−1`.
    pub fn from_base(partitions: PartitionSet, base: Kernel1D) -> Result<Self> {
        check_base(&partitions, &base)?;
        let weights = multi_weights(&partitions, &base)?;
        let shifts: Vec<Vec<usize>> = partitions.iter().map(Partition::staircase_shift).collect();
        let n = partitions.n();
        let size = partitions.len();
        let rows: Vec<Vec<f64>> = (0..size)
            .into_par_iter()
            .map(|r| {
                let mut block = vec![0.0; n * n];
                (0..size)
                    .map(|c| {
                        slater_block(base.matrix(), &shifts[r], &shifts[c], &mut block);
                        determinant(n, &block)
                    })
                    .collect()
            })
            .collect();
        let matrix = SquareMatrix::from_row_major(size, rows.concat())?;
        Ok(Self {
            partitions,
            base,
            weights,
            matrix,
        })
    }

    pub fn m(&self) -> usize {
        self.partitions.m()
    }
    pub fn n(&self) -> usize {
        self.partitions.n()
    }
    pub fn params(&self) -> &BoundaryParams {
        self.base.params()
    }
    pub fn partitions(&self) -> &PartitionSet {
        &self.partitions
    }
    /// Univariate kernel of order `m+n−1` the determinants are taken from.
    pub fn base(&self) -> &Kernel1D {
        &self.base
    }
    pub fn weights(&self) -> &MultiWeights {
        &self.weights
    }
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.matrix.get(row, col)
    }

    /// Nodes `ξ_λ̂` for the row of rank `row`.
    pub fn nodes(&self, row: usize) -> Result<Vec<f64>> {
        let lh = self.unrank(row)?;
        multi_nodes(lh, self.base.spectrum())
    }

    /// `E(ξ_λ̂)` for every row.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        (0..self.partitions.len())
            .map(|r| self.nodes(r).map(|xi| energy(&xi)))
            .collect()
    }

    /// Entry via `V(ξ_λ̂) ∏_j √Δ̂_{n−j+λ̂_j} · √Δ_λ · P_λ(ξ_λ̂)`.
    ///
    /// The root of `Δ̂_λ̂` is taken as `V·∏√Δ̂_j` (it squares to the factorized
    /// weight); the positive root differs from the determinant entry by the
    /// global sign `(−1)^{n(n−1)/2}` because `ξ_λ̂` is decreasing.
    pub fn entry_via_schur(&self, row: usize, col: usize) -> Result<f64> {
        let lh = self.unrank(row)?;
        let l = self.unrank(col)?;
        let xi = multi_nodes(lh, self.base.spectrum())?;
        let root_prod: f64 = lh
            .staircase_shift()
            .iter()
            .map(|&i| self.base.weights().delta_hat[i].sqrt())
            .product();
        let root = vandermonde(&xi) * root_prod;
        Ok(root * self.weights.delta[col].sqrt() * schur_poly(l, &xi, self.params())?)
    }

    /// Unnormalized eigenfunction `ψ_λ̂(λ) = P_λ(ξ_λ̂)` over the ranked lattice.
    pub fn eigenfunction(&self, row: usize) -> Result<Vec<f64>> {
        let xi = self.nodes(row)?;
        self.partitions
            .iter()
            .map(|l| schur_poly(l, &xi, self.params()))
            .collect()
    }

    fn unrank(&self, rank: usize) -> Result<&Partition> {
        self.partitions.unrank(rank).ok_or(Error::IndexOutOfRange {
            index: rank,
            size: self.partitions.len(),
        })
    }
}

impl UnitaryKernel for KernelMV {
    fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }
}

fn slater_block(base: &SquareMatrix, rows: &[usize], cols: &[usize], out: &mut [f64]) {
    let n = rows.len();
    for (j, &r) in rows.iter().enumerate() {
        for (k, &c) in cols.iter().enumerate() {
            out[j * n + k] = base.get(r, c);
        }
    }
}

pub fn build_kernel_mv(
    m: usize,
    n: usize,
    params: &BoundaryParams,
    tol: f64,
    cap: usize,
) -> Result<KernelMV> {
    let partitions = enumerate_partitions(m, n, cap)?;
    let base = build_kernel(m + n - 1, params, tol)?;
    KernelMV::from_base(partitions, base)
}
