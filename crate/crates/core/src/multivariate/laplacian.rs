//! The `n`-particle Laplacian on `Λ^(m,n)`.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::spectral::BoundaryParams;

use super::kernel::lattice_weight;
use super::partition::PartitionSet;

/// Sparse rows of `L^(m,n)`: `(column rank, coefficient)` pairs per row.
fn laplacian_rows(partitions: &PartitionSet, params: &BoundaryParams) -> Vec<Vec<(usize, f64)>> {
    let m = partitions.m();
    let n = partitions.n();
    let mut neighbour = vec![0; n];
    partitions
        .iter()
        .map(|lambda| {
            let parts = lambda.parts();
            let mut row = Vec::with_capacity(2 * n + 1);
            let mut diag = 0.0;
            if parts[n - 1] == 0 {
                diag += params.b_minus();
            }
            if parts[0] == m {
                diag += params.b_plus();
            }
            if diag != 0.0 {
                row.push((partitions.rank(lambda).unwrap(), diag));
            }
            for j in 0..n {
                neighbour.copy_from_slice(parts);
                neighbour[j] += 1;
                if let Some(c) = partitions.rank_of(&neighbour) {
                    // (1 − a− δ_{λ_j})^{δ_{n−j}}: only the last part feels a−.
                    let coeff = if j == n - 1 && parts[j] == 0 {
                        1.0 - params.a_minus()
                    } else {
                        1.0
                    };
                    row.push((c, coeff));
                }
                if parts[j] > 0 {
                    neighbour.copy_from_slice(parts);
                    neighbour[j] -= 1;
                    if let Some(c) = partitions.rank_of(&neighbour) {
                        // (1 − a+ δ_{m−λ_j})^{δ_{j−1}}: only the first part feels a+.
                        let coeff = if j == 0 && parts[j] == m {
                            1.0 - params.a_plus()
                        } else {
                            1.0
                        };
                        row.push((c, coeff));
                    }
                }
            }
            row
        })
        .collect()
}

pub fn apply_laplacian_mv(
    f: &[f64],
    partitions: &PartitionSet,
    params: &BoundaryParams,
) -> Result<Vec<f64>> {
    if f.len() != partitions.len() {
        return Err(Error::DimensionMismatch {
            expected: partitions.len(),
            actual: f.len(),
        });
    }
    Ok(laplacian_rows(partitions, params)
        .iter()
        .map(|row| row.iter().map(|&(c, w)| w * f[c]).sum())
        .collect())
}

pub fn laplacian_mv_matrix(partitions: &PartitionSet, params: &BoundaryParams) -> SquareMatrix {
    let mut mat = SquareMatrix::zeros(partitions.len());
    for (r, row) in laplacian_rows(partitions, params).into_iter().enumerate() {
        for (c, w) in row {
            mat.set(r, c, mat.get(r, c) + w);
        }
    }
    mat
}

/// `D^{1/2} L D^{−1/2}` with `D = diag(Δ_λ)`.
pub fn symmetrized_laplacian_mv(
    partitions: &PartitionSet,
    params: &BoundaryParams,
) -> SquareMatrix {
    let l = laplacian_mv_matrix(partitions, params);
    let root: Vec<f64> = partitions
        .iter()
        .map(|p| lattice_weight(p, partitions.m(), params).sqrt())
        .collect();
    SquareMatrix::from_fn(partitions.len(), |r, c| root[r] * l.get(r, c) / root[c])
}
