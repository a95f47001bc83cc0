//! Multivariate transform on bounded partitions via generalized Schur polynomials.

mod cauchy_binet;
mod kernel;
mod laplacian;
mod partition;
mod schur;

pub use cauchy_binet::{cauchy_binet_check, cauchy_binet_pair, CauchyBinetEvaluation};
pub use kernel::{
    build_kernel_mv, energy, lattice_weight, multi_nodes, multi_weights, plancherel_unfactorized,
    KernelMV, MultiWeights,
};
pub use laplacian::{apply_laplacian_mv, laplacian_mv_matrix, symmetrized_laplacian_mv};
pub use partition::{
    enumerate_partitions, lattice_size, Partition, PartitionSet, DEFAULT_SIZE_CAP,
};
pub use schur::{
    alternant, c_coefficient, schur_poly, schur_poly_expansion, schur_poly_expansion_oracle,
    vandermonde, EXPANSION_MAX_N, VANDERMONDE_FLOOR,
};
