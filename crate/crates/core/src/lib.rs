//! Bernstein-Szegő discrete Fourier transforms.
//!
//! A four-parameter family of unitary transforms on the finite grid
//! `{0, …, m}` whose boundary behaviour interpolates between the sixteen
//! classical discrete cosine and sine transforms, together with its
//! multivariate extension on partitions with at most `n` parts bounded by `m`.

pub mod bszego;
pub mod classic;
pub mod error;
pub mod matrix;
pub mod multivariate;
pub mod spectral;
pub mod transform;
pub mod verify;

pub use classic::{classic_kernel, classic_nodes, ClassicKind};
pub use error::{Error, Result};
pub use matrix::SquareMatrix;
pub use multivariate::{build_kernel_mv, enumerate_partitions, KernelMV, Partition, PartitionSet};
pub use spectral::{solve_spectrum, BoundaryParams, SpectralData, DEFAULT_TOL};
pub use transform::{build_kernel, Kernel1D, UnitaryKernel};
pub use verify::{run_verification, Check, VerifyConfig, VerifyReport};
