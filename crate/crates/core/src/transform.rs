//! The unitary kernel `Ψ_{l̂,l} = √(Δ̂_l̂ Δ_l) p_l(ξ̂_l̂)` and its transforms.

use num_complex::Complex64;

use crate::bszego::{p_sequence, weights, WeightData};
use crate::error::Result;
use crate::matrix::SquareMatrix;
use crate::spectral::{solve_spectrum, BoundaryParams, SpectralData};

/// Shared forward/inverse application for any real orthogonal kernel whose
/// rows are indexed by the spectral variable.
pub trait UnitaryKernel {
    fn matrix(&self) -> &SquareMatrix;

    fn dim(&self) -> usize {
        self.matrix().dim()
    }

    /// `f̂(l̂) = Σ_l Ψ_{l̂,l} f(l)`
    fn forward(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.matrix().mul_vec(f)
    }

    /// `f(l) = Σ_l̂ Ψ_{l̂,l} f̂(l̂)`
    fn inverse(&self, f_hat: &[f64]) -> Result<Vec<f64>> {
        self.matrix().mul_transpose_vec(f_hat)
    }

    fn forward_complex(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        self.matrix().mul_vec_complex(f)
    }

    fn inverse_complex(&self, f_hat: &[Complex64]) -> Result<Vec<Complex64>> {
        self.matrix().mul_transpose_vec_complex(f_hat)
    }
}

#[derive(Debug, Clone)]
pub struct Kernel1D {
    spectrum: SpectralData,
    weights: WeightData,
    matrix: SquareMatrix,
}

impl Kernel1D {
    /// Assembles the kernel from an already solved (or deliberately perturbed) spectrum.
    pub fn from_spectrum(spectrum: SpectralData) -> Self {
        let weights = weights(&spectrum);
        let n = spectrum.m() + 1;
        let mut matrix = SquareMatrix::zeros(n);
        for (l_hat, &xi) in spectrum.xi().iter().enumerate() {
            let p = p_sequence(n, xi, spectrum.params());
            for (l, (&pl, &d)) in p.iter().zip(&weights.delta).enumerate() {
                matrix.set(l_hat, l, (weights.delta_hat[l_hat] * d).sqrt() * pl);
            }
        }
        Self {
            spectrum,
            weights,
            matrix,
        }
    }

    pub fn m(&self) -> usize {
        self.spectrum.m()
    }
    pub fn params(&self) -> &BoundaryParams {
        self.spectrum.params()
    }
    pub fn spectrum(&self) -> &SpectralData {
        &self.spectrum
    }
    pub fn weights(&self) -> &WeightData {
        &self.weights
    }
    pub fn get(&self, l_hat: usize, l: usize) -> f64 {
        self.matrix.get(l_hat, l)
    }

    /// Eigenvalues `2 cos ξ̂_l̂` of the Laplacian, in row order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.spectrum.xi().iter().map(|x| 2.0 * x.cos()).collect()
    }
}

impl UnitaryKernel for Kernel1D {
    fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }
}

pub fn build_kernel(m: usize, params: &BoundaryParams, tol: f64) -> Result<Kernel1D> {
    Ok(Kernel1D::from_spectrum(solve_spectrum(m, params, tol)?))
}
