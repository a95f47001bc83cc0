//! Dense square matrices stored row-major, plus the handful of products the
//! transforms need.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Builds from row-major data; `data.len()` must be a perfect square.
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                actual: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim.max(1))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    /// `A x`
    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x.len())?;
        Ok(self
            .rows()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `Aᵀ x`
    pub fn mul_transpose_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x.len())?;
        let mut out = vec![0.0; self.dim];
        for (row, &xr) in self.rows().zip(x) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * xr;
            }
        }
        Ok(out)
    }

    pub fn mul_vec_complex(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let (re, im) = split(x);
        let re = self.mul_vec(&re)?;
        let im = self.mul_vec(&im)?;
        Ok(join(&re, &im))
    }

    pub fn mul_transpose_vec_complex(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        let (re, im) = split(x);
        let re = self.mul_transpose_vec(&re)?;
        let im = self.mul_transpose_vec(&im)?;
        Ok(join(&re, &im))
    }

    /// `max |(A Aᵀ − I)_{rc}|`
    pub fn row_gram_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                let dot: f64 = self
                    .row(r)
                    .iter()
                    .zip(self.row(c))
                    .map(|(a, b)| a * b)
                    .sum();
                let target = if r == c { 1.0 } else { 0.0 };
                worst = nan_max(worst, (dot - target).abs());
            }
        }
        worst
    }

    /// `max |(Aᵀ A − I)_{rc}|`
    pub fn column_gram_residual(&self) -> f64 {
        self.transpose().row_gram_residual()
    }

    /// Max-abs deviation from a diagonal matrix with the given diagonal.
    pub fn diagonal_residual(&self, diag: &[f64]) -> f64 {
        assert_eq!(diag.len(), self.dim);
        let mut worst: f64 = 0.0;
        for (r, &d) in diag.iter().enumerate() {
            for c in 0..self.dim {
                let target = if r == c { d } else { 0.0 };
                worst = nan_max(worst, (self.get(r, c) - target).abs());
            }
        }
        worst
    }

    pub fn symmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for c in r + 1..self.dim {
                worst = nan_max(worst, (self.get(r, c) - self.get(c, r)).abs());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |acc, (a, b)| nan_max(acc, (a - b).abs()))
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: len,
            });
        }
        Ok(())
    }
}

/// Determinant of a small dense matrix given row-major (LU with partial pivoting).
pub fn determinant(dim: usize, row_major: &[f64]) -> f64 {
    debug_assert_eq!(row_major.len(), dim * dim);
    match dim {
        0 => 1.0,
        1 => row_major[0],
        _ => DMatrix::from_row_slice(dim, dim, row_major)
            .lu()
            .determinant(),
    }
}

/// Max that propagates NaN, so a NaN residual can never read as a pass.
pub fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

pub fn max_abs(xs: &[f64]) -> f64 {
    xs.iter().fold(0.0, |acc, x| nan_max(acc, x.abs()))
}

fn split(x: &[Complex64]) -> (Vec<f64>, Vec<f64>) {
    (
        x.iter().map(|z| z.re).collect(),
        x.iter().map(|z| z.im).collect(),
    )
}

fn join(re: &[f64], im: &[f64]) -> Vec<Complex64> {
    re.iter()
        .zip(im)
        .map(|(&r, &i)| Complex64::new(r, i))
        .collect()
}
