//! Shared numerical kernels: adaptive Gauss-Kronrod quadrature, the small
//! dense Lyapunov solve, and 4×4 eigenvalues.

pub mod lyapunov;
pub mod quadrature;

pub use lyapunov::solve_lyapunov_4;
pub use quadrature::{integrate_adaptive, QuadratureResult};

use nalgebra::{Matrix4, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Eigenvalues of a real 4×4 matrix via Schur decomposition.
pub fn eigenvalues_4(a: &Matrix4<f64>) -> Result<[Complex64; 4]> {
    let schur = Schur::try_new(*a, 1e-14, 0).ok_or(Error::EigenFailure)?;
    let ev = schur.complex_eigenvalues();
    Ok([ev[0], ev[1], ev[2], ev[3]])
}
