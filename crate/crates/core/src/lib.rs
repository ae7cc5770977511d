//! Green functions, spectra, and renormalized kernels of the two-dimensional
//! Rashba and Dresselhaus spin-orbit Hamiltonians, with and without a uniform
//! perpendicular magnetic field.
//!
//! Everything is dimensionless: energies in units of ħ²/2m* (per chosen length
//! unit), lengths in the chosen unit, the field through the reduced parameter
//! `b`. The Hamiltonian acted on is
//!
//! ```text
//! H = K²σ₀ + 2κ·U + γ b σ_z,      K = −i∇ − a,   a = (−b y/2, b x/2)
//! U_R = σ_x K_y − σ_y K_x,        U_D = σ_y K_y − σ_x K_x
//! ```
//!
//! with the standard symmetric gauge, so that [K_x, K_y] = +i b. All square
//! roots and logarithms are principal (cut along the non-positive reals).

pub mod cli;
pub mod green;
pub mod model;
pub mod renorm;
pub mod specfun;
pub mod spectrum;
pub mod verify;

use num_complex::Complex64;

/// Crate-wide error type. The CLI maps these onto process exit codes:
/// accuracy failures exit 3, everything else here exits 2.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("wrong case: {0}")]
    WrongCase(String),
    #[error("branch cut: {0}")]
    BranchCut(String),
    #[error("spectrum: {0}")]
    Spectrum(String),
    #[error("pole at {location}: {context}")]
    Pole { location: Complex64, context: String },
    #[error("singularity: {0}")]
    Singularity(String),
    #[error("accuracy: {context} (achieved {achieved:e}, requested {requested:e})")]
    Accuracy {
        context: String,
        achieved: f64,
        requested: f64,
    },
    #[error("geometry: {0}")]
    Geometry(String),
}

impl Error {
    /// Process exit code the CLI assigns to this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Accuracy { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
