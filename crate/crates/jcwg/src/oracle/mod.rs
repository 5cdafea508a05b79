//! Brute-force verification paths, independent of the closed-form results:
//! effective-Hamiltonian eigenvalues for the pole pairs, time-domain
//! integration of the coupled matrix-element ODE hierarchy, and full
//! wavepacket scattering on a discretized waveguide in the two-excitation
//! Fock sector.

mod eigen;
mod integrator;
pub mod lattice;
pub mod ode;

pub use eigen::effective_eigenvalues;

use thiserror::Error;

/// Errors from oracle runs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    /// The embedded step-doubling error estimate exceeded its tolerance.
    #[error("integration step too large: local error estimate {estimate:.3e} exceeds {tolerance:.3e}")]
    StepTooLarge { estimate: f64, tolerance: f64 },
    /// Norm left near the scatterer at the end of a run.
    #[error("wavepacket has not cleared the scattering region: residual norm {residual:.3e}")]
    WavepacketNotCleared { residual: f64 },
    /// The mode window cannot resolve the envelope decay length.
    #[error("insufficient resolution: effective position spacing {spacing:.3e} exceeds {limit:.3e}")]
    InsufficientResolution { spacing: f64, limit: f64 },
    /// A configuration invariant is violated.
    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(String),
}
