//! Photon transport in a waveguide side-coupled to a single-mode cavity
//! containing a two-level atom (a Jaynes-Cummings system).
//!
//! The library evaluates the closed-form one- and two-photon scattering
//! matrices of this geometry, the transmitted/reflected two-photon
//! wavefunctions, and the second-order coherence `g2(tau)` of the outgoing
//! light, and ships brute-force time-domain oracles (an ODE integration of
//! the coupled matrix-element hierarchy and a discretized-waveguide
//! wavepacket simulation) that cross-validate every analytic formula.
//!
//! All rates are in units where the waveguide group velocity is 1. The math
//! is generic over the floating-point scalar through [`scalar::Real`];
//! `f64` aliases are exported at the crate root.

pub mod correlations;
pub mod oracle;
pub mod params;
pub mod scalar;
pub mod single_photon;
pub mod two_photon;

pub use correlations::{G2Channel, G2Curve, G2Point, G2Value};
pub use params::{ParamError, PoleSet, SystemParams};
pub use scalar::Real;
pub use single_photon::OnePhotonAmplitudes;
pub use two_photon::{OutputChannel, SMatrixChannel, TwoPhotonSMatrix, TwoPhotonWavefunction};

/// Working-precision parameter set.
pub type SystemParams64 = SystemParams<f64>;
/// Working-precision pole set.
pub type PoleSet64 = PoleSet<f64>;
/// Working-precision single-photon response.
pub type OnePhotonAmplitudes64 = OnePhotonAmplitudes<f64>;
/// Working-precision complex number.
pub type C64 = num_complex::Complex64;
