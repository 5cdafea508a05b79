//! Second-order coherence of the transmitted and reflected photon pair for a
//! degenerate two-photon planewave input.
//!
//! `g2(tau)` is the coincidence rate at detector separation `tau` normalized
//! by its `tau -> infinity` limit, which is evaluated analytically (the
//! envelope contribution simply dropped) instead of sampling a large `tau`.

use crate::params::SystemParams;
use crate::scalar::{re, C, Real};
use crate::single_photon::amplitudes;
use crate::two_photon::{Envelope, TwoPhotonError};
use thiserror::Error;

/// Coefficient magnitude below which the normalizing single-photon amplitude
/// is treated as zero and `g2` reported as divergent.
pub const DIVERGENCE_THRESHOLD: f64 = 1e-12;

/// Detection channel for photon statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum G2Channel {
    /// Both photons transmitted (right-moving pair).
    Transmitted,
    /// Both photons reflected (left-moving pair).
    Reflected,
}

/// Errors from coherence evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorrelationError {
    /// The channel's single-photon coefficient vanishes at `E/2`, so the
    /// normalized coincidence rate diverges (super-poissonian peak).
    #[error("{channel:?} single-photon coefficient vanishes at k = E/2 (|coeff| = {magnitude})")]
    VanishingDenominator { channel: G2Channel, magnitude: f64 },
    #[error(transparent)]
    TwoPhoton(#[from] TwoPhotonError),
    #[error("delay grid is empty")]
    EmptyTauGrid,
}

/// A `g2(0)` spectrum sample: finite value or tagged divergence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum G2Value<T: Real> {
    Finite(T),
    /// The channel coefficient vanishes here; rendered as a gap downstream,
    /// never clamped to a number.
    Divergent,
}

impl<T: Real> G2Value<T> {
    pub fn finite(&self) -> Option<T> {
        match self {
            G2Value::Finite(v) => Some(*v),
            G2Value::Divergent => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, G2Value::Divergent)
    }
}

/// One sample of a `g2(0)` spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct G2Point<T: Real> {
    /// Photon energy `E/2` of the degenerate pair.
    pub half_energy: T,
    pub value: G2Value<T>,
}

/// `g2(tau)` sampled on a delay grid.
///
/// `g2(tau) = g2(-tau)` for the stationary two-photon state, so only
/// non-negative delays are stored; the tail approaches 1.
#[derive(Debug, Clone, PartialEq)]
pub struct G2Curve<T: Real> {
    pub channel: G2Channel,
    /// Total input energy (each photon carries `E/2`).
    pub total_energy: T,
    pub tau: Vec<T>,
    pub values: Vec<T>,
}

struct G2Eval<T: Real> {
    direct: C<T>,
    env: Envelope<T>,
}

impl<T: Real> G2Eval<T> {
    fn new(
        params: &SystemParams<T>,
        channel: G2Channel,
        total_energy: T,
    ) -> Result<Self, CorrelationError> {
        let k = total_energy * T::lit(0.5);
        let a = amplitudes(params, k).map_err(TwoPhotonError::from)?;
        let coeff = match channel {
            G2Channel::Transmitted => a.t_bar,
            G2Channel::Reflected => a.r_bar,
        };
        if coeff.norm() < T::lit(DIVERGENCE_THRESHOLD) {
            return Err(CorrelationError::VanishingDenominator {
                channel,
                magnitude: coeff.norm().to_f64().unwrap_or(0.0),
            });
        }
        // Direct coincidence amplitude density: coeff^2 * S_{k,k}(y, y) with
        // the centre-of-mass phase stripped.
        let direct = coeff * coeff * re(T::lit(2.0).sqrt() / (T::lit(2.0) * T::PI()));
        let env = Envelope::new(params, k, k)?;
        Ok(Self { direct, env })
    }

    fn at(&self, tau: T) -> T {
        let h = self.env.reduced(tau.abs());
        (self.direct + h).norm_sqr() / self.direct.norm_sqr()
    }
}

/// Normalized second-order coherence at delay `tau` for a degenerate pair of
/// total energy `total_energy`.
pub fn g2<T: Real>(
    params: &SystemParams<T>,
    channel: G2Channel,
    total_energy: T,
    tau: T,
) -> Result<T, CorrelationError> {
    Ok(G2Eval::new(params, channel, total_energy)?.at(tau))
}

/// `g2(0)` versus photon energy `E/2`, with divergences tagged rather than
/// clamped.
pub fn g2_zero_spectrum<T: Real>(
    params: &SystemParams<T>,
    channel: G2Channel,
    half_energy_grid: &[T],
) -> Result<Vec<G2Point<T>>, CorrelationError> {
    half_energy_grid
        .iter()
        .map(|&half| {
            let value = match G2Eval::new(params, channel, half + half) {
                Ok(eval) => G2Value::Finite(eval.at(T::zero())),
                Err(CorrelationError::VanishingDenominator { .. }) => G2Value::Divergent,
                Err(other) => return Err(other),
            };
            Ok(G2Point {
                half_energy: half,
                value,
            })
        })
        .collect()
}

/// `g2(tau)` sampled on a non-negative delay grid.
pub fn g2_tau_curve<T: Real>(
    params: &SystemParams<T>,
    channel: G2Channel,
    total_energy: T,
    tau_grid: &[T],
) -> Result<G2Curve<T>, CorrelationError> {
    if tau_grid.is_empty() {
        return Err(CorrelationError::EmptyTauGrid);
    }
    let eval = G2Eval::new(params, channel, total_energy)?;
    Ok(G2Curve {
        channel,
        total_energy,
        tau: tau_grid.to_vec(),
        values: tau_grid.iter().map(|&tau| eval.at(tau)).collect(),
    })
}

/// Generalization hook: coherence for a non-degenerate input pair
/// `(k1, k2)`.
///
/// The direct coincidence amplitude oscillates as `cos((k1 - k2) tau / 2)`,
/// so the large-delay limit is normalized by its delay average (`1/2` of the
/// peak for distinct momenta, continuous with the degenerate case at
/// `k1 = k2`).
pub fn g2_nondegenerate<T: Real>(
    params: &SystemParams<T>,
    channel: G2Channel,
    k1: T,
    k2: T,
    tau: T,
) -> Result<T, CorrelationError> {
    let a1 = amplitudes(params, k1).map_err(TwoPhotonError::from)?;
    let a2 = amplitudes(params, k2).map_err(TwoPhotonError::from)?;
    let (c1, c2) = match channel {
        G2Channel::Transmitted => (a1.t_bar, a2.t_bar),
        G2Channel::Reflected => (a1.r_bar, a2.r_bar),
    };
    let pair = c1 * c2;
    if pair.norm() < T::lit(DIVERGENCE_THRESHOLD) {
        return Err(CorrelationError::VanishingDenominator {
            channel,
            magnitude: pair.norm().to_f64().unwrap_or(0.0),
        });
    }
    let delta = (k1 - k2) * T::lit(0.5);
    let scale = re(T::lit(2.0).sqrt() / (T::lit(2.0) * T::PI()));
    let direct = pair * scale * re((delta * tau).cos());
    let h = Envelope::new(params, k1, k2)?.reduced(tau.abs());
    let mean_sq = if delta == T::zero() {
        T::one()
    } else {
        T::lit(0.5)
    };
    Ok((direct + h).norm_sqr() / ((pair * scale).norm_sqr() * mean_sq))
}
