//! Two-photon scattering: the energy-conserving fluorescent term, structured
//! S-matrices for the one-mode and two-mode pictures, the bound-state envelope
//! of the outgoing pair, and full output wavefunctions for a two-photon
//! planewave input.
//!
//! Delta functions are never materialized numerically: direct (uncorrelated)
//! terms carry their momentum pairings structurally, and the correlated term
//! is a density attached to overall energy conservation.

use crate::params::SystemParams;
use crate::scalar::{i, re, C, Real};
use crate::single_photon::{amplitudes, SinglePhotonError};
use thiserror::Error;

/// Errors from two-photon evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TwoPhotonError {
    /// A single-photon response denominator vanished at one of the momenta.
    #[error(transparent)]
    SinglePhoton(#[from] SinglePhotonError),
    /// The two-excitation pole denominator vanished (impossible for real
    /// total energy with `kappa > 0`).
    #[error("two-excitation denominator vanishes at total energy {0}")]
    DegenerateDenominator(String),
}

/// Scattering channel of a two-photon S-matrix element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SMatrixChannel {
    /// One-mode (even-channel) element.
    EE,
    /// Both photons transmitted.
    RR,
    /// Both photons reflected.
    LL,
    /// One transmitted, one reflected.
    RL,
}

/// Output channel of the scattered two-photon state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputChannel {
    /// Both photons right-moving (transmitted).
    RR,
    /// Both photons left-moving (reflected).
    LL,
    /// One right- and one left-moving photon.
    RL,
}

/// `delta(p_slot - sign * k_input)`: one momentum-conservation factor of a
/// direct pairing, kept structural.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MomentumDelta {
    /// Which input momentum (0 for `k1`, 1 for `k2`) this output pairs with.
    pub input: u8,
    /// +1 for transmitted-type (`p = k`), -1 for reflected-type (`p = -k`).
    pub sign: i8,
}

/// One uncorrelated pairing: a coefficient times two momentum deltas, one per
/// output slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectPairing<T: Real> {
    pub coefficient: C<T>,
    /// `deltas[j]` constrains output momentum `p_{j+1}`.
    pub deltas: [MomentumDelta; 2],
}

impl<T: Real> DirectPairing<T> {
    /// Whether `(p1, p2)` lies on this pairing's delta support for the stored
    /// input momenta, within `tol`.
    pub fn supports(&self, momenta_in: (T, T), momenta_out: (T, T), tol: T) -> bool {
        let k = [momenta_in.0, momenta_in.1];
        let p = [momenta_out.0, momenta_out.1];
        self.deltas.iter().zip(p).all(|(d, pj)| {
            let target = if d.sign >= 0 {
                k[d.input as usize]
            } else {
                -k[d.input as usize]
            };
            (pj - target).abs() <= tol
        })
    }
}

/// Structured two-photon S-matrix element.
///
/// The element reads
/// `sum_pairings coefficient * delta * delta + correlated * delta(E_o - E_i)`;
/// `correlated` is the full fluorescent density `B` in the `EE` channel and
/// `B/4` in every two-mode channel. `correlated` is symmetric separately
/// under `k1 <-> k2` and `p1 <-> p2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonSMatrix<T: Real> {
    pub channel: SMatrixChannel,
    pub momenta_in: (T, T),
    pub momenta_out: (T, T),
    pub direct: [DirectPairing<T>; 2],
    pub correlated: C<T>,
}

impl<T: Real> TwoPhotonSMatrix<T> {
    /// Total incident energy `k1 + k2`.
    pub fn energy_in(&self) -> T {
        self.momenta_in.0 + self.momenta_in.1
    }

    /// Total outgoing energy `p1 + p2` (signed momenta as labelled).
    pub fn energy_out(&self) -> T {
        self.momenta_out.0 + self.momenta_out.1
    }
}

/// Two-photon interaction kernel entering the fluorescent term.
///
/// Symmetric in `(k1, k2)` and proportional to `g`, so it vanishes for a
/// decoupled atom.
pub fn kernel_f<T: Real>(params: &SystemParams<T>, k1: T, k2: T) -> Result<C<T>, TwoPhotonError> {
    let a1 = amplitudes(params, k1)?;
    let a2 = amplitudes(params, k2)?;
    let e_i = k1 + k2;
    let (l2p, l2m) = params.two_excitation_poles();
    let denom = (re(e_i) - l2p) * (re(e_i) - l2m);
    if denom.norm() == T::zero() {
        return Err(TwoPhotonError::DegenerateDenominator(format!("{e_i}")));
    }
    let two_g = re(T::lit(2.0) * params.g);
    let drive = re(e_i - T::lit(2.0) * params.omega) + i::<T>() * re(params.kappa);
    let numer = two_g * (a1.s_c + a2.s_c) + drive * (a1.s_a + a2.s_a);
    let pref = i::<T>() * re(params.kappa.sqrt() * params.g / T::PI());
    Ok(pref * numer / denom)
}

/// Fluorescent term `B = s_a(p1) * s_a(p2) * F(k1, k2)`.
///
/// Physically meaningful on the energy shell `p1 + p2 = k1 + k2`, but well
/// defined off shell as written.
pub fn fluorescent_b<T: Real>(
    params: &SystemParams<T>,
    p1: T,
    p2: T,
    k1: T,
    k2: T,
) -> Result<C<T>, TwoPhotonError> {
    let f = kernel_f(params, k1, k2)?;
    let out1 = amplitudes(params, p1)?;
    let out2 = amplitudes(params, p2)?;
    Ok(out1.s_a * out2.s_a * f)
}

const TRANSMIT: i8 = 1;
const REFLECT: i8 = -1;

/// One-mode (even-channel) two-photon S-matrix element.
///
/// Direct part: `t_{p1} t_{p2}` on both input-output pairings; correlated
/// part: the full fluorescent density `B`.
pub fn smatrix_ee<T: Real>(
    params: &SystemParams<T>,
    p1: T,
    p2: T,
    k1: T,
    k2: T,
) -> Result<TwoPhotonSMatrix<T>, TwoPhotonError> {
    let tp1 = amplitudes(params, p1)?.t;
    let tp2 = amplitudes(params, p2)?.t;
    let coeff = tp1 * tp2;
    let b = fluorescent_b(params, p1, p2, k1, k2)?;
    Ok(TwoPhotonSMatrix {
        channel: SMatrixChannel::EE,
        momenta_in: (k1, k2),
        momenta_out: (p1, p2),
        direct: [
            DirectPairing {
                coefficient: coeff,
                deltas: [
                    MomentumDelta { input: 0, sign: TRANSMIT },
                    MomentumDelta { input: 1, sign: TRANSMIT },
                ],
            },
            DirectPairing {
                coefficient: coeff,
                deltas: [
                    MomentumDelta { input: 1, sign: TRANSMIT },
                    MomentumDelta { input: 0, sign: TRANSMIT },
                ],
            },
        ],
        correlated: b,
    })
}

/// Two-mode two-photon S-matrix element for incident right-movers.
///
/// Every channel shares the `B/4` correlated density; the direct pairings
/// carry `t_bar`/`r_bar` products of the input momenta. In the `RL` channel
/// the two pairings carry the two mixed products `t_bar(k1) r_bar(k2)` and
/// `t_bar(k2) r_bar(k1)`.
pub fn smatrix_two_mode<T: Real>(
    params: &SystemParams<T>,
    channel: OutputChannel,
    p1: T,
    p2: T,
    k1: T,
    k2: T,
) -> Result<TwoPhotonSMatrix<T>, TwoPhotonError> {
    let in1 = amplitudes(params, k1)?;
    let in2 = amplitudes(params, k2)?;
    let b4 = fluorescent_b(params, p1, p2, k1, k2)? * re(T::lit(0.25));
    let (channel, direct) = match channel {
        OutputChannel::RR => {
            let coeff = in1.t_bar * in2.t_bar;
            (
                SMatrixChannel::RR,
                [
                    DirectPairing {
                        coefficient: coeff,
                        deltas: [
                            MomentumDelta { input: 0, sign: TRANSMIT },
                            MomentumDelta { input: 1, sign: TRANSMIT },
                        ],
                    },
                    DirectPairing {
                        coefficient: coeff,
                        deltas: [
                            MomentumDelta { input: 1, sign: TRANSMIT },
                            MomentumDelta { input: 0, sign: TRANSMIT },
                        ],
                    },
                ],
            )
        }
        OutputChannel::LL => {
            let coeff = in1.r_bar * in2.r_bar;
            (
                SMatrixChannel::LL,
                [
                    DirectPairing {
                        coefficient: coeff,
                        deltas: [
                            MomentumDelta { input: 0, sign: REFLECT },
                            MomentumDelta { input: 1, sign: REFLECT },
                        ],
                    },
                    DirectPairing {
                        coefficient: coeff,
                        deltas: [
                            MomentumDelta { input: 1, sign: REFLECT },
                            MomentumDelta { input: 0, sign: REFLECT },
                        ],
                    },
                ],
            )
        }
        OutputChannel::RL => (
            SMatrixChannel::RL,
            [
                DirectPairing {
                    coefficient: in1.t_bar * in2.r_bar,
                    deltas: [
                        MomentumDelta { input: 0, sign: TRANSMIT },
                        MomentumDelta { input: 1, sign: REFLECT },
                    ],
                },
                DirectPairing {
                    coefficient: in2.t_bar * in1.r_bar,
                    deltas: [
                        MomentumDelta { input: 1, sign: TRANSMIT },
                        MomentumDelta { input: 0, sign: REFLECT },
                    ],
                },
            ],
        ),
    };
    Ok(TwoPhotonSMatrix {
        channel,
        momenta_in: (k1, k2),
        momenta_out: (p1, p2),
        direct,
        correlated: b4,
    })
}

/// Absolute guard below which the removable `E_i -> lambda_+ + lambda_-`
/// structure of the envelope prefactor switches to a series evaluation.
const ENERGY_SUM_GUARD: f64 = 1e-9;

/// Bound-state envelope evaluator, shared by wavefunctions and photon
/// statistics. Precomputes everything that does not depend on position.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Envelope<T: Real> {
    /// Total input energy `k1 + k2`.
    pub e_i: T,
    lambda_p: C<T>,
    lambda_m: C<T>,
    /// `i g^2 kappa / (4 sqrt(2)) * F(k1, k2)`.
    coeff: C<T>,
    degenerate: bool,
}

impl<T: Real> Envelope<T> {
    pub fn new(params: &SystemParams<T>, k1: T, k2: T) -> Result<Self, TwoPhotonError> {
        let f = kernel_f(params, k1, k2)?;
        let (lambda_p, lambda_m) = params.one_excitation_poles();
        let pref = i::<T>()
            * re(params.g * params.g * params.kappa / (T::lit(4.0) * T::lit(2.0).sqrt()));
        Ok(Self {
            e_i: k1 + k2,
            lambda_p,
            lambda_m,
            coeff: pref * f,
            degenerate: params.is_degenerate(),
        })
    }

    /// `exp(i(E - 2 lambda) s / 2) / (E - 2 lambda)`.
    fn pole_term(&self, lambda: C<T>, s: T) -> C<T> {
        let v = re(self.e_i) - lambda * re(T::lit(2.0));
        (i::<T>() * v * re(s * T::lit(0.5))).exp() / v
    }

    /// Derivative of `pole_term` with respect to `lambda`.
    fn pole_term_deriv(&self, lambda: C<T>, s: T) -> C<T> {
        let v = re(self.e_i) - lambda * re(T::lit(2.0));
        let phase = (i::<T>() * v * re(s * T::lit(0.5))).exp();
        // d/d lambda [e^{ivs/2}/v] with dv/d lambda = -2.
        phase * (re(T::lit(2.0)) - i::<T>() * re(s) * v) / (v * v)
    }

    /// Envelope with the centre-of-mass phase stripped: `H * e^{-i E x_c}`
    /// as a function of the photon separation `s = |x1 - x2| >= 0`.
    pub fn reduced(&self, s: T) -> C<T> {
        if self.coeff.norm() == T::zero() {
            return C::new(T::zero(), T::zero());
        }
        let delta = self.lambda_p - self.lambda_m;
        let u = re(self.e_i) - self.lambda_p - self.lambda_m;
        if self.degenerate {
            // Confluent limit: [pole_term(l_m) - pole_term(l_p)]/delta ->
            // -d(pole_term)/d lambda at the midpoint.
            let mid = (self.lambda_p + self.lambda_m) * re(T::lit(0.5));
            return self.coeff * (-self.pole_term_deriv(mid, s)) / u;
        }
        if u.norm() < T::lit(ENERGY_SUM_GUARD) {
            // Raw evaluation of bracket/(delta*u) loses all significant digits
            // here; expand the bracket in u to second order and divide term
            // by term.
            let psi = |v: C<T>| (i::<T>() * v * re(s * T::lit(0.5))).exp() / v;
            let dpsi = |v: C<T>| {
                let phase = (i::<T>() * v * re(s * T::lit(0.5))).exp();
                phase * (i::<T>() * re(s * T::lit(0.5)) * v - re(T::one())) / (v * v)
            };
            let ddpsi = |v: C<T>| {
                let phase = (i::<T>() * v * re(s * T::lit(0.5))).exp();
                let is2 = i::<T>() * re(s * T::lit(0.5));
                phase * (is2 * is2 * v * v - is2 * v * re(T::lit(2.0)) + re(T::lit(2.0)))
                    / (v * v * v)
            };
            let b0 = psi(delta) - psi(-delta);
            let b1 = dpsi(delta) - dpsi(-delta);
            let b2 = (ddpsi(delta) - ddpsi(-delta)) * re(T::lit(0.5));
            return self.coeff * (b0 / u + b1 + b2 * u) / delta;
        }
        let bracket = self.pole_term(self.lambda_m, s) - self.pole_term(self.lambda_p, s);
        self.coeff * bracket / (delta * u)
    }

    /// Full envelope `H(x1, x2)`, symmetric under `x1 <-> x2`.
    pub fn eval(&self, x1: T, x2: T) -> C<T> {
        let xc = (x1 + x2) * T::lit(0.5);
        let s = (x1 - x2).abs();
        C::cis(self.e_i * xc) * self.reduced(s)
    }
}

/// Two-photon bound-state envelope `H(x1, x2)` for input momenta `(k1, k2)`.
///
/// Near the exceptional point the pole pair coalesces and the confluent limit
/// of the two-pole bracket is used automatically.
pub fn envelope_h<T: Real>(
    params: &SystemParams<T>,
    k1: T,
    k2: T,
    x1: T,
    x2: T,
) -> Result<C<T>, TwoPhotonError> {
    Ok(Envelope::new(params, k1, k2)?.eval(x1, x2))
}

/// Symmetrized two-photon planewave
/// `S_{k1,k2}(x1, x2) = [e^{i(k1 x1 + k2 x2)} + e^{i(k2 x1 + k1 x2)}] / (sqrt(2) 2 pi)`.
pub fn planewave_sym<T: Real>(k1: T, k2: T, x1: T, x2: T) -> C<T> {
    let norm = T::one() / (T::lit(2.0).sqrt() * T::lit(2.0) * T::PI());
    (C::cis(k1 * x1 + k2 * x2) + C::cis(k2 * x1 + k1 * x2)) * re(norm)
}

/// Scattered two-photon state in one output channel, as a position-space
/// amplitude evaluator.
///
/// Conventions: the `RR` and `LL` amplitudes are densities with respect to
/// `a_R^+(x1) a_R^+(x2) / sqrt(2)` and `a_L^+(-x1) a_L^+(-x2) / sqrt(2)`
/// respectively (left-movers live at positions `(-x1, -x2)`); the `RL`
/// amplitude is a density with respect to `a_R^+(x1) a_L^+(-x2)`. Evaluators
/// are immutable and safe to share across threads.
#[derive(Debug, Clone, Copy)]
pub struct TwoPhotonWavefunction<T: Real> {
    pub channel: OutputChannel,
    pub k1: T,
    pub k2: T,
    t_bar1: C<T>,
    t_bar2: C<T>,
    r_bar1: C<T>,
    r_bar2: C<T>,
    env: Envelope<T>,
}

impl<T: Real> TwoPhotonWavefunction<T> {
    /// Total input energy `k1 + k2`.
    pub fn total_energy(&self) -> T {
        self.k1 + self.k2
    }

    /// Input momentum half-difference `(k1 - k2)/2`.
    pub fn delta_i(&self) -> T {
        (self.k1 - self.k2) * T::lit(0.5)
    }

    /// Centre-of-mass coordinate `(x1 + x2)/2`.
    pub fn center_of_mass(&self, x1: T, x2: T) -> T {
        (x1 + x2) * T::lit(0.5)
    }

    /// Relative coordinate `x1 - x2`.
    pub fn relative(&self, x1: T, x2: T) -> T {
        x1 - x2
    }

    /// Position-space amplitude of the channel.
    pub fn amplitude(&self, x1: T, x2: T) -> C<T> {
        let h = self.env.eval(x1, x2);
        match self.channel {
            OutputChannel::RR => {
                self.t_bar1 * self.t_bar2 * planewave_sym(self.k1, self.k2, x1, x2) + h
            }
            OutputChannel::LL => {
                self.r_bar1 * self.r_bar2 * planewave_sym(self.k1, self.k2, x1, x2) + h
            }
            OutputChannel::RL => {
                let norm = re(T::one() / (T::lit(2.0) * T::PI()));
                let direct = (self.t_bar1 * self.r_bar2 * C::cis(self.k1 * x1 + self.k2 * x2)
                    + self.t_bar2 * self.r_bar1 * C::cis(self.k2 * x1 + self.k1 * x2))
                    * norm;
                direct + h * re(T::lit(2.0).sqrt())
            }
        }
    }
}

/// Scattered state of an incident right-moving two-photon planewave, resolved
/// into one output channel.
pub fn output_wavefunction<T: Real>(
    params: &SystemParams<T>,
    channel: OutputChannel,
    k1: T,
    k2: T,
) -> Result<TwoPhotonWavefunction<T>, TwoPhotonError> {
    let a1 = amplitudes(params, k1)?;
    let a2 = amplitudes(params, k2)?;
    Ok(TwoPhotonWavefunction {
        channel,
        k1,
        k2,
        t_bar1: a1.t_bar,
        t_bar2: a2.t_bar,
        r_bar1: a1.r_bar,
        r_bar2: a2.r_bar,
        env: Envelope::new(params, k1, k2)?,
    })
}

/// Weight of the even-even (and odd-odd) subspace in the right-right
/// decomposition.
pub fn even_even_weight<T: Real>() -> T {
    T::lit(0.5)
}

/// Weight of each mixed even-odd subspace in the right-right decomposition.
pub fn even_odd_weight<T: Real>() -> T {
    T::one() / (T::lit(2.0) * T::lit(2.0).sqrt())
}

/// Channel-resolved scattered state assembled from the parity (even/odd)
/// decomposition of the incident right-moving pair.
///
/// The incident state splits into even-even, odd-odd and two mixed subspaces
/// with weights `1/2`, `1/2`, `1/(2 sqrt(2))`, `1/(2 sqrt(2))`; only even
/// photons scatter. Recombining the four scattered pieces must reproduce
/// [`output_wavefunction`] exactly, which is used as an internal consistency
/// check of the channel formulas.
#[derive(Debug, Clone, Copy)]
pub struct EvenOddComposition<T: Real> {
    pub k1: T,
    pub k2: T,
    t1: C<T>,
    t2: C<T>,
    env: Envelope<T>,
}

impl<T: Real> EvenOddComposition<T> {
    /// Scattered even-even amplitude (its own weight included).
    fn psi_ee(&self, x1: T, x2: T) -> C<T> {
        planewave_sym(self.k1, self.k2, x1, x2) * self.t1 * self.t2 * re(T::lit(0.5))
            + self.env.eval(x1, x2) * re(T::lit(2.0))
    }

    /// Odd-odd amplitude: scatters to itself (weight included).
    pub fn psi_oo(&self, x1: T, x2: T) -> C<T> {
        planewave_sym(self.k1, self.k2, x1, x2) * re(T::lit(0.5))
    }

    /// Mixed subspace with the even photon at `x1` (weight included).
    fn psi_eo(&self, x1: T, x2: T) -> C<T> {
        let norm = re(even_odd_weight::<T>() / (T::lit(2.0).sqrt() * T::lit(2.0) * T::PI()));
        (self.t1 * C::cis(self.k1 * x1 + self.k2 * x2)
            + self.t2 * C::cis(self.k2 * x1 + self.k1 * x2))
            * norm
    }

    /// Mixed subspace with the even photon at `x2` (weight included).
    fn psi_oe(&self, x1: T, x2: T) -> C<T> {
        let norm = re(even_odd_weight::<T>() / (T::lit(2.0).sqrt() * T::lit(2.0) * T::PI()));
        (self.t2 * C::cis(self.k1 * x1 + self.k2 * x2)
            + self.t1 * C::cis(self.k2 * x1 + self.k1 * x2))
            * norm
    }

    /// Channel amplitude after recombining parity subspaces into right/left
    /// movers; same conventions as [`TwoPhotonWavefunction::amplitude`].
    pub fn amplitude(&self, channel: OutputChannel, x1: T, x2: T) -> C<T> {
        let ee = self.psi_ee(x1, x2);
        let oo = self.psi_oo(x1, x2);
        let eo = self.psi_eo(x1, x2);
        let oe = self.psi_oe(x1, x2);
        let half = re(T::lit(0.5));
        let inv_sqrt2 = re(T::one() / T::lit(2.0).sqrt());
        match channel {
            OutputChannel::RR => (ee + oo) * half + (eo + oe) * inv_sqrt2,
            OutputChannel::LL => (ee + oo) * half - (eo + oe) * inv_sqrt2,
            OutputChannel::RL => (ee - oo) * inv_sqrt2 * re(T::lit(2.0)) * half + (oe - eo),
        }
    }
}

/// Build the parity-decomposition path for input momenta `(k1, k2)`.
pub fn compose_from_even_odd<T: Real>(
    params: &SystemParams<T>,
    k1: T,
    k2: T,
) -> Result<EvenOddComposition<T>, TwoPhotonError> {
    let a1 = amplitudes(params, k1)?;
    let a2 = amplitudes(params, k2)?;
    Ok(EvenOddComposition {
        k1,
        k2,
        t1: a1.t,
        t2: a2.t,
        env: Envelope::new(params, k1, k2)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    type P = SystemParams<f64>;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn canonical() -> P {
        P::new(0.0, 0.0, 1.0, 2.0).unwrap()
    }

    #[test]
    fn kernel_at_resonance() {
        let f = kernel_f(&canonical(), 0.0, 0.0).unwrap();
        assert!(close(f, Complex64::new(-2.0 / PI, 0.0), 1e-15));
    }

    #[test]
    fn kernel_vanishes_without_coupling() {
        let p = P::new(0.3, -0.2, 0.0, 1.5).unwrap();
        for (k1, k2) in [(0.0, 0.0), (0.7, -1.1), (2.0, 3.0)] {
            let f = kernel_f(&p, k1, k2).unwrap();
            assert_eq!(f, Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn kernel_symmetric_in_momenta() {
        let p = P::new(0.4, 0.1, 0.9, 1.2).unwrap();
        let f12 = kernel_f(&p, 0.37, -0.81).unwrap();
        let f21 = kernel_f(&p, -0.81, 0.37).unwrap();
        assert!(close(f12, f21, 1e-15 * f12.norm().max(1.0)));
    }

    #[test]
    fn fluorescent_term_at_resonance() {
        let b = fluorescent_b(&canonical(), 0.0, 0.0, 0.0, 0.0).unwrap();
        assert!(close(b, Complex64::new(-4.0 / PI, 0.0), 1e-14));
    }

    #[test]
    fn fluorescent_term_symmetries() {
        let p = P::new(0.2, -0.1, 1.1, 0.8).unwrap();
        let (p1, p2, k1, k2) = (0.3, -0.2, 0.45, -0.35);
        let b = fluorescent_b(&p, p1, p2, k1, k2).unwrap();
        let b_swap_out = fluorescent_b(&p, p2, p1, k1, k2).unwrap();
        let b_swap_in = fluorescent_b(&p, p1, p2, k2, k1).unwrap();
        assert!(close(b, b_swap_out, 1e-15 * b.norm().max(1.0)));
        assert!(close(b, b_swap_in, 1e-15 * b.norm().max(1.0)));
    }

    #[test]
    fn smatrix_ee_on_shell_resonance() {
        let s = smatrix_ee(&canonical(), 0.0, 0.0, 0.0, 0.0).unwrap();
        assert!(close(s.direct[0].coefficient, Complex64::new(1.0, 0.0), 1e-14));
        assert!(close(s.correlated, Complex64::new(-4.0 / PI, 0.0), 1e-14));
        assert_eq!(s.energy_in(), s.energy_out());
    }

    #[test]
    fn smatrix_ee_decoupled_atom_has_no_correlations() {
        let p = P::new(0.0, 0.0, 0.0, 2.0).unwrap();
        let s = smatrix_ee(&p, 0.5, -0.5, 0.4, -0.4).unwrap();
        assert_eq!(s.correlated, Complex64::new(0.0, 0.0));
        let t1 = amplitudes(&p, 0.5).unwrap().t;
        let t2 = amplitudes(&p, -0.5).unwrap().t;
        assert!(close(s.direct[0].coefficient, t1 * t2, 1e-15));
    }

    #[test]
    fn two_mode_channels_share_quarter_fluorescent_weight() {
        let p = P::new(0.0, 0.0, 2.0, 1.0).unwrap();
        let (p1, p2, k1, k2) = (0.6, -0.1, 0.3, 0.2);
        let b = fluorescent_b(&p, p1, p2, k1, k2).unwrap();
        for ch in [OutputChannel::RR, OutputChannel::LL, OutputChannel::RL] {
            let s = smatrix_two_mode(&p, ch, p1, p2, k1, k2).unwrap();
            assert!(close(s.correlated, b / 4.0, 1e-15 * b.norm().max(1.0)));
        }
    }

    #[test]
    fn ll_direct_vanishes_at_transparency_point() {
        let p = P::new(0.0, 0.0, 2.0, 1.0).unwrap();
        let s = smatrix_two_mode(&p, OutputChannel::LL, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert!(s.direct[0].coefficient.norm() < 1e-15);
        assert!(s.correlated.norm() > 0.0);
    }

    #[test]
    fn rr_direct_is_unity_at_transparency_point() {
        let p = P::new(0.0, 0.0, 2.0, 1.0).unwrap();
        let s = smatrix_two_mode(&p, OutputChannel::RR, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert!(close(s.direct[0].coefficient, Complex64::new(1.0, 0.0), 1e-14));
    }

    #[test]
    fn rl_pairings_carry_mixed_products() {
        let p = P::new(0.0, 0.0, 2.0, 1.0).unwrap();
        let (k1, k2) = (0.9, -0.4);
        let s = smatrix_two_mode(&p, OutputChannel::RL, k1, -k2, k1, k2).unwrap();
        let a1 = amplitudes(&p, k1).unwrap();
        let a2 = amplitudes(&p, k2).unwrap();
        assert!(close(s.direct[0].coefficient, a1.t_bar * a2.r_bar, 1e-15));
        assert!(close(s.direct[1].coefficient, a2.t_bar * a1.r_bar, 1e-15));
        assert!(s.direct[0].supports((k1, k2), (k1, -k2), 1e-12));
        assert!(!s.direct[1].supports((k1, k2), (k1, -k2), 1e-12));
        assert!(s.direct[1].supports((k1, k2), (k2, -k1), 1e-12));
    }

    #[test]
    fn envelope_coincidence_value() {
        // H(0,0) = -1/(2 sqrt(2) pi) at omega = Omega_a = 0, g = 1, kappa = 2,
        // k1 = k2 = 0; cross-checked against direct quadrature in the
        // integration tests.
        let h = envelope_h(&canonical(), 0.0, 0.0, 0.0, 0.0).unwrap();
        let expected = Complex64::new(-1.0 / (2.0 * 2f64.sqrt() * PI), 0.0);
        assert!(close(h, expected, 1e-15));
    }

    #[test]
    fn envelope_symmetric_and_decaying() {
        let p = P::new(0.1, -0.3, 1.4, 0.7).unwrap();
        let (k1, k2) = (0.6, -0.2);
        let a = envelope_h(&p, k1, k2, 0.8, -1.9).unwrap();
        let b = envelope_h(&p, k1, k2, -1.9, 0.8).unwrap();
        assert!(close(a, b, 1e-15 * a.norm().max(1.0)));
        let near = envelope_h(&p, k1, k2, 0.0, 0.0).unwrap().norm();
        let far = envelope_h(&p, k1, k2, 0.0, -400.0).unwrap().norm();
        assert!(far < 1e-12 * near.max(1.0));
    }

    #[test]
    fn envelope_continuous_through_exceptional_point() {
        // g = kappa/4 coalesces the one-excitation poles; the confluent path
        // must join smoothly with nearby non-degenerate parameters.
        let kappa = 1.0;
        let at = P::new(0.0, 0.0, 0.25 * kappa, kappa).unwrap();
        let near = P::new(0.0, 0.0, 0.25 * kappa * (1.0 + 1e-7), kappa).unwrap();
        assert!(at.is_degenerate());
        assert!(!near.is_degenerate());
        for (x1, x2) in [(0.0, 0.0), (0.4, -1.3), (2.0, 2.0)] {
            let ha = envelope_h(&at, 0.1, -0.2, x1, x2).unwrap();
            let hb = envelope_h(&near, 0.1, -0.2, x1, x2).unwrap();
            assert!(ha.is_finite() && hb.is_finite());
            assert!(
                (ha - hb).norm() < 1e-5 * ha.norm().max(1e-3),
                "confluent mismatch at ({x1},{x2}): {ha} vs {hb}"
            );
        }
    }

    #[test]
    fn free_propagation_limit() {
        // g = 0 and vanishing kappa: transmitted pair is the bare planewave.
        let p = P::new(0.0, 0.0, 0.0, 1e-9).unwrap();
        let w = output_wavefunction(&p, OutputChannel::RR, 0.4, -0.7).unwrap();
        for (x1, x2) in [(0.0, 0.0), (1.3, -0.8)] {
            let a = w.amplitude(x1, x2);
            let s = planewave_sym(0.4, -0.7, x1, x2);
            assert!(close(a, s, 1e-8));
        }
    }

    #[test]
    fn degenerate_input_amplitude_even_in_relative_coordinate() {
        let p = P::new(0.0, 0.0, 5f64.sqrt(), 1.0).unwrap();
        let w = output_wavefunction(&p, OutputChannel::RR, 1.1, 1.1).unwrap();
        let xc = 0.7;
        for dx in [0.3, 1.7, 4.0] {
            let plus = w.amplitude(xc + dx / 2.0, xc - dx / 2.0);
            let minus = w.amplitude(xc - dx / 2.0, xc + dx / 2.0);
            assert!(close(plus, minus, 1e-15 * plus.norm().max(1.0)));
        }
    }

    #[test]
    fn far_field_factorizes_to_direct_part() {
        let p = P::new(0.0, 0.0, 5f64.sqrt(), 1.0).unwrap();
        let (k1, k2) = (0.9, 0.3);
        let w = output_wavefunction(&p, OutputChannel::RR, k1, k2).unwrap();
        let a1 = amplitudes(&p, k1).unwrap();
        let a2 = amplitudes(&p, k2).unwrap();
        let (x1, x2) = (150.0, -150.0);
        let a = w.amplitude(x1, x2);
        let direct = a1.t_bar * a2.t_bar * planewave_sym(k1, k2, x1, x2);
        assert!(close(a, direct, 1e-12));
    }

    #[test]
    fn parity_composition_matches_direct_construction() {
        let p = P::new(0.2, -0.1, 1.3, 0.9).unwrap();
        let (k1, k2) = (0.55, -0.25);
        let comp = compose_from_even_odd(&p, k1, k2).unwrap();
        for ch in [OutputChannel::RR, OutputChannel::LL, OutputChannel::RL] {
            let w = output_wavefunction(&p, ch, k1, k2).unwrap();
            for (x1, x2) in [(0.0, 0.0), (1.1, -0.4), (-2.3, 0.9)] {
                let a = w.amplitude(x1, x2);
                let b = comp.amplitude(ch, x1, x2);
                assert!(
                    close(a, b, 1e-12 * a.norm().max(1.0)),
                    "channel {ch:?} mismatch at ({x1},{x2}): {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn odd_odd_subspace_passes_through() {
        let p = canonical();
        let (k1, k2) = (0.3, -0.6);
        let comp = compose_from_even_odd(&p, k1, k2).unwrap();
        for (x1, x2) in [(0.0, 0.0), (0.8, -1.2)] {
            let oo = comp.psi_oo(x1, x2);
            let free = planewave_sym(k1, k2, x1, x2) * 0.5;
            assert!(close(oo, free, 1e-16));
        }
    }

    #[test]
    fn parity_weights() {
        assert!((even_even_weight::<f64>() - 0.5).abs() < 1e-16);
        assert!((even_odd_weight::<f64>() - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-16);
    }
}
