//! Physical parameters of the waveguide-coupled Jaynes-Cummings system and
//! the complex poles of its one- and two-excitation sectors.
//!
//! All rates are expressed in units where the waveguide group velocity is 1,
//! so frequencies, decay rates and inverse lengths share one unit.

use crate::scalar::{i, re, C, Real};
use thiserror::Error;

/// Relative threshold below which the two one-excitation poles are treated as
/// coalesced (exceptional point) by downstream envelope evaluation.
pub const DEGENERACY_THRESHOLD: f64 = 1e-9;

/// Validation failures for [`SystemParams`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("waveguide-cavity decay rate kappa must be positive, got {0}")]
    NonPositiveKappa(String),
    #[error("atom-cavity coupling g must be non-negative, got {0}")]
    NegativeG(String),
    #[error("atomic loss rate gamma must be non-negative, got {0}")]
    NegativeGamma(String),
    #[error("parameter {0} is not finite")]
    NonFiniteField(&'static str),
}

/// Rates of the cavity-atom system side-coupled to the waveguide.
///
/// `kappa` is the cavity decay into the waveguide (`kappa = 2*pi*V^2` for
/// coupling strength `V`); `gamma` is atomic loss into non-guided modes and
/// enters everywhere through the effective atomic frequency
/// `Omega_a - i*gamma/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams<T: Real> {
    /// Cavity mode frequency.
    pub omega: T,
    /// Atomic transition frequency.
    pub omega_a: T,
    /// Atom-cavity coupling rate.
    pub g: T,
    /// Waveguide-cavity decay rate.
    pub kappa: T,
    /// Atomic loss rate into non-guided modes.
    pub gamma: T,
}

impl<T: Real> SystemParams<T> {
    /// Lossless system (`gamma = 0`).
    pub fn new(omega: T, omega_a: T, g: T, kappa: T) -> Result<Self, ParamError> {
        Self {
            omega,
            omega_a,
            g,
            kappa,
            gamma: T::zero(),
        }
        .validated()
    }

    /// System with atomic loss `gamma` into non-guided modes.
    pub fn with_loss(omega: T, omega_a: T, g: T, kappa: T, gamma: T) -> Result<Self, ParamError> {
        Self {
            omega,
            omega_a,
            g,
            kappa,
            gamma,
        }
        .validated()
    }

    /// Check all field invariants, returning the parameters unchanged on success.
    pub fn validated(self) -> Result<Self, ParamError> {
        for (name, v) in [
            ("omega", self.omega),
            ("omega_a", self.omega_a),
            ("g", self.g),
            ("kappa", self.kappa),
            ("gamma", self.gamma),
        ] {
            if !v.is_finite() {
                return Err(ParamError::NonFiniteField(name));
            }
        }
        if self.kappa <= T::zero() {
            return Err(ParamError::NonPositiveKappa(format!("{}", self.kappa)));
        }
        if self.g < T::zero() {
            return Err(ParamError::NegativeG(format!("{}", self.g)));
        }
        if self.gamma < T::zero() {
            return Err(ParamError::NegativeGamma(format!("{}", self.gamma)));
        }
        Ok(self)
    }

    /// Effective atomic frequency `Omega_a - i*gamma/2`.
    #[inline]
    pub fn omega_a_eff(&self) -> C<T> {
        C::new(self.omega_a, -self.gamma / T::lit(2.0))
    }

    /// One-excitation poles `(lambda_{1,+}, lambda_{1,-})`.
    ///
    /// Roots of `(k - omega + i*kappa/2)(k - Omega_eff) - g^2`, labelled by the
    /// principal branch of the square root; only the unordered pair is
    /// physically meaningful.
    pub fn one_excitation_poles(&self) -> (C<T>, C<T>) {
        let half = T::lit(0.5);
        let ik2 = i::<T>() * re(self.kappa * half);
        let center = (re(self.omega) + self.omega_a_eff() - ik2) * re(half);
        let d = (re(self.omega) - self.omega_a_eff() - ik2) * re(half);
        let root = (d * d + re(self.g * self.g)).sqrt();
        (center + root, center - root)
    }

    /// Two-excitation poles `(lambda_{2,+}, lambda_{2,-})`.
    ///
    /// Roots of the two-excitation denominator, with sum
    /// `Omega_eff + 3*omega - i*3*kappa/2`.
    pub fn two_excitation_poles(&self) -> (C<T>, C<T>) {
        let half = T::lit(0.5);
        let ik2 = i::<T>() * re(self.kappa * half);
        let center = (self.omega_a_eff() + re(T::lit(3.0) * self.omega) - re(T::lit(3.0)) * ik2)
            * re(half);
        let d = (self.omega_a_eff() - re(self.omega) + ik2) * re(half);
        let root = (d * d + re(T::lit(2.0) * self.g * self.g)).sqrt();
        (center + root, center - root)
    }

    /// All four poles bundled.
    pub fn poles(&self) -> PoleSet<T> {
        let (l1p, l1m) = self.one_excitation_poles();
        let (l2p, l2m) = self.two_excitation_poles();
        PoleSet {
            lambda1_plus: l1p,
            lambda1_minus: l1m,
            lambda2_plus: l2p,
            lambda2_minus: l2m,
        }
    }

    /// True when the one-excitation poles have coalesced (exceptional point,
    /// e.g. `omega = Omega_a`, `g = kappa/4`, `gamma = 0`), in which case the
    /// two-photon envelope must use its confluent limit.
    pub fn is_degenerate(&self) -> bool {
        let (lp, lm) = self.one_excitation_poles();
        (lp - lm).norm() < T::lit(DEGENERACY_THRESHOLD) * (lp + lm).norm()
    }
}

/// Complex poles of the one- and two-excitation response.
///
/// Imaginary parts are non-positive for `kappa > 0`, `gamma >= 0` (decaying
/// resonances). Vieta sum rules: `lambda1_plus + lambda1_minus =
/// omega + Omega_eff - i*kappa/2` and `lambda2_plus + lambda2_minus =
/// Omega_eff + 3*omega - i*3*kappa/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSet<T: Real> {
    pub lambda1_plus: C<T>,
    pub lambda1_minus: C<T>,
    pub lambda2_plus: C<T>,
    pub lambda2_minus: C<T>,
}

impl<T: Real> PoleSet<T> {
    /// Sum of the one-excitation pair.
    pub fn lambda1_sum(&self) -> C<T> {
        self.lambda1_plus + self.lambda1_minus
    }

    /// Sum of the two-excitation pair.
    pub fn lambda2_sum(&self) -> C<T> {
        self.lambda2_plus + self.lambda2_minus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = SystemParams<f64>;

    fn close(a: num_complex::Complex64, b: num_complex::Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn validate_accepts_valid_params() {
        let p = P::new(0.0, 0.0, 1.0, 2.0).unwrap();
        assert_eq!(p.gamma, 0.0);
    }

    #[test]
    fn validate_rejects_zero_kappa() {
        assert!(matches!(
            P::new(0.0, 0.0, 1.0, 0.0),
            Err(ParamError::NonPositiveKappa(_))
        ));
    }

    #[test]
    fn validate_rejects_negative_g() {
        assert!(matches!(
            P::new(0.0, 0.0, -1.0, 2.0),
            Err(ParamError::NegativeG(_))
        ));
    }

    #[test]
    fn validate_rejects_negative_gamma() {
        assert!(matches!(
            P::with_loss(0.0, 0.0, 1.0, 2.0, -0.1),
            Err(ParamError::NegativeGamma(_))
        ));
    }

    #[test]
    fn validate_rejects_non_finite() {
        assert!(matches!(
            P::new(f64::NAN, 0.0, 1.0, 2.0),
            Err(ParamError::NonFiniteField("omega"))
        ));
    }

    #[test]
    fn one_excitation_poles_reach_jc_eigenvalues_as_kappa_vanishes() {
        let p = P::new(0.0, 0.0, 1.0, 1e-8).unwrap();
        let (lp, lm) = p.one_excitation_poles();
        assert!(close(lp, num_complex::Complex64::new(1.0, 0.0), 1e-6));
        assert!(close(lm, num_complex::Complex64::new(-1.0, 0.0), 1e-6));
    }

    #[test]
    fn one_excitation_poles_decoupled_branch_convention() {
        // g = 0: roots of (k + i)k are 0 and -i; "+" takes the +sqrt branch.
        let p = P::new(0.0, 0.0, 0.0, 2.0).unwrap();
        let (lp, lm) = p.one_excitation_poles();
        assert!(close(lp, num_complex::Complex64::new(0.0, 0.0), 1e-15));
        assert!(close(lm, num_complex::Complex64::new(0.0, -1.0), 1e-15));
    }

    #[test]
    fn two_excitation_poles_decoupled_pair() {
        // g = 0: the quadratic factors as (2*omega - i*kappa)(omega + Omega - i*kappa/2).
        let p = P::new(0.0, 0.0, 0.0, 2.0).unwrap();
        let (lp, lm) = p.two_excitation_poles();
        let mut got = [lp, lm];
        got.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!(close(got[0], num_complex::Complex64::new(0.0, -2.0), 1e-15));
        assert!(close(got[1], num_complex::Complex64::new(0.0, -1.0), 1e-15));
    }

    #[test]
    fn degeneracy_flag_at_exceptional_point() {
        // omega = Omega_a, g = kappa/4 coalesces the one-excitation pair.
        let p = P::new(0.0, 0.0, 0.25, 1.0).unwrap();
        assert!(p.is_degenerate());
        let q = P::new(0.0, 0.0, 0.35, 1.0).unwrap();
        assert!(!q.is_degenerate());
    }

    #[test]
    fn poles_have_non_positive_imaginary_parts() {
        let p = P::with_loss(0.7, -0.3, 1.3, 0.9, 0.2).unwrap();
        let s = p.poles();
        for l in [
            s.lambda1_plus,
            s.lambda1_minus,
            s.lambda2_plus,
            s.lambda2_minus,
        ] {
            assert!(l.im <= 0.0, "pole {l} should decay");
        }
    }

    #[test]
    fn f32_poles_smoke() {
        let p = SystemParams::<f32>::new(0.0, 0.0, 1.0, 2.0).unwrap();
        let (lp, lm) = p.one_excitation_poles();
        let sum = lp + lm;
        assert!((sum.re - 0.0).abs() < 1e-5);
        assert!((sum.im + 1.0).abs() < 1e-5);
    }
}
