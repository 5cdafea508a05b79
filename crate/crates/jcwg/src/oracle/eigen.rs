//! Effective-Hamiltonian eigenvalues for the one- and two-excitation sectors,
//! computed by a trace/determinant quadratic with Newton polishing rather
//! than the closed pole formulas.

use crate::params::SystemParams;
use crate::scalar::{re, C, Real};

/// Eigenvalues of the non-Hermitian effective Hamiltonian of the
/// `n`-excitation sector (`n` is 1 or 2):
///
/// - `n = 1`: `[[omega - i kappa/2, g], [g, Omega_eff]]`
/// - `n = 2`: `[[2 omega - i kappa, sqrt(2) g], [sqrt(2) g, omega + Omega_eff - i kappa/2]]`
///
/// Cross-checks the pole pairs of [`SystemParams`].
pub fn effective_eigenvalues<T: Real>(params: &SystemParams<T>, n_excitations: u8) -> (C<T>, C<T>) {
    assert!(
        n_excitations == 1 || n_excitations == 2,
        "only the one- and two-excitation sectors exist"
    );
    let ik = C::new(T::zero(), params.kappa);
    let half = T::lit(0.5);
    let (a, b, c): (C<T>, C<T>, C<T>) = if n_excitations == 1 {
        (
            re(params.omega) - ik * re(half),
            params.omega_a_eff(),
            re(params.g),
        )
    } else {
        (
            re(T::lit(2.0) * params.omega) - ik,
            re(params.omega) + params.omega_a_eff() - ik * re(half),
            re(T::lit(2.0).sqrt() * params.g),
        )
    };
    // Roots of lambda^2 - (a + b) lambda + (ab - c^2).
    let tr = a + b;
    let det = a * b - c * c;
    let disc = (tr * tr * re(T::lit(0.25)) - det).sqrt();
    let mut plus = tr * re(half) + disc;
    let mut minus = tr * re(half) - disc;
    // Newton polish on the characteristic polynomial; makes the routine
    // self-contained against rounding in the discriminant.
    for root in [&mut plus, &mut minus] {
        for _ in 0..2 {
            let p = (*root - a) * (*root - b) - c * c;
            let dp = (*root - a) + (*root - b);
            if dp.norm() > T::zero() {
                *root = *root - p / dp;
            }
        }
    }
    (plus, minus)
}
