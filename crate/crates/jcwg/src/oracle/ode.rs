//! Time-domain integration of the coupled matrix-element hierarchy for one
//! and two incident photons.
//!
//! For a two-photon product wavepacket the hierarchy closes: the one-photon
//! elements `<0|c(t)|f>` and `<0|sigma_-(t)|f>` drive the equal-time pair
//! `<0|sigma_- c(t)|ff>`, `<0|c^2(t)|ff>`, and a quantum-regression pass in
//! the second time argument yields the full two-time output amplitude. The
//! correlated (connected) part of the output is compared against the
//! closed-form envelope convolved with the input spectrum.
//!
//! The two-level constraint `sigma_-^2 = 0` is what couples the pair sector
//! nonlinearly; the weak-excitation variant replaces the atom by a bosonic
//! mode (`sigma_z` frozen to -1), whose connected output must vanish
//! identically.

use super::integrator::Rk4;
use super::OracleError;
use crate::params::SystemParams;
use crate::scalar::{i, re, C, Real};
use crate::two_photon::{kernel_f, Envelope};

/// Gaussian input wavepacket, unit-normalized in both domains.
///
/// Time-domain amplitude `alpha(t) = (2 sigma^2/pi)^{1/4} e^{-sigma^2 (t-t0)^2}
/// e^{-i k0 (t-t0)}`; spectrum `f(k) = (2 pi sigma^2)^{-1/4}
/// e^{-(k-k0)^2/(4 sigma^2)} e^{i k t0}`.
#[derive(Debug, Clone, Copy)]
pub struct DriveSpectrum<T: Real> {
    /// Carrier frequency `k0`.
    pub center: T,
    /// Spectral width `sigma` (standard deviation of the amplitude spectrum
    /// is `sigma * sqrt(2)`... the intensity spectrum has std `sigma`).
    pub sigma: T,
    /// Arrival time of the packet peak at the scatterer.
    pub peak_time: T,
}

impl<T: Real> DriveSpectrum<T> {
    /// Input amplitude `<0|a_in(t)|f>`.
    pub fn amplitude(&self, t: T) -> C<T> {
        let tau = t - self.peak_time;
        let mag = (T::lit(2.0) * self.sigma * self.sigma / T::PI()).powf(T::lit(0.25))
            * (-self.sigma * self.sigma * tau * tau).exp();
        C::cis(-self.center * tau) * re(mag)
    }

    /// Momentum-space spectrum `f(k)`.
    pub fn spectrum(&self, k: T) -> C<T> {
        let dk = k - self.center;
        let mag = (T::lit(2.0) * T::PI() * self.sigma * self.sigma).powf(-T::lit(0.25))
            * (-dk * dk / (T::lit(4.0) * self.sigma * self.sigma)).exp();
        C::cis(k * self.peak_time) * re(mag)
    }
}

/// Atom model used by the hierarchy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomModel {
    /// Exact two-level atom (`sigma_-^2 = 0`).
    TwoLevel,
    /// Weak-excitation approximation: `sigma_z` frozen to -1, the atom
    /// replaced by a bosonic mode. The system becomes linear and the
    /// connected two-photon output vanishes.
    WeakExcitation,
}

/// Fixed-step integration window.
#[derive(Debug, Clone, Copy)]
pub struct OdeConfig<T: Real> {
    pub t_start: T,
    pub t_end: T,
    pub dt: T,
    /// Threshold for the embedded step-doubling error estimate.
    pub error_tolerance: T,
    /// Keep every `store_every`-th sample in the returned series.
    pub store_every: usize,
}

impl<T: Real> OdeConfig<T> {
    /// Window and step sized for `params` and `drive`: the step resolves the
    /// fastest system rate, the window covers the packet plus ring-down.
    pub fn desk_scale(params: &SystemParams<T>, drive: &DriveSpectrum<T>) -> Self {
        let rate = params
            .kappa
            .max(params.g)
            .max(params.omega.abs())
            .max(params.omega_a.abs())
            .max(T::one());
        let sigma_t = T::one() / (T::lit(2.0) * drive.sigma);
        Self {
            t_start: drive.peak_time - T::lit(6.0) * sigma_t,
            t_end: drive.peak_time + T::lit(6.0) * sigma_t + T::lit(60.0) / params.kappa,
            dt: T::lit(0.002) / rate,
            error_tolerance: T::lit(1e-7),
            store_every: 16,
        }
    }

    fn validate(&self, params: &SystemParams<T>) -> Result<usize, OracleError> {
        let rate = params
            .kappa
            .max(params.g)
            .max(params.omega.abs())
            .max(params.omega_a.abs());
        if self.dt * rate > T::lit(0.01) + T::lit(1e-12) {
            return Err(OracleError::InvalidConfig(format!(
                "dt {} does not resolve the fastest rate {} (need dt <= 0.01/rate)",
                self.dt, rate
            )));
        }
        if !(self.t_end > self.t_start) || !(self.dt > T::zero()) {
            return Err(OracleError::InvalidConfig(
                "empty or reversed integration window".into(),
            ));
        }
        let steps = ((self.t_end - self.t_start) / self.dt)
            .ceil()
            .to_usize()
            .ok_or_else(|| OracleError::InvalidConfig("step count overflow".into()))?;
        Ok(steps)
    }
}

/// Time series of the matrix elements of the hierarchy for a symmetrized
/// two-photon product of the drive wavepacket.
#[derive(Debug, Clone)]
pub struct MatrixElementSeries<T: Real> {
    pub times: Vec<T>,
    /// Drive amplitude `alpha(t)`.
    pub input: Vec<C<T>>,
    /// One-photon cavity element `<0|c(t)|f>`.
    pub cavity: Vec<C<T>>,
    /// One-photon atom element `<0|sigma_-(t)|f>`.
    pub atom: Vec<C<T>>,
    /// One-photon output `alpha(t) - i sqrt(kappa) <0|c(t)|f>`.
    pub output: Vec<C<T>>,
    /// Pair element `<0|sigma_- c(t)|ff>`.
    pub atom_cavity: Vec<C<T>>,
    /// Pair element `<0|c^2(t)|ff>`.
    pub cavity_sq: Vec<C<T>>,
}

impl<T: Real> MatrixElementSeries<T> {
    /// Transfer-function estimate `FT[series](k) / FT[alpha](k)` by
    /// trapezoidal quadrature; reproduces the closed-form response when the
    /// window fully contains the packet.
    pub fn transfer_ratio(&self, values: &[C<T>], k: T) -> C<T> {
        let ft = |samples: &[C<T>]| {
            let mut acc = C::new(T::zero(), T::zero());
            for j in 0..samples.len() {
                let w = if j == 0 || j == samples.len() - 1 {
                    T::lit(0.5)
                } else {
                    T::one()
                };
                acc = acc + samples[j] * C::cis(k * self.times[j]) * re(w);
            }
            acc
        };
        ft(values) / ft(&self.input)
    }
}

struct Hierarchy<T: Real> {
    omega_c: C<T>,
    omega_a: C<T>,
    g: T,
    sqrt_kappa: T,
    drive: DriveSpectrum<T>,
    model: AtomModel,
}

impl<T: Real> Hierarchy<T> {
    fn new(params: &SystemParams<T>, drive: DriveSpectrum<T>, model: AtomModel) -> Self {
        Self {
            omega_c: re(params.omega) - i::<T>() * re(params.kappa * T::lit(0.5)),
            omega_a: params.omega_a_eff(),
            g: params.g,
            sqrt_kappa: params.kappa.sqrt(),
            drive,
            model,
        }
    }

    /// State layout: [m_c, m_a, w_ac, w_cc, w_aa]; `w_aa` only participates
    /// in the weak-excitation model.
    fn deriv(&self, t: T, y: &[C<T>], dy: &mut [C<T>]) {
        let alpha = self.drive.amplitude(t);
        let mi = -i::<T>();
        let g = re(self.g);
        let sqrt_kappa = re(self.sqrt_kappa);
        let two = re(T::lit(2.0));
        let (m_c, m_a, w_ac, w_cc, w_aa) = (y[0], y[1], y[2], y[3], y[4]);
        dy[0] = mi * (self.omega_c * m_c + sqrt_kappa * alpha + g * m_a);
        dy[1] = mi * (self.omega_a * m_a + g * m_c);
        let s_a = alpha * m_a * two;
        let s_c = alpha * m_c * two;
        let pair_sq = match self.model {
            AtomModel::TwoLevel => w_cc,
            AtomModel::WeakExcitation => w_cc + w_aa,
        };
        dy[2] = mi * ((self.omega_c + self.omega_a) * w_ac + sqrt_kappa * s_a + g * pair_sq);
        dy[3] = mi * two * (self.omega_c * w_cc + sqrt_kappa * s_c + g * w_ac);
        dy[4] = match self.model {
            AtomModel::TwoLevel => C::new(T::zero(), T::zero()),
            AtomModel::WeakExcitation => mi * two * (self.omega_a * w_aa + g * w_ac),
        };
    }
}

struct FullRun<T: Real> {
    times: Vec<T>,
    states: Vec<[C<T>; 5]>,
    #[allow(dead_code)]
    max_error_estimate: T,
}

fn integrate_full<T: Real>(
    params: &SystemParams<T>,
    drive: &DriveSpectrum<T>,
    cfg: &OdeConfig<T>,
    model: AtomModel,
) -> Result<FullRun<T>, OracleError> {
    let steps = cfg.validate(params)?;
    let sys = Hierarchy::new(params, *drive, model);
    let mut deriv = |t: T, y: &[C<T>], dy: &mut [C<T>]| sys.deriv(t, y, dy);
    let mut rk4 = Rk4::new(5);
    let mut y = vec![C::new(T::zero(), T::zero()); 5];
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    rk4.run(
        &mut deriv,
        cfg.t_start,
        cfg.dt,
        steps,
        cfg.error_tolerance,
        &mut y,
        |_, t, state| {
            times.push(t);
            states.push([state[0], state[1], state[2], state[3], state[4]]);
        },
    )?;
    Ok(FullRun {
        times,
        states,
        max_error_estimate: rk4.max_error_estimate,
    })
}

/// Integrate the matrix-element hierarchy for the drive wavepacket (both
/// photons of the pair carry the same spectrum).
pub fn integrate_matrix_elements<T: Real>(
    params: &SystemParams<T>,
    drive: &DriveSpectrum<T>,
    cfg: &OdeConfig<T>,
    model: AtomModel,
) -> Result<MatrixElementSeries<T>, OracleError> {
    let run = integrate_full(params, drive, cfg, model)?;
    let sqrt_kappa = params.kappa.sqrt();
    let keep = cfg.store_every.max(1);
    let mut series = MatrixElementSeries {
        times: Vec::new(),
        input: Vec::new(),
        cavity: Vec::new(),
        atom: Vec::new(),
        output: Vec::new(),
        atom_cavity: Vec::new(),
        cavity_sq: Vec::new(),
    };
    for (j, (&t, s)) in run.times.iter().zip(&run.states).enumerate() {
        if j % keep != 0 && j != run.times.len() - 1 {
            continue;
        }
        let alpha = drive.amplitude(t);
        series.times.push(t);
        series.input.push(alpha);
        series.cavity.push(s[0]);
        series.atom.push(s[1]);
        series.output.push(alpha - i::<T>() * re(sqrt_kappa) * s[0]);
        series.atom_cavity.push(s[2]);
        series.cavity_sq.push(s[3]);
    }
    Ok(series)
}

/// Connected (correlated) part of the two-photon output amplitude on a
/// square grid of detection times.
#[derive(Debug, Clone)]
pub struct ConnectedOutput<T: Real> {
    /// Detection times (snapped to the integration grid).
    pub times: Vec<T>,
    /// `values[i][j]` is the connected amplitude at `(times[i], times[j])`.
    pub values: Vec<Vec<C<T>>>,
}

impl<T: Real> ConnectedOutput<T> {
    /// Discrete L2 norm `sqrt(sum |C|^2 dt^2)` over the grid.
    pub fn l2_norm(&self) -> T {
        let dt = if self.times.len() > 1 {
            self.times[1] - self.times[0]
        } else {
            T::one()
        };
        let mut acc = T::zero();
        for row in &self.values {
            for v in row {
                acc = acc + v.norm_sqr();
            }
        }
        (acc * dt * dt).sqrt()
    }

    /// Relative L2 distance to another grid of identical shape.
    pub fn rel_l2_error(&self, other: &ConnectedOutput<T>) -> T {
        let mut diff = T::zero();
        let mut norm = T::zero();
        for (ra, rb) in self.values.iter().zip(&other.values) {
            for (a, b) in ra.iter().zip(rb) {
                diff = diff + (*a - *b).norm_sqr();
                norm = norm + b.norm_sqr();
            }
        }
        (diff / norm.max(T::lit(1e-300))).sqrt()
    }
}

/// Compute the connected two-photon output `<0|a_out(t2) a_out(t1)|ff>` minus
/// the product of one-photon outputs, on `n_out x n_out` detection times
/// spanning `[window_start, window_end]`.
///
/// The incoming cross terms cancel exactly, leaving
/// `-kappa * [<0|c(t2) c(t1)|ff> - 2 m_c(t1) m_c(t2)]`; the second factor is
/// evaluated by a quantum-regression pass from each `t1`.
pub fn connected_two_photon_output<T: Real>(
    params: &SystemParams<T>,
    drive: &DriveSpectrum<T>,
    cfg: &OdeConfig<T>,
    model: AtomModel,
    window_start: T,
    window_end: T,
    n_out: usize,
) -> Result<ConnectedOutput<T>, OracleError> {
    if n_out < 2 {
        return Err(OracleError::InvalidConfig(
            "need at least two detection times".into(),
        ));
    }
    if window_start < cfg.t_start || window_end > cfg.t_end {
        return Err(OracleError::InvalidConfig(
            "detection window outside integration window".into(),
        ));
    }
    let run = integrate_full(params, drive, cfg, model)?;
    let n_steps = run.times.len();
    let index_of = |t: T| -> usize {
        let j = ((t - cfg.t_start) / cfg.dt).round().to_usize().unwrap_or(0);
        j.min(n_steps - 1)
    };
    let out_indices: Vec<usize> = (0..n_out)
        .map(|j| {
            let frac = T::from_usize(j).unwrap() / T::from_usize(n_out - 1).unwrap();
            index_of(window_start + (window_end - window_start) * frac)
        })
        .collect();
    if out_indices.windows(2).any(|w| w[1] <= w[0]) {
        return Err(OracleError::InvalidConfig(
            "detection grid finer than the integration step".into(),
        ));
    }
    let times: Vec<T> = out_indices.iter().map(|&j| run.times[j]).collect();

    let sys = Hierarchy::new(params, *drive, model);
    let kappa = re(params.kappa);
    let two = re(T::lit(2.0));
    let mut values = vec![vec![C::new(T::zero(), T::zero()); n_out]; n_out];

    // Regression pass from each detection time t1: evolve
    // (u_c, u_a)(t2) = (<0|c(t2) c(t1)|ff>, <0|sigma_-(t2) c(t1)|ff>)
    // forward from t2 = t1. The source term is alpha(t2) * m_c(t1) for both
    // atom models (vacuum bra), so the pass itself is linear.
    for (oi, &j1) in out_indices.iter().enumerate() {
        let m_c_t1 = run.states[j1][0];
        let u0 = [run.states[j1][3], run.states[j1][2]];
        let mut deriv = |t: T, y: &[C<T>], dy: &mut [C<T>]| {
            let mi = -i::<T>();
            let alpha = sys.drive.amplitude(t);
            dy[0] = mi
                * (sys.omega_c * y[0]
                    + re(sys.sqrt_kappa) * alpha * m_c_t1 * two
                    + re(sys.g) * y[1]);
            dy[1] = mi * (sys.omega_a * y[1] + re(sys.g) * y[0]);
        };
        // Equal-time value.
        values[oi][oi] = -kappa * (u0[0] - m_c_t1 * m_c_t1 * two);
        let mut rk4 = Rk4::new(2);
        let mut y = u0.to_vec();
        let mut next = oi + 1;
        let last = *out_indices.last().unwrap();
        for j2 in j1..last {
            let t2 = run.times[j2];
            rk4.step(&mut deriv, t2, cfg.dt, &mut y);
            if next < n_out && out_indices[next] == j2 + 1 {
                let m_c_t2 = run.states[j2 + 1][0];
                let c = -kappa * (y[0] - m_c_t1 * m_c_t2 * two);
                values[oi][next] = c;
                values[next][oi] = c;
                next += 1;
            }
        }
    }
    Ok(ConnectedOutput { times, values })
}

/// Closed-form prediction for [`connected_two_photon_output`]: the
/// energy-conserving fluorescent output convolved with the drive spectrum,
/// evaluated through the same pole-pair envelope as the analytic scattered
/// wavefunctions.
pub fn predicted_connected_output<T: Real>(
    params: &SystemParams<T>,
    drive: &DriveSpectrum<T>,
    times: &[T],
) -> Result<ConnectedOutput<T>, OracleError> {
    let n = times.len();
    let e0 = T::lit(2.0) * drive.center;
    let sigma_e = T::lit(2.0) * drive.sigma;
    // Spectral buildup Phi(E) = int dk f(k) f(E-k) F(k, E-k).
    let n_e = 513;
    let n_k = 257;
    let e_span = T::lit(10.0) * sigma_e;
    let k_span = T::lit(8.0) * drive.sigma;
    let simpson_w = |j: usize, n: usize| -> T {
        if j == 0 || j == n - 1 {
            T::one()
        } else if j % 2 == 1 {
            T::lit(4.0)
        } else {
            T::lit(2.0)
        }
    };
    let map_err = |e: crate::two_photon::TwoPhotonError| {
        OracleError::InvalidConfig(format!("analytic prediction failed: {e}"))
    };
    let de = T::lit(2.0) * e_span / T::from_usize(n_e - 1).unwrap();
    let dk = T::lit(2.0) * k_span / T::from_usize(n_k - 1).unwrap();
    let mut nodes: Vec<(T, C<T>, Envelope<T>)> = Vec::with_capacity(n_e);
    for je in 0..n_e {
        let e = e0 - e_span + de * T::from_usize(je).unwrap();
        let mut phi = C::new(T::zero(), T::zero());
        for jk in 0..n_k {
            let k = drive.center - k_span + dk * T::from_usize(jk).unwrap();
            let f = kernel_f(params, k, e - k).map_err(map_err)?;
            phi = phi
                + drive.spectrum(k) * drive.spectrum(e - k) * f * re(simpson_w(jk, n_k) * dk / T::lit(3.0));
        }
        let half_e = e * T::lit(0.5);
        let f_diag = kernel_f(params, half_e, half_e).map_err(map_err)?;
        let env = Envelope::new(params, half_e, half_e).map_err(map_err)?;
        // Weight 4 sqrt(2) * Phi(E) / F(E/2, E/2), Simpson measure folded in.
        let w = phi / f_diag
            * re(T::lit(4.0) * T::lit(2.0).sqrt() * simpson_w(je, n_e) * de / T::lit(3.0));
        nodes.push((e, w, env));
    }
    let mut values = vec![vec![C::new(T::zero(), T::zero()); n]; n];
    for i1 in 0..n {
        for i2 in i1..n {
            let tc = (times[i1] + times[i2]) * T::lit(0.5);
            let tau = (times[i1] - times[i2]).abs();
            let mut acc = C::new(T::zero(), T::zero());
            for (e, w, env) in &nodes {
                acc = acc + *w * C::cis(-*e * tc) * env.reduced(tau);
            }
            values[i1][i2] = acc;
            values[i2][i1] = acc;
        }
    }
    Ok(ConnectedOutput {
        times: times.to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::single_photon::amplitudes;

    type P = SystemParams<f64>;

    fn narrow_drive(k0: f64, kappa: f64) -> DriveSpectrum<f64> {
        DriveSpectrum {
            center: k0,
            sigma: kappa / 50.0,
            peak_time: 60.0 / kappa,
        }
    }

    #[test]
    fn drive_normalization() {
        let d = narrow_drive(0.3, 1.0);
        let dt = 0.05;
        let mut acc = 0.0;
        let mut t = d.peak_time - 200.0;
        while t < d.peak_time + 200.0 {
            acc += d.amplitude(t).norm_sqr() * dt;
            t += dt;
        }
        assert!((acc - 1.0).abs() < 1e-9, "time norm {acc}");
        let dk = 1e-4;
        let mut acc_k = 0.0;
        let mut k = d.center - 0.5;
        while k < d.center + 0.5 {
            acc_k += d.spectrum(k).norm_sqr() * dk;
            k += dk;
        }
        assert!((acc_k - 1.0).abs() < 1e-6, "spectral norm {acc_k}");
    }

    #[test]
    fn resonant_drive_reaches_dark_cavity_steady_state() {
        // omega = Omega_a, k0 = Omega_a: cavity element vanishes, atom element
        // approaches -sqrt(kappa)/g times the drive amplitude.
        let p = P::new(0.0, 0.0, 1.0, 1.0).unwrap();
        let d = narrow_drive(0.0, 1.0);
        let cfg = OdeConfig {
            store_every: 4,
            ..OdeConfig::desk_scale(&p, &d)
        };
        let s = integrate_matrix_elements(&p, &d, &cfg, AtomModel::TwoLevel).unwrap();
        let peak = s
            .times
            .iter()
            .position(|&t| t >= d.peak_time)
            .expect("window contains packet peak");
        let alpha = s.input[peak];
        let ratio_c = (s.cavity[peak] / alpha).norm();
        let ratio_a = s.atom[peak] / alpha;
        assert!(ratio_c < 0.01, "cavity ratio {ratio_c}");
        assert!(
            (ratio_a + num_complex::Complex64::new(1.0, 0.0)).norm() < 0.01,
            "atom ratio {ratio_a}"
        );
    }

    #[test]
    fn transfer_function_matches_closed_form_response() {
        let p = P::new(0.2, -0.1, 0.8, 1.0).unwrap();
        let d = DriveSpectrum {
            center: 0.1,
            sigma: 0.1,
            peak_time: 40.0,
        };
        let cfg = OdeConfig {
            t_start: -20.0,
            t_end: 140.0,
            dt: 0.005,
            error_tolerance: 1e-7,
            store_every: 2,
        };
        let s = integrate_matrix_elements(&p, &d, &cfg, AtomModel::TwoLevel).unwrap();
        for k in [0.0, 0.1, 0.25] {
            let a = amplitudes(&p, k).unwrap();
            let got_c = s.transfer_ratio(&s.cavity, k);
            let got_a = s.transfer_ratio(&s.atom, k);
            let got_t = s.transfer_ratio(&s.output, k);
            assert!((got_c - a.s_c).norm() < 1e-3, "s_c at {k}: {got_c} vs {}", a.s_c);
            assert!((got_a - a.s_a).norm() < 1e-3, "s_a at {k}: {got_a} vs {}", a.s_a);
            assert!((got_t - a.t).norm() < 1e-3, "t at {k}: {got_t} vs {}", a.t);
        }
    }

    #[test]
    fn decoupled_atom_has_no_pair_correlations() {
        let p = P::new(0.0, 0.0, 0.0, 1.0).unwrap();
        let d = DriveSpectrum {
            center: 0.0,
            sigma: 0.05,
            peak_time: 30.0,
        };
        let cfg = OdeConfig {
            t_start: 0.0,
            t_end: 90.0,
            dt: 0.005,
            error_tolerance: 1e-7,
            store_every: 8,
        };
        let c = connected_two_photon_output(&p, &d, &cfg, AtomModel::TwoLevel, 20.0, 80.0, 24)
            .unwrap();
        assert!(c.l2_norm() < 1e-12, "connected norm {}", c.l2_norm());
    }

    #[test]
    fn step_too_large_detected() {
        let p = P::new(0.0, 0.0, 1.0, 1.0).unwrap();
        let d = narrow_drive(0.0, 1.0);
        let cfg = OdeConfig {
            t_start: 0.0,
            t_end: 120.0,
            dt: 0.01,
            error_tolerance: 1e-16,
            store_every: 8,
        };
        assert!(matches!(
            integrate_matrix_elements(&p, &d, &cfg, AtomModel::TwoLevel),
            Err(OracleError::StepTooLarge { .. })
        ));
    }

    #[test]
    fn rejects_coarse_step() {
        let p = P::new(0.0, 0.0, 5.0, 1.0).unwrap();
        let d = narrow_drive(0.0, 1.0);
        let cfg = OdeConfig {
            t_start: 0.0,
            t_end: 10.0,
            dt: 0.01,
            error_tolerance: 1e-7,
            store_every: 8,
        };
        assert!(matches!(
            integrate_matrix_elements(&p, &d, &cfg, AtomModel::TwoLevel),
            Err(OracleError::InvalidConfig(_))
        ));
    }
}
