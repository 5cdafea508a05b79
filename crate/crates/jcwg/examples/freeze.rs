use jcwg::oracle::ode::{connected_two_photon_output, predicted_connected_output, AtomModel, DriveSpectrum, OdeConfig};
use jcwg::SystemParams64;
fn main() {
    // Weak-coupling envelope validation across tau, including the sign flip
    // region tau in (5.8, 10].
    let p = SystemParams64::new(0.0, 0.0, 1.0 / 5f64.sqrt(), 1.0).unwrap();
    let drive = DriveSpectrum { center: 0.0, sigma: 0.05, peak_time: 70.0 };
    let cfg = OdeConfig { t_start: 0.0, t_end: 190.0, dt: 0.0005, error_tolerance: 1e-6, store_every: 64 };
    let full = connected_two_photon_output(&p, &drive, &cfg, AtomModel::TwoLevel, 40.0, 150.0, 45).unwrap();
    let pred = predicted_connected_output(&p, &drive, &full.times).unwrap();
    println!("weak ode connected rel err: {:.3e}  (|C| = {:.4e})", full.rel_l2_error(&pred), full.l2_norm());
    let frozen = connected_two_photon_output(&p, &drive, &cfg, AtomModel::WeakExcitation, 40.0, 150.0, 45).unwrap();
    println!("weak ode frozen |C|: {:.3e}", frozen.l2_norm());
    // Check the sign structure of C along the antidiagonal tau = t1 - t2.
    let n = full.times.len();
    for d in [0usize, 8, 16, 24, 32] {
        let i1 = (n - 1 + d.min(n-1)) / 1; // off-diagonal index pair around center
        let mid = n / 2;
        if mid + d < n {
            let tau = full.times[mid + d] - full.times[mid];
            let c = full.values[mid + d][mid];
            let cp = pred.values[mid + d][mid];
            println!("tau={:6.2}: oracle C = {:+.4e}{:+.4e}i   pred = {:+.4e}{:+.4e}i", tau, c.re, c.im, cp.re, cp.im);
        }
        let _ = i1;
    }
}
