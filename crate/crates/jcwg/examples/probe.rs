// Scratch bring-up probe for oracle accuracy; not part of the test suite.
use jcwg::oracle::lattice::{scatter_one_photon, scatter_two_photons, LatticeConfig};
use jcwg::oracle::ode::{
    connected_two_photon_output, predicted_connected_output, AtomModel, DriveSpectrum, OdeConfig,
};
use jcwg::correlations::{g2, G2Channel};
use jcwg::single_photon::amplitudes;
use jcwg::SystemParams64;
use std::time::Instant;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "all".into());

    if which == "ode" || which == "all" {
        // Criterion 6 probe: connected output vs closed form, and frozen variant.
        let p = SystemParams64::new(0.0, 0.0, 5f64.sqrt(), 1.0).unwrap();
        let k0 = 5f64.sqrt();
        let drive = DriveSpectrum {
            center: k0,
            sigma: 1.0 / 20.0,
            peak_time: 70.0,
        };
        let cfg = OdeConfig {
            t_start: 0.0,
            t_end: 180.0,
            dt: 0.0005,
            error_tolerance: 1e-6,
            store_every: 64,
        };
        let t0 = Instant::now();
        let full = connected_two_photon_output(&p, &drive, &cfg, AtomModel::TwoLevel, 40.0, 140.0, 48)
            .unwrap();
        println!("ode full run: {:?}", t0.elapsed());
        let pred = predicted_connected_output(&p, &drive, &full.times).unwrap();
        println!(
            "ode connected:  |C|={:.6e}  |pred|={:.6e}  rel_err={:.3e}",
            full.l2_norm(),
            pred.l2_norm(),
            full.rel_l2_error(&pred)
        );
        let frozen =
            connected_two_photon_output(&p, &drive, &cfg, AtomModel::WeakExcitation, 40.0, 140.0, 48)
                .unwrap();
        println!("ode frozen:     |C|={:.6e}", frozen.l2_norm());
    }

    if which == "one" || which == "all" {
        // Criterion 7 probe: lattice transmission vs analytic at several k0.
        let g = 5f64.sqrt();
        let p = SystemParams64::new(0.0, 0.0, g, 1.0).unwrap();
        for k0 in [0.0, 1.0, g, 3.0] {
            let cfg = LatticeConfig::desk_one_photon(&p, k0);
            let t0 = Instant::now();
            match scatter_one_photon(&p, &cfg) {
                Ok(run) => {
                    let a = amplitudes(&p, run.k_probe).unwrap();
                    println!(
                        "lattice 1ph k0={k0:+.3}: T={:.6} vs {:.6} (diff {:.2e})  norm drift {:.2e}  resid {:.2e}  maxerr {:.1e}  [{:?}]",
                        run.transmission,
                        a.t_bar.norm_sqr(),
                        (run.transmission - a.t_bar.norm_sqr()).abs(),
                        (run.diagnostics.norm_final - run.diagnostics.norm_initial).abs(),
                        run.diagnostics.interaction_residual,
                        run.diagnostics.max_step_error_estimate,
                        t0.elapsed()
                    );
                }
                Err(e) => println!("lattice 1ph k0={k0:+.3}: ERROR {e}"),
            }
        }
    }

    if which == "two" || which == "all" {
        // Criterion 8 probe (strong coupling scenario).
        let g = 5f64.sqrt();
        let p = SystemParams64::new(0.0, 0.0, g, 1.0).unwrap();
        let k0 = g;
        let cfg = LatticeConfig::desk_two_photon(&p, k0);
        let t0 = Instant::now();
        match scatter_two_photons(&p, &cfg) {
            Ok(run) => {
                println!("lattice 2ph strong: {:?}", t0.elapsed());
                println!(
                    "  rel L2 err {:.4e}   corr fraction {:.4e}   norm drift {:.2e}   resid {:.2e}",
                    run.correlated_rel_l2_error(),
                    run.correlated_fraction(),
                    (run.diagnostics.norm_final - run.diagnostics.norm_initial).abs(),
                    run.diagnostics.interaction_residual,
                );
                let g2_latt = run.channel_g2_zero(G2Channel::Reflected);
                let g2_pred = run.predicted_g2_zero(G2Channel::Reflected);
                let g2_ana = g2(&p, G2Channel::Reflected, 2.0 * k0, 0.0).unwrap();
                println!("  reflected g2(0): lattice {:.6} vs estimator-on-prediction {:.6} vs planewave {:.6}", g2_latt, g2_pred, g2_ana);
            }
            Err(e) => println!("lattice 2ph strong: ERROR {e}"),
        }

        let pw = SystemParams64::new(0.0, 0.0, 1.0 / 5f64.sqrt(), 1.0).unwrap();
        let cfgw = LatticeConfig::desk_two_photon(&pw, 0.0);
        let t0 = Instant::now();
        match scatter_two_photons(&pw, &cfgw) {
            Ok(run) => {
                println!("lattice 2ph weak: {:?}", t0.elapsed());
                println!(
                    "  rel L2 err {:.4e}   corr fraction {:.4e}   norm drift {:.2e}   resid {:.2e}",
                    run.correlated_rel_l2_error(),
                    run.correlated_fraction(),
                    (run.diagnostics.norm_final - run.diagnostics.norm_initial).abs(),
                    run.diagnostics.interaction_residual,
                );
                let g2_latt = run.channel_g2_zero(G2Channel::Transmitted);
                let g2_pred = run.predicted_g2_zero(G2Channel::Transmitted);
                let g2_ana = g2(&pw, G2Channel::Transmitted, 0.0, 0.0).unwrap();
                println!("  transmitted g2(0): lattice {:.6} vs estimator-on-prediction {:.6} vs planewave {:.6}", g2_latt, g2_pred, g2_ana);
                // Also probe the weak transmitted g2(tau) shape.
                for tau in [0.0, 2.0, 4.0, 5.8, 8.0, 10.0] {
                    let v = g2(&pw, G2Channel::Transmitted, 0.0, tau).unwrap();
                    println!("  analytic weak transmitted g2({tau}) = {v:.6}");
                }
            }
            Err(e) => println!("lattice 2ph weak: ERROR {e}"),
        }
    }
}
