//! Echo under strong perturbations (eps = hbar and eps = hbar^{1/2}),
//! compared against the closed-form strong-regime predictions.
//!
//! Run with: cargo run --release --example strong_perturbation

use torus_echo::potential::{RegimeSpec, TrigPotential};
use torus_echo::propagator::{EvolveOptions, Propagator};
use torus_echo::states::FourierState;
use torus_echo::theory::{predict_strong, InitialDataFamily};

fn main() {
    let v = TrigPotential::cosine((1, 0), 1.0);
    // flow branch: drift along (1,0) averages the potential along the ray
    // static branch: the transport freezes and only e^{i t V} survives
    let cases = [
        ("eps = hbar (flow)", RegimeSpec { c: 1.0, alpha: 1.0 }, (1i64, 0i64)),
        ("eps = sqrt(hbar) (static)", RegimeSpec { c: 1.0, alpha: 0.5 }, (0, 1)),
    ];
    for (label, regime, dir) in cases {
        println!("{label}: V = cos(2 pi x1), t = 1 critical time");
        println!("{:>12} {:>10} {:>10} {:>10}", "hbar", "sim", "theory", "gap");
        let family = InitialDataFamily::PlaneWave {
            direction: [dir.0 as f64, dir.1 as f64],
            omega: 0.0,
        };
        let theory = predict_strong(&family, &v, 1.0, &regime).unwrap();
        for j in 7..=9 {
            let n = 1i64 << j;
            let hbar = 1.0 / n as f64;
            let k = (dir.0 * n, dir.1 * n);
            let s = FourierState::plane_wave_with_hbar(hbar, 2 * n + 64, k).unwrap();
            let prop = Propagator::new(hbar, regime.epsilon(hbar), &v);
            let sample = prop
                .echo_rescaled(&s, 1.0, &EvolveOptions::default())
                .unwrap();
            println!(
                "{:>12.8} {:>10.5} {:>10.5} {:>10.5}",
                hbar,
                sample.echo,
                theory,
                (sample.echo - theory).abs()
            );
        }
    }
}
