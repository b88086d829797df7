//! Echo of a plane wave along a rational direction at the critical
//! coupling eps = hbar^{3/2}, compared against the closed-form limit.
//!
//! Run with: cargo run --release --example plane_wave_echo

use torus_echo::potential::{RegimeSpec, TrigPotential};
use torus_echo::propagator::{EvolveOptions, Propagator};
use torus_echo::states::FourierState;
use torus_echo::theory::{classify_limit, predict_theorem, InitialDataFamily};

fn main() {
    let regime = RegimeSpec { c: 1.0, alpha: 1.5 };
    let v = TrigPotential::cosine((1, 0), 1.0);
    let family = InitialDataFamily::PlaneWave {
        direction: [0.0, 1.0],
        omega: 0.0,
    };
    let limit = classify_limit(&family, &regime).unwrap();

    println!("plane wave k = (0, n), V = cos(2 pi x1), t in critical-time units");
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "n", "t", "sim", "theory", "gap");
    for &t in &[0.5, 1.0] {
        let theory = predict_theorem(&limit, &v, t).unwrap().norm_sqr();
        for j in 5..=9 {
            let n = 1i64 << j;
            let hbar = 1.0 / n as f64;
            let prop = Propagator::new(hbar, regime.epsilon(hbar), &v);
            let s = FourierState::plane_wave_with_hbar(hbar, 2 * n + 64, (0, n)).unwrap();
            let sample = prop
                .echo_rescaled(&s, t, &EvolveOptions::default())
                .unwrap();
            println!(
                "{:>6} {:>10.3} {:>10.5} {:>10.5} {:>10.5}",
                n,
                t,
                sample.echo,
                theory,
                (sample.echo - theory).abs()
            );
        }
    }
}
