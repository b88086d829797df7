//! Echo of a Gaussian wave packet at the critical coupling, compared
//! against the frequency-pushforward prediction.
//!
//! Run with: cargo run --release --example coherent_echo

use torus_echo::potential::{RegimeSpec, TrigPotential};
use torus_echo::propagator::{EvolveOptions, Propagator};
use torus_echo::states::{CoherentSpec, FourierState, Profile};
use torus_echo::theory::{classify_limit, predict_theorem, InitialDataFamily};

fn main() {
    let regime = RegimeSpec { c: 1.0, alpha: 1.5 };
    let v = TrigPotential::cosine((1, 0), 1.0);
    let spec = CoherentSpec {
        x0: [0.0, 0.0],
        xi0: [0.0, 0.5],
        profile: Profile::Gaussian,
    };
    let limit = classify_limit(&InitialDataFamily::Coherent(spec), &regime).unwrap();
    let theory = predict_theorem(&limit, &v, 1.0).unwrap().norm_sqr();

    println!("packet at x0 = (0,0), xi0 = (0,1/2), V = cos(2 pi x1), t = 1 critical time");
    println!("{:>12} {:>10} {:>10} {:>10}", "hbar", "sim", "theory", "gap");
    for j in 5..=8 {
        let hbar = 0.5f64.powi(j);
        let window = FourierState::required_window(hbar, spec.xi0) + 64;
        let (s, _) = FourierState::coherent(hbar, window, &spec).unwrap();
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
