//! Short-time echo decay versus the quadratic variance law
//! E(t) ~ 1 - (eps t / hbar)^2 Var(V).
//!
//! Run with: cargo run --release --example peres_short_time

use torus_echo::potential::TrigPotential;
use torus_echo::propagator::{EvolveOptions, Propagator};
use torus_echo::states::FourierState;

fn main() {
    let hbar = 1.0f64 / 256.0;
    let epsilon = hbar.powf(1.5);
    let v = TrigPotential::cosine((1, 0), 1.0);
    let prop = Propagator::new(hbar, epsilon, &v);
    let s = FourierState::plane_wave_with_hbar(hbar, 576, (0, 256)).unwrap();
    let opts = EvolveOptions {
        dt_control: 1e-7,
        ..Default::default()
    };
    let tau_c = hbar / epsilon;
    println!("plane wave k = (0,256), V = cos(2 pi x1), t in critical-time units");
    println!("{:>8} {:>12} {:>12} {:>10}", "t", "echo", "quadratic", "error");
    for &t in &[0.01, 0.025, 0.05, 0.1, 0.2] {
        let sample = prop.echo_rescaled(&s, t, &opts).unwrap();
        let quad = prop.peres_quadratic(&s, t * tau_c);
        println!(
            "{:>8.3} {:>12.8} {:>12.8} {:>10.2e}",
            t,
            sample.echo,
            quad,
            (sample.echo - quad).abs()
        );
    }
}
