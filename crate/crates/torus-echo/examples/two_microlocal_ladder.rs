//! Two-scale pairings of a wave packet against their classified limits,
//! for the three bundled observables on the lattice Z(1,0).
//!
//! Run with: cargo run --release --example two_microlocal_ladder

use torus_echo::lattice::PrimitiveDirection;
use torus_echo::microlocal::{bundled_observables, two_microlocal, Convention};
use torus_echo::potential::RegimeSpec;
use torus_echo::states::{CoherentSpec, FourierState, Profile};
use torus_echo::theory::{classify_limit, limit_pairing, InitialDataFamily};

fn main() {
    let dir = PrimitiveDirection::new(1, 0).unwrap();
    let regime = RegimeSpec { c: 1.0, alpha: 1.5 };
    let spec = CoherentSpec {
        x0: [0.3, 0.7],
        xi0: [0.0, 0.5],
        profile: Profile::Gaussian,
    };
    let limit = classify_limit(&InitialDataFamily::Coherent(spec), &regime).unwrap();
    for (i, obs) in bundled_observables().iter().enumerate() {
        let want = limit_pairing(&limit, dir, obs).unwrap();
        println!("observable {i}: limit {:.6} + {:.6}i", want.re, want.im);
        for j in 4..=8 {
            let hbar = 0.5f64.powi(j);
            let epsilon = regime.epsilon(hbar);
            let window = FourierState::required_window(hbar, spec.xi0) + 8;
            let (s, _) = FourierState::coherent(hbar, window, &spec).unwrap();
            let got = two_microlocal(&s, &s, obs, dir, epsilon, Convention::InputMode).unwrap();
            println!(
                "  hbar = 2^-{j}: value {:.6} + {:.6}i, gap {:.6}",
                got.re,
                got.im,
                (got - want).norm()
            );
        }
    }
}
