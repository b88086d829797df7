//! Spectral simulation of the quantum Loschmidt echo on the flat 2-torus,
//! together with the closed-form semiclassical limits it converges to.
//!
//! The library propagates truncated Fourier-series wavefunctions under the
//! free and the perturbed semiclassical Schrödinger equations
//!
//! ```text
//!   i ħ ∂_t u = -ħ² Δ u / 2            i ħ ∂_t u = -ħ² Δ u / 2 + ε V u
//! ```
//!
//! and measures the fidelity |⟨u_ε(t), u(t)⟩|² at the critical time scale
//! τ_c = ħ/ε. The `theory` module evaluates the explicit ħ→0 limits for
//! plane-wave and coherent-state initial data; the `harness` module runs
//! ħ-ladder sweeps that pair both sides.
//!
//! Entry points:
//! - [`states`] — plane waves, periodized coherent states, superpositions
//! - [`propagator`] — exact free evolution, Strang-split perturbed evolution,
//!   [`propagator::echo`]
//! - [`microlocal`] — the torus quantization `Op_ħ` and two-microlocal
//!   functionals
//! - [`theory`] — limit-measure classification and closed-form predictions
//! - [`harness`] — scenario files, CSV/manifest output, convergence reports

pub mod harness;
pub mod lattice;
pub mod microlocal;
pub mod plot;
pub mod potential;
pub mod propagator;
pub mod scenario;
pub mod special;
pub mod states;
pub mod theory;

use thiserror::Error;

pub use num_complex::Complex64;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum EchoError {
    #[error("window {window} too small, need at least {required}")]
    WindowTooSmall { window: i64, required: i64 },

    #[error("mode ({0}, {1}) lies outside the Fourier window")]
    ModeOutsideWindow(i64, i64),

    #[error("potential coefficients not Hermitian-symmetric at mode ({0}, {1})")]
    NotHermitian(i64, i64),

    #[error("states disagree: {0}")]
    StateMismatch(String),

    #[error("state support truncated by the window edge (shell mass {mass:.3e})")]
    Truncated { mass: f64 },

    #[error("dt refinement did not converge after {halvings} halvings (last change {last_change:.3e})")]
    DtNotConverged { halvings: u32, last_change: f64 },

    #[error("regime alpha = {0} is not a strong-perturbation regime (need alpha <= 1)")]
    WrongRegime(f64),

    #[error("no closed-form limit is known for this initial-data family")]
    NoClosedForm,

    #[error("quadrature doubling self-check failed (difference {0:.3e})")]
    QuadratureCheck(f64),

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, EchoError>;
