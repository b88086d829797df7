//! Quantization of torus symbols and the two-scale matrix elements that
//! track concentration along a rational direction.
//!
//! A symbol is a finite sum a(x, η) = Σ_l amp_l e^{2πi l·x} χ_l(η). Plain
//! quantization acts mode-by-mode, a(x, ξ) with ξ = 2πħk. The two-scale
//! pairing instead feeds χ the rescaled normal frequency
//! η = 2π(ħ²/ε)·H_Λ(k), which stays order one exactly when the state
//! concentrates on the direction Λ at the critical time scale.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::lattice::PrimitiveDirection;
use crate::states::FourierState;
use crate::Result;

const TAU: f64 = std::f64::consts::TAU;

/// Frequency cutoff χ(η) attached to one spatial mode of a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EtaProfile {
    Constant { value: f64 },
    /// e^{-(η-center)²/(2 width²)}.
    Gaussian { center: f64, width: f64 },
    /// cos²(π(η-center)/(2 halfwidth)) inside |η-center| < halfwidth.
    CosineWindow { center: f64, halfwidth: f64 },
}

impl EtaProfile {
    pub fn eval(&self, eta: f64) -> f64 {
        match *self {
            EtaProfile::Constant { value } => value,
            EtaProfile::Gaussian { center, width } => {
                let u = (eta - center) / width;
                (-u * u / 2.0).exp()
            }
            EtaProfile::CosineWindow { center, halfwidth } => {
                let u = eta - center;
                if u.abs() >= halfwidth {
                    0.0
                } else {
                    let c = (std::f64::consts::PI * u / (2.0 * halfwidth)).cos();
                    c * c
                }
            }
        }
    }

    pub fn sup(&self) -> f64 {
        match *self {
            EtaProfile::Constant { value } => value.abs(),
            EtaProfile::Gaussian { .. } | EtaProfile::CosineWindow { .. } => 1.0,
        }
    }

    pub fn lipschitz(&self) -> f64 {
        match *self {
            EtaProfile::Constant { .. } => 0.0,
            EtaProfile::Gaussian { width, .. } => (-0.5f64).exp() / width,
            EtaProfile::CosineWindow { halfwidth, .. } => {
                std::f64::consts::PI / (2.0 * halfwidth)
            }
        }
    }
}

/// One spatial Fourier mode of a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObsTerm {
    pub mode: (i64, i64),
    pub re_amp: f64,
    pub im_amp: f64,
    pub profile: EtaProfile,
}

impl ObsTerm {
    pub fn amp(&self) -> Complex64 {
        Complex64::new(self.re_amp, self.im_amp)
    }
}

/// Finite-mode symbol, optionally precomposed with the geodesic flow for
/// time `flow_shift` (each term picks up e^{2πi s l·ξ}).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observable {
    pub terms: Vec<ObsTerm>,
    #[serde(default)]
    pub flow_shift: f64,
}

impl Observable {
    pub fn new(terms: Vec<ObsTerm>) -> Self {
        Self {
            terms,
            flow_shift: 0.0,
        }
    }

    /// a(x, η) with η fed to every profile directly.
    pub fn eval(&self, x: [f64; 2], eta: f64) -> Complex64 {
        // flow_shift is undefined without a full frequency vector
        assert_eq!(self.flow_shift, 0.0, "eval ignores flow_shift");
        let mut v = Complex64::ZERO;
        for t in &self.terms {
            let phase = TAU * (t.mode.0 as f64 * x[0] + t.mode.1 as f64 * x[1]);
            v += t.amp() * Complex64::from_polar(1.0, phase) * t.profile.eval(eta);
        }
        v
    }

    /// Σ_l |amp_l| sup|χ_l|, an operator-norm bound for the quantization
    /// and a modulus bound for the two-scale pairing of unit states.
    pub fn norm_bound(&self) -> f64 {
        self.terms.iter().map(|t| t.amp().norm() * t.profile.sup()).sum()
    }
}

/// Which mode of the pair (output m, input n = m - l) feeds the frequency
/// cutoffs. The two differ by a lattice shift, so results agree up to
/// O(ħ²/ε).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    InputMode,
    OutputMode,
}

impl Convention {
    pub fn label(&self) -> &'static str {
        match self {
            Convention::InputMode => "input_mode",
            Convention::OutputMode => "output_mode",
        }
    }
}

/// Standard quantization: (Op(a)ψ)(m) = Σ_l amp_l χ_l(‖2πħn‖) ψ(n) with
/// n = m - l, profiles evaluated at the radial frequency of the input mode.
pub fn op_apply(obs: &Observable, state: &FourierState) -> Result<FourierState> {
    let hbar = state.hbar;
    let mut out = FourierState::empty(hbar, state.window());
    for ((n1, n2), c) in state.modes() {
        let xi = [TAU * hbar * n1 as f64, TAU * hbar * n2 as f64];
        let radial = (xi[0] * xi[0] + xi[1] * xi[1]).sqrt();
        for t in &obs.terms {
            let chi = t.profile.eval(radial);
            if chi == 0.0 && obs.flow_shift == 0.0 {
                continue;
            }
            let shift = TAU * obs.flow_shift * (t.mode.0 as f64 * xi[0] + t.mode.1 as f64 * xi[1]);
            let factor = t.amp() * chi * Complex64::from_polar(1.0, shift);
            if factor == Complex64::ZERO {
                continue;
            }
            out.add((n1 + t.mode.0, n2 + t.mode.1), factor * c)?;
        }
    }
    Ok(out)
}

/// One evaluated two-scale matrix element with its provenance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TwoMicrolocalSample {
    pub dir: PrimitiveDirection,
    pub hbar: f64,
    pub re_value: f64,
    pub im_value: f64,
    pub convention: Convention,
}

impl TwoMicrolocalSample {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re_value, self.im_value)
    }
}

/// Two-scale matrix element with the operator-norm bound asserted on the
/// result.
pub fn two_microlocal_sample(
    psi1: &FourierState,
    psi2: &FourierState,
    obs: &Observable,
    dir: PrimitiveDirection,
    epsilon: f64,
    convention: Convention,
) -> Result<TwoMicrolocalSample> {
    let value = two_microlocal(psi1, psi2, obs, dir, epsilon, convention)?;
    let bound = obs.norm_bound() * psi1.norm() * psi2.norm();
    assert!(
        value.norm() <= bound + 1e-9,
        "norm bound violated: {} > {bound}",
        value.norm()
    );
    Ok(TwoMicrolocalSample {
        dir,
        hbar: psi2.hbar,
        re_value: value.re,
        im_value: value.im,
        convention,
    })
}

/// Two-scale matrix element ⟨ψ₁, Op_Λ(a) ψ₂⟩: only terms with mode on Λ
/// contribute, and each profile sees η = 2π(ħ²/ε)H_Λ(k) for the input or
/// output mode k of the pair.
pub fn two_microlocal(
    psi1: &FourierState,
    psi2: &FourierState,
    obs: &Observable,
    dir: PrimitiveDirection,
    epsilon: f64,
    convention: Convention,
) -> Result<Complex64> {
    let hbar = psi2.hbar;
    if (psi1.hbar - hbar).abs() > 1e-300 {
        return Err(crate::EchoError::StateMismatch(format!(
            "hbar {} vs {}",
            psi1.hbar, hbar
        )));
    }
    let scale = TAU * hbar * hbar / epsilon;
    let mut acc = Complex64::ZERO;
    for t in &obs.terms {
        if !dir.contains(t.mode) {
            continue;
        }
        for ((n1, n2), c) in psi2.modes() {
            let m = (n1 + t.mode.0, n2 + t.mode.1);
            let a = psi1.coefficient(m);
            if a == Complex64::ZERO {
                continue;
            }
            let feed = match convention {
                Convention::InputMode => (n1, n2),
                Convention::OutputMode => m,
            };
            let eta = scale * dir.h([feed.0 as f64, feed.1 as f64]);
            let chi = t.profile.eval(eta);
            if chi == 0.0 && obs.flow_shift == 0.0 {
                continue;
            }
            let xi = [TAU * hbar * feed.0 as f64, TAU * hbar * feed.1 as f64];
            let shift =
                TAU * obs.flow_shift * (t.mode.0 as f64 * xi[0] + t.mode.1 as f64 * xi[1]);
            acc += a.conj() * t.amp() * chi * Complex64::from_polar(1.0, shift) * c;
        }
    }
    Ok(acc)
}

/// Bound on the input/output convention gap:
/// ‖ψ₁‖‖ψ₂‖ · 2π(ħ²/ε) · Σ_l |amp_l| Lip(χ_l) |H_Λ(l)|. Shrinks like
/// ħ²/ε along any semiclassical schedule with ε ≫ ħ².
pub fn convention_gap_bound(
    obs: &Observable,
    dir: PrimitiveDirection,
    hbar: f64,
    epsilon: f64,
    norm1: f64,
    norm2: f64,
) -> f64 {
    let scale = TAU * hbar * hbar / epsilon;
    let sum: f64 = obs
        .terms
        .iter()
        .filter(|t| dir.contains(t.mode))
        .map(|t| {
            t.amp().norm()
                * t.profile.lipschitz()
                * dir.h([t.mode.0 as f64, t.mode.1 as f64]).abs()
        })
        .sum();
    norm1 * norm2 * scale * sum
}

/// Three stock symbols on the lattice Z·(1,0), used by the convergence
/// examples and the acceptance suite: a pure frequency cutoff, a single
/// oscillating mode under a compact window, and a two-mode mix.
pub fn bundled_observables() -> Vec<Observable> {
    vec![
        Observable::new(vec![ObsTerm {
            mode: (0, 0),
            re_amp: 1.0,
            im_amp: 0.0,
            profile: EtaProfile::Gaussian {
                center: 0.0,
                width: 1.0,
            },
        }]),
        Observable::new(vec![ObsTerm {
            mode: (1, 0),
            re_amp: 0.8,
            im_amp: 0.3,
            profile: EtaProfile::CosineWindow {
                center: 0.0,
                halfwidth: 6.0,
            },
        }]),
        Observable::new(vec![
            ObsTerm {
                mode: (0, 0),
                re_amp: 0.5,
                im_amp: 0.0,
                profile: EtaProfile::Gaussian {
                    center: 1.0,
                    width: 2.0,
                },
            },
            ObsTerm {
                mode: (2, 0),
                re_amp: 0.0,
                im_amp: 0.4,
                profile: EtaProfile::Gaussian {
                    center: -0.5,
                    width: 1.5,
                },
            },
        ]),
    ]
}

/// ⟨perturbed(ψ₁, tτ_c), Op(a) free(ψ₂, tτ_c)⟩, the observable-weighted
/// overlap of the two evolutions at rescaled time t. The step size is
/// refined until the modulus stabilizes, as for the plain echo.
pub fn fidelity_functional(
    prop: &crate::propagator::Propagator,
    psi1: &FourierState,
    psi2: &FourierState,
    obs: &Observable,
    t_rescaled: f64,
    opts: &crate::propagator::EvolveOptions,
) -> Result<Complex64> {
    let t = t_rescaled * prop.hbar / prop.epsilon;
    let free = prop.free_evolve(psi2, t);
    let weighted = op_apply(obs, &free)?;
    if t == 0.0 {
        return psi1.inner(&weighted);
    }
    let mut steps = ((t.abs() / 0.05).ceil() as usize).max(8);
    let mut value = prop.perturbed_evolve(psi1, t, steps)?.inner(&weighted)?;
    let mut last_change = f64::INFINITY;
    for _ in 0..opts.max_halvings {
        steps *= 2;
        let next = prop.perturbed_evolve(psi1, t, steps)?.inner(&weighted)?;
        last_change = (next.norm() - value.norm()).abs();
        value = next;
        if last_change < opts.dt_control {
            return Ok(value);
        }
    }
    Err(crate::EchoError::DtNotConverged {
        halvings: opts.max_halvings,
        last_change,
    })
}
