//! Scenario configuration: a human-editable TOML tree describing the
//! initial data family, potential, perturbation schedule, ħ ladder, time
//! grid and tolerances of one convergence experiment.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::lattice::PrimitiveDirection;
use crate::microlocal::Observable;
use crate::potential::{RegimeSpec, TrigPotential};
use crate::states::{CoherentSpec, FourierState, Profile};
use crate::theory::InitialDataFamily;
use crate::{EchoError, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialTermSpec {
    pub kind: PotentialTermKind,
    #[serde(default)]
    pub mode: [i64; 2],
    pub amplitude: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PotentialTermKind {
    Cosine,
    Sine,
    Constant,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub terms: Vec<PotentialTermSpec>,
}

impl PotentialSpec {
    pub fn build(&self) -> Result<TrigPotential> {
        let mut v = TrigPotential::zero();
        for t in &self.terms {
            let part = match t.kind {
                PotentialTermKind::Cosine => {
                    TrigPotential::cosine((t.mode[0], t.mode[1]), t.amplitude)
                }
                PotentialTermKind::Sine => {
                    TrigPotential::sine((t.mode[0], t.mode[1]), t.amplitude)
                }
                PotentialTermKind::Constant => TrigPotential::constant(t.amplitude),
            };
            v = v.add(&part);
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InitialDataSpec {
    /// e_k with k = n·v, n = 1/(ħ‖v‖) per ladder rung; an optional
    /// transverse drift m·v⊥ with m tuned so 2πmħ²/ε tracks `omega`.
    PlaneWave {
        direction: PrimitiveDirection,
        #[serde(default)]
        omega: f64,
    },
    /// Explicit lattice vectors, one per rung; ħ = 1/‖k‖.
    PlaneWaveSequence { modes: Vec<[i64; 2]> },
    Coherent {
        x0: [f64; 2],
        xi0: [f64; 2],
        profile: Profile,
    },
    TwoCoherent {
        first: CoherentPartSpec,
        second: CoherentPartSpec,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoherentPartSpec {
    pub x0: [f64; 2],
    pub xi0: [f64; 2],
    pub profile: Profile,
}

impl CoherentPartSpec {
    fn to_spec(&self) -> CoherentSpec {
        CoherentSpec {
            x0: self.x0,
            xi0: self.xi0,
            profile: self.profile,
        }
    }
}

impl InitialDataSpec {
    /// The asymptotic family fed to the closed-form classifiers.
    pub fn family(&self) -> Result<InitialDataFamily> {
        Ok(match self {
            InitialDataSpec::PlaneWave { direction, omega } => {
                let u = direction.unit();
                InitialDataFamily::PlaneWave {
                    direction: u,
                    omega: *omega,
                }
            }
            InitialDataSpec::PlaneWaveSequence { modes } => {
                let last = modes.last().ok_or_else(|| {
                    EchoError::Scenario("empty plane-wave sequence".into())
                })?;
                InitialDataFamily::PlaneWave {
                    direction: [last[0] as f64, last[1] as f64],
                    omega: 0.0,
                }
            }
            InitialDataSpec::Coherent { x0, xi0, profile } => {
                InitialDataFamily::Coherent(CoherentSpec {
                    x0: *x0,
                    xi0: *xi0,
                    profile: *profile,
                })
            }
            InitialDataSpec::TwoCoherent { first, second } => InitialDataFamily::TwoCoherent {
                first: first.to_spec(),
                second: second.to_spec(),
            },
        })
    }

    /// Builds the state for one rung and reports the window used.
    pub fn realize(&self, hbar: f64, regime: &RegimeSpec) -> Result<(FourierState, i64)> {
        match self {
            InitialDataSpec::PlaneWave { direction, omega } => {
                let l = direction.length();
                let n = (1.0 / (hbar * l)).round() as i64;
                if n < 1 || (1.0 / (hbar * l) - n as f64).abs() > 1e-9 {
                    return Err(EchoError::Scenario(format!(
                        "hbar {hbar} does not give an integer multiple of {direction}"
                    )));
                }
                let (p, q) = direction.generator();
                let (pp, pq) = direction.perp();
                let m = if *omega == 0.0 {
                    0
                } else {
                    (omega * regime.epsilon(hbar)
                        / (std::f64::consts::TAU * hbar * hbar * l))
                        .round() as i64
                };
                let k = (n * p + m * pp, n * q + m * pq);
                let window = window_for_mode(k);
                Ok((
                    FourierState::plane_wave_with_hbar(hbar, window, k)?,
                    window,
                ))
            }
            InitialDataSpec::PlaneWaveSequence { modes } => {
                let k = modes
                    .iter()
                    .find(|k| {
                        let h = 1.0 / (((k[0] * k[0] + k[1] * k[1]) as f64).sqrt());
                        (h - hbar).abs() < 1e-12 * hbar
                    })
                    .ok_or_else(|| {
                        EchoError::Scenario(format!("no sequence mode matches hbar {hbar}"))
                    })?;
                let k = (k[0], k[1]);
                let window = window_for_mode(k);
                Ok((FourierState::plane_wave((k.0, k.1), window)?, window))
            }
            InitialDataSpec::Coherent { x0, xi0, profile } => {
                let spec = CoherentSpec {
                    x0: *x0,
                    xi0: *xi0,
                    profile: *profile,
                };
                let window = FourierState::required_window(hbar, *xi0) + 64;
                let (s, _) = FourierState::coherent(hbar, window, &spec)?;
                Ok((s, window))
            }
            InitialDataSpec::TwoCoherent { first, second } => {
                let w1 = FourierState::required_window(hbar, first.xi0);
                let w2 = FourierState::required_window(hbar, second.xi0);
                let window = w1.max(w2) + 64;
                let (a, _) = FourierState::coherent(hbar, window, &first.to_spec())?;
                let (b, _) = FourierState::coherent(hbar, window, &second.to_spec())?;
                let inv = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                let (s, _) = FourierState::superpose_normalized(&[&a, &b], &[inv, inv])?;
                Ok((s, window))
            }
        }
    }

    /// The ħ ladder implied by an explicit mode sequence, if any.
    pub fn implied_ladder(&self) -> Option<Vec<f64>> {
        match self {
            InitialDataSpec::PlaneWaveSequence { modes } => Some(
                modes
                    .iter()
                    .map(|k| 1.0 / (((k[0] * k[0] + k[1] * k[1]) as f64).sqrt()))
                    .collect(),
            ),
            _ => None,
        }
    }
}

fn window_for_mode(k: (i64, i64)) -> i64 {
    let norm = ((k.0 * k.0 + k.1 * k.1) as f64).sqrt();
    2 * norm.ceil() as i64 + 64
}

fn default_dt_control() -> f64 {
    1e-4
}

fn default_gap_tolerance() -> f64 {
    0.05
}

fn default_jitter() -> f64 {
    0.02
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub regime: RegimeSpec,
    pub potential: PotentialSpec,
    pub initial_data: InitialDataSpec,
    /// Dyadic ħ values, strictly decreasing. May be omitted when the
    /// initial data is an explicit mode sequence.
    #[serde(default)]
    pub hbar_ladder: Vec<f64>,
    /// Rescaled times (units of τ_c).
    pub t_grid: Vec<f64>,
    #[serde(default = "default_dt_control")]
    pub dt_control: f64,
    /// Final-rung gap threshold for the verdict.
    #[serde(default = "default_gap_tolerance")]
    pub gap_tolerance: f64,
    /// Allowed non-monotonicity of the gap along the ladder.
    #[serde(default = "default_jitter")]
    pub jitter_tolerance: f64,
    #[serde(default)]
    pub observables: Vec<Observable>,
    #[serde(default)]
    pub output_dir: Option<String>,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self =
            toml::from_str(text).map_err(|e| EchoError::Scenario(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn ladder(&self) -> Result<Vec<f64>> {
        let ladder = self
            .initial_data
            .implied_ladder()
            .unwrap_or_else(|| self.hbar_ladder.clone());
        if ladder.is_empty() {
            return Err(EchoError::Scenario("empty hbar ladder".into()));
        }
        for w in ladder.windows(2) {
            if w[1] >= w[0] {
                return Err(EchoError::Scenario(
                    "hbar ladder must be strictly decreasing".into(),
                ));
            }
        }
        Ok(ladder)
    }

    pub fn validate(&self) -> Result<()> {
        let ladder = self.ladder()?;
        if self.dt_control <= 0.0 || self.gap_tolerance <= 0.0 {
            return Err(EchoError::Scenario("tolerances must be positive".into()));
        }
        self.potential.build()?;
        // every rung must admit its window
        for &hbar in &ladder {
            self.initial_data.realize(hbar, &self.regime)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
name = "sample"
t_grid = [0.5, 1.0]
hbar_ladder = [0.03125, 0.015625]

[regime]
c = 1.0
alpha = 1.5

[initial_data]
type = "plane_wave"
direction = "0/1"

[[potential.terms]]
kind = "cosine"
mode = [1, 0]
amplitude = 1.0
"#;

    #[test]
    fn parses_round_trips_and_validates() {
        let cfg = ScenarioConfig::from_toml(SAMPLE).unwrap();
        assert_eq!(cfg.name, "sample");
        assert_eq!(cfg.ladder().unwrap().len(), 2);
        let back = ScenarioConfig::from_toml(&cfg.to_toml()).unwrap();
        assert_eq!(back.name, cfg.name);
    }

    #[test]
    fn rejects_increasing_ladder() {
        let mut cfg = ScenarioConfig::from_toml(SAMPLE).unwrap();
        cfg.hbar_ladder = vec![0.015625, 0.03125];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn plane_wave_realization_tracks_hbar() {
        let spec = InitialDataSpec::PlaneWave {
            direction: "0/1".parse().unwrap(),
            omega: 0.0,
        };
        let regime = RegimeSpec { c: 1.0, alpha: 1.5 };
        let (s, _) = spec.realize(1.0 / 32.0, &regime).unwrap();
        assert_eq!(s.to_mode_list()[0].0, (0, 32));
        assert!(spec.realize(0.013, &regime).is_err());
    }

    #[test]
    fn sequence_implies_ladder() {
        let spec = InitialDataSpec::PlaneWaveSequence {
            modes: vec![[3, 4], [0, 25]],
        };
        let ladder = spec.implied_ladder().unwrap();
        assert_eq!(ladder, vec![0.2, 0.04]);
    }
}
