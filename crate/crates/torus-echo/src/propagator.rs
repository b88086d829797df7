//! Time evolution under H = -(ħ²/2)Δ + εV and the fidelity of the
//! perturbed flow against the free one.
//!
//! The kinetic part is diagonal in Fourier and applied exactly. The
//! potential half of each Strang step is a convolution with the Fourier
//! kernel of e^{-iθV}, which for a trigonometric V decays factorially, so
//! the kernel is a handful of coefficients computed once per step size by
//! a small FFT. States stay sparse throughout; amplitude approaching the
//! mode window raises an error instead of aliasing silently.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::potential::TrigPotential;
use crate::states::FourierState;
use crate::{EchoError, Result};

const PI: f64 = std::f64::consts::PI;

/// Amplitudes below this are dropped when trimming state support.
const TRIM_THRESHOLD: f64 = 1e-16;
/// Kernel coefficients below this are dropped.
const KERNEL_THRESHOLD: f64 = 1e-16;
/// Aliasing tail of the kernel transform must fall below this; the FFT
/// round-off floor is ~1e-16, so demanding less is unsatisfiable.
const KERNEL_TAIL: f64 = 1e-15;
/// Amplitude pushed past the window above this aborts the run.
const SPILL_THRESHOLD: f64 = 1e-13;

/// One fidelity measurement, matching the CSV row schema.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EchoSample {
    pub hbar: f64,
    pub epsilon: f64,
    pub t: f64,
    pub re_overlap: f64,
    pub im_overlap: f64,
    pub echo: f64,
    pub dt_used: f64,
    pub norm_drift: f64,
}

impl EchoSample {
    pub fn overlap(&self) -> Complex64 {
        Complex64::new(self.re_overlap, self.im_overlap)
    }
}

/// Controls for the adaptive step-size loop.
#[derive(Debug, Clone, Copy)]
pub struct EvolveOptions {
    /// Stop refining when |echo(n)| moves less than this under halving.
    pub dt_control: f64,
    /// Give up after this many halvings.
    pub max_halvings: u32,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            dt_control: 1e-4,
            max_halvings: 12,
        }
    }
}

/// Evolution engine for one (ħ, ε, V) triple.
pub struct Propagator<'a> {
    pub hbar: f64,
    pub epsilon: f64,
    pub potential: &'a TrigPotential,
}

impl<'a> Propagator<'a> {
    pub fn new(hbar: f64, epsilon: f64, potential: &'a TrigPotential) -> Self {
        Self {
            hbar,
            epsilon,
            potential,
        }
    }

    /// Exact free evolution: mode k picks up e^{-2π²iħt‖k‖²}.
    pub fn free_evolve(&self, state: &FourierState, t: f64) -> FourierState {
        let mut out = state.clone();
        let phase_of = |k: i64| -2.0 * PI * PI * self.hbar * t * (k * k) as f64;
        let (k1_min, k2_min, n1, n2, data) = out.raw_parts_mut();
        for i1 in 0..n1 {
            let f1 = Complex64::from_polar(1.0, wrap(phase_of(k1_min + i1 as i64)));
            for i2 in 0..n2 {
                let f2 = Complex64::from_polar(1.0, wrap(phase_of(k2_min + i2 as i64)));
                data[i1 * n2 + i2] *= f1 * f2;
            }
        }
        out
    }

    /// Strang-split evolution over `steps` uniform steps.
    pub fn perturbed_evolve(
        &self,
        state: &FourierState,
        t: f64,
        steps: usize,
    ) -> Result<FourierState> {
        if t == 0.0 || self.potential.is_zero() || self.epsilon == 0.0 {
            return Ok(self.free_evolve(state, t));
        }
        assert!(steps > 0);
        let dt = t / steps as f64;
        let kernel = potential_kernel(self.potential, self.epsilon * dt / self.hbar)?;
        let mut psi = state.clone();
        self.kinetic_step(&mut psi, dt / 2.0);
        for step in 0..steps {
            psi = apply_kernel(&psi, &kernel)?;
            psi.trim(TRIM_THRESHOLD);
            let half = if step + 1 == steps { dt / 2.0 } else { dt };
            self.kinetic_step(&mut psi, half);
        }
        Ok(psi)
    }

    fn kinetic_step(&self, state: &mut FourierState, dt: f64) {
        let coeff = -2.0 * PI * PI * self.hbar * dt;
        let (k1_min, k2_min, n1, n2, data) = state.raw_parts_mut();
        let table = |k_min: i64, n: usize| -> Vec<Complex64> {
            (0..n)
                .map(|i| {
                    let k = k_min + i as i64;
                    Complex64::from_polar(1.0, wrap(coeff * (k * k) as f64))
                })
                .collect()
        };
        let t1 = table(k1_min, n1);
        let t2 = table(k2_min, n2);
        for i1 in 0..n1 {
            let f1 = t1[i1];
            for i2 in 0..n2 {
                data[i1 * n2 + i2] *= f1 * t2[i2];
            }
        }
    }

    /// Overlap ⟨u_ε(t), u(t)⟩ of the perturbed and free evolutions of the
    /// same initial state, with the step size refined until the echo
    /// stabilizes.
    pub fn echo(&self, state: &FourierState, t: f64, opts: &EvolveOptions) -> Result<EchoSample> {
        if t == 0.0 {
            let n = state.norm_sq();
            return Ok(EchoSample {
                hbar: self.hbar,
                epsilon: self.epsilon,
                t,
                re_overlap: n,
                im_overlap: 0.0,
                echo: n * n,
                dt_used: 0.0,
                norm_drift: 0.0,
            });
        }
        let free = self.free_evolve(state, t);
        let mut steps = ((t.abs() / 0.05).ceil() as usize).max(8);
        let mut perturbed = self.perturbed_evolve(state, t, steps)?;
        let mut overlap = perturbed.inner(&free)?;
        let mut converged = false;
        let mut last_change = f64::INFINITY;
        for _ in 0..opts.max_halvings {
            let next_steps = steps * 2;
            let next = self.perturbed_evolve(state, t, next_steps)?;
            let next_overlap = next.inner(&free)?;
            last_change = (next_overlap.norm() - overlap.norm()).abs();
            steps = next_steps;
            perturbed = next;
            overlap = next_overlap;
            if last_change < opts.dt_control {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(EchoError::DtNotConverged {
                halvings: opts.max_halvings,
                last_change,
            });
        }
        Ok(EchoSample {
            hbar: self.hbar,
            epsilon: self.epsilon,
            t,
            re_overlap: overlap.re,
            im_overlap: overlap.im,
            echo: overlap.norm_sqr(),
            dt_used: t / steps as f64,
            norm_drift: (perturbed.norm() - state.norm()).abs(),
        })
    }

    /// Echo at rescaled time t, i.e. physical time t·τ_c with τ_c = ħ/ε.
    /// The returned sample reports t in rescaled units.
    pub fn echo_rescaled(
        &self,
        state: &FourierState,
        t_rescaled: f64,
        opts: &EvolveOptions,
    ) -> Result<EchoSample> {
        let tau_c = self.hbar / self.epsilon;
        let mut sample = self.echo(state, t_rescaled * tau_c, opts)?;
        sample.t = t_rescaled;
        Ok(sample)
    }

    /// Second-order short-time expansion of the echo,
    /// 1 - (ε²t²/ħ²)·Var_ψ(V), for a unit-norm state.
    pub fn peres_quadratic(&self, state: &FourierState, t: f64) -> f64 {
        let psi = state.to_mode_list();
        let var = self.potential.variance(&psi);
        1.0 - (self.epsilon * t / self.hbar).powi(2) * var
    }
}

fn wrap(phase: f64) -> f64 {
    phase % (2.0 * PI)
}

/// Fourier coefficients of x ↦ e^{-iθV(x)}, exact up to an aliasing tail
/// below `KERNEL_TAIL`, thresholded at `KERNEL_THRESHOLD`.
pub fn potential_kernel(
    potential: &TrigPotential,
    theta: f64,
) -> Result<Vec<((i64, i64), Complex64)>> {
    let band = potential.max_mode_norm().ceil() as usize;
    let mut m = (8 * band.max(4)).next_power_of_two();
    loop {
        let grid = kernel_grid(potential, theta, m);
        let half = m as i64 / 2;
        let quarter = half / 2;
        let idx = |l1: i64, l2: i64| -> usize {
            let a = l1.rem_euclid(m as i64) as usize;
            let b = l2.rem_euclid(m as i64) as usize;
            a * m + b
        };
        let mut tail = 0.0f64;
        for l1 in -half..half {
            for l2 in -half..half {
                if l1.abs().max(l2.abs()) >= quarter {
                    tail = tail.max(grid[idx(l1, l2)].norm());
                }
            }
        }
        if tail < KERNEL_TAIL {
            let mut kernel = Vec::new();
            for l1 in -quarter..=quarter {
                for l2 in -quarter..=quarter {
                    let c = grid[idx(l1, l2)];
                    if c.norm() >= KERNEL_THRESHOLD {
                        kernel.push(((l1, l2), c));
                    }
                }
            }
            return Ok(kernel);
        }
        if m >= 8192 {
            return Err(EchoError::Truncated { mass: tail });
        }
        m *= 2;
    }
}

fn kernel_grid(potential: &TrigPotential, theta: f64, m: usize) -> Vec<Complex64> {
    let mut grid: Vec<Complex64> = (0..m * m)
        .map(|i| {
            let x = [(i / m) as f64 / m as f64, (i % m) as f64 / m as f64];
            Complex64::from_polar(1.0, -theta * potential.eval(x))
        })
        .collect();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(m);
    // rows
    for row in grid.chunks_mut(m) {
        fft.process(row);
    }
    // columns via transpose, fft, transpose
    let mut t = vec![Complex64::ZERO; m * m];
    for i in 0..m {
        for j in 0..m {
            t[j * m + i] = grid[i * m + j];
        }
    }
    for row in t.chunks_mut(m) {
        fft.process(row);
    }
    for i in 0..m {
        for j in 0..m {
            grid[j * m + i] = t[i * m + j] / (m * m) as f64;
        }
    }
    grid
}

/// out(m) = Σ_l kernel(l) · in(m - l), clipped to the window. Amplitude
/// that would land outside the window aborts unless negligible.
fn apply_kernel(
    state: &FourierState,
    kernel: &[((i64, i64), Complex64)],
) -> Result<FourierState> {
    let window = state.window();
    let (a1, a2_min, n1, n2, data) = {
        let (k1_min, k2_min, n1, n2, data) = state.raw_parts();
        (k1_min, k2_min, n1, n2, data)
    };
    if n1 == 0 {
        return Ok(state.clone());
    }
    let ext1 = kernel.iter().map(|&((l1, _), _)| l1.abs()).max().unwrap_or(0);
    let ext2 = kernel.iter().map(|&((_, l2), _)| l2.abs()).max().unwrap_or(0);
    let o1 = (a1 - ext1).max(-window);
    let o2 = (a2_min - ext2).max(-window);
    let e1 = (a1 + n1 as i64 - 1 + ext1).min(window);
    let e2 = (a2_min + n2 as i64 - 1 + ext2).min(window);
    let on1 = (e1 - o1 + 1) as usize;
    let on2 = (e2 - o2 + 1) as usize;
    let mut out = FourierState::with_rect(state.hbar, window, o1, o2, on1, on2);
    {
        let (_, _, _, _, out_data) = out.raw_parts_mut();
        for &((l1, l2), c) in kernel {
            // destination index of source (i1, i2) is
            // (a1 + i1 + l1 - o1, a2_min + i2 + l2 - o2)
            let d1 = a1 + l1 - o1;
            let d2 = a2_min + l2 - o2;
            for i1 in 0..n1 as i64 {
                let j1 = d1 + i1;
                if j1 < 0 || j1 >= on1 as i64 {
                    spill_check(&data[(i1 as usize) * n2..(i1 as usize + 1) * n2], c, window)?;
                    continue;
                }
                let src = (i1 as usize) * n2;
                let dst = (j1 as usize) * on2;
                for i2 in 0..n2 as i64 {
                    let j2 = d2 + i2;
                    if j2 < 0 || j2 >= on2 as i64 {
                        spill_check(&data[src + i2 as usize..src + i2 as usize + 1], c, window)?;
                        continue;
                    }
                    out_data[dst + j2 as usize] += c * data[src + i2 as usize];
                }
            }
        }
    }
    Ok(out)
}

fn spill_check(dropped: &[Complex64], c: Complex64, window: i64) -> Result<()> {
    let worst = dropped.iter().map(|z| z.norm()).fold(0.0, f64::max) * c.norm();
    if worst > SPILL_THRESHOLD {
        Err(EchoError::WindowTooSmall {
            window,
            required: window + 1,
        })
    } else {
        Ok(())
    }
}
