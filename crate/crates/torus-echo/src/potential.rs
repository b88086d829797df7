//! Real trigonometric potentials on the torus and their directional
//! averages.
//!
//! A potential is a finite Fourier sum V(x) = Σ_k c_k e^{2πi k·x} with the
//! reality constraint c_{-k} = conj(c_k). Averaging along a primitive
//! direction keeps exactly the modes on that line, and the resulting phase
//! integrals along drifted straight lines have an elementary closed form.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::lattice::PrimitiveDirection;
use crate::{EchoError, Result};

const TAU: f64 = std::f64::consts::TAU;

/// Perturbation strength schedule epsilon(hbar) = c * hbar^alpha.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RegimeSpec {
    pub c: f64,
    pub alpha: f64,
}

impl RegimeSpec {
    pub fn epsilon(&self, hbar: f64) -> f64 {
        self.c * hbar.powf(self.alpha)
    }

    /// Critical time scale tau_c = hbar / epsilon.
    pub fn tau_c(&self, hbar: f64) -> f64 {
        hbar / self.epsilon(hbar)
    }

    /// True for 1 < alpha < 2, the window where the critical-time limit
    /// theorem applies.
    pub fn is_semiclassical_window(&self) -> bool {
        self.alpha > 1.0 && self.alpha < 2.0
    }
}

/// Real-valued trigonometric polynomial on T² = (R/Z)².
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPotential {
    // BTreeMap keeps iteration deterministic across runs.
    coeffs: BTreeMap<(i64, i64), Complex64>,
}

impl TrigPotential {
    /// Builds from Fourier coefficients, checking c_{-k} = conj(c_k).
    /// Coefficients below 1e-300 in modulus are dropped.
    pub fn new(coeffs: impl IntoIterator<Item = ((i64, i64), Complex64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, c) in coeffs {
            if c.norm() < 1e-300 {
                continue;
            }
            *map.entry(k).or_insert(Complex64::ZERO) += c;
        }
        map.retain(|_, c| c.norm() >= 1e-300);
        for (&(k1, k2), &c) in &map {
            let mirror = map
                .get(&(-k1, -k2))
                .copied()
                .unwrap_or(Complex64::ZERO);
            if (mirror - c.conj()).norm() > 1e-12 * (1.0 + c.norm()) {
                return Err(EchoError::NotHermitian(k1, k2));
            }
        }
        Ok(Self { coeffs: map })
    }

    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    /// a * cos(2π k·x).
    pub fn cosine(k: (i64, i64), amplitude: f64) -> Self {
        let half = Complex64::new(amplitude / 2.0, 0.0);
        Self::new([(k, half), ((-k.0, -k.1), half)]).expect("cosine is real")
    }

    /// a * sin(2π k·x).
    pub fn sine(k: (i64, i64), amplitude: f64) -> Self {
        let half = Complex64::new(0.0, -amplitude / 2.0);
        Self::new([(k, half), ((-k.0, -k.1), half.conj())]).expect("sine is real")
    }

    pub fn constant(value: f64) -> Self {
        Self::new([((0, 0), Complex64::new(value, 0.0))]).expect("constant is real")
    }

    pub fn coefficients(&self) -> impl Iterator<Item = ((i64, i64), Complex64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coefficient(&self, k: (i64, i64)) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest |k| over the support, 0 for the zero potential.
    pub fn max_mode_norm(&self) -> f64 {
        self.coeffs
            .keys()
            .map(|&(a, b)| ((a * a + b * b) as f64).sqrt())
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, x: [f64; 2]) -> f64 {
        let mut v = Complex64::ZERO;
        for (&(k1, k2), &c) in &self.coeffs {
            let phase = TAU * (k1 as f64 * x[0] + k2 as f64 * x[1]);
            v += c * Complex64::from_polar(1.0, phase);
        }
        v.re
    }

    /// Spatial mean ∫ V dx = c_0.
    pub fn mean(&self) -> f64 {
        self.coefficient((0, 0)).re
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coefficients().chain(other.coefficients())).expect("sum of real is real")
    }

    pub fn scale(&self, a: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&k, &c)| (k, c * a)).collect(),
        }
    }

    /// Pointwise product; coefficients convolve.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (&(a1, a2), &ca) in &self.coeffs {
            for (&(b1, b2), &cb) in &other.coeffs {
                terms.push(((a1 + b1, a2 + b2), ca * cb));
            }
        }
        Self::new(terms).expect("product of real is real")
    }

    /// Directional average I_Λ(V): keeps exactly the modes k = j·v
    /// (including j = 0).
    pub fn project(&self, dir: PrimitiveDirection) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&k, _)| dir.contains(k))
                .map(|(&k, &c)| (k, c))
                .collect(),
        }
    }

    /// ∫₀ᵗ V(x + s w) ds for a fixed drift vector w, by the per-mode
    /// closed form ∫₀ᵗ e^{2πi k·(x+sw)} ds = e^{2πi k·x} μ(2π k·w, t)
    /// with μ(ω, t) = (e^{iωt} - 1)/(iω), μ(0, t) = t.
    pub fn line_integral(&self, x: [f64; 2], w: [f64; 2], t: f64) -> f64 {
        let mut v = Complex64::ZERO;
        for (&(k1, k2), &c) in &self.coeffs {
            let kx = TAU * (k1 as f64 * x[0] + k2 as f64 * x[1]);
            let omega = TAU * (k1 as f64 * w[0] + k2 as f64 * w[1]);
            v += c * Complex64::from_polar(1.0, kx) * mu(omega, t);
        }
        v.re
    }

    /// ∫₀ᵗ I_Λ(V)(x + s η v/L) ds, the phase accumulated by the second
    /// transport term of the critical-time limit. `eta` is the rescaled
    /// normal frequency carried by the two-microlocal measure.
    pub fn phase_integral(
        &self,
        dir: PrimitiveDirection,
        x: [f64; 2],
        eta: f64,
        t: f64,
    ) -> f64 {
        let mut v = Complex64::ZERO;
        for (&(k1, k2), &c) in &self.coeffs {
            let Some(j) = dir.lattice_index((k1, k2)) else {
                continue;
            };
            let kx = TAU * (k1 as f64 * x[0] + k2 as f64 * x[1]);
            // k·(η v/L) = j v·v η / L = j L η
            let omega = TAU * (j as f64) * dir.length() * eta;
            v += c * Complex64::from_polar(1.0, kx) * mu(omega, t);
        }
        v.re
    }

    /// ⟨ψ, V ψ⟩ for Fourier coefficients `psi` given as (mode, amplitude)
    /// pairs; ψ need not be normalized.
    pub fn expectation(&self, psi: &[((i64, i64), Complex64)]) -> f64 {
        let lookup: BTreeMap<(i64, i64), Complex64> = psi.iter().copied().collect();
        let mut v = Complex64::ZERO;
        for (&(m1, m2), &am) in &lookup {
            for (&(k1, k2), &c) in &self.coeffs {
                let n = (m1 - k1, m2 - k2);
                if let Some(&an) = lookup.get(&n) {
                    v += am.conj() * c * an;
                }
            }
        }
        v.re
    }

    /// Variance ⟨ψ,V²ψ⟩ - ⟨ψ,Vψ⟩² for a unit-norm state.
    pub fn variance(&self, psi: &[((i64, i64), Complex64)]) -> f64 {
        let sq = self.convolve(self);
        sq.expectation(psi) - self.expectation(psi).powi(2)
    }
}

/// μ(ω, t) = ∫₀ᵗ e^{iωs} ds, stable near ω t = 0.
fn mu(omega: f64, t: f64) -> Complex64 {
    let z = omega * t;
    if z.abs() < 1e-6 {
        // 3-term Taylor of t(1 + iz/2 - z²/6): relative error below 1e-25.
        Complex64::new(t * (1.0 - z * z / 6.0), t * z / 2.0)
    } else {
        (Complex64::from_polar(1.0, z) - 1.0) / Complex64::new(0.0, omega)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn rejects_non_real() {
        let r = TrigPotential::new([((1, 0), Complex64::new(1.0, 0.0))]);
        assert!(matches!(r, Err(EchoError::NotHermitian(1, 0))));
        let r = TrigPotential::new([((0, 0), Complex64::new(0.0, 1.0))]);
        assert!(r.is_err());
    }

    #[test]
    fn eval_cosine() {
        let v = TrigPotential::cosine((1, 0), 1.0);
        close(v.eval([0.0, 0.3]), 1.0, 1e-12);
        close(v.eval([0.25, 0.9]), 0.0, 1e-12);
        close(v.eval([0.5, 0.0]), -1.0, 1e-12);
        close(v.mean(), 0.0, 1e-15);
    }

    #[test]
    fn projection_keeps_line_modes() {
        let v = TrigPotential::cosine((1, 0), 1.0)
            .add(&TrigPotential::cosine((1, 1), 0.5))
            .add(&TrigPotential::constant(0.25));
        let d = PrimitiveDirection::new(1, 1).unwrap();
        let proj = v.project(d);
        close(proj.coefficient((1, 1)).re, 0.25, 1e-15);
        close(proj.coefficient((0, 0)).re, 0.25, 1e-15);
        assert_eq!(proj.coefficient((1, 0)), Complex64::ZERO);
        // idempotent
        assert_eq!(proj.project(d), proj);
    }

    #[test]
    fn projection_matches_grid_line_average() {
        // Oracle: the projection is the average along the transverse
        // periodic flow x + s v_perp/L, s in [0, L); 64 equispaced points
        // compute that average exactly for max mode norm below 32.
        let v = TrigPotential::cosine((1, 0), 0.7)
            .add(&TrigPotential::cosine((2, -1), 0.3))
            .add(&TrigPotential::sine((1, 2), 0.4));
        let d = PrimitiveDirection::new(2, -1).unwrap();
        let proj = v.project(d);
        let l = d.length();
        let u = d.unit_perp();
        for &x in &[[0.1, 0.7], [0.63, 0.21], [0.0, 0.0]] {
            let n = 64;
            let mut avg = 0.0;
            for i in 0..n {
                let s = l * i as f64 / n as f64;
                avg += v.eval([x[0] + s * u[0], x[1] + s * u[1]]);
            }
            avg /= n as f64;
            close(proj.eval(x), avg, 1e-10);
        }
    }

    #[test]
    fn mean_matches_coefficient_sum_oracle() {
        // Oracle: evaluate on a 64x64 grid and average.
        let v = TrigPotential::cosine((3, 1), 0.9)
            .add(&TrigPotential::constant(0.37))
            .add(&TrigPotential::sine((0, 2), 1.1));
        let n = 64;
        let mut avg = 0.0;
        for i in 0..n {
            for j in 0..n {
                avg += v.eval([i as f64 / n as f64, j as f64 / n as f64]);
            }
        }
        avg /= (n * n) as f64;
        close(v.mean(), avg, 1e-10);
        close(v.mean(), 0.37, 1e-12);
    }

    #[test]
    fn convolve_is_pointwise_product() {
        let a = TrigPotential::cosine((1, 0), 1.0);
        let b = TrigPotential::sine((0, 1), 0.5).add(&TrigPotential::constant(0.2));
        let prod = a.convolve(&b);
        for &x in &[[0.11, 0.47], [0.9, 0.3]] {
            close(prod.eval(x), a.eval(x) * b.eval(x), 1e-12);
        }
    }

    #[test]
    fn line_integral_matches_trapezoid() {
        let v = TrigPotential::cosine((1, 0), 1.0).add(&TrigPotential::cosine((1, 1), 0.4));
        let x = [0.2, 0.33];
        let w = [0.7, -0.4];
        let t = 1.9;
        let n = 10_000;
        let mut acc = 0.0;
        for i in 0..=n {
            let s = t * i as f64 / n as f64;
            let weight = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc += weight * v.eval([x[0] + s * w[0], x[1] + s * w[1]]);
        }
        acc *= t / n as f64;
        close(v.line_integral(x, w, t), acc, 1e-6);
    }

    #[test]
    fn phase_integral_matches_line_integral_of_projection() {
        let v = TrigPotential::cosine((1, 0), 1.0)
            .add(&TrigPotential::cosine((2, 2), 0.6))
            .add(&TrigPotential::constant(0.1));
        let d = PrimitiveDirection::new(1, 1).unwrap();
        let proj = v.project(d);
        let eta = 0.83;
        let u = d.unit();
        let w = [eta * u[0], eta * u[1]];
        for &t in &[0.5, 2.0, 7.3] {
            close(
                v.phase_integral(d, [0.4, 0.15], eta, t),
                proj.line_integral([0.4, 0.15], w, t),
                1e-10,
            );
        }
    }

    #[test]
    fn phase_integral_eta_zero_is_t_times_projection() {
        let v = TrigPotential::cosine((1, 0), 1.0).add(&TrigPotential::constant(0.2));
        let d = PrimitiveDirection::new(1, 0).unwrap();
        let x = [0.37, 0.0];
        let t = 3.1;
        close(
            v.phase_integral(d, x, 0.0, t),
            t * v.project(d).eval(x),
            1e-12,
        );
        // continuity across the small-argument branch of mu
        let a = v.phase_integral(d, x, 1e-8, t);
        let b = v.phase_integral(d, x, 1e-7, t);
        close(a, b, 1e-5);
    }

    #[test]
    fn expectation_and_variance_plane_wave() {
        // For any pure plane wave e_k, <V> = mean and Var = sum over
        // nonzero modes of |c_l|^2. For V = cos(2 pi x1): 2 * (1/2)^2 = 1/2.
        let v = TrigPotential::cosine((1, 0), 1.0);
        let psi = vec![((0, 5), Complex64::new(1.0, 0.0))];
        close(v.expectation(&psi), 0.0, 1e-15);
        close(v.variance(&psi), 0.5, 1e-12);
    }

    #[test]
    fn regime_spec() {
        let r = RegimeSpec { c: 1.0, alpha: 1.5 };
        let hbar = 1.0 / 64.0;
        close(r.epsilon(hbar), hbar.powf(1.5), 1e-18);
        close(r.tau_c(hbar), hbar.powf(-0.5), 1e-12);
        assert!(r.is_semiclassical_window());
        assert!(!RegimeSpec { c: 1.0, alpha: 1.0 }.is_semiclassical_window());
    }
}
