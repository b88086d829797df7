//! Quantum states on the torus in the Fourier representation.
//!
//! A state is stored as a dense rectangle of Fourier coefficients inside a
//! larger square mode window. The window bounds every mode the state may
//! ever occupy; the rectangle tracks where the amplitude actually lives and
//! grows on demand during propagation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{EchoError, Result};

const TAU: f64 = std::f64::consts::TAU;

/// Envelope shape for wave packets. Both variants are L²-normalized and
/// even, so their frequency profiles are real and positive at 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// φ(s) = π^{-1/4} e^{-s²/2} per axis.
    Gaussian,
    /// Compactly supported bump c·e^{-1/(1-s²)} on |s| < 1 per axis.
    Bump,
}

impl Profile {
    /// One-axis frequency profile φ̂(σ) = ∫ φ(s) e^{-2πiσs} ds.
    pub fn hat1d(&self, sigma: f64) -> f64 {
        match self {
            Profile::Gaussian => {
                std::f64::consts::SQRT_2
                    * std::f64::consts::PI.powf(0.25)
                    * (-2.0 * std::f64::consts::PI.powi(2) * sigma * sigma).exp()
            }
            Profile::Bump => bump_hat(sigma),
        }
    }

    /// Separable two-axis profile.
    pub fn hat2d(&self, sigma: [f64; 2]) -> f64 {
        self.hat1d(sigma[0]) * self.hat1d(sigma[1])
    }
}

fn bump_norm() -> f64 {
    use std::sync::OnceLock;
    static NORM: OnceLock<f64> = OnceLock::new();
    *NORM.get_or_init(|| {
        // L2 norm of e^{-1/(1-s^2)} on (-1, 1), Simpson with 4000 panels.
        let n = 4000;
        let h = 2.0 / n as f64;
        let f = |s: f64| {
            let d = 1.0 - s * s;
            if d <= 0.0 {
                0.0
            } else {
                (-2.0 / d).exp()
            }
        };
        let mut acc = f(-1.0) + f(1.0);
        for i in 1..n {
            let s = -1.0 + i as f64 * h;
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(s);
        }
        (acc * h / 3.0).sqrt()
    })
}

fn bump_hat(sigma: f64) -> f64 {
    let norm = bump_norm();
    let n = 2000;
    let h = 2.0 / n as f64;
    let f = |s: f64| {
        let d = 1.0 - s * s;
        if d <= 0.0 {
            0.0
        } else {
            (-1.0 / d).exp() * (TAU * sigma * s).cos()
        }
    };
    let mut acc = f(-1.0) + f(1.0);
    for i in 1..n {
        let s = -1.0 + i as f64 * h;
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(s);
    }
    acc * h / 3.0 / norm
}

/// Wave-packet recipe: center, semiclassical momentum, envelope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentSpec {
    pub x0: [f64; 2],
    pub xi0: [f64; 2],
    pub profile: Profile,
}

/// State in the Fourier basis, coefficients indexed by modes in Z².
#[derive(Debug, Clone)]
pub struct FourierState {
    pub hbar: f64,
    /// Hard bound: every occupied mode satisfies |k_i| <= window.
    window: i64,
    k1_min: i64,
    k2_min: i64,
    n1: usize,
    n2: usize,
    data: Vec<Complex64>,
}

impl FourierState {
    pub fn empty(hbar: f64, window: i64) -> Self {
        Self {
            hbar,
            window,
            k1_min: 0,
            k2_min: 0,
            n1: 0,
            n2: 0,
            data: Vec::new(),
        }
    }

    /// Single Fourier mode e_k at its natural scale ħ = 1/‖k‖, unit norm.
    pub fn plane_wave(k: (i64, i64), window: i64) -> Result<Self> {
        if k == (0, 0) {
            return Err(EchoError::StateMismatch("plane wave needs k != 0".into()));
        }
        let hbar = 1.0 / (((k.0 * k.0 + k.1 * k.1) as f64).sqrt());
        Self::plane_wave_with_hbar(hbar, window, k)
    }

    /// Single Fourier mode e_k with an explicitly chosen ħ.
    pub fn plane_wave_with_hbar(hbar: f64, window: i64, k: (i64, i64)) -> Result<Self> {
        let mut s = Self::empty(hbar, window);
        s.add(k, Complex64::new(1.0, 0.0))?;
        Ok(s)
    }

    /// Wave packet of width ħ^{1/2} at `spec.x0` with momentum `spec.xi0`:
    /// coefficients ħ^{1/2} e^{-2πi k·x0} φ̂(ħ^{1/2}(k - ξ0/ħ)), then
    /// renormalized to unit norm. Returns the state and the squared norm
    /// before renormalization.
    pub fn coherent(hbar: f64, window: i64, spec: &CoherentSpec) -> Result<(Self, f64)> {
        let required = Self::required_window(hbar, spec.xi0);
        if window < required {
            return Err(EchoError::WindowTooSmall { window, required });
        }
        let center = [spec.xi0[0] / hbar, spec.xi0[1] / hbar];
        let radius = (20.0 / hbar.sqrt()).ceil() as i64;
        let c1 = center[0].round() as i64;
        let c2 = center[1].round() as i64;
        let mut s = Self::empty(hbar, window);
        let amp0 = hbar.sqrt();
        for k1 in (c1 - radius).max(-window)..=(c1 + radius).min(window) {
            let s1 = hbar.sqrt() * (k1 as f64 - center[0]);
            let f1 = spec.profile.hat1d(s1);
            if f1.abs() < 1e-150 {
                continue;
            }
            for k2 in (c2 - radius).max(-window)..=(c2 + radius).min(window) {
                let s2 = hbar.sqrt() * (k2 as f64 - center[1]);
                let f2 = spec.profile.hat1d(s2);
                let a = amp0 * f1 * f2;
                if a.abs() < 1e-150 {
                    continue;
                }
                let phase = -TAU * (k1 as f64 * spec.x0[0] + k2 as f64 * spec.x0[1]);
                s.add((k1, k2), Complex64::from_polar(a, phase))?;
            }
        }
        let pre = s.norm_sq();
        s.scale(1.0 / pre.sqrt());
        Ok((s, pre))
    }

    /// Smallest window admitting a packet with momentum `xi0` at scale ħ:
    /// the packet peak plus a 20·ħ^{-1/2} mode margin.
    pub fn required_window(hbar: f64, xi0: [f64; 2]) -> i64 {
        let speed = (xi0[0] * xi0[0] + xi0[1] * xi0[1]).sqrt();
        (speed / hbar + 20.0 / hbar.sqrt()).ceil() as i64
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn coefficient(&self, k: (i64, i64)) -> Complex64 {
        if k.0 < self.k1_min
            || k.1 < self.k2_min
            || k.0 >= self.k1_min + self.n1 as i64
            || k.1 >= self.k2_min + self.n2 as i64
        {
            return Complex64::ZERO;
        }
        let i1 = (k.0 - self.k1_min) as usize;
        let i2 = (k.1 - self.k2_min) as usize;
        self.data[i1 * self.n2 + i2]
    }

    /// Adds to the coefficient at `k`, growing the rectangle if needed.
    pub fn add(&mut self, k: (i64, i64), value: Complex64) -> Result<()> {
        if k.0.abs() > self.window || k.1.abs() > self.window {
            return Err(EchoError::ModeOutsideWindow(k.0, k.1));
        }
        self.ensure_covers(k);
        let i1 = (k.0 - self.k1_min) as usize;
        let i2 = (k.1 - self.k2_min) as usize;
        self.data[i1 * self.n2 + i2] += value;
        Ok(())
    }

    fn ensure_covers(&mut self, k: (i64, i64)) {
        if self.n1 == 0 {
            self.k1_min = k.0;
            self.k2_min = k.1;
            self.n1 = 1;
            self.n2 = 1;
            self.data = vec![Complex64::ZERO];
            return;
        }
        let pad = 4i64;
        let mut a1 = self.k1_min;
        let mut b1 = self.k1_min + self.n1 as i64 - 1;
        let mut a2 = self.k2_min;
        let mut b2 = self.k2_min + self.n2 as i64 - 1;
        let mut grew = false;
        if k.0 < a1 {
            a1 = (k.0 - pad).max(-self.window);
            grew = true;
        }
        if k.0 > b1 {
            b1 = (k.0 + pad).min(self.window);
            grew = true;
        }
        if k.1 < a2 {
            a2 = (k.1 - pad).max(-self.window);
            grew = true;
        }
        if k.1 > b2 {
            b2 = (k.1 + pad).min(self.window);
            grew = true;
        }
        if !grew {
            return;
        }
        let n1 = (b1 - a1 + 1) as usize;
        let n2 = (b2 - a2 + 1) as usize;
        let mut data = vec![Complex64::ZERO; n1 * n2];
        for i1 in 0..self.n1 {
            let src = i1 * self.n2;
            let dst = ((self.k1_min - a1) as usize + i1) * n2 + (self.k2_min - a2) as usize;
            data[dst..dst + self.n2].copy_from_slice(&self.data[src..src + self.n2]);
        }
        self.k1_min = a1;
        self.k2_min = a2;
        self.n1 = n1;
        self.n2 = n2;
        self.data = data;
    }

    /// Occupied rectangle as (k1_min, k1_max, k2_min, k2_max), None if empty.
    pub fn bounds(&self) -> Option<(i64, i64, i64, i64)> {
        if self.n1 == 0 {
            None
        } else {
            Some((
                self.k1_min,
                self.k1_min + self.n1 as i64 - 1,
                self.k2_min,
                self.k2_min + self.n2 as i64 - 1,
            ))
        }
    }

    /// Iterates occupied modes with nonzero stored amplitude.
    pub fn modes(&self) -> impl Iterator<Item = ((i64, i64), Complex64)> + '_ {
        (0..self.n1).flat_map(move |i1| {
            (0..self.n2).filter_map(move |i2| {
                let c = self.data[i1 * self.n2 + i2];
                if c == Complex64::ZERO {
                    None
                } else {
                    Some(((self.k1_min + i1 as i64, self.k2_min + i2 as i64), c))
                }
            })
        })
    }

    pub fn to_mode_list(&self) -> Vec<((i64, i64), Complex64)> {
        self.modes().collect()
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&mut self, a: f64) {
        for c in &mut self.data {
            *c *= a;
        }
    }

    pub fn scale_complex(&mut self, a: Complex64) {
        for c in &mut self.data {
            *c *= a;
        }
    }

    /// ⟨self, other⟩, antilinear in self.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if (self.hbar - other.hbar).abs() > 1e-300 {
            return Err(EchoError::StateMismatch(format!(
                "hbar {} vs {}",
                self.hbar, other.hbar
            )));
        }
        // iterate the smaller support
        let (small, big) = if self.data.len() <= other.data.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Complex64::ZERO;
        for (k, c) in small.modes() {
            let d = big.coefficient(k);
            if std::ptr::eq(small, self) {
                acc += c.conj() * d;
            } else {
                acc += d.conj() * c;
            }
        }
        Ok(acc)
    }

    /// a·s1 + b·s2 on the larger window; hbar must agree.
    pub fn superpose(a: Complex64, s1: &Self, b: Complex64, s2: &Self) -> Result<Self> {
        if (s1.hbar - s2.hbar).abs() > 1e-300 {
            return Err(EchoError::StateMismatch(format!(
                "hbar {} vs {}",
                s1.hbar, s2.hbar
            )));
        }
        let mut out = Self::empty(s1.hbar, s1.window.max(s2.window));
        for (k, c) in s1.modes() {
            out.add(k, a * c)?;
        }
        for (k, c) in s2.modes() {
            out.add(k, b * c)?;
        }
        Ok(out)
    }

    /// Weighted sum of several states, renormalized. Returns the state and
    /// the squared norm before renormalization (1 exactly for orthogonal
    /// unit states with unit weight vector).
    pub fn superpose_normalized(
        states: &[&Self],
        weights: &[Complex64],
    ) -> Result<(Self, f64)> {
        if states.is_empty() || states.len() != weights.len() {
            return Err(EchoError::StateMismatch(
                "superposition needs matching states and weights".into(),
            ));
        }
        let hbar = states[0].hbar;
        let window = states.iter().map(|s| s.window).max().unwrap();
        let mut out = Self::empty(hbar, window);
        for (s, &w) in states.iter().zip(weights) {
            if (s.hbar - hbar).abs() > 1e-300 {
                return Err(EchoError::StateMismatch(format!(
                    "hbar {} vs {}",
                    s.hbar, hbar
                )));
            }
            for (k, c) in s.modes() {
                out.add(k, w * c)?;
            }
        }
        let pre = out.norm_sq();
        if pre == 0.0 {
            return Err(EchoError::StateMismatch("superposition is zero".into()));
        }
        out.scale(1.0 / pre.sqrt());
        Ok((out, pre))
    }

    /// Mass on the low-frequency set {ħ²(2π‖k‖)² ≤ delta} and the
    /// high-frequency set {ħ²(2π‖k‖)² ≥ big}. Both must be small for the
    /// oscillation hypotheses behind the critical-time analysis.
    pub fn frequency_localization(&self, delta: f64, big: f64) -> (f64, f64) {
        let mut low = 0.0;
        let mut high = 0.0;
        for ((k1, k2), c) in self.modes() {
            let e = self.hbar * self.hbar
                * (TAU * TAU)
                * ((k1 * k1 + k2 * k2) as f64);
            if e <= delta {
                low += c.norm_sqr();
            }
            if e >= big {
                high += c.norm_sqr();
            }
        }
        (low, high)
    }

    /// Mass at modes with ‖k‖ ≥ 0.9·window, the aliasing danger zone.
    pub fn boundary_shell_mass(&self) -> f64 {
        let r2 = (0.9 * self.window as f64).powi(2);
        self.modes()
            .filter(|&((k1, k2), _)| ((k1 * k1 + k2 * k2) as f64) >= r2)
            .map(|(_, c)| c.norm_sqr())
            .sum()
    }

    /// Drops boundary rows/columns whose amplitudes all fall below
    /// `threshold`, shrinking the rectangle.
    pub fn trim(&mut self, threshold: f64) {
        if self.n1 == 0 {
            return;
        }
        let row_live = |s: &Self, i1: usize| {
            (0..s.n2).any(|i2| s.data[i1 * s.n2 + i2].norm() >= threshold)
        };
        let col_live = |s: &Self, i2: usize| {
            (0..s.n1).any(|i1| s.data[i1 * s.n2 + i2].norm() >= threshold)
        };
        let mut a1 = 0usize;
        let mut b1 = self.n1;
        while a1 < b1 && !row_live(self, a1) {
            a1 += 1;
        }
        while b1 > a1 && !row_live(self, b1 - 1) {
            b1 -= 1;
        }
        if a1 == b1 {
            *self = Self::empty(self.hbar, self.window);
            return;
        }
        let mut a2 = 0usize;
        let mut b2 = self.n2;
        while a2 < b2 && !col_live(self, a2) {
            a2 += 1;
        }
        while b2 > a2 && !col_live(self, b2 - 1) {
            b2 -= 1;
        }
        let n1 = b1 - a1;
        let n2 = b2 - a2;
        let mut data = vec![Complex64::ZERO; n1 * n2];
        for i1 in 0..n1 {
            let src = (a1 + i1) * self.n2 + a2;
            data[i1 * n2..(i1 + 1) * n2].copy_from_slice(&self.data[src..src + n2]);
        }
        self.k1_min += a1 as i64;
        self.k2_min += a2 as i64;
        self.n1 = n1;
        self.n2 = n2;
        self.data = data;
    }

    /// Largest amplitude at modes with max(|k1|, |k2|) >= `radius`.
    pub fn max_amp_outside(&self, radius: i64) -> f64 {
        self.modes()
            .filter(|&((k1, k2), _)| k1.abs().max(k2.abs()) >= radius)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    /// Fraction of squared norm at modes with ‖ħk - ξ0‖ > radius.
    /// Quantifies momentum localization of a packet.
    pub fn momentum_mass_outside(&self, xi0: [f64; 2], radius: f64) -> f64 {
        let total = self.norm_sq();
        if total == 0.0 {
            return 0.0;
        }
        let mut out = 0.0;
        for ((k1, k2), c) in self.modes() {
            let d1 = self.hbar * k1 as f64 - xi0[0];
            let d2 = self.hbar * k2 as f64 - xi0[1];
            if (d1 * d1 + d2 * d2).sqrt() > radius {
                out += c.norm_sqr();
            }
        }
        out / total
    }

    pub(crate) fn raw_parts_mut(
        &mut self,
    ) -> (i64, i64, usize, usize, &mut Vec<Complex64>) {
        (self.k1_min, self.k2_min, self.n1, self.n2, &mut self.data)
    }

    pub(crate) fn raw_parts(&self) -> (i64, i64, usize, usize, &[Complex64]) {
        (self.k1_min, self.k2_min, self.n1, self.n2, &self.data)
    }

    /// Zero-filled state over an explicit rectangle.
    pub(crate) fn with_rect(
        hbar: f64,
        window: i64,
        k1_min: i64,
        k2_min: i64,
        n1: usize,
        n2: usize,
    ) -> Self {
        Self {
            hbar,
            window,
            k1_min,
            k2_min,
            n1,
            n2,
            data: vec![Complex64::ZERO; n1 * n2],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn plane_wave_is_unit() {
        let s = FourierState::plane_wave((0, 8), 64).unwrap();
        close(s.norm(), 1.0, 1e-15);
        close(s.hbar, 1.0 / 8.0, 1e-15);
        assert_eq!(s.coefficient((0, 8)), Complex64::new(1.0, 0.0));
        assert_eq!(s.coefficient((1, 8)), Complex64::ZERO);
        // hbar * h_lambda along the base direction tends to 1 trivially
        let d = crate::lattice::PrimitiveDirection::new(0, 1).unwrap();
        close(s.hbar * d.h([0.0, 8.0]), 1.0, 1e-15);
    }

    #[test]
    fn mode_outside_window_rejected() {
        let r = FourierState::plane_wave((0, 5), 4);
        assert!(matches!(r, Err(EchoError::ModeOutsideWindow(0, 5))));
    }

    #[test]
    fn gaussian_hat_values() {
        // hat1d(0) = sqrt(2) pi^{1/4}, and |hat1d|^2 integrates to 1.
        let p = Profile::Gaussian;
        close(p.hat1d(0.0), std::f64::consts::SQRT_2 * std::f64::consts::PI.powf(0.25), 1e-14);
        let n = 20_000;
        let h = 4.0 / n as f64;
        let mut acc = 0.0;
        for i in 0..=n {
            let s = -2.0 + i as f64 * h;
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc += w * p.hat1d(s).powi(2);
        }
        close(acc * h, 1.0, 1e-10);
    }

    #[test]
    fn bump_hat_unit_mass() {
        let p = Profile::Bump;
        let n = 4000;
        let h = 6.0 / n as f64;
        let mut acc = 0.0;
        for i in 0..=n {
            let s = -3.0 + i as f64 * h;
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc += w * p.hat1d(s).powi(2);
        }
        close(acc * h, 1.0, 1e-4);
    }

    #[test]
    fn coherent_coefficients_match_periodization_oracle() {
        // Oracle: the packet is the periodization of the plane packet
        // ħ^{-1/2} φ((x-x0)/√ħ) e^{2πi ξ0·(x-x0)/ħ}, so its k-th torus
        // coefficient equals the full-line Fourier transform at k. Compute
        // that transform by direct quadrature per axis and compare.
        for &hbar in &[1.0 / 16.0, 1.0 / 64.0] {
            let spec = CoherentSpec {
                x0: [0.3, 0.7],
                xi0: [0.0, 1.0],
                profile: Profile::Gaussian,
            };
            let window = FourierState::required_window(hbar, spec.xi0);
            let (state, pre) = FourierState::coherent(hbar, window, &spec).unwrap();
            // periodization self-overlap: pre = prod over axes of
            // (1 + 2 e^{-1/(4 hbar)} cos(2 pi c_i)) up to lag-2 terms
            let overlap = (1.0 + 2.0 * (-0.25 / hbar).exp()).powi(2) - 1.0;
            close(pre, 1.0, overlap + 1e-4);
            close(state.norm(), 1.0, 1e-12);

            let axis_oracle = |k: i64, x0: f64, xi0: f64| -> Complex64 {
                let n = 4000;
                let lo = x0 - 10.0 * hbar.sqrt();
                let hi = x0 + 10.0 * hbar.sqrt();
                let h = (hi - lo) / n as f64;
                let mut acc = Complex64::ZERO;
                for i in 0..=n {
                    let x = lo + i as f64 * h;
                    let w = if i == 0 || i == n { 0.5 } else { 1.0 };
                    let u = (x - x0) / hbar.sqrt();
                    let env = std::f64::consts::PI.powf(-0.25) * (-u * u / 2.0).exp();
                    let phase = TAU * (xi0 * (x - x0) / hbar - k as f64 * x);
                    acc += w * hbar.powf(-0.25) * env * Complex64::from_polar(1.0, phase);
                }
                acc * h
            };
            for &(k1, k2) in &[(0i64, (1.0 / hbar) as i64), (3, (1.0 / hbar) as i64 + 5), (-2, (1.0 / hbar) as i64 - 7)] {
                let want = axis_oracle(k1, spec.x0[0], spec.xi0[0])
                    * axis_oracle(k2, spec.x0[1], spec.xi0[1]);
                let got = state.coefficient((k1, k2)) * pre.sqrt();
                assert!(
                    (got - want).norm() < 1e-8,
                    "hbar={hbar} k=({k1},{k2}) got {got} want {want}"
                );
            }
        }
    }

    #[test]
    fn coherent_momentum_localization() {
        let hbar = 1.0 / 64.0;
        let spec = CoherentSpec {
            x0: [0.5, 0.5],
            xi0: [1.0, 0.0],
            profile: Profile::Gaussian,
        };
        let (s, _) = FourierState::coherent(hbar, 256, &spec).unwrap();
        // mass concentrates within O(sqrt(hbar)) of xi0 but is spread over
        // ~hbar^{-1/2} modes per axis; the central mode alone carries
        // roughly 4 pi hbar ~ 0.2 of the mass at this scale
        assert!(s.momentum_mass_outside(spec.xi0, 8.0 * hbar.sqrt()) < 1e-6);
        assert!(s.momentum_mass_outside(spec.xi0, 0.01 * hbar.sqrt()) > 0.6);
    }

    #[test]
    fn inner_and_superpose() {
        let a = FourierState::plane_wave_with_hbar(0.1, 16, (1, 0)).unwrap();
        let b = FourierState::plane_wave_with_hbar(0.1, 16, (0, 1)).unwrap();
        assert_eq!(a.inner(&b).unwrap(), Complex64::ZERO);
        let i = Complex64::new(0.0, 1.0);
        let s = FourierState::superpose(Complex64::new(1.0, 0.0), &a, i, &b).unwrap();
        close(s.norm_sq(), 2.0, 1e-14);
        // antilinearity in the first slot
        let got = s.inner(&b).unwrap();
        assert!((got - (-i)).norm() < 1e-14, "{got}");
    }

    #[test]
    fn superpose_normalized_orthogonal_pair() {
        let a = FourierState::plane_wave_with_hbar(0.1, 16, (1, 0)).unwrap();
        let b = FourierState::plane_wave_with_hbar(0.1, 16, (0, 1)).unwrap();
        let inv = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let (s, pre) = FourierState::superpose_normalized(&[&a, &b], &[inv, inv]).unwrap();
        close(pre, 1.0, 1e-14);
        close(s.norm(), 1.0, 1e-14);
        // weights (1, 0) reproduce the first state
        let (s1, pre1) =
            FourierState::superpose_normalized(&[&a, &b], &[Complex64::new(1.0, 0.0), Complex64::ZERO])
                .unwrap();
        close(pre1, 1.0, 1e-14);
        assert_eq!(s1.coefficient((1, 0)), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn superposed_coherent_pair_pre_norm_near_one() {
        // Packets at distinct centers are nearly orthogonal.
        let hbar = 1.0 / 64.0;
        let a = CoherentSpec {
            x0: [0.0, 0.0],
            xi0: [0.0, 1.0],
            profile: Profile::Gaussian,
        };
        let b = CoherentSpec {
            x0: [0.5, 0.5],
            xi0: [1.0, 0.0],
            profile: Profile::Gaussian,
        };
        let w = FourierState::required_window(hbar, a.xi0);
        let (sa, _) = FourierState::coherent(hbar, w, &a).unwrap();
        let (sb, _) = FourierState::coherent(hbar, w, &b).unwrap();
        let inv = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let (_, pre) = FourierState::superpose_normalized(&[&sa, &sb], &[inv, inv]).unwrap();
        close(pre, 1.0, 1e-8);
    }

    #[test]
    fn inner_hbar_mismatch() {
        let a = FourierState::plane_wave_with_hbar(0.1, 16, (1, 0)).unwrap();
        let b = FourierState::plane_wave_with_hbar(0.2, 16, (1, 0)).unwrap();
        assert!(a.inner(&b).is_err());
    }

    #[test]
    fn frequency_localization_plane_wave() {
        // hbar * ||k|| = 1 so the frequency energy is exactly (2 pi)^2.
        let s = FourierState::plane_wave((0, 8), 64).unwrap();
        let e = (TAU).powi(2);
        let (low, high) = s.frequency_localization(0.9 * e, 1.1 * e);
        assert_eq!((low, high), (0.0, 0.0));
        // zero-frequency state violates the low hypothesis
        let mut z = FourierState::empty(0.125, 8);
        z.add((0, 0), Complex64::new(1.0, 0.0)).unwrap();
        let (low, _) = z.frequency_localization(0.1, 100.0);
        close(low, 1.0, 1e-15);
    }

    #[test]
    fn coherent_frequency_localization_and_shell() {
        let hbar = 1.0 / 256.0;
        let spec = CoherentSpec {
            x0: [0.25, 0.5],
            xi0: [0.0, 0.5],
            profile: Profile::Gaussian,
        };
        let w = FourierState::required_window(hbar, spec.xi0);
        let (s, _) = FourierState::coherent(hbar, w, &spec).unwrap();
        let (low, high) = s.frequency_localization(0.1, 100.0);
        assert!(low < 1e-6, "{low}");
        assert!(high < 1e-6, "{high}");
        assert!(s.boundary_shell_mass() < 1e-10);
        // tail mass beyond 10 hbar^{-1/2} modes of the peak
        assert!(s.momentum_mass_outside(spec.xi0, 10.0 * hbar.sqrt()) < 1e-8);
    }

    #[test]
    fn trim_shrinks_support() {
        let mut s = FourierState::empty(0.1, 32);
        s.add((0, 0), Complex64::new(1.0, 0.0)).unwrap();
        s.add((10, 10), Complex64::new(1e-20, 0.0)).unwrap();
        s.trim(1e-16);
        let (a1, b1, a2, b2) = s.bounds().unwrap();
        assert_eq!((a1, b1, a2, b2), (0, 0, 0, 0));
        close(s.norm(), 1.0, 1e-15);
    }
}
