//! Small numerics helpers: Bessel J0 and Gauss-Legendre nodes.

/// Bessel function of the first kind, order zero, by the alternating
/// power series. Accurate to ~1e-13 for |x| <= 30.
pub fn bessel_j0(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0f64;
    let mut acc = 1.0f64;
    for m in 1..200 {
        term *= -q / ((m * m) as f64);
        acc += term;
        if term.abs() < 1e-18 * acc.abs().max(1.0) {
            break;
        }
    }
    acc
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on
/// Legendre polynomials.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_reference_values() {
        // Abramowitz & Stegun table values.
        assert!((bessel_j0(0.0) - 1.0).abs() < 1e-15);
        assert!((bessel_j0(1.0) - 0.7651976865579666).abs() < 1e-12);
        assert!((bessel_j0(2.0) - 0.22389077914123567).abs() < 1e-12);
        assert!((bessel_j0(5.0) - (-0.17759677131433830)).abs() < 1e-12);
        assert!((bessel_j0(-1.0) - bessel_j0(1.0)).abs() < 1e-15);
    }

    #[test]
    fn j0_is_cosine_average() {
        // J0(t) = integral over the circle of e^{i t cos(2 pi x)} dx.
        let t = 1.7;
        let n = 4096;
        let mut re = 0.0;
        for i in 0..n {
            let x = i as f64 / n as f64;
            re += (t * (std::f64::consts::TAU * x).cos()).cos();
        }
        re /= n as f64;
        assert!((re - bessel_j0(t)).abs() < 1e-12);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        // exact for degree <= 15: check x^14 over [-1,1] = 2/15
        let got: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(14)).sum();
        assert!((got - 2.0 / 15.0).abs() < 1e-13, "{got}");
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-13);
    }

    #[test]
    fn gauss_legendre_gaussian_moment() {
        // 128 nodes on [-8, 8] integrate e^{-s^2/2} to sqrt(2 pi).
        let (x, w) = gauss_legendre(128);
        let a = 8.0;
        let got: f64 = x
            .iter()
            .zip(&w)
            .map(|(xi, wi)| a * wi * (-(a * xi) * (a * xi) / 2.0).exp())
            .sum();
        assert!((got - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-12);
    }
}
