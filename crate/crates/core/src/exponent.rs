//! The Laplace exponent
//!
//! ψ(z) = -Γ(1-β+γ-z) Γ(β̂+γ̂+z) / (Γ(1-β-z) Γ(β̂+z)),
//!
//! its killing rate q = -ψ(0) and its growth order along the imaginary axis.

use num_complex::Complex64;

use crate::error::Result;
use crate::params::HypParams;
use crate::special::{is_gamma_pole, log_gamma, ComplexValue};

/// ψ evaluated at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentValue {
    pub value: ComplexValue,
    pub at: ComplexValue,
}

/// Evaluates ψ(z) as the exponential of a sum of four log-gammas.
///
/// Returns exactly zero at the roots (a denominator argument on a pole of Γ)
/// and a pole error within the pole tolerance of 1-β+γ+k or -β̂-γ̂-k.
pub fn psi(p: &HypParams, z: ComplexValue) -> Result<ComplexValue> {
    let one = Complex64::new(1.0, 0.0);
    let red_num = log_gamma(one * (1.0 - p.beta + p.gamma) - z)?;
    let blue_num = log_gamma(z + (p.beta_hat + p.gamma_hat))?;
    let (Ok(red_den), Ok(blue_den)) = (
        log_gamma(one * (1.0 - p.beta) - z),
        log_gamma(z + p.beta_hat),
    ) else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    Ok(-(red_num + blue_num - red_den - blue_den).exp())
}

pub fn evaluate(p: &HypParams, z: ComplexValue) -> Result<ExponentValue> {
    Ok(ExponentValue {
        value: psi(p, z)?,
        at: z,
    })
}

/// ψ(iθ), the characteristic exponent at real θ.
pub fn psi_imag(p: &HypParams, theta: f64) -> Result<ComplexValue> {
    psi(p, Complex64::new(0.0, theta))
}

/// Killing rate q = Γ(1-β+γ) Γ(β̂+γ̂) / (Γ(1-β) Γ(β̂)).
///
/// Exactly zero when 1-β or β̂ is a nonpositive integer.
pub fn killing_rate(p: &HypParams) -> f64 {
    if is_gamma_pole(1.0 - p.beta) || is_gamma_pole(p.beta_hat) {
        return 0.0;
    }
    match psi(p, Complex64::new(0.0, 0.0)) {
        Ok(v) => -v.re,
        // a numerator pole with nonzero denominators; not reachable for
        // classified parameters
        Err(_) => f64::INFINITY,
    }
}

/// Abscissae of the growth-order fit.
pub const GROWTH_POINTS: [f64; 4] = [1e3, 1e4, 1e5, 1e6];

/// Least-squares slope of log|ψ(iz)| against log z over z ∈ {10³, …, 10⁶}.
pub fn growth_order(p: &HypParams) -> f64 {
    let pts: Vec<(f64, f64)> = GROWTH_POINTS
        .iter()
        .filter_map(|&z| psi_imag(p, z).ok().map(|v| (z.ln(), v.norm().ln())))
        .collect();
    least_squares_slope(&pts)
}

pub(crate) fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    const A1: HypParams = HypParams::raw(0.9, 0.5, 0.2, 0.3);
    const A2: HypParams = HypParams::raw(1.1, 0.5, -0.2, 0.8);
    const A3: HypParams = HypParams::raw(0.8, 0.4, -1.5, 0.1);
    const A4: HypParams = HypParams::raw(2.7, 0.2, 0.3, 0.5);

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn roots_of_a1_example() {
        for z in [0.1, -0.2, 1.1, -3.2] {
            assert!(psi(&A1, re(z)).unwrap().norm() < 1e-10, "z = {z}");
        }
        // and just off a root
        assert!(psi(&A1, re(0.1 + 1e-4)).unwrap().norm() > 1e-6);
    }

    #[test]
    fn poles_of_a1_example() {
        for z in [0.6, -0.5, 2.6] {
            assert!(matches!(psi(&A1, re(z)), Err(Error::Pole { .. })));
        }
    }

    #[test]
    fn psi_at_zero_is_minus_killing_rate() {
        for p in [A1, A2, A3, A4] {
            let q = killing_rate(&p);
            let v = psi(&p, re(0.0)).unwrap();
            assert!((v.re + q).abs() <= 1e-12 * q.max(1e-300), "{p}");
            assert_eq!(v.im, 0.0);
            assert!(q >= 0.0);
        }
    }

    #[test]
    fn killing_rate_examples() {
        // Γ(0.6)Γ(0.5)/(Γ(0.1)Γ(0.2)), mpmath at 40 digits
        let q = killing_rate(&A1);
        assert!((q / 0.060_435_555_913_883_821_14 - 1.0).abs() < 1e-10);
        assert_eq!(killing_rate(&HypParams::raw(1.0, 0.5, 0.2, 0.3)), 0.0);
        assert_eq!(killing_rate(&HypParams::raw(0.9, 0.5, 0.0, 0.3)), 0.0);
    }

    #[test]
    fn growth_order_examples() {
        for (p, want) in [(A1, 0.8), (A2, 1.3), (A4, 0.7), (A3, 0.5)] {
            let s = growth_order(&p);
            assert!((s - want).abs() < 0.05, "{p}: slope {s}");
        }
    }
}
