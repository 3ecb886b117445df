//! Ascending ladder height of an A4 process.
//!
//! With a = n+1-β, the ascending factor is κ(λ) = Γ(a+γ+λ)/Γ(a+λ), the
//! exponent of a subordinator with Lévy density
//! ν(x) = γ/Γ(1-γ) · (1-e^{-x})^{-γ-1} e^{-(a+γ)x} and potential density
//! u(x) = e^{-ax} (1-e^{-x})^{γ-1} / Γ(γ).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{classify, HypParams, Regime};
use crate::quadrature::{integrate, integrate_log};
use crate::special::gamma;
use crate::wiener_hopf::build_factors;

fn a4_shift(p: &HypParams) -> Result<f64> {
    match classify(p)? {
        Regime::A4 { n } => Ok(n as f64 + 1.0 - p.beta),
        r => Err(Error::Regime(format!(
            "ladder objects need regime A4, got {r}"
        ))),
    }
}

/// ν(x) for x > 0.
pub fn ladder_density(p: &HypParams, x: f64) -> Result<f64> {
    let a = a4_shift(p)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "ladder density needs x > 0, got {x}"
        )));
    }
    let g = p.gamma;
    Ok(g / gamma(1.0 - g)? * (-(-x).exp_m1()).powf(-g - 1.0) * (-(a + g) * x).exp())
}

/// u(x) for x > 0; u diverges at 0.
pub fn potential_density(p: &HypParams, x: f64) -> Result<f64> {
    let a = a4_shift(p)?;
    if x == 0.0 {
        return Err(Error::Divergence(x));
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "potential density needs x ≥ 0, got {x}"
        )));
    }
    let g = p.gamma;
    Ok((-a * x).exp() * (-(-x).exp_m1()).powf(g - 1.0) / gamma(g)?)
}

/// Descending ladder objects have no closed form.
pub fn descending_ladder_density(_p: &HypParams, _x: f64) -> Result<f64> {
    Err(Error::Unsupported(
        "descending ladder height density has no closed form".into(),
    ))
}

const LOWER: f64 = 1e-40;
const SPLIT: f64 = 1.0;
const UPPER: f64 = 50.0;

/// ∫₀^∞ f for f ~ x^power at 0 (power > -1) with an exponential tail of
/// the given rate: x^power closed form below 1e-40, log-substituted up to 1,
/// plain up to 50, and f(50)/rate beyond.
fn half_line<F: Fn(f64) -> f64>(f: F, power: f64, rate: f64) -> Result<f64> {
    let origin = f(LOWER) * LOWER / (power + 1.0);
    let near = integrate_log(&f, LOWER, SPLIT, 0.0, 1e-12)?;
    let mid = integrate(&f, SPLIT, UPPER, 0.0, 1e-12)?;
    Ok(origin + near.value + mid.value + f(UPPER) / rate)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderCheck {
    pub lambda: f64,
    pub mu: f64,
    /// Relative error of κ(λ) - κ(μ) = ∫ (e^{-μx} - e^{-λx}) ν(x) dx.
    pub difference_error: f64,
    /// |κ(λ) ∫ e^{-λx} u(x) dx - 1|.
    pub potential_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderReport {
    pub checks: Vec<LadderCheck>,
    pub max_relative_error: f64,
}

/// Checks both Laplace identities for every λ, pairing each λ with the next
/// one in the list (cyclically) as μ.
pub fn verify_ladder_transform(p: &HypParams, lambdas: &[f64]) -> Result<LadderReport> {
    let a = a4_shift(p)?;
    let (kappa, _) = build_factors(p)?;
    let g = p.gamma;
    let mut checks = Vec::with_capacity(lambdas.len());
    for (i, &lambda) in lambdas.iter().enumerate() {
        let mu = lambdas[(i + 1) % lambdas.len()];
        let nu = |x: f64| ladder_density(p, x).unwrap_or(f64::NAN);
        let lhs = kappa.eval_real(lambda)? - kappa.eval_real(mu)?;
        let rhs = half_line(
            |x| {
                // e^{-μx} - e^{-λx} without cancellation for small x
                let diff = (-mu * x).exp() * -(-(lambda - mu) * x).exp_m1();
                diff * nu(x)
            },
            -g,
            a + g + lambda.min(mu),
        )?;
        let difference_error = if lhs == 0.0 && rhs.abs() < 1e-15 {
            0.0
        } else {
            (lhs - rhs).abs() / lhs.abs()
        };
        let transform = half_line(
            |x| (-lambda * x).exp() * potential_density(p, x).unwrap_or(f64::NAN),
            g - 1.0,
            a + lambda,
        )?;
        let potential_error = (transform * kappa.eval_real(lambda)? - 1.0).abs();
        checks.push(LadderCheck {
            lambda,
            mu,
            difference_error,
            potential_error,
        });
    }
    let max_relative_error = checks
        .iter()
        .map(|c| c.difference_error.max(c.potential_error))
        .fold(0.0, f64::max);
    Ok(LadderReport {
        checks,
        max_relative_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::least_squares_slope;

    const A4: HypParams = HypParams::raw(2.7, 0.2, 0.3, 0.5);

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn values_at_one() {
        // mpmath
        assert!(rel(ladder_density(&A4, 1.0).unwrap(), 0.180_669_223_089_389_50) < 1e-13);
        assert!(
            rel(
                potential_density(&A4, 1.0).unwrap(),
                0.232_905_216_079_990_69
            ) < 1e-13
        );
    }

    #[test]
    fn local_exponents() {
        let fit = |f: &dyn Fn(f64) -> f64| {
            let pts: Vec<(f64, f64)> = [1e-6, 1e-5, 1e-4]
                .iter()
                .map(|&x: &f64| (x.ln(), f(x).ln()))
                .collect();
            least_squares_slope(&pts)
        };
        let s = fit(&|x| ladder_density(&A4, x).unwrap());
        assert!((s + 1.2).abs() < 0.01, "{s}");
        let s = fit(&|x| potential_density(&A4, x).unwrap());
        assert!((s + 0.8).abs() < 0.01, "{s}");
    }

    #[test]
    fn errors() {
        assert!(matches!(ladder_density(&A4, -1.0), Err(Error::Domain(_))));
        assert!(matches!(
            potential_density(&A4, 0.0),
            Err(Error::Divergence(_))
        ));
        let a1 = HypParams::raw(0.9, 0.5, 0.2, 0.3);
        assert!(matches!(ladder_density(&a1, 1.0), Err(Error::Regime(_))));
        assert!(matches!(
            descending_ladder_density(&A4, 1.0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn transforms() {
        let r = verify_ladder_transform(&A4, &[0.5, 1.0, 2.0, 5.0]).unwrap();
        assert!(r.max_relative_error < 1e-10, "{r:?}");
        // mpmath: κ(2) - κ(1)
        let (kappa, _) = build_factors(&A4).unwrap();
        let d = kappa.eval_real(2.0).unwrap() - kappa.eval_real(1.0).unwrap();
        assert!(rel(d, 0.151_918_725_009_022_12) < 1e-13);
    }

    #[test]
    fn equal_pair_is_trivial() {
        let r = verify_ladder_transform(&A4, &[2.0, 2.0]).unwrap();
        assert_eq!(r.checks[0].difference_error, 0.0);
        assert!(r.checks[0].potential_error < 1e-10);
    }
}
