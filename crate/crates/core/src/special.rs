//! Complex log-gamma, reciprocal gamma, Gauss hypergeometric series and
//! Pochhammer symbols.
//!
//! Real-argument gamma helpers are thin wrappers over the complex log-gamma so
//! that every gamma ratio in the crate shares one accuracy story.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex number used for exponent arguments and values.
pub type ComplexValue = Complex64;

/// Absolute distance to a nonpositive integer below which Γ is treated as
/// having a pole.
pub const POLE_TOLERANCE: f64 = 1e-10;

/// Term cap for the direct ₂F₁ series when no transformation applies.
pub const HYP2F1_MAX_TERMS: usize = 100_000;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k (2k - 1)) for k = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const STIRLING_RADIUS: f64 = 15.0;

/// Distance from `z` to the nearest nonpositive integer, or `None` when the
/// nearest integer is positive.
fn pole_distance(z: Complex64) -> Option<f64> {
    let k = z.re.round();
    if k > 0.0 {
        return None;
    }
    Some((z - Complex64::new(k, 0.0)).norm())
}

/// True when `x` lies within [`POLE_TOLERANCE`] of a nonpositive integer.
pub fn is_gamma_pole(x: f64) -> bool {
    pole_distance(Complex64::new(x, 0.0)).is_some_and(|d| d < POLE_TOLERANCE)
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series
}

/// Logarithm of Γ(z), continued analytically off the negative real axis.
///
/// Only `exp(log_gamma(z))` is branch independent; the imaginary part may
/// differ from the principal logarithm of Γ(z) by a multiple of 2π away from
/// the positive real axis. On the positive real axis the value is real.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if let Some(d) = pole_distance(z) {
        if d < POLE_TOLERANCE {
            return Err(Error::Pole {
                at: format!("{z}"),
                distance: d,
            });
        }
    }
    if z.re < 0.5 && z.im.abs() < STIRLING_RADIUS {
        // Γ(z) Γ(1 - z) = π / sin(πz)
        let s = (z * PI).sin();
        return Ok(Complex64::new(PI.ln(), 0.0)
            - s.ln()
            - log_gamma(Complex64::new(1.0, 0.0) - z)?);
    }
    if z.re >= 0.0 && z.norm() >= STIRLING_RADIUS {
        return Ok(stirling(z));
    }
    let shift = (STIRLING_RADIUS - z.re).ceil().max(0.0) as usize;
    let mut logs = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        logs += (z + k as f64).ln();
    }
    Ok(stirling(z + shift as f64) - logs)
}

/// Γ(z) for complex z.
pub fn gamma_complex(z: ComplexValue) -> Result<ComplexValue> {
    log_gamma(z).map(|l| l.exp())
}

/// 1/Γ(z), which is entire: exactly zero at the poles of Γ.
pub fn rgamma_complex(z: ComplexValue) -> ComplexValue {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// Γ(x) for real x.
pub fn gamma(x: f64) -> Result<f64> {
    gamma_complex(Complex64::new(x, 0.0)).map(|v| v.re)
}

/// 1/Γ(x) for real x; zero at nonpositive integers.
pub fn rgamma(x: f64) -> f64 {
    rgamma_complex(Complex64::new(x, 0.0)).re
}

/// Γ(a)/Γ(b) for real arguments, evaluated through log-gamma differences.
/// A pole of the denominator yields 0; a pole of the numerator is an error.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    let num = log_gamma(Complex64::new(a, 0.0))?;
    match log_gamma(Complex64::new(b, 0.0)) {
        Ok(den) => Ok((num - den).exp().re),
        Err(_) => Ok(0.0),
    }
}

/// Rising factorial (x)_k = x (x+1) … (x+k-1).
pub fn pochhammer(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x + j as f64))
}

fn near_integer(x: f64, tol: f64) -> bool {
    (x - x.round()).abs() < tol
}

/// Direct power series of ₂F₁ with a geometric tail bound.
fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64, max_terms: usize) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..max_terms {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        // Once the term ratio has settled below 1 the remainder is bounded
        // by a geometric series.
        let r = ratio.abs();
        let settled = kf + 1.0 > (a.abs() + b.abs() + c.abs()).max(1.0);
        if settled && r < 1.0 {
            let tail = term.abs() * r / (1.0 - r);
            if tail <= 1e-16 * sum.abs() {
                return Ok(sum);
            }
        }
    }
    Err(Error::Convergence { terms: max_terms })
}

/// ₂F₁(a, b; c; z) for real |z| < 1.
///
/// Uses the direct series for |z| ≤ 0.5 and the `1 - z` linear
/// transformation beyond, unless c - a - b is within 1e-8 of an integer, in
/// which case the direct series is summed with a cap of
/// [`HYP2F1_MAX_TERMS`] terms.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    gauss_2f1_split(a, b, c, z, 1.0 - z)
}

/// As [`gauss_2f1`], with `w = 1 - z` supplied by the caller so that it can
/// be formed without cancellation (e.g. `-expm1(-x)` for `z = exp(-x)`).
pub fn gauss_2f1_split(a: f64, b: f64, c: f64, z: f64, w: f64) -> Result<f64> {
    if is_gamma_pole(c) {
        return Err(Error::Parameter(format!(
            "c = {c} is a nonpositive integer"
        )));
    }
    if !(z.abs() < 1.0) {
        return Err(Error::Parameter(format!("|z| = {} not below 1", z.abs())));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let s = c - a - b;
    if z.abs() <= 0.5 || z < 0.0 || near_integer(s, 1e-8) {
        return hyp2f1_series(a, b, c, z, HYP2F1_MAX_TERMS);
    }
    // Γ(c)Γ(c-a-b)/(Γ(c-a)Γ(c-b)) F(a,b;a+b-c+1;w)
    //   + w^{c-a-b} Γ(c)Γ(a+b-c)/(Γ(a)Γ(b)) F(c-a,c-b;c-a-b+1;w)
    let gc = gamma(c)?;
    let first = gc * gamma(s)? * rgamma(c - a) * rgamma(c - b);
    let second = gc * gamma(-s)? * rgamma(a) * rgamma(b);
    let mut total = 0.0;
    if first != 0.0 {
        total += first * hyp2f1_series(a, b, 1.0 - s, w, HYP2F1_MAX_TERMS)?;
    }
    if second != 0.0 {
        total += second * w.powf(s) * hyp2f1_series(c - a, c - b, 1.0 + s, w, HYP2F1_MAX_TERMS)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_gamma_at_one_is_zero() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-14);
    }

    #[test]
    fn log_gamma_half() {
        // ln √π, mpmath at 40 digits
        let v = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((v.re - 0.572_364_942_924_700_087_1).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn log_gamma_poles() {
        for x in [0.0, -1.0, -7.0, -1.0 + 5e-11] {
            assert!(matches!(log_gamma(c(x, 0.0)), Err(Error::Pole { .. })));
        }
        assert!(log_gamma(c(-1.0 + 1e-9, 0.0)).is_ok());
        assert_eq!(rgamma(-3.0), 0.0);
    }

    #[test]
    fn gamma_known_values() {
        // mpmath
        let cases = [
            (0.1, 9.513_507_698_668_731_8),
            (-0.5, -3.544_907_701_811_032),
            (-1.5, 2.363_271_801_207_355),
            (7.3, 1_271.423_633_663_908_8),
            (30.5, 4.822_696_933_490_908_6e31),
        ];
        for (x, g) in cases {
            let v = gamma(x).unwrap();
            assert!(((v - g) / g).abs() < 1e-13, "Γ({x}) = {v}, want {g}");
        }
    }

    #[test]
    fn log_gamma_large_imaginary() {
        // Re lnΓ(1/2 + iy) = ln √π - ln cosh(πy) / 2
        for y in [20.0, 1e3, 1e6] {
            let v = log_gamma(c(0.5, y)).unwrap();
            let want = 0.5 * PI.ln() - 0.5 * (PI * y - 2f64.ln() + (-2.0 * PI * y).exp().ln_1p());
            assert!((v.re - want).abs() < 1e-9 * want.abs().max(1.0), "y = {y}");
        }
    }

    #[test]
    fn hyp2f1_examples() {
        assert_eq!(gauss_2f1(1.3, -0.4, 2.2, 0.0).unwrap(), 1.0);
        let v = gauss_2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        assert!((v - 1.386_294_361_119_890_6).abs() < 1e-14);
        assert!(matches!(
            gauss_2f1(1.5, 1.1, -2.0, 0.3),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn hyp2f1_log_identity_near_one() {
        // c - a - b = 0 takes the direct-series fallback
        for z in [0.6, 0.8, 0.95] {
            let v = gauss_2f1(1.0, 1.0, 2.0, z).unwrap();
            let want = -(1.0f64 - z).ln() / z;
            assert!(((v - want) / want).abs() < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn hyp2f1_transformation_matches_closed_form() {
        // ₂F₁(a, b; b; z) = (1 - z)^{-a}
        for z in [0.55, 0.9, 0.999, 1.0 - 1e-8] {
            let a = 0.37;
            let v = gauss_2f1(a, 1.7, 1.7, z).unwrap();
            let want = (1.0f64 - z).powf(-a);
            assert!(((v - want) / want).abs() < 1e-11, "z = {z}: {v} vs {want}");
        }
        // (1 - z)^{-1.8} has c - a - b = -1.8
        let z = 0.7;
        let v = gauss_2f1(1.8, 0.6, 0.6, z).unwrap();
        assert!((v / (1.0f64 - z).powf(-1.8) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hyp2f1_convergence_error_near_one() {
        assert!(matches!(
            gauss_2f1(1.0, 1.0, 2.0, 1.0 - 1e-7),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(3.7, 0), 1.0);
        assert_eq!(pochhammer(1.0, 4), 24.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
    }

    fn off_pole(z: Complex64) -> bool {
        pole_distance(z).is_none_or(|d| d > 1e-3)
    }

    proptest! {
        #[test]
        fn recurrence(re in -50.0f64..50.0, im in -50.0f64..50.0) {
            let z = c(re, im);
            prop_assume!(z.norm() <= 50.0 && off_pole(z));
            let lhs = gamma_complex(z + 1.0).unwrap();
            let rhs = z * gamma_complex(z).unwrap();
            prop_assert!(((lhs - rhs) / rhs).norm() < 1e-11);
        }

        #[test]
        fn reflection(x in -10.0f64..10.0) {
            prop_assume!((x - x.round()).abs() > 1e-3);
            let prod = gamma(x).unwrap() * gamma(1.0 - x).unwrap();
            let want = PI / (PI * x).sin();
            prop_assert!(((prod - want) / want).abs() < 1e-10);
        }

        #[test]
        fn hyp2f1_symmetric(a in -3.0f64..3.0, b in -3.0f64..3.0, cc in 0.1f64..4.0, z in -0.9f64..0.99) {
            let ab = gauss_2f1(a, b, cc, z);
            let ba = gauss_2f1(b, a, cc, z);
            if let (Ok(x), Ok(y)) = (ab, ba) {
                prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
            }
        }

        #[test]
        fn pochhammer_step(x in -20.0f64..20.0, k in 0usize..30) {
            let next = pochhammer(x, k + 1);
            let want = pochhammer(x, k) * (x + k as f64);
            prop_assert!((next - want).abs() <= 4.0 * f64::EPSILON * want.abs());
        }
    }
}
