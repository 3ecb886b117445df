//! The Lévy density π(x), in closed hypergeometric form and as a mixture of
//! exponentials built from the residues of ψ.
//!
//! Every pole z₀ of ψ contributes w·e^{-z₀x} to the side of the origin on
//! which it lies, with weight w = -Res(ψ, z₀) for z₀ > 0 and w = Res(ψ, z₀)
//! for z₀ < 0. With η = 1-β+β̂+γ+γ̂, the residues at the red poles
//! 1-β+γ+k and the blue poles -β̂-γ̂-k are
//!
//! Res_red(k)  =  Γ(η+k) / (Γ(η-γ̂+k) Γ(-γ)) · (1+γ)_k / k!
//! Res_blue(k) = -Γ(η+k) / (Γ(η-γ+k) Γ(-γ̂)) · (1+γ̂)_k / k!
//!
//! Each family contributes a ₂F₁ tail on its own side and a finite sum on
//! the other.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::psi;
use crate::lattice::{family_point, Family, PointKind};
use crate::params::{classify, HypParams};
use crate::quadrature::{integrate, integrate_log};
use crate::special::{gamma, gamma_ratio, gauss_2f1_split, is_gamma_pole, HYP2F1_MAX_TERMS};

/// Smallest |x| at which the density is evaluated.
pub const X_MIN: f64 = 1e-8;

/// Largest number of mixture terms per side.
pub const MAX_MIXTURE_TERMS: usize = 5000;

/// Relative accuracy of truncated sums.
const SUM_TOLERANCE: f64 = 1e-16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixtureTerm {
    /// aₖρₖ (or âₖρ̂ₖ)
    pub weight_rate: f64,
    /// ρₖ (or ρ̂ₖ), positive on both sides
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixtureCoefficients {
    pub pos_terms: Vec<MixtureTerm>,
    pub neg_terms: Vec<MixtureTerm>,
    pub truncation_k: usize,
}

/// Residue of ψ at the k-th pole of a family, from the closed formula.
pub fn closed_residue(p: &HypParams, family: Family, k: usize) -> f64 {
    let eta = p.eta();
    let kf = k as f64;
    let (own, other) = match family {
        Family::Red => (p.gamma, p.gamma_hat),
        Family::Blue => (p.gamma_hat, p.gamma),
    };
    let head = gamma_ratio(eta + kf, eta - other + kf).unwrap_or(f64::NAN);
    // (1+γ)_k / k! = Γ(1+γ+k) / (Γ(1+γ) k!)
    let poch = gamma_ratio(1.0 + own + kf, 1.0 + kf).unwrap_or(f64::NAN)
        / gamma(1.0 + own).unwrap_or(f64::NAN);
    let value = head * poch / gamma(-own).unwrap_or(f64::NAN);
    match family {
        Family::Red => value,
        Family::Blue => -value,
    }
}

/// lim_{ε→0} ε ψ(z₀+ε), from the symmetric quotient
/// ε (ψ(z₀+ε) - ψ(z₀-ε)) / 2 extrapolated in ε².
pub fn numerical_residue(p: &HypParams, z0: f64, h: f64) -> Result<f64> {
    const LEVELS: usize = 6;
    let mut table = [[0.0f64; LEVELS]; LEVELS];
    for (j, row) in table.iter_mut().enumerate() {
        let eps = h / 2f64.powi(j as i32);
        let up = psi(p, Complex64::new(z0 + eps, 0.0))?.re;
        let down = psi(p, Complex64::new(z0 - eps, 0.0))?.re;
        row[0] = 0.5 * eps * (up - down);
    }
    for m in 1..LEVELS {
        let f = 4f64.powi(m as i32);
        for j in m..LEVELS {
            table[j][m] = (f * table[j][m - 1] - table[j - 1][m - 1]) / (f - 1.0);
        }
    }
    Ok(table[LEVELS - 1][LEVELS - 1])
}

/// Richardson step for a pole at `z0`: a quarter of the distance to the
/// nearest other pole, capped at 0.1.
pub fn residue_step(p: &HypParams, z0: f64) -> f64 {
    let mut gap = f64::INFINITY;
    for family in [Family::Red, Family::Blue] {
        let first = family_point(p, family, PointKind::Pole, 0);
        // poles of a family are spaced by one; check the two neighbours of z0
        let offset = match family {
            Family::Red => z0 - first,
            Family::Blue => first - z0,
        };
        for k in [offset.floor(), offset.ceil()] {
            if k < 0.0 {
                continue;
            }
            let at = family_point(p, family, PointKind::Pole, k as usize);
            let d = (at - z0).abs();
            if d > 1e-9 {
                gap = gap.min(d);
            }
        }
    }
    (0.25 * gap).min(0.1)
}

/// Number of poles of a family on the "wrong" side of the origin: red
/// poles that are negative, blue poles that are positive.
fn crossing_count(p: &HypParams, family: Family) -> usize {
    let mut k = 0;
    loop {
        let at = family_point(p, family, PointKind::Pole, k);
        let crossed = match family {
            Family::Red => at < 0.0,
            Family::Blue => at > 0.0,
        };
        if !crossed {
            return k;
        }
        k += 1;
    }
}

/// Mixture coefficients from the closed residue formulas. Poles cancelled
/// by a coinciding root carry zero weight and are skipped.
pub fn mixture_coefficients(p: &HypParams, k_terms: usize) -> Result<MixtureCoefficients> {
    classify(p)?;
    if k_terms == 0 || k_terms > MAX_MIXTURE_TERMS {
        return Err(Error::Parameter(format!(
            "number of terms must lie in 1..={MAX_MIXTURE_TERMS}"
        )));
    }
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for family in [Family::Red, Family::Blue] {
        // a family fills its own side; cancelled poles do not count
        let mut own = 0;
        let mut k = 0;
        while own < k_terms {
            let at = family_point(p, family, PointKind::Pole, k);
            let res = closed_residue(p, family, k);
            k += 1;
            if res == 0.0 {
                continue;
            }
            if (at > 0.0) == (family == Family::Red) {
                own += 1;
            }
            if at > 0.0 {
                pos.push(MixtureTerm {
                    weight_rate: -res,
                    rate: at,
                });
            } else {
                neg.push(MixtureTerm {
                    weight_rate: res,
                    rate: -at,
                });
            }
        }
    }
    for side in [&mut pos, &mut neg] {
        side.sort_by(|a, b| a.rate.total_cmp(&b.rate));
        side.truncate(k_terms);
    }
    Ok(MixtureCoefficients {
        pos_terms: pos,
        neg_terms: neg,
        truncation_k: k_terms,
    })
}

/// π(x) from a truncated mixture, failing when the remainder bound is not
/// below 1e-12 of the partial sum.
///
/// The remainder is bounded by a geometric series with ratio
/// e^{-|x|}(1 + 4/K), which dominates the growth of consecutive terms for
/// rates spaced at least one apart. A side holding fewer than
/// `truncation_k` terms is a complete finite mixture and has no remainder.
pub fn density_series(coeffs: &MixtureCoefficients, x: f64) -> Result<f64> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("density undefined at x = {x}")));
    }
    let terms = if x > 0.0 {
        &coeffs.pos_terms
    } else {
        &coeffs.neg_terms
    };
    let ax = x.abs();
    let sum: f64 = terms
        .iter()
        .map(|t| t.weight_rate * (-t.rate * ax).exp())
        .sum();
    let truncation = Error::Truncation {
        terms: terms.len(),
        x,
    };
    if terms.len() < coeffs.truncation_k {
        return Ok(sum);
    }
    let Some(last) = terms.last() else {
        return Err(truncation);
    };
    let r = (-ax).exp() * (1.0 + 4.0 / terms.len() as f64);
    if r >= 1.0 {
        return Err(truncation);
    }
    let bound = last.weight_rate.abs() * (-last.rate * ax).exp() * r / (1.0 - r);
    if bound > 1e-12 * sum.abs() {
        return Err(truncation);
    }
    Ok(sum)
}

/// Σ_{k≥k0} Γ(η+k)/Γ(c+k) · (s)_k/k! · zᵏ with z = 1 - w ∈ (0, 1).
///
/// For z ≤ 1/2 the series is summed directly. Otherwise it is the ₂F₁
/// with the first k0 terms removed; when c is a nonpositive integer the
/// leading terms vanish and the series is re-indexed from k = 1 - c.
fn family_tail(eta: f64, c: f64, s: f64, k0: usize, z: f64, w: f64) -> Result<f64> {
    let term = |k: usize| -> f64 {
        let kf = k as f64;
        let lead = gamma_ratio(eta + kf, c + kf).unwrap_or(f64::NAN);
        let poch = gamma_ratio(s + kf, 1.0 + kf).unwrap_or(f64::NAN) / gamma(s).unwrap_or(f64::NAN);
        lead * poch * z.powi(k as i32)
    };
    if z <= 0.5 {
        return direct_tail(eta, c, s, k0, z, term);
    }
    let m0 = if is_gamma_pole(c) {
        (-c).round() as usize + 1
    } else {
        0
    };
    let (a, b, cc) = (
        eta + m0 as f64,
        s + m0 as f64,
        if m0 == 0 { c } else { m0 as f64 + 1.0 },
    );
    let full = term(m0) * gauss_2f1_split(a, b, cc, z, w)?;
    let head: f64 = (m0..k0).map(term).sum();
    Ok(full - head)
}

fn direct_tail<F: Fn(usize) -> f64>(
    eta: f64,
    c: f64,
    s: f64,
    k0: usize,
    z: f64,
    term: F,
) -> Result<f64> {
    let mut k = k0;
    // skip leading zeros of 1/Γ(c+k)
    while is_gamma_pole(c + k as f64) {
        k += 1;
    }
    let mut t = term(k);
    let mut sum = t;
    for _ in 0..HYP2F1_MAX_TERMS {
        let kf = k as f64;
        let ratio = (eta + kf) * (s + kf) / ((c + kf) * (kf + 1.0)) * z;
        t *= ratio;
        sum += t;
        k += 1;
        if ratio.abs() < 1.0 && (t * ratio / (1.0 - ratio)).abs() <= SUM_TOLERANCE * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        terms: HYP2F1_MAX_TERMS,
    })
}

/// π(x) from the closed forms. Requires |x| ≥ 1e-8.
pub fn density_closed(p: &HypParams, x: f64) -> Result<f64> {
    classify(p)?;
    if !(x.abs() >= X_MIN) || !x.is_finite() {
        return Err(Error::Domain(format!("|x| = {} below {X_MIN}", x.abs())));
    }
    let eta = p.eta();
    let ax = x.abs();
    let z = (-ax).exp();
    let w = -(-ax).exp_m1();
    // the family whose poles accumulate on the side of x, and the other one
    let (own, other) = if x > 0.0 {
        (Family::Red, Family::Blue)
    } else {
        (Family::Blue, Family::Red)
    };
    let (g_own, g_other) = match own {
        Family::Red => (p.gamma, p.gamma_hat),
        Family::Blue => (p.gamma_hat, p.gamma),
    };
    // w·e^{-z₀x} has the sign-adjusted weight -Res on the positive side and
    // Res on the negative side; here `sign` maps Res to the weight
    let sign = if x > 0.0 { -1.0 } else { 1.0 };

    let k0 = crossing_count(p, own);
    let first = family_point(p, own, PointKind::Pole, 0);
    // Res_own(k) = ±Γ(η+k)/(Γ(η-γ_other+k) Γ(-γ_own)) · (1+γ_own)_k/k!
    let res_sign = match own {
        Family::Red => 1.0,
        Family::Blue => -1.0,
    };
    let tail = family_tail(eta, eta - g_other, 1.0 + g_own, k0, z, w)?;
    let mut total = sign * res_sign * tail / gamma(-g_own)? * (-first * x).exp();

    for k in 0..crossing_count(p, other) {
        let at = family_point(p, other, PointKind::Pole, k);
        total += sign * closed_residue(p, other, k) * (-at * x).exp();
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegrabilityReport {
    pub integral_min1x2: f64,
    pub converged: bool,
    pub error_estimate: f64,
}

/// Upper integration limit; the remainder is closed with the leading
/// exponential rate.
const TAIL_START: f64 = 50.0;

/// ∫ min(1, x²) π(x) dx over the real line.
///
/// Quadrature covers 1e-8 ≤ |x| ≤ 50. Below 1e-8 the density is
/// extrapolated as C|x|^{-1-γ-γ̂}; beyond 50 as π(±50)·e^{-ρ₁(|x|-50)} with
/// ρ₁ the smallest rate on that side.
pub fn integrability_check(p: &HypParams) -> Result<IntegrabilityReport> {
    let coeffs = mixture_coefficients(p, 1)?;
    let alpha = p.gamma + p.gamma_hat;
    let mut total = 0.0;
    let mut error = 0.0;
    let mut converged = true;
    for sign in [1.0, -1.0] {
        let pi = |x: f64| density_closed(p, sign * x).unwrap_or(f64::NAN);
        let near = integrate_log(|x| x * x * pi(x), X_MIN, 1.0, 0.0, 1e-10);
        let far = integrate(pi, 1.0, TAIL_START, 0.0, 1e-10);
        match (near, far) {
            (Ok(a), Ok(b)) => {
                total += a.value + b.value;
                error += a.error + b.error;
            }
            _ => converged = false,
        }
        let c = pi(X_MIN) * X_MIN.powf(1.0 + alpha);
        let small = c * X_MIN.powf(2.0 - alpha) / (2.0 - alpha);
        let rate = if sign > 0.0 {
            coeffs.pos_terms[0].rate
        } else {
            coeffs.neg_terms[0].rate
        };
        let large = pi(TAIL_START) / rate;
        if !small.is_finite() || !large.is_finite() {
            converged = false;
        }
        total += small + large;
    }
    converged &= total.is_finite() && error < 1e-6 * total.abs();
    Ok(IntegrabilityReport {
        integral_min1x2: total,
        converged,
        error_estimate: error,
    })
}
