//! The parameter quadruple (β, γ, β̂, γ̂) and its admissible regimes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on the regime-defining inequalities.
pub const REGIME_SLACK: f64 = 1e-12;

/// The parameter quadruple. Serialized as the flat record
/// `{beta, gamma, beta_hat, gamma_hat}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypParams {
    pub beta: f64,
    pub gamma: f64,
    pub beta_hat: f64,
    pub gamma_hat: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeTag {
    A1,
    A2,
    A3,
    A4,
}

/// Admissible regime, with the integer shift for A3 and A4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    A1,
    A2,
    A3 { n: usize },
    A4 { n: usize },
}

impl Regime {
    pub fn tag(&self) -> RegimeTag {
        match self {
            Regime::A1 => RegimeTag::A1,
            Regime::A2 => RegimeTag::A2,
            Regime::A3 { .. } => RegimeTag::A3,
            Regime::A4 { .. } => RegimeTag::A4,
        }
    }

    /// The shift `n`; zero for A1 and A2.
    pub fn shift(&self) -> usize {
        match *self {
            Regime::A1 | Regime::A2 => 0,
            Regime::A3 { n } | Regime::A4 { n } => n,
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegimeTag::A1 => "A1",
            RegimeTag::A2 => "A2",
            RegimeTag::A3 => "A3",
            RegimeTag::A4 => "A4",
        };
        f.write_str(s)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::A1 | Regime::A2 => write!(f, "{}", self.tag()),
            Regime::A3 { n } | Regime::A4 { n } => write!(f, "{}(n={n})", self.tag()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variation {
    BoundedNoDrift,
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub eta: f64,
    /// The process has no Gaussian component.
    pub sigma_gaussian: f64,
    pub variation: Variation,
}

impl HypParams {
    /// Builds a validated parameter set.
    pub fn new(beta: f64, gamma: f64, beta_hat: f64, gamma_hat: f64) -> Result<Self> {
        let p = Self::raw(beta, gamma, beta_hat, gamma_hat);
        classify(&p)?;
        Ok(p)
    }

    /// Builds a parameter set without validation.
    pub const fn raw(beta: f64, gamma: f64, beta_hat: f64, gamma_hat: f64) -> Self {
        Self {
            beta,
            gamma,
            beta_hat,
            gamma_hat,
        }
    }

    /// η = 1 - β + β̂ + γ + γ̂.
    pub fn eta(&self) -> f64 {
        1.0 - self.beta + self.beta_hat + self.gamma + self.gamma_hat
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.beta, self.gamma, self.beta_hat, self.gamma_hat]
    }
}

impl fmt::Display for HypParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(β={}, γ={}, β̂={}, γ̂={})",
            self.beta, self.gamma, self.beta_hat, self.gamma_hat
        )
    }
}

fn ge(x: f64, bound: f64) -> bool {
    x >= bound - REGIME_SLACK
}

fn le(x: f64, bound: f64) -> bool {
    x <= bound + REGIME_SLACK
}

fn in_a1(p: &HypParams) -> bool {
    le(p.beta, 1.0) && ge(p.beta_hat, 0.0)
}

fn in_a2(p: &HypParams) -> bool {
    let base = 1.0 - p.beta + p.beta_hat;
    ge(p.beta, 1.0)
        && le(p.beta, 2.0)
        && ge(p.beta_hat, -1.0)
        && le(p.beta_hat, 0.0)
        && ge(base + p.gamma, 0.0)
        && ge(base + p.gamma_hat, 0.0)
}

fn in_a3(p: &HypParams, n: usize) -> bool {
    let nf = n as f64;
    let base = 1.0 - p.beta + p.beta_hat + nf;
    ge(p.beta, 0.0)
        && le(p.beta, 1.0)
        && ge(p.beta_hat, -(nf + 1.0))
        && le(p.beta_hat, -nf)
        && le(base + p.gamma_hat, 0.0)
        && ge(base + p.gamma, 0.0)
}

fn in_a4(p: &HypParams, n: usize) -> bool {
    let nf = n as f64;
    let base = nf - p.beta + p.beta_hat;
    n >= 1
        && ge(p.beta_hat, 0.0)
        && le(p.beta_hat, 1.0)
        && ge(p.beta, nf)
        && le(p.beta, nf + 1.0)
        && ge(base + p.gamma_hat, 0.0)
        && le(base + p.gamma, 0.0)
}

/// Candidate shifts `n` with `x ∈ [n, n+1]`, smallest first.
fn window_candidates(x: f64) -> impl Iterator<Item = usize> {
    let lo = (x - 1.0 - REGIME_SLACK).ceil().max(0.0) as usize;
    let hi = (x + REGIME_SLACK).floor().max(0.0) as usize;
    lo..=hi
}

/// Classifies a parameter set with precedence A1 > A2 > A3 > A4; within A3
/// and A4 the smallest admissible shift wins.
pub fn classify(p: &HypParams) -> Result<Regime> {
    if p.as_array().iter().any(|v| !v.is_finite()) {
        return Err(Error::OutOfDomain("parameters must be finite".into()));
    }
    if !(p.gamma > 0.0 && p.gamma < 1.0) {
        return Err(Error::OutOfDomain("gamma out of (0,1)".into()));
    }
    if !(p.gamma_hat > 0.0 && p.gamma_hat < 1.0) {
        return Err(Error::OutOfDomain("gamma_hat out of (0,1)".into()));
    }
    if in_a1(p) {
        return Ok(Regime::A1);
    }
    if in_a2(p) {
        return Ok(Regime::A2);
    }
    if p.beta_hat < 0.0 {
        if let Some(n) = window_candidates(-p.beta_hat).find(|&n| in_a3(p, n)) {
            return Ok(Regime::A3 { n });
        }
    }
    if let Some(n) = window_candidates(p.beta)
        .filter(|&n| n >= 1)
        .find(|&n| in_a4(p, n))
    {
        return Ok(Regime::A4 { n });
    }
    Err(Error::OutOfDomain(format!(
        "{p} lies in none of the regimes A1-A4"
    )))
}

/// Regime-defining inequalities as `slack >= 0` values.
pub fn regime_slacks(p: &HypParams, regime: Regime) -> Vec<f64> {
    let (b, g, bh, gh) = (p.beta, p.gamma, p.beta_hat, p.gamma_hat);
    let mut s = vec![g, 1.0 - g, gh, 1.0 - gh];
    match regime {
        Regime::A1 => s.extend([1.0 - b, bh]),
        Regime::A2 => s.extend([
            b - 1.0,
            2.0 - b,
            bh + 1.0,
            -bh,
            1.0 - b + bh + g,
            1.0 - b + bh + gh,
        ]),
        Regime::A3 { n } => {
            let nf = n as f64;
            s.extend([
                b,
                1.0 - b,
                bh + nf + 1.0,
                -nf - bh,
                -(1.0 - b + bh + gh + nf),
                1.0 - b + bh + g + nf,
            ])
        }
        Regime::A4 { n } => {
            let nf = n as f64;
            s.extend([
                bh,
                1.0 - bh,
                b - nf,
                nf + 1.0 - b,
                nf - b + bh + gh,
                -(nf - b + bh + g),
            ])
        }
    }
    s
}

/// Derived quantities: η, the (absent) Gaussian coefficient and the path
/// variation.
pub fn derive(p: &HypParams) -> Result<DerivedParams> {
    classify(p)?;
    let variation = if p.gamma + p.gamma_hat < 1.0 {
        Variation::BoundedNoDrift
    } else {
        Variation::Unbounded
    };
    Ok(DerivedParams {
        eta: p.eta(),
        sigma_gaussian: 0.0,
        variation,
    })
}

/// The parameter set whose exponent is z ↦ ψ(-z): (1 - β̂, γ̂, 1 - β, γ).
pub fn dual(p: &HypParams) -> HypParams {
    HypParams::raw(1.0 - p.beta_hat, p.gamma_hat, 1.0 - p.beta, p.gamma)
}
