//! Wiener–Hopf factors κ (ascending) and κ̂ (descending) with
//! ψ(z) = -κ(-z) κ̂(z).
//!
//! Every factor is a product of one gamma ratio Γ(a+λ)/Γ(b+λ) and finitely
//! many rational terms (λ+r)/(λ+s).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::psi;
use crate::params::{classify, HypParams, Regime};
use crate::special::{is_gamma_pole, log_gamma, ComplexValue};

/// Shifts closer than this are treated as equal when simplifying.
pub const SHIFT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Ascending,
    Descending,
}

/// Γ(num_offset + λ) / Γ(den_offset + λ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaRatio {
    pub num_offset: f64,
    pub den_offset: f64,
}

/// (λ + root_shift) / (λ + pole_shift), either part possibly absent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFactor {
    pub root_shift: Option<f64>,
    pub pole_shift: Option<f64>,
}

impl LinearFactor {
    pub fn ratio(root: f64, pole: f64) -> Self {
        Self {
            root_shift: Some(root),
            pole_shift: Some(pole),
        }
    }

    pub fn root(root: f64) -> Self {
        Self {
            root_shift: Some(root),
            pole_shift: None,
        }
    }

    pub fn pole(pole: f64) -> Self {
        Self {
            root_shift: None,
            pole_shift: Some(pole),
        }
    }

    fn inverted(&self) -> Self {
        Self {
            root_shift: self.pole_shift,
            pole_shift: self.root_shift,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WienerHopfFactor {
    pub side: Side,
    pub gamma: GammaRatio,
    pub linear: Vec<LinearFactor>,
}

fn same(a: f64, b: f64) -> bool {
    (a - b).abs() < SHIFT_TOLERANCE
}

impl WienerHopfFactor {
    pub fn new(side: Side, gamma: GammaRatio, linear: Vec<LinearFactor>) -> Self {
        let mut f = Self {
            side,
            gamma,
            linear,
        };
        f.simplify();
        f
    }

    /// Removes removable singularities: coinciding linear roots and poles,
    /// and linear terms absorbed into the gamma ratio through
    /// (λ+a)Γ(a+λ) = Γ(a+1+λ).
    fn simplify(&mut self) {
        // flatten into separate root and pole lists
        let mut roots: Vec<f64> = self.linear.iter().filter_map(|l| l.root_shift).collect();
        let mut poles: Vec<f64> = self.linear.iter().filter_map(|l| l.pole_shift).collect();

        let mut changed = true;
        while changed {
            changed = false;
            if let Some(i) = roots.iter().position(|&r| same(r, self.gamma.num_offset)) {
                roots.remove(i);
                self.gamma.num_offset += 1.0;
                changed = true;
            }
            if let Some(i) = poles.iter().position(|&s| same(s, self.gamma.den_offset)) {
                poles.remove(i);
                self.gamma.den_offset += 1.0;
                changed = true;
            }
        }
        roots.retain(|&r| match poles.iter().position(|&s| same(r, s)) {
            Some(i) => {
                poles.remove(i);
                false
            }
            None => true,
        });

        let n = roots.len().max(poles.len());
        self.linear = (0..n)
            .map(|i| LinearFactor {
                root_shift: roots.get(i).copied(),
                pole_shift: poles.get(i).copied(),
            })
            .collect();
    }

    /// Evaluates the factor at complex λ.
    pub fn eval(&self, lambda: ComplexValue) -> Result<ComplexValue> {
        let num = log_gamma(lambda + self.gamma.num_offset)?;
        let mut value = match log_gamma(lambda + self.gamma.den_offset) {
            Ok(den) => (num - den).exp(),
            Err(_) => return Ok(Complex64::new(0.0, 0.0)),
        };
        for l in &self.linear {
            if let Some(r) = l.root_shift {
                value *= lambda + r;
            }
            if let Some(s) = l.pole_shift {
                let d = lambda + s;
                if d.norm() < SHIFT_TOLERANCE {
                    return Err(Error::Pole {
                        at: format!("{lambda}"),
                        distance: d.norm(),
                    });
                }
                value /= d;
            }
        }
        Ok(value)
    }

    /// Evaluates the factor at real λ.
    pub fn eval_real(&self, lambda: f64) -> Result<f64> {
        self.eval(Complex64::new(lambda, 0.0)).map(|v| v.re)
    }

    /// The factor λ ↦ λ / κ(λ), simplified.
    pub fn conjugate(&self) -> Self {
        let mut linear: Vec<LinearFactor> =
            self.linear.iter().map(LinearFactor::inverted).collect();
        linear.push(LinearFactor::root(0.0));
        Self::new(
            self.side,
            GammaRatio {
                num_offset: self.gamma.den_offset,
                den_offset: self.gamma.num_offset,
            },
            linear,
        )
    }

    /// Zeros λ of the factor with λ > -bound, in increasing order of |λ|.
    pub fn zeros(&self, bound: f64) -> Vec<f64> {
        let mut z: Vec<f64> = self
            .linear
            .iter()
            .filter_map(|l| l.root_shift)
            .map(|r| -r)
            .collect();
        let mut k = 0.0;
        while -(self.gamma.den_offset + k) > -bound {
            let at = -(self.gamma.den_offset + k);
            if !is_gamma_pole(self.gamma.num_offset + at) {
                z.push(at);
            }
            k += 1.0;
        }
        z.retain(|&x| x > -bound);
        z.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        z
    }
}

/// Builds (κ, κ̂) for the regime of `p`.
pub fn build_factors(p: &HypParams) -> Result<(WienerHopfFactor, WienerHopfFactor)> {
    let (b, g, bh, gh) = (p.beta, p.gamma, p.beta_hat, p.gamma_hat);
    let ratio = |num_offset, den_offset| GammaRatio {
        num_offset,
        den_offset,
    };
    let (up, down) = match classify(p)? {
        Regime::A1 => (
            (ratio(1.0 - b + g, 1.0 - b), vec![]),
            (ratio(bh + gh, bh), vec![]),
        ),
        Regime::A2 => (
            (ratio(1.0 - b + g, 2.0 - b), vec![LinearFactor::root(-bh)]),
            (ratio(bh + gh, 1.0 + bh), vec![LinearFactor::root(b - 1.0)]),
        ),
        Regime::A3 { n } => {
            let lin = (0..=n)
                .map(|j| LinearFactor::ratio(-bh - j as f64, -bh - gh - j as f64))
                .collect();
            let m = n as f64 + 1.0;
            (
                (ratio(1.0 - b + g, 1.0 - b), lin),
                (ratio(m + bh + gh, m + bh), vec![]),
            )
        }
        Regime::A4 { n } => {
            let lin = (1..=n)
                .map(|j| LinearFactor::ratio(b - j as f64, b - g - j as f64))
                .collect();
            let m = n as f64 + 1.0;
            ((ratio(m - b + g, m - b), vec![]), (ratio(bh + gh, bh), lin))
        }
    };
    Ok((
        WienerHopfFactor::new(Side::Ascending, up.0, up.1),
        WienerHopfFactor::new(Side::Descending, down.0, down.1),
    ))
}

/// Evaluates a factor at complex λ.
pub fn eval_factor(f: &WienerHopfFactor, lambda: ComplexValue) -> Result<ComplexValue> {
    f.eval(lambda)
}

/// Worst relative error of ψ(iθ) = -κ(-iθ) κ̂(iθ) on a grid of θ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorizationCheck {
    pub max_rel_error: f64,
    /// θ values at which an evaluation hit a pole.
    pub skipped: Vec<f64>,
}

pub fn verify_factorization(p: &HypParams, thetas: &[f64]) -> Result<FactorizationCheck> {
    let (up, down) = build_factors(p)?;
    let mut max_rel_error = 0.0f64;
    let mut skipped = Vec::new();
    for &theta in thetas {
        let z = Complex64::new(0.0, theta);
        let (Ok(lhs), Ok(a), Ok(b)) = (psi(p, z), up.eval(-z), down.eval(z)) else {
            skipped.push(theta);
            continue;
        };
        let rhs = -a * b;
        let scale = lhs.norm().max(rhs.norm());
        if scale > 0.0 {
            max_rel_error = max_rel_error.max((lhs - rhs).norm() / scale);
        }
    }
    Ok(FactorizationCheck {
        max_rel_error,
        skipped,
    })
}
