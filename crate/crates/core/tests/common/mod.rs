//! Worked examples and random in-domain parameter sets shared by the
//! integration tests.
#![allow(dead_code)]

use hyplevy::params::{classify, HypParams, Regime, RegimeTag};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const A1: HypParams = HypParams::raw(0.9, 0.5, 0.2, 0.3);
pub const A2: HypParams = HypParams::raw(1.1, 0.5, -0.2, 0.8);
pub const A3: HypParams = HypParams::raw(0.8, 0.4, -1.5, 0.1);
pub const A4: HypParams = HypParams::raw(2.7, 0.2, 0.3, 0.5);

pub const EXAMPLES: [HypParams; 4] = [A1, A2, A3, A4];

fn index(rng: &mut StdRng) -> f64 {
    rng.gen_range(0.02..0.98)
}

/// One parameter set that classifies with the given tag. A3 draws n from
/// 0..=3 and A4 from 1..=3.
pub fn sample(rng: &mut StdRng, tag: RegimeTag) -> HypParams {
    loop {
        let (gamma, gamma_hat) = (index(rng), index(rng));
        let p = match tag {
            RegimeTag::A1 => HypParams::raw(
                rng.gen_range(-2.0..1.0),
                gamma,
                rng.gen_range(0.0..3.0),
                gamma_hat,
            ),
            RegimeTag::A2 => HypParams::raw(
                rng.gen_range(1.0..2.0),
                gamma,
                rng.gen_range(-1.0..0.0),
                gamma_hat,
            ),
            RegimeTag::A3 => {
                let n = rng.gen_range(0..=3) as f64;
                HypParams::raw(
                    rng.gen_range(0.0..1.0),
                    gamma,
                    rng.gen_range(-(n + 1.0)..-n),
                    gamma_hat,
                )
            }
            RegimeTag::A4 => {
                let n = rng.gen_range(1..=3) as f64;
                HypParams::raw(
                    rng.gen_range(n..n + 1.0),
                    gamma,
                    rng.gen_range(0.0..1.0),
                    gamma_hat,
                )
            }
        };
        if classify(&p).map(|r| r.tag()) == Ok(tag) {
            return p;
        }
    }
}

/// `per_regime` sets from each of A1..A4, reproducible from `seed`.
pub fn random_sets(seed: u64, per_regime: usize) -> Vec<HypParams> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(4 * per_regime);
    for tag in [RegimeTag::A1, RegimeTag::A2, RegimeTag::A3, RegimeTag::A4] {
        for _ in 0..per_regime {
            out.push(sample(&mut rng, tag));
        }
    }
    out
}

pub fn regime_of(p: &HypParams) -> Regime {
    classify(p).expect("in domain")
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}
