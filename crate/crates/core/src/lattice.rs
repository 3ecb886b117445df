//! Roots and poles of the Laplace exponent, their interlacement, and the
//! coefficients that turn an interlacing product into a mixture of
//! exponentials.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::HypParams;
use crate::special::log_gamma;
use crate::wiener_hopf::WienerHopfFactor;

use num_complex::Complex64;

/// Absolute tolerance under which a root and a pole are considered equal
/// and cancel.
pub const CANCEL_TOLERANCE: f64 = 1e-12;

/// Which gamma ratio of ψ a root or pole comes from: red is
/// Γ(1-β+γ-z)/Γ(1-β-z), blue is Γ(β̂+γ̂+z)/Γ(β̂+z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Red,
    Blue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PointKind {
    Root,
    Pole,
}

/// A root or pole of ψ, with the family and index `k` it was generated from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticePoint {
    /// Signed location on the real line.
    pub location: f64,
    pub family: Family,
    pub kind: PointKind,
    pub index: usize,
}

impl LatticePoint {
    pub fn magnitude(&self) -> f64 {
        self.location.abs()
    }
}

/// Location of the k-th point of a family.
pub fn family_point(p: &HypParams, family: Family, kind: PointKind, k: usize) -> f64 {
    let k = k as f64;
    match (family, kind) {
        (Family::Red, PointKind::Root) => 1.0 - p.beta + k,
        (Family::Red, PointKind::Pole) => 1.0 - p.beta + p.gamma + k,
        (Family::Blue, PointKind::Root) => -p.beta_hat - k,
        (Family::Blue, PointKind::Pole) => -p.beta_hat - p.gamma_hat - k,
    }
}

/// The first roots and poles of ψ on each side of the origin. Negative-side
/// sequences are ordered by increasing magnitude.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootPoleLattice {
    pub pos_roots: Vec<LatticePoint>,
    pub pos_poles: Vec<LatticePoint>,
    pub neg_roots: Vec<LatticePoint>,
    pub neg_poles: Vec<LatticePoint>,
    /// Root–pole pairs that coincide and were removed.
    pub cancelled: Vec<(LatticePoint, LatticePoint)>,
}

fn magnitudes(points: &[LatticePoint]) -> Vec<f64> {
    points.iter().map(LatticePoint::magnitude).collect()
}

impl RootPoleLattice {
    /// ζ_k
    pub fn pos_root_values(&self) -> Vec<f64> {
        magnitudes(&self.pos_roots)
    }
    /// ρ_k
    pub fn pos_pole_values(&self) -> Vec<f64> {
        magnitudes(&self.pos_poles)
    }
    /// ζ̂_k as positive magnitudes
    pub fn neg_root_values(&self) -> Vec<f64> {
        magnitudes(&self.neg_roots)
    }
    /// ρ̂_k as positive magnitudes
    pub fn neg_pole_values(&self) -> Vec<f64> {
        magnitudes(&self.neg_poles)
    }

    pub fn all_points(&self) -> impl Iterator<Item = &LatticePoint> {
        self.pos_roots
            .iter()
            .chain(&self.pos_poles)
            .chain(&self.neg_roots)
            .chain(&self.neg_poles)
    }
}

/// Enumerates the first `count` roots and poles of ψ on each side of 0.
///
/// Coinciding root–pole pairs are excised and listed in `cancelled`. A root
/// at the origin (an unkilled process) is placed on the side whose nearest
/// point is a pole, positive side first.
pub fn enumerate(p: &HypParams, count: usize) -> RootPoleLattice {
    // families that cross the origin contribute a finite number of points to
    // the "other" side, so generate enough to fill both
    let red_extra = p.beta.max(0.0).ceil() as usize + 2;
    let blue_extra = (-p.beta_hat).max(0.0).ceil() as usize + 2;
    let mut roots = Vec::new();
    let mut poles = Vec::new();
    for (family, extra) in [(Family::Red, red_extra), (Family::Blue, blue_extra)] {
        for k in 0..count + extra {
            for (kind, out) in [(PointKind::Root, &mut roots), (PointKind::Pole, &mut poles)] {
                out.push(LatticePoint {
                    location: family_point(p, family, kind, k),
                    family,
                    kind,
                    index: k,
                });
            }
        }
    }

    let mut cancelled = Vec::new();
    let mut pole_used = vec![false; poles.len()];
    roots.retain(|r| {
        let hit = poles
            .iter()
            .enumerate()
            .find(|(i, q)| !pole_used[*i] && (q.location - r.location).abs() < CANCEL_TOLERANCE);
        match hit {
            Some((i, q)) => {
                pole_used[i] = true;
                cancelled.push((*r, *q));
                false
            }
            None => true,
        }
    });
    let poles: Vec<LatticePoint> = poles
        .into_iter()
        .zip(pole_used)
        .filter_map(|(q, used)| (!used).then_some(q))
        .collect();

    let by_magnitude = |a: &LatticePoint, b: &LatticePoint| a.magnitude().total_cmp(&b.magnitude());
    let split = |pts: &[LatticePoint], positive: bool| {
        let mut side: Vec<LatticePoint> = pts
            .iter()
            .filter(|x| {
                if positive {
                    x.location > CANCEL_TOLERANCE
                } else {
                    x.location < -CANCEL_TOLERANCE
                }
            })
            .copied()
            .collect();
        side.sort_by(by_magnitude);
        side
    };
    let mut pos_roots = split(&roots, true);
    let mut neg_roots = split(&roots, false);
    let mut pos_poles = split(&poles, true);
    let neg_poles = split(&poles, false);
    // an uncancelled pole at the origin cannot occur for admissible
    // parameters; keep it visible on the positive side
    pos_poles.extend(
        poles
            .iter()
            .filter(|x| x.location.abs() <= CANCEL_TOLERANCE),
    );
    pos_poles.sort_by(by_magnitude);

    for origin in roots
        .iter()
        .filter(|x| x.location.abs() <= CANCEL_TOLERANCE)
    {
        let starts_with_pole =
            |rs: &[LatticePoint], ps: &[LatticePoint]| match (rs.first(), ps.first()) {
                (_, None) => false,
                (None, Some(_)) => true,
                (Some(r), Some(q)) => q.magnitude() < r.magnitude(),
            };
        if starts_with_pole(&pos_roots, &pos_poles) {
            pos_roots.insert(0, *origin);
        } else if starts_with_pole(&neg_roots, &neg_poles) {
            neg_roots.insert(0, *origin);
        } else {
            pos_roots.insert(0, *origin);
        }
    }

    for side in [&mut pos_roots, &mut neg_roots, &mut pos_poles] {
        side.truncate(count);
    }
    let mut neg_poles = neg_poles;
    neg_poles.truncate(count);

    RootPoleLattice {
        pos_roots,
        pos_poles,
        neg_roots,
        neg_poles,
        cancelled,
    }
}

/// `ζ_1 < ρ_1 < ζ_2 < ρ_2 < …` for magnitudes, with `ζ_1 ≥ 0`.
fn alternates(roots: &[f64], poles: &[f64]) -> bool {
    if roots.first().is_some_and(|&r| r < 0.0) {
        return false;
    }
    for (i, &rho) in poles.iter().enumerate() {
        match roots.get(i) {
            Some(&zeta) if zeta < rho => {}
            _ => return false,
        }
        if let Some(&next) = roots.get(i + 1) {
            if !(rho < next) {
                return false;
            }
        }
    }
    // every root past the first must be preceded by a pole
    roots.len() <= poles.len() + 1
}

/// Strict alternation of roots and poles on both sides of the origin.
pub fn check_interlacing(lat: &RootPoleLattice) -> bool {
    let side_ok = |roots: &[LatticePoint], poles: &[LatticePoint]| {
        let r = magnitudes(roots);
        let q = magnitudes(poles);
        // truncation to equal counts can leave one side a point short
        let n = r.len().min(q.len());
        alternates(&r[..n], &q[..n])
    };
    side_ok(&lat.pos_roots, &lat.pos_poles) && side_ok(&lat.neg_roots, &lat.neg_poles)
}

/// Coefficients of the mixture representation of an interlacing product.
///
/// For φ(z) = Π (1 + z/ρ_n) / (1 + z/ζ_n):
///
/// φ(z) = a_0 + ∫ [Σ a_n ζ_n e^{-ζ_n x}] e^{-zx} dx,
/// 1/φ(z) = 1 + z b_0 + ∫ [Σ b_n ρ_n e^{-ρ_n x}] (1 - e^{-zx}) dx.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma1Coefficients {
    pub a0: f64,
    pub a_seq: Vec<f64>,
    pub b0: f64,
    pub b_seq: Vec<f64>,
    pub truncation_k: usize,
}

/// Products are truncated this many terms past the last requested
/// coefficient.
pub const LEMMA1_GUARD: usize = 20;

/// Arithmetic-tail model of the sequences beyond the truncation point:
/// ρ_k ≈ s (k + c_ρ), ζ_k ≈ s (k + c_ζ).
struct TailModel {
    m: usize,
    spacing: f64,
    c_zeta: f64,
    c_rho: f64,
}

impl TailModel {
    fn fit(zeta: &[f64], rho: &[f64], m: usize) -> Self {
        let spacing = 0.5 * ((zeta[m - 1] - zeta[m - 2]) + (rho[m - 1] - rho[m - 2]));
        let mf = m as f64;
        Self {
            m,
            spacing,
            c_zeta: zeta[m - 1] / spacing - mf,
            c_rho: rho[m - 1] / spacing - mf,
        }
    }

    /// ln Π_{k>m} (1 - x/ρ_k) / (1 - x/ζ_k) under the tail model, via
    /// Π_j (j+A)(j+B)/((j+C)(j+D)) = Γ(C)Γ(D)/(Γ(A)Γ(B)) when A+B = C+D.
    fn ln_tail(&self, x: f64) -> f64 {
        let y = x / self.spacing;
        let m1 = self.m as f64 + 1.0;
        let a = m1 + self.c_rho - y;
        let b = m1 + self.c_zeta;
        let c = m1 + self.c_rho;
        let d = m1 + self.c_zeta - y;
        let lg = |v: f64| {
            log_gamma(Complex64::new(v, 0.0))
                .map(|l| l.re)
                .unwrap_or(f64::NAN)
        };
        lg(c) + lg(d) - lg(a) - lg(b)
    }

    /// lim Π_{k>m} ζ_k/ρ_k
    fn a0_tail(&self) -> f64 {
        if (self.c_rho - self.c_zeta).abs() < 1e-9 {
            1.0
        } else {
            0.0
        }
    }

    /// lim Π_{k≥m} ρ_k/ζ_{k+1}
    fn b0_tail(&self) -> f64 {
        if (self.c_rho - self.c_zeta - 1.0).abs() < 1e-9 {
            1.0
        } else {
            0.0
        }
    }
}

/// Accumulates a product of signed factors as (sign, ln|·|).
#[derive(Default)]
struct LogProduct {
    negative: bool,
    ln_abs: f64,
}

impl LogProduct {
    fn mul(&mut self, v: f64) {
        if v < 0.0 {
            self.negative = !self.negative;
        }
        self.ln_abs += v.abs().ln();
    }
    fn div(&mut self, v: f64) {
        if v < 0.0 {
            self.negative = !self.negative;
        }
        self.ln_abs -= v.abs().ln();
    }
    fn value(&self) -> f64 {
        let v = self.ln_abs.exp();
        if self.negative {
            -v
        } else {
            v
        }
    }
}

fn validate_interlacing(zeta: &[f64], rho: &[f64], m: usize) -> Result<()> {
    if zeta.len() < m || rho.len() < m {
        return Err(Error::Interlacing(format!(
            "need at least {m} terms, got {} roots and {} poles",
            zeta.len(),
            rho.len()
        )));
    }
    for k in 0..m {
        let (z, r) = (zeta[k], rho[k]);
        if !(z > 0.0) || z > r {
            return Err(Error::Interlacing(format!(
                "ζ_{} = {z}, ρ_{} = {r}",
                k + 1,
                k + 1
            )));
        }
        if k + 1 < m && !(r < zeta[k + 1]) {
            return Err(Error::Interlacing(format!(
                "ρ_{} = {r} not below ζ_{} = {}",
                k + 1,
                k + 2,
                zeta[k + 1]
            )));
        }
    }
    Ok(())
}

/// Computes a_0, a_1..a_K, b_0, b_1..b_K for interlacing sequences
/// ζ_1 ≤ ρ_1 < ζ_2 ≤ ρ_2 < … .
///
/// Products run over the first K + 20 terms; beyond that the sequences are
/// modelled as arithmetic progressions and the tail is closed in gamma
/// functions. Terms past index K + 20 are ignored.
pub fn lemma1_coefficients(zeta: &[f64], rho: &[f64], k_max: usize) -> Result<Lemma1Coefficients> {
    let m = k_max + LEMMA1_GUARD;
    validate_interlacing(zeta, rho, m)?;
    let (zeta, rho) = (&zeta[..m], &rho[..m]);
    let tail = TailModel::fit(zeta, rho, m);

    let a0 = zeta
        .iter()
        .zip(rho)
        .map(|(z, r)| (z / r).ln())
        .sum::<f64>()
        .exp()
        * tail.a0_tail();
    let b0 = (0..m - 1)
        .map(|k| (rho[k] / zeta[k + 1]).ln())
        .sum::<f64>()
        .exp()
        * tail.b0_tail()
        / zeta[0];

    let mut a_seq = Vec::with_capacity(k_max);
    let mut b_seq = Vec::with_capacity(k_max);
    for n in 0..k_max {
        let zn = zeta[n];
        let first = 1.0 - zn / rho[n];
        let a = if first == 0.0 {
            0.0
        } else {
            let mut prod = LogProduct::default();
            prod.mul(first);
            for k in (0..m).filter(|&k| k != n) {
                prod.mul(1.0 - zn / rho[k]);
                prod.div(1.0 - zn / zeta[k]);
            }
            prod.ln_abs += tail.ln_tail(zn);
            prod.value()
        };
        a_seq.push(a);

        let rn = rho[n];
        let first = 1.0 - rn / zeta[n];
        let b = if first == 0.0 {
            0.0
        } else {
            let mut prod = LogProduct::default();
            prod.mul(-first);
            for k in (0..m).filter(|&k| k != n) {
                prod.mul(1.0 - rn / zeta[k]);
                prod.div(1.0 - rn / rho[k]);
            }
            prod.ln_abs -= tail.ln_tail(rn);
            prod.value()
        };
        b_seq.push(b);
    }
    Ok(Lemma1Coefficients {
        a0,
        a_seq,
        b0,
        b_seq,
        truncation_k: k_max,
    })
}

/// Default Bernstein certification grid: [0, 50] with 2001 points.
pub fn default_bernstein_grid() -> Vec<f64> {
    (0..2001).map(|i| i as f64 * 0.025).collect()
}

/// Default highest finite-difference order.
pub const BERNSTEIN_ORDERS: usize = 8;

/// Outcome of a finite-difference Bernstein test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BernsteinReport {
    pub passed: bool,
    /// Largest sign violation divided by the scale max|f|; ≤ 1e-9 passes.
    pub worst_violation: f64,
    /// Difference order at which the worst violation occurred (0 for
    /// negativity of the function itself).
    pub worst_order: usize,
}

/// Finite-difference test for a Bernstein function on an equally spaced
/// grid: f ≥ 0, Δ¹f ≥ 0 and (-1)^k Δ^k f ≤ 0 for 2 ≤ k ≤ `orders`, each
/// up to 1e-9 · max|f|.
pub fn bernstein_report<F>(f: F, orders: usize, grid: &[f64]) -> BernsteinReport
where
    F: Fn(f64) -> f64,
{
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return BernsteinReport {
            passed: false,
            worst_violation: f64::INFINITY,
            worst_order: 0,
        };
    }
    let scale = values
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let mut worst = (0.0f64, 0usize);
    let mut note = |violation: f64, order: usize| {
        if violation > worst.0 {
            worst = (violation, order);
        }
    };
    for v in &values {
        note(-v / scale, 0);
    }
    let mut diff = values;
    for order in 1..=orders {
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
        // sign(Δ^k f) = (-1)^{k-1}
        let sign = if order % 2 == 1 { 1.0 } else { -1.0 };
        for d in &diff {
            note(-sign * d / scale, order);
        }
    }
    BernsteinReport {
        passed: worst.0 <= 1e-9,
        worst_violation: worst.0,
        worst_order: worst.1,
    }
}

/// Finite-difference Bernstein test of an arbitrary function.
pub fn certify_bernstein_fn<F>(f: F, orders: usize, grid: &[f64]) -> bool
where
    F: Fn(f64) -> f64,
{
    bernstein_report(f, orders, grid).passed
}

/// Finite-difference Bernstein test of a Wiener–Hopf factor.
pub fn certify_bernstein(factor: &WienerHopfFactor, orders: usize, grid: &[f64]) -> bool {
    certify_bernstein_fn(|x| factor.eval_real(x).unwrap_or(f64::NAN), orders, grid)
}

/// Special-Bernstein test: both κ and λ ↦ λ/κ(λ) pass the finite-difference
/// test.
pub fn certify_special_bernstein(factor: &WienerHopfFactor, orders: usize, grid: &[f64]) -> bool {
    let conj = factor.conjugate();
    certify_bernstein(factor, orders, grid) && certify_bernstein(&conj, orders, grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{classify, Regime};

    const A1: HypParams = HypParams::raw(0.9, 0.5, 0.2, 0.3);
    const A2: HypParams = HypParams::raw(1.1, 0.5, -0.2, 0.8);
    const A3: HypParams = HypParams::raw(0.8, 0.4, -1.5, 0.1);
    const A4: HypParams = HypParams::raw(2.7, 0.2, 0.3, 0.5);

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn a1_example_lattice() {
        let lat = enumerate(&A1, 3);
        assert!(close(&lat.pos_pole_values(), &[0.6, 1.6, 2.6]));
        assert!(close(&lat.pos_root_values(), &[0.1, 1.1, 2.1]));
        assert!(close(&lat.neg_pole_values(), &[0.5, 1.5, 2.5]));
        assert!(close(&lat.neg_root_values(), &[0.2, 1.2, 2.2]));
        assert!(lat.pos_roots.iter().all(|x| x.family == Family::Red));
        assert!(lat.neg_poles.iter().all(|x| x.family == Family::Blue));
        assert!(check_interlacing(&lat));
    }

    #[test]
    fn a2_example_lattice() {
        let lat = enumerate(&A2, 2);
        assert!(close(&lat.pos_root_values(), &[0.2, 0.9]));
        assert_eq!(lat.pos_roots[0].family, Family::Blue);
        assert!(close(&lat.pos_pole_values(), &[0.4, 1.4]));
        assert!(close(&lat.neg_root_values(), &[0.1, 0.8]));
        assert!(check_interlacing(&lat));
    }

    #[test]
    fn a3_example_lattice() {
        let lat = enumerate(&A3, 4);
        assert!(close(&lat.pos_root_values(), &[0.2, 0.5, 1.2, 1.5]));
        assert!(close(&lat.pos_pole_values(), &[0.4, 0.6, 1.4, 1.6]));
        assert!(close(&lat.neg_root_values(), &[0.5, 1.5, 2.5, 3.5]));
        assert!(close(&lat.neg_pole_values(), &[0.6, 1.6, 2.6, 3.6]));
        let blue = lat
            .pos_roots
            .iter()
            .filter(|x| x.family == Family::Blue)
            .count();
        assert_eq!(blue, 2);
        assert!(check_interlacing(&lat));
    }

    #[test]
    fn a4_example_lattice() {
        let lat = enumerate(&A4, 4);
        assert!(close(&lat.pos_root_values(), &[0.3, 1.3, 2.3, 3.3]));
        assert!(close(&lat.pos_pole_values(), &[0.5, 1.5, 2.5, 3.5]));
        assert!(close(&lat.neg_root_values(), &[0.3, 0.7, 1.3, 1.7]));
        assert!(close(&lat.neg_pole_values(), &[0.5, 0.8, 1.5, 1.8]));
        assert!(check_interlacing(&lat));
    }

    #[test]
    fn misprinted_a3_example_does_not_interlace() {
        let lat = enumerate(&HypParams::raw(0.8, 0.4, -1.9, 0.1), 4);
        assert!(!check_interlacing(&lat));
    }

    #[test]
    fn boundary_case_cancels_pairs() {
        // 1 - β + β̂ + γ̂ = 0: the first blue pole sits on the first red root
        let p = HypParams::raw(0.5, 0.6, -0.8, 0.3);
        assert_eq!(classify(&p).unwrap(), Regime::A3 { n: 0 });
        let lat = enumerate(&p, 10);
        assert_eq!(lat.cancelled.len(), 1);
        let (r, q) = lat.cancelled[0];
        assert!((r.location - 0.5).abs() < 1e-12 && (q.location - 0.5).abs() < 1e-12);
        assert!(check_interlacing(&lat));
        assert_eq!(lat.pos_roots.len(), 10);
    }

    #[test]
    fn origin_root_for_unkilled_process() {
        let p = HypParams::raw(1.0, 0.5, 0.2, 0.3);
        let lat = enumerate(&p, 5);
        assert_eq!(lat.pos_roots[0].location, 0.0);
        assert!(check_interlacing(&lat));
    }

    #[test]
    fn hand_built_adjacent_roots() {
        let pt = |x: f64, kind| LatticePoint {
            location: x,
            family: Family::Red,
            kind,
            index: 0,
        };
        let lat = RootPoleLattice {
            pos_roots: vec![pt(0.1, PointKind::Root), pt(0.2, PointKind::Root)],
            pos_poles: vec![pt(0.5, PointKind::Pole), pt(0.6, PointKind::Pole)],
            neg_roots: vec![],
            neg_poles: vec![],
            cancelled: vec![],
        };
        assert!(!check_interlacing(&lat));
    }

    #[test]
    fn lemma1_identical_sequences() {
        let s: Vec<f64> = (1..=40).map(|k| k as f64 + 0.3).collect();
        let c = lemma1_coefficients(&s, &s, 10).unwrap();
        assert!((c.a0 - 1.0).abs() < 1e-12);
        assert!(c.a_seq.iter().all(|&a| a == 0.0));
        assert!(c.b_seq.iter().all(|&b| b == 0.0));
    }

    /// φ(z) = Γ(z+½)/(√π Γ(z+1)) for ζ_k = k - ½, ρ_k = k, so
    /// a_n = Γ(n-½) / (π^{3/2} Γ(n) (n-½)).
    fn half_shift_a(n: usize) -> f64 {
        let n = n as f64;
        let lg = |x: f64| log_gamma(Complex64::new(x, 0.0)).unwrap().re;
        (lg(n - 0.5) - lg(n)).exp() / (std::f64::consts::PI.powf(1.5) * (n - 0.5))
    }

    #[test]
    fn lemma1_half_shift_against_closed_form() {
        let zeta: Vec<f64> = (1..=30).map(|k| k as f64 - 0.5).collect();
        let rho: Vec<f64> = (1..=30).map(|k| k as f64).collect();
        let c = lemma1_coefficients(&zeta, &rho, 10).unwrap();
        assert_eq!(c.a0, 0.0);
        for (i, &a) in c.a_seq.iter().enumerate() {
            let want = half_shift_a(i + 1);
            assert!(a > 0.0);
            assert!(
                (a / want - 1.0).abs() < 1e-10,
                "a_{} = {a}, want {want}",
                i + 1
            );
        }
        assert!(c.b_seq.iter().all(|&b| b > 0.0));

        // φ(0) = 1 = a_0 + Σ a_n: computed head plus closed-form tail
        let n_far = 1_000_000usize;
        let middle: f64 = (11..=n_far).map(half_shift_a).sum();
        let far = 2.0 / (n_far as f64 + 0.5).sqrt() / std::f64::consts::PI.powf(1.5);
        let total = c.a0 + c.a_seq.iter().sum::<f64>() + middle + far;
        assert!((total - 1.0).abs() < 1e-6, "{total}");
    }

    #[test]
    fn lemma1_ignores_terms_past_guard() {
        let zeta: Vec<f64> = (1..=30).map(|k| k as f64 - 0.5).collect();
        let rho: Vec<f64> = (1..=30).map(|k| k as f64).collect();
        let mut zeta_long = zeta.clone();
        let mut rho_long = rho.clone();
        zeta_long.extend((31..=60).map(|k| k as f64 - 0.5 + 0.01 / k as f64));
        rho_long.extend((31..=60).map(|k| k as f64));
        let a = lemma1_coefficients(&zeta, &rho, 10).unwrap();
        let b = lemma1_coefficients(&zeta_long, &rho_long, 10).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn lemma1_rejects_non_interlacing() {
        let zeta: Vec<f64> = (1..=30).map(|k| k as f64 + 0.5).collect();
        let rho: Vec<f64> = (1..=30).map(|k| k as f64).collect();
        assert!(matches!(
            lemma1_coefficients(&zeta, &rho, 10),
            Err(Error::Interlacing(_))
        ));
        assert!(lemma1_coefficients(&rho, &rho, 20).is_err());
    }

    #[test]
    fn bernstein_simple_functions() {
        let grid = default_bernstein_grid();
        assert!(certify_bernstein_fn(|x| x, BERNSTEIN_ORDERS, &grid));
        assert!(certify_bernstein_fn(
            |x| 1.0 - (-x).exp(),
            BERNSTEIN_ORDERS,
            &grid
        ));
        assert!(certify_bernstein_fn(|x| x.sqrt(), BERNSTEIN_ORDERS, &grid));
        assert!(!certify_bernstein_fn(|x| x * x, BERNSTEIN_ORDERS, &grid));
        assert!(!certify_bernstein_fn(
            |x| (-x).exp(),
            BERNSTEIN_ORDERS,
            &grid
        ));
    }
}
