use hyplevy::exponent::{killing_rate, psi_imag};
use hyplevy::ladder::{ladder_density, potential_density, verify_ladder_transform};
use hyplevy::lattice::{
    bernstein_report, check_interlacing, default_bernstein_grid, enumerate, Family, LatticePoint,
    PointKind, BERNSTEIN_ORDERS,
};
use hyplevy::levy_measure::{
    density_closed, density_series, integrability_check, mixture_coefficients, X_MIN,
};
use hyplevy::params::{classify, derive, HypParams, Regime, Variation};
use hyplevy::wiener_hopf::{build_factors, verify_factorization, WienerHopfFactor};
use hyplevy::Error;
use serde_json::{Map, Value};

use crate::args::{Command, Common};
use crate::document::{num, opt, text, Report, Row};

/// Largest lattice listing.
const MAX_LATTICE: usize = 10_000;
const LADDER_LAMBDAS: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

#[derive(Debug)]
pub enum Failure {
    /// Parameters or inputs outside the mathematical domain (status 1).
    Domain(String),
    /// Malformed options (status 64).
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(reason) => Failure::Usage(reason),
            other => Failure::Domain(other.to_string()),
        }
    }
}

pub fn run(command: &Command, regime: Regime) -> Result<Report, Failure> {
    let c = command.common();
    let p = c.params();
    match command {
        Command::Validate(_) => validate(&p, regime),
        Command::Exponent(_) => exponent(&p, c),
        Command::Lattice(_) => lattice(&p, c),
        Command::Factors(_) => factors(&p, c),
        Command::Density(_) => density(&p, c),
        Command::Ladder(_) => ladder(&p, regime, c),
        Command::Check(_) => check(&p, regime, c),
    }
}

fn variation_name(v: Variation) -> &'static str {
    match v {
        Variation::BoundedNoDrift => "bounded_no_drift",
        Variation::Unbounded => "unbounded",
    }
}

fn validate(p: &HypParams, regime: Regime) -> Result<Report, Failure> {
    let d = derive(p)?;
    let mut r = Report::default();
    r.data.push(vec![
        ("regime", text(regime.tag().to_string())),
        ("n", Value::from(regime.shift())),
        ("eta", num(d.eta)),
        ("q", num(killing_rate(p))),
        ("variation", text(variation_name(d.variation))),
    ]);
    Ok(r)
}

fn grid(c: &Common, default: (f64, f64, usize)) -> Result<Vec<f64>, Failure> {
    c.grid(default).map_err(Failure::Usage)
}

fn exponent(p: &HypParams, c: &Common) -> Result<Report, Failure> {
    let mut r = Report::default();
    for theta in grid(c, (-50.0, 50.0, 201))? {
        let v = psi_imag(p, theta).ok();
        r.data.push(vec![
            ("theta", num(theta)),
            ("re", opt(v.map(|v| v.re))),
            ("im", opt(v.map(|v| v.im))),
        ]);
    }
    Ok(r)
}

fn point_row(side: &'static str, pt: &LatticePoint) -> Row {
    vec![
        ("side", text(side)),
        (
            "kind",
            text(match pt.kind {
                PointKind::Root => "root",
                PointKind::Pole => "pole",
            }),
        ),
        (
            "family",
            text(match pt.family {
                Family::Red => "red",
                Family::Blue => "blue",
            }),
        ),
        ("index", Value::from(pt.index)),
        ("location", num(pt.location)),
    ]
}

fn lattice(p: &HypParams, c: &Common) -> Result<Report, Failure> {
    if c.terms == 0 || c.terms > MAX_LATTICE {
        return Err(Failure::Usage(format!(
            "--terms must lie in 1..={MAX_LATTICE}"
        )));
    }
    let lat = enumerate(p, c.terms);
    let mut r = Report::default();
    for (side, pts) in [
        ("positive", &lat.pos_roots),
        ("positive", &lat.pos_poles),
        ("negative", &lat.neg_roots),
        ("negative", &lat.neg_poles),
    ] {
        r.data.extend(pts.iter().map(|pt| point_row(side, pt)));
    }
    r.check("interlacing", check_interlacing(&lat));
    r.note("cancelled_pairs", Value::from(lat.cancelled.len()));
    Ok(r)
}

fn describe(f: &WienerHopfFactor) -> Value {
    let mut m = Map::new();
    m.insert("gamma_num_offset".into(), num(f.gamma.num_offset));
    m.insert("gamma_den_offset".into(), num(f.gamma.den_offset));
    m.insert(
        "linear".into(),
        Value::Array(
            f.linear
                .iter()
                .map(|l| {
                    let mut m = Map::new();
                    m.insert("root_shift".into(), opt(l.root_shift));
                    m.insert("pole_shift".into(), opt(l.pole_shift));
                    Value::Object(m)
                })
                .collect(),
        ),
    );
    Value::Object(m)
}

fn bernstein_checks(r: &mut Report, up: &WienerHopfFactor, down: &WienerHopfFactor) {
    let g = default_bernstein_grid();
    let eval = |f: &WienerHopfFactor| {
        let f = f.clone();
        move |x: f64| f.eval_real(x).unwrap_or(f64::NAN)
    };
    let mut worst = 0.0f64;
    for (name, f) in [
        ("bernstein_kappa", up.clone()),
        ("bernstein_kappa_hat", down.clone()),
        ("bernstein_lambda_over_kappa", up.conjugate()),
        ("bernstein_lambda_over_kappa_hat", down.conjugate()),
    ] {
        let rep = bernstein_report(eval(&f), BERNSTEIN_ORDERS, &g);
        worst = worst.max(rep.worst_violation);
        r.check(name, rep.passed);
    }
    r.note("bernstein_worst_violation", num(worst));
}

fn factors(p: &HypParams, c: &Common) -> Result<Report, Failure> {
    let (up, down) = build_factors(p)?;
    let mut r = Report::default();
    r.meta.push(("kappa", describe(&up)));
    r.meta.push(("kappa_hat", describe(&down)));
    for lambda in grid(c, (0.0, 50.0, 51))? {
        r.data.push(vec![
            ("lambda", num(lambda)),
            ("kappa", opt(up.eval_real(lambda).ok())),
            ("kappa_hat", opt(down.eval_real(lambda).ok())),
        ]);
    }
    bernstein_checks(&mut r, &up, &down);
    Ok(r)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn density(p: &HypParams, c: &Common) -> Result<Report, Failure> {
    let coeffs = mixture_coefficients(p, c.terms)?;
    let mut r = Report::default();
    let mut positive = true;
    let mut worst = 0.0f64;
    for x in grid(c, (-3.0, 3.0, 61))? {
        if x.abs() < X_MIN {
            continue;
        }
        let closed = density_closed(p, x).ok();
        let series = density_series(&coeffs, x).ok();
        let delta = closed.zip(series).map(|(a, b)| (a - b).abs());
        positive &= closed.is_some_and(|v| v > 0.0);
        if let (Some(a), Some(b)) = (closed, series) {
            worst = worst.max(rel(b, a));
        }
        r.data.push(vec![
            ("x", num(x)),
            ("closed", opt(closed)),
            ("series", opt(series)),
            ("delta", opt(delta)),
        ]);
    }
    r.check("positive", positive);
    r.note("max_relative_delta", num(worst));
    Ok(r)
}

fn ladder(p: &HypParams, regime: Regime, c: &Common) -> Result<Report, Failure> {
    if !matches!(regime, Regime::A4 { .. }) {
        return Err(Failure::Domain(format!(
            "ladder objects need regime A4, got {regime}"
        )));
    }
    let mut r = Report::default();
    for x in grid(c, (0.1, 5.0, 50))? {
        r.data.push(vec![
            ("x", num(x)),
            ("nu", opt(ladder_density(p, x).ok())),
            ("u", opt(potential_density(p, x).ok())),
        ]);
    }
    let report = verify_ladder_transform(p, &LADDER_LAMBDAS)?;
    r.check("ladder_transform", report.max_relative_error < 1e-6);
    r.note("ladder_max_relative_error", num(report.max_relative_error));
    Ok(r)
}

fn record(r: &mut Report, name: &'static str, passed: bool, worst: f64) {
    r.data.push(vec![
        ("check", text(name)),
        ("passed", Value::Bool(passed)),
        ("worst_error", num(worst)),
    ]);
    r.check(name, passed);
}

fn check(p: &HypParams, regime: Regime, c: &Common) -> Result<Report, Failure> {
    let mut r = Report::default();

    let thetas: Vec<f64> = (0..200).map(|i| -50.0 + 100.0 * i as f64 / 199.0).collect();
    let fact = verify_factorization(p, &thetas)?;
    record(
        &mut r,
        "factorization",
        fact.max_rel_error < 1e-9 && fact.skipped.is_empty(),
        fact.max_rel_error,
    );

    let lat = enumerate(p, c.terms.clamp(1, MAX_LATTICE));
    record(&mut r, "interlacing", check_interlacing(&lat), 0.0);

    let coeffs = mixture_coefficients(p, c.terms)?;
    let mut worst = 0.0f64;
    for x in [0.5, 1.0, 2.0, 3.0, -0.5, -1.0, -2.0, -3.0] {
        worst = worst.max(match (density_closed(p, x), density_series(&coeffs, x)) {
            (Ok(a), Ok(b)) => rel(b, a),
            _ => f64::INFINITY,
        });
    }
    record(&mut r, "series_agreement", worst < 1e-7, worst);

    let mut lowest = f64::INFINITY;
    for i in 0..=400 {
        let x = 10f64.powf(-6.0 + 7.0 * i as f64 / 400.0);
        for s in [1.0, -1.0] {
            lowest = lowest.min(density_closed(p, s * x).unwrap_or(f64::NAN));
        }
    }
    record(&mut r, "positivity", lowest > 0.0, 0.0);

    let int = integrability_check(p)?;
    record(&mut r, "integrability", int.converged, int.error_estimate);

    let q = killing_rate(p);
    let psi0 = psi_imag(p, 0.0)?.re;
    let kill_err = if q == 0.0 { psi0.abs() } else { rel(-psi0, q) };
    record(&mut r, "killing_rate", kill_err <= 1e-12, kill_err);

    let (up, down) = build_factors(p)?;
    let g = default_bernstein_grid();
    let mut bern_ok = true;
    let mut bern_worst = 0.0f64;
    for f in [up.clone(), down.clone(), up.conjugate(), down.conjugate()] {
        let rep = bernstein_report(|x| f.eval_real(x).unwrap_or(f64::NAN), BERNSTEIN_ORDERS, &g);
        bern_ok &= rep.passed;
        bern_worst = bern_worst.max(rep.worst_violation);
    }
    record(&mut r, "bernstein", bern_ok, bern_worst);

    if matches!(regime, Regime::A4 { .. }) {
        let rep = verify_ladder_transform(p, &LADDER_LAMBDAS)?;
        record(
            &mut r,
            "ladder_transform",
            rep.max_relative_error < 1e-6,
            rep.max_relative_error,
        );
    }
    r.note("integral_min1x2", num(int.integral_min1x2));
    Ok(r)
}

/// Classifies the parameters, mapping failure to a domain error.
pub fn regime(p: &HypParams) -> Result<Regime, Failure> {
    classify(p).map_err(Failure::from)
}
