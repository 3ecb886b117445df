//! Densities against reference values from `oracles/gen_oracles.py`, which
//! sums residues of the exponent pole by pole in 40-digit arithmetic.

#![allow(clippy::excessive_precision)]

mod common;

use common::{rel, A1, A2, A3, A4};
use hyplevy::levy_measure::density_closed;
use hyplevy::params::HypParams;

const REFERENCE: [(HypParams, f64, f64); 32] = [
    (A1, 0.5, 1.0673252741277879388),
    (A1, 1.0, 0.31741704876102012769),
    (A1, 2.0, 0.093433066385136138935),
    (A1, 3.0, 0.042319923064602147551),
    (A1, -0.5, 0.84185397269307195742),
    (A1, -1.0, 0.24918812379794918835),
    (A1, -2.0, 0.076173838610457758842),
    (A1, -3.0, 0.037167282451277077716),
    (A2, 0.5, 1.7631794063703831508),
    (A2, 1.0, 0.34238215235325504372),
    (A2, 2.0, 0.065630106781204841879),
    (A2, 3.0, 0.026196174009854605021),
    (A2, -0.5, 1.0966121587221115792),
    (A2, -1.0, 0.2276187751728619432),
    (A2, -2.0, 0.048602029000406662587),
    (A2, -3.0, 0.019456953643515863362),
    (A3, 0.5, 0.70160705223709305105),
    (A3, 1.0, 0.25593134299019478231),
    (A3, 2.0, 0.097403218392459554535),
    (A3, 3.0, 0.05189817711797766672),
    (A3, -0.5, 0.26233349036674888688),
    (A3, -1.0, 0.094657779111005204475),
    (A3, -2.0, 0.032141921796087177086),
    (A3, -3.0, 0.015249239144326231282),
    (A4, 0.5, 0.66899050594590169605),
    (A4, 1.0, 0.23307015011993371529),
    (A4, 2.0, 0.08266946133761689552),
    (A4, 3.0, 0.042608960949073926902),
    (A4, -0.5, 0.75346319018641694629),
    (A4, -1.0, 0.22909616190219368986),
    (A4, -2.0, 0.075428071110995014477),
    (A4, -3.0, 0.036387670523957170176),
];

#[test]
fn closed_form_matches_reference() {
    for (p, x, want) in REFERENCE {
        let got = density_closed(&p, x).unwrap();
        assert!(rel(got, want) < 1e-12, "{p} x={x}: {got} vs {want}");
    }
}
