use proptest::prelude::*;

use seqaccel::core_model::{AcceleratorConfig, InterpolationPoints, RealSequence, Tableau};
use seqaccel::diagnostics::{fit_loglog_slope, generate, ModelKind, ModelSequenceSpec};
use seqaccel::euler_maclaurin::zeta_estimate;
use seqaccel::log_accel::{
    bdg, osada, rho_general, rho_iterated, rho_standard, richardson_general, richardson_standard, RhoPoints,
};
use seqaccel::oligomer::{average_energies, table1};
use seqaccel::Error;

const PI2_6: f64 = 1.644934066848226;

fn seq(v: Vec<f64>) -> RealSequence {
    RealSequence::new(v).unwrap()
}

fn cfg() -> AcceleratorConfig {
    AcceleratorConfig::default()
}

fn zeta_partial_sums(z: f64, len: usize) -> RealSequence {
    let mut acc = 0.0;
    seq((0..len)
        .map(|n| {
            acc += (n as f64 + 1.0).powf(-z);
            acc
        })
        .collect())
}

fn sqrt_model(len: usize) -> RealSequence {
    let kind = ModelKind::PowerTail { s: 5.0, alpha: 0.5, beta: 1.0, coeffs: vec![1.0] };
    generate(&ModelSequenceSpec { kind, length: len }).unwrap()
}

/// `(x, error)` pairs for column `k`, with each entry placed at the centre of
/// the `span + 1` inputs it depends on.
fn centred_errors(t: &Tableau, k: usize, span: usize, ns: std::ops::Range<usize>) -> Vec<(f64, f64)> {
    ns.filter_map(|n| t.value(k, n).map(|v| (n as f64 + 1.0 + span as f64 / 2.0, v - 5.0))).collect()
}

/// Largest relative entrywise discrepancy over entries valid in both.
fn max_rel_diff(a: &Tableau, b: &Tableau) -> f64 {
    let mut worst = 0.0f64;
    for (ca, cb) in a.columns().iter().zip(b.columns()) {
        for (ea, eb) in ca.entries.iter().zip(&cb.entries) {
            if let (Some(x), Some(y)) = (ea.valid_value(), eb.valid_value()) {
                worst = worst.max((x - y).abs() / x.abs().max(1.0));
            }
        }
    }
    worst
}

fn same_bits(a: &Tableau, b: &Tableau) -> bool {
    let bits = |t: &Tableau| -> Vec<Vec<(u64, bool)>> {
        t.columns().iter().map(|c| c.entries.iter().map(|e| (e.value.to_bits(), e.valid)).collect()).collect()
    };
    bits(a) == bits(b)
}

#[test]
fn richardson_polynomial_models() {
    let pts = InterpolationPoints::ReciprocalShift { beta: 1.0 };
    let x = |n: usize| 1.0 / (n as f64 + 1.0);
    let t = richardson_general(&seq((0..3).map(|n| 5.0 + 3.0 * x(n)).collect()), &pts, &cfg()).unwrap();
    assert_eq!(t.value(1, 0), Some(5.0));

    let s = seq((0..5).map(|n| 5.0 + 3.0 * x(n) + 2.0 * x(n) * x(n)).collect());
    let t = richardson_general(&s, &pts, &cfg()).unwrap();
    for n in 0..3 {
        assert!((t.value(2, n).unwrap() - 5.0).abs() < 1e-12);
    }
}

#[test]
fn richardson_on_zeta_three() {
    let zeta3 = zeta_estimate(3.0, 20, 8).unwrap();
    assert!((zeta3 - 1.202056903159594).abs() < 1e-14);
    let pts = InterpolationPoints::ReciprocalShift { beta: 1.0 };
    let t = richardson_general(&zeta_partial_sums(3.0, 12), &pts, &cfg()).unwrap();
    // error of the same entry in 50-digit arithmetic
    let err = t.value(8, 0).unwrap() - zeta3;
    assert!((err - 1.631525593829392e-8).abs() < 1e-12, "{err}");
    assert!((t.value(8, 3).unwrap() - zeta3).abs() < 1e-9);
}

#[test]
fn richardson_rejects_points_in_the_wrong_direction() {
    let s = zeta_partial_sums(2.0, 5);
    assert!(matches!(
        richardson_general(&s, &InterpolationPoints::Linear, &cfg()),
        Err(Error::InvalidPoints(_))
    ));
    assert!(matches!(rho_general(&s, &InterpolationPoints::ReciprocalShift { beta: 1.0 }, &cfg()), Err(Error::InvalidPoints(_))));
}

#[test]
fn standard_richardson_matches_general() {
    let s = seq(vec![0.3, -1.2, 2.5, 0.7, 1.1, -0.4]);
    let g = richardson_general(&s, &InterpolationPoints::ReciprocalShift { beta: 1.0 }, &cfg()).unwrap();
    assert!(max_rel_diff(&g, &richardson_standard(&s, 1.0).unwrap()) < 1e-12);

    let s = seq((0..4).map(|n| 7.0 - 2.0 / (n as f64 + 1.5)).collect());
    let t = richardson_standard(&s, 1.5).unwrap();
    for n in 0..3 {
        assert!((t.value(1, n).unwrap() - 7.0).abs() < 1e-13);
    }
}

#[test]
fn richardson_on_average_energies_approaches_the_chain_limit() {
    let t = richardson_standard(&average_energies(&table1()).unwrap(), 1.0).unwrap();
    let col: Vec<f64> = (1..6).map(|k| t.value(k, 0).unwrap()).collect();
    let closest = col.iter().map(|v| (v + 75.9457).abs()).fold(f64::INFINITY, f64::min);
    assert!(closest < 1e-3, "{col:?}");
}

#[test]
fn rho_on_rational_models() {
    let s = seq((0..3).map(|n| 5.0 + 1.0 / (n as f64 + 1.0)).collect());
    let t = rho_general(&s, &InterpolationPoints::Linear, &cfg()).unwrap();
    assert!((t.value(1, 0).unwrap() - -2.0).abs() < 1e-13);
    assert!((t.value(1, 1).unwrap() - -6.0).abs() < 1e-13);
    assert!((t.value(2, 0).unwrap() - 5.0).abs() < 1e-13);
    assert!((rho_standard(&s, &cfg()).unwrap().value(2, 0).unwrap() - 5.0).abs() < 1e-13);

    let x = |n: usize| n as f64 + 1.0;
    let s = seq((0..5).map(|n| (3.0 * x(n) + 1.0) / (x(n) + 2.0)).collect());
    let t = rho_general(&s, &InterpolationPoints::Linear, &cfg()).unwrap();
    for n in 0..3 {
        assert!((t.value(2, n).unwrap() - 3.0).abs() < 1e-12);
    }
}

#[test]
fn rho_family_on_basel_sums() {
    let s = zeta_partial_sums(2.0, 11);
    let t = rho_general(&s, &InterpolationPoints::Linear, &cfg()).unwrap();
    // error of the same entries in 50-digit arithmetic
    let err = t.value(8, 0).unwrap() - PI2_6;
    assert!((err - -2.467597170346966e-9).abs() < 1e-12, "{err}");
    assert!((t.value(8, 2).unwrap() - PI2_6).abs() < 1e-9);
    let w = rho_iterated(&s, &RhoPoints::Standard, &cfg()).unwrap();
    assert!((w.value(4, 0).unwrap() - PI2_6).abs() < 1e-9);
}

#[test]
fn iterated_rho_hand_value() {
    let s = seq((0..3).map(|n| 5.0 + 1.0 / (n as f64 + 1.0)).collect());
    let w = rho_iterated(&s, &RhoPoints::Standard, &cfg()).unwrap();
    assert!((w.value(1, 0).unwrap() - 5.0).abs() < 1e-13);
    assert!(matches!(rho_iterated(&seq(vec![1.0, 2.0]), &RhoPoints::Standard, &cfg()), Err(Error::InsufficientData(_))));
}

#[test]
fn osada_accelerates_nonintegral_decay() {
    let s = sqrt_model(30);
    let t = osada(&s, 0.5, &cfg()).unwrap();
    let pts = centred_errors(&t, 4, 4, 10..26);
    let slope = fit_loglog_slope(&pts).unwrap();
    assert!((slope + 4.5).abs() <= 0.3, "{slope}");
    let gain = (s.values()[12] - 5.0).abs() / (t.value(2, 10).unwrap() - 5.0).abs();
    assert!(gain >= 1e2, "{gain}");
}

#[test]
fn osada_and_bdg_are_asymptotically_equivalent() {
    let s = sqrt_model(30);
    let o = osada(&s, 0.5, &cfg()).unwrap().value(4, 25).unwrap();
    let b = bdg(&s, 0.5, &cfg()).unwrap().value(2, 25).unwrap();
    assert!((o - b).abs() / (o - 5.0).abs() <= 10.0);
}

#[test]
fn standard_rho_does_not_accelerate_nonintegral_decay() {
    let s = sqrt_model(30);
    let t = rho_standard(&s, &cfg()).unwrap();
    let pts = centred_errors(&t, 2, 2, 0..28);
    let slope = fit_loglog_slope(&pts[pts.len() - pts.len() / 3..]).unwrap();
    assert!((slope + 0.5).abs() <= 0.3, "{slope}");
}

#[test]
fn alpha_must_be_positive() {
    let s = sqrt_model(6);
    assert!(matches!(osada(&s, 0.0, &cfg()), Err(Error::InvalidConfig(_))));
    assert!(matches!(bdg(&s, -1.0, &cfg()), Err(Error::InvalidConfig(_))));
}

proptest! {
    #[test]
    fn standard_forms_match_general_forms(v in prop::collection::vec(-10.0f64..10.0, 8)) {
        let s = seq(v);
        let lin = InterpolationPoints::Linear;
        prop_assert!(max_rel_diff(&rho_general(&s, &lin, &cfg()).unwrap(), &rho_standard(&s, &cfg()).unwrap()) < 1e-12);
        prop_assert!(max_rel_diff(
            &rho_iterated(&s, &RhoPoints::General(lin), &cfg()).unwrap(),
            &rho_iterated(&s, &RhoPoints::Standard, &cfg()).unwrap(),
        ) < 1e-12);
    }

    #[test]
    fn alpha_one_variants_are_bit_identical(v in prop::collection::vec(-10.0f64..10.0, 3..14)) {
        let s = seq(v);
        prop_assert!(same_bits(&osada(&s, 1.0, &cfg()).unwrap(), &rho_standard(&s, &cfg()).unwrap()));
        prop_assert!(same_bits(&bdg(&s, 1.0, &cfg()).unwrap(), &rho_iterated(&s, &RhoPoints::Standard, &cfg()).unwrap()));
    }
}
