use proptest::prelude::*;

use seqaccel::core_model::{InterpolationPoints, RealSequence};
use seqaccel::diagnostics::{
    classify, decay_parameter, generate, pade, pade_approximant, ratio_test, tail_slope, ConvergenceKind,
    ModelKind, ModelSequenceSpec,
};
use seqaccel::oligomer::{average_energies, energy_differences, table1};
use seqaccel::Error;

fn model(kind: ModelKind, length: usize) -> RealSequence {
    generate(&ModelSequenceSpec { kind, length }).unwrap()
}

fn basel_partial_sums(len: usize) -> RealSequence {
    let mut acc = 0.0;
    RealSequence::new(
        (0..len)
            .map(|n| {
                acc += 1.0 / ((n + 1) * (n + 1)) as f64;
                acc
            })
            .collect(),
    )
    .unwrap()
}

/// Worst scaled coefficient of `P − Q·f` through order `l + m`, which
/// vanishes when the approximant reproduces the series through that order.
fn order_residual(p: &[f64], q: &[f64], c: &[f64], order: usize) -> f64 {
    (0..=order)
        .map(|k| {
            let terms = (0..=k.min(q.len() - 1)).map(|j| q[j] * c[k - j]);
            let scale = terms.clone().map(f64::abs).sum::<f64>().max(1.0);
            (p.get(k).copied().unwrap_or(0.0) - terms.sum::<f64>()).abs() / scale
        })
        .fold(0.0, f64::max)
}

#[test]
fn ratio_test_on_models() {
    let s = model(ModelKind::SingleExponential { s: 1.0, c: 2.0, lambda: -0.6 }, 10);
    for r in ratio_test(&s).unwrap() {
        assert!((r.unwrap() + 0.6).abs() < 1e-14);
    }
    let r = ratio_test(&basel_partial_sums(23)).unwrap();
    assert!(r.windows(2).all(|w| w[1].unwrap() > w[0].unwrap()));
    let r20 = r[20].unwrap();
    assert!(0.9 < r20 && r20 < 1.0);
    assert!(matches!(ratio_test(&basel_partial_sums(2)), Err(Error::InsufficientData(_))));
}

#[test]
fn ratio_test_on_energy_differences() {
    let r = ratio_test(&energy_differences(&table1()).unwrap()).unwrap();
    for (n, want) in [(0, 0.3555), (8, 0.3646), (9, 0.3636)] {
        assert!((r[n].unwrap() - want).abs() < 5e-5);
    }
}

#[test]
fn decay_parameter_on_tables() {
    let t = decay_parameter(&average_energies(&table1()).unwrap()).unwrap();
    assert!((t[0].unwrap() - 1.0026524).abs() < 5e-8);
    assert!((t[12].unwrap() - 0.9999976).abs() < 5e-8);
    let t = decay_parameter(&energy_differences(&table1()).unwrap()).unwrap();
    assert!((t[0].unwrap() - -6.7203517).abs() < 5e-8);
    assert!((t[9].unwrap() - 6.0).abs() < 5e-8);
    assert!(matches!(decay_parameter(&basel_partial_sums(3)), Err(Error::InsufficientData(_))));
}

#[test]
fn decay_parameter_on_power_tail() {
    let s = model(ModelKind::PowerTail { s: 5.0, alpha: 0.5, beta: 1.0, coeffs: vec![1.0] }, 60);
    let err: Vec<f64> = decay_parameter(&s).unwrap().iter().map(|t| (t.unwrap() - 0.5).abs()).collect();
    assert!(err[50] < 0.01);
    assert!(err[10..].windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn classify_examples() {
    let c = classify(&energy_differences(&table1()).unwrap());
    match c.kind {
        ConvergenceKind::ExponentialTail { rho } => assert!((rho - 0.36).abs() < 0.02, "{rho}"),
        k => panic!("{k:?}"),
    }
    let c = classify(&average_energies(&table1()).unwrap());
    match c.kind {
        ConvergenceKind::Logarithmic { alpha } => assert!((alpha - 1.0).abs() < 0.01, "{alpha}"),
        k => panic!("{k:?}"),
    }
    assert!(!c.evidence.is_empty());
    let c = classify(&model(ModelKind::SingleExponential { s: 2.0, c: -1.0, lambda: 0.5 }, 12));
    assert_eq!(c.kind, ConvergenceKind::Linear { rho: 0.5 });
    let c = classify(&basel_partial_sums(4));
    assert_eq!(c.kind, ConvergenceKind::Undetermined);
}

#[test]
fn generator_examples() {
    let s = model(ModelKind::SingleExponential { s: 2.0, c: -1.0, lambda: 0.5 }, 3);
    assert_eq!(s.values(), &[1.0, 1.5, 1.75]);
    let s = model(ModelKind::PowerTail { s: 5.0, alpha: 0.5, beta: 1.0, coeffs: vec![1.0] }, 2);
    assert_eq!(s.values(), &[6.0, 5.0 + 0.5f64.sqrt()]);
    let kind = ModelKind::RationalSample { a: vec![1.0, 3.0], b: vec![2.0, 1.0], points: InterpolationPoints::Linear };
    assert_eq!(model(kind, 3).values(), &[4.0 / 3.0, 7.0 / 4.0, 2.0]);
    let bad = ModelKind::MultiExponential { s: 0.0, terms: vec![(1.0, 0.2), (1.0, 0.7)] };
    assert!(matches!(generate(&ModelSequenceSpec { kind: bad, length: 4 }), Err(Error::InvalidSpec(_))));
}

#[test]
fn pade_examples() {
    assert!((pade(&[1.0, 1.0, 1.0], 0, 1, 0.5).unwrap() - 2.0).abs() < 1e-15);
    let exp = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0];
    assert!((pade(&exp, 1, 1, 1.0).unwrap() - 3.0).abs() < 1e-14);
    assert!(matches!(pade(&[1.0, 1.0], 1, 1, 0.5), Err(Error::InsufficientData(_) | Error::InvalidConfig(_))));
    // the denominator system of [1/1] for 1 + z² is singular
    assert!(matches!(pade(&[1.0, 0.0, 1.0], 1, 1, 0.5), Err(Error::SingularSystem(_))));
}

#[test]
fn tail_slope_of_a_power_law() {
    let pts: Vec<(f64, f64)> = (1..=30).map(|n| (n as f64, 3.0 * (n as f64).powf(-2.5))).collect();
    assert!((tail_slope(&pts).unwrap() + 2.5).abs() < 1e-12);
}

proptest! {
    #[test]
    fn classify_is_affine_invariant(
        lambda in prop_oneof![-0.85f64..-0.15, 0.15f64..0.85],
        c in 0.5f64..2.0,
        c2 in -0.3f64..0.3,
        a in prop_oneof![-20.0f64..-0.05, 0.05f64..20.0],
        b in -100.0f64..100.0,
    ) {
        let kind = ModelKind::MultiExponential { s: 1.0, terms: vec![(c, lambda), (c2, lambda * 0.3)] };
        let s = model(kind, 14);
        let x = classify(&s).kind;
        let y = classify(&s.affine(a, b).unwrap()).kind;
        let param = |k: ConvergenceKind| match k {
            ConvergenceKind::Linear { rho } | ConvergenceKind::ExponentialTail { rho } => rho,
            ConvergenceKind::Logarithmic { alpha } => alpha,
            ConvergenceKind::Undetermined => 0.0,
        };
        prop_assert_eq!(std::mem::discriminant(&x), std::mem::discriminant(&y));
        prop_assert!((param(x) - param(y)).abs() <= 1e-10, "{:?} vs {:?}", x, y);
    }

    #[test]
    fn pade_reproduces_the_series_through_its_order(
        coeffs in prop::collection::vec(-2.0f64..2.0, 7),
        l in 0usize..4,
        m in 1usize..4,
    ) {
        prop_assume!(l + m < coeffs.len());
        match pade_approximant(&coeffs, l, m) {
            Err(e) => prop_assert!(matches!(e, Error::SingularSystem(_)), "{:?}", e),
            Ok(p) => {
                prop_assert_eq!(p.q[0], 1.0);
                prop_assert_eq!((p.p.len(), p.q.len()), (l + 1, m + 1));
                let r = order_residual(&p.p, &p.q, &coeffs, l + m);
                prop_assert!(r <= 1e-10, "residual {:e}", r);
            }
        }
    }
}
