//! Convergence diagnostics: the remainder ratio test, decay-parameter
//! estimates, a convergence classifier, model-sequence generators and a
//! Padé oracle.

mod fit;
mod model;
mod pade;

pub use fit::{fit_loglog_slope, tail_slope};
pub use model::{generate, ModelKind, ModelSequenceSpec};
pub use pade::{pade, pade_approximant, PadeApproximant};

use serde::Serialize;

use crate::core_model::{guard_denominator, Guard, RealSequence, DEFAULT_BREAKDOWN_TOL};
use crate::error::{Error, Result};

/// `ℛ_n = Δs_{n+1} / Δs_n` for `n = 0..len−3`. Entries whose denominator
/// fails the breakdown guard are `None`.
pub fn ratio_test(s: &RealSequence) -> Result<Vec<Option<f64>>> {
    if s.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "ratio test needs at least 3 elements, got {}",
            s.len()
        )));
    }
    Ok(ratios(s.offsets()))
}

fn ratios(o: &[f64]) -> Vec<Option<f64>> {
    (0..o.len().saturating_sub(2))
        .map(|n| {
            let d0 = o[n + 1] - o[n];
            let d1 = o[n + 2] - o[n + 1];
            let scale = o[n].abs().max(o[n + 1].abs());
            (guard_denominator(d0, scale, DEFAULT_BREAKDOWN_TOL) == Guard::Ok).then(|| d1 / d0)
        })
        .collect()
}

/// Decay-parameter estimates
/// `T_n = Δ²s_n Δ²s_{n+1} / (Δs_{n+1} Δ²s_{n+1} − Δs_{n+2} Δ²s_n) − 1`
/// for `n = 0..len−4`.
pub fn decay_parameter(s: &RealSequence) -> Result<Vec<Option<f64>>> {
    if s.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "decay parameter needs at least 4 elements, got {}",
            s.len()
        )));
    }
    Ok(decay_estimates(s.offsets()))
}

fn decay_estimates(o: &[f64]) -> Vec<Option<f64>> {
    (0..o.len().saturating_sub(3))
        .map(|n| {
            let mut d = [o[n + 1] - o[n], o[n + 2] - o[n + 1], o[n + 3] - o[n + 2]];
            // The formula is homogeneous of degree zero in the differences;
            // normalizing keeps the guard meaningful for tiny increments.
            let sigma = d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if sigma == 0.0 {
                return None;
            }
            d.iter_mut().for_each(|x| *x /= sigma);
            let dd0 = d[1] - d[0];
            let dd1 = d[2] - d[1];
            let p1 = d[1] * dd1;
            let p2 = d[2] * dd0;
            let den = p1 - p2;
            let scale = p1.abs().max(p2.abs());
            (guard_denominator(den, scale, DEFAULT_BREAKDOWN_TOL) == Guard::Ok)
                .then(|| dd0 * dd1 / den - 1.0)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ConvergenceKind {
    Linear { rho: f64 },
    Logarithmic { alpha: f64 },
    ExponentialTail { rho: f64 },
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reading {
    pub name: &'static str,
    pub n: usize,
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceClass {
    pub kind: ConvergenceKind,
    pub evidence: Vec<Reading>,
}

/// Classifier thresholds.
const SPREAD: f64 = 0.05;
const LINEAR_BOUND: f64 = 0.9;
/// A difference counts as resolved when it exceeds this many noise floors.
const RESOLVED_FLOORS: f64 = 20.0;
const MIN_RESOLVED: usize = 5;

fn spread(v: &[f64]) -> f64 {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

/// Classifies the convergence type from the ratio test and the decay
/// parameter.
///
/// Only the leading run of elements whose differences stand clearly above
/// the noise floor (input resolution or rounding) is examined; beyond that
/// both diagnostics measure rounding rather than the sequence.
///
/// * logarithmic: the last three `T_n` agree to within 0.05 at a positive
///   value and the last three ratios increase strictly inside (0, 1];
/// * linear: the last three ratios agree to within 0.05 at `0 < |ρ̂| < 0.9`
///   and so do all resolved ratios;
/// * exponential tail: as linear, but the early ratios are still drifting;
/// * undetermined otherwise, including fewer than 5 resolved elements.
pub fn classify(s: &RealSequence) -> ConvergenceClass {
    let o = s.offsets();
    let max_abs = o.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = s.resolution().unwrap_or(0.0).max(64.0 * f64::EPSILON * max_abs);
    let resolved = 1 + o
        .windows(2)
        .take_while(|w| (w[1] - w[0]).abs() >= RESOLVED_FLOORS * floor && w[1] != w[0])
        .count();
    let head = &o[..resolved.min(o.len())];
    let r = ratios(head);
    let t = decay_estimates(head);

    let mut evidence = vec![Reading { name: "resolved_len", n: 0, value: Some(resolved as f64) }];
    evidence.extend(r.iter().enumerate().map(|(n, &v)| Reading { name: "ratio", n, value: v }));
    evidence.extend(t.iter().enumerate().map(|(n, &v)| Reading { name: "decay", n, value: v }));

    let kind = if resolved < MIN_RESOLVED {
        ConvergenceKind::Undetermined
    } else {
        decide(&r, &t)
    };
    ConvergenceClass { kind, evidence }
}

fn decide(r: &[Option<f64>], t: &[Option<f64>]) -> ConvergenceKind {
    let rs: Vec<f64> = r.iter().flatten().copied().collect();
    let ts: Vec<f64> = t.iter().flatten().copied().collect();
    if rs.len() < 3 {
        return ConvergenceKind::Undetermined;
    }
    let last_r = &rs[rs.len() - 3..];

    if ts.len() >= 3 {
        let last_t = &ts[ts.len() - 3..];
        let alpha = last_t[2];
        let trending_to_one = last_r.windows(2).all(|w| w[0] < w[1])
            && last_r.iter().all(|&x| x > 0.0 && x <= 1.0);
        if spread(last_t) < SPREAD && alpha > 0.0 && trending_to_one {
            return ConvergenceKind::Logarithmic { alpha };
        }
    }

    let rho = last_r[2];
    if spread(last_r) < SPREAD && rho != 0.0 && rho.abs() < LINEAR_BOUND {
        if spread(&rs) < SPREAD {
            ConvergenceKind::Linear { rho }
        } else {
            ConvergenceKind::ExponentialTail { rho }
        }
    } else {
        ConvergenceKind::Undetermined
    }
}
