//! Accelerators for linearly convergent sequences: Aitken's Δ² process, its
//! iteration, Wynn's epsilon algorithm and the staged epsilon driver used for
//! oligomer data.

use serde::Serialize;

use crate::core_model::tableau::{breakdown_reason, inputs, Cell};
use crate::core_model::{
    guard_denominator, scan_stages, select_best, AcceleratorConfig, EstimateReport, Guard, Method,
    RealSequence, Tableau, DEFAULT_BREAKDOWN_TOL,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LinearMethodResult {
    pub tableau: Tableau,
    pub report: EstimateReport,
}

/// One Δ² step on three consecutive values.
///
/// A window that is constant to within the tolerance is already converged
/// and is returned unchanged instead of being reported as a 0/0 breakdown.
pub(crate) fn delta2_step(a0: f64, a1: f64, a2: f64, tol: f64) -> Cell {
    let d0 = a1 - a0;
    let d1 = a2 - a1;
    let scale = a0.abs().max(a1.abs()).max(a2.abs());
    if guard_denominator(d0, scale, tol) == Guard::Breakdown
        && guard_denominator(d1, scale, tol) == Guard::Breakdown
    {
        return Ok(a0);
    }
    let dd = d1 - d0;
    if guard_denominator(dd, scale, tol) == Guard::Breakdown {
        return Err(breakdown_reason(dd));
    }
    Ok(a0 - d0 * d0 / dd)
}

/// `s_n − (Δs_n)² / Δ²s_n`.
pub fn aitken_delta2(s: &RealSequence, n: usize) -> Result<f64> {
    if n + 2 >= s.len() {
        return Err(Error::IndexOutOfRange { index: n + 2, len: s.len() });
    }
    let o = s.offsets();
    delta2_step(o[n], o[n + 1], o[n + 2], DEFAULT_BREAKDOWN_TOL)
        .map(|v| s.anchor() + v)
        .map_err(Error::Breakdown)
}

/// Iterated Δ² process: column `k+1` is Δ² applied to column `k`.
pub fn aitken_iterated(s: &RealSequence, cfg: &AcceleratorConfig) -> Result<LinearMethodResult> {
    cfg.validate()?;
    if s.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "iterated Δ² needs at least 3 elements, got {}",
            s.len()
        )));
    }
    let tol = cfg.breakdown_tol;
    let mut cols: Vec<Vec<Cell>> = vec![s.offsets().iter().map(|&v| Ok(v)).collect()];
    while cols.last().map_or(0, Vec::len) >= 3 {
        let prev = cols.last().unwrap();
        let next = (0..prev.len() - 2)
            .map(|n| {
                let [a0, a1, a2] = inputs([&prev[n], &prev[n + 1], &prev[n + 2]])?;
                delta2_step(a0, a1, a2, tol)
            })
            .collect();
        cols.push(next);
    }
    let params = AcceleratorConfig { method: Method::AitkenIterated, ..cfg.clone() };
    let tableau = Tableau::assemble(Method::AitkenIterated, params, s, cols);
    let report = select_best(&tableau);
    Ok(LinearMethodResult { tableau, report })
}

/// Shared two-step recursion of the epsilon/rho family:
/// `e_{k+1}^(n) = e_{k−1}^(n+1) + numer(k, n) / (e_k^(n+1) − e_k^(n))`,
/// with `e_{−1} = 0` implicit. Columns stop at the highest even order the
/// input length allows.
pub(crate) fn two_step_columns(
    offsets: &[f64],
    tol: f64,
    numer: impl Fn(usize, usize) -> f64,
) -> Vec<Vec<Cell>> {
    let len = offsets.len();
    let k_max = if len == 0 { 0 } else { (len - 1) & !1 };
    let mut cols: Vec<Vec<Cell>> = vec![offsets.iter().map(|&v| Ok(v)).collect()];
    for k in 0..k_max {
        let cur = &cols[k];
        let next = (0..cur.len() - 1)
            .map(|n| {
                let [lo, hi] = inputs([&cur[n], &cur[n + 1]])?;
                let back = if k == 0 {
                    0.0
                } else {
                    let [b] = inputs([&cols[k - 1][n + 1]])?;
                    b
                };
                let den = hi - lo;
                if guard_denominator(den, lo.abs().max(hi.abs()), tol) == Guard::Breakdown {
                    return Err(breakdown_reason(den));
                }
                Ok(back + numer(k, n) / den)
            })
            .collect();
        cols.push(next);
    }
    cols
}

/// Wynn's epsilon algorithm. Odd columns are auxiliary.
pub fn wynn_epsilon(s: &RealSequence, cfg: &AcceleratorConfig) -> Result<LinearMethodResult> {
    cfg.validate()?;
    let cols = two_step_columns(s.offsets(), cfg.breakdown_tol, |_, _| 1.0);
    let params = AcceleratorConfig { method: Method::Epsilon, ..cfg.clone() };
    let tableau = Tableau::assemble(Method::Epsilon, params, s, cols);
    let report = select_best(&tableau);
    Ok(LinearMethodResult { tableau, report })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonStage {
    pub k: usize,
    /// The column `ε_k^(n)`, `None` for invalid entries.
    pub values: Vec<Option<f64>>,
    pub agreement: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StagedEpsilon {
    pub stages: Vec<EpsilonStage>,
    pub tableau: Tableau,
    pub report: EstimateReport,
}

/// Applies the epsilon algorithm one even column at a time, stopping after
/// the first column whose agreement is worse than the previous one.
pub fn epsilon_staged(s: &RealSequence, cfg: &AcceleratorConfig) -> Result<StagedEpsilon> {
    if s.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "staged epsilon needs at least 3 elements, got {}",
            s.len()
        )));
    }
    let LinearMethodResult { tableau, report } = wynn_epsilon(s, cfg)?;
    let (scanned, _) = scan_stages(&tableau);
    let stages = scanned
        .iter()
        .map(|st| EpsilonStage {
            k: st.k,
            values: tableau.columns()[st.k].entries.iter().map(|e| e.valid_value()).collect(),
            agreement: st.metric,
        })
        .collect();
    Ok(StagedEpsilon { stages, tableau, report })
}
