//! Accelerators for logarithmically convergent sequences.
//!
//! Each standard form shares its arithmetic with the corresponding general or
//! parametrised form, so that Osada's variant at α = 1 and the BDG process at
//! α = 1 reproduce the standard rho and iterated rho tableaus bit for bit.

use crate::core_model::tableau::{breakdown_reason, inputs, Cell};
use crate::core_model::{
    guard_denominator, AcceleratorConfig, Direction, Guard, Method, RealSequence, Tableau,
};
use crate::error::{Error, Result};
use crate::linear_accel::two_step_columns;

pub use crate::core_model::InterpolationPoints;

/// Which interpolation points the iterated rho process uses.
#[derive(Debug, Clone, PartialEq)]
pub enum RhoPoints {
    /// `x_n = n + 1`.
    Standard,
    General(InterpolationPoints),
}

fn require_len(s: &RealSequence, min: usize, what: &str) -> Result<()> {
    if s.len() < min {
        return Err(Error::InsufficientData(format!(
            "{what} needs at least {min} elements, got {}",
            s.len()
        )));
    }
    Ok(())
}

fn offsets_column(s: &RealSequence) -> Vec<Cell> {
    s.offsets().iter().map(|&v| Ok(v)).collect()
}

/// Builds one-step columns `c_{k+1}^(n) = step(k, n, c_k^(n), c_k^(n+1))` up
/// to order `len − 1`.
fn one_step_columns(s: &RealSequence, step: impl Fn(usize, usize, f64, f64) -> Cell) -> Vec<Vec<Cell>> {
    let mut cols = vec![offsets_column(s)];
    for k in 0..s.len() - 1 {
        let cur = &cols[k];
        let next = (0..cur.len() - 1)
            .map(|n| {
                let [lo, hi] = inputs([&cur[n], &cur[n + 1]])?;
                step(k, n, lo, hi)
            })
            .collect();
        cols.push(next);
    }
    cols
}

/// Builds three-point columns, each consuming two more inputs than the last.
fn three_point_columns(
    s: &RealSequence,
    step: impl Fn(usize, usize, f64, f64, f64) -> Cell,
) -> Vec<Vec<Cell>> {
    let mut cols = vec![offsets_column(s)];
    while cols.last().map_or(0, Vec::len) >= 3 {
        let k = cols.len() - 1;
        let cur = cols.last().unwrap();
        let next = (0..cur.len() - 2)
            .map(|n| {
                let [w0, w1, w2] = inputs([&cur[n], &cur[n + 1], &cur[n + 2]])?;
                step(k, n, w0, w1, w2)
            })
            .collect();
        cols.push(next);
    }
    cols
}

/// Neville scheme for polynomial extrapolation to `x = 0`.
pub fn richardson_general(
    s: &RealSequence,
    pts: &InterpolationPoints,
    cfg: &AcceleratorConfig,
) -> Result<Tableau> {
    cfg.validate()?;
    require_len(s, 2, "Richardson extrapolation")?;
    let x = pts.evaluate(s.len(), Direction::DecreasingToZero)?;
    let tol = cfg.breakdown_tol;
    let cols = one_step_columns(s, |k, n, lo, hi| {
        let (xa, xb) = (x[n], x[n + k + 1]);
        let den = xa - xb;
        if guard_denominator(den, xa.abs().max(xb.abs()), tol) == Guard::Breakdown {
            return Err(breakdown_reason(den));
        }
        Ok((xa * hi - xb * lo) / den)
    });
    let params = AcceleratorConfig {
        method: Method::RichardsonGeneral,
        points: Some(pts.clone()),
        ..cfg.clone()
    };
    Ok(Tableau::assemble(Method::RichardsonGeneral, params, s, cols))
}

/// Richardson extrapolation with `x_n = 1/(n+β)` in its division-free form.
pub fn richardson_standard(s: &RealSequence, beta: f64) -> Result<Tableau> {
    let params = AcceleratorConfig::new(Method::RichardsonStandard).with_beta(beta);
    params.validate()?;
    require_len(s, 2, "Richardson extrapolation")?;
    let cols = one_step_columns(s, |k, n, lo, hi| {
        Ok(hi + (beta + n as f64) / (k as f64 + 1.0) * (hi - lo))
    });
    Ok(Tableau::assemble(Method::RichardsonStandard, params, s, cols))
}

/// Wynn's rho algorithm with interpolation points increasing to infinity.
pub fn rho_general(
    s: &RealSequence,
    pts: &InterpolationPoints,
    cfg: &AcceleratorConfig,
) -> Result<Tableau> {
    cfg.validate()?;
    let x = pts.evaluate(s.len(), Direction::IncreasingToInfinity)?;
    let cols = two_step_columns(s.offsets(), cfg.breakdown_tol, |k, n| x[n + k + 1] - x[n]);
    let params =
        AcceleratorConfig { method: Method::RhoGeneral, points: Some(pts.clone()), ..cfg.clone() };
    Ok(Tableau::assemble(Method::RhoGeneral, params, s, cols))
}

fn rho_with_alpha(s: &RealSequence, alpha: f64, tol: f64) -> Vec<Vec<Cell>> {
    two_step_columns(s.offsets(), tol, |k, _| k as f64 + alpha)
}

/// Standard rho, `x_n = n + 1`.
pub fn rho_standard(s: &RealSequence, cfg: &AcceleratorConfig) -> Result<Tableau> {
    cfg.validate()?;
    let cols = rho_with_alpha(s, 1.0, cfg.breakdown_tol);
    let params = AcceleratorConfig { method: Method::RhoStandard, ..cfg.clone() };
    Ok(Tableau::assemble(Method::RhoStandard, params, s, cols))
}

/// Osada's variant of the rho algorithm with decay parameter `alpha`.
pub fn osada(s: &RealSequence, alpha: f64, cfg: &AcceleratorConfig) -> Result<Tableau> {
    let params = AcceleratorConfig { method: Method::Osada, alpha: Some(alpha), ..cfg.clone() };
    params.validate()?;
    let cols = rho_with_alpha(s, alpha, cfg.breakdown_tol);
    Ok(Tableau::assemble(Method::Osada, params, s, cols))
}

/// Weighted Δ² step `w1 − f·Δw1·Δw0 / Δ²w0`, shared by the standard iterated
/// rho process and BDG. A constant window counts as converged.
fn weighted_delta2_step(w0: f64, w1: f64, w2: f64, factor: f64, tol: f64) -> Cell {
    let d0 = w1 - w0;
    let d1 = w2 - w1;
    let scale = w0.abs().max(w1.abs()).max(w2.abs());
    if guard_denominator(d0, scale, tol) == Guard::Breakdown
        && guard_denominator(d1, scale, tol) == Guard::Breakdown
    {
        return Ok(w1);
    }
    let dd = d1 - d0;
    if guard_denominator(dd, scale, tol) == Guard::Breakdown {
        return Err(breakdown_reason(dd));
    }
    Ok(w1 - factor * d1 * d0 / dd)
}

fn bdg_columns(s: &RealSequence, alpha: f64, tol: f64) -> Vec<Vec<Cell>> {
    three_point_columns(s, |k, _, w0, w1, w2| {
        let base = 2.0 * k as f64 + alpha;
        weighted_delta2_step(w0, w1, w2, (base + 1.0) / base, tol)
    })
}

/// Iterated rho process.
pub fn rho_iterated(s: &RealSequence, pts: &RhoPoints, cfg: &AcceleratorConfig) -> Result<Tableau> {
    cfg.validate()?;
    require_len(s, 3, "iterated rho")?;
    let tol = cfg.breakdown_tol;
    match pts {
        RhoPoints::Standard => {
            let cols = bdg_columns(s, 1.0, tol);
            let params = AcceleratorConfig { method: Method::RhoIteratedStandard, ..cfg.clone() };
            Ok(Tableau::assemble(Method::RhoIteratedStandard, params, s, cols))
        }
        RhoPoints::General(p) => {
            let x = p.evaluate(s.len(), Direction::IncreasingToInfinity)?;
            let cols = three_point_columns(s, |k, n, w0, w1, w2| {
                let d0 = w1 - w0;
                let d1 = w2 - w1;
                let scale = w0.abs().max(w1.abs()).max(w2.abs());
                if guard_denominator(d0, scale, tol) == Guard::Breakdown
                    && guard_denominator(d1, scale, tol) == Guard::Breakdown
                {
                    return Ok(w1);
                }
                let a = x[n + 2 * k + 2] - x[n];
                let b = x[n + 2 * k + 2] - x[n + 1];
                let c = x[n + 2 * k + 1] - x[n];
                let den = b * d0 - c * d1;
                if guard_denominator(den, scale * b.abs().max(c.abs()), tol) == Guard::Breakdown {
                    return Err(breakdown_reason(den));
                }
                Ok(w1 + a * d1 * d0 / den)
            });
            let params = AcceleratorConfig {
                method: Method::RhoIteratedGeneral,
                points: Some(p.clone()),
                ..cfg.clone()
            };
            Ok(Tableau::assemble(Method::RhoIteratedGeneral, params, s, cols))
        }
    }
}

/// Weighted Δ² process of Bjørstad, Dahlquist and Grosse.
pub fn bdg(s: &RealSequence, alpha: f64, cfg: &AcceleratorConfig) -> Result<Tableau> {
    let params = AcceleratorConfig { method: Method::Bdg, alpha: Some(alpha), ..cfg.clone() };
    params.validate()?;
    require_len(s, 3, "BDG")?;
    let cols = bdg_columns(s, alpha, cfg.breakdown_tol);
    Ok(Tableau::assemble(Method::Bdg, params, s, cols))
}
