use crate::error::{Error, Result};

/// Least-squares slope of `ln|e|` against `ln x` over `(x, e)` pairs.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, e)| *x > 0.0 && *e != 0.0 && e.is_finite())
        .map(|(x, e)| (x.ln(), e.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::InsufficientData("slope fit needs two usable points".into()));
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData("slope fit needs distinct abscissae".into()));
    }
    Ok(sxy / sxx)
}

/// Log-log slope over the last third of `(x, e)` pairs (at least three).
pub fn tail_slope(points: &[(f64, f64)]) -> Result<f64> {
    let take = (points.len() / 3).max(3).min(points.len());
    fit_loglog_slope(&points[points.len() - take..])
}
