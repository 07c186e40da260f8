use crate::core_model::{InterpolationPoints, RealSequence, Source};
use crate::error::{Error, Result};

/// Model sequences on which individual transformations are exact or have a
/// known error order.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    /// `s + c·λⁿ`.
    SingleExponential { s: f64, c: f64, lambda: f64 },
    /// `s + Σ c_j λ_jⁿ` with `|λ_0| > |λ_1| > ⋯`.
    MultiExponential { s: f64, terms: Vec<(f64, f64)> },
    /// `s + (n+β)^(−α) Σ c_j (n+β)^(−j)`.
    PowerTail { s: f64, alpha: f64, beta: f64, coeffs: Vec<f64> },
    /// `s + Σ c_j x_n^(j+1)`.
    PolynomialInX { s: f64, coeffs: Vec<f64>, points: InterpolationPoints },
    /// `(a_0 + a_1 x_n + ⋯) / (b_0 + b_1 x_n + ⋯)`.
    RationalSample { a: Vec<f64>, b: Vec<f64>, points: InterpolationPoints },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSequenceSpec {
    pub kind: ModelKind,
    pub length: usize,
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn point(points: &InterpolationPoints, n: usize) -> Result<f64> {
    points
        .point(n)
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::InvalidSpec(format!("no interpolation point for n = {n}")))
}

pub fn generate(spec: &ModelSequenceSpec) -> Result<RealSequence> {
    if spec.length == 0 {
        return Err(Error::InvalidSpec("length must be positive".into()));
    }
    // Models with a known limit keep it as the anchor and the tail as the
    // offsets, so the recursions see the tail at full relative precision.
    let (anchor, tail): (Option<f64>, Vec<f64>) = match &spec.kind {
        ModelKind::SingleExponential { s, c, lambda } => {
            (Some(*s), (0..spec.length).map(|n| c * lambda.powi(n as i32)).collect())
        }
        ModelKind::MultiExponential { s, terms } => {
            if terms.windows(2).any(|w| !(w[0].1.abs() > w[1].1.abs())) {
                return Err(Error::InvalidSpec("|λ_j| must be strictly decreasing".into()));
            }
            let tail = (0..spec.length)
                .map(|n| terms.iter().map(|(c, l)| c * l.powi(n as i32)).sum::<f64>())
                .collect();
            (Some(*s), tail)
        }
        ModelKind::PowerTail { s, alpha, beta, coeffs } => {
            if !(*alpha > 0.0 && *beta > 0.0) {
                return Err(Error::InvalidSpec("power tail needs α > 0 and β > 0".into()));
            }
            let tail = (0..spec.length)
                .map(|n| {
                    let x = n as f64 + beta;
                    x.powf(-alpha) * horner(coeffs, 1.0 / x)
                })
                .collect();
            (Some(*s), tail)
        }
        ModelKind::PolynomialInX { s, coeffs, points } => {
            let tail = (0..spec.length)
                .map(|n| point(points, n).map(|x| x * horner(coeffs, x)))
                .collect::<Result<_>>()?;
            (Some(*s), tail)
        }
        ModelKind::RationalSample { a, b, points } => {
            if a.is_empty() || b.is_empty() {
                return Err(Error::InvalidSpec("rational sample needs coefficients".into()));
            }
            let values = (0..spec.length)
                .map(|n| {
                    let x = point(points, n)?;
                    let den = horner(b, x);
                    if den == 0.0 {
                        return Err(Error::InvalidSpec(format!("pole at x = {x}")));
                    }
                    Ok(horner(a, x) / den)
                })
                .collect::<Result<_>>()?;
            (None, values)
        }
    };
    let seq = match anchor {
        Some(s) => {
            let values: Vec<f64> = tail.iter().map(|t| s + t).collect();
            if !s.is_finite() || values.iter().chain(&tail).any(|v| !v.is_finite()) {
                return Err(Error::InvalidSpec("model produced a non-finite value".into()));
            }
            RealSequence::from_parts(values, s, tail, None)?
        }
        None => {
            if tail.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidSpec("model produced a non-finite value".into()));
            }
            RealSequence::new(tail)?
        }
    };
    Ok(seq.with_source(Source::Generated))
}
