use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default breakdown tolerance: one decade above double-precision epsilon.
pub const DEFAULT_BREAKDOWN_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    AitkenIterated,
    Epsilon,
    RichardsonGeneral,
    RichardsonStandard,
    RhoGeneral,
    RhoStandard,
    RhoIteratedGeneral,
    RhoIteratedStandard,
    Osada,
    Bdg,
}

impl Method {
    pub const ALL: [Method; 10] = [
        Method::AitkenIterated,
        Method::Epsilon,
        Method::RichardsonGeneral,
        Method::RichardsonStandard,
        Method::RhoGeneral,
        Method::RhoStandard,
        Method::RhoIteratedGeneral,
        Method::RhoIteratedStandard,
        Method::Osada,
        Method::Bdg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::AitkenIterated => "aitken_iterated",
            Method::Epsilon => "epsilon",
            Method::RichardsonGeneral => "richardson_general",
            Method::RichardsonStandard => "richardson_standard",
            Method::RhoGeneral => "rho_general",
            Method::RhoStandard => "rho_standard",
            Method::RhoIteratedGeneral => "rho_iterated_general",
            Method::RhoIteratedStandard => "rho_iterated_standard",
            Method::Osada => "osada",
            Method::Bdg => "bdg",
        }
    }

    /// Two-step schemes (epsilon, rho, Osada) interleave auxiliary odd columns.
    pub fn has_auxiliary_columns(self) -> bool {
        matches!(
            self,
            Method::Epsilon | Method::RhoGeneral | Method::RhoStandard | Method::Osada
        )
    }

    /// Number of inputs beyond `s_n` that entry `(k, n)` consumes.
    pub fn span(self, k: usize) -> usize {
        match self {
            Method::AitkenIterated
            | Method::RhoIteratedGeneral
            | Method::RhoIteratedStandard
            | Method::Bdg => 2 * k,
            _ => k,
        }
    }

    /// Distance between successive reportable columns.
    pub fn stage_step(self) -> usize {
        if self.has_auxiliary_columns() {
            2
        } else {
            1
        }
    }

    pub fn requires_alpha(self) -> bool {
        matches!(self, Method::Osada | Method::Bdg)
    }

    pub fn uses_points(self) -> bool {
        matches!(
            self,
            Method::RichardsonGeneral | Method::RhoGeneral | Method::RhoIteratedGeneral
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        let alias = match key.as_str() {
            "aitken" => "aitken_iterated",
            "richardson" => "richardson_standard",
            "rho" => "rho_standard",
            "rho_iterated" => "rho_iterated_standard",
            other => other,
        };
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.name() == alias)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown method {s:?}")))
    }
}

/// Interpolation points `x_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum InterpolationPoints {
    Explicit { points: Vec<f64> },
    /// `x_n = 1/(n+β)`, decreasing to 0.
    ReciprocalShift { beta: f64 },
    /// `x_n = n+1`, increasing to ∞.
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    DecreasingToZero,
    IncreasingToInfinity,
}

impl InterpolationPoints {
    pub fn point(&self, n: usize) -> Option<f64> {
        match self {
            InterpolationPoints::Explicit { points } => points.get(n).copied(),
            InterpolationPoints::ReciprocalShift { beta } => Some(1.0 / (n as f64 + beta)),
            InterpolationPoints::Linear => Some(n as f64 + 1.0),
        }
    }

    /// The first `len` points, checked against the monotonicity the
    /// consuming method requires.
    pub fn evaluate(&self, len: usize, direction: Direction) -> Result<Vec<f64>> {
        match (self, direction) {
            (InterpolationPoints::ReciprocalShift { beta }, _) if !(*beta > 0.0) => {
                return Err(Error::InvalidPoints(format!("shift β = {beta} must be positive")))
            }
            (InterpolationPoints::Explicit { points }, _) if points.len() < len => {
                return Err(Error::InvalidPoints(format!(
                    "{} explicit points for {len} sequence elements",
                    points.len()
                )))
            }
            _ => {}
        }
        let xs: Vec<f64> = (0..len).filter_map(|n| self.point(n)).collect();
        if xs.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidPoints("non-finite interpolation point".into()));
        }
        let ok = match direction {
            Direction::DecreasingToZero => {
                xs.iter().all(|&x| x > 0.0) && xs.windows(2).all(|w| w[0] > w[1])
            }
            Direction::IncreasingToInfinity => {
                xs.iter().all(|&x| x > 0.0) && xs.windows(2).all(|w| w[0] < w[1])
            }
        };
        if !ok {
            let want = match direction {
                Direction::DecreasingToZero => "positive and strictly decreasing",
                Direction::IncreasingToInfinity => "positive and strictly increasing",
            };
            return Err(Error::InvalidPoints(format!("points must be {want}")));
        }
        Ok(xs)
    }
}

impl FromStr for InterpolationPoints {
    type Err = Error;

    /// `linear`, `reciprocal` / `reciprocal:β`, or a comma-separated list.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "linear" => return Ok(InterpolationPoints::Linear),
            "reciprocal" => return Ok(InterpolationPoints::ReciprocalShift { beta: 1.0 }),
            _ => {}
        }
        if let Some(beta) = t.strip_prefix("reciprocal:") {
            let beta: f64 = beta
                .parse()
                .map_err(|_| Error::InvalidPoints(format!("bad shift in {t:?}")))?;
            return Ok(InterpolationPoints::ReciprocalShift { beta });
        }
        let points = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidPoints(format!("bad point {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(InterpolationPoints::Explicit { points })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceleratorConfig {
    pub method: Method,
    pub beta: f64,
    pub alpha: Option<f64>,
    pub points: Option<InterpolationPoints>,
    pub breakdown_tol: f64,
}

impl AcceleratorConfig {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            beta: 1.0,
            alpha: None,
            points: None,
            breakdown_tol: DEFAULT_BREAKDOWN_TOL,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_points(mut self, points: InterpolationPoints) -> Self {
        self.points = Some(points);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.breakdown_tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::InvalidConfig(format!("beta = {} must be positive", self.beta)));
        }
        if !(self.breakdown_tol > 0.0) || !self.breakdown_tol.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "breakdown_tol = {} must be positive",
                self.breakdown_tol
            )));
        }
        match self.alpha {
            Some(a) if !(a > 0.0) || !a.is_finite() => {
                return Err(Error::InvalidConfig(format!("alpha = {a} must be positive")))
            }
            None if self.method.requires_alpha() => {
                return Err(Error::InvalidConfig(format!("{} requires alpha", self.method)))
            }
            _ => {}
        }
        Ok(())
    }

    /// Interpolation points to use with the configured method, falling back
    /// to the standard family for that method.
    pub fn points_or_default(&self) -> InterpolationPoints {
        self.points.clone().unwrap_or(match self.method {
            Method::RichardsonGeneral | Method::RichardsonStandard => {
                InterpolationPoints::ReciprocalShift { beta: self.beta }
            }
            _ => InterpolationPoints::Linear,
        })
    }
}

impl Default for AcceleratorConfig {
    fn default() -> Self {
        Self::new(Method::Epsilon)
    }
}
