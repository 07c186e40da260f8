//! Euler–Maclaurin acceleration of the Dirichlet series for ζ(z).
//!
//! `ζ(z) ≈ Σ_{ν=0}^{n} (ν+1)^(−z) + (n+2)^(1−z)/(z−1) + (n+2)^(−z)/2
//!        + Σ_{j=1}^{k} (z)_{2j−1} B_{2j} (n+2)^(−z−2j+1) / (2j)!`
//!
//! The correction series is asymptotic in `k`; no remainder is computed.

use serde::Serialize;

use crate::error::{Error, Result};

/// `B_0, B_2, …, B_30` as exact fractions.
const BERNOULLI_EVEN: [(f64, f64); 16] = [
    (1.0, 1.0),
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

pub const MAX_BERNOULLI_TERMS: usize = 15;

pub fn bernoulli_number(m: usize) -> Result<f64> {
    if m > 2 * MAX_BERNOULLI_TERMS {
        return Err(Error::OutOfRange(format!("Bernoulli index {m} (table ends at 30)")));
    }
    if m % 2 == 1 {
        return Err(Error::Domain(format!("only even Bernoulli indices are tabulated, got {m}")));
    }
    let (num, den) = BERNOULLI_EVEN[m / 2];
    Ok(num / den)
}

/// `(z)_m = z(z+1)⋯(z+m−1)`.
pub fn pochhammer(z: f64, m: usize) -> f64 {
    (0..m).map(|i| z + i as f64).product()
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|i| i as f64).product()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaTailExpansion {
    pub z: f64,
    pub n: usize,
    pub k: usize,
    pub integral_term: f64,
    pub half_term: f64,
    pub bernoulli_terms: Vec<f64>,
}

impl ZetaTailExpansion {
    /// Sum of all terms, smallest first.
    pub fn sum(&self) -> f64 {
        self.bernoulli_terms.iter().rev().sum::<f64>() + self.half_term + self.integral_term
    }
}

fn check_args(z: f64, k: usize) -> Result<()> {
    if !(z > 1.0) || !z.is_finite() {
        return Err(Error::Domain(format!("z = {z} must be finite and > 1")));
    }
    if k > MAX_BERNOULLI_TERMS {
        return Err(Error::OutOfRange(format!(
            "k = {k} Bernoulli terms (at most {MAX_BERNOULLI_TERMS})"
        )));
    }
    Ok(())
}

/// Truncated expansion of `Σ_{ν=n+1}^∞ (ν+1)^(−z)`.
pub fn zeta_tail(z: f64, n: usize, k: usize) -> Result<ZetaTailExpansion> {
    check_args(z, k)?;
    let x = n as f64 + 2.0;
    let bernoulli_terms = (1..=k)
        .map(|j| {
            let b = bernoulli_number(2 * j)?;
            Ok(pochhammer(z, 2 * j - 1) * b * x.powf(-z - 2.0 * j as f64 + 1.0) / factorial(2 * j))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ZetaTailExpansion {
        z,
        n,
        k,
        integral_term: x.powf(1.0 - z) / (z - 1.0),
        half_term: x.powf(-z) / 2.0,
        bernoulli_terms,
    })
}

/// `Σ_{ν=0}^{n} (ν+1)^(−z)`, summed from the smallest term up.
pub fn partial_sum(z: f64, n: usize) -> f64 {
    (0..=n).rev().map(|nu| (nu as f64 + 1.0).powf(-z)).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaEstimate {
    pub partial_sum: f64,
    pub tail: ZetaTailExpansion,
    pub total: f64,
}

pub fn zeta_breakdown(z: f64, n: usize, k: usize) -> Result<ZetaEstimate> {
    let tail = zeta_tail(z, n, k)?;
    let partial_sum = partial_sum(z, n);
    let total = tail.bernoulli_terms.iter().rev().sum::<f64>()
        + tail.half_term
        + partial_sum
        + tail.integral_term;
    Ok(ZetaEstimate { partial_sum, tail, total })
}

pub fn zeta_estimate(z: f64, n: usize, k: usize) -> Result<f64> {
    zeta_breakdown(z, n, k).map(|e| e.total)
}

/// `log10` of the number of Dirichlet-series terms after which the
/// truncation error `≈ (n+2)^(1−z)/(z−1)` drops to `eps`.
pub fn direct_terms_log10(z: f64, eps: f64) -> Result<f64> {
    check_args(z, 0)?;
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps = {eps} must be positive")));
    }
    Ok(-(eps * (z - 1.0)).log10() / (z - 1.0))
}
