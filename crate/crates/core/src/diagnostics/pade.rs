use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Condition-number bound for the denominator system.
const MAX_CONDITION: f64 = 1e12;

/// `P_l(z) / Q_m(z)` with `q_0 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PadeApproximant {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
}

impl PadeApproximant {
    pub fn eval(&self, z: f64) -> f64 {
        let poly = |c: &[f64]| c.iter().rev().fold(0.0, |acc, v| acc * z + v);
        poly(&self.p) / poly(&self.q)
    }
}

/// The `[l/m]` approximant of the power series with the given coefficients.
pub fn pade_approximant(coeffs: &[f64], l: usize, m: usize) -> Result<PadeApproximant> {
    if l + m + 1 > coeffs.len() {
        return Err(Error::InsufficientData(format!(
            "[{l}/{m}] needs {} coefficients, got {}",
            l + m + 1,
            coeffs.len()
        )));
    }
    let c = |i: isize| if i < 0 { 0.0 } else { coeffs[i as usize] };

    let mut q = vec![1.0];
    if m > 0 {
        // Σ_{j=1..m} q_j c_{l+i−j} = −c_{l+i}, i = 1..m
        let a = DMatrix::from_fn(m, m, |i, j| c(l as isize + i as isize - j as isize));
        let b = DVector::from_fn(m, |i, _| -c((l + i + 1) as isize));
        let sv = a.singular_values();
        let (smax, smin) = (sv.max(), sv.min());
        if !(smin > 0.0) || smax / smin > MAX_CONDITION {
            return Err(Error::SingularSystem(format!(
                "[{l}/{m}] denominator system has condition {:e}",
                smax / smin
            )));
        }
        let x = a
            .lu()
            .solve(&b)
            .ok_or_else(|| Error::SingularSystem(format!("[{l}/{m}] LU solve failed")))?;
        q.extend(x.iter());
    }
    let p = (0..=l)
        .map(|i| (0..=i.min(m)).map(|j| q[j] * c(i as isize - j as isize)).sum())
        .collect();
    Ok(PadeApproximant { p, q })
}

/// Value of the `[l/m]` approximant at `z`.
pub fn pade(coeffs: &[f64], l: usize, m: usize, z: f64) -> Result<f64> {
    pade_approximant(coeffs, l, m).map(|a| a.eval(z))
}
