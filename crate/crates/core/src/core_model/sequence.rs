//! Input sequences.
//!
//! A [`RealSequence`] keeps its values twice: as plain `f64` (what the user
//! gave us, rounded once) and as an `anchor + offset` split. When the input
//! comes from decimal text the anchor is one of the inputs, parsed exactly,
//! and the offsets are the exact decimal differences rounded once to `f64`.
//! Every transformation in this crate is translation covariant, so the
//! recursions run on the offsets and add the anchor back at the end. For
//! data like oligomer energies (≈ −75.9 with differences of 1e−9) this keeps
//! the differences free of the ~1e−14 representation error of the raw values.

use std::str::FromStr;

use rust_decimal::prelude::ToPrimitive;
use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    File,
    Fixture,
    Generated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealSequence {
    values: Vec<f64>,
    anchor: f64,
    offsets: Vec<f64>,
    resolution: Option<f64>,
    label: String,
    source: Source,
}

impl RealSequence {
    /// Builds a sequence from binary floating point values (no centering).
    pub fn new(values: Vec<f64>) -> Result<Self> {
        check_values(&values)?;
        Ok(Self {
            offsets: values.clone(),
            values,
            anchor: 0.0,
            resolution: None,
            label: String::new(),
            source: Source::Generated,
        })
    }

    /// Builds a sequence from exact decimals, anchored at the last element.
    ///
    /// The resolution is the coarsest decimal quantum among elements that
    /// carry fractional digits; integer-valued inputs are taken as exact.
    pub fn from_decimals(decimals: &[Decimal]) -> Result<Self> {
        let last = *decimals
            .last()
            .ok_or_else(|| Error::InvalidSequence("empty sequence".into()))?;
        let resolution = decimals
            .iter()
            .filter(|d| d.scale() > 0)
            .map(|d| 10f64.powi(-(d.scale() as i32)))
            .fold(None, |acc: Option<f64>, q| Some(acc.map_or(q, |a| a.max(q))));
        let offsets = decimals
            .iter()
            .map(|d| {
                d.checked_sub(last)
                    .and_then(|x| x.to_f64())
                    .ok_or_else(|| Error::InvalidSequence(format!("value {d} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        let values = decimals
            .iter()
            .map(|d| d.to_f64().unwrap_or(f64::NAN))
            .collect::<Vec<_>>();
        Self::from_parts(values, last.to_f64().unwrap_or(f64::NAN), offsets, resolution)
    }

    /// Parses decimal strings. Falls back to plain `f64` parsing when a value
    /// does not fit the exact decimal representation (more than 28 digits or
    /// a huge exponent).
    pub fn parse_strs<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let exact: Option<Vec<Decimal>> = items.iter().map(|s| parse_decimal(s.as_ref())).collect();
        match exact {
            Some(decimals) => Self::from_decimals(&decimals),
            None => {
                let values = items
                    .iter()
                    .map(|s| {
                        s.as_ref().trim().parse::<f64>().map_err(|e| {
                            Error::InvalidSequence(format!("cannot parse {:?}: {e}", s.as_ref()))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::new(values)
            }
        }
    }

    /// Assembles a sequence from an explicit anchor/offset split.
    ///
    /// `values[n]` is what gets reported for the untransformed column, while
    /// the recursions run on `offsets`; the caller guarantees
    /// `values[n] ≈ anchor + offsets[n]`.
    pub fn from_parts(
        values: Vec<f64>,
        anchor: f64,
        offsets: Vec<f64>,
        resolution: Option<f64>,
    ) -> Result<Self> {
        check_values(&values)?;
        check_values(&offsets)?;
        if offsets.len() != values.len() {
            return Err(Error::InvalidSequence("offset/value length mismatch".into()));
        }
        if !anchor.is_finite() {
            return Err(Error::InvalidSequence("anchor is not finite".into()));
        }
        Ok(Self {
            values,
            anchor,
            offsets,
            resolution,
            label: String::new(),
            source: Source::Generated,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    /// The sequence `a·s_n + b`. The shift goes into the anchor, so offsets
    /// (and hence all differences) only pick up the scaling.
    pub fn affine(&self, a: f64, b: f64) -> Result<Self> {
        if a == 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidSequence("affine map needs finite a ≠ 0 and finite b".into()));
        }
        let mut out = Self::from_parts(
            self.values.iter().map(|v| a * v + b).collect(),
            a * self.anchor + b,
            self.offsets.iter().map(|o| a * o).collect(),
            self.resolution.map(|q| q * a.abs()),
        )?;
        out.label = self.label.clone();
        out.source = self.source;
        Ok(out)
    }

    /// Leading `len` elements.
    pub fn prefix(&self, len: usize) -> Result<Self> {
        self.slice(0, len)
    }

    /// Elements `start..start+len`, keeping the anchor.
    pub fn slice(&self, start: usize, len: usize) -> Result<Self> {
        if len == 0 || start + len > self.len() {
            return Err(Error::IndexOutOfRange { index: start + len, len: self.len() });
        }
        let mut out = Self::from_parts(
            self.values[start..start + len].to_vec(),
            self.anchor,
            self.offsets[start..start + len].to_vec(),
            self.resolution,
        )?;
        out.label = self.label.clone();
        out.source = self.source;
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, n: usize) -> Option<f64> {
        self.values.get(n).copied()
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// Decimal quantum of the parsed input, if known.
    pub fn resolution(&self) -> Option<f64> {
        self.resolution
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn source(&self) -> Source {
        self.source
    }
}

fn check_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidSequence("empty sequence".into()));
    }
    if let Some(n) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidSequence(format!("element {n} is not finite")));
    }
    Ok(())
}

/// Exact decimal parse of plain or scientific notation.
pub fn parse_decimal(text: &str) -> Option<Decimal> {
    let t = text.trim();
    if t.contains(['e', 'E']) {
        Decimal::from_scientific(t).ok()
    } else {
        Decimal::from_str(t).ok()
    }
}
