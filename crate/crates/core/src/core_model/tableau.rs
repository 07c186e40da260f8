use serde::Serialize;

use super::config::{AcceleratorConfig, Method};
use super::sequence::RealSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Guard {
    Ok,
    Breakdown,
}

/// Breakdown test applied before every division: `|den| ≤ tol·max(scale, 1)`.
pub fn guard_denominator(den: f64, scale: f64, tol: f64) -> Guard {
    if !den.is_finite() || den.abs() <= tol * scale.max(1.0) {
        Guard::Breakdown
    } else {
        Guard::Ok
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub value: f64,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Entry {
    pub fn valid_value(&self) -> Option<f64> {
        self.valid.then_some(self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Column {
    pub k: usize,
    pub auxiliary: bool,
    pub entries: Vec<Entry>,
}

/// Triangular array of transforms; column `k` holds the entries `(k, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tableau {
    method: Method,
    params: AcceleratorConfig,
    columns: Vec<Column>,
}

/// Working cell of a recursion: a value on the offset scale, or the reason it
/// is invalid.
pub(crate) type Cell = std::result::Result<f64, String>;

pub(crate) const DEPENDS_ON_INVALID: &str = "depends on invalid entry";

pub(crate) fn breakdown_reason(den: f64) -> String {
    format!("denominator below tolerance ({den:e})")
}

/// Unpacks the inputs of a recursion step, or propagates invalidity.
pub(crate) fn inputs<const N: usize>(cells: [&Cell; N]) -> std::result::Result<[f64; N], String> {
    let mut out = [0.0; N];
    for (o, c) in out.iter_mut().zip(cells) {
        *o = *c.as_ref().map_err(|_| DEPENDS_ON_INVALID.to_string())?;
    }
    Ok(out)
}

impl Tableau {
    /// Assembles a tableau from recursion columns computed on the offsets of
    /// `seq`. `cols[0]` must be the offsets themselves; column 0 reports the
    /// original values, later non-auxiliary columns get the anchor added back.
    pub(crate) fn assemble(
        method: Method,
        params: AcceleratorConfig,
        seq: &RealSequence,
        cols: Vec<Vec<Cell>>,
    ) -> Self {
        let anchor = seq.anchor();
        let columns = cols
            .into_iter()
            .enumerate()
            .map(|(k, cells)| {
                let auxiliary = method.has_auxiliary_columns() && k % 2 == 1;
                let entries = if k == 0 {
                    seq.values()
                        .iter()
                        .map(|&v| Entry { value: v, valid: true, reason: None })
                        .collect()
                } else {
                    cells
                        .into_iter()
                        .map(|c| match c {
                            Ok(v) if v.is_finite() => Entry {
                                value: if auxiliary { v } else { anchor + v },
                                valid: true,
                                reason: None,
                            },
                            Ok(_) => Entry {
                                value: f64::NAN,
                                valid: false,
                                reason: Some("non-finite value".into()),
                            },
                            Err(reason) => Entry { value: f64::NAN, valid: false, reason: Some(reason) },
                        })
                        .collect()
                };
                Column { k, auxiliary, entries }
            })
            .collect();
        Self { method, params, columns }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn params(&self) -> &AcceleratorConfig {
        &self.params
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, k: usize) -> Option<&Column> {
        self.columns.get(k)
    }

    pub fn entry(&self, k: usize, n: usize) -> Option<&Entry> {
        self.columns.get(k).and_then(|c| c.entries.get(n))
    }

    /// Value of a valid entry.
    pub fn value(&self, k: usize, n: usize) -> Option<f64> {
        self.entry(k, n).and_then(Entry::valid_value)
    }

    pub fn max_order(&self) -> usize {
        self.columns.len().saturating_sub(1)
    }

    /// Orders that carry limit estimates, in increasing order (k ≥ 1).
    pub fn reportable_orders(&self) -> Vec<usize> {
        let step = self.method.stage_step();
        (1..self.columns.len())
            .filter(|k| k % step == 0 && !self.columns[*k].auxiliary)
            .collect()
    }

    /// The entry of the previous reportable column that ends on the same
    /// input element as `(k, n)`.
    pub fn parent(&self, k: usize, n: usize) -> Option<(usize, usize)> {
        let step = self.method.stage_step();
        let pk = k.checked_sub(step)?;
        let pn = n + self.method.span(k) - self.method.span(pk);
        self.entry(pk, pn).map(|_| (pk, pn))
    }

    pub fn valid_fraction(&self) -> f64 {
        let (valid, total) = self
            .columns
            .iter()
            .flat_map(|c| c.entries.iter())
            .fold((0usize, 0usize), |(v, t), e| (v + e.valid as usize, t + 1));
        if total == 0 {
            0.0
        } else {
            valid as f64 / total as f64
        }
    }
}
