//! Best-estimate selection.
//!
//! Reportable columns are scanned in increasing order. Each column gets an
//! agreement metric: the smallest spread over three consecutive valid entries
//! (two when the column is that short, or the distance to the parent entry
//! for a lone entry). Scanning stops at the first column whose metric is
//! worse than its predecessor's, and the estimate is taken from the last
//! column that did not get worse, at the end of its best window.

use serde::Serialize;

use super::tableau::Tableau;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub estimate: f64,
    pub order_k: usize,
    pub start_n: usize,
    /// Agreement metric of every scanned column, including the one that
    /// halted the scan.
    pub stage_deltas: Vec<f64>,
    pub valid_fraction: f64,
    /// Set when no transformed entry was usable and the estimate is the last
    /// input element.
    pub degraded: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColumnAgreement {
    pub k: usize,
    pub metric: f64,
    /// Entry the column would report.
    pub n: usize,
}

/// Agreement metric of column `k`, or `None` when it has no valid entry.
pub fn column_agreement(tableau: &Tableau, k: usize) -> Option<ColumnAgreement> {
    let col = tableau.column(k)?;
    let vals: Vec<Option<f64>> = col.entries.iter().map(|e| e.valid_value()).collect();

    let mut best: Option<(f64, usize)> = None;
    // later windows win ties
    let consider = |best: &mut Option<(f64, usize)>, metric: f64, n: usize| {
        if best.map_or(true, |(m, _)| metric <= m) {
            *best = Some((metric, n));
        }
    };

    for n in 0..vals.len().saturating_sub(2) {
        if let (Some(a), Some(b), Some(c)) = (vals[n], vals[n + 1], vals[n + 2]) {
            consider(&mut best, (b - a).abs().max((c - b).abs()), n + 2);
        }
    }
    if best.is_none() {
        for n in 0..vals.len().saturating_sub(1) {
            if let (Some(a), Some(b)) = (vals[n], vals[n + 1]) {
                consider(&mut best, (b - a).abs(), n + 1);
            }
        }
    }
    if best.is_none() {
        for (n, v) in vals.iter().enumerate() {
            let Some(v) = v else { continue };
            if let Some(p) = tableau.parent(k, n).and_then(|(pk, pn)| tableau.value(pk, pn)) {
                consider(&mut best, (v - p).abs(), n);
            }
        }
    }
    best.map(|(metric, n)| ColumnAgreement { k, metric, n })
}

/// Scans reportable columns with the halting rule. Returns the scanned
/// stages and the index (into them) of the selected one.
pub fn scan_stages(tableau: &Tableau) -> (Vec<ColumnAgreement>, Option<usize>) {
    let mut stages = Vec::new();
    let mut chosen: Option<usize> = None;
    for k in tableau.reportable_orders() {
        let Some(stage) = column_agreement(tableau, k) else { break };
        stages.push(stage);
        if let Some(i) = chosen {
            if stage.metric > stages[i].metric {
                break;
            }
        }
        chosen = Some(stages.len() - 1);
    }
    (stages, chosen)
}

pub fn select_best(tableau: &Tableau) -> EstimateReport {
    let (stages, chosen) = scan_stages(tableau);
    let stage_deltas = stages.iter().map(|s| s.metric).collect();
    let valid_fraction = tableau.valid_fraction();
    match chosen {
        Some(i) => {
            let s = stages[i];
            EstimateReport {
                estimate: tableau.value(s.k, s.n).unwrap_or(f64::NAN),
                order_k: s.k,
                start_n: s.n,
                stage_deltas,
                valid_fraction,
                degraded: false,
            }
        }
        None => {
            let input = &tableau.columns()[0].entries;
            let n = input.len() - 1;
            EstimateReport {
                estimate: input[n].value,
                order_k: 0,
                start_n: n,
                stage_deltas,
                valid_fraction,
                degraded: true,
            }
        }
    }
}
