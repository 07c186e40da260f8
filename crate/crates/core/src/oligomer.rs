//! Infinite-chain extrapolation of oligomer total energies.
//!
//! From total energies `E_N` two intensive sequences are formed: average
//! energies `E_N/N` and differences `E_{N+1} − E_N`. The differences cancel
//! end-group effects and carry the primary estimate; the averages are
//! extrapolated as a cross-check.

use std::io::Read;

use rust_decimal::prelude::ToPrimitive;
use rust_decimal::Decimal;

use crate::core_model::{
    parse_decimal, select_best, AcceleratorConfig, EstimateReport, Method, RealSequence, Source,
    Tableau,
};
use crate::diagnostics::{classify, ConvergenceClass, ConvergenceKind};
use crate::error::{Error, Result};
use crate::linear_accel::{epsilon_staged, EpsilonStage};
use crate::log_accel::bdg;

const TABLE1_CSV: &str = include_str!("../fixtures/table1.csv");

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyTable {
    rows: Vec<(u32, Decimal)>,
    label: String,
}

impl EnergyTable {
    /// Rows must start at `N = 1` and increase by one.
    pub fn new(rows: Vec<(u32, Decimal)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidSequence("energy table is empty".into()));
        }
        for (i, (n, _)) in rows.iter().enumerate() {
            if *n as usize != i + 1 {
                return Err(Error::InvalidSequence(format!(
                    "row {} has N = {n}, expected {} (N must run 1, 2, 3, …)",
                    i + 1,
                    i + 1
                )));
            }
        }
        Ok(Self { rows, label: String::new() })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Reads `N,E_total` CSV; lines starting with `#` are comments.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = rdr.headers().map_err(csv_error)?.clone();
        if headers.len() != 2 || &headers[0] != "N" || &headers[1] != "E_total" {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "expected header `N,E_total`, got `{}`",
                    headers.iter().collect::<Vec<_>>().join(",")
                ),
            });
        }
        let mut rows = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(csv_error)?;
            let line = rec.position().map_or(0, |p| p.line());
            let field = |i: usize| rec.get(i).unwrap_or("");
            let bad = |what: &str, i: usize| Error::Parse {
                line,
                message: format!("bad {what} {:?}", field(i)),
            };
            let n: u32 = field(0).parse().map_err(|_| bad("N", 0))?;
            let e = parse_decimal(field(1)).ok_or_else(|| bad("energy", 1))?;
            rows.push((n, e));
        }
        Self::new(rows)
    }

    pub fn rows(&self) -> &[(u32, Decimal)] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Coarsest decimal quantum among the energies.
    fn resolution(&self) -> Option<f64> {
        self.rows
            .iter()
            .map(|(_, e)| e.scale())
            .filter(|&s| s > 0)
            .min()
            .map(|s| 10f64.powi(-(s as i32)))
    }
}

pub(crate) fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.kind() {
        csv::ErrorKind::Io(_) => Error::Io(e.to_string()),
        _ => Error::Parse { line, message: e.to_string() },
    }
}

/// The bundled trans-polyacetylene total energies, `N = 1..16`.
pub fn table1() -> EnergyTable {
    EnergyTable::from_csv(TABLE1_CSV.as_bytes())
        .expect("bundled fixture is valid")
        .with_label("table1")
}

/// `s_n = E_{n+1}/(n+1)`.
///
/// Centered on `A`, the last average rounded to 12 decimals: the offsets
/// `(E_N − N·A)/N` are formed in exact decimal arithmetic.
pub fn average_energies(t: &EnergyTable) -> Result<RealSequence> {
    let (n_last, e_last) = *t.rows.last().expect("table is non-empty");
    let anchor = (e_last / Decimal::from(n_last)).round_dp(12);
    let mut values = Vec::with_capacity(t.len());
    let mut offsets = Vec::with_capacity(t.len());
    for &(n, e) in &t.rows {
        let nd = Decimal::from(n);
        let off = (e - nd * anchor) / nd;
        values.push(to_f64(e / nd)?);
        offsets.push(to_f64(off)?);
    }
    Ok(RealSequence::from_parts(values, to_f64(anchor)?, offsets, t.resolution())?
        .with_label("E_av")
        .with_source(Source::Fixture))
}

/// `s_n = E_{n+2} − E_{n+1}`, computed exactly.
pub fn energy_differences(t: &EnergyTable) -> Result<RealSequence> {
    if t.len() < 2 {
        return Err(Error::InsufficientData("energy differences need two rows".into()));
    }
    let d: Vec<Decimal> = t.rows.windows(2).map(|w| w[1].1 - w[0].1).collect();
    Ok(RealSequence::from_decimals(&d)?.with_label("E_dif").with_source(Source::Fixture))
}

fn to_f64(d: Decimal) -> Result<f64> {
    d.to_f64().ok_or_else(|| Error::InvalidSequence(format!("{d} does not fit a double")))
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChainLimitMode {
    /// Classify each sequence and pick a method from the class.
    Auto,
    Fixed(AcceleratorConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceLimit {
    pub sequence: RealSequence,
    pub classification: ConvergenceClass,
    pub method: Method,
    pub tableau: Tableau,
    pub report: EstimateReport,
    /// Stages of the staged epsilon run, when that method was used.
    pub stages: Option<Vec<EpsilonStage>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainLimitReport {
    pub average: SequenceLimit,
    pub difference: SequenceLimit,
}

impl ChainLimitReport {
    /// The infinite-chain estimate, taken from the energy differences.
    pub fn estimate(&self) -> f64 {
        self.difference.report.estimate
    }
}

const MIN_AUTO_ROWS: usize = 5;
const MIN_FIXED_ROWS: usize = 4;

pub fn chain_limit(t: &EnergyTable, mode: &ChainLimitMode) -> Result<ChainLimitReport> {
    let min = match mode {
        ChainLimitMode::Auto => MIN_AUTO_ROWS,
        ChainLimitMode::Fixed(_) => MIN_FIXED_ROWS,
    };
    if t.len() < min {
        return Err(Error::InsufficientData(format!(
            "chain limit needs at least {min} rows, got {}",
            t.len()
        )));
    }
    Ok(ChainLimitReport {
        average: extrapolate(average_energies(t)?, mode)?,
        difference: extrapolate(energy_differences(t)?, mode)?,
    })
}

fn extrapolate(s: RealSequence, mode: &ChainLimitMode) -> Result<SequenceLimit> {
    let classification = classify(&s);
    let (method, tableau, report, stages) = match mode {
        ChainLimitMode::Fixed(cfg) if cfg.method == Method::Epsilon => staged(&s, cfg)?,
        ChainLimitMode::Fixed(cfg) => {
            let r = crate::transform(&s, cfg)?;
            (cfg.method, r.tableau, r.report, None)
        }
        ChainLimitMode::Auto => match classification.kind {
            ConvergenceKind::Logarithmic { alpha } => {
                let cfg = AcceleratorConfig::new(Method::Bdg).with_alpha(alpha);
                let tableau = bdg(&s, alpha, &cfg)?;
                let report = select_best(&tableau);
                (Method::Bdg, tableau, report, None)
            }
            _ => staged(&s, &AcceleratorConfig::default())?,
        },
    };
    Ok(SequenceLimit { sequence: s, classification, method, tableau, report, stages })
}

type Extrapolated = (Method, Tableau, EstimateReport, Option<Vec<EpsilonStage>>);

fn staged(s: &RealSequence, cfg: &AcceleratorConfig) -> Result<Extrapolated> {
    let st = epsilon_staged(s, cfg)?;
    Ok((Method::Epsilon, st.tableau, st.report, Some(st.stages)))
}
