//! Shared data types: sequences, configuration, tableaus, and best-estimate
//! selection.

pub mod config;
pub mod select;
pub mod sequence;
pub mod tableau;

pub use config::{AcceleratorConfig, Direction, InterpolationPoints, Method, DEFAULT_BREAKDOWN_TOL};
pub use select::{column_agreement, scan_stages, select_best, ColumnAgreement, EstimateReport};
pub use sequence::{parse_decimal, RealSequence, Source};
pub use tableau::{guard_denominator, Column, Entry, Guard, Tableau};
