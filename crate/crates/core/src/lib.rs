//! Sequence transformations for convergence acceleration.
//!
//! Linear accelerators (Aitken's Δ², Wynn's epsilon), logarithmic ones
//! (Richardson, rho and their variants), convergence diagnostics, an
//! Euler–Maclaurin treatment of the zeta series and an oligomer-to-polymer
//! extrapolation workflow, plus the `seqaccel` command-line tool.

pub mod cli;
pub mod core_model;
pub mod diagnostics;
pub mod error;
pub mod euler_maclaurin;
pub mod linear_accel;
pub mod log_accel;
pub mod oligomer;

pub use core_model::{
    select_best, AcceleratorConfig, EstimateReport, InterpolationPoints, Method, RealSequence,
    Tableau,
};
pub use error::{Error, Result};
pub use linear_accel::LinearMethodResult;

use log_accel::RhoPoints;

/// Runs the configured method and selects the best estimate.
pub fn transform(s: &RealSequence, cfg: &AcceleratorConfig) -> Result<LinearMethodResult> {
    cfg.validate()?;
    let tableau = match cfg.method {
        Method::AitkenIterated => return linear_accel::aitken_iterated(s, cfg),
        Method::Epsilon => return linear_accel::wynn_epsilon(s, cfg),
        Method::RichardsonGeneral => {
            log_accel::richardson_general(s, &cfg.points_or_default(), cfg)?
        }
        Method::RichardsonStandard => log_accel::richardson_standard(s, cfg.beta)?,
        Method::RhoGeneral => log_accel::rho_general(s, &cfg.points_or_default(), cfg)?,
        Method::RhoStandard => log_accel::rho_standard(s, cfg)?,
        Method::RhoIteratedGeneral => {
            log_accel::rho_iterated(s, &RhoPoints::General(cfg.points_or_default()), cfg)?
        }
        Method::RhoIteratedStandard => log_accel::rho_iterated(s, &RhoPoints::Standard, cfg)?,
        Method::Osada => log_accel::osada(s, cfg.alpha.unwrap_or(f64::NAN), cfg)?,
        Method::Bdg => log_accel::bdg(s, cfg.alpha.unwrap_or(f64::NAN), cfg)?,
    };
    let report = select_best(&tableau);
    Ok(LinearMethodResult { tableau, report })
}
