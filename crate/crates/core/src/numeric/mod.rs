//! Floating-point cross-validation of the symbolic fields: residual
//! sampling, derivative checks, blowup rates, energy growth and grid
//! convergence. All sampling is seeded and reductions use a fixed order, so
//! identical inputs give bit-identical reports.

pub mod blowup;
pub mod domain;
pub mod export;
pub mod fd;
pub mod grid;
pub mod residual;

pub use blowup::{
    blowup_series, default_times, energy_on_ball, fit_line, geometric_times, log_log_rows,
    BlowupSeries,
};
pub use domain::{pairwise_sum, Region, SampleDomain, DEFAULT_R_MIN, TIME_GUARD};
pub use export::{sample_fields, write_csv, CSV_HEADER};
pub use fd::{fd_check, FdEntry, FdReport};
pub use grid::{grid_convergence, ConvergenceEntry, ConvergenceReport};
pub use residual::{bundle_equations, sample_residual, sample_residual_with};
