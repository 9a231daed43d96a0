//! Scenario files and reports.

mod config;
mod run;
mod suite;
mod text;

pub use config::*;
pub use run::*;
pub use suite::{bundled_scenario, bundled_scenarios, perturb_dimension, run_suite, verify_paper, SuiteReport, BUNDLED};
pub use text::{render_report, render_suite};
