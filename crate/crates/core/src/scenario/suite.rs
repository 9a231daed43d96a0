use rayon::prelude::*;
use serde::Serialize;

use super::config::{ConfigError, Scenario};
use super::run::{run_scenario, Report};

/// Scenario files shipped with the crate, in suite order.
pub const BUNDLED: &[(&str, &str)] = &[
    ("z4.toml", include_str!("../../scenarios/z4.toml")),
    ("cstar.toml", include_str!("../../scenarios/cstar.toml")),
    ("contraction_case1.toml", include_str!("../../scenarios/contraction_case1.toml")),
    ("contraction_case2.toml", include_str!("../../scenarios/contraction_case2.toml")),
    ("contraction_case3.toml", include_str!("../../scenarios/contraction_case3.toml")),
    ("pfaffian.toml", include_str!("../../scenarios/pfaffian.toml")),
    ("sym2_vector.toml", include_str!("../../scenarios/sym2_vector.toml")),
    ("adjoint_sl2.toml", include_str!("../../scenarios/adjoint_sl2.toml")),
    ("adjoint_sl3.toml", include_str!("../../scenarios/adjoint_sl3.toml")),
    ("watkins.toml", include_str!("../../scenarios/watkins.toml")),
    ("noncofree.toml", include_str!("../../scenarios/noncofree.toml")),
];

pub fn bundled_scenarios() -> Result<Vec<Scenario>, ConfigError> {
    BUNDLED.iter().map(|(_, text)| Scenario::from_toml(text)).collect()
}

pub fn bundled_scenario(name: &str) -> Option<Scenario> {
    bundled_scenarios().ok()?.into_iter().find(|s| s.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub reports: Vec<Report>,
    /// Expectations plus failed tasks.
    pub total: usize,
    pub failed: usize,
    pub passed: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// `(scenario, expectation)` names of every failing item.
    pub fn failing_items(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for r in &self.reports {
            for t in r.tasks.iter().filter(|t| t.error.is_some()) {
                out.push((r.scenario.clone(), format!("task {}", t.task.name())));
            }
            for e in r.failures() {
                out.push((r.scenario.clone(), e.name.clone()));
            }
        }
        out
    }
}

/// Runs scenarios concurrently; reports keep the input order.
pub fn run_suite(scenarios: &[Scenario]) -> Result<SuiteReport, ConfigError> {
    let reports = scenarios.par_iter().map(run_scenario).collect::<Result<Vec<_>, _>>()?;
    let mut total = 0;
    let mut failed = 0;
    for r in &reports {
        let task_errors = r.tasks.iter().filter(|t| t.error.is_some()).count();
        total += r.expectations.len() + task_errors;
        failed += r.failures().count() + task_errors;
    }
    Ok(SuiteReport { reports, total, failed, passed: failed == 0 })
}

/// The golden suite over every bundled scenario.
pub fn verify_paper() -> Result<SuiteReport, ConfigError> {
    run_suite(&bundled_scenarios()?)
}

/// A copy with one expected dimension off by one (`g0_dim`, else `h0_dim`).
/// Returns the altered expectation's name.
pub fn perturb_dimension(scenario: &Scenario) -> Option<(Scenario, &'static str)> {
    let mut s = scenario.clone();
    if let Some(d) = s.expect.g0_dim.as_mut() {
        *d += 1;
        return Some((s, "g0_dim"));
    }
    if let Some(d) = s.expect.h0_dim.as_mut() {
        *d += 1;
        return Some((s, "h0_dim"));
    }
    None
}
