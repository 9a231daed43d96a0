use std::fmt::Write;

use super::run::{Report, TaskOutput, VerdictOutput};
use super::suite::SuiteReport;

fn matrix_line(rows: &[Vec<String>]) -> String {
    let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn verdict(out: &mut String, label: &str, v: &VerdictOutput, verbose: bool) {
    let _ = writeln!(
        out,
        "  {label}: {} (radical {}, nilpotent part {}, center {}, derived series {:?})",
        v.verdict,
        v.radical_dim,
        v.nilpotent_part_dim.map_or("?".to_string(), |d| d.to_string()),
        v.center_dim,
        v.derived_series
    );
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "    witness {}", matrix_line(w));
    }
    if let Some(r) = &v.reason {
        let _ = writeln!(out, "    reason: {r}");
    }
    if verbose {
        for b in &v.radical_basis {
            let _ = writeln!(out, "    radical {}", matrix_line(b));
        }
    }
}

/// Human-readable rendering of a scenario report.
pub fn render_report(report: &Report, verbose: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario {}", report.scenario);
    if !report.description.is_empty() {
        let _ = writeln!(out, "  {}", report.description);
    }
    let _ = writeln!(
        out,
        "variables {} | degree bound {} | headroom {}",
        report.variables.join(" "),
        report.degree_bound,
        report.headroom
    );
    for t in &report.tasks {
        let _ = writeln!(out, "\n[{}] {}", t.task.name(), t.status);
        if let Some(e) = &t.error {
            let _ = writeln!(out, "  error: {e}");
        }
        let Some(result) = &t.result else { continue };
        match result {
            TaskOutput::Invariants(i) => {
                let _ = writeln!(out, "  generators ({}): {}", i.source, i.generators.join(", "));
                let _ = writeln!(out, "  degrees {:?}", i.degrees);
                if let Some(c) = i.generation_complete {
                    let _ = writeln!(out, "  generation complete: {c}");
                }
                if let Some(c) = i.invariant {
                    let _ = writeln!(out, "  invariant under the action: {c}");
                }
            }
            TaskOutput::Nullcone(n) => {
                for p in &n.pieces {
                    let _ = writeln!(out, "  degree {}: ideal {}, quotient {}", p.degree, p.ideal_dim, p.quotient_dim);
                }
                for m in &n.members {
                    let _ = writeln!(out, "  {}: {}", m.polynomial, m.outcome);
                    if verbose {
                        if let Some(c) = &m.certificate {
                            let _ = writeln!(out, "    certificate [{}]", c.join(", "));
                        }
                    }
                }
            }
            TaskOutput::Stabilizer(s) => {
                for (label, a) in [("g0", &s.g0), ("h0", &s.h0)] {
                    let _ = writeln!(
                        out,
                        "  {label}: dim {} (closed {}, verified {}, {} equations in {} unknowns, rank {})",
                        a.dimension, a.closed, a.verified, a.equations, a.unknowns, a.rank
                    );
                    if verbose {
                        for b in &a.basis {
                            let _ = writeln!(out, "    {}", matrix_line(b));
                        }
                    }
                }
                let _ = writeln!(out, "  g0 inside h0: {}, identity in h0: {}", s.g0_in_h0, s.identity_in_h0);
                if let Some(c) = s.commutant {
                    let _ = writeln!(out, "  h0 = g0 + commutant: {c}");
                }
            }
            TaskOutput::Reductivity(r) => {
                verdict(&mut out, "g0", &r.g0, verbose);
                verdict(&mut out, "h0", &r.h0, verbose);
            }
            TaskOutput::Fiber(f) => {
                let _ = writeln!(out, "  fiber ideal ({}) at headroom {}", f.elements.join(", "), f.headroom);
                let r = &f.regular;
                match r.witness_degree {
                    None => {
                        let _ = writeln!(out, "  regular sequence up to degree {}", r.bound);
                    }
                    Some(d) => {
                        let _ = writeln!(
                            out,
                            "  not regular: degree {d} quotient has dim {} instead of {}",
                            r.actual_dim.unwrap_or_default(),
                            r.expected_dim.unwrap_or_default()
                        );
                    }
                }
                let c = &f.comparison;
                match (&c.degree, &c.form) {
                    (Some(d), Some(form)) => {
                        let _ = writeln!(out, "  leading forms exceed the null cone ideal: degree {d}, form {form}");
                    }
                    _ => {
                        let _ = writeln!(out, "  leading forms equal the null cone ideal up to degree {}", c.bound);
                    }
                }
                for m in &f.members {
                    let _ = writeln!(out, "  {}: {}", m.polynomial, m.outcome);
                    if verbose {
                        if let Some(c) = &m.certificate {
                            let _ = writeln!(out, "    certificate [{}]", c.join(", "));
                        }
                    }
                }
                if let Some(j) = &f.jacobian {
                    let _ = writeln!(out, "  jacobian rank {} at ({}), on fiber {}", j.rank, j.point.join(", "), j.on_fiber);
                }
                if let Some(k) = &f.koszul {
                    match k.degree {
                        Some(d) => {
                            let _ = writeln!(out, "  koszul reduction: {} at degree {d}", k.outcome);
                        }
                        None => {
                            let _ = writeln!(out, "  koszul reduction: {}", k.outcome);
                        }
                    }
                }
                if let Some(a) = &f.affine {
                    let _ = writeln!(
                        out,
                        "  affine stabilizer: dim {} (vanishing {}, effective {}), translation rank {} (effective {}), linear {}, stable {}",
                        a.dimension,
                        a.vanishing_dimension,
                        a.effective_dimension,
                        a.translation_rank,
                        a.effective_translation_rank,
                        a.linear_dimension,
                        a.stable
                    );
                    if verbose {
                        for field in &a.fields {
                            let _ = writeln!(
                                out,
                                "    {} + ({})",
                                matrix_line(&field.linear),
                                field.translation.join(", ")
                            );
                        }
                    }
                }
            }
            TaskOutput::CheckMap(m) => {
                for map in &m.maps {
                    let _ = write!(out, "  {}: {}", map.name, map.outcome);
                    if let (Some(g), Some(img)) = (map.generator, &map.image) {
                        let _ = write!(out, " (generator {g} maps to {img})");
                    }
                    out.push('\n');
                }
            }
        }
    }
    if !report.expectations.is_empty() {
        let _ = writeln!(out, "\nexpectations");
        for e in &report.expectations {
            let mark = if e.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "  {mark} {} {}: expected {}, actual {}", e.task.name(), e.name, e.expected, e.actual);
        }
    }
    let _ = writeln!(out, "\n{}", if report.passed { "passed" } else { "FAILED" });
    out
}

/// One line per expectation, then a summary.
pub fn render_suite(suite: &SuiteReport) -> String {
    let mut out = String::new();
    for r in &suite.reports {
        for t in r.tasks.iter().filter(|t| t.error.is_some()) {
            let _ = writeln!(out, "FAIL {}/{}: {}", r.scenario, t.task.name(), t.error.as_deref().unwrap_or_default());
        }
        for e in &r.expectations {
            let mark = if e.pass { "PASS" } else { "FAIL" };
            let _ = write!(out, "{mark} {}/{} {}", r.scenario, e.task.name(), e.name);
            if e.pass {
                let _ = writeln!(out, " = {}", e.actual);
            } else {
                let _ = writeln!(out, ": expected {}, actual {}", e.expected, e.actual);
            }
        }
    }
    let _ = writeln!(out, "{} of {} items passed", suite.total - suite.failed, suite.total);
    out
}
