use nullcone::scenario::{
    bundled_scenario, bundled_scenarios, perturb_dimension, run_scenario, run_suite, verify_paper, ConfigError,
    Scenario, Task, TaskOutput, BUNDLED,
};

#[test]
fn bundled_suite_passes_every_item() {
    let suite = verify_paper().unwrap();
    assert!(suite.passed, "failing: {:?}", suite.failing_items());
    assert_eq!(suite.failed, 0);
    assert_eq!(suite.reports.len(), BUNDLED.len());
    assert!(suite.total >= 90);
}

#[test]
fn suite_output_is_byte_identical_across_runs() {
    assert_eq!(verify_paper().unwrap().to_json(), verify_paper().unwrap().to_json());
}

#[test]
fn perturbing_one_dimension_fails_exactly_that_item() {
    let scenarios = bundled_scenarios().unwrap();
    let mut checked = 0;
    for (k, s) in scenarios.iter().enumerate() {
        let Some((bad, item)) = perturb_dimension(s) else { continue };
        let mut all = scenarios.clone();
        all[k] = bad;
        let suite = run_suite(&all).unwrap();
        assert!(!suite.passed);
        assert_eq!(suite.failing_items(), vec![(s.name.clone(), item.to_string())]);
        let line = suite.reports[k].expectations.iter().find(|e| e.name == item).unwrap();
        assert_ne!(line.expected, line.actual);
        checked += 1;
    }
    assert!(checked >= 8);
}

#[test]
fn z4_report_carries_generators_dimensions_and_verdict() {
    let report = run_scenario(&bundled_scenario("z4").unwrap()).unwrap();
    assert!(report.passed);
    match report.output(Task::Invariants).unwrap() {
        TaskOutput::Invariants(i) => assert_eq!(i.generators, ["x^2", "x*y^2", "y^4"]),
        other => panic!("{other:?}"),
    }
    match report.output(Task::Stabilizer).unwrap() {
        TaskOutput::Stabilizer(s) => {
            assert_eq!((s.g0.dimension, s.h0.dimension), (0, 3));
            assert_eq!(s.h0.basis.len(), 3);
        }
        other => panic!("{other:?}"),
    }
    match report.output(Task::Reductivity).unwrap() {
        TaskOutput::Reductivity(r) => {
            assert_eq!(r.h0.verdict, "non-reductive");
            assert_eq!(r.h0.witness.as_ref().unwrap(), &vec![vec!["0", "0"], vec!["1", "0"]]);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn adjoint_sl2_report_covers_fiber_and_commutant() {
    let report = run_scenario(&bundled_scenario("adjoint_sl2").unwrap()).unwrap();
    assert!(report.passed);
    let Some(TaskOutput::Fiber(f)) = report.output(Task::Fiber) else { panic!() };
    assert_eq!((f.comparison.outcome.as_str(), f.comparison.bound, f.comparison.headroom), ("equal", 6, 0));
    let a = f.affine.as_ref().unwrap();
    assert_eq!((a.dimension, a.translation_rank), (3, 0));
}

#[test]
fn numeric_claims_are_rederivable_from_serialized_bases() {
    use nullcone::liealg::is_closed;
    use nullcone::{Matrix, MatrixSpace};
    let report = run_scenario(&bundled_scenario("cstar").unwrap()).unwrap();
    let Some(TaskOutput::Stabilizer(s)) = report.output(Task::Stabilizer) else { panic!() };
    let mats: Vec<Matrix> = s.h0.basis.iter().map(|rows| Matrix::parse_rows(rows).unwrap()).collect();
    let space = MatrixSpace::span(3, &mats);
    assert_eq!(space.dim(), s.h0.dimension);
    assert!(is_closed(&space));
}

#[test]
fn tasks_are_reported_in_declared_order() {
    let mut s = bundled_scenario("z4").unwrap();
    s.tasks = vec![Task::Reductivity, Task::Invariants, Task::Reductivity];
    let report = run_scenario(&s).unwrap();
    let order: Vec<Task> = report.tasks.iter().map(|t| t.task).collect();
    assert_eq!(order, [Task::Reductivity, Task::Invariants]);
    assert!(report.expectations.iter().all(|e| e.task != Task::Stabilizer));
}

#[test]
fn failing_task_does_not_abort_siblings() {
    let text = r#"
        name = "broken koszul"
        tasks = ["invariants", "fiber", "check-map"]
        [generators]
        kind = "explicit"
        variables = ["x", "y", "z"]
        polynomials = ["x*y", "x^2*z"]
        [fiber]
        constants = [1, 0]
        affine = false
        [fiber.koszul]
        coefficients = ["1", "0"]
        target_degree = 0
        [[maps]]
        name = "swap"
        permutation = [1, 0, 2]
        expect = "not-preserved"
    "#;
    let report = run_scenario(&Scenario::from_toml(text).unwrap()).unwrap();
    let status: Vec<&str> = report.tasks.iter().map(|t| t.status.as_str()).collect();
    assert_eq!(status, ["ok", "error", "ok"]);
    assert!(report.tasks[1].error.is_some());
    assert!(!report.passed);
    assert!(report.expectations.iter().all(|e| e.pass));
}

fn config_error(text: &str) -> String {
    match Scenario::from_toml(text).and_then(|s| run_scenario(&s).map(|_| ())) {
        Err(e) => e.to_string(),
        Ok(()) => panic!("accepted: {text}"),
    }
}

#[test]
fn malformed_configs_name_the_offending_key() {
    let base = "name = \"t\"\n[generators]\nkind = \"contraction\"\nn = 2\np = 1\nq = 1\n";
    assert!(config_error(&format!("{base}degree = 3\n")).contains("degree"));
    assert!(config_error("name = \"t\"\nheadroom = 2\nbogus = 1\n[generators]\nkind = \"pfaffian_sl4\"\n").contains("bogus"));
    assert!(config_error(&format!("{base}[expect]\nh0_dimension = 3\n")).contains("h0_dimension"));
    assert!(config_error(&format!("{base}[fiber]\nconstants = [1, 2]\n")).contains("fiber.constants"));
    assert!(config_error(&format!("{base}[[members]]\npolynomial = \"x1_1 + 1\"\n")).contains("members"));
    assert!(config_error("name = \"t\"\n[generators]\nkind = \"explicit\"\nvariables = [\"x\"]\npolynomials = [\"y\"]\n")
        .contains("generators.polynomials"));
    let maps = format!("{base}[[maps]]\nname = \"m\"\npermutation = [0, 0, 1, 2]\n");
    assert!(config_error(&maps).contains("maps.m"));
    let preset = format!("{base}[[maps]]\nname = \"t\"\npreset = \"transposition\"\n");
    assert!(config_error(&preset).contains("maps.t"));
}

#[test]
fn syntax_errors_report_line_positions() {
    let err = Scenario::from_toml("name = \"t\"\n[generators\nkind = 1\n").unwrap_err();
    assert!(matches!(err, ConfigError::Toml(_)));
    assert!(err.to_string().contains("line 2"), "{err}");
}
