use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nullcone::scenario::{render_report, render_suite, run_scenario, verify_paper, ConfigError, Scenario, Task};

#[derive(Parser)]
#[command(name = "nullcone", version, about = "Exact null cone, stabilizer and fiber computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generating invariants and their checks.
    Invariants(Common),
    /// Graded pieces of the null cone ideal and membership queries.
    Nullcone(Common),
    /// Lie algebras fixing the invariants and preserving the null cone ideal.
    Stabilizer(Common),
    /// Radicals and reductivity verdicts for both stabilizers.
    Reductivity(Common),
    /// Fiber ideal analysis: regularity, leading forms, certificates, affine stabilizer.
    Fiber(Common),
    /// Checks whether the scenario's maps preserve the ideal.
    CheckMap(Common),
    /// Runs the scenario's own task list.
    Run(Common),
    /// Runs the bundled golden suite.
    VerifyPaper(SuiteArgs),
}

#[derive(Args)]
struct Common {
    /// Scenario file (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replaces the scenario's degree bound
    #[arg(long)]
    degree_bound: Option<usize>,
    /// Replaces the scenario's headroom, including any fiber override
    #[arg(long)]
    headroom: Option<usize>,
    /// Extra tasks to run; repeatable.
    #[arg(long = "task", value_parser = parse_task)]
    tasks: Vec<Task>,
    /// Include bases, certificates and fields in the text output
    #[arg(long)]
    verbose: bool,
}

#[derive(Args)]
struct SuiteArgs {
    /// Write the JSON suite report here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print every full report before the summary
    #[arg(long)]
    verbose: bool,
}

fn parse_task(s: &str) -> Result<Task, String> {
    Task::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Task::ALL.iter().map(|t| t.name()).collect();
        format!("unknown task `{s}` (expected one of {})", names.join(", "))
    })
}

fn write_out(path: &Option<PathBuf>, json: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, json).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => Ok(()),
    }
}

fn scenario(task: Option<Task>, args: &Common) -> Result<Scenario, ConfigError> {
    let mut s = Scenario::from_path(&args.config)?;
    if let Some(d) = args.degree_bound {
        s.degree_bound = d;
    }
    if let Some(h) = args.headroom {
        s.headroom = Some(h);
        if let Some(f) = s.fiber.as_mut() {
            f.headroom = Some(h);
        }
    }
    match task {
        Some(t) => s.tasks = std::iter::once(t).chain(args.tasks.iter().copied()).collect(),
        None if !args.tasks.is_empty() => s.tasks = args.tasks.clone(),
        None => {}
    }
    Ok(s)
}

fn run(task: Option<Task>, args: &Common) -> ExitCode {
    let report = match scenario(task, args).and_then(|s| run_scenario(&s)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", render_report(&report, args.verbose));
    if let Err(e) = write_out(&args.out, &report.to_json()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Invariants(a) => run(Some(Task::Invariants), a),
        Command::Nullcone(a) => run(Some(Task::Nullcone), a),
        Command::Stabilizer(a) => run(Some(Task::Stabilizer), a),
        Command::Reductivity(a) => run(Some(Task::Reductivity), a),
        Command::Fiber(a) => run(Some(Task::Fiber), a),
        Command::CheckMap(a) => run(Some(Task::CheckMap), a),
        Command::Run(a) => run(None, a),
        Command::VerifyPaper(a) => {
            let suite = match verify_paper() {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            if a.verbose {
                for r in &suite.reports {
                    print!("{}", render_report(r, true));
                }
            }
            print!("{}", render_suite(&suite));
            if let Err(e) = write_out(&a.out, &suite.to_json()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if suite.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
