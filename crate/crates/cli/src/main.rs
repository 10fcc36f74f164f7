use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use connloc_cli::dispatch::{deform_report, enum_budget, fiber, ob2_symbolic, orbits, parse_direction, point_count, psi_at, relation};
use connloc_cli::scenario::{rational_arg, rationals_arg};
use connloc_cli::{exit, run, run_all, summary, CliError, Kind, Scenario};
use serde_json::Value;

/// Exact computations on moduli of connections on curves.
#[derive(Parser)]
#[command(name = "connloc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file and compare against its expected values.
    Run { file: PathBuf },
    /// Run every `*.json` scenario in a directory, in file-name order.
    RunAll { dir: PathBuf },
    /// Obstruction map, Segre points, point counts and the cone relation.
    Kuranishi {
        #[command(subcommand)]
        op: KuranishiOp,
    },
    /// Invariants, closed orbits and fibers of the local quotient.
    Git {
        #[command(subcommand)]
        op: GitOp,
    },
    /// Cocycle congruence for the first-order deformation up to a given order.
    Deform {
        #[arg(long)]
        order: u32,
        #[arg(long)]
        ztrunc: i32,
        #[arg(long, allow_hyphen_values = true)]
        g2: String,
        #[arg(long, allow_hyphen_values = true)]
        g3: String,
    },
    /// Dimension report from a cohomology scenario.
    Cohomology {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Stability verdicts from a stability scenario.
    Stability {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Differential operator algebra.
    Diffop {
        #[command(subcommand)]
        op: DiffopOp,
    },
}

#[derive(Subcommand)]
enum KuranishiOp {
    /// Commutator of the symbolic pair against the quadrics.
    Ob2,
    /// Quadrics at the point (λ0·ξ, λ1·ξ).
    Segre {
        /// Three rationals, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        /// Two rationals, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Points of the zero locus over F_p.
    Count {
        #[arg(long)]
        prime: u64,
    },
    /// z² − z1·z2 against the quadrics.
    Relation,
}

#[derive(Subcommand)]
enum GitOp {
    /// (z, z1, z2) at a pair given by its eight coordinates.
    Psi {
        /// x0,x,x12,x21,y0,y,y12,y21 as comma separated rationals.
        #[arg(allow_hyphen_values = true)]
        values: String,
    },
    /// Closed orbits over (z1, z2).
    Orbits {
        #[arg(long, allow_hyphen_values = true)]
        z1: String,
        #[arg(long, allow_hyphen_values = true)]
        z2: String,
    },
    /// Fiber over the boundary of the cone, restricting along z2 or z1.
    Fiber {
        #[arg(long, default_value = "z2")]
        along: String,
    },
}

#[derive(Subcommand)]
enum DiffopOp {
    /// Normal form of an expression in z and d.
    Normalize { expr: String },
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values always serialize"));
}

fn fail(e: &CliError) -> ExitCode {
    print(&e.to_json());
    eprintln!("error: {e}");
    ExitCode::from(exit::INPUT_ERROR as u8)
}

fn scenario_of(path: &Path, kind: Kind) -> Result<Scenario, CliError> {
    let s = Scenario::load(path)?;
    if s.kind != kind {
        return Err(CliError::Invalid(format!(
            "expected a {} scenario, found {}",
            kind.as_str(),
            s.kind.as_str()
        )));
    }
    Ok(s)
}

fn run_one(s: Scenario) -> Result<ExitCode, CliError> {
    let start = std::time::Instant::now();
    let report = run(&s)?;
    print(&serde_json::to_value(&report).map_err(|e| CliError::Internal(e.to_string()))?);
    eprint!("{}", summary(&report, Some(start.elapsed())));
    Ok(ExitCode::from(if report.pass { exit::PASS } else { exit::MISMATCH } as u8))
}

fn execute(cli: Cli) -> Result<ExitCode, CliError> {
    let value = match cli.command {
        Command::Run { file } => return run_one(Scenario::load(&file)?),
        Command::Cohomology { scenario } => return run_one(scenario_of(&scenario, Kind::Cohomology)?),
        Command::Stability { scenario } => return run_one(scenario_of(&scenario, Kind::Stability)?),
        Command::RunAll { dir } => {
            let (agg, timings) = run_all(&dir)?;
            if agg.total == 0 {
                eprintln!("warning: no scenario files in {}", dir.display());
            }
            print(&serde_json::to_value(&agg).map_err(|e| CliError::Internal(e.to_string()))?);
            for entry in &agg.entries {
                match entry {
                    connloc_cli::Entry::Report { file, report } => {
                        eprint!("{file}: {}", summary(report, timings.get(file).copied()))
                    }
                    connloc_cli::Entry::Error { file, error } => eprintln!("{file}: ERROR {}", error["message"]),
                }
            }
            eprintln!("{} of {} passed, {} errors", agg.passed, agg.total, agg.errors);
            let code = if agg.pass {
                exit::PASS
            } else if agg.failed > 0 {
                exit::MISMATCH
            } else {
                exit::INPUT_ERROR
            };
            return Ok(ExitCode::from(code as u8));
        }
        Command::Kuranishi { op } => match op {
            KuranishiOp::Ob2 => ob2_symbolic(),
            KuranishiOp::Segre { xi, lambda } => {
                let xi = rationals_arg::<3>(&xi, "xi")?;
                let lam = rationals_arg::<2>(&lambda, "lambda")?;
                let s = connloc_core::kuranishi::segre_check(&xi, &lam);
                serde_json::to_value(s).map_err(|e| CliError::Internal(e.to_string()))?
            }
            KuranishiOp::Count { prime } => point_count(prime, enum_budget()?)?,
            KuranishiOp::Relation => relation()?,
        },
        Command::Git { op } => match op {
            GitOp::Psi { values } => psi_at(&rationals_arg::<8>(&values, "values")?),
            GitOp::Orbits { z1, z2 } => orbits(&rational_arg(&z1, "z1")?, &rational_arg(&z2, "z2")?),
            GitOp::Fiber { along } => fiber(parse_direction(&along)?)?,
        },
        Command::Deform { order, ztrunc, g2, g3 } => {
            deform_report(order, ztrunc, &rational_arg(&g2, "g2")?, &rational_arg(&g3, "g3")?)?
        }
        Command::Diffop { op: DiffopOp::Normalize { expr } } => {
            Value::String(connloc_core::diffop::parse_and_normalize(&expr)?.to_string())
        }
    };
    print(&value);
    Ok(ExitCode::from(exit::PASS as u8))
}

fn main() -> ExitCode {
    execute(Cli::parse()).unwrap_or_else(|e| fail(&e))
}
