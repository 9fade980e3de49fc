use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Parser, Subcommand};
use nakayama_cli::table::tau_table;
use nakayama_cli::{parse_algebra, run_survey, FailWith, Failure, FailureKind, SurveyConfig};
use nakayama_core::coxeter::{coefficients_json, format_polynomial};
use nakayama_core::obstructions::coarse_fine::coarse_fine_sequences;
use nakayama_core::obstructions::coarse_fine_test;
use nakayama_core::obstructions::derivation::hs_derivation;
use nakayama_core::obstructions::tau_orbit::{tau_orbit_test, OrbitConfig, TauOrbitOutcome};
use nakayama_core::{apply_chain, battery, coxeter, enumerate_algebras, parse_chain, BatteryConfig};
use serde_json::json;

/// Linear Nakayama algebras: enumeration, derived-equivalence moves and
/// non-piecewise-hereditary certificates.
///
/// Algebras are given as `n=9;rels=1-4,3-6`, `kupisch=3,3,2,1`,
/// `radpow=11,5` or `@file.json`.
#[derive(Parser)]
#[command(name = "nakayama", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every algebra on N vertices in Kupisch order.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Cartan and Coxeter matrices and the Coxeter polynomial.
    Coxeter {
        #[arg(long)]
        algebra: String,
    },
    /// Apply a comma-separated chain of moves, e.g. `L:8,R:2,strip2,ins:0:rel-to=5,rm:7`.
    Mutate {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        chain: String,
    },
    /// Iterate τ on the stalk P_I looking for τ^k P_I ≅ P_I[m], m >= 1.
    TauOrbit {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        start: usize,
        #[arg(long, default_value_t = 200)]
        max_steps: usize,
        /// Print every iterate instead of the outcome.
        #[arg(long)]
        table: bool,
    },
    /// Run every test and print the verdict with its certificates.
    Obstruct {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 200)]
        max_steps: usize,
    },
    /// Coarse and fine sequences and whether they certify the algebra.
    CoarseFine {
        #[arg(long)]
        algebra: String,
    },
    /// Derivation certificate for kA_N / rad^R.
    Hs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Run the battery over all algebras on N vertices, one JSON line each.
    /// An existing output file is resumed.
    Survey {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads [default: available parallelism].
        #[arg(long, env = "NAKAYAMA_JOBS")]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 200)]
        max_steps: usize,
        /// Store per-algebra wall time in each record.
        #[arg(long)]
        timings: bool,
    },
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).fail_as(FailureKind::Io)?;
    println!("{text}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Enumerate { n, count_only } => {
            if n == 0 {
                return Err(anyhow!("n must be at least 1")).fail_as(FailureKind::Malformed);
            }
            if count_only {
                println!("{}", enumerate_algebras(n).count());
            } else {
                for a in enumerate_algebras(n) {
                    println!("{a}");
                }
            }
        }
        Command::Coxeter { algebra } => {
            let a = parse_algebra(&algebra)?;
            let data = coxeter(&a);
            print_json(&json!({
                "algebra": a.to_string(),
                "kupisch": a.to_kupisch(),
                "polynomial": format_polynomial(&data.polynomial),
                "coefficients": coefficients_json(&data.polynomial),
                "cartan": data.cartan,
                "coxeter_matrix": data.coxeter_matrix,
            }))?;
        }
        Command::Mutate { algebra, chain } => {
            let a = parse_algebra(&algebra)?;
            let moves = parse_chain(&chain).fail_as(FailureKind::Malformed)?;
            println!("{a}");
            match apply_chain(&a, &moves) {
                Ok(records) => {
                    for r in records {
                        println!("{} -> {}", r.kind, r.output);
                    }
                }
                Err((k, e)) => {
                    return Err(anyhow!("move {} ({}): {e}", k + 1, moves[k]))
                        .fail_as(FailureKind::Precondition)
                }
            }
        }
        Command::TauOrbit {
            algebra,
            start,
            max_steps,
            table,
        } => {
            let a = parse_algebra(&algebra)?;
            a.check_vertex(start).fail_as(FailureKind::Malformed)?;
            if table {
                for row in tau_table(&a, start, max_steps).fail_as(FailureKind::Io)? {
                    println!("{row}");
                }
            } else {
                let cfg = OrbitConfig {
                    max_steps,
                    ..OrbitConfig::default()
                };
                match tau_orbit_test(&a, &[start], &cfg) {
                    TauOrbitOutcome::Periodic(c) => print_json(&c)?,
                    TauOrbitOutcome::Inconclusive(logs) => print_json(&logs)?,
                }
            }
        }
        Command::Obstruct { algebra, max_steps } => {
            let a = parse_algebra(&algebra)?;
            let cfg = BatteryConfig {
                max_steps,
                ..BatteryConfig::default()
            };
            print_json(&battery(&a, &cfg))?;
        }
        Command::CoarseFine { algebra } => {
            let a = parse_algebra(&algebra)?;
            let sequences = coarse_fine_sequences(&a);
            let certificate = coarse_fine_test(&a).ok();
            print_json(&json!({ "sequences": sequences, "certificate": certificate }))?;
        }
        Command::Hs { n, r } => {
            let c = hs_derivation(n, r).fail_as(FailureKind::OutOfTable)?;
            print_json(&c)?;
        }
        Command::Survey {
            n,
            out,
            jobs,
            max_steps,
            timings,
        } => {
            if n < 2 {
                return Err(anyhow!("surveys need n >= 2")).fail_as(FailureKind::Malformed);
            }
            let jobs = jobs
                .or_else(|| std::thread::available_parallelism().ok().map(usize::from))
                .unwrap_or(1);
            let cfg = SurveyConfig {
                n,
                jobs,
                battery: BatteryConfig {
                    max_steps,
                    ..BatteryConfig::default()
                },
                timings,
            };
            let summary = run_survey(&cfg, &out).fail_as(FailureKind::Io)?;
            println!("records: {} ({} resumed)", summary.records, summary.resumed);
            println!("flagged: {}", summary.flagged.len());
            for a in &summary.flagged {
                println!("  {a}");
            }
            println!("sha256: {}", summary.digest);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.kind.exit_code())
        }
    }
}
