use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use riesz_cli::config::{Entry, RunConfig};
use riesz_cli::{plot, selftest, CliError, EXIT_INVALID, EXIT_OK, EXIT_ROW_FAILURE};

/// Dimension-free Riesz transform experiments.
#[derive(Debug, Parser)]
#[command(name = "riesz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the scans described by a config file and write a CSV.
    Run {
        config: Option<PathBuf>,
        /// Override a config key for every block (repeatable).
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// CSV destination (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Refuse grids with more points than this.
        #[arg(long)]
        mem_cap: Option<usize>,
        /// Store one witness JSON per row here.
        #[arg(long)]
        witness_dir: Option<PathBuf>,
    },
    /// Emit a matplotlib script for the dimscan rows of a CSV.
    Plot {
        csv: PathBuf,
        /// Script destination (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive lower estimates from stored witnesses.
    Verify {
        csv: PathBuf,
        #[arg(long)]
        witness_dir: PathBuf,
    },
    /// Quick invariant checks.
    Selftest {
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn overrides(
    set: &[String],
    seed: Option<u64>,
    jobs: Option<usize>,
    out: &Option<PathBuf>,
    mem_cap: Option<usize>,
    witness_dir: &Option<PathBuf>,
) -> Result<Vec<Entry>, CliError> {
    let mut entries = set
        .iter()
        .map(|s| Entry::parse_override(s))
        .collect::<Result<Vec<_>, _>>()?;
    let mut push = |key: &str, value: String| {
        entries.push(Entry {
            key: key.into(),
            value,
            line: 0,
        })
    };
    if let Some(v) = seed {
        push("seed", v.to_string());
    }
    if let Some(v) = jobs {
        push("jobs", v.to_string());
    }
    if let Some(v) = out {
        push("out", v.display().to_string());
    }
    if let Some(v) = mem_cap {
        push("mem_cap", v.to_string());
    }
    if let Some(v) = witness_dir {
        push("witness_dir", v.display().to_string());
    }
    Ok(entries)
}

fn dispatch(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Run {
            config,
            set,
            seed,
            jobs,
            out,
            mem_cap,
            witness_dir,
        } => {
            let entries = overrides(&set, seed, jobs, &out, mem_cap, &witness_dir)?;
            let config = RunConfig::load(config.as_deref(), &entries)?;
            let report = riesz_cli::run_and_write(&config)?;
            for row in report.rows.iter().filter(|r| !r.status.is_ok()) {
                eprintln!(
                    "{} d={} p={} r={}: {}",
                    row.experiment,
                    row.d.map_or(String::new(), |d| d.to_string()),
                    row.p.map_or(String::new(), riesz_cli::row::format_real),
                    row.r.map_or(String::new(), |r| r.to_string()),
                    row.status
                );
            }
            Ok(report.exit_code())
        }
        Command::Plot { csv, out } => {
            let script = plot::script_from_csv(&csv)?;
            match out {
                Some(path) => std::fs::write(path, script)?,
                None => print!("{script}"),
            }
            Ok(EXIT_OK)
        }
        Command::Verify { csv, witness_dir } => {
            let checks = riesz_cli::verify(&csv, &witness_dir)?;
            let failed = checks.iter().filter(|c| !c.ok).count();
            for c in &checks {
                println!(
                    "{} row {}: {}",
                    if c.ok { "ok  " } else { "FAIL" },
                    c.row,
                    c.detail
                );
            }
            println!("{} rows checked, {failed} failed", checks.len());
            Ok(if failed == 0 {
                EXIT_OK
            } else {
                EXIT_ROW_FAILURE
            })
        }
        Command::Selftest { jobs } => {
            let lines = selftest::run(jobs)?;
            for l in &lines {
                println!(
                    "{} {}: {}",
                    if l.pass { "PASS" } else { "FAIL" },
                    l.name,
                    l.detail
                );
            }
            Ok(if lines.iter().all(|l| l.pass) {
                EXIT_OK
            } else {
                EXIT_ROW_FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            });
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}
