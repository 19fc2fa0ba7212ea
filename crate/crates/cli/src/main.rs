use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use motivic_zeta_cli::{run, Command, JobError, JobSpec};
use serde_json::{json, Value};

/// Motivic zeta functions of curves, Severi-Brauer classes, and
/// finite-field checks. Every command prints a JSON report.
#[derive(Debug, Parser)]
#[command(name = "mzeta", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Number of series coefficients (default depends on the command)
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Threads used for point enumeration
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Cap on field evaluations during point enumeration
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Include wall-clock time in the report
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Zeta function of projective n-space
    ZetaPn {
        #[arg(long)]
        n: u32,
    },
    /// Zeta function of a curve with a rational point, from a JSON file
    /// with `genus`, `low_classes` and `pic0`
    ZetaPointed {
        #[arg(long)]
        data: PathBuf,
    },
    /// Zeta function of a curve with a degree-n 0-cycle, from a JSON file
    /// with `genus`, `cycle_degree` and `sym_classes`
    ZetaPointless {
        #[arg(long)]
        data: PathBuf,
    },
    /// Counting-level zeta function of a zero-dimensional scheme
    ZetaZerodim {
        /// Degrees of the closed points, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
    },
    /// Class P * (1 + L^r + ... + L^(d-r)) of a Severi-Brauer scheme
    SbLadder {
        #[arg(long, default_value = "1")]
        p: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: u32,
    },
    /// Recover P from the class of a Severi-Brauer scheme
    SbReduce {
        #[arg(long)]
        full: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: u32,
    },
    /// Class c1 + L^r1 * c3 of the middle term of a filtration
    SbFilter {
        #[arg(long)]
        c1: String,
        #[arg(long)]
        r1: u32,
        #[arg(long)]
        c3: String,
        #[arg(long)]
        r3: u32,
    },
    /// Point, closed-point and divisor counts of a curve model
    Count {
        #[arg(long)]
        model: PathBuf,
        /// Count over F_{q^m} for m = 1..=len
        #[arg(long)]
        len: Option<u32>,
    },
    /// L-polynomial from a curve model or from point counts
    Weil {
        #[arg(long, conflicts_with_all = ["counts", "q"])]
        model: Option<PathBuf>,
        /// N_1, N_2, ... comma separated
        #[arg(long, value_delimiter = ',')]
        counts: Option<Vec<u64>>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        genus: Option<u32>,
    },
    /// Check the symbolic zeta function of a curve model against point counts
    Verify {
        #[arg(long)]
        model: PathBuf,
    },
    /// Run a job described by a JSON file
    Job {
        #[arg(long)]
        spec: PathBuf,
    },
}

fn read_json(path: &Path) -> Result<Value, JobError> {
    let text = fs::read_to_string(path).map_err(|e| JobError::Usage {
        name: "Io",
        message: format!("{}: {e}", path.display()),
    })?;
    serde_json::from_str(&text).map_err(|e| JobError::Usage {
        name: "InvalidJson",
        message: format!("{}: {e}", path.display()),
    })
}

fn job_from(cli: Cli) -> Result<JobSpec, JobError> {
    let (command, inputs) = match cli.command {
        Cmd::ZetaPn { n } => (Command::ZetaPn, json!({ "n": n })),
        Cmd::ZetaPointed { data } => (Command::ZetaPointed, read_json(&data)?),
        Cmd::ZetaPointless { data } => (Command::ZetaPointless, read_json(&data)?),
        Cmd::ZetaZerodim { degrees } => (Command::ZetaZerodim, json!({ "degrees": degrees })),
        Cmd::SbLadder { p, r, d } => (Command::SbLadder, json!({ "p": p, "r": r, "d": d })),
        Cmd::SbReduce { full, r, d } => (Command::SbReduce, json!({ "full": full, "r": r, "d": d })),
        Cmd::SbFilter { c1, r1, c3, r3 } => (Command::SbFilter, json!({ "c1": c1, "r1": r1, "c3": c3, "r3": r3 })),
        Cmd::Count { model, len } => {
            let mut inputs = json!({ "model": read_json(&model)? });
            if let Some(len) = len {
                inputs["len"] = json!(len);
            }
            (Command::Count, inputs)
        }
        Cmd::Weil {
            model,
            counts,
            q,
            genus,
        } => {
            let mut inputs = json!({});
            if let Some(model) = model {
                inputs["model"] = read_json(&model)?;
            }
            if let Some(counts) = counts {
                inputs["counts"] = json!(counts);
            }
            if let Some(q) = q {
                inputs["q"] = json!(q);
            }
            if let Some(genus) = genus {
                inputs["genus"] = json!(genus);
            }
            (Command::Weil, inputs)
        }
        Cmd::Verify { model } => (Command::Verify, json!({ "model": read_json(&model)? })),
        Cmd::Job { spec } => {
            let mut job: JobSpec = serde_json::from_value(read_json(&spec)?).map_err(|e| JobError::Usage {
                name: "InvalidInput",
                message: format!("{}: {e}", spec.display()),
            })?;
            let c = cli.common;
            job.precision = c.precision.or(job.precision);
            job.output_path = c.output.or(job.output_path);
            job.budget = c.budget.or(job.budget);
            job.timing |= c.timing;
            return Ok(job);
        }
    };
    let c = cli.common;
    Ok(JobSpec {
        command,
        inputs,
        precision: c.precision,
        output_path: c.output,
        budget: c.budget,
        timing: c.timing,
    })
}

fn emit(report: &Value, output: Option<&Path>) -> Result<(), JobError> {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text).map_err(|e| JobError::Usage {
            name: "Io",
            message: format!("{}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn usage_failure(e: &JobError) -> ExitCode {
    eprintln!("error: {e}");
    let report = json!({"error": {"name": e.name(), "message": e.to_string()}});
    println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            return usage_failure(&JobError::usage(text.trim_start_matches("error: ").trim_end()));
        }
    };
    if let Some(threads) = cli.common.jobs {
        if threads == 0 {
            return usage_failure(&JobError::usage("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .expect("thread pool is configured once");
    }
    let job = match job_from(cli) {
        Ok(job) => job,
        Err(e) => return usage_failure(&e),
    };
    let outcome = run(&job);
    if let Some(error) = outcome.report.get("error") {
        eprintln!(
            "error: {}: {}",
            error["name"].as_str().unwrap_or(""),
            error["message"].as_str().unwrap_or("")
        );
    }
    if let Err(e) = emit(&outcome.report, job.output_path.as_deref()) {
        return usage_failure(&e);
    }
    ExitCode::from(outcome.exit_code as u8)
}
