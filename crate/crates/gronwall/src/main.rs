//! Thin command-line wrapper over [`gronwall::cli`]: one spec file or one
//! named property suite per invocation, JSON report out, errors as
//! single-line JSON on standard error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use gronwall::cli::{self, Options};
use gronwall::Error;

#[derive(Parser, Debug)]
#[command(name = "gronwall", about = "Certified bounds for Gronwall-type inequalities")]
struct Args {
    /// Problem specification file (JSON).
    #[arg(long, conflicts_with = "suite")]
    spec: Option<PathBuf>,

    /// Property suite to run: lattice, discrete, volterra, resolvent,
    /// maxprin, semilinear, or all.
    #[arg(long)]
    suite: Option<String>,

    /// Seed for the suite's random generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Override the oracle-comparison tolerance of the spec.
    #[arg(long)]
    tol: Option<f64>,

    /// Write the report (or suite summary) to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Also export the bound vector as CSV next to the report.
    #[arg(long)]
    csv: bool,

    /// Suppress stdout (exit code and --out only).
    #[arg(long)]
    quiet: bool,
}

fn emit(args: &Args, text: &str) -> Result<(), Error> {
    if let Some(path) = &args.out {
        std::fs::write(path, text)?;
    }
    if !args.quiet {
        println!("{text}");
    }
    Ok(())
}

fn real_main(args: &Args) -> Result<ExitCode, Error> {
    if let Some(spec) = &args.spec {
        let overrides = args.tol.map(|tol| Options { tol, ..Options::default() });
        let report = cli::run(spec, overrides)?;
        let text = serde_json::to_string_pretty(&report).map_err(|e| Error::Schema(e.to_string()))?;
        emit(args, &text)?;
        if args.csv {
            if let Some(values) = report.bound_values() {
                let mut csv = String::from("index,value\n");
                for (i, v) in values.iter().enumerate() {
                    csv.push_str(&format!("{i},{v}\n"));
                }
                let path = args
                    .out
                    .as_ref()
                    .map(|p| p.with_extension("csv"))
                    .unwrap_or_else(|| PathBuf::from("bound.csv"));
                std::fs::write(path, csv)?;
            }
        }
        Ok(if report.all_checks_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
    } else if let Some(name) = &args.suite {
        let summary = cli::suite(name, args.seed)?;
        emit(args, summary.render().trim_end())?;
        Ok(if summary.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
    } else {
        Err(Error::Parameter("provide either --spec PATH or --suite NAME".into()))
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match real_main(&args) {
        Ok(code) => code,
        Err(e) => {
            let payload = serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() });
            eprintln!("{payload}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
