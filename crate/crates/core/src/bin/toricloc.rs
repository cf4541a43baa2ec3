use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use toricloc::cli::{emit_report, exit_status, load_config, parse_param, run_command, ChargeInput, Format};

/// Exact localisation invariants of toric manifolds and test configurations.
#[derive(Parser, Debug)]
#[command(name = "toricloc", version)]
struct Args {
    /// JSON problem description.
    #[arg(long)]
    input: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Explicit parameter vector, e.g. "1,-2/3".
    #[arg(long)]
    param: Option<String>,
    /// Seed for drawing generic localisation parameters.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = ["kstability", "dhym"])]
    charge_preset: Option<String>,
}

fn fail(err: toricloc::Error) -> ExitCode {
    eprintln!("toricloc: {err}");
    ExitCode::from(exit_status(&err) as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut cfg = match load_config(&args.input) {
        Ok(cfg) => cfg,
        Err(e) => return fail(e),
    };
    if let Some(p) = &args.param {
        match parse_param(p) {
            Ok(v) => cfg.parameter = Some(v),
            Err(e) => return fail(e),
        }
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(name) = args.charge_preset {
        cfg.charge = Some(ChargeInput::Preset(name));
    }
    if args.output.is_some() {
        cfg.output = args.output;
    }

    let report = run_command(&cfg);
    let bytes = emit_report(&report, args.format);
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::stdout().write_all(&bytes),
    };
    if let Err(e) = written {
        return fail(e.into());
    }
    if let Some(d) = &report.diagnostics {
        eprintln!("toricloc: {d}");
    }
    ExitCode::from(report.exit_status as u8)
}
