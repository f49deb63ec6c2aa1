//! Command-line front end. Exit status: 0 when every check passes, 1 when a
//! check fails, 2 on invalid input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use dtl_sl2::acceptance::DEFAULT_SEED;
use dtl_sl2::dtl::{DtlParams, Status};
use dtl_sl2::ring::Rational;
use dtl_sl2::Error;

#[derive(Parser)]
#[command(name = "dtl-sl2", version, about = "Exact sl2-equivariant dotted Temperley-Lieb computations")]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized samples.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Relations and sl2 brackets through the word action.
    DtlVerify {
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        params: DtlParams,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// The Jones-Wenzl projector p_n.
    Jw {
        #[arg(long)]
        n: usize,
    },
    /// The quiver relations for U, D, z.
    Quiver {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
    },
    /// Build and certify a truncated Kirby color.
    KirbyCertify {
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a2: Rational,
    },
    /// Decompose the B4 module.
    DecomposeB4 {
        #[arg(long, env = "SKEIN_SL2_DEPTH")]
        depth: Option<i64>,
    },
    /// Summary for the B2xS2 module.
    DecomposeB2s2 {
        #[arg(long, env = "SKEIN_SL2_DEPTH")]
        depth: Option<i64>,
        /// Also write the summary JSON here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Evaluate an expression and print it in the spanning-set basis.
    EvalExpr { expr: String },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    seed: u64,
    status: Status,
    report: &'a serde_json::Value,
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Certification(_) => 1,
        _ => 2,
    }
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, result) = match &cli.command {
        Command::DtlVerify { params, samples } => ("dtl-verify", commands::dtl_verify(params, *samples, cli.seed)),
        Command::Jw { n } => ("jw", commands::jw_cmd(*n)),
        Command::Quiver { n_max } => ("quiver", commands::quiver(*n_max)),
        Command::KirbyCertify { k, levels, a2 } => ("kirby-certify", commands::kirby(*k, *levels, a2)),
        Command::DecomposeB4 { depth } => ("decompose-b4", commands::decompose_b4(depth.unwrap_or(40))),
        Command::DecomposeB2s2 { depth, .. } => ("decompose-b2s2", commands::decompose_b2s2(depth.unwrap_or(20))),
        Command::EvalExpr { expr } => ("eval-expr", commands::eval_expr(expr)),
        Command::Selftest => ("selftest", commands::selftest(cli.seed)),
    };
    let out = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_for(&e));
        }
    };
    if let Command::DecomposeB2s2 { summary: Some(p), .. } = &cli.command {
        let body = serde_json::to_string_pretty(&out.report).expect("json") + "\n";
        if let Err(e) = write_out(&Some(p.clone()), &body) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let body = if cli.json {
        let env = Envelope {
            command: name,
            seed: cli.seed,
            status: out.status,
            report: &out.report,
        };
        serde_json::to_string_pretty(&env).expect("json") + "\n"
    } else {
        out.text
    };
    if let Err(e) = write_out(&cli.output, &body) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if out.status.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
