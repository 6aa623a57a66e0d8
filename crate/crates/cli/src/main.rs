use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use mwlp_cli::{execute, validate, Command, Overrides, EXIT_INVALID};

/// Matrix-weighted L^p experiments: A_p constants, doubling, sampling,
/// multiplier bounds and Besov partition equivalence.
#[derive(Parser, Debug)]
#[command(name = "mwlp", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// TOML config; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Root seed for all random substreams.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, base) = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => (t, path.parent().map(PathBuf::from).unwrap_or_default()),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(EXIT_INVALID as u8);
            }
        },
        None => (String::new(), PathBuf::from(".")),
    };
    let overrides = Overrides {
        command: Some(cli.command),
        seed: cli.seed,
        output_dir: cli.out,
    };
    let cfg = match validate(&text, &base, &overrides) {
        Ok(c) => c,
        Err(errors) => {
            for e in errors {
                eprintln!("error: {e}");
            }
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    match execute(&cfg, cli.threads) {
        Ok(rep) => {
            for e in &rep.errors {
                eprintln!("{} [{}] {}: {}", e.pipeline, e.context, e.kind, e.message);
            }
            eprintln!(
                "wrote {} ({} warnings, {} errors)",
                cfg.output_dir.display(),
                rep.warnings.len(),
                rep.errors.len()
            );
            ExitCode::from(rep.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
