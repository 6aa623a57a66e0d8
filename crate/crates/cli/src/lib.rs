//! Configuration-driven experiment runner for the `mwlp` library.
//!
//! A run reads a TOML config, executes the selected pipelines, and writes
//! `report.json`, CSV tables and a `run.log` into the output directory.
//! Everything except `run.log` is byte-deterministic for a fixed config and seed.

// Range checks are written `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod output;
pub mod report;
pub mod run;

use std::path::Path;

pub use config::{validate, Command, ExperimentConfig, Overrides};
pub use output::write_outputs;
pub use report::RunReport;
pub use run::run;

/// Exit code for a config that fails validation or an output that cannot be written.
pub const EXIT_INVALID: i32 = 2;
/// Exit code when a pipeline hits a numerical error such as a violated hypothesis.
pub const EXIT_NUMERICAL: i32 = 3;

/// Runs `cfg` on a pool of `threads` workers (all cores when `None`) and writes the outputs.
pub fn execute(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<RunReport, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| e.to_string())?;
    let rep = pool.install(|| run(cfg));
    write_outputs(&rep, Path::new(&cfg.output_dir)).map_err(|e| format!("cannot write outputs: {e}"))?;
    Ok(rep)
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
