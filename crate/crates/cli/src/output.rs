//! Writing reports: `report.json`, one CSV per table, and `run.log`.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::report::RunReport;

fn fmt(v: f64) -> String {
    if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:?}")
    }
}

fn table(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> std::io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush()
}

/// Writes every artifact of `rep` into `dir`. Only `run.log` carries timing.
pub fn write_outputs(rep: &RunReport, dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let json = serde_json::to_string_pretty(rep).map_err(std::io::Error::other)?;
    fs::write(dir.join("report.json"), json + "\n")?;
    if !rep.ap.is_empty() {
        table(
            &dir.join("ap.csv"),
            &["weight", "p", "R", "q", "value", "regime", "cubes_evaluated", "argmax_center", "argmax_side"],
            rep.ap.iter().map(|r| {
                let c = &r.estimate.argmax_cube;
                vec![
                    r.weight.to_string(),
                    fmt(r.p),
                    fmt(r.dilation),
                    r.q.to_string(),
                    fmt(r.estimate.value),
                    serde_json::to_value(r.estimate.regime).unwrap().as_str().unwrap_or_default().to_string(),
                    r.estimate.cubes_evaluated.to_string(),
                    c.center.iter().map(|v| fmt(*v)).collect::<Vec<_>>().join(" "),
                    fmt(c.side),
                ]
            }),
        )?;
    }
    if !rep.doubling.is_empty() {
        table(
            &dir.join("doubling.csv"),
            &["weight", "p", "C_dbl", "beta", "c_w", "scalar_a1_max", "directions_tested"],
            rep.doubling.iter().map(|r| {
                vec![
                    r.weight.to_string(),
                    fmt(r.p),
                    fmt(r.report.c_dbl),
                    fmt(r.report.beta),
                    fmt(r.report.c_w),
                    r.report.scalar_a1_max.map(fmt).unwrap_or_default(),
                    r.report.directions_tested.to_string(),
                ]
            }),
        )?;
    }
    if let Some(s) = &rep.sampling {
        table(
            &dir.join("sampling.csv"),
            &["field", "offset", "discrepancy"],
            s.rows.iter().map(|r| vec![r.field.to_string(), fmt(r.offset), fmt(r.discrepancy)]),
        )?;
    }
    if !rep.multiplier.is_empty() {
        table(
            &dir.join("multiplier.csv"),
            &["weight", "p", "M", "symbol", "field", "ratio", "C_theory"],
            rep.multiplier.iter().flat_map(|r| {
                r.ratios.iter().enumerate().map(move |(i, v)| {
                    vec![
                        r.weight.to_string(),
                        fmt(r.report.p),
                        fmt(r.report.m),
                        r.report.symbol.clone(),
                        i.to_string(),
                        fmt(*v),
                        fmt(r.report.c_theory),
                    ]
                })
            }),
        )?;
    }
    if !rep.besov.is_empty() {
        table(
            &dir.join("besov.csv"),
            &["weight", "s", "p", "q", "field", "ratio"],
            rep.besov.iter().flat_map(|r| {
                r.ratios.iter().enumerate().map(move |(i, v)| {
                    vec![r.weight.to_string(), fmt(r.s), fmt(r.p), fmt(r.q.0), i.to_string(), fmt(*v)]
                })
            }),
        )?;
    }
    let mut log = fs::File::create(dir.join("run.log"))?;
    writeln!(log, "command: {:?}", rep.config.command)?;
    writeln!(log, "wall_time_s: {:.3}", rep.wall_time.as_secs_f64())?;
    writeln!(log, "warnings: {}", rep.warnings.len())?;
    writeln!(log, "errors: {}", rep.errors.len())?;
    Ok(())
}
