//! The acceptance run: every configuration in `configs/` goes through the
//! binary twice (one worker, then four), and each criterion prints one line.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use serde_json::Value;

const CONFIGS: [(&str, &str); 7] = [
    ("ap-zoo-1d", "ap-constant"),
    ("ap-zoo-2d", "ap-constant"),
    ("a1-power", "ap-constant"),
    ("doubling", "doubling"),
    ("sampling", "sampling-check"),
    ("multiplier", "multiplier-bound"),
    ("besov", "besov-equiv"),
];

struct Run {
    report: Value,
    files: BTreeMap<String, Vec<u8>>,
    seconds: f64,
}

fn run(name: &str, command: &str, threads: usize, out: &Path) -> Run {
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(format!("{name}.toml"));
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_mwlp"))
        .arg(command)
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(out)
        .arg("--threads")
        .arg(threads.to_string())
        .status()
        .expect("binary runs");
    let seconds = start.elapsed().as_secs_f64();
    assert_eq!(status.code(), Some(0), "{name} exited with {status}");
    let mut files = BTreeMap::new();
    for entry in fs::read_dir(out).unwrap() {
        let path = entry.unwrap().path();
        let file = path.file_name().unwrap().to_string_lossy().into_owned();
        if file != "run.log" {
            files.insert(file, fs::read(&path).unwrap());
        }
    }
    let report = serde_json::from_slice(&files["report.json"]).unwrap();
    Run { report, files, seconds }
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn rows<'a>(r: &'a Value, key: &str) -> &'a [Value] {
    r[key].as_array().map(Vec::as_slice).unwrap_or(&[])
}

/// `w(2Q) / w(Q)` for `|x|^{-1/2}` on `Q = [-r, r]`, by a dense midpoint rule.
fn nested_ratio(r: f64) -> f64 {
    let mass = |a: f64| {
        let k = 1 << 20;
        let h = a / k as f64;
        2.0 * (0..k).map(|i| ((i as f64 + 0.5) * h).powf(-0.5)).sum::<f64>() * h
    };
    mass(2.0 * r) / mass(r)
}

struct Verdicts(Vec<bool>);

impl Verdicts {
    fn check(&mut self, id: usize, name: &str, ok: bool, detail: String) {
        println!("[{}] {id:>2}. {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        self.0.push(ok);
    }
}

fn main() -> ExitCode {
    let tmp = tempfile::tempdir().unwrap();
    let mut runs: BTreeMap<&str, Run> = BTreeMap::new();
    let mut identical = Vec::new();
    let mut slowest = (0.0_f64, "");
    for (name, command) in CONFIGS {
        // Same directory both times: the report echoes it.
        let out = tmp.path().join(name);
        let one = run(name, command, 1, &out);
        fs::remove_dir_all(&out).unwrap();
        let four = run(name, command, 4, &out);
        identical.push((name, one.files == four.files));
        if one.seconds > slowest.0 {
            slowest = (one.seconds, name);
        }
        runs.insert(name, one);
    }
    let mut v = Verdicts(Vec::new());

    // 1. A_p floor over the zoo.
    let zoo: Vec<&Value> = ["ap-zoo-1d", "ap-zoo-2d"].iter().flat_map(|n| rows(&runs[n].report, "ap")).collect();
    let floor = zoo.iter().map(|a| f(&a["estimate"]["value"])).fold(f64::INFINITY, f64::min);
    let zoo_errors: usize = ["ap-zoo-1d", "ap-zoo-2d"].iter().map(|n| rows(&runs[n].report, "errors").len()).sum();
    v.check(
        1,
        "A_p floor",
        !zoo.is_empty() && zoo_errors == 0 && floor >= 1.0 - 1e-9,
        format!("min over {} estimates = {floor}", zoo.len()),
    );

    // 2. Dilation invariance against the undilated estimate.
    let mut worst = 0.0_f64;
    let mut dilated = 0;
    for a in &zoo {
        let r = f(&a["R"]);
        if r == 1.0 {
            continue;
        }
        let base = zoo
            .iter()
            .find(|b| f(&b["R"]) == 1.0 && b["weight"] == a["weight"] && b["p"] == a["p"] && b["q"] == a["q"])
            .map(|b| f(&b["estimate"]["value"]))
            .expect("undilated estimate");
        worst = worst.max((f(&a["estimate"]["value"]) - base).abs() / base);
        dilated += 1;
    }
    v.check(
        2,
        "dilation invariance",
        dilated > 0 && worst <= 1e-12,
        format!("{dilated} dilated estimates, max relative deviation {worst:e}"),
    );

    // 3. [|x|^{-1/2}]_{A_1} under refinement.
    let mut a1: Vec<(u64, f64)> = rows(&runs["a1-power"].report, "ap")
        .iter()
        .map(|a| (a["q"].as_u64().unwrap(), f(&a["estimate"]["value"])))
        .collect();
    a1.sort_by_key(|x| x.0);
    let qs: Vec<u64> = a1.iter().map(|x| x.0).collect();
    let monotone = a1.windows(2).all(|w| w[1].1 >= w[0].1);
    let finest = a1.last().map_or(f64::NAN, |x| x.1);
    v.check(
        3,
        "scalar A_1 oracle",
        qs == [64, 128, 256, 512] && monotone && (finest - 2.0).abs() <= 0.02 * 2.0,
        format!(
            "estimates {:?}, finest {finest:.4} vs 2",
            a1.iter().map(|x| format!("{:.4}", x.1)).collect::<Vec<_>>()
        ),
    );

    // 4. Doubling: exact for Lebesgue measure, beta = 1/2 for |x|^{-1/2}.
    let dbl = rows(&runs["doubling"].report, "doubling");
    let weights = runs["doubling"].report["config"]["weights"].as_array().unwrap().clone();
    let mut ok = dbl.len() == weights.len();
    let mut details = Vec::new();
    let oracle_beta = [0.25, 1.0, 4.0].iter().map(|&r| nested_ratio(r)).fold(0.0, f64::max).log2();
    for d in dbl {
        let w = &weights[d["weight"].as_u64().unwrap() as usize];
        let n = w["n"].as_u64().unwrap() as i32;
        let (c, beta) = (f(&d["report"]["C_dbl"]), f(&d["report"]["beta"]));
        if w["kind"] == "identity" {
            ok &= c == 2f64.powi(n) && beta == n as f64;
            details.push(format!("identity n={n}: C_dbl={c}, beta={beta}"));
        } else {
            ok &= (beta - oracle_beta).abs() <= 0.05 * oracle_beta;
            details.push(format!("|x|^-1/2: beta={beta:.6} (oracle {oracle_beta:.6})"));
        }
    }
    v.check(4, "doubling", ok, details.join("; "));

    // 5. Sampling identity.
    let s = &runs["sampling"].report["sampling"];
    let srows = rows(s, "rows");
    let fields: std::collections::BTreeSet<u64> = srows.iter().map(|r| r["field"].as_u64().unwrap()).collect();
    let offsets: std::collections::BTreeSet<String> = srows.iter().map(|r| r["offset"].to_string()).collect();
    let max = f(&s["max_discrepancy"]);
    v.check(
        5,
        "sampling identity",
        fields.len() == 8 && offsets.len() == 2 && f(&s["fit"]["M"]) >= 4.0 && max <= 1e-6,
        format!("{} fields x {} offsets, max relative discrepancy {max:e}", fields.len(), offsets.len()),
    );

    // 6-9 share the multiplier run.
    let mr = &runs["multiplier"].report;
    let mult = rows(mr, "multiplier");
    let mweights = mr["config"]["weights"].as_array().unwrap();
    let mut worst = 0.0_f64;
    let mut cases = 0;
    for m in mult {
        let r = &m["report"];
        let w = &mweights[m["weight"].as_u64().unwrap() as usize];
        if w["N"] == 2 && w["kind"] != "identity" && [0.5, 1.0].contains(&f(&r["p"])) {
            worst = worst.max(f(&r["ratio_max"]) / f(&r["C_theory"]));
            cases += 1;
        }
    }
    let violated = rows(mr, "errors").iter().filter(|e| e["kind"] == "HypothesisViolated").count();
    v.check(
        6,
        "boundedness",
        cases > 0 && rows(mr, "errors").len() == violated && worst <= 1.01,
        format!("{cases} admissible configurations, max ratio_max / C_theory = {worst:.3e}"),
    );

    let mut ok = !mult.is_empty();
    let mut spread = 0.0_f64;
    for m in mult {
        let r = &m["report"];
        let sweep: Vec<f64> = r["R_sweep"].as_array().unwrap().iter().map(|x| f(&x[1])).collect();
        ok &= sweep.len() == 3 && sweep.iter().all(|&x| x <= f(&r["C_theory"]));
        if mweights[m["weight"].as_u64().unwrap() as usize]["kind"] == "identity" {
            let hi = sweep.iter().copied().fold(f64::MIN, f64::max);
            let lo = sweep.iter().copied().fold(f64::MAX, f64::min);
            spread = spread.max(hi - lo);
        }
    }
    v.check(7, "R-uniformity", ok && spread <= 1e-9, format!("all sweeps below C_theory, identity spread {spread:e}"));

    let young = rows(mr, "young");
    let excess = young
        .iter()
        .map(|y| f(&y["ratio_max"]) - f(&y["kernel_l1"]))
        .fold(f64::NEG_INFINITY, f64::max);
    v.check(
        8,
        "p >= 1 variant",
        !young.is_empty() && excess <= 1e-6,
        format!("max (ratio - ||K||_1) = {excess:.4e} over {} rows", young.len()),
    );

    let closed = std::f64::consts::PI.powi(2) / 3.0 - 1.0;
    let lattice: Vec<f64> = mult
        .iter()
        .map(|m| &m["report"])
        .filter(|r| r["n"] == 1 && f(&r["M"]) * f(&r["p"]) - f(&r["beta"]) == 2.0)
        .map(|r| f(&r["L"]))
        .collect();
    let dev = lattice.iter().map(|l| (l - closed).abs()).fold(0.0, f64::max);
    v.check(
        9,
        "lattice sum",
        !lattice.is_empty() && dev <= 1e-8,
        format!("L(1, 2) over {} reports, max deviation from pi^2/3 - 1 = {dev:e}", lattice.len()),
    );

    // 10. Besov equivalence.
    let br = &runs["besov"].report;
    let besov = rows(br, "besov");
    let mut ok = rows(br, "errors").is_empty() && rows(br, "besov_decay").len() == 2 && besov.len() == 8;
    let (mut ratio_of_bound, mut recip, mut shift) = (0.0_f64, 0.0_f64, 0.0_f64);
    for b in besov {
        let c = b["C_equiv"].as_f64();
        ok &= c.is_some() && b["corpus_size"] == 32;
        ratio_of_bound = ratio_of_bound.max(f(&b["bracket"]) / c.unwrap_or(f64::NAN));
        recip = recip.max(f(&b["reciprocity_error"]));
        shift = shift.max(b["doubled"]["shift"].as_f64().unwrap_or(f64::INFINITY));
    }
    v.check(
        10,
        "Besov equivalence",
        ok && ratio_of_bound <= 1.0 && recip <= 1e-12 && shift <= 0.10,
        format!("max bracket / C_equiv = {ratio_of_bound:.2e}, reciprocity {recip:.1e}, bracket shift {shift:.4}"),
    );

    // 11. Scalar cross-check.
    let checks: Vec<&Value> = runs.values().flat_map(|r| rows(&r.report, "cross_checks")).collect();
    let worst = checks.iter().map(|c| f(&c["max_rel_diff"])).fold(0.0, f64::max);
    v.check(
        11,
        "scalar cross-check",
        checks.len() > 50 && worst <= 1e-10,
        format!("{} comparisons, max relative difference {worst:e}", checks.len()),
    );

    // 12. Determinism across worker counts.
    let differing: Vec<&str> = identical.iter().filter(|x| !x.1).map(|x| x.0).collect();
    v.check(
        12,
        "determinism",
        differing.is_empty(),
        format!(
            "{} configurations byte-identical with 1 and 4 workers{}; slowest run {:.1} s ({})",
            identical.len() - differing.len(),
            if differing.is_empty() { String::new() } else { format!(", differing: {differing:?}") },
            slowest.0,
            slowest.1
        ),
    );

    let passed = v.0.iter().filter(|&&b| b).count();
    println!("{passed}/{} criteria passed", v.0.len());
    if passed == v.0.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
