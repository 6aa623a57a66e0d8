use std::fs;
use std::path::Path;
use std::process::Command;

use mwlp_cli::{validate, Command as Sub, Overrides};

fn errors(text: &str) -> Vec<String> {
    validate(text, Path::new("."), &Overrides::default()).unwrap_err()
}

fn mwlp(args: &[&str], out: &Path) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_mwlp"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap();
    (o.status.code().unwrap(), String::from_utf8_lossy(&o.stderr).into_owned())
}

#[test]
fn empty_text_gives_defaults() {
    let cfg = validate("", Path::new("."), &Overrides::default()).unwrap();
    assert_eq!(cfg.command, Sub::All);
    assert_eq!(cfg.seed, 0);
    assert_eq!(cfg.weights.len(), 1);
    assert_eq!(cfg.ap.p, vec![1.0]);
}

#[test]
fn overrides_take_precedence() {
    let o = Overrides {
        command: Some(Sub::Doubling),
        seed: Some(9),
        output_dir: Some("elsewhere".into()),
    };
    let cfg = validate("command = \"ap-constant\"\nseed = 3\n", Path::new("."), &o).unwrap();
    assert_eq!(cfg.command, Sub::Doubling);
    assert_eq!(cfg.seed, 9);
    assert_eq!(cfg.output_dir, Path::new("elsewhere"));
}

#[test]
fn p_must_be_positive() {
    let e = errors("[ap]\np = [0.0]\n");
    assert!(e.iter().any(|m| m.contains("p must be positive")), "{e:?}");
}

#[test]
fn m_must_be_divisible_by_t() {
    let e = errors("[grid]\nT = 64\nm = 100\n");
    assert!(e.iter().any(|m| m.contains("m must be divisible by T")), "{e:?}");
}

#[test]
fn errors_accumulate() {
    let e = errors(
        "[ap]\np = [-1.0]\n[grid]\nT = 63\n[besov]\npsi = { c1 = 2.0, c2 = 1.0, profile = \"piecewise-linear\" }\n",
    );
    assert!(e.len() >= 3, "{e:?}");
    assert!(e.iter().any(|m| m.contains("c1 < c2")), "{e:?}");
}

#[test]
fn unknown_keys_are_rejected() {
    let e = errors("[ap]\nexponent = 1.0\n");
    assert!(e[0].contains("unknown field"), "{e:?}");
}

#[test]
fn weight_files_resolve_against_the_config() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("w.json"), r#"{"n":1,"N":2,"kind":"diagonal-power","alphas":[-0.5,0.0]}"#).unwrap();
    let cfg = validate("[weight]\nfile = \"w.json\"\n", dir.path(), &Overrides::default()).unwrap();
    assert_eq!(cfg.weights[0].dim, 2);
    let e = validate("[weight]\nfile = \"missing.toml\"\n", dir.path(), &Overrides::default()).unwrap_err();
    assert!(e[0].contains("cannot read"), "{e:?}");
}

#[test]
fn minimal_run_reports_one() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = mwlp(&["ap-constant"], dir.path());
    assert_eq!(code, 0);
    let r: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(r["ap"][0]["estimate"]["value"], 1.0);
    assert!(dir.path().join("ap.csv").exists());
    assert!(fs::read_to_string(dir.path().join("run.log")).unwrap().contains("wall_time_s"));
}

#[test]
fn invalid_config_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "[ap]\np = [0.0]\n").unwrap();
    let (code, stderr) = mwlp(&["ap-constant", "--config", cfg.to_str().unwrap()], &dir.path().join("out"));
    assert_eq!(code, 2);
    assert!(stderr.contains("p must be positive"));
    let (code, _) = mwlp(&["ap-constant", "--config", "/nonexistent.toml"], &dir.path().join("out"));
    assert_eq!(code, 2);
}

#[test]
fn violated_hypothesis_exits_with_three() {
    // Lebesgue measure on the line has beta = 1, so p = 1 needs M > 2.
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("low.toml");
    fs::write(
        &cfg,
        "[multiplier]\ncorpus_size = 2\nR_sweep = []\n[[multiplier.cases]]\np = 1.0\nM = 2.0\nsymbol = { form = \"raised-cosine\", radius = 1.0, order = 2 }\n",
    )
    .unwrap();
    let out = dir.path().join("out");
    let (code, _) = mwlp(&["multiplier-bound", "--config", cfg.to_str().unwrap()], &out);
    assert_eq!(code, 3);
    let r: serde_json::Value = serde_json::from_slice(&fs::read(out.join("report.json")).unwrap()).unwrap();
    let e = &r["errors"][0];
    assert_eq!(e["kind"], "HypothesisViolated");
    assert_eq!(e["details"]["M"], 2.0);
    assert_eq!(e["details"]["threshold"], 2.0);
}

#[test]
fn seeds_change_the_corpus_and_repeat_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let read = |seed: &str| {
        let out = dir.path().join(seed);
        assert_eq!(mwlp(&["sampling-check", "--seed", seed, "--threads", "2"], &out).0, 0);
        fs::read(out.join("sampling.csv")).unwrap()
    };
    let a = read("1");
    fs::rename(dir.path().join("1"), dir.path().join("1-first")).unwrap();
    assert_eq!(a, read("1"));
    assert_ne!(a, read("2"));
}
