//! Experiment configuration: raw TOML, validation and defaults.

use std::path::{Path, PathBuf};

use mwlp::besov::{make_partition, BumpProfile, DyadicPartition};
use mwlp::muckenhoupt::CubeFamily;
use mwlp::spectral::{SymbolForm, TorusGrid};
use mwlp::weights::WeightSpec;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    ApConstant,
    Doubling,
    SamplingCheck,
    MultiplierBound,
    BesovEquiv,
    All,
}

impl Command {
    pub fn runs(self, other: Command) -> bool {
        self == Command::All || self == other
    }
}

/// `q` in a config file: a positive number or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summability(pub f64);

impl Serialize for Summability {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Summability {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Self(v)),
            Raw::Int(v) => Ok(Self(v as f64)),
            Raw::Str(s) if s == "inf" || s == "infinity" => Ok(Self(f64::INFINITY)),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("q must be a number or \"inf\", got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(rename = "T")]
    pub period: Option<usize>,
    pub m: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeConfig {
    pub j_min: Option<i32>,
    pub j_max: Option<i32>,
    pub half_width: Option<f64>,
    pub base: Option<f64>,
    /// Largest center offset in units of the side; a negative value removes the window.
    pub window: Option<f64>,
    pub q: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ApConfig {
    pub p: Vec<f64>,
    /// Dilation factors `R`; each estimate is repeated for `W(R .)` on the family scaled by `1/R`.
    pub dilations: Vec<f64>,
    /// Quadrature orders for a refinement sweep (in addition to the family's own `q`).
    pub refinements: Vec<usize>,
}

impl Default for ApConfig {
    fn default() -> Self {
        Self {
            p: vec![1.0],
            dilations: Vec::new(),
            refinements: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DoublingConfig {
    pub p: f64,
    pub lattice_radius: Option<usize>,
    /// Family override for this pipeline only.
    pub cubes: Option<CubeConfig>,
}

impl Default for DoublingConfig {
    fn default() -> Self {
        Self {
            p: 1.0,
            lattice_radius: None,
            cubes: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SamplingConfig {
    pub symbol: SymbolForm,
    #[serde(rename = "M")]
    pub m: f64,
    pub fields: usize,
    #[serde(rename = "N")]
    pub dim: usize,
    pub offsets: Vec<f64>,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            symbol: SymbolForm::RaisedCosine { radius: 1.0, order: 2 },
            m: 4.0,
            fields: 8,
            dim: 2,
            offsets: vec![0.0, -0.5],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiplierCase {
    pub p: f64,
    #[serde(rename = "M")]
    pub m: f64,
    pub symbol: SymbolForm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MultiplierConfig {
    pub cases: Vec<MultiplierCase>,
    pub corpus_size: usize,
    #[serde(rename = "R_sweep")]
    pub r_sweep: Vec<f64>,
}

impl Default for MultiplierConfig {
    fn default() -> Self {
        Self {
            cases: vec![
                MultiplierCase {
                    p: 1.0,
                    m: 4.0,
                    symbol: SymbolForm::RaisedCosine { radius: 1.0, order: 2 },
                },
                MultiplierCase {
                    p: 0.5,
                    m: 6.0,
                    symbol: SymbolForm::RaisedCosine { radius: 1.0, order: 3 },
                },
            ],
            corpus_size: 32,
            r_sweep: vec![0.25, 1.0, 4.0],
        }
    }
}

// No `deny_unknown_fields` here: serde does not support it together with `flatten`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionConfig {
    pub c1: f64,
    pub c2: f64,
    #[serde(flatten)]
    pub profile: BumpProfile,
    #[serde(default = "default_j_range")]
    pub j_range: [i32; 2],
}

fn default_j_range() -> [i32; 2] {
    [-3, 3]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BesovConfig {
    pub s: Vec<f64>,
    pub p: f64,
    pub q: Vec<Summability>,
    #[serde(rename = "M")]
    pub m: f64,
    pub psi: PartitionConfig,
    pub phi: PartitionConfig,
    pub corpus_size: usize,
    /// Spectral shell `[inner, outer)` of the corpus; defaults to the common covered interior.
    pub shell: Option<[f64; 2]>,
    pub grid: GridConfig,
    /// Also run the corpus of twice the size and report how far the bracket moved.
    pub stability: bool,
}

impl Default for BesovConfig {
    fn default() -> Self {
        Self {
            s: vec![0.0, 0.5],
            p: 1.0,
            q: vec![Summability(1.0), Summability(f64::INFINITY)],
            m: 4.0,
            psi: PartitionConfig {
                c1: 0.5,
                c2: 2.0,
                profile: BumpProfile::SmoothExp { shape: 1.0 },
                j_range: default_j_range(),
            },
            phi: PartitionConfig {
                c1: 0.5f64.sqrt(),
                c2: 8f64.sqrt(),
                profile: BumpProfile::Polynomial { order: 6 },
                j_range: default_j_range(),
            },
            corpus_size: 32,
            shell: None,
            grid: GridConfig::default(),
            stability: true,
        }
    }
}

/// The file format: every field optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    command: Option<Command>,
    seed: Option<u64>,
    output_dir: Option<PathBuf>,
    weight: Option<toml::Value>,
    #[serde(default)]
    weights: Vec<toml::Value>,
    #[serde(default)]
    grid: GridConfig,
    #[serde(default)]
    cubes: CubeConfig,
    ap: Option<ApConfig>,
    doubling: Option<DoublingConfig>,
    sampling: Option<SamplingConfig>,
    multiplier: Option<MultiplierConfig>,
    besov: Option<BesovConfig>,
    scalar_check: Option<bool>,
}

/// A validated configuration with all defaults filled in.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub weights: Vec<WeightSpec>,
    pub grid: GridConfig,
    pub cubes: CubeConfig,
    pub ap: ApConfig,
    pub doubling: DoublingConfig,
    pub sampling: SamplingConfig,
    pub multiplier: MultiplierConfig,
    pub besov: BesovConfig,
    /// Recompute every `N = 1` result with the scalar reference path.
    pub scalar_check: bool,
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub command: Option<Command>,
    pub seed: Option<u64>,
    pub output_dir: Option<PathBuf>,
}

/// Parses and checks a config text. Relative weight files are resolved against `base_dir`.
pub fn validate(text: &str, base_dir: &Path, overrides: &Overrides) -> Result<ExperimentConfig, Vec<String>> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| vec![e.message().to_string()])?;
    let mut errors = Vec::new();

    let mut weights = Vec::new();
    for (i, v) in raw.weight.iter().chain(&raw.weights).enumerate() {
        match load_weight(v, base_dir) {
            Ok(w) => match w.validate() {
                Ok(()) => weights.push(w),
                Err(e) => errors.push(format!("weight {i}: {e}")),
            },
            Err(e) => errors.push(format!("weight {i}: {e}")),
        }
    }
    if weights.is_empty() {
        weights.push(WeightSpec::identity(1, 1));
    }

    let cfg = ExperimentConfig {
        command: overrides.command.or(raw.command).unwrap_or(Command::All),
        seed: overrides.seed.or(raw.seed).unwrap_or(0),
        output_dir: overrides
            .output_dir
            .clone()
            .or(raw.output_dir)
            .unwrap_or_else(|| PathBuf::from("out")),
        weights,
        grid: raw.grid,
        cubes: raw.cubes,
        ap: raw.ap.unwrap_or_default(),
        doubling: raw.doubling.unwrap_or_default(),
        sampling: raw.sampling.unwrap_or_default(),
        multiplier: raw.multiplier.unwrap_or_default(),
        besov: raw.besov.unwrap_or_default(),
        scalar_check: raw.scalar_check.unwrap_or(true),
    };
    check(&cfg, &mut errors);
    if errors.is_empty() {
        Ok(cfg)
    } else {
        Err(errors)
    }
}

fn load_weight(v: &toml::Value, base_dir: &Path) -> Result<WeightSpec, String> {
    if let Some(file) = v.get("file") {
        let file = file.as_str().ok_or("file must be a string")?;
        let path = base_dir.join(file);
        let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        return if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
        } else {
            toml::from_str(&text).map_err(|e| format!("{}: {}", path.display(), e.message()))
        };
    }
    v.clone().try_into().map_err(|e: toml::de::Error| e.message().to_string())
}

fn positive(errors: &mut Vec<String>, name: &str, v: f64) {
    if !(v > 0.0 && v.is_finite()) {
        errors.push(format!("{name} must be positive"));
    }
}

fn check(cfg: &ExperimentConfig, errors: &mut Vec<String>) {
    for n in cfg.dims() {
        if let Err(e) = cfg.grid_for(n) {
            push_grid_error(errors, "grid", e);
        }
        if let Err(e) = cfg.family_for(n, None) {
            errors.push(format!("cubes: {e}"));
        }
    }
    for &p in &cfg.ap.p {
        positive(errors, "p", p);
    }
    for &r in &cfg.ap.dilations {
        positive(errors, "dilation", r);
    }
    if cfg.ap.refinements.iter().any(|&q| q == 0 || q % 2 != 0) {
        errors.push("refinement orders must be positive and even".into());
    }
    positive(errors, "p", cfg.doubling.p);
    if let Some(c) = &cfg.doubling.cubes {
        for n in cfg.dims() {
            if let Err(e) = family(n, c) {
                errors.push(format!("doubling.cubes: {e}"));
            }
        }
    }
    let s = &cfg.sampling;
    if let Err(e) = s.symbol.validate(1) {
        errors.push(format!("sampling.symbol: {e}"));
    }
    positive(errors, "sampling.M", s.m);
    if s.fields == 0 || s.dim == 0 {
        errors.push("sampling needs at least one field of dimension N >= 1".into());
    }
    for c in &cfg.multiplier.cases {
        positive(errors, "p", c.p);
        positive(errors, "M", c.m);
        if let Err(e) = c.symbol.validate(1) {
            errors.push(format!("multiplier symbol: {e}"));
        }
        if c.symbol.radius() > 1.0 {
            errors.push(format!("multiplier symbol radius {} exceeds 1", c.symbol.radius()));
        }
    }
    if cfg.multiplier.corpus_size == 0 {
        errors.push("multiplier.corpus_size must be positive".into());
    }
    for &r in &cfg.multiplier.r_sweep {
        positive(errors, "R", r);
    }
    let b = &cfg.besov;
    positive(errors, "besov.p", b.p);
    positive(errors, "besov.M", b.m);
    for q in &b.q {
        if !(q.0 > 0.0) {
            errors.push("q must be positive or \"inf\"".into());
        }
    }
    if b.s.iter().any(|s| !s.is_finite()) {
        errors.push("s must be finite".into());
    }
    if b.corpus_size == 0 {
        errors.push("besov.corpus_size must be positive".into());
    }
    for (name, pc) in [("psi", &b.psi), ("phi", &b.phi)] {
        if !(pc.c1 > 0.0 && pc.c1 < pc.c2) {
            errors.push(format!("besov.{name}: c1 < c2 required (c1 = {}, c2 = {})", pc.c1, pc.c2));
        } else if let Err(e) = partition(pc) {
            errors.push(format!("besov.{name}: {e}"));
        }
    }
    if let Some([lo, hi]) = b.shell {
        if !(lo > 0.0 && hi > 2.0 * lo) {
            errors.push(format!("besov.shell [{lo}, {hi}) must satisfy 0 < 2 inner < outer"));
        }
    }
    if let Err(e) = besov_grid(b, 1) {
        push_grid_error(errors, "besov.grid", e);
    }
}

/// Keeps the validator's wording for grid problems short and stable.
fn push_grid_error(errors: &mut Vec<String>, section: &str, e: mwlp::Error) {
    let text = e.to_string();
    if text.contains("divisible") {
        errors.push(format!("{section}: m must be divisible by T ({text})"));
    } else {
        errors.push(format!("{section}: {text}"));
    }
}

fn family(n: usize, c: &CubeConfig) -> mwlp::Result<CubeFamily> {
    let mut f = CubeFamily::default_for_dim(n);
    if let Some(v) = c.j_min {
        f.j_min = v;
    }
    if let Some(v) = c.j_max {
        f.j_max = v;
    }
    if let Some(v) = c.half_width {
        f.half_width = v;
    }
    if let Some(v) = c.base {
        f.base = v;
    }
    if let Some(v) = c.window {
        f.window = (v >= 0.0).then_some(v);
    }
    if let Some(v) = c.q {
        f.q = v;
    }
    f.validate()?;
    Ok(f)
}

pub fn partition(pc: &PartitionConfig) -> mwlp::Result<DyadicPartition> {
    make_partition(pc.c1, pc.c2, (pc.j_range[0], pc.j_range[1]), pc.profile)
}

fn grid_from(n: usize, g: &GridConfig, default: TorusGrid) -> mwlp::Result<TorusGrid> {
    TorusGrid::new(n, g.period.unwrap_or(default.period), g.m.unwrap_or(default.m))
}

/// The Besov grid: by default `T = 2048`, `m = 16384` in 1-D, wide enough for
/// the `j = -3` kernels and fine enough for `j = 3`.
pub fn besov_grid(b: &BesovConfig, n: usize) -> mwlp::Result<TorusGrid> {
    let default = if n == 1 {
        TorusGrid { n, period: 2048, m: 16384 }
    } else {
        TorusGrid { n, period: 256, m: 1024 }
    };
    grid_from(n, &b.grid, default)
}

impl ExperimentConfig {
    /// Ambient dimensions of the configured weights, ascending.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.weights.iter().map(|w| w.n).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn grid_for(&self, n: usize) -> mwlp::Result<TorusGrid> {
        grid_from(n, &self.grid, TorusGrid::default_for_dim(n))
    }

    /// The cube family in dimension `n`, with `over` replacing the global overrides.
    pub fn family_for(&self, n: usize, over: Option<&CubeConfig>) -> mwlp::Result<CubeFamily> {
        family(n, over.unwrap_or(&self.cubes))
    }
}
