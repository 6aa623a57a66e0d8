//! The run report and its rows.

use mwlp::besov::{DirectedConstant, PartitionDecay};
use mwlp::bound::BoundednessReport;
use mwlp::muckenhoupt::{ApEstimate, DoublingReport};
use mwlp::spectral::DecayFit;
use serde::Serialize;

use crate::config::{ExperimentConfig, Summability};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApRow {
    /// Index into the configured weights.
    pub weight: usize,
    pub p: f64,
    /// `R` of the dilated weight `W(R .)`, evaluated on the family scaled by `1/R`.
    #[serde(rename = "R")]
    pub dilation: f64,
    pub q: usize,
    pub estimate: ApEstimate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoublingRow {
    pub weight: usize,
    pub p: f64,
    pub report: DoublingReport,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplingRow {
    pub field: usize,
    pub offset: f64,
    /// `max |series - phi(D) f| / max |phi(D) f|`.
    pub discrepancy: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SamplingSummary {
    pub symbol: String,
    pub fit: DecayFit,
    pub max_discrepancy: f64,
    pub rows: Vec<SamplingRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplierRow {
    pub weight: usize,
    pub report: BoundednessReport,
    /// Per-field ratios, written to CSV only.
    #[serde(skip)]
    pub ratios: Vec<f64>,
}

/// `p >= 1`, `W = I`: the empirical ratio against the discrete `L^1` norm of the kernel.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct YoungRow {
    pub weight: usize,
    pub p: f64,
    pub symbol: String,
    pub ratio_max: f64,
    pub kernel_l1: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BesovDecay {
    pub partition: String,
    pub decay: PartitionDecay,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BracketShift {
    pub corpus_size: usize,
    pub r_min: f64,
    pub r_max: f64,
    /// `max(r_max' / r_max - 1, r_min / r_min' - 1)`.
    pub shift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BesovRow {
    pub weight: usize,
    pub s: f64,
    pub p: f64,
    pub q: Summability,
    pub corpus_size: usize,
    pub r_min: f64,
    pub r_max: f64,
    /// `r_max / r_min`, bounded by `C_equiv`.
    pub bracket: f64,
    /// The assembled bound `C_{Psi <- Phi} C_{Phi <- Psi}`; not a constant stated in closed form anywhere.
    #[serde(rename = "C_equiv")]
    pub c_equiv: Option<f64>,
    pub psi_from_phi: Option<DirectedConstant>,
    pub phi_from_psi: Option<DirectedConstant>,
    /// `max |r(Psi, Phi) r(Phi, Psi) - 1|` over the corpus.
    pub reciprocity_error: f64,
    pub doubled: Option<BracketShift>,
    #[serde(skip)]
    pub ratios: Vec<f64>,
}

/// The largest relative deviation between a matrix-path result and the scalar path.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossCheck {
    pub pipeline: String,
    pub context: String,
    pub quantity: String,
    pub max_rel_diff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Warning {
    pub pipeline: String,
    pub context: String,
    pub kind: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorEntry {
    pub pipeline: String,
    pub context: String,
    pub kind: String,
    pub message: String,
    /// Structured payload, e.g. `M` and the threshold for a violated hypothesis.
    pub details: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub config: ExperimentConfig,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ap: Vec<ApRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub doubling: Vec<DoublingRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub multiplier: Vec<MultiplierRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub young: Vec<YoungRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub besov_decay: Vec<BesovDecay>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub besov: Vec<BesovRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cross_checks: Vec<CrossCheck>,
    pub warnings: Vec<Warning>,
    pub errors: Vec<ErrorEntry>,
    /// Kept out of the JSON so that reports are byte-identical across runs.
    #[serde(skip)]
    pub wall_time: std::time::Duration,
}

impl RunReport {
    pub fn new(config: ExperimentConfig) -> Self {
        Self {
            config,
            ap: Vec::new(),
            doubling: Vec::new(),
            sampling: None,
            multiplier: Vec::new(),
            young: Vec::new(),
            besov_decay: Vec::new(),
            besov: Vec::new(),
            cross_checks: Vec::new(),
            warnings: Vec::new(),
            errors: Vec::new(),
            wall_time: Default::default(),
        }
    }

    /// 0 on success, 3 when any pipeline reported a numerical error.
    pub fn exit_code(&self) -> i32 {
        if self.errors.is_empty() {
            0
        } else {
            3
        }
    }

    pub fn error(&mut self, pipeline: &str, context: &str, e: &mwlp::Error) {
        let details = match e {
            mwlp::Error::HypothesisViolated { m, threshold } => serde_json::json!({ "M": m, "threshold": threshold }),
            mwlp::Error::DivergentFit { exponent, growth } => serde_json::json!({ "M": exponent, "growth": growth }),
            _ => serde_json::Value::Null,
        };
        self.errors.push(ErrorEntry {
            pipeline: pipeline.into(),
            context: context.into(),
            kind: e.kind().into(),
            message: e.to_string(),
            details,
        });
    }

    pub fn warn(&mut self, pipeline: &str, context: &str, kind: &str, detail: impl Into<String>) {
        self.warnings.push(Warning {
            pipeline: pipeline.into(),
            context: context.into(),
            kind: kind.into(),
            detail: detail.into(),
        });
    }

    pub fn cross_check(&mut self, pipeline: &str, context: &str, quantity: &str, pairs: &[(f64, f64)]) {
        let max_rel_diff = pairs
            .iter()
            .map(|&(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(1.0))
            .fold(0.0, f64::max);
        self.cross_checks.push(CrossCheck {
            pipeline: pipeline.into(),
            context: context.into(),
            quantity: quantity.into(),
            max_rel_diff,
        });
    }
}
