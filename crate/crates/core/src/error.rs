use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e})")]
    NonHermitian { asymmetry: f64 },
    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:.3e}, guard {guard:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64, guard: f64 },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("weight is singular at {point:?}")]
    SingularPoint { point: Vec<f64> },
    #[error("dilation factor must be positive and finite, got {0}")]
    NonPositiveScale(f64),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cube family is empty")]
    EmptyFamily,
    #[error("exponent p = {0} is outside the admissible range of this estimator")]
    ExponentOutOfRange(f64),
    #[error("cube integral of the scalar weight vanished at center {center:?}, side {side}")]
    ZeroMass { center: Vec<f64>, side: f64 },
    #[error("field and multiplier live on different grids")]
    GridMismatch,
    #[error("no frequency node lies in the band of radius {0}")]
    EmptyBand(f64),
    #[error("offset {0:?} is not aligned with the grid spacing or not in [-1/2, 1/2)^n")]
    OffsetNotOnGrid(Vec<f64>),
    #[error("band radius {0} exceeds 1")]
    BandTooLarge(f64),
    #[error("decay fit diverges: constant grew by {growth:.3} when the period doubled (M = {exponent})")]
    DivergentFit { exponent: f64, growth: f64 },
    #[error("lattice sum diverges: exponent {exponent} must exceed the dimension {n}")]
    Divergent { n: usize, exponent: f64 },
    #[error("hypothesis violated: need M > (n + beta)/p = {threshold:.6}, got M = {m}")]
    HypothesisViolated { m: f64, threshold: f64 },
    #[error("field has zero weighted norm")]
    ZeroNorm,
    #[error("field is not bandlimited to radius {radius} (out-of-band ratio {ratio:.3e})")]
    BandViolation { radius: f64, ratio: f64 },
    #[error("annuli leave a coverage gap: need c2 > 2 c1, got c1 = {c1}, c2 = {c2}")]
    CoverageGap { c1: f64, c2: f64 },
    #[error("bump profile vanishes on its support")]
    DegenerateBump,
    #[error("i/o failure: {0}")]
    Io(String),
    #[error("malformed data: {0}")]
    Format(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonHermitian { .. } => "NonHermitian",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::NonFinite => "NonFinite",
            Error::SingularPoint { .. } => "SingularPoint",
            Error::NonPositiveScale(_) => "NonPositiveScale",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::EmptyFamily => "EmptyFamily",
            Error::ExponentOutOfRange(_) => "ExponentOutOfRange",
            Error::ZeroMass { .. } => "ZeroMass",
            Error::GridMismatch => "GridMismatch",
            Error::EmptyBand(_) => "EmptyBand",
            Error::OffsetNotOnGrid(_) => "OffsetNotOnGrid",
            Error::BandTooLarge(_) => "BandTooLarge",
            Error::DivergentFit { .. } => "DivergentFit",
            Error::Divergent { .. } => "Divergent",
            Error::HypothesisViolated { .. } => "HypothesisViolated",
            Error::ZeroNorm => "ZeroNorm",
            Error::BandViolation { .. } => "BandViolation",
            Error::CoverageGap { .. } => "CoverageGap",
            Error::DegenerateBump => "DegenerateBump",
            Error::Io(_) => "IoFailure",
            Error::Format(_) => "Format",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
