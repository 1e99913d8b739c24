use thiserror::Error;

/// Errors raised by the numerical pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("density has no positive mass (or a value below -1e-14)")]
    AllZeroDensity,

    #[error("grid too coarse: axis {axis} has {count} points, need at least {needed}")]
    GridTooCoarse {
        axis: usize,
        count: usize,
        needed: usize,
    },

    #[error("noise kernel wider than grid: 6 sd = {width} exceeds half extent {half_extent}")]
    KernelWiderThanGrid { width: f64, half_extent: f64 },

    #[error("amplitude is not normalized: squared L2 norm = {0}")]
    NotNormalized(f64),

    #[error("support exceeds grid: {0}")]
    SupportExceedsGrid(String),

    #[error("box is empty or does not intersect the grid")]
    EmptyBox,

    #[error("integral of density^{q} is not representable ({value})")]
    NonIntegrablePower { q: f64, value: f64 },

    #[error("q-exponential argument 1 + (1-q) S = {0} is outside [0, inf)")]
    QExpDomain(f64),

    #[error("derivative extrapolation unstable: residual {residual} exceeds {limit}")]
    DerivativeUnstable { residual: f64, limit: f64 },

    #[error("information values span less than 1e-12 bits")]
    DegenerateSupport,

    #[error("entropy-power ladder has {have} entries, need {need}")]
    InsufficientLadder { have: usize, need: usize },

    #[error("reference mean mismatch: |kappa1 - gamma1| = {0}")]
    ReferenceMismatch(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed grid file: {0}")]
    Format(String),
}

impl Error {
    /// Variant name, as reported on stderr by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::AllZeroDensity => "AllZeroDensity",
            Error::GridTooCoarse { .. } => "GridTooCoarse",
            Error::KernelWiderThanGrid { .. } => "KernelWiderThanGrid",
            Error::NotNormalized(_) => "NotNormalized",
            Error::SupportExceedsGrid(_) => "SupportExceedsGrid",
            Error::EmptyBox => "EmptyBox",
            Error::NonIntegrablePower { .. } => "NonIntegrablePower",
            Error::QExpDomain(_) => "QExpDomain",
            Error::DerivativeUnstable { .. } => "DerivativeUnstable",
            Error::DegenerateSupport => "DegenerateSupport",
            Error::InsufficientLadder { .. } => "InsufficientLadder",
            Error::ReferenceMismatch(_) => "ReferenceMismatch",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::InvalidGrid(_) => "InvalidGrid",
            Error::Io(_) => "Io",
            Error::Format(_) => "Format",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
