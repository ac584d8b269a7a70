use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("model mismatch: expected dimension {expected}, got {found}")]
    ModelMismatch { expected: usize, found: usize },
    #[error("structure mismatch: {0} vs {1}")]
    StructureMismatch(String, String),
    #[error("matrix is not hermitian (deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("matrix is not normal (commutator {0:.3e})")]
    NotNormal(f64),
    #[error("element is not normal (residual {0:.3e})")]
    NotNormalElement(f64),
    #[error("eigensolver did not converge (residual {0:.3e})")]
    NoConvergence(f64),
    #[error("singular system")]
    Singular,
    #[error("element is not invertible (smallest singular value {0:.3e})")]
    NotInvertible(f64),
    #[error("element is not a tripotent (residual {0:.3e})")]
    NotTripotent(f64),
    #[error("element is not unitary (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("spectrum touches the branch cut (eigenvalue at distance {0:.3e} from the cut)")]
    BranchCut(f64),
    #[error("unitaries too far apart (distance {0:.6})")]
    TooFar(f64),
    #[error("no spectral gap (minimum gap {0:.3e})")]
    NoSpectralGap(f64),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("logarithm branch test failed for generator {0}")]
    LogBranchFailure(usize),
    #[error("recovered element is not a central symmetry (residual {0:.3e})")]
    CentralSymmetryFailure(f64),
    #[error("extension does not match the isometry (sup {0:.3e})")]
    ExtensionMismatch(f64),
    #[error("parameter {t} outside the path domain [-{half_width}, {half_width}]")]
    DomainExceeded { t: f64, half_width: f64 },
    #[error("branch cut persisted after {0} halvings")]
    BranchCutExhausted(usize),
    #[error("group law violated (residual {0:.3e})")]
    GroupLawViolated(f64),
    #[error("operator is not complex-linear")]
    NotComplexLinear,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
