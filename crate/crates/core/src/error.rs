use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("denominator vanishes at the given assignment")]
    DenominatorVanishes,
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("Möbius matrix is singular")]
    SingularMatrix,
    #[error("point is indeterminate (0/0) after substitution")]
    IndeterminatePoint,
    #[error("divergent symbol {symbol}: {reason}")]
    DivergentSymbol { symbol: String, reason: String },
    #[error("degenerate frame: base equals end in {0}")]
    DegenerateFrame(String),
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("symbol is not of depth two: {0}")]
    NotDepthTwo(String),
    #[error("arguments outside the series convergence domain: {0}")]
    OutOfDomain(String),
    #[error("formal cancellation failed for n = {n}: {detail}")]
    CancellationFailure { n: usize, detail: String },
    #[error("path passes within {distance:.3e} of a pole (clearance {clearance:.3e})")]
    PathTooClose { distance: f64, clearance: f64 },
    #[error("divergent symbol {0} needs an epsilon deformation")]
    DivergenceWithoutEpsilon(String),
    #[error("no admissible configuration after {0} attempts")]
    SamplingExhausted(usize),
    #[error("quotient-layer identities cannot be verified numerically")]
    QuotientLayerRejected,
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn divergent(symbol: impl ToString, reason: impl Into<String>) -> Self {
        Error::DivergentSymbol {
            symbol: symbol.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
