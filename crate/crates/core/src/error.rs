use num::BigRational;
use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// The exceptional lattice is not negative definite, so the curve
    /// configuration cannot be contracted to a normal surface point.
    #[error("configuration is not contractible (intersection lattice not negative definite)")]
    NotContractible,

    #[error("invalid blow-up location: {0}")]
    InvalidLocation(String),

    #[error("invalid continued-fraction chain: every entry must be at least 2")]
    InvalidChain,

    /// The extraction is not purely log terminal. `log_canonical` is set
    /// when the maximal contracted coefficient is exactly 1 (log
    /// canonical but not plt), as opposed to strictly larger than 1.
    #[error("extraction is not purely log terminal (max contracted coefficient {max_coefficient}{})",
            if *.log_canonical { ", log canonical boundary case" } else { "" })]
    NotPlt {
        max_coefficient: BigRational,
        log_canonical: bool,
    },

    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    /// The boundary degree is at least 2, so the anticanonical divisor of
    /// the marked curve is not ample.
    #[error("pair is not log Fano (boundary degree {degree} >= 2)")]
    NotLogFano { degree: BigRational },

    #[error("invalid boundary coefficient {0}: must lie in [0, 1)")]
    InvalidCoefficient(BigRational),

    /// More than one component with α ≥ 1/2 was found. This signals
    /// either an implementation bug or a genuine counterexample to
    /// semistable uniqueness; it must halt any sweep loudly.
    #[error("semistable uniqueness violated: {0}")]
    UniquenessViolated(String),
}
