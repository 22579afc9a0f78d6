use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field: {0}")]
    Field(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("relation is not admissible: {0}")]
    NotAdmissible(String),

    #[error("ideal is not nilpotent at length cap {cap}; raise length_cap")]
    CapTooSmall { cap: usize },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("knitting exceeded {cap} modules; algebra looks representation-infinite")]
    NotRepresentationFinite { cap: usize },

    #[error("strategy does not apply: {0}")]
    StrategyMismatch(String),

    #[error("inconsistent decomposition: {0}")]
    InconsistentDecomposition(String),

    #[error("presentation does not present the given module")]
    PresentationMismatch,

    #[error("module is not silting: {0}")]
    NotSilting(String),

    #[error("module is not partial silting with respect to the given presentation")]
    NotPartialSilting,

    #[error("approximation certification failed: {0}")]
    ApproximationFailure(String),

    #[error("certification failed: {0}")]
    CertificationFailure(String),

    #[error("routes disagree on {what}: {detail}")]
    VerdictDisagreement { what: String, detail: String },

    #[error("degree {0} is outside -1..=1 for two-term complexes")]
    DegreeOutOfRange(i32),

    #[error("H0 bijection check failed: {0}")]
    BijectionFailure(String),

    #[error("Hom-orthogonality fails between catalog members {torsion} and {free}")]
    OrthogonalityFailure { torsion: usize, free: usize },

    #[error("trace filtration fails for catalog member {member}: {reason}")]
    FiltrationFailure { member: usize, reason: String },

    #[error("parse error in {file}: field `{field}`: {reason}")]
    Parse {
        file: String,
        field: String,
        reason: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Failures that indicate a broken invariant rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::VerdictDisagreement { .. }
                | Error::ApproximationFailure(_)
                | Error::CertificationFailure(_)
                | Error::BijectionFailure(_)
                | Error::InconsistentDecomposition(_)
        )
    }

    pub(crate) fn parse(file: &str, field: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            file: file.to_string(),
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
