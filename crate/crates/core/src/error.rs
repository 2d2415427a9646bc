use crate::rootsys::Weight;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid Cartan datum: {0}")]
    InvalidDatum(String),

    #[error("invalid real form: {0}")]
    InvalidRealForm(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid generator key {key}: {reason}")]
    InvalidKey { key: Weight, reason: String },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("regularity is only decided for exact (rational) torus points")]
    InexactPoint,

    #[error("singular torus point: the factor for root {root} vanishes")]
    Singular { root: Weight },

    #[error(
        "limit direction hits the singular locus at scale {scale:e}; choose another direction"
    )]
    GuardTripped { scale: f64 },

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),
}

impl Error {
    /// True for failures caused by evaluating at a point on a root wall.
    pub fn is_singular(&self) -> bool {
        matches!(self, Error::Singular { .. } | Error::GuardTripped { .. })
    }

    pub(crate) fn parse(what: &'static str, input: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.into(),
        }
    }
}
