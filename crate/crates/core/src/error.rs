use thiserror::Error;

use crate::Rat;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("invalid resolution graph: {0}")]
    InvalidGraph(String),

    #[error("intersection matrix is not negative definite")]
    NotContractible,

    #[error("intersection matrix is singular")]
    SingularSystem,

    #[error("pair is not log canonical (solved coefficient {0} exceeds 1)")]
    NotLogCanonical(Rat),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("differents of the conductor branches disagree: {left} vs {right}")]
    GlueMismatch { left: Rat, right: Rat },

    #[error("no gluing involution or isomorphism of the conductors was supplied")]
    NoGluingMap,

    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRat { input: String, reason: String },
}

pub(crate) fn bad(msg: impl Into<String>) -> Error {
    Error::BadParameters(msg.into())
}
