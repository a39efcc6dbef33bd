use thiserror::Error;

use crate::algebra::Diagnostic;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("{what} exceeds bound: needs {needed}, limit {limit}")]
    BoundExceeded {
        what: String,
        needed: u128,
        limit: u128,
    },

    #[error("not a refinement: {0}")]
    NotRefinement(String),

    #[error("not a congruence: {0}")]
    NotCongruence(String),

    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),

    #[error("no preimage for `{element}` at sort `{sort}`")]
    NoPreimage { sort: String, element: String },

    #[error("sort mismatch: {0}")]
    SortMismatch(String),

    #[error("invalid sorted set: {0}")]
    InvalidSortedSet(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid algebra: {}", format_diagnostics(.0))]
    InvalidAlgebra(Vec<Diagnostic>),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("generator mismatch: {0}")]
    GeneratorMismatch(String),

    #[error("{0}")]
    Parse(#[from] crate::term::ParseError),
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
