use thiserror::Error;

use crate::field::Field;
use crate::unipoly::UniPoly;

/// Every failure the library can report.
///
/// Variants fall into four groups that the command-line front end maps onto
/// exit codes: input errors, automorphism rejection, resource caps, and the
/// extension-field refutation `NonInvertible`.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("{0}: zero polynomial not allowed")]
    ZeroInput(&'static str),

    #[error("requested degree {requested} is below the total degree {actual}")]
    DegreeTooSmall { requested: usize, actual: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid extension modulus: {0}")]
    BadModulus(String),

    #[error("element not invertible; modulus has factor {witness}")]
    NonInvertible { field: Field, witness: UniPoly },

    #[error("division by zero")]
    DivisionByZero,

    #[error("coefficient {0} is not representable in the chosen field")]
    NotRepresentable(String),

    #[error("operation unsupported over this field: {0}")]
    Unsupported(String),

    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: &'static str, limit: usize, trace: Vec<String> },

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("point is not on the curve")]
    PointNotOnCurve,

    #[error("curves share a component through the point")]
    CommonComponent,

    #[error("curve contains a boundary component")]
    BoundaryComponent,

    #[error("chain is not reduced")]
    ChainNotReduced,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Whether this is one of the configurable-cap failures.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}
