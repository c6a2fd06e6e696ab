use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^61")]
    InvalidCharacteristic(u64),
    #[error("denominator is not invertible in the field")]
    NonInvertible,
    #[error("malformed scalar {0:?}")]
    BadScalar(String),
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown identifier {name:?} at byte {position}")]
    UnknownIdentifier { name: String, position: usize },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("invalid form data: {0}")]
    InvalidForm(String),
    #[error("form entry {ell} is not homogeneous of degree {expected}")]
    NotHomogeneous { ell: usize, expected: u32 },
    #[error(
        "rule budget of {cap} exceeded; completion was quiescent below degree {completed_below}"
    )]
    BudgetExceeded { cap: usize, completed_below: usize },
    #[error("degree {degree} exceeds the completed bound {bound}")]
    DegreeAboveBound { degree: usize, bound: usize },
    #[error("invalid matrix representation: {0}")]
    InvalidRep(String),
    #[error("representation does not satisfy the defining relations")]
    UnverifiedRep,
    #[error("candidate space of {candidates} tuples exceeds the cap {cap}")]
    CandidateSpaceTooLarge { candidates: String, cap: u64 },
    #[error("exhaustive search needs a prime field")]
    ExhaustiveOverRationals,
    #[error("this operation needs a binary form (n = 2), got n = {0}")]
    NotBinary(usize),
    #[error("module of rank zero")]
    DegenerateModule,
    #[error("invalid graded module: {0}")]
    InvalidModule(String),
    #[error("genus cannot be computed: {0}")]
    GenusUnavailable(String),
    #[error("curve degree {curve} does not match form degree {form}")]
    DegreeMismatch { curve: u32, form: u32 },
    #[error("module has nonzero splitting type; no representation in this basis")]
    NonzeroSplitting,
    #[error("verification routes disagree")]
    RouteDisagreement,
}

impl Error {
    /// Stable machine-readable code used in JSON error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidCharacteristic(_) => "invalid_characteristic",
            Error::NonInvertible => "non_invertible",
            Error::BadScalar(_) => "bad_scalar",
            Error::Syntax { .. } => "syntax_error",
            Error::UnknownIdentifier { .. } => "unknown_identifier",
            Error::FieldMismatch => "field_mismatch",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::ExponentOverflow => "exponent_overflow",
            Error::InvalidForm(_) => "invalid_form",
            Error::NotHomogeneous { .. } => "not_homogeneous",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::DegreeAboveBound { .. } => "degree_above_bound",
            Error::InvalidRep(_) => "invalid_rep",
            Error::UnverifiedRep => "unverified_rep",
            Error::CandidateSpaceTooLarge { .. } => "candidate_space_too_large",
            Error::ExhaustiveOverRationals => "exhaustive_over_rationals",
            Error::NotBinary(_) => "not_binary",
            Error::DegenerateModule => "degenerate_module",
            Error::InvalidModule(_) => "invalid_module",
            Error::GenusUnavailable(_) => "genus_unavailable",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::NonzeroSplitting => "nonzero_splitting",
            Error::RouteDisagreement => "route_disagreement",
        }
    }

    /// Byte offset into the parsed text, for parse errors.
    pub fn position(&self) -> Option<usize> {
        match self {
            Error::Syntax { position, .. } | Error::UnknownIdentifier { position, .. } => {
                Some(*position)
            }
            _ => None,
        }
    }
}
