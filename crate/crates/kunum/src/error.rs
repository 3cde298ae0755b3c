//! Error type shared by every module.

use thiserror::Error;

use crate::lattice::LatticeVector;

pub type Result<T> = std::result::Result<T, Error>;

/// Which hypothesis of the inductive non-emptiness criterion failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    /// A leaf class is not in the base set.
    A,
    /// Primitivity, norm, or the global-dimension guard.
    B,
    /// The Pick pieces do not pair negatively.
    C,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Condition::A => "a",
            Condition::B => "b",
            Condition::C => "c",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector {0} is not primitive")]
    NotPrimitive(LatticeVector),
    #[error("vector {0} has norm at most 1; the Pick pair is undefined")]
    UnitVector(LatticeVector),
    #[error("exhaustive search for {v} found {found} Pick pairs")]
    OracleContradiction { v: LatticeVector, found: usize },
    #[error("triangle needs cross(v, w) > 0, got {0}")]
    NonPositiveOrientation(i128),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("bilinear form is degenerate")]
    Degenerate,
    #[error("bilinear form is not negative semi-definite")]
    NotNegative,
    #[error("form and Serre operator are not compatible")]
    Incompatible,
    #[error("Serre operator has determinant {0}, expected 1")]
    NotUnimodular(i128),
    #[error("Serre operator has trace {0}; it fixes a vector up to sign")]
    FixedVector(i64),

    #[error("chern arithmetic produced a non-integral Euler characteristic {numerator}/6")]
    IntegralityViolation { numerator: i128 },
    #[error("character is not in the span of alpha and beta (residual {residual})")]
    NotInKuSpan { residual: String },

    #[error("no catalog entry for index {index}, degree {degree}{note}")]
    Uncovered { index: u32, degree: u32, note: String },
    #[error("entry {0} is not certifiable")]
    NonCertifiableEntry(String),
    #[error("condition ({which}) fails at {at}: {detail}")]
    ConditionFailed { which: Condition, at: LatticeVector, detail: String },

    #[error("the zero class is not allowed here")]
    ZeroClass,
    #[error("class ({n},{m}) is outside the required sextant")]
    OutOfSextant { n: i64, m: i64 },
    #[error("branch {branch} does not match sextant {sextant}")]
    BranchMismatch { branch: i64, sextant: i64 },
    #[error("quiver needs at least two arrows from vertex 2 to vertex 1, got {0}")]
    TooFewArrows(i64),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("sum bound {0} is below 6")]
    BoundTooSmall(i64),
    #[error("sum {0} is excluded from the prime-witness construction")]
    ExcludedSum(i64),
    #[error("{0:?} is not a node of the graph")]
    NotInGraph((i64, i64)),
    #[error("no path from {0:?} to {1:?}")]
    Unreachable((i64, i64), (i64, i64)),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrimitive(_) => "not_primitive",
            Error::UnitVector(_) => "unit_vector",
            Error::OracleContradiction { .. } => "oracle_contradiction",
            Error::NonPositiveOrientation(_) => "non_positive_orientation",
            Error::Overflow(_) => "overflow",
            Error::Degenerate => "degenerate",
            Error::NotNegative => "not_negative",
            Error::Incompatible => "incompatible",
            Error::NotUnimodular(_) => "not_unimodular",
            Error::FixedVector(_) => "fixed_vector",
            Error::IntegralityViolation { .. } => "integrality_violation",
            Error::NotInKuSpan { .. } => "not_in_ku_span",
            Error::Uncovered { .. } => "uncovered",
            Error::NonCertifiableEntry(_) => "non_certifiable_entry",
            Error::ConditionFailed { .. } => "condition_failed",
            Error::ZeroClass => "zero_class",
            Error::OutOfSextant { .. } => "out_of_sextant",
            Error::BranchMismatch { .. } => "branch_mismatch",
            Error::TooFewArrows(_) => "too_few_arrows",
            Error::PreconditionFailed(_) => "precondition_failed",
            Error::BoundTooSmall(_) => "bound_too_small",
            Error::ExcludedSum(_) => "excluded_sum",
            Error::NotInGraph(_) => "not_in_graph",
            Error::Unreachable(..) => "unreachable",
            Error::Parse { .. } => "parse",
            Error::Internal(_) => "internal",
        }
    }

    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::OracleContradiction { .. }
                | Error::IntegralityViolation { .. }
                | Error::Overflow(_)
                | Error::Unreachable(..)
                | Error::Internal(_)
        )
    }
}
