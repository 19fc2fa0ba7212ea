//! Brute-force ground truth over small finite fields.
//!
//! Point counts come from exhaustive enumeration; closed-point and divisor
//! counts, L-polynomials and the comparison with specialized symbolic zeta
//! functions are derived from them.

pub mod counting;
pub mod curve;
pub mod field;
pub mod pipeline;
pub mod weil;

use thiserror::Error;

use crate::ring::RingError;
use crate::series::SeriesError;
use crate::zeta::ZetaError;

pub use counting::{
    closed_point_counts, divisor_counts_from_point_counts, effective_divisor_counts, effective_divisor_series,
    remove_closed_point, to_big,
};
pub use curve::{CurveKind, CurveModel, DEFAULT_BUDGET};
pub use field::FiniteField;
pub use pipeline::{scissor_check, verify_model, ModelVerification, ScissorReport};
pub use weil::{pic0_order, verify_specialization, weil_zeta_from_counts, VerificationReport, ZetaProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid extension degree {0}")]
    InvalidExtensionDegree(u32),
    #[error("field of order {p}^{e} exceeds the cap {cap}")]
    FieldTooLarge { p: u64, e: u32, cap: u64 },
    #[error("counting over degree-{m} extension exceeds the budget of {budget} evaluations")]
    BudgetExceeded { m: u32, budget: u64 },
    #[error("hyperelliptic models need odd characteristic")]
    CharacteristicTwo,
    #[error("f is not squarefree")]
    NotSquarefree,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("f has even degree {0}")]
    EvenDegree(u32),
    #[error("plane polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("coefficient {0} does not encode a field element")]
    CoefficientOutOfRange(i64),
    #[error("declared genus {declared} but the model has genus {computed}")]
    GenusMismatch { declared: u32, computed: u32 },
    #[error("{0:?} is not a rational point of the curve")]
    PointNotOnCurve([u32; 3]),
    #[error("point counts are inconsistent at index {index}")]
    InconsistentCounts { index: usize },
    #[error("coefficient {index} is not an integer")]
    NotIntegral { index: usize },
    #[error("functional equation fails at coefficient {index}")]
    FunctionalEquationViolated { index: usize },
    #[error("N_{m} violates the Weil bound")]
    WeilBoundViolated { m: usize },
    #[error("need {needed} point counts, got {got}")]
    InsufficientCounts { needed: usize, got: usize },
    #[error("form is over F_{form} but the profile is over F_{profile}")]
    FieldMismatch { form: u64, profile: u64 },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
}

impl OracleError {
    /// Structured name of the error, the innermost one for wrapped errors.
    pub fn name(&self) -> &'static str {
        match self {
            OracleError::NotPrime(_) => "NotPrime",
            OracleError::NotPrimePower(_) => "NotPrimePower",
            OracleError::InvalidExtensionDegree(_) => "InvalidExtensionDegree",
            OracleError::FieldTooLarge { .. } => "FieldTooLarge",
            OracleError::BudgetExceeded { .. } => "BudgetExceeded",
            OracleError::CharacteristicTwo => "CharacteristicTwo",
            OracleError::NotSquarefree => "NotSquarefree",
            OracleError::ZeroPolynomial => "ZeroPolynomial",
            OracleError::EvenDegree(_) => "EvenDegree",
            OracleError::NotHomogeneous => "NotHomogeneous",
            OracleError::CoefficientOutOfRange(_) => "CoefficientOutOfRange",
            OracleError::GenusMismatch { .. } => "GenusMismatch",
            OracleError::PointNotOnCurve(_) => "PointNotOnCurve",
            OracleError::InconsistentCounts { .. } => "InconsistentCounts",
            OracleError::NotIntegral { .. } => "NotIntegral",
            OracleError::FunctionalEquationViolated { .. } => "FunctionalEquationViolated",
            OracleError::WeilBoundViolated { .. } => "WeilBoundViolated",
            OracleError::InsufficientCounts { .. } => "InsufficientCounts",
            OracleError::FieldMismatch { .. } => "FieldMismatch",
            OracleError::Ring(e) => e.name(),
            OracleError::Series(e) => e.name(),
            OracleError::Zeta(e) => e.name(),
        }
    }
}
