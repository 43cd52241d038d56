//! Exact arithmetic over finite fields and the polynomial algebra built on it.

pub mod bipoly;
pub mod eliminate;
pub mod factor;
pub mod field;
pub mod mpoly;
pub mod poly;
pub mod resultant;
pub mod tower;

pub use bipoly::{factor_binary_form, BiPoly, BinaryFactor};
pub use eliminate::{eliminate, Solution};
pub use factor::{factor_univariate, roots, Factorization};
pub use field::{Fe, Field};
pub use mpoly::{LocalPoly, MPoly};
pub use poly::UPoly;
pub use tower::{Embedding, FieldTower};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("identically zero")]
    IdenticallyZero,
    #[error("positive-dimensional")]
    PositiveDimensional,
    #[error("extension budget exceeded")]
    ExtensionBudget,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field too large")]
    FieldTooLarge,
    #[error("no embedding of {0} into {1}")]
    NoEmbedding(String, String),
    #[error("degree mismatch")]
    DegreeMismatch,
}
