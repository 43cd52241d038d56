//! E8 root-system combinatorics: subsystems, quotient invariants and the
//! torsion conditions deciding which configurations occur.

pub mod ade;
pub mod e8;
pub mod occurrence;
pub mod snf;
pub mod subsystems;

pub use ade::{max_coindex, AdeType, Dynkin, Letter, RdpClass, RdpConfiguration};
pub use e8::{e8, E8};
pub use occurrence::{decide_occurrence, CatalogHit, Membership, Occurrence, Rationale, Witness};
pub use snf::smith_normal_form;
pub use subsystems::{
    check_conditions, classes_of, embeddable_types, enumerate_subsystems, quotient_invariants, type_of_basis,
    ConditionFlags, SubsystemClass,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("not a basis")]
    NotABasis,
    #[error("invalid ADE type: {0}")]
    BadType(String),
    #[error("no such singularity in characteristic {1}: {0}")]
    NoSuchSingularity(String, u64),
    #[error("coindex required for {0} in characteristic {1}")]
    MissingCoindex(String, u64),
    #[error("cannot parse '{0}': {1}")]
    Syntax(String, String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
