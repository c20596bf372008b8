//! Finite abelian groups, `Z_n`, `F_q`, additive characters and polynomial
//! evaluation.

mod field;
mod group;
mod structure;

use thiserror::Error;

pub use field::{is_irreducible, FiniteField};
pub use group::{abelian_groups_up_to, GroupElement, GroupSpec, MAX_ORDER};
pub use structure::{
    partial_char_sum, ramanujan_sum_exact_order, root_of_unity, roots_of_unity, Character,
    DomainForm, DomainSpec, PolySpec, RingSpec, Structure,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("reducible modulus {0}")]
    ReducibleModulus(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("mismatched structure: {0}")]
    Mismatch(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomials need a ring, not a bare group")]
    NotARing,
}

/// `F_{p^t}`, using the default modulus when none is given.
pub fn build_field(p: u64, t: usize, modulus: Option<Vec<u64>>) -> Result<FiniteField, AlgebraError> {
    FiniteField::build(p, t, modulus)
}
