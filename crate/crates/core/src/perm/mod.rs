//! Permutation groups: elements, stabilizer chains, conjugacy classes and constructions.

mod backtrack;
pub mod builtin;
mod chain;
mod classes;
mod group;
mod permutation;
mod products;

pub use chain::{ChainOptions, StabChain};
pub use classes::{ClassStrategy, ClassTable, ConjClass, ClassOptions};
pub use group::{generates, PermGroup};
pub use permutation::{parse_cycles, Permutation};
pub use products::{block_swap, direct_product, hat_group, restrict_block, wreath, wreath_symmetric};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("permutation degree must be positive")]
    EmptyDegree,
    #[error("image list is not a bijection")]
    NotBijection,
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("element {0} is not in the group")]
    NotMember(String),
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u128, cap: u128 },
    #[error("randomized class search gave up after {0} samples")]
    SearchExhausted(usize),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}
