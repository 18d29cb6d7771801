//! Finite unitary reflection groups: closure from generators, the
//! reflection arrangement, multiplicative characters and isotypic
//! dimensions.

mod arrangement;
mod character;
mod element;
mod group;
mod molien;
mod spec;

pub use arrangement::Hyperplane;
pub use character::{Character, CharacterSpec};
pub use element::GroupElement;
pub use group::{ReflectionGroup, DEFAULT_CAP};
pub use molien::{complete_symmetric, elementary_symmetric, explicit_trace, hilbert_series, isotypic_dim, isotypic_series};
pub use spec::GroupSpec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator matrices must be square")]
    NotSquare,
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("generator {index} is not unitary")]
    GeneratorNotUnitary { index: usize },
    #[error("reflections generate a subgroup of order {generated}, but the group has order {order}")]
    NotReflectionGroup { generated: usize, order: usize },
    #[error("generator {index} has the wrong dimension")]
    DimensionMismatch { index: usize },
    #[error("generator {index} uses a different conductor")]
    ConductorMismatch { index: usize },
    #[error("element of infinite order")]
    InfiniteOrder,
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("closure is not closed under inverses")]
    NotClosed,
    #[error("invalid character: {0}")]
    Character(String),
    #[error("arithmetic inconsistency: {0}")]
    Arithmetic(String),
    #[error("invalid group specification: {0}")]
    Spec(String),
    #[error("i/o error: {0}")]
    Io(String),
}
