//! Exact arithmetic in a cyclotomic field Q(zeta_m).
//!
//! Everything downstream (polynomial coefficients, matrix entries, character
//! values) lives in one field fixed by the group specification. Mixing
//! conductors is an error, never an implicit field extension.

mod cycnum;
mod linalg;
mod matrix;
mod table;

pub use cycnum::CycNum;
pub use linalg::{EchelonBasis, SparseVec};
pub use matrix::Matrix;
pub use table::{euler_phi, table, CycloTable, MAX_CONDUCTOR};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
}
