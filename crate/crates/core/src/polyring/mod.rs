//! Polynomials over a cyclotomic field and the exterior algebra of
//! polynomial-coefficient differential forms.

mod form;
mod json;
mod monomial;
mod parse;
mod poly;
mod substitute;

pub use form::{complement, merge_sign, multiindices, DiffForm, Multiindex};
pub use json::{poly_from_json, poly_to_json, FormJson, TermJson};
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use poly::{jacobian_det, poly_det, var_name, MPoly};
pub use substitute::{LinearChange, Substitution};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("number of variables differs: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("form degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("not divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("not homogeneous")]
    NotHomogeneous,
    #[error("expected {expected} items, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("singular coordinate change")]
    Singular,
    #[error("bad multiindex: {0}")]
    BadIndex(String),
    #[error("parse error: {0}")]
    Parse(String),
}
