//! Exact computation of semiinvariant differential forms of finite unitary
//! reflection groups.
//!
//! The crate is layered: [`exactnum`] provides cyclotomic arithmetic,
//! [`polyring`] polynomials and differential forms over it, [`reflgroup`] the
//! finite group with its arrangement and characters, [`semiinv`] the
//! χ-isotypic forms with the χ-wedge, and [`logforms`] the logarithmic-form
//! membership tests.

pub mod exactnum;
pub mod golden;
pub mod polyring;
pub mod reflgroup;
pub mod logforms;
pub mod semiinv;
