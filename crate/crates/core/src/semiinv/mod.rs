//! χ-isotypic differential forms: `Q_χ`, the twisted Reynolds projection, the
//! χ-wedge, the generator criterion and the generator search.

mod action;
mod basis;
mod certificate;
mod checks;
mod context;
mod duality;
mod generators;
mod sampling;
#[cfg(test)]
mod testing;
mod wedge;

pub use action::GroupActions;
pub use basis::{isotypic_basis, random_form, reynolds_project};
pub use certificate::Certificate;
pub use checks::{
    ah_generator_independent, ah_recurrence_check, local_divisibility_check, product_divisibility_check, stanley_check,
    steinberg_check, top_degree_check, wedge_algebra_check, CheckResult, LocalFailure, Recurrence,
};
pub use context::{q_poly, SemiInvariantContext};
pub use duality::{act_polyvector, derivation_dual, duality_check, form_dual, polyvector_invariance_failure, DualityReport, PolyVector};
pub use generators::{basic_invariants, find_generators, normalize_integral, r_span_contains, weighted_exponents, BasicInvariants, SearchStep};
pub use sampling::{lowest_degrees, Draw, FormSample, SamplePiece};
pub use wedge::{chi_wedge, det_inverse_identity, chi_wedge_all, coefficient_matrix, saito_check, GeneratorCertificate, SaitoFailure};

use thiserror::Error;

use crate::polyring::PolyError;
use crate::reflgroup::GroupError;

#[derive(Debug, Error)]
pub enum SemiError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("form is not semi-invariant under generator {generator}")]
    NotInvariant { generator: usize },
    #[error("exterior product is not divisible by {hyperplane}^{power}")]
    NotDivisible { hyperplane: String, power: u32 },
    #[error("degree cap {cap} reached with {found} of {needed} generators")]
    DegreeCapReached { cap: usize, found: usize, needed: usize },
    #[error("internal assertion failed: {0}")]
    Assertion(String),
    #[error("dimension: {0}")]
    Dimension(String),
}
