//! The χ-wedge `μ ⌣ ω = (μ ∧ ω) / Q_χ` and the top-degree generator criterion.

use serde::Serialize;

use crate::exactnum::CycNum;
use crate::polyring::{poly_det, DiffForm, MPoly};

use super::{SemiError, SemiInvariantContext};

/// `(μ ∧ ω) / Q_χ`. With `check` set, both operands are first tested for
/// χ-invariance against the generators.
pub fn chi_wedge(mu: &DiffForm, w: &DiffForm, ctx: &SemiInvariantContext, check: bool) -> Result<DiffForm, SemiError> {
    if check {
        for f in [mu, w] {
            if let Some(generator) = ctx.actions().invariance_failure(ctx.chi(), f) {
                return Err(SemiError::NotInvariant { generator });
            }
        }
    }
    let prod = mu.wedge(w)?;
    divide_by_q(&prod, ctx)
}

/// Exact division by `Q_χ`; on failure names a hyperplane power that does not divide.
pub(crate) fn divide_by_q(f: &DiffForm, ctx: &SemiInvariantContext) -> Result<DiffForm, SemiError> {
    if let Ok(q) = f.exact_divide(ctx.q_chi()) {
        return Ok(q);
    }
    let g = ctx.group();
    for (h, &a) in g.arrangement().iter().zip(ctx.a()) {
        if a == 0 {
            continue;
        }
        for (_, c) in f.components() {
            if c.divide_out(h.alpha(), a).0 < a {
                return Err(SemiError::NotDivisible {
                    hyperplane: h.alpha().to_string(),
                    power: a,
                });
            }
        }
    }
    Err(SemiError::Assertion(
        "every hyperplane power divides but their product does not".into(),
    ))
}

/// Iterated χ-wedge `ω₁ ⌣ … ⌣ ω_k`, dividing at each step. The empty product is `Q_χ`.
pub fn chi_wedge_all(forms: &[DiffForm], ctx: &SemiInvariantContext) -> Result<DiffForm, SemiError> {
    let mut acc = DiffForm::from_poly(ctx.q_chi().clone());
    for f in forms {
        acc = chi_wedge(&acc, f, ctx, false)?;
    }
    Ok(acc)
}

/// Matrix of coefficients `M[i][j]` = coefficient of `dx_j` in `ω_i`.
pub fn coefficient_matrix(forms: &[DiffForm]) -> Vec<Vec<MPoly>> {
    forms
        .iter()
        .map(|f| (0..f.nvars()).map(|j| f.coeff(&[j as u8])).collect())
        .collect()
}

/// A certified generating set of the χ-invariant 1-forms.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCertificate {
    pub forms: Vec<DiffForm>,
    /// `c` with `ω₁ ⌣ … ⌣ ω_n = c · Q_{χ·det} · vol`.
    pub witness_scalar: CycNum,
    /// Coefficient degrees of the forms.
    pub degrees: Vec<usize>,
}

/// Why a candidate set is not a generating set.
#[derive(Clone, Debug, PartialEq)]
pub enum SaitoFailure {
    WrongCount { expected: usize, found: usize },
    NotOneForm { form: usize },
    NotInvariant { form: usize, generator: usize },
    NotDivisible { step: usize, hyperplane: String, power: u32 },
    ZeroWedge,
    NotMultiple,
}

impl std::fmt::Display for SaitoFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SaitoFailure::WrongCount { expected, found } => write!(f, "expected {expected} forms, got {found}"),
            SaitoFailure::NotOneForm { form } => write!(f, "form {form} is not a homogeneous 1-form"),
            SaitoFailure::NotInvariant { form, generator } => {
                write!(f, "form {form} is not semi-invariant under generator {generator}")
            }
            SaitoFailure::NotDivisible { step, hyperplane, power } => {
                write!(f, "wedge at step {step} is not divisible by ({hyperplane})^{power}")
            }
            SaitoFailure::ZeroWedge => write!(f, "the top wedge vanishes"),
            SaitoFailure::NotMultiple => write!(f, "the top wedge is not a multiple of Q_(chi*det) vol"),
        }
    }
}

/// Tests whether `forms` generate the χ-invariant 1-forms over the invariant ring.
///
/// The iterated χ-wedge is compared with `Q_{χ·det} vol`, and the witness is
/// cross-checked against `det M = c · Q_{χ·det} · Q_χ^{n-1}` for the
/// coefficient matrix `M`.
pub fn saito_check(forms: &[DiffForm], ctx: &SemiInvariantContext) -> Result<Result<GeneratorCertificate, SaitoFailure>, SemiError> {
    let n = ctx.dim();
    let m = ctx.conductor();
    if forms.len() != n {
        return Ok(Err(SaitoFailure::WrongCount { expected: n, found: forms.len() }));
    }
    let mut degrees = Vec::with_capacity(n);
    for (i, f) in forms.iter().enumerate() {
        if f.degree() != 1 || f.nvars() != n || f.conductor() != m {
            return Ok(Err(SaitoFailure::NotOneForm { form: i }));
        }
        match f.coeff_degree() {
            Ok(Some(d)) => degrees.push(d),
            _ => return Ok(Err(SaitoFailure::NotOneForm { form: i })),
        }
        if let Some(generator) = ctx.actions().invariance_failure(ctx.chi(), f) {
            return Ok(Err(SaitoFailure::NotInvariant { form: i, generator }));
        }
    }
    let mut acc = DiffForm::from_poly(ctx.q_chi().clone());
    for (step, f) in forms.iter().enumerate() {
        acc = match chi_wedge(&acc, f, ctx, false) {
            Ok(w) => w,
            Err(SemiError::NotDivisible { hyperplane, power }) => {
                return Ok(Err(SaitoFailure::NotDivisible { step, hyperplane, power }))
            }
            Err(e) => return Err(e),
        };
    }
    if acc.is_zero() {
        return Ok(Err(SaitoFailure::ZeroWedge));
    }
    let target = DiffForm::vol(n, m).mul_poly(ctx.q_chi_det());
    let Some(c) = acc.eq_up_to_scalar(&target) else {
        return Ok(Err(SaitoFailure::NotMultiple));
    };
    // Cross-check through the determinant of the coefficient matrix.
    let det = poly_det(&coefficient_matrix(forms))?;
    let rhs = ctx.q_chi_det() * &ctx.q_chi().pow(n as u32 - 1);
    match det.eq_up_to_scalar(&rhs) {
        Some(c2) if c2 == c => {}
        other => {
            return Err(SemiError::Assertion(format!(
                "determinant witness {other:?} disagrees with wedge witness {c}"
            )))
        }
    }
    let lhs: usize = degrees.iter().sum::<usize>();
    let expected = ctx.q_chi_det().degree().unwrap_or(0) + (n - 1) * ctx.deg_q_chi();
    if lhs != expected {
        return Err(SemiError::Assertion(format!("degree sum {lhs} != {expected}")));
    }
    Ok(Ok(GeneratorCertificate { forms: forms.to_vec(), witness_scalar: c, degrees }))
}

/// For a generating set of the det⁻¹-invariant 1-forms, the plain wedge
/// `μ₁ ∧ … ∧ μ_n` is `c · Q_{det⁻¹}^{n−1} · vol` with `c ≠ 0`.
pub fn det_inverse_identity(cert: &GeneratorCertificate, ctx: &SemiInvariantContext) -> Result<Option<CycNum>, SemiError> {
    let n = ctx.dim();
    let mut acc = DiffForm::from_poly(MPoly::one(n, ctx.conductor()));
    for f in &cert.forms {
        acc = acc.wedge(f)?;
    }
    let target = DiffForm::vol(n, ctx.conductor()).mul_poly(&ctx.q_det_inv().pow(n as u32 - 1));
    Ok(acc.eq_up_to_scalar(&target).filter(|c| !c.is_zero()))
}
