//! The order-1296 rank-three group with its three det³-invariant 1-forms:
//! the stored forms, the printed Q_{det⁴}, and the full verification battery.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exactnum::CycNum;
use crate::polyring::{parse_poly, poly_det, DiffForm, MPoly};
use crate::reflgroup::Character;
use crate::semiinv::{
    basic_invariants, chi_wedge, coefficient_matrix, find_generators, r_span_contains, saito_check, CheckResult,
    GroupActions, SemiError, SemiInvariantContext,
};

/// Coefficients of dx, dy, dz for the three forms. The second form's three
/// lines are joined with `+`.
pub const FORM_EXPRESSIONS: [[&str; 3]; 3] = [
    [
        "x^2*(y - z)*(y^2 + y*z + z^2)*(2*x^3 - y^3 - z^3)",
        "-y^2*(x - z)*(x^2 + x*z + z^2)*(-x^3 + 2*y^3 - z^3)",
        "-z^2*(x - y)*(x^2 + x*y + y^2)*(x^3 + y^3 - 2*z^3)",
    ],
    [
        "x^2*(x^3 - y^3)*(x^3 - z^3)*(y^3 - z^3)*(x^3 - 5*y^3 - 5*z^3)",
        "y^2*(x^3 - y^3)*(x^3 - z^3)*(y^3 - z^3)*(-5*x^3 + y^3 - 5*z^3)",
        "z^2*(x^3 - y^3)*(x^3 - z^3)*(y^3 - z^3)*(-5*x^3 - 5*y^3 + z^3)",
    ],
    [
        "x^2*(x^3 - y^3)*(x^3 - z^3)*(y^3 - z^3)*(x^9 + 3*y^9 + 61*y^6*z^3 + 61*y^3*z^6 + 3*z^9 + 9*x^6*(y^3 + z^3) + x^3*(-13*y^6 + 122*y^3*z^3 - 13*z^6))",
        "y^2*(x^3 - y^3)*(x^3 - z^3)*(y^3 - z^3)*(3*x^9 + y^9 + 9*y^6*z^3 - 13*y^3*z^6 + 3*z^9 + x^6*(-13*y^3 + 61*z^3) + x^3*(9*y^6 + 122*y^3*z^3 + 61*z^6))",
        "z^2*(x^3 - y^3)*(x^3 - z^3)*(y^3 - z^3)*(3*x^9 + 3*y^9 - 13*y^6*z^3 + 9*y^3*z^6 + z^9 + x^6*(61*y^3 - 13*z^3) + x^3*(61*y^6 + 122*y^3*z^3 + 9*z^6))",
    ],
];

pub const NOTE: &str = "The second form is printed without '+' between its dx, dy and dz lines; they are joined with '+'. \
No other sign changes were needed: the stored forms pass the criterion with determinant -16 Q_det4 Q_det3^2.";

/// The degree-24 polynomial as printed, including its inhomogeneous `x*z^6` term.
pub const Q_DET4_PRINTED: &str =
    "x^2*y^2*z^2*(x^9 + 3*x^6*(y^3 + z^3) + (y^3 + z^3)^3 + 3*x^3*(y^6 - 7*y^3*z^3 + x*z^6))^2";

/// The printed polynomial with `x*z^6` read as `z^6`.
pub const Q_DET4_HOMOGENEOUS: &str =
    "x^2*y^2*z^2*(x^9 + 3*x^6*(y^3 + z^3) + (y^3 + z^3)^3 + 3*x^3*(y^6 - 7*y^3*z^3 + z^6))^2";

pub const Q_DET3_PRINTED: &str = "(x^3 - y^3)*(x^3 - z^3)*(y^3 - z^3)";

/// Determinant constant relative to the printed polynomials.
pub const DET_CONSTANT: i64 = -16;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct G26Fixture {
    pub group: String,
    pub character: String,
    pub note: String,
    pub expressions: Vec<Vec<String>>,
    pub q_det4_printed: String,
    pub forms: Vec<DiffForm>,
}

impl G26Fixture {
    pub fn load(path: &Path) -> Result<G26Fixture, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    /// Whether the stored encodings agree with the stored expressions.
    pub fn encodings_match(&self) -> Result<bool, String> {
        if self.expressions.len() != self.forms.len() {
            return Ok(false);
        }
        for (row, w) in self.expressions.iter().zip(&self.forms) {
            for (i, s) in row.iter().enumerate() {
                let f = parse_poly(s, w.nvars(), w.conductor()).map_err(|e| e.to_string())?;
                if f != w.coeff(&[i as u8]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenReport {
    pub checks: Vec<CheckResult>,
    /// Constant in `det M = c · Q_{det⁴} · Q_{det³}²` with the printed polynomials.
    pub printed_constant: Option<CycNum>,
    /// Witness of the criterion in the product-formula normalization.
    pub witness: Option<CycNum>,
}

impl GoldenReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The named check, if present.
    pub fn check(&self, prefix: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name.starts_with(prefix))
    }
}

fn scalar_detail(c: &Option<CycNum>) -> String {
    match c {
        Some(c) => format!("equal up to the scalar {c}"),
        None => "not a scalar multiple".into(),
    }
}

/// Runs every golden check. Names are prefixed `1a` … `1e` plus `1f` for the
/// generator search comparison.
pub fn verify_g26(actions: Arc<GroupActions>, fixture: &G26Fixture) -> Result<GoldenReport, SemiError> {
    let g = actions.group_arc();
    let (n, m) = (g.dim(), g.conductor());
    let mut checks = Vec::new();
    let parse = |s: &str| parse_poly(s, n, m).map_err(SemiError::from);

    checks.push(CheckResult::new("1a closure order", g.order() == 1296, format!("|G| = {}", g.order())));

    let ctx = SemiInvariantContext::new(actions.clone(), Character::det_power(&g, 3))?;
    let q3_printed = parse(Q_DET3_PRINTED)?;
    let c3 = ctx.q_chi().eq_up_to_scalar(&q3_printed);
    checks.push(CheckResult::new("1b Q_det3", c3.is_some(), scalar_detail(&c3)));

    let q4 = ctx.q_chi_det().clone();
    let q4_deg = q4.homogeneous_degree().ok().flatten();
    let printed = parse(Q_DET4_PRINTED)?;
    let homogeneous = parse(Q_DET4_HOMOGENEOUS)?;
    let c_printed = q4.eq_up_to_scalar(&printed);
    let c4 = q4.eq_up_to_scalar(&homogeneous);
    checks.push(CheckResult::new(
        "1c Q_det4",
        q4_deg == Some(24) && c4.is_some(),
        format!(
            "product formula: homogeneous of degree {q4_deg:?}; printed expression homogeneous: {}, matches: {}; \
             with x*z^6 read as z^6: {}",
            printed.is_homogeneous(),
            c_printed.is_some(),
            scalar_detail(&c4)
        ),
    ));

    let forms = &fixture.forms;
    let encodings = fixture.encodings_match().map_err(SemiError::Assertion)?;
    let invariant: Vec<bool> = forms.iter().map(|w| ctx.actions().is_semi_invariant(ctx.chi(), w)).collect();
    let mut divides = Vec::new();
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        divides.push(chi_wedge(&forms[i], &forms[j], &ctx, false).is_ok());
    }
    checks.push(CheckResult::new(
        "1d invariance and pairwise divisibility",
        encodings && invariant.iter().all(|&b| b) && divides.iter().all(|&b| b),
        format!("encodings match expressions: {encodings}; det3-invariant: {invariant:?}; Q_det3 divides w1^w2, w2^w3, w1^w3: {divides:?}"),
    ));

    let det = poly_det(&coefficient_matrix(forms))?;
    let rhs_printed = &homogeneous * &q3_printed.pow(2);
    let printed_constant = det.eq_up_to_scalar(&rhs_printed);
    let expected = CycNum::from_int(m, DET_CONSTANT);
    let cert = saito_check(forms, &ctx)?;
    let witness = cert.as_ref().ok().map(|c| c.witness_scalar.clone());
    checks.push(CheckResult::new(
        "1e determinant and criterion",
        printed_constant.as_ref() == Some(&expected) && witness.is_some(),
        format!(
            "det = ({}) * Q_det4 * Q_det3^2 (printed normalization); criterion: {}",
            printed_constant.as_ref().map_or("none".into(), |c| c.to_string()),
            match &cert {
                Ok(c) => format!("pass, witness {} (product-formula normalization), degrees {:?}", c.witness_scalar, c.degrees),
                Err(f) => format!("fail: {f}"),
            }
        ),
    ));

    let basics = basic_invariants(ctx.actions())?;
    let cap = ctx.q_chi_det().degree().unwrap_or(0) + ctx.q_det().degree().unwrap_or(0);
    let (found, _) = find_generators(&ctx, &basics, cap)?;
    let forward = forms.iter().all(|w| r_span_contains(&basics, &found.forms, w));
    let backward = found.forms.iter().all(|w| r_span_contains(&basics, forms, w));
    checks.push(CheckResult::new(
        "1f generator search spans the same module",
        forward && backward,
        format!("found degrees {:?}; fixture in span: {forward}; found in fixture span: {backward}", found.degrees),
    ));

    Ok(GoldenReport { checks, printed_constant, witness })
}

/// Parses the polynomial strings of the printed Q_{det⁴} (for reports).
pub fn printed_q_det4(m: u32) -> MPoly {
    parse_poly(Q_DET4_PRINTED, 3, m).expect("constant expression parses")
}
