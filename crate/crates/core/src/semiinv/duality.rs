//! Polyvectors (the exterior algebra of derivations) and the duality with
//! differential forms given by contraction against the volume form.
//!
//! `g` acts on polyvectors by `(g f)(x) = f(g^-1 x)` on coefficients and
//! `∂_j ↦ Σ_i g_ij ∂_i` on the frame, so the top polyvector is det-invariant
//! while `vol` is det⁻¹-invariant. The duality `dx_I ↦ ε(I, I^c) ∂_{I^c}`
//! therefore carries χ-invariant forms to χ·det-invariant polyvectors.

use std::fmt;

use serde::Serialize;

use crate::exactnum::{CycNum, Matrix};
use crate::polyring::{complement, merge_sign, multiindices, var_name, DiffForm, MPoly, Multiindex};
use crate::reflgroup::Character;

use super::{chi_wedge_all, GeneratorCertificate, GroupActions, SemiError, SemiInvariantContext};

/// A p-polyvector `Σ f_I ∂_I`, stored with the same layout as a p-form.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyVector(DiffForm);

impl PolyVector {
    pub fn zero(nvars: usize, m: u32, p: usize) -> PolyVector {
        PolyVector(DiffForm::zero(nvars, m, p))
    }

    /// The top polyvector `∂_1 ∧ … ∧ ∂_n`.
    pub fn top(nvars: usize, m: u32) -> PolyVector {
        PolyVector(DiffForm::vol(nvars, m))
    }

    pub fn from_poly(f: MPoly) -> PolyVector {
        PolyVector(DiffForm::from_poly(f))
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coeff(&self, idx: &[u8]) -> MPoly {
        self.0.coeff(idx)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Multiindex, &MPoly)> {
        self.0.components()
    }

    pub fn scale(&self, c: &CycNum) -> PolyVector {
        PolyVector(self.0.scale(c))
    }

    pub fn mul_poly(&self, f: &MPoly) -> PolyVector {
        PolyVector(self.0.mul_poly(f))
    }

    pub fn wedge(&self, other: &PolyVector) -> Result<PolyVector, SemiError> {
        Ok(PolyVector(self.0.wedge(&other.0)?))
    }

    pub fn exact_divide(&self, den: &MPoly) -> Result<PolyVector, SemiError> {
        Ok(PolyVector(self.0.exact_divide(den)?))
    }

    /// Some(c) with `self = c * other`.
    pub fn eq_up_to_scalar(&self, other: &PolyVector) -> Option<CycNum> {
        self.0.eq_up_to_scalar(&other.0)
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.nvars();
        let parts: Vec<String> = self
            .components()
            .map(|(i, g)| {
                let d: Vec<String> = i.iter().map(|&k| format!("d/d{}", var_name(n, k as usize))).collect();
                if d.is_empty() {
                    format!("({g})")
                } else {
                    format!("({g}) {}", d.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyVector<{}>({})", self.degree(), self)
    }
}

impl Serialize for PolyVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// `dx_I ↦ ε(I, I^c) ∂_{I^c}`: a p-form becomes an (n−p)-polyvector.
pub fn derivation_dual(w: &DiffForm) -> PolyVector {
    let n = w.nvars();
    let mut out = DiffForm::zero(n, w.conductor(), n - w.degree());
    for (idx, f) in w.components() {
        let c = complement(n, idx);
        let (sign, _) = merge_sign(idx, &c).expect("disjoint");
        out.add_component(c, &if sign > 0 { f.clone() } else { -f });
    }
    PolyVector(out)
}

/// `∂_J ↦ ε(J, J^c) dx_{J^c}`; composing with [`derivation_dual`] gives `(−1)^{p(n−p)}`.
pub fn form_dual(v: &PolyVector) -> DiffForm {
    let n = v.nvars();
    let mut out = DiffForm::zero(n, v.0.conductor(), n - v.degree());
    for (idx, f) in v.components() {
        let c = complement(n, idx);
        let (sign, _) = merge_sign(idx, &c).expect("disjoint");
        out.add_component(c, &if sign > 0 { f.clone() } else { -f });
    }
    out
}

fn minor(g: &Matrix, rows: &[u8], cols: &[u8]) -> CycNum {
    if rows.is_empty() {
        return CycNum::one(g.conductor());
    }
    let sub: Vec<Vec<CycNum>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| g.get(i as usize, j as usize).clone()).collect())
        .collect();
    Matrix::from_rows(sub).and_then(|s| s.det()).expect("square minor")
}

/// The action of group element `i` on a polyvector.
pub fn act_polyvector(actions: &GroupActions, i: usize, v: &PolyVector) -> PolyVector {
    let g = actions.group().element(i).matrix();
    let n = v.nvars();
    let p = v.degree();
    let coeffs = actions.action(i);
    let mut out = DiffForm::zero(n, v.0.conductor(), p);
    for (jdx, f) in v.components() {
        let fg = coeffs.apply_poly(f);
        for idx in multiindices(n, p) {
            let c = minor(g, &idx, jdx);
            if !c.is_zero() {
                out.add_component(idx, &fg.scale(&c));
            }
        }
    }
    PolyVector(out)
}

/// First generator under which `v` fails to be ψ-invariant.
pub fn polyvector_invariance_failure(actions: &GroupActions, psi: &Character, v: &PolyVector) -> Option<usize> {
    (0..actions.group().generators().len()).find(|&j| {
        let g = actions.group().generator_index(j);
        act_polyvector(actions, g, v) != v.scale(&psi.value(g))
    })
}

/// Outcome of the duality check for one generator set.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    /// Character of the dual polyvectors (χ·det).
    pub character: String,
    pub derivations: Vec<PolyVector>,
    pub invariant: bool,
    /// `c` with `θ₁ ⌣ … ⌣ θ_n = c · Q_χ · ∂_1∧…∧∂_n`, when it exists.
    pub witness: Option<CycNum>,
}

impl DualityReport {
    pub fn pass(&self) -> bool {
        self.invariant && self.witness.as_ref().is_some_and(|c| !c.is_zero())
    }
}

/// Dualizes a certified generating set: `θ_j` is the dual of the χ-wedge of all
/// forms except `ω_j`. The θ_j are χ·det-invariant derivations; their
/// χ·det-wedge is compared with `Q_{(χ·det)·det⁻¹} = Q_χ` times the top polyvector.
pub fn duality_check(cert: &GeneratorCertificate, ctx: &SemiInvariantContext) -> Result<DualityReport, SemiError> {
    let n = ctx.dim();
    let m = ctx.conductor();
    let psi = ctx.chi_det().clone();
    let mut derivations = Vec::with_capacity(n);
    for j in 0..n {
        let others: Vec<DiffForm> = cert
            .forms
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != j)
            .map(|(_, w)| w.clone())
            .collect();
        let prod = chi_wedge_all(&others, ctx)?;
        derivations.push(derivation_dual(&prod));
    }
    let invariant = derivations
        .iter()
        .all(|t| polyvector_invariance_failure(ctx.actions(), &psi, t).is_none());
    let q_psi = super::q_poly(ctx.group(), &psi)?;
    let mut acc = PolyVector::from_poly(q_psi.clone());
    for t in &derivations {
        acc = acc.wedge(t)?.exact_divide(&q_psi)?;
    }
    let target = PolyVector::top(n, m).mul_poly(ctx.q_chi());
    let witness = acc.eq_up_to_scalar(&target);
    Ok(DualityReport { character: psi.name().to_string(), derivations, invariant, witness })
}

#[cfg(test)]
mod tests {
    use super::super::testing::{b2, ctx, cyclic};
    use super::super::{basic_invariants, find_generators};
    use super::*;

    #[test]
    fn dual_of_vol_and_dx1() {
        let one = derivation_dual(&DiffForm::vol(2, 2));
        assert_eq!(one, PolyVector::from_poly(MPoly::one(2, 2)));
        let d = derivation_dual(&DiffForm::dx(2, 2, 0));
        assert_eq!(d.degree(), 1);
        assert_eq!(d.coeff(&[1]), MPoly::one(2, 2));
        let d2 = derivation_dual(&DiffForm::dx(2, 2, 1));
        assert_eq!(d2.coeff(&[0]), -&MPoly::one(2, 2));
    }

    #[test]
    fn double_dual_sign() {
        for p in 0..=3 {
            for idx in multiindices(3, p) {
                let w = DiffForm::from_component(idx, MPoly::var(3, 1, 0));
                let back = form_dual(&derivation_dual(&w));
                let sign = if (p * (3 - p)) % 2 == 0 { 1 } else { -1 };
                assert_eq!(back, w.scale(&CycNum::from_int(1, sign)));
            }
        }
    }

    #[test]
    fn top_polyvector_is_det_invariant() {
        let a = b2();
        let det = Character::det_power(a.group(), 1);
        assert!(polyvector_invariance_failure(&a, &det, &PolyVector::top(2, 2)).is_none());
    }

    #[test]
    fn duality_criterion_small_groups() {
        for a in [b2(), cyclic(3), cyclic(6)] {
            let b = basic_invariants(&a).unwrap();
            let order = a.group().roots_count() as i64;
            for k in 0..order {
                let c = ctx(&a, k);
                let cap = c.q_chi_det().degree().unwrap_or(0) + c.q_det().degree().unwrap_or(0);
                let (cert, _) = find_generators(&c, &b, cap).unwrap();
                let r = duality_check(&cert, &c).unwrap();
                assert!(r.pass(), "{} k={k}: {r:?}", a.group().name());
            }
        }
    }
}
