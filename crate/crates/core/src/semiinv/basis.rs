//! Bases of graded pieces of `(Ω^p)^χ`.
//!
//! A basis of the degree-d piece is obtained by projecting seeded random
//! elements of `S_d ⊗ Λ^p V*` until the rank reaches the character-theoretic
//! dimension. The basis is returned in reduced echelon form, which depends only
//! on the subspace, so the random choices never leak into results.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{CycNum, EchelonBasis};
use crate::polyring::{multiindices, DiffForm, MPoly, Monomial};
use crate::reflgroup::{isotypic_dim, Character};

use super::{GroupActions, SemiError, SemiInvariantContext};

/// Extra attempts beyond the target rank before declaring an inconsistency.
const SPARE_ATTEMPTS: usize = 12;

/// A seeded random element of `S_d ⊗ Λ^p V*`.
pub fn random_form(n: usize, m: u32, p: usize, d: usize, rng: &mut impl Rng) -> DiffForm {
    let mut w = DiffForm::zero(n, m, p);
    let monos = Monomial::all_of_degree(n, d);
    for idx in multiindices(n, p) {
        let terms = monos.iter().map(|mono| (mono.clone(), CycNum::from_int(m, rng.gen_range(-5..=5))));
        w.add_component(idx, &MPoly::from_terms(n, m, terms));
    }
    w
}

/// Basis (reduced echelon form, ascending pivots) of the degree-d piece of `(Ω^p)^χ`.
pub fn isotypic_basis(actions: &GroupActions, chi: &Character, p: usize, d: usize) -> Result<Arc<Vec<DiffForm>>, SemiError> {
    let key = (chi.exponents().to_vec(), p, d);
    if let Some(b) = actions.basis_cache().lock().expect("basis cache").get(&key) {
        return Ok(b.clone());
    }
    let g = actions.group();
    let (n, m) = (g.dim(), g.conductor());
    let target = isotypic_dim(g, chi, p, d)?;
    let mut ech = EchelonBasis::new();
    let mut rng = ChaCha8Rng::seed_from_u64(((p as u64) << 32) ^ d as u64);
    let mut attempts = 0;
    while ech.rank() < target {
        if attempts >= target + SPARE_ATTEMPTS {
            return Err(SemiError::Assertion(format!(
                "projection reached rank {} but the isotypic dimension is {target} (p = {p}, d = {d})",
                ech.rank()
            )));
        }
        attempts += 1;
        let w = actions.twisted_orbit_sum(chi, &random_form(n, m, p, d, &mut rng));
        if w.is_zero() {
            continue;
        }
        ech.insert(w.to_sparse());
    }
    let basis: Vec<DiffForm> = ech.rows().map(|r| DiffForm::from_sparse(n, m, p, r)).collect();
    let basis = Arc::new(basis);
    actions.basis_cache().lock().expect("basis cache").insert(key, basis.clone());
    Ok(basis)
}

/// The twisted Reynolds projection of `ω`, checked to be χ-invariant.
pub fn reynolds_project(ctx: &SemiInvariantContext, w: &DiffForm) -> Result<DiffForm, SemiError> {
    let out = ctx.actions().project(ctx.chi(), w);
    if let Some(j) = ctx.actions().invariance_failure(ctx.chi(), &out) {
        return Err(SemiError::NotInvariant { generator: j });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::testing::{b2, ctx};
    use super::*;
    use crate::exactnum::EchelonBasis;
    use crate::polyring::Monomial;

    #[test]
    fn dx1_has_no_det_component() {
        let c = ctx(&b2(), 1);
        let out = reynolds_project(&c, &DiffForm::dx(2, 2, 0)).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn projection_is_idempotent() {
        let c = ctx(&b2(), 1);
        let w = DiffForm::from_poly(c.q_chi().clone());
        assert_eq!(reynolds_project(&c, &w).unwrap(), w);
    }

    #[test]
    fn lowest_polynomials_span_q_chi() {
        let c = ctx(&b2(), 1);
        let mut ech = EchelonBasis::new();
        for mono in Monomial::all_of_degree(2, c.deg_q_chi()) {
            let f = DiffForm::from_poly(MPoly::monomial(2, 2, mono, CycNum::one(2)));
            let p = reynolds_project(&c, &f).unwrap();
            if !p.is_zero() {
                ech.insert(p.to_sparse());
            }
        }
        assert_eq!(ech.rank(), 1);
        let row = DiffForm::from_sparse(2, 2, 0, ech.rows().next().unwrap());
        assert!(row.coeff(&[]).eq_up_to_scalar(c.q_chi()).is_some());
    }

    #[test]
    fn basis_rank_matches_dimension() {
        let a = b2();
        for k in 0..2 {
            let chi = Character::det_power(a.group(), k);
            for p in 0..=2 {
                for d in 0..7 {
                    let b = isotypic_basis(&a, &chi, p, d).unwrap();
                    assert_eq!(b.len(), isotypic_dim(a.group(), &chi, p, d).unwrap());
                    assert!(b.iter().all(|w| a.is_semi_invariant(&chi, w)));
                }
            }
        }
    }
}
