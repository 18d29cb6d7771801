//! A group together with a character and its semiinvariant polynomials.

use std::sync::Arc;

use crate::polyring::MPoly;
use crate::reflgroup::{Character, ReflectionGroup};

use super::{GroupActions, SemiError};

/// `Q_χ = Π_H α_H^{a_H(χ)}` over the arrangement, with each `α_H` normalized.
pub fn q_poly(g: &ReflectionGroup, chi: &Character) -> Result<MPoly, SemiError> {
    let mut q = MPoly::one(g.dim(), g.conductor());
    for h in g.arrangement() {
        let a = chi.a_h(g, h)?;
        if a > 0 {
            q = &q * &h.alpha().pow(a);
        }
    }
    Ok(q)
}

#[derive(Clone)]
pub struct SemiInvariantContext {
    actions: Arc<GroupActions>,
    chi: Character,
    chi_det: Character,
    a: Vec<u32>,
    a_det: Vec<u32>,
    q_chi: MPoly,
    q_chi_det: MPoly,
    q_det: MPoly,
    q_det_inv: MPoly,
}

impl SemiInvariantContext {
    pub fn new(actions: Arc<GroupActions>, chi: Character) -> Result<SemiInvariantContext, SemiError> {
        let g = actions.group();
        let chi_det = chi.twist(g, 1);
        let a = g.arrangement().iter().map(|h| chi.a_h(g, h)).collect::<Result<Vec<_>, _>>()?;
        let a_det = g.arrangement().iter().map(|h| chi_det.a_h(g, h)).collect::<Result<Vec<_>, _>>()?;
        let q_chi = q_poly(g, &chi)?;
        let q_chi_det = q_poly(g, &chi_det)?;
        let q_det = q_poly(g, &Character::det_power(g, 1))?;
        let q_det_inv = q_poly(g, &Character::det_power(g, -1))?;
        Ok(SemiInvariantContext {
            actions,
            chi,
            chi_det,
            a,
            a_det,
            q_chi,
            q_chi_det,
            q_det,
            q_det_inv,
        })
    }

    /// The same group with another character, reusing the cached actions.
    pub fn with_character(&self, chi: Character) -> Result<SemiInvariantContext, SemiError> {
        SemiInvariantContext::new(self.actions.clone(), chi)
    }

    pub fn actions(&self) -> &GroupActions {
        &self.actions
    }

    pub fn actions_arc(&self) -> Arc<GroupActions> {
        self.actions.clone()
    }

    pub fn group(&self) -> &ReflectionGroup {
        self.actions.group()
    }

    pub fn dim(&self) -> usize {
        self.group().dim()
    }

    pub fn conductor(&self) -> u32 {
        self.group().conductor()
    }

    pub fn chi(&self) -> &Character {
        &self.chi
    }

    /// χ·det.
    pub fn chi_det(&self) -> &Character {
        &self.chi_det
    }

    /// a_H(χ) in arrangement order.
    pub fn a(&self) -> &[u32] {
        &self.a
    }

    /// a_H(χ·det) in arrangement order.
    pub fn a_det(&self) -> &[u32] {
        &self.a_det
    }

    pub fn q_chi(&self) -> &MPoly {
        &self.q_chi
    }

    pub fn q_chi_det(&self) -> &MPoly {
        &self.q_chi_det
    }

    pub fn q_det(&self) -> &MPoly {
        &self.q_det
    }

    pub fn q_det_inv(&self) -> &MPoly {
        &self.q_det_inv
    }

    pub fn deg_q_chi(&self) -> usize {
        self.q_chi.degree().unwrap_or(0)
    }
}

impl std::fmt::Debug for SemiInvariantContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SemiInvariantContext({}, {})", self.group().name(), self.chi)
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::{b2, ctx, cyclic};
    use crate::polyring::{parse_poly, MPoly};

    #[test]
    fn b2_q_det() {
        let c = ctx(&b2(), 1);
        let want = parse_poly("x*y*(x - y)*(x + y)", 2, 2).unwrap();
        assert!(c.q_chi().eq_up_to_scalar(&want).is_some());
        assert_eq!(c.q_chi_det(), &MPoly::one(2, 2));
        assert_eq!(c.q_det(), c.q_chi());
        assert_eq!(c.q_det_inv(), c.q_chi());
    }

    #[test]
    fn trivial_q_is_one() {
        let c = ctx(&b2(), 0);
        assert_eq!(c.q_chi(), &MPoly::one(2, 2));
        assert_eq!(c.deg_q_chi(), 0);
    }

    #[test]
    fn cyclic_exponents() {
        let c = ctx(&cyclic(6), 2);
        assert_eq!((c.a()[0], c.a_det()[0]), (4, 3));
        assert_eq!(c.q_chi(), &parse_poly("x^4", 1, 6).unwrap());
    }
}
