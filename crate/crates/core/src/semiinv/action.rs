//! The group action on polynomials and forms, and the twisted Reynolds
//! projection.
//!
//! `g` acts by `(g f)(x) = f(g^-1 x)` on coefficients and contragrediently on
//! covectors, which is the pullback along `g^-1`. The projection
//! `(1/|G|) Σ χ(g)^-1 g·ω` is evaluated through the subgroup `M` of monomial
//! matrices: every `g` is `r m` with `r` a left coset representative of `M`,
//! and every representative is written `m' s` with `s` drawn from a small set
//! of dense elements. Monomial matrices act by relabelling terms, so the only
//! expensive step is one dense substitution per element of that small set.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::exactnum::CycNum;
use crate::polyring::{DiffForm, MPoly, Substitution};
use crate::reflgroup::{Character, ReflectionGroup};

/// A left coset `r M` with `r = m * dense[s]` (or `r = m` when `s` is `None`).
#[derive(Clone, Debug)]
struct CosetRep {
    r: usize,
    m: usize,
    s: Option<usize>,
}

pub struct GroupActions {
    group: Arc<ReflectionGroup>,
    subs: Vec<OnceLock<Arc<Substitution>>>,
    monomial: Vec<usize>,
    dense: Vec<usize>,
    cosets: Vec<CosetRep>,
    bases: Mutex<HashMap<(Vec<u32>, usize, usize), Arc<Vec<DiffForm>>>>,
}

impl GroupActions {
    pub fn new(group: Arc<ReflectionGroup>) -> GroupActions {
        group.ensure_mult_table();
        let order = group.order();
        let monomial: Vec<usize> = (0..order).filter(|&i| group.element(i).matrix().is_monomial()).collect();
        // Coset label of g: smallest index in gM.
        let label: Vec<usize> = (0..order)
            .into_par_iter()
            .map(|g| monomial.iter().map(|&m| group.mul(g, m)).min().expect("identity is monomial"))
            .collect();
        let mut labels: Vec<usize> = label.clone();
        labels.sort_unstable();
        labels.dedup();
        let mut dense: Vec<usize> = Vec::new();
        let mut cosets = Vec::with_capacity(labels.len());
        for &c in &labels {
            if c == label[0] {
                cosets.push(CosetRep { r: 0, m: 0, s: None });
                continue;
            }
            let mut found = None;
            'search: for (si, &s) in dense.iter().enumerate() {
                for &m in &monomial {
                    let r = group.mul(m, s);
                    if label[r] == c {
                        found = Some(CosetRep { r, m, s: Some(si) });
                        break 'search;
                    }
                }
            }
            let rep = match found {
                Some(rep) => rep,
                None => {
                    dense.push(c);
                    CosetRep {
                        r: c,
                        m: 0,
                        s: Some(dense.len() - 1),
                    }
                }
            };
            cosets.push(rep);
        }
        let subs = (0..order).map(|_| OnceLock::new()).collect();
        GroupActions {
            group,
            subs,
            monomial,
            dense,
            cosets,
            bases: Mutex::new(HashMap::new()),
        }
    }

    /// Cache of isotypic bases keyed by (character exponents, p, d).
    pub(crate) fn basis_cache(&self) -> &Mutex<HashMap<(Vec<u32>, usize, usize), Arc<Vec<DiffForm>>>> {
        &self.bases
    }

    pub fn group(&self) -> &ReflectionGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<ReflectionGroup> {
        self.group.clone()
    }

    /// Size of the monomial subgroup.
    pub fn monomial_subgroup_order(&self) -> usize {
        self.monomial.len()
    }

    /// Number of dense elements through which all cosets are reached.
    pub fn dense_count(&self) -> usize {
        self.dense.len()
    }

    /// The substitution realizing the action of element `i` (pullback along its inverse).
    pub fn action(&self, i: usize) -> Arc<Substitution> {
        self.subs[i]
            .get_or_init(|| Arc::new(Substitution::new(self.group.element(self.group.inverse(i)).matrix())))
            .clone()
    }

    pub fn act_poly(&self, i: usize, f: &MPoly) -> MPoly {
        self.action(i).apply_poly(f)
    }

    pub fn act_form(&self, i: usize, w: &DiffForm) -> DiffForm {
        self.action(i).apply_form(w)
    }

    /// First generator `g` with `g·ω ≠ χ(g) ω`, if any.
    pub fn invariance_failure(&self, chi: &Character, w: &DiffForm) -> Option<usize> {
        (0..self.group.generators().len()).find(|&j| {
            let g = self.group.generator_index(j);
            self.act_form(g, w) != w.scale(&chi.value(g))
        })
    }

    pub fn is_semi_invariant(&self, chi: &Character, w: &DiffForm) -> bool {
        self.invariance_failure(chi, w).is_none()
    }

    fn twisted_sum(&self, chi: &Character, elems: &[usize], w: &DiffForm) -> DiffForm {
        let zero = DiffForm::zero(w.nvars(), w.conductor(), w.degree());
        elems
            .par_iter()
            .fold(
                || zero.clone(),
                |acc, &g| {
                    let img = self.act_form(g, w).scale(&chi.inverse().value(g));
                    acc.checked_add(&img).expect("same shape")
                },
            )
            .reduce(|| zero.clone(), |a, b| a.checked_add(&b).expect("same shape"))
    }

    /// `Σ_g χ(g)^-1 g·ω` without the `1/|G|` factor.
    pub fn twisted_orbit_sum(&self, chi: &Character, w: &DiffForm) -> DiffForm {
        let v = self.twisted_sum(chi, &self.monomial, w);
        if v.is_zero() {
            return v;
        }
        let dense_images: Vec<DiffForm> = self.dense.par_iter().map(|&s| self.act_form(s, &v)).collect();
        let inv = chi.inverse();
        let mut acc = DiffForm::zero(w.nvars(), w.conductor(), w.degree());
        for rep in &self.cosets {
            let image = match rep.s {
                None => v.clone(),
                Some(si) => self.act_form(rep.m, &dense_images[si]),
            };
            acc = acc.checked_add(&image.scale(&inv.value(rep.r))).expect("same shape");
        }
        acc
    }

    /// The twisted Reynolds projection onto the χ-isotypic component.
    pub fn project(&self, chi: &Character, w: &DiffForm) -> DiffForm {
        let s = self.twisted_orbit_sum(chi, w);
        s.scale(&CycNum::from_ratio(self.group.conductor(), 1, self.group.order() as i64))
    }

    /// The same projection summed element by element; slow, for cross-checks.
    pub fn project_naive(&self, chi: &Character, w: &DiffForm) -> DiffForm {
        let all: Vec<usize> = (0..self.group.order()).collect();
        let s = self.twisted_sum(chi, &all, w);
        s.scale(&CycNum::from_ratio(self.group.conductor(), 1, self.group.order() as i64))
    }
}

impl std::fmt::Debug for GroupActions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GroupActions({}, |M| = {}, dense = {:?})",
            self.group.name(),
            self.monomial.len(),
            self.dense
        )
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::b2;
    use crate::exactnum::{CycNum, Matrix};
    use crate::polyring::{parse_poly, DiffForm, Substitution};
    use crate::reflgroup::Character;

    #[test]
    fn identity_and_swap() {
        let a = b2();
        let g = a.group();
        let w = DiffForm::dx(2, 2, 1).mul_poly(&parse_poly("x", 2, 2).unwrap());
        assert_eq!(a.act_form(0, &w), w);
        let swap = (0..g.order())
            .find(|&i| g.element(i).matrix().get(0, 1).is_one() && g.element(i).matrix().get(1, 0).is_one())
            .unwrap();
        let want = DiffForm::dx(2, 2, 0).mul_poly(&parse_poly("y", 2, 2).unwrap());
        assert_eq!(a.act_form(swap, &w), want);
    }

    #[test]
    fn inverse_of_diagonal_scales_first_covector() {
        // Pulling back along s = diag(rho, 1) sends dx1 to rho dx1.
        let rho = CycNum::root_of_unity(3, 1);
        let s = Matrix::diagonal(&[rho.clone(), CycNum::one(3)]);
        let w = Substitution::new(&s).apply_form(&DiffForm::dx(2, 3, 0));
        assert_eq!(w, DiffForm::dx(2, 3, 0).scale(&rho));
    }

    #[test]
    fn action_is_a_homomorphism() {
        let a = b2();
        let g = a.group();
        let w = DiffForm::dx(2, 2, 0).mul_poly(&parse_poly("x^2*y + 3*y^3 - x", 2, 2).unwrap());
        for i in 0..g.order() {
            for j in 0..g.order() {
                let lhs = a.act_form(g.mul(i, j), &w);
                let rhs = a.act_form(i, &a.act_form(j, &w));
                assert_eq!(lhs, rhs, "{i} {j}");
            }
        }
    }

    #[test]
    fn factored_projection_matches_naive() {
        let a = b2();
        let w = DiffForm::dx(2, 2, 1).mul_poly(&parse_poly("x^3 - 2*x*y^2 + y^3", 2, 2).unwrap());
        for k in 0..2 {
            let chi = Character::det_power(a.group(), k);
            assert_eq!(a.project(&chi, &w), a.project_naive(&chi, &w));
        }
    }
}
