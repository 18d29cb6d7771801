//! Property tests for the arithmetic layers and the projection.

use std::sync::Arc;

use proptest::prelude::*;

use semiinv_core::exactnum::{CycNum, Matrix};
use semiinv_core::polyring::{DiffForm, MPoly, Monomial, Substitution};
use semiinv_core::reflgroup::{Character, GroupSpec, DEFAULT_CAP};
use semiinv_core::semiinv::{chi_wedge, GroupActions, SemiInvariantContext};

fn cyc(m: u32) -> impl Strategy<Value = CycNum> {
    let len = m as usize;
    (prop::collection::vec(-6i64..=6, len), 1i64..=4).prop_map(move |(v, den)| {
        v.iter()
            .enumerate()
            .fold(CycNum::zero(m), |acc, (k, &c)| &acc + &CycNum::root_of_unity(m, k as i64).mul_int(c))
            .div_int(den)
            .unwrap()
    })
}

fn poly(n: usize, m: u32, max_deg: u16) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -5i64..=5), 0..6).prop_map(move |terms| {
        MPoly::from_terms(n, m, terms.into_iter().map(|(e, c)| (Monomial::new(&e), CycNum::from_int(m, c))))
    })
}

fn one_form(n: usize, m: u32) -> impl Strategy<Value = DiffForm> {
    prop::collection::vec(poly(n, m, 3), n).prop_map(move |cs| {
        DiffForm::from_components(n, m, 1, cs.into_iter().enumerate().map(|(i, f)| (vec![i as u8], f))).unwrap()
    })
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
        let rows = (0..n).map(|i| (0..n).map(|j| CycNum::from_int(3, v[i * n + j])).collect()).collect();
        Matrix::from_rows(rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in cyc(12), b in cyc(12), c in cyc(12)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation_is_multiplicative(a in cyc(9), b in cyc(9)) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
    }

    #[test]
    fn exact_division_inverts_multiplication(f in poly(3, 3, 3), g in poly(3, 3, 2)) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!((&f * &g).exact_divide(&g).unwrap(), f);
    }

    #[test]
    fn wedge_is_graded_commutative(a in one_form(3, 1), b in one_form(3, 1)) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab, ba.neg());
        prop_assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn wedge_is_associative(a in one_form(3, 1), b in one_form(3, 1), c in one_form(3, 1)) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pullbacks_compose(a in matrix(3), b in matrix(3), w in one_form(3, 3)) {
        let ab = b.mul(&a).unwrap();
        let two_steps = Substitution::new(&a).apply_form(&Substitution::new(&b).apply_form(&w));
        prop_assert_eq!(two_steps, Substitution::new(&ab).apply_form(&w));
    }

    #[test]
    fn pullback_commutes_with_wedge(a in matrix(3), u in one_form(3, 3), v in one_form(3, 3)) {
        let s = Substitution::new(&a);
        prop_assert_eq!(s.apply_form(&u.wedge(&v).unwrap()), s.apply_form(&u).wedge(&s.apply_form(&v)).unwrap());
    }

    #[test]
    fn form_json_round_trip(w in one_form(3, 12)) {
        let text = serde_json::to_string(&w).unwrap();
        let back: DiffForm = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        prop_assert_eq!(back, w);
    }
}

fn s3() -> Arc<GroupActions> {
    let path = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/s3.json");
    let g = GroupSpec::load(&path).unwrap().build(DEFAULT_CAP).unwrap();
    Arc::new(GroupActions::new(Arc::new(g)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projection_is_semi_invariant_and_idempotent(w in one_form(3, 2), k in 0i64..2) {
        let a = s3();
        let chi = Character::det_power(a.group(), k);
        let p = a.project(&chi, &w);
        prop_assert!(a.is_semi_invariant(&chi, &p));
        prop_assert_eq!(a.project(&chi, &p), p);
    }

    #[test]
    fn projected_products_are_divisible(u in one_form(3, 2), v in one_form(3, 2)) {
        let a = s3();
        let ctx = SemiInvariantContext::new(a.clone(), Character::det_power(a.group(), 1)).unwrap();
        let (pu, pv) = (a.project(ctx.chi(), &u), a.project(ctx.chi(), &v));
        let q = chi_wedge(&pu, &pv, &ctx, true).unwrap();
        prop_assert!(a.is_semi_invariant(ctx.chi(), &q));
    }
}
