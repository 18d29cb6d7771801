//! The shipped G26 forms fixture against its source expressions.

use std::path::PathBuf;
use std::sync::Arc;

use semiinv_core::exactnum::CycNum;
use semiinv_core::golden::{printed_q_det4, G26Fixture, FORM_EXPRESSIONS};
use semiinv_core::reflgroup::{Character, GroupSpec, DEFAULT_CAP};
use semiinv_core::semiinv::{saito_check, GroupActions, SaitoFailure, SemiInvariantContext};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load() -> G26Fixture {
    G26Fixture::load(&fixtures().join("g26_det3_forms.json")).unwrap()
}

#[test]
fn fixture_matches_its_expressions() {
    let f = load();
    assert!(f.encodings_match().unwrap());
    let stored: Vec<Vec<&str>> = f.expressions.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
    let source: Vec<Vec<&str>> = FORM_EXPRESSIONS.iter().map(|r| r.to_vec()).collect();
    assert_eq!(stored, source);
    assert!(f.forms.iter().all(|w| w.degree() == 1 && w.nvars() == 3));
}

#[test]
fn printed_q_det4_is_not_homogeneous() {
    assert!(!printed_q_det4(12).is_homogeneous());
}

#[test]
fn criterion_accepts_det3_and_rejects_trivial() {
    let g = Arc::new(GroupSpec::load(&fixtures().join("g26.json")).unwrap().build(DEFAULT_CAP).unwrap());
    let actions = Arc::new(GroupActions::new(g.clone()));
    let forms = load().forms;

    let ctx = SemiInvariantContext::new(actions.clone(), Character::det_power(&g, 3)).unwrap();
    let cert = saito_check(&forms, &ctx).unwrap().unwrap();
    assert_eq!(cert.witness_scalar, CycNum::from_int(g.conductor(), -16));
    assert_eq!(cert.degrees, vec![8, 14, 20]);

    let trivial = SemiInvariantContext::new(actions, Character::trivial(&g)).unwrap();
    let fail = saito_check(&forms, &trivial).unwrap();
    assert!(matches!(fail, Err(SaitoFailure::NotInvariant { .. })), "{fail:?}");
}
