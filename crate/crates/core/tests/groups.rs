//! Closure, arrangement and isotypic dimensions on the shipped fixtures.

use std::path::PathBuf;

use semiinv_core::reflgroup::{
    hilbert_series, isotypic_series, Character, CharacterSpec, GroupSpec, ReflectionGroup, DEFAULT_CAP,
};

fn fixture(name: &str) -> ReflectionGroup {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    GroupSpec::load(&path).unwrap().build(DEFAULT_CAP).unwrap()
}

#[test]
fn g26_closure_and_arrangement() {
    let g = fixture("g26.json");
    assert_eq!(g.order(), 1296);
    let a = g.arrangement();
    let order2 = a.iter().filter(|h| h.stab_order() == 2).count();
    let order3 = a.iter().filter(|h| h.stab_order() == 3).count();
    assert_eq!((order2, order3), (9, 12));
    let reflections: u32 = a.iter().map(|h| h.stab_order() - 1).sum();
    assert_eq!(reflections as usize, g.reflections().len());
    assert_eq!(reflections, 33);
}

#[test]
fn g26_invariant_degrees() {
    let g = fixture("g26.json");
    let s = isotypic_series(&g, &Character::trivial(&g), 0, 40).unwrap();
    assert_eq!(s, hilbert_series(0, &[6, 12, 18], 40));
}

#[test]
fn b2_sign_character_table() {
    let g = fixture("b2.json");
    // -1 on the generator fixing x = 0... i.e. diag(-1, 1), +1 on the swap.
    let m = g.conductor();
    let spec = CharacterSpec::GeneratorValues {
        generator_values: vec![
            semiinv_core::exactnum::CycNum::from_int(m, -1),
            semiinv_core::exactnum::CycNum::from_int(m, 1),
        ],
    };
    let chi = Character::new(&g, &spec).unwrap();
    let a: Vec<u32> = g.arrangement().iter().map(|h| chi.a_h(&g, h).unwrap()).collect();
    assert_eq!(a.iter().sum::<u32>(), 2);
}
