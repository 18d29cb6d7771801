//! Small groups shared by the unit tests.

use std::sync::Arc;

use crate::exactnum::{CycNum, Matrix};
use crate::reflgroup::{Character, ReflectionGroup, DEFAULT_CAP};

use super::{GroupActions, SemiInvariantContext};

fn int(k: i64) -> CycNum {
    CycNum::from_int(2, k)
}

pub fn b2() -> Arc<GroupActions> {
    let s = Matrix::from_rows(vec![vec![int(-1), int(0)], vec![int(0), int(1)]]).unwrap();
    let t = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
    Arc::new(GroupActions::new(Arc::new(ReflectionGroup::generate("B2", vec![s, t], DEFAULT_CAP).unwrap())))
}

pub fn cyclic(m: u32) -> Arc<GroupActions> {
    let z = Matrix::from_rows(vec![vec![CycNum::root_of_unity(m, 1)]]).unwrap();
    Arc::new(GroupActions::new(Arc::new(ReflectionGroup::generate("Z", vec![z], DEFAULT_CAP).unwrap())))
}

pub fn ctx(actions: &Arc<GroupActions>, k: i64) -> SemiInvariantContext {
    SemiInvariantContext::new(actions.clone(), Character::det_power(actions.group(), k)).unwrap()
}
