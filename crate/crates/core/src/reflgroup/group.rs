//! Breadth-first closure of a finite matrix group.

use std::sync::OnceLock;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::exactnum::{CycNum, Matrix};

use super::{arrangement::build_arrangement, molien::elementary_symmetric, GroupElement, GroupError, Hyperplane};

pub const DEFAULT_CAP: usize = 100_000;

/// Groups up to this order get a full multiplication table.
const MULT_TABLE_MAX: usize = 6000;

#[derive(Debug)]
pub struct ReflectionGroup {
    name: String,
    n: usize,
    m: u32,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    index: FxHashMap<Matrix, usize>,
    /// `right[i][j]` is the index of `elements[i] * generators[j]`.
    right: Vec<Vec<u32>>,
    /// `elements[i] = generators[w_0] * generators[w_1] * ...`.
    words: Vec<Vec<u8>>,
    inverse: Vec<u32>,
    mult: OnceLock<Option<Vec<u32>>>,
    arrangement: OnceLock<Vec<Hyperplane>>,
    inverse_charpolys: OnceLock<Vec<Vec<CycNum>>>,
}

impl ReflectionGroup {
    /// Generates the group from unitary generator matrices, rejecting closures
    /// larger than `cap` and groups not generated by their reflections.
    ///
    /// Individual generators need not be reflections: a generating set may
    /// contain e.g. a scalar multiple of a reflection, as long as the closure
    /// is still the group generated by its reflections.
    pub fn generate(name: &str, gens: Vec<Matrix>, cap: usize) -> Result<ReflectionGroup, GroupError> {
        let first = gens.first().ok_or(GroupError::Spec("no generators".into()))?;
        let n = first.rows();
        let m = first.conductor();
        let mut generators = Vec::with_capacity(gens.len());
        for (k, g) in gens.into_iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(GroupError::DimensionMismatch { index: k });
            }
            if g.conductor() != m {
                return Err(GroupError::ConductorMismatch { index: k });
            }
            let e = GroupElement::new(g).map_err(|e| match e {
                GroupError::NotUnitary => GroupError::GeneratorNotUnitary { index: k },
                other => other,
            })?;
            generators.push(e);
        }
        if generators.len() > u8::MAX as usize {
            return Err(GroupError::Spec("too many generators".into()));
        }

        let id = Matrix::identity(m, n);
        let mut elements = vec![GroupElement::from_parts(id.clone(), CycNum::one(m), 0, 1)];
        let mut index = FxHashMap::default();
        index.insert(id, 0usize);
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut right: Vec<Vec<u32>> = Vec::new();
        let mut head = 0;
        let big_n = CycNum::roots_of_unity_count(m);
        while head < elements.len() {
            let mut row = Vec::with_capacity(generators.len());
            for (j, s) in generators.iter().enumerate() {
                let prod = elements[head].matrix().mul(s.matrix()).expect("shapes checked");
                let k = match index.get(&prod) {
                    Some(&k) => k,
                    None => {
                        if elements.len() >= cap {
                            return Err(GroupError::CapExceeded { cap });
                        }
                        let det_exp = (elements[head].det_exp() + s.det_exp()) % big_n;
                        let det = CycNum::from_root_exponent(m, det_exp);
                        let k = elements.len();
                        index.insert(prod.clone(), k);
                        // Order is filled in below once the table exists.
                        elements.push(GroupElement::from_parts(prod, det, det_exp, 0));
                        let mut w = words[head].clone();
                        w.push(j as u8);
                        words.push(w);
                        k
                    }
                };
                row.push(k as u32);
            }
            right.push(row);
            head += 1;
        }

        let mut group = ReflectionGroup {
            name: name.to_string(),
            n,
            m,
            generators,
            elements,
            index,
            right,
            words,
            inverse: Vec::new(),
            mult: OnceLock::new(),
            arrangement: OnceLock::new(),
            inverse_charpolys: OnceLock::new(),
        };
        let mut inverse = Vec::with_capacity(group.order());
        for g in &group.elements {
            let inv = g.matrix().adjoint();
            let k = *group.index.get(&inv).ok_or(GroupError::NotClosed)?;
            inverse.push(k as u32);
        }
        group.inverse = inverse;
        let orders: Vec<u32> = (0..group.order())
            .map(|i| {
                let mut k = 1;
                let mut p = i;
                while p != 0 {
                    p = group.mul(p, i);
                    k += 1;
                }
                k
            })
            .collect();
        for (e, o) in group.elements.iter_mut().zip(orders) {
            *e = GroupElement::from_parts(e.matrix().clone(), e.det().clone(), e.det_exp(), o);
        }
        let generated = group.reflection_subgroup_order();
        if generated != group.order() {
            return Err(GroupError::NotReflectionGroup {
                generated,
                order: group.order(),
            });
        }
        Ok(group)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    /// Number of roots of unity in the coefficient field.
    pub fn roots_count(&self) -> u32 {
        CycNum::roots_of_unity_count(self.m)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    /// Index of generator `j` in the element list.
    pub fn generator_index(&self, j: usize) -> usize {
        self.right[0][j] as usize
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    pub fn right_mul_generator(&self, i: usize, j: usize) -> usize {
        self.right[i][j] as usize
    }

    pub fn word(&self, i: usize) -> &[u8] {
        &self.words[i]
    }

    /// Index of `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        if let Some(Some(t)) = self.mult.get() {
            return t[i * self.order() + j] as usize;
        }
        let mut k = i;
        for &s in &self.words[j] {
            k = self.right[k][s as usize] as usize;
        }
        k
    }

    /// Builds the full multiplication table for small groups; later `mul` calls use it.
    pub fn ensure_mult_table(&self) {
        self.mult.get_or_init(|| {
            let n = self.order();
            if n > MULT_TABLE_MAX {
                return None;
            }
            let mut t = vec![0u32; n * n];
            // Row i: walk words; reuse the prefix structure of BFS words.
            for i in 0..n {
                for j in 0..n {
                    let mut k = i;
                    for &s in &self.words[j] {
                        k = self.right[k][s as usize] as usize;
                    }
                    t[i * n + j] = k as u32;
                }
            }
            Some(t)
        });
    }

    /// Order of the subgroup generated by the reflections of the group.
    fn reflection_subgroup_order(&self) -> usize {
        let refl = self.reflections();
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let i = queue[head];
            head += 1;
            for &r in &refl {
                let k = self.mul(i, r);
                if !seen[k] {
                    seen[k] = true;
                    queue.push(k);
                }
            }
        }
        queue.len()
    }

    /// Indices of all reflections.
    pub fn reflections(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.elements[i].is_reflection()).collect()
    }

    pub fn arrangement(&self) -> &[Hyperplane] {
        self.arrangement.get_or_init(|| build_arrangement(self))
    }

    /// Elementary symmetric functions of the eigenvalues of each `g^-1`.
    pub fn inverse_charpolys(&self) -> &[Vec<CycNum>] {
        self.inverse_charpolys.get_or_init(|| {
            self.elements
                .par_iter()
                .enumerate()
                .map(|(i, _)| elementary_symmetric(self.elements[self.inverse(i)].matrix()))
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(m: u32, k: i64) -> CycNum {
        CycNum::from_int(m, k)
    }

    pub(crate) fn b2() -> ReflectionGroup {
        let s = Matrix::from_rows(vec![vec![int(2, -1), int(2, 0)], vec![int(2, 0), int(2, 1)]]).unwrap();
        let t = Matrix::from_rows(vec![vec![int(2, 0), int(2, 1)], vec![int(2, 1), int(2, 0)]]).unwrap();
        ReflectionGroup::generate("B2", vec![s, t], DEFAULT_CAP).unwrap()
    }

    #[test]
    fn b2_closure() {
        let g = b2();
        assert_eq!(g.order(), 8);
        for i in 0..8 {
            assert_eq!(g.mul(i, g.inverse(i)), 0);
            for j in 0..8 {
                let prod = g.element(i).matrix().mul(g.element(j).matrix()).unwrap();
                assert_eq!(g.index_of(&prod), Some(g.mul(i, j)));
            }
        }
        g.ensure_mult_table();
        assert_eq!(g.mul(3, 5), g.index_of(&g.element(3).matrix().mul(g.element(5).matrix()).unwrap()).unwrap());
        assert_eq!(g.reflections().len(), 4);
    }

    #[test]
    fn trivial_group() {
        let g = ReflectionGroup::generate("1", vec![Matrix::identity(1, 2)], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.arrangement().is_empty());
    }

    #[test]
    fn rejects_bad_generators() {
        let rot = Matrix::from_rows(vec![vec![int(1, 0), int(1, -1)], vec![int(1, 1), int(1, 0)]]).unwrap();
        assert_eq!(
            ReflectionGroup::generate("rot", vec![rot], 100).unwrap_err(),
            GroupError::NotReflectionGroup { generated: 1, order: 4 }
        );
        let scaled = Matrix::from_rows(vec![vec![int(1, 2), int(1, 0)], vec![int(1, 0), int(1, 1)]]).unwrap();
        assert_eq!(
            ReflectionGroup::generate("bad", vec![scaled], 100).unwrap_err(),
            GroupError::GeneratorNotUnitary { index: 0 }
        );
    }

    #[test]
    fn cap_is_enforced() {
        let g = b2();
        let gens: Vec<Matrix> = g.generators().iter().map(|e| e.matrix().clone()).collect();
        assert_eq!(
            ReflectionGroup::generate("B2", gens, 5).unwrap_err(),
            GroupError::CapExceeded { cap: 5 }
        );
    }
}
