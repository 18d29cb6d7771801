//! The reflection arrangement: hyperplanes with their pointwise stabilizers.

use crate::exactnum::{CycNum, Matrix};
use crate::polyring::MPoly;

use super::ReflectionGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    /// Coefficients of the normalized linear form, first nonzero entry one.
    normal: Vec<CycNum>,
    alpha: MPoly,
    stab_order: u32,
    stab_generator: usize,
    stab_elements: Vec<usize>,
    /// Eigenvector of `s_H` off the hyperplane, scaled so `alpha(root) = 1`.
    root: Vec<CycNum>,
}

impl Hyperplane {
    pub fn normal(&self) -> &[CycNum] {
        &self.normal
    }

    pub fn alpha(&self) -> &MPoly {
        &self.alpha
    }

    /// o(s_H).
    pub fn stab_order(&self) -> u32 {
        self.stab_order
    }

    /// Element index of the chosen generator s_H.
    pub fn stab_generator(&self) -> usize {
        self.stab_generator
    }

    /// Element indices of the cyclic group G_H, identity first.
    pub fn stab_elements(&self) -> &[usize] {
        &self.stab_elements
    }

    pub fn root(&self) -> &[CycNum] {
        &self.root
    }

    /// `alpha(v)`.
    pub fn eval(&self, v: &[CycNum]) -> CycNum {
        let mut acc = CycNum::zero(self.normal[0].conductor());
        for (a, b) in self.normal.iter().zip(v) {
            acc += &(a * b);
        }
        acc
    }

    /// Coordinates `x = P y` with `alpha(P y) = y_1` and `s_H` diagonal:
    /// the first column is the root, the others span the hyperplane.
    pub fn adapted_coordinates(&self) -> Matrix {
        let n = self.normal.len();
        let m = self.normal[0].conductor();
        let k = self.normal.iter().position(|c| !c.is_zero()).expect("nonzero normal");
        let mut cols: Vec<Vec<CycNum>> = vec![self.root.clone()];
        for j in 0..n {
            if j == k {
                continue;
            }
            let mut w = vec![CycNum::zero(m); n];
            w[j] = CycNum::one(m);
            w[k] = -&self.normal[j];
            cols.push(w);
        }
        let mut p = Matrix::zeros(m, n, n);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                p.set(i, j, v.clone());
            }
        }
        p
    }
}

pub(crate) fn build_arrangement(g: &ReflectionGroup) -> Vec<Hyperplane> {
    let n = g.dim();
    let m = g.conductor();
    let id = Matrix::identity(m, n);
    let mut normals: Vec<Vec<CycNum>> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for r in g.reflections() {
        let d = g.element(r).matrix().sub(&id).expect("square");
        let row = (0..n).map(|i| d.row(i)).find(|row| row.iter().any(|c| !c.is_zero())).expect("rank one");
        let lead = row.iter().find(|c| !c.is_zero()).expect("nonzero row").inverse().expect("nonzero");
        let normal: Vec<CycNum> = row.iter().map(|c| c * &lead).collect();
        match normals.iter().position(|v| *v == normal) {
            Some(k) => members[k].push(r),
            None => {
                normals.push(normal);
                members.push(vec![r]);
            }
        }
    }
    let big_n = g.roots_count();
    normals
        .into_iter()
        .zip(members)
        .map(|(normal, refl)| {
            let stab_order = refl.len() as u32 + 1;
            let target = big_n / stab_order;
            let stab_generator = *refl
                .iter()
                .find(|&&r| g.element(r).det_exp() == target)
                .expect("stabilizer is cyclic with determinant a primitive root");
            let s = g.element(stab_generator).matrix().sub(&id).expect("square");
            let col = (0..n)
                .map(|j| (0..n).map(|i| s.get(i, j).clone()).collect::<Vec<_>>())
                .find(|c| c.iter().any(|x| !x.is_zero()))
                .expect("rank one");
            let mut stab_elements = vec![0];
            stab_elements.extend(refl);
            let mut h = Hyperplane {
                alpha: MPoly::linear(&normal),
                normal,
                stab_order,
                stab_generator,
                stab_elements,
                root: col,
            };
            let scale = h.eval(&h.root).inverse().expect("root lies off the hyperplane");
            h.root = h.root.iter().map(|c| c * &scale).collect();
            h
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use crate::polyring::Substitution;
    use crate::reflgroup::group::DEFAULT_CAP;

    use super::*;

    fn int(k: i64) -> CycNum {
        CycNum::from_int(2, k)
    }

    #[test]
    fn b2_hyperplanes() {
        let s = Matrix::from_rows(vec![vec![int(-1), int(0)], vec![int(0), int(1)]]).unwrap();
        let t = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).unwrap();
        let g = ReflectionGroup::generate("B2", vec![s, t], DEFAULT_CAP).unwrap();
        let a = g.arrangement();
        assert_eq!(a.len(), 4);
        let mut names: Vec<String> = a.iter().map(|h| h.alpha().to_string()).collect();
        names.sort();
        assert_eq!(names, vec!["x", "x + y", "x - y", "y"]);
        for h in a {
            assert_eq!(h.stab_order(), 2);
            let p = h.adapted_coordinates();
            let sub = Substitution::new(&p);
            // alpha(P y) = y_1
            assert_eq!(sub.apply_poly(h.alpha()), crate::polyring::MPoly::var(2, 2, 0));
            let conj = p.inverse().unwrap().mul(g.element(h.stab_generator()).matrix()).unwrap().mul(&p).unwrap();
            assert_eq!(conj.get(0, 1), &int(0));
            assert_eq!(conj.get(1, 0), &int(0));
        }
    }
}
