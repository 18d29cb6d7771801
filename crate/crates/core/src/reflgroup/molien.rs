//! Graded dimensions of isotypic components of `S ⊗ Λ^p V*`.
//!
//! The group acts on linear forms through the inverse transpose, so the
//! trace of `g` on `S_d ⊗ Λ^p V*` is `h_d(λ) e_p(λ)` for the eigenvalues
//! `λ` of `g^-1`. Both symmetric functions come exactly from the
//! characteristic polynomial: `e_k` is the sum of principal k-minors, and
//! `h_d = Σ_k (-1)^(k+1) e_k h_(d-k)`. Elements sharing characteristic
//! polynomial and character value are summed once.

use num_traits::{Signed, ToPrimitive};
use rustc_hash::FxHashMap;

use crate::exactnum::{CycNum, Matrix};
use crate::polyring::{multiindices, DiffForm, MPoly, Monomial, Substitution};

use super::{Character, GroupError, ReflectionGroup};

/// `e_0, ..., e_n` of a square matrix: sums of principal minors.
pub fn elementary_symmetric(a: &Matrix) -> Vec<CycNum> {
    let n = a.rows();
    let m = a.conductor();
    let mut out = vec![CycNum::one(m)];
    for k in 1..=n {
        let mut acc = CycNum::zero(m);
        for idx in multiindices(n, k) {
            let rows: Vec<Vec<CycNum>> = idx
                .iter()
                .map(|&i| idx.iter().map(|&j| a.get(i as usize, j as usize).clone()).collect())
                .collect();
            acc += &Matrix::from_rows(rows).expect("minor").det().expect("square");
        }
        out.push(acc);
    }
    out
}

/// Complete homogeneous symmetric functions `h_0..=h_max` from `e_0..e_n`.
pub fn complete_symmetric(e: &[CycNum], max_d: usize) -> Vec<CycNum> {
    let n = e.len() - 1;
    let m = e[0].conductor();
    let mut h = vec![CycNum::one(m)];
    for d in 1..=max_d {
        let mut acc = CycNum::zero(m);
        for k in 1..=n.min(d) {
            let t = &e[k] * &h[d - k];
            if k % 2 == 1 {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        h.push(acc);
    }
    h
}

/// dim of the degree-d piece of `(S ⊗ Λ^p V*)^χ` for `d = 0..=max_d`.
pub fn isotypic_series(g: &ReflectionGroup, chi: &Character, p: usize, max_d: usize) -> Result<Vec<usize>, GroupError> {
    let n = g.dim();
    if p > n {
        return Err(GroupError::Spec(format!("form degree {p} exceeds dimension {n}")));
    }
    let esyms = g.inverse_charpolys();
    let mut classes: FxHashMap<(&Vec<CycNum>, u32), usize> = FxHashMap::default();
    for (i, e) in esyms.iter().enumerate() {
        *classes.entry((e, chi.exp(i))).or_default() += 1;
    }
    let m = g.conductor();
    let mut total = vec![CycNum::zero(m); max_d + 1];
    for ((e, ce), count) in classes {
        let h = complete_symmetric(e, max_d);
        let big_n = g.roots_count();
        let weight = CycNum::from_root_exponent(m, (big_n - ce) % big_n).mul_int(count as i64);
        let we = &weight * &e[p];
        if we.is_zero() {
            continue;
        }
        for (t, hd) in total.iter_mut().zip(&h) {
            *t += &(&we * hd);
        }
    }
    total
        .into_iter()
        .enumerate()
        .map(|(d, t)| {
            let avg = t.div_int(g.order() as i64).expect("nonzero order");
            let r = avg.to_rational().ok_or(GroupError::Arithmetic(format!("irrational dimension at degree {d}")))?;
            if !r.is_integer() || r.is_negative() {
                return Err(GroupError::Arithmetic(format!("dimension {r} at degree {d} is not a nonnegative integer")));
            }
            r.to_integer().to_usize().ok_or(GroupError::Arithmetic("dimension overflow".into()))
        })
        .collect()
}

pub fn isotypic_dim(g: &ReflectionGroup, chi: &Character, p: usize, d: usize) -> Result<usize, GroupError> {
    Ok(isotypic_series(g, chi, p, d)?[d])
}

/// Trace of element `i` on `S_d ⊗ Λ^p V*`, by acting on every basis element.
/// Independent of the characteristic-polynomial route; used as a cross-check.
pub fn explicit_trace(g: &ReflectionGroup, i: usize, p: usize, d: usize) -> CycNum {
    let n = g.dim();
    let m = g.conductor();
    let sub = Substitution::new(g.element(g.inverse(i)).matrix());
    let mut acc = CycNum::zero(m);
    for idx in multiindices(n, p) {
        for mono in Monomial::all_of_degree(n, d) {
            let basis = DiffForm::from_component(idx.clone(), MPoly::monomial(n, m, mono.clone(), CycNum::one(m)));
            let img = sub.apply_form(&basis);
            if let Some(c) = img.component(&idx).and_then(|f| f.coeff(&mono)) {
                acc += c;
            }
        }
    }
    acc
}

/// Coefficients of `t^shift / Π (1 - t^{d_i})` up to `t^max_d`.
pub fn hilbert_series(shift: usize, degrees: &[usize], max_d: usize) -> Vec<usize> {
    let mut s = vec![0usize; max_d + 1];
    if shift <= max_d {
        s[shift] = 1;
    }
    for &d in degrees {
        for k in d..=max_d {
            s[k] += s[k - d];
        }
    }
    s
}

impl ReflectionGroup {
    /// `Σ_g χ(g)^-1 tr(g | S_d ⊗ Λ^p V*)` with every trace taken on an explicit basis.
    pub fn raw_trace_sum(&self, chi: &Character, p: usize, d: usize) -> CycNum {
        let m = self.conductor();
        let big_n = self.roots_count();
        let mut acc = CycNum::zero(m);
        for i in 0..self.order() {
            let w = CycNum::from_root_exponent(m, (big_n - chi.exp(i)) % big_n);
            acc += &(&w * &explicit_trace(self, i, p, d));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflgroup::group::DEFAULT_CAP;

    fn b2() -> ReflectionGroup {
        let i = |k| CycNum::from_int(2, k);
        let s = Matrix::from_rows(vec![vec![i(-1), i(0)], vec![i(0), i(1)]]).unwrap();
        let t = Matrix::from_rows(vec![vec![i(0), i(1)], vec![i(1), i(0)]]).unwrap();
        ReflectionGroup::generate("B2", vec![s, t], DEFAULT_CAP).unwrap()
    }

    #[test]
    fn b2_det_series() {
        let g = b2();
        let chi = Character::det_power(&g, 1);
        let s = isotypic_series(&g, &chi, 0, 16).unwrap();
        assert_eq!(s, hilbert_series(4, &[2, 4], 16));
        assert_eq!(isotypic_dim(&g, &Character::trivial(&g), 0, 0).unwrap(), 1);
        assert_eq!(isotypic_dim(&g, &chi, 1, 0).unwrap(), 0);
    }

    #[test]
    fn traces_agree_with_explicit_action() {
        let g = b2();
        let chi = Character::det_power(&g, 1);
        for p in 0..=2 {
            for d in 0..6 {
                let via_sum = g.raw_trace_sum(&chi, p, d).div_int(8).unwrap();
                let dim = isotypic_dim(&g, &chi, p, d).unwrap();
                assert_eq!(via_sum, CycNum::from_int(2, dim as i64), "p={p} d={d}");
            }
        }
    }

    #[test]
    fn hilbert_series_counts_partitions() {
        assert_eq!(hilbert_series(0, &[1, 2], 5), vec![1, 1, 2, 2, 3, 3]);
        assert_eq!(hilbert_series(2, &[2], 6), vec![0, 0, 1, 0, 1, 0, 1]);
    }
}
