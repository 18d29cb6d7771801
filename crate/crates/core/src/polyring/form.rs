//! Differential forms with polynomial coefficients.
//!
//! A p-form is stored as a map from strictly increasing multiindices
//! `I = (i_1 < ... < i_p)` (zero-based) to the coefficient `mu_I` of
//! `dx_I = dx_{i_1} ^ ... ^ dx_{i_p}`.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::exactnum::{CycNum, SparseVec};

use super::{var_name, MPoly, Monomial, PolyError};

pub type Multiindex = SmallVec<[u8; 4]>;

/// All strictly increasing multiindices of length `p` drawn from `0..n`, in lex order.
pub fn multiindices(n: usize, p: usize) -> Vec<Multiindex> {
    let mut out = Vec::new();
    let mut cur: Multiindex = SmallVec::new();
    fn rec(start: usize, n: usize, p: usize, cur: &mut Multiindex, out: &mut Vec<Multiindex>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i as u8);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    rec(0, n, p, &mut cur, &mut out);
    out
}

/// Sign and merged index of `dx_I ^ dx_J`, or `None` when they share an index.
pub fn merge_sign(a: &[u8], b: &[u8]) -> Option<(i32, Multiindex)> {
    let mut inversions = 0usize;
    for &i in a {
        for &j in b {
            if i == j {
                return None;
            }
            if i > j {
                inversions += 1;
            }
        }
    }
    let mut merged: Multiindex = a.iter().chain(b).copied().collect();
    merged.sort_unstable();
    Some((if inversions % 2 == 0 { 1 } else { -1 }, merged))
}

/// Complement of `idx` in `0..n`.
pub fn complement(n: usize, idx: &[u8]) -> Multiindex {
    (0..n as u8).filter(|i| !idx.contains(i)).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffForm {
    nvars: usize,
    conductor: u32,
    p: usize,
    comps: BTreeMap<Multiindex, MPoly>,
}

impl DiffForm {
    pub fn zero(nvars: usize, m: u32, p: usize) -> DiffForm {
        assert!(p <= nvars, "form degree {p} exceeds dimension {nvars}");
        DiffForm {
            nvars,
            conductor: m,
            p,
            comps: BTreeMap::new(),
        }
    }

    /// The 0-form `f`.
    pub fn from_poly(f: MPoly) -> DiffForm {
        DiffForm::from_component(SmallVec::new(), f)
    }

    /// `f dx_I` for a strictly increasing `I`.
    pub fn from_component(idx: Multiindex, f: MPoly) -> DiffForm {
        let mut w = DiffForm::zero(f.nvars(), f.conductor(), idx.len());
        assert!(idx.windows(2).all(|w| w[0] < w[1]), "multiindex must be strictly increasing");
        if !f.is_zero() {
            w.comps.insert(idx, f);
        }
        w
    }

    /// Builds a p-form from (index, coefficient) pairs; indices need not be sorted.
    pub fn from_components<I: IntoIterator<Item = (Vec<u8>, MPoly)>>(nvars: usize, m: u32, p: usize, comps: I) -> Result<DiffForm, PolyError> {
        let mut w = DiffForm::zero(nvars, m, p);
        for (idx, f) in comps {
            if idx.len() != p || idx.iter().any(|&i| i as usize >= nvars) {
                return Err(PolyError::BadIndex(format!("{idx:?} for a {p}-form in {nvars} variables")));
            }
            if f.nvars() != nvars || f.conductor() != m {
                return Err(PolyError::NvarsMismatch { left: nvars, right: f.nvars() });
            }
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            // Sign of the sorting permutation.
            let mut inv = 0;
            for a in 0..idx.len() {
                for b in a + 1..idx.len() {
                    if idx[a] > idx[b] {
                        inv += 1;
                    }
                }
            }
            let f = if inv % 2 == 0 { f } else { -&f };
            w.add_component(SmallVec::from_vec(sorted), &f);
        }
        Ok(w)
    }

    pub fn dx(nvars: usize, m: u32, i: usize) -> DiffForm {
        DiffForm::from_component(smallvec::smallvec![i as u8], MPoly::one(nvars, m))
    }

    /// `dx_1 ^ ... ^ dx_n`.
    pub fn vol(nvars: usize, m: u32) -> DiffForm {
        DiffForm::from_component((0..nvars as u8).collect(), MPoly::one(nvars, m))
    }

    /// Exterior derivative of a 0-form.
    pub fn differential(f: &MPoly) -> DiffForm {
        let n = f.nvars();
        let mut w = DiffForm::zero(n, f.conductor(), 1);
        for i in 0..n {
            w.add_component(smallvec::smallvec![i as u8], &f.derivative(i));
        }
        w
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Form degree p.
    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Multiindex, &MPoly)> {
        self.comps.iter()
    }

    pub fn component(&self, idx: &[u8]) -> Option<&MPoly> {
        self.comps.get(idx)
    }

    /// Coefficient of `dx_I`, zero when absent.
    pub fn coeff(&self, idx: &[u8]) -> MPoly {
        self.comps.get(idx).cloned().unwrap_or_else(|| MPoly::zero(self.nvars, self.conductor))
    }

    pub fn add_component(&mut self, idx: Multiindex, f: &MPoly) {
        if f.is_zero() {
            return;
        }
        match self.comps.get_mut(&idx) {
            Some(e) => {
                *e = &*e + f;
                if e.is_zero() {
                    self.comps.remove(&idx);
                }
            }
            None => {
                self.comps.insert(idx, f.clone());
            }
        }
    }

    fn compatible(&self, other: &DiffForm) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::NvarsMismatch { left: self.nvars, right: other.nvars });
        }
        if self.conductor != other.conductor {
            return Err(PolyError::ConductorMismatch { left: self.conductor, right: other.conductor });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DiffForm) -> Result<DiffForm, PolyError> {
        self.compatible(other)?;
        if self.p != other.p {
            return Err(PolyError::DegreeMismatch { left: self.p, right: other.p });
        }
        let mut out = self.clone();
        for (i, f) in &other.comps {
            out.add_component(i.clone(), f);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DiffForm) -> Result<DiffForm, PolyError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> DiffForm {
        self.map_coeffs(|f| -f)
    }

    pub fn scale(&self, c: &CycNum) -> DiffForm {
        self.map_coeffs(|f| f.scale(c))
    }

    pub fn mul_poly(&self, f: &MPoly) -> DiffForm {
        self.map_coeffs(|g| g * f)
    }

    pub fn map_coeffs<F: Fn(&MPoly) -> MPoly>(&self, f: F) -> DiffForm {
        let mut out = DiffForm::zero(self.nvars, self.conductor, self.p);
        for (i, g) in &self.comps {
            let h = f(g);
            if !h.is_zero() {
                out.comps.insert(i.clone(), h);
            }
        }
        out
    }

    /// Exterior product; the zero (p+q)-form when p + q exceeds n.
    pub fn wedge(&self, other: &DiffForm) -> Result<DiffForm, PolyError> {
        self.compatible(other)?;
        let p = self.p + other.p;
        if p > self.nvars {
            // Represent overflow as the zero n-form.
            return Ok(DiffForm::zero(self.nvars, self.conductor, self.nvars));
        }
        let mut out = DiffForm::zero(self.nvars, self.conductor, p);
        for (i, f) in &self.comps {
            for (j, g) in &other.comps {
                if let Some((sign, k)) = merge_sign(i, j) {
                    let prod = f * g;
                    let prod = if sign > 0 { prod } else { -&prod };
                    out.add_component(k, &prod);
                }
            }
        }
        Ok(out)
    }

    /// Divides every coefficient exactly by `den`.
    pub fn exact_divide(&self, den: &MPoly) -> Result<DiffForm, PolyError> {
        let mut out = DiffForm::zero(self.nvars, self.conductor, self.p);
        for (i, f) in &self.comps {
            out.comps.insert(i.clone(), f.exact_divide(den)?);
        }
        Ok(out)
    }

    /// Common total degree of the nonzero coefficients; `None` for the zero form.
    pub fn coeff_degree(&self) -> Result<Option<usize>, PolyError> {
        let mut d = None;
        for f in self.comps.values() {
            match (f.homogeneous_degree()?, d) {
                (Some(e), None) => d = Some(e),
                (Some(e), Some(prev)) if e != prev => return Err(PolyError::NotHomogeneous),
                _ => {}
            }
        }
        Ok(d)
    }

    /// Some(c) with `self = c * other`.
    pub fn eq_up_to_scalar(&self, other: &DiffForm) -> Option<CycNum> {
        if self.compatible(other).is_err() || self.p != other.p {
            return None;
        }
        if self.comps.len() != other.comps.len() {
            return None;
        }
        let Some((idx, f)) = self.comps.iter().next_back() else {
            return Some(CycNum::one(self.conductor));
        };
        let g = other.comps.get(idx)?;
        let c = f.eq_up_to_scalar(g)?;
        (other.scale(&c) == *self).then_some(c)
    }

    /// Flattens to a sparse vector keyed by (multiindex, monomial).
    pub fn to_sparse(&self) -> SparseVec<(Multiindex, Monomial)> {
        let mut v = SparseVec::new();
        for (i, f) in &self.comps {
            for (m, c) in f.terms() {
                v.insert((i.clone(), m.clone()), c.clone());
            }
        }
        v
    }

    pub fn from_sparse(nvars: usize, m: u32, p: usize, v: &SparseVec<(Multiindex, Monomial)>) -> DiffForm {
        let mut by_index: BTreeMap<Multiindex, Vec<(Monomial, CycNum)>> = BTreeMap::new();
        for ((i, mono), c) in v {
            by_index.entry(i.clone()).or_default().push((mono.clone(), c.clone()));
        }
        let mut w = DiffForm::zero(nvars, m, p);
        for (i, terms) in by_index {
            let f = MPoly::from_terms(nvars, m, terms);
            if !f.is_zero() {
                w.comps.insert(i, f);
            }
        }
        w
    }

    /// Scales so the leading coefficient (largest index, then leading monomial) is one.
    pub fn monic(&self) -> DiffForm {
        match self.comps.values().next_back().and_then(|f| f.leading_coeff()) {
            Some(c) => self.scale(&c.inverse().expect("nonzero")),
            None => self.clone(),
        }
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(i, g)| {
                if i.is_empty() {
                    format!("({g})")
                } else {
                    let d: Vec<String> = i.iter().map(|&k| format!("d{}", var_name(self.nvars, k as usize))).collect();
                    format!("({g}) {}", d.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffForm<{}>[{}]({})", self.p, self.conductor, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetry() {
        let dx = DiffForm::dx(2, 1, 0);
        let dy = DiffForm::dx(2, 1, 1);
        let a = dx.wedge(&dy).unwrap();
        let b = dy.wedge(&dx).unwrap();
        assert_eq!(a, DiffForm::vol(2, 1));
        assert_eq!(b, a.neg());
        assert!(dx.wedge(&dx).unwrap().is_zero());
    }

    #[test]
    fn x_dy_wedge_y_dx() {
        let x = MPoly::var(2, 1, 0);
        let y = MPoly::var(2, 1, 1);
        let a = DiffForm::dx(2, 1, 1).mul_poly(&x);
        let b = DiffForm::dx(2, 1, 0).mul_poly(&y);
        let w = a.wedge(&b).unwrap();
        assert_eq!(w, DiffForm::vol(2, 1).mul_poly(&-&(&x * &y)));
    }

    #[test]
    fn overflow_is_zero() {
        let v = DiffForm::vol(2, 1);
        let w = v.wedge(&DiffForm::dx(2, 1, 0)).unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn coefficient_degree() {
        let x = MPoly::var(3, 1, 0);
        let w = DiffForm::dx(3, 1, 1).mul_poly(&x.pow(2));
        assert_eq!(w.coeff_degree(), Ok(Some(2)));
        let v = DiffForm::dx(3, 1, 1).mul_poly(&x).checked_add(&DiffForm::dx(3, 1, 2)).unwrap();
        assert_eq!(v.coeff_degree(), Err(PolyError::NotHomogeneous));
    }

    #[test]
    fn unsorted_components_get_signs() {
        let one = MPoly::one(2, 1);
        let w = DiffForm::from_components(2, 1, 2, vec![(vec![1, 0], one)]).unwrap();
        assert_eq!(w, DiffForm::vol(2, 1).neg());
    }

    #[test]
    fn index_helpers() {
        assert_eq!(multiindices(3, 2).len(), 3);
        assert_eq!(multiindices(4, 0).len(), 1);
        assert_eq!(complement(3, &[1]).as_slice(), &[0, 2]);
    }
}
