//! Sparse multivariate polynomials over a cyclotomic field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exactnum::CycNum;

use super::{Monomial, PolyError};

/// A polynomial in `nvars` variables with coefficients in Q(zeta_m).
///
/// Terms are keyed by graded-lex ordered monomials; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    conductor: u32,
    terms: BTreeMap<Monomial, CycNum>,
}

impl MPoly {
    pub fn zero(nvars: usize, m: u32) -> MPoly {
        MPoly {
            nvars,
            conductor: m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CycNum) -> MPoly {
        let m = c.conductor();
        MPoly::monomial(nvars, m, Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize, m: u32) -> MPoly {
        MPoly::constant(nvars, CycNum::one(m))
    }

    pub fn var(nvars: usize, m: u32, i: usize) -> MPoly {
        MPoly::monomial(nvars, m, Monomial::var(nvars, i), CycNum::one(m))
    }

    pub fn monomial(nvars: usize, m: u32, mono: Monomial, c: CycNum) -> MPoly {
        debug_assert_eq!(mono.nvars(), nvars);
        let mut p = MPoly::zero(nvars, m);
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// Linear form `sum_i coeffs[i] x_i`.
    pub fn linear(coeffs: &[CycNum]) -> MPoly {
        let n = coeffs.len();
        let m = coeffs[0].conductor();
        let mut p = MPoly::zero(n, m);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(n, i), c.clone());
            }
        }
        p
    }

    /// Builds from (monomial, coefficient) pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, CycNum)>>(nvars: usize, m: u32, terms: I) -> MPoly {
        let mut p = MPoly::zero(nvars, m);
        for (mono, c) in terms {
            p.add_term(mono, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, CycNum> {
        self.terms
    }

    pub fn coeff(&self, mono: &Monomial) -> Option<&CycNum> {
        self.terms.get(mono)
    }

    /// In-place `self += c * mono`.
    pub fn add_term(&mut self, mono: Monomial, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    /// Largest term under graded-lex.
    pub fn leading_term(&self) -> Option<(&Monomial, &CycNum)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&CycNum> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// The common degree of all terms, `Some(0)`-free for zero: zero is homogeneous of every degree, reported as `None`.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>, PolyError> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else { return Ok(None) };
        let d = first.degree();
        if it.all(|m| m.degree() == d) {
            Ok(Some(d))
        } else {
            Err(PolyError::NotHomogeneous)
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    fn compatible(&self, other: &MPoly) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::NvarsMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.conductor != other.conductor {
            return Err(PolyError::ConductorMismatch {
                left: self.conductor,
                right: other.conductor,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.compatible(other)?;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut out = MPoly::zero(self.nvars, self.conductor);
        if small.is_zero() {
            return Ok(out);
        }
        if small.len() == 1 {
            let (ms, cs) = small.terms.iter().next().expect("one term");
            out.terms = large.terms.iter().map(|(m, c)| (m.mul(ms), c * cs)).collect();
            return Ok(out);
        }
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    /// `self * c * mono`.
    pub fn mul_term(&self, mono: &Monomial, c: &CycNum) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars, self.conductor);
        }
        MPoly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self.terms.iter().map(|(m, d)| (m.mul(mono), d * c)).collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> MPoly {
        self.mul_term(&Monomial::one(self.nvars), c)
    }

    /// In-place `self += c * mono * other`.
    pub fn add_scaled(&mut self, other: &MPoly, mono: &Monomial, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.mul(mono), &(d * c));
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars, self.conductor);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / den`; `NotDivisible` when `den` does not divide `self`.
    pub fn exact_divide(&self, den: &MPoly) -> Result<MPoly, PolyError> {
        self.compatible(den)?;
        let (lm, lc) = den.leading_term().ok_or(PolyError::DivisionByZero)?;
        let lc_inv = lc.inverse().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut q = MPoly::zero(self.nvars, self.conductor);
        if den.len() == 1 {
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return Err(PolyError::NotDivisible);
                }
                q.terms.insert(lm.quotient_of(m), c * &lc_inv);
            }
            return Ok(q);
        }
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(PolyError::NotDivisible);
            }
            let qm = lm.quotient_of(m);
            let qc = c * &lc_inv;
            rem.add_scaled(den, &qm, &-&qc);
            q.terms.insert(qm, qc);
        }
        Ok(q)
    }

    /// Highest `k` with `den^k` dividing `self` (capped at `cap`), together with the quotient.
    pub fn divide_out(&self, den: &MPoly, cap: u32) -> (u32, MPoly) {
        let mut k = 0;
        let mut cur = self.clone();
        if cur.is_zero() {
            return (cap, cur);
        }
        while k < cap {
            match cur.exact_divide(den) {
                Ok(q) => {
                    cur = q;
                    k += 1;
                }
                Err(_) => break,
            }
        }
        (k, cur)
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars, self.conductor);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                out.terms.insert(m.with_exp(i, e - 1), c.mul_int(e as i64));
            }
        }
        out
    }

    /// Some(c) with `self = c * other`, the scalar-multiple relation.
    pub fn eq_up_to_scalar(&self, other: &MPoly) -> Option<CycNum> {
        if self.compatible(other).is_err() {
            return None;
        }
        match (self.leading_term(), other.leading_term()) {
            (None, None) => Some(CycNum::one(self.conductor)),
            (Some((ma, ca)), Some((mb, cb))) => {
                if ma != mb || self.len() != other.len() {
                    return None;
                }
                let c = ca.checked_div(cb).ok()?;
                (other.scale(&c) == *self).then_some(c)
            }
            _ => None,
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> MPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inverse().expect("nonzero")),
        }
    }

    pub fn map_coeffs<F: Fn(&CycNum) -> CycNum>(&self, f: F) -> MPoly {
        MPoly::from_terms(self.nvars, self.conductor, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> MPoly {
        MPoly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }
}

/// Display name of variable `i` among `n`.
pub fn var_name(n: usize, i: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn fmt_coeff(c: &CycNum) -> (bool, String) {
    let s = c.to_string();
    if c.is_rational() {
        if let Some(rest) = s.strip_prefix('-') {
            return (true, rest.to_string());
        }
        (false, s)
    } else {
        (false, format!("({s})"))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, cs) = fmt_coeff(c);
            let mut vars = Vec::new();
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => vars.push(var_name(self.nvars, i)),
                    _ => vars.push(format!("{}^{}", var_name(self.nvars, i), e)),
                }
            }
            let body = if vars.is_empty() {
                cs
            } else if cs == "1" {
                vars.join("*")
            } else {
                format!("{}*{}", cs, vars.join("*"))
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.conductor, self)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $f:ident, $checked:ident) => {
        impl $tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &MPoly) -> MPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly {
                (&self).$f(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_det(rows: &[Vec<MPoly>]) -> Result<MPoly, PolyError> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(PolyError::CountMismatch { expected: n, found: rows.first().map_or(0, |r| r.len()) });
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(det_rec(rows, 0, &cols))
}

fn det_rec(rows: &[Vec<MPoly>], r: usize, cols: &[usize]) -> MPoly {
    if cols.len() == 1 {
        return rows[r][cols[0]].clone();
    }
    let proto = &rows[0][0];
    let mut acc = MPoly::zero(proto.nvars(), proto.conductor());
    for (k, &c) in cols.iter().enumerate() {
        let entry = &rows[r][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(rows, r + 1, &rest);
        let term = entry * &minor;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Determinant of the Jacobian matrix `(d f_j / d x_i)`.
pub fn jacobian_det(fs: &[MPoly]) -> Result<MPoly, PolyError> {
    let Some(first) = fs.first() else {
        return Err(PolyError::CountMismatch { expected: 0, found: 0 });
    };
    let n = first.nvars();
    if fs.len() != n {
        return Err(PolyError::CountMismatch { expected: n, found: fs.len() });
    }
    let rows: Vec<Vec<MPoly>> = fs.iter().map(|f| (0..n).map(|i| f.derivative(i)).collect()).collect();
    poly_det(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(m: u32) -> (MPoly, MPoly) {
        (MPoly::var(2, m, 0), MPoly::var(2, m, 1))
    }

    #[test]
    fn difference_of_cubes() {
        let (x, y) = xy(1);
        let lhs = &(&x - &y) * &(&(&(&x * &x) + &(&x * &y)) + &(&y * &y));
        assert_eq!(lhs, &x.pow(3) - &y.pow(3));
        assert_eq!(&lhs + &MPoly::zero(2, 1), lhs);
    }

    #[test]
    fn exact_division() {
        let x = MPoly::var(3, 1, 0);
        let y = MPoly::var(3, 1, 1);
        let z = MPoly::var(3, 1, 2);
        let num = &x.pow(3) - &y.pow(3);
        assert_eq!(num.exact_divide(&(&x - &y)).unwrap(), &(&x.pow(2) + &(&x * &y)) + &y.pow(2));
        assert_eq!(num.exact_divide(&(&x - &z)), Err(PolyError::NotDivisible));
        assert_eq!(num.exact_divide(&MPoly::zero(3, 1)), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn jacobian_b2() {
        let (x, y) = xy(1);
        let f1 = &x.pow(2) + &y.pow(2);
        let f2 = &x.pow(2) * &y.pow(2);
        let j = jacobian_det(&[f1, f2]).unwrap();
        let expect = &(&x.pow(3) * &y).scale(&CycNum::from_int(1, 4)) - &(&x * &y.pow(3)).scale(&CycNum::from_int(1, 4));
        assert_eq!(j, expect);
        assert_eq!(jacobian_det(&[x.clone(), y.clone()]).unwrap(), MPoly::one(2, 1));
        assert!(jacobian_det(&[x]).is_err());
    }

    #[test]
    fn scalar_multiples() {
        let (x, y) = xy(4);
        let p = &x + &y;
        let i = CycNum::root_of_unity(4, 1);
        let q = p.scale(&i);
        assert_eq!(q.eq_up_to_scalar(&p), Some(i));
        assert_eq!((&x - &y).eq_up_to_scalar(&p), None);
    }

    #[test]
    fn homogeneity() {
        let (x, y) = xy(1);
        assert_eq!((&x.pow(2) * &y).homogeneous_degree(), Ok(Some(3)));
        assert_eq!((&x + &MPoly::one(2, 1)).homogeneous_degree(), Err(PolyError::NotHomogeneous));
    }

    #[test]
    fn display() {
        let (x, y) = xy(1);
        let p = &(&x.pow(2) - &y.scale(&CycNum::from_int(1, 3))) + &MPoly::one(2, 1);
        assert_eq!(p.to_string(), "x^2 - 3*y + 1");
    }
}
