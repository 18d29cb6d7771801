//! Exact elements of a cyclotomic field Q(zeta_m).
//!
//! Values are kept in canonical form: coordinates in the power basis
//! `1, z, ..., z^(phi(m)-1)` over a single positive denominator, with the
//! numerator vector and denominator coprime. Canonical form makes equality and
//! hashing structural. Arithmetic runs on `i128` and falls back to `BigInt`
//! on overflow; a value is stored in the small form whenever it fits.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

use super::table::{table, CycloTable};
use super::NumError;

type Nums = SmallVec<[i128; 4]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Small { num: Nums, den: i128 },
    Big(Box<BigRepr>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct BigRepr {
    num: Vec<BigInt>,
    den: BigInt,
}

#[derive(Clone)]
pub struct CycNum {
    table: &'static CycloTable,
    repr: Repr,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.table.m == other.table.m && self.repr == other.repr
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.table.m.hash(state);
        self.repr.hash(state);
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn normalize_small(mut num: Nums, mut den: i128) -> Option<Repr> {
    debug_assert!(den != 0);
    if den < 0 {
        den = den.checked_neg()?;
        for x in num.iter_mut() {
            *x = x.checked_neg()?;
        }
    }
    if den != 1 {
        let mut g = den as u128;
        for x in num.iter() {
            if g == 1 {
                break;
            }
            g = gcd_u128(g, x.unsigned_abs());
        }
        if num.iter().all(|x| *x == 0) {
            g = den as u128;
        }
        if g > 1 {
            let g = g as i128;
            den /= g;
            for x in num.iter_mut() {
                *x /= g;
            }
        }
    }
    Some(Repr::Small { num, den })
}

fn normalize_big(mut num: Vec<BigInt>, mut den: BigInt) -> Repr {
    debug_assert!(!den.is_zero());
    if den.is_negative() {
        den = -den;
        for x in num.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
    if num.iter().all(|x| x.is_zero()) {
        den = BigInt::one();
    } else if !den.is_one() {
        let mut g = den.clone();
        for x in num.iter() {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if !g.is_one() {
            den /= &g;
            for x in num.iter_mut() {
                *x /= &g;
            }
        }
    }
    // Demote when everything fits.
    let small_den = den.to_i128();
    if let Some(d) = small_den {
        let small: Option<Nums> = num.iter().map(|x| x.to_i128()).collect();
        if let Some(n) = small {
            return Repr::Small { num: n, den: d };
        }
    }
    Repr::Big(Box::new(BigRepr { num, den }))
}

fn to_big(repr: &Repr) -> (Vec<BigInt>, BigInt) {
    match repr {
        Repr::Small { num, den } => (num.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(*den)),
        Repr::Big(b) => (b.num.clone(), b.den.clone()),
    }
}

/// Reduce a coefficient vector indexed by exponent (any length) into the power basis.
fn fold_small(t: &CycloTable, acc: &[i128]) -> Option<Nums> {
    let phi = t.phi;
    let mut out: Nums = smallvec![0; phi];
    for (k, &c) in acc.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if k < phi {
            out[k] = out[k].checked_add(c)?;
        } else {
            let row = &t.powers[k % t.m as usize];
            for (i, &r) in row.iter().enumerate() {
                if r != 0 {
                    out[i] = out[i].checked_add(c.checked_mul(r as i128)?)?;
                }
            }
        }
    }
    Some(out)
}

fn fold_big(t: &CycloTable, acc: &[BigInt]) -> Vec<BigInt> {
    let phi = t.phi;
    let mut out = vec![BigInt::zero(); phi];
    for (k, c) in acc.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k < phi {
            out[k] += c;
        } else {
            let row = &t.powers[k % t.m as usize];
            for (i, &r) in row.iter().enumerate() {
                if r != 0 {
                    out[i] += c * r;
                }
            }
        }
    }
    out
}

fn add_small(a: &Nums, da: i128, b: &Nums, db: i128, sign: i128) -> Option<Repr> {
    if da == db {
        let num: Option<Nums> = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| x.checked_add(y.checked_mul(sign)?))
            .collect();
        let num = num?;
        if da == 1 {
            return Some(Repr::Small { num, den: 1 });
        }
        return normalize_small(num, da);
    }
    let g = gcd_u128(da as u128, db as u128) as i128;
    let fa = db / g;
    let fb = da / g;
    let den = da.checked_mul(fa)?;
    let num: Option<Nums> = a
        .iter()
        .zip(b.iter())
        .map(|(x, y)| x.checked_mul(fa)?.checked_add(y.checked_mul(fb)?.checked_mul(sign)?))
        .collect();
    normalize_small(num?, den)
}

fn mul_small(t: &CycloTable, a: &Nums, da: i128, b: &Nums, db: i128) -> Option<Repr> {
    let phi = t.phi;
    let den = da.checked_mul(db)?;
    let num = if phi == 1 {
        smallvec![a[0].checked_mul(b[0])?]
    } else if a[1..].iter().all(|x| *x == 0) {
        let s = a[0];
        b.iter().map(|y| y.checked_mul(s)).collect::<Option<Nums>>()?
    } else if b[1..].iter().all(|x| *x == 0) {
        let s = b[0];
        a.iter().map(|x| x.checked_mul(s)).collect::<Option<Nums>>()?
    } else {
        let mut acc: SmallVec<[i128; 8]> = smallvec![0; 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if *y != 0 {
                    acc[i + j] = acc[i + j].checked_add(x.checked_mul(*y)?)?;
                }
            }
        }
        fold_small(t, &acc)?
    };
    if den == 1 {
        Some(Repr::Small { num, den: 1 })
    } else {
        normalize_small(num, den)
    }
}

impl CycNum {
    fn from_repr(table: &'static CycloTable, repr: Repr) -> CycNum {
        CycNum { table, repr }
    }

    pub fn zero(m: u32) -> CycNum {
        let t = table(m);
        CycNum::from_repr(t, Repr::Small { num: smallvec![0; t.phi], den: 1 })
    }

    pub fn one(m: u32) -> CycNum {
        CycNum::from_int(m, 1)
    }

    pub fn from_int(m: u32, k: i64) -> CycNum {
        let t = table(m);
        let mut num: Nums = smallvec![0; t.phi];
        num[0] = k as i128;
        CycNum::from_repr(t, Repr::Small { num, den: 1 })
    }

    /// The rational p/q. Panics if q = 0.
    pub fn from_ratio(m: u32, p: i64, q: i64) -> CycNum {
        assert!(q != 0, "zero denominator");
        let t = table(m);
        let mut num: Nums = smallvec![0; t.phi];
        num[0] = p as i128;
        let repr = normalize_small(num, q as i128).expect("i64 ratio fits");
        CycNum::from_repr(t, repr)
    }

    pub fn from_rational(m: u32, r: &BigRational) -> CycNum {
        let t = table(m);
        let mut num = vec![BigInt::zero(); t.phi];
        num[0] = r.numer().clone();
        CycNum::from_repr(t, normalize_big(num, r.denom().clone()))
    }

    /// z_m^k for any integer k.
    pub fn root_of_unity(m: u32, k: i64) -> CycNum {
        let t = table(m);
        let e = k.rem_euclid(m as i64) as usize;
        let num: Nums = t.powers[e].iter().map(|&c| c as i128).collect();
        CycNum::from_repr(t, Repr::Small { num, den: 1 })
    }

    /// Builds `sum_k coeffs[k] * z^k` from a (possibly redundant) exponent-indexed vector.
    pub fn from_exponent_coeffs(m: u32, coeffs: &[BigRational]) -> CycNum {
        let t = table(m);
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let folded = fold_big(t, &scaled);
        CycNum::from_repr(t, normalize_big(folded, den))
    }

    pub fn conductor(&self) -> u32 {
        self.table.m
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|x| *x == 0),
            Repr::Big(b) => b.num.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => *den == 1 && num[0] == 1 && num[1..].iter().all(|x| *x == 0),
            Repr::Big(_) => false,
        }
    }

    /// Some(r) when the value lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        let (num, den) = to_big(&self.repr);
        if num[1..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(BigRational::new(num[0].clone(), den))
    }

    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num[1..].iter().all(|x| *x == 0),
            Repr::Big(b) => b.num[1..].iter().all(|x| x.is_zero()),
        }
    }

    /// Coordinates in the power basis, padded with zeros to length m.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let (num, den) = to_big(&self.repr);
        let mut out: Vec<BigRational> = num.into_iter().map(|x| BigRational::new(x, den.clone())).collect();
        out.resize(self.table.m as usize, BigRational::zero());
        out
    }

    /// Positive common denominator of the power-basis coordinates.
    pub fn denominator(&self) -> BigInt {
        match &self.repr {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.den.clone(),
        }
    }

    /// Gcd of the integer numerator coordinates (zero for the zero element).
    pub fn numerator_gcd(&self) -> BigInt {
        let (num, _) = to_big(&self.repr);
        num.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Sign of the first nonzero numerator coordinate.
    pub fn leading_sign(&self) -> i32 {
        let (num, _) = to_big(&self.repr);
        for x in &num {
            if x.is_positive() {
                return 1;
            }
            if x.is_negative() {
                return -1;
            }
        }
        0
    }

    fn check(&self, other: &CycNum) -> Result<(), NumError> {
        if self.table.m != other.table.m {
            Err(NumError::ConductorMismatch {
                left: self.table.m,
                right: other.table.m,
            })
        } else {
            Ok(())
        }
    }

    fn add_signed(&self, other: &CycNum, sign: i128) -> CycNum {
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (&self.repr, &other.repr) {
            if let Some(r) = add_small(a, *da, b, *db, sign) {
                return CycNum::from_repr(self.table, r);
            }
        }
        let (a, da) = to_big(&self.repr);
        let (b, db) = to_big(&other.repr);
        let num: Vec<BigInt> = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| {
                let t = y * &da;
                if sign > 0 {
                    x * &db + t
                } else {
                    x * &db - t
                }
            })
            .collect();
        CycNum::from_repr(self.table, normalize_big(num, da * db))
    }

    fn mul_unchecked(&self, other: &CycNum) -> CycNum {
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (&self.repr, &other.repr) {
            if let Some(r) = mul_small(self.table, a, *da, b, *db) {
                return CycNum::from_repr(self.table, r);
            }
        }
        let (a, da) = to_big(&self.repr);
        let (b, db) = to_big(&other.repr);
        let phi = self.table.phi;
        let mut acc = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let num = fold_big(self.table, &acc);
        CycNum::from_repr(self.table, normalize_big(num, da * db))
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum, NumError> {
        self.check(other)?;
        Ok(self.add_signed(other, 1))
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum, NumError> {
        self.check(other)?;
        Ok(self.add_signed(other, -1))
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum, NumError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum, NumError> {
        self.check(other)?;
        let inv = other.inverse()?;
        Ok(self.mul_unchecked(&inv))
    }

    /// Multiplicative inverse, by solving `a * x = 1` over Q in the power basis.
    pub fn inverse(&self) -> Result<CycNum, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        let t = self.table;
        let phi = t.phi;
        if let Some(r) = self.to_rational() {
            return Ok(CycNum::from_rational(t.m, &r.recip()));
        }
        // Column j of the multiplication matrix is self * z^j.
        let mut mat: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self.mul_unchecked(&CycNum::root_of_unity(t.m, j as i64)).coeffs();
            for i in 0..phi {
                mat[i][j] = col[i].clone();
            }
        }
        mat[0][phi] = BigRational::one();
        for c in 0..phi {
            let p = (c..phi).find(|&r| !mat[r][c].is_zero()).ok_or(NumError::DivisionByZero)?;
            mat.swap(c, p);
            let inv = mat[c][c].recip();
            for k in c..=phi {
                mat[c][k] = &mat[c][k] * &inv;
            }
            for r in 0..phi {
                if r != c && !mat[r][c].is_zero() {
                    let f = mat[r][c].clone();
                    for k in c..=phi {
                        let d = &f * &mat[c][k];
                        mat[r][k] -= d;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = (0..phi).map(|i| mat[i][phi].clone()).collect();
        Ok(CycNum::from_exponent_coeffs(t.m, &sol))
    }

    /// Galois conjugation z -> z^-1, which is complex conjugation under the embedding.
    pub fn conjugate(&self) -> CycNum {
        let t = self.table;
        let m = t.m as usize;
        if self.is_rational() {
            return self.clone();
        }
        match &self.repr {
            Repr::Small { num, den } => {
                let mut acc = vec![0i128; m];
                for (k, &c) in num.iter().enumerate() {
                    acc[(m - k) % m] = c;
                }
                if let Some(n) = fold_small(t, &acc) {
                    if let Some(r) = normalize_small(n, *den) {
                        return CycNum::from_repr(t, r);
                    }
                }
            }
            Repr::Big(_) => {}
        }
        let (num, den) = to_big(&self.repr);
        let mut acc = vec![BigInt::zero(); m];
        for (k, c) in num.into_iter().enumerate() {
            acc[(m - k) % m] = c;
        }
        CycNum::from_repr(t, normalize_big(fold_big(t, &acc), den))
    }

    /// Floating-point value under z_m = exp(2 pi i / m). Diagnostics only.
    pub fn complex_embed(&self) -> Complex64 {
        let m = self.table.m as f64;
        let (num, den) = to_big(&self.repr);
        let d = den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / m;
            acc += Complex64::from_polar(1.0, theta) * c.to_f64().unwrap_or(f64::NAN);
        }
        acc / d
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, NumError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one(self.table.m);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        Ok(acc)
    }

    pub fn mul_int(&self, k: i64) -> CycNum {
        if let Repr::Small { num, den } = &self.repr {
            let scaled: Option<Nums> = num.iter().map(|x| x.checked_mul(k as i128)).collect();
            if let Some(n) = scaled {
                if *den == 1 {
                    return CycNum::from_repr(self.table, Repr::Small { num: n, den: 1 });
                }
                if let Some(r) = normalize_small(n, *den) {
                    return CycNum::from_repr(self.table, r);
                }
            }
        }
        let (num, den) = to_big(&self.repr);
        let k = BigInt::from(k);
        CycNum::from_repr(self.table, normalize_big(num.into_iter().map(|x| x * &k).collect(), den))
    }

    /// Multiplies by the rational p/q.
    pub fn mul_ratio(&self, p: &BigInt, q: &BigInt) -> CycNum {
        assert!(!q.is_zero(), "zero denominator");
        let (num, den) = to_big(&self.repr);
        CycNum::from_repr(self.table, normalize_big(num.into_iter().map(|x| x * p).collect(), den * q))
    }

    pub fn div_int(&self, k: i64) -> Result<CycNum, NumError> {
        if k == 0 {
            return Err(NumError::DivisionByZero);
        }
        if let Repr::Small { num, den } = &self.repr {
            if let Some(d) = den.checked_mul(k as i128) {
                if let Some(r) = normalize_small(num.clone(), d) {
                    return Ok(CycNum::from_repr(self.table, r));
                }
            }
        }
        let (num, den) = to_big(&self.repr);
        Ok(CycNum::from_repr(self.table, normalize_big(num, den * BigInt::from(k))))
    }

    /// When the value is a root of unity, returns `e` with value = exp(2 pi i e / N),
    /// where N = lcm(2, m) is the number of roots of unity in Q(zeta_m).
    pub fn root_of_unity_exponent(&self) -> Option<u32> {
        let m = self.table.m;
        let big_n = if m % 2 == 0 { m } else { 2 * m };
        for k in 0..m {
            let z = CycNum::root_of_unity(m, k as i64);
            if &z == self {
                return Some(if m % 2 == 0 { k } else { 2 * k });
            }
            if (-&z) == *self {
                // -z^k = exp(2 pi i (2k + m) / 2m) for odd m, exp(2 pi i (k + m/2)/m) for even m.
                let e = if m % 2 == 0 { (k + m / 2) % m } else { (2 * k + m) % big_n };
                return Some(e);
            }
        }
        None
    }

    /// Inverse of `root_of_unity_exponent`: exp(2 pi i e / N) with N = lcm(2, m).
    pub fn from_root_exponent(m: u32, e: u32) -> CycNum {
        if m % 2 == 0 {
            CycNum::root_of_unity(m, e as i64)
        } else if e % 2 == 0 {
            CycNum::root_of_unity(m, (e / 2) as i64)
        } else {
            -CycNum::root_of_unity(m, ((e + m) / 2) as i64)
        }
    }

    /// Number of roots of unity in Q(zeta_m).
    pub fn roots_of_unity_count(m: u32) -> u32 {
        if m % 2 == 0 {
            m
        } else {
            2 * m
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CycNum {
    /// GAP-style notation: `E(m)^k` denotes z_m^k.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.table.m;
        let coeffs = self.coeffs();
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match k {
                0 => fmt_rational(c),
                _ => {
                    let root = if k == 1 { format!("E({m})") } else { format!("E({m})^{k}") };
                    if c.is_one() {
                        root
                    } else if *c == -BigRational::one() {
                        format!("-{root}")
                    } else {
                        format!("{}*{root}", fmt_rational(c))
                    }
                }
            };
            parts.push(term);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut s = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.table.m, self)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, NumError> {
    let s = s.trim();
    let bad = || NumError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(NumError::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl CycNum {
    /// Encoding as m rational strings, entry k the coefficient of z^k.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(fmt_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(entries: &[S]) -> Result<CycNum, NumError> {
        if entries.is_empty() {
            return Err(NumError::Parse("empty coefficient array".into()));
        }
        let m = entries.len();
        if m as u32 > super::table::MAX_CONDUCTOR {
            return Err(NumError::Parse(format!("conductor {m} too large")));
        }
        let coeffs: Vec<BigRational> = entries.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<_, _>>()?;
        Ok(CycNum::from_exponent_coeffs(m as u32, &coeffs))
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(deserializer)?;
        CycNum::from_strings(&v).map_err(D::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $body:expr, $what:literal) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $f(self, rhs: &CycNum) -> CycNum {
                assert!(
                    self.table.m == rhs.table.m,
                    concat!("conductor mismatch in ", $what, ": {} vs {}"),
                    self.table.m,
                    rhs.table.m
                );
                #[allow(clippy::redundant_closure_call)]
                ($body)(self, rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: CycNum) -> CycNum {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: &CycNum) -> CycNum {
                (&self).$f(rhs)
            }
        }
    };
}

binop!(Add, add, |a: &CycNum, b: &CycNum| a.add_signed(b, 1), "add");
binop!(Sub, sub, |a: &CycNum, b: &CycNum| a.add_signed(b, -1), "sub");
binop!(Mul, mul, |a: &CycNum, b: &CycNum| a.mul_unchecked(b), "mul");

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        if let Repr::Small { num, den } = &self.repr {
            let n: Option<Nums> = num.iter().map(|x| x.checked_neg()).collect();
            if let Some(n) = n {
                return CycNum::from_repr(self.table, Repr::Small { num: n, den: *den });
            }
        }
        let (num, den) = to_big(&self.repr);
        CycNum::from_repr(self.table, normalize_big(num.into_iter().map(|x| -x).collect(), den))
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, k: i64) -> CycNum {
        CycNum::root_of_unity(m, k)
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycNum::from_int(4, -1));
    }

    #[test]
    fn two_cos_thirty_squared() {
        let s = &z(12, 1) + &z(12, -1);
        assert_eq!(&s * &s, CycNum::from_int(12, 3));
    }

    #[test]
    fn inverse_of_root_of_unity() {
        for m in [3u32, 4, 5, 7, 12] {
            for k in 0..m as i64 {
                assert_eq!(z(m, k).inverse().unwrap(), z(m, m as i64 - k));
            }
        }
    }

    #[test]
    fn inverse_general() {
        let a = &(&z(12, 1) + &CycNum::from_ratio(12, 3, 2)) * &z(12, 5);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(CycNum::zero(12).inverse(), Err(NumError::DivisionByZero));
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(z(4, 1).conjugate(), -z(4, 1));
        let r = CycNum::from_ratio(12, 3, 2);
        assert_eq!(r.conjugate(), r);
        let a = &z(12, 1) + &z(12, 5);
        assert_eq!(a.conjugate(), &z(12, -1) + &z(12, -5));
        assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn embeddings() {
        let c = z(4, 1).complex_embed();
        assert!((c.re).abs() < 1e-12 && (c.im - 1.0).abs() < 1e-12);
        let c = z(3, 1).complex_embed();
        assert!((c.re + 0.5).abs() < 1e-6 && (c.im - 0.8660254).abs() < 1e-6);
        let c = (&z(12, 1) + &z(12, -1)).complex_embed();
        assert!((c.re - 2.0 * (std::f64::consts::PI / 6.0).cos()).abs() < 1e-6);
        assert!((c.re - 1.7320508).abs() < 1e-6);
    }

    #[test]
    fn mismatch_is_error() {
        assert_eq!(
            z(4, 1).checked_add(&z(3, 1)),
            Err(NumError::ConductorMismatch { left: 4, right: 3 })
        );
        assert!(z(4, 1).checked_div(&CycNum::zero(4)).is_err());
    }

    #[test]
    fn overflow_falls_back_and_demotes() {
        let big = CycNum::from_int(12, i64::MAX);
        let mut acc = CycNum::one(12);
        for _ in 0..6 {
            acc = &acc * &big;
        }
        assert!(matches!(acc.repr, Repr::Big(_)));
        let mut back = acc.clone();
        for _ in 0..6 {
            back = back.checked_div(&big).unwrap();
        }
        assert!(back.is_one());
        assert!(matches!(back.repr, Repr::Small { .. }));
    }

    #[test]
    fn root_exponents() {
        assert_eq!(CycNum::from_int(3, -1).root_of_unity_exponent(), Some(3));
        assert_eq!(z(3, 1).root_of_unity_exponent(), Some(2));
        assert_eq!(z(12, 5).root_of_unity_exponent(), Some(5));
        assert_eq!(CycNum::from_int(12, 2).root_of_unity_exponent(), None);
        for m in [1u32, 2, 3, 5, 12] {
            for e in 0..CycNum::roots_of_unity_count(m) {
                let v = CycNum::from_root_exponent(m, e);
                assert_eq!(v.root_of_unity_exponent(), Some(e), "m={m} e={e}");
            }
        }
    }

    #[test]
    fn string_encoding() {
        let a = &CycNum::from_ratio(12, -3, 2) + &z(12, 3);
        let s = a.to_strings();
        assert_eq!(s.len(), 12);
        assert_eq!(s[0], "-3/2");
        assert_eq!(s[3], "1");
        assert_eq!(CycNum::from_strings(&s).unwrap(), a);
        // Redundant input reduces to the same value.
        let mut red = vec!["0".to_string(); 12];
        red[6] = "1".into();
        assert_eq!(CycNum::from_strings(&red).unwrap(), CycNum::from_int(12, -1));
    }
}
