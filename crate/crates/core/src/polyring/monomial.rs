//! Exponent vectors with graded lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// An exponent vector `x_1^e_1 ... x_n^e_n`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `x_1`, then `x_2`, and so on (so `x_1 > x_2 > ... > x_n`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 4]>);

impl Monomial {
    pub fn new(exps: &[u16]) -> Monomial {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(n: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = SmallVec::from_elem(0, n);
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Monomial {
        let mut out = self.clone();
        out.0[i] = e;
        out
    }

    /// All monomials of total degree `d` in `n` variables, in ascending order.
    pub fn all_of_degree(n: usize, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; n];
        fn rec(i: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if i + 1 == n {
                cur[i] = left as u16;
                out.push(Monomial::new(cur));
                return;
            }
            for e in 0..=left {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let x = Monomial::new(&[1, 0]);
        let y = Monomial::new(&[0, 1]);
        let xx = Monomial::new(&[2, 0]);
        let xy = Monomial::new(&[1, 1]);
        assert!(x > y);
        assert!(xy > x);
        assert!(xx > xy);
    }

    #[test]
    fn enumerate_degree() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(2, 5).len(), 6);
        let v = Monomial::all_of_degree(3, 4);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
