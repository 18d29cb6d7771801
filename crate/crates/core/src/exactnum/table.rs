//! Per-conductor reduction data for the power basis of Q(zeta_m).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Reduction table for a fixed conductor `m`.
///
/// Elements of Q(zeta_m) are stored in the power basis `1, z, ..., z^(phi-1)`;
/// `powers[k]` holds the integer coordinates of `z^k` for `0 <= k < m`.
#[derive(Debug)]
pub struct CycloTable {
    pub m: u32,
    pub phi: usize,
    /// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
    pub cyclotomic_poly: Vec<i64>,
    pub powers: Vec<Vec<i64>>,
}

pub const MAX_CONDUCTOR: u32 = 4096;

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut q = vec![0i64; num.len() + 1 - dl];
    for i in (0..q.len()).rev() {
        let c = rem[i + dl - 1];
        q[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn cyclotomic(m: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by every Phi_d with d | m, d < m.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    let mut den = vec![1i64];
    for d in 1..m {
        if m % d == 0 {
            let pd = cyclotomic(d, cache);
            den = poly_mul(&den, &pd);
        }
    }
    let p = poly_div_monic(&num, &den);
    cache.insert(m, p.clone());
    p
}

impl CycloTable {
    fn build(m: u32) -> CycloTable {
        let mut cache = HashMap::new();
        let phi_poly = cyclotomic(m, &mut cache);
        let phi = phi_poly.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        // z^k for k < phi is a basis vector; higher powers via z * z^(k-1) and x^phi = -sum(c_i x^i).
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            let top = cur[phi - 1];
            let mut next = vec![0i64; phi];
            for i in (1..phi).rev() {
                next[i] = cur[i - 1];
            }
            for i in 0..phi {
                next[i] -= top * phi_poly[i];
            }
            cur = next;
        }
        CycloTable {
            m,
            phi,
            cyclotomic_poly: phi_poly,
            powers,
        }
    }
}

/// Shared table for conductor `m`. Tables are built once and live for the process.
pub fn table(m: u32) -> &'static CycloTable {
    static TABLES: OnceLock<Mutex<HashMap<u32, &'static CycloTable>>> = OnceLock::new();
    assert!(
        (1..=MAX_CONDUCTOR).contains(&m),
        "conductor {m} outside supported range 1..={MAX_CONDUCTOR}"
    );
    let map = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("cyclotomic table lock poisoned");
    guard
        .entry(m)
        .or_insert_with(|| Box::leak(Box::new(CycloTable::build(m))))
}

pub fn euler_phi(m: u32) -> usize {
    table(m).phi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(table(1).cyclotomic_poly, vec![-1, 1]);
        assert_eq!(table(2).cyclotomic_poly, vec![1, 1]);
        assert_eq!(table(3).cyclotomic_poly, vec![1, 1, 1]);
        assert_eq!(table(4).cyclotomic_poly, vec![1, 0, 1]);
        assert_eq!(table(12).cyclotomic_poly, vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(7), 6);
    }

    #[test]
    fn power_table_wraps() {
        let t = table(12);
        // z^6 = -1
        assert_eq!(t.powers[6], vec![-1, 0, 0, 0]);
        // z^4 = z^2 - 1
        assert_eq!(t.powers[4], vec![-1, 0, 1, 0]);
    }
}
