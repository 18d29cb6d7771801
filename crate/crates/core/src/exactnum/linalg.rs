//! Sparse exact linear algebra: incremental echelon bases.
//!
//! Vectors are sparse maps from an ordered key (a monomial, a form basis
//! element, ...) to field elements. Each stored row is normalized so that its
//! largest key, the pivot, carries coefficient one.

use std::collections::BTreeMap;

use super::CycNum;

pub type SparseVec<K> = BTreeMap<K, CycNum>;

/// `v -= c * row`, dropping cancelled entries.
pub fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &CycNum, row: &SparseVec<K>) {
    for (k, r) in row {
        let d = c * r;
        match v.get_mut(k) {
            Some(e) => {
                *e -= &d;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                v.insert(k.clone(), -d);
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for EchelonBasis<K> {
    fn default() -> Self {
        EchelonBasis { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }

    /// Fully reduces `v`: the result has no key equal to a pivot.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        let mut bound: Option<K> = None;
        loop {
            let next = match &bound {
                None => v.keys().rev().find(|k| self.rows.contains_key(*k)).cloned(),
                Some(b) => v.range(..b.clone()).rev().map(|(k, _)| k).find(|k| self.rows.contains_key(*k)).cloned(),
            };
            let Some(k) = next else { break };
            let c = v[&k].clone();
            axpy(&mut v, &c, &self.rows[&k]);
            bound = Some(k);
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span. Returns the normalized new row when `v` was independent.
    pub fn insert(&mut self, v: SparseVec<K>) -> Option<SparseVec<K>> {
        let mut r = self.reduce(v);
        let (pivot, lead) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))?;
        if !lead.is_one() {
            let inv = lead.inverse().expect("nonzero leading coefficient");
            for e in r.values_mut() {
                *e = &*e * &inv;
            }
        }
        // Keep earlier rows reduced against the new pivot.
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(row, &c, &r);
            }
        }
        self.rows.insert(pivot, r.clone());
        Some(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(m: u32, entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, CycNum::from_int(m, c))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(vec_of(1, &[(0, 1), (1, 2)])).is_some());
        assert!(b.insert(vec_of(1, &[(1, 1), (2, 1)])).is_some());
        assert!(b.insert(vec_of(1, &[(0, 2), (1, 4)])).is_none());
        assert_eq!(b.rank(), 2);
        // (0,1)+(1,2) + 2*((1,1)+(2,1))
        assert!(b.contains(&vec_of(1, &[(0, 1), (1, 4), (2, 2)])));
        assert!(!b.contains(&vec_of(1, &[(0, 1)])));
    }

    #[test]
    fn rows_stay_fully_reduced() {
        let mut b = EchelonBasis::new();
        b.insert(vec_of(1, &[(0, 1), (1, 1)]));
        b.insert(vec_of(1, &[(0, 1)]));
        for row in b.rows() {
            let pivot = row.keys().next_back().unwrap();
            for other in b.pivots() {
                if other != pivot {
                    assert!(!row.contains_key(other));
                }
            }
        }
    }
}
