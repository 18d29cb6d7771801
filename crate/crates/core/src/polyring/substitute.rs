//! Linear coordinate changes `x -> Mx` acting on polynomials and forms.
//!
//! `Substitution::apply_poly(f)` returns `f(Mx)`; forms are pulled back, so
//! `dx_i` maps to `sum_j M_ij dx_j` and `dx_I` to `sum_J det M[I,J] dx_J`.
//! Monomial matrices take a fast path that never expands products; dense
//! matrices build the images of all degree-d monomials one degree at a time
//! and keep a few such layers cached.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::exactnum::{CycNum, Matrix};

use super::{DiffForm, MPoly, Monomial, Multiindex, PolyError};

/// An invertible matrix used as a coordinate change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    matrix: Matrix,
    inverse: Matrix,
}

impl LinearChange {
    pub fn new(matrix: Matrix) -> Result<LinearChange, PolyError> {
        if !matrix.is_square() {
            return Err(PolyError::Singular);
        }
        let inverse = matrix.inverse().map_err(|_| PolyError::Singular)?;
        Ok(LinearChange { matrix, inverse })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    pub fn substitution(&self) -> Substitution {
        Substitution::new(&self.matrix)
    }
}

type Layer = FxHashMap<Monomial, MPoly>;

const LAYER_CACHE: usize = 6;

enum Kind {
    /// `x_i -> scal_i * x_{perm_i}`.
    Monomial {
        perm: Vec<usize>,
        scal: Vec<CycNum>,
        /// When every scalar is a root of unity: its exponent over `roots.len()`.
        root_exps: Option<Vec<u32>>,
        roots: Vec<CycNum>,
    },
    /// `x_i -> lin[i] / den[i]` with `lin[i]` having integral coordinates.
    Dense {
        lin: Vec<MPoly>,
        den: Vec<BigInt>,
        layers: Mutex<Vec<(usize, Arc<Layer>)>>,
    },
}

pub struct Substitution {
    n: usize,
    m: u32,
    matrix: Matrix,
    kind: Kind,
}

/// Sign of the permutation sorting `v` (distinct entries).
fn sort_sign(v: &[usize]) -> i32 {
    let mut inv = 0;
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            if v[a] > v[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn small_det(rows: &[Vec<CycNum>]) -> CycNum {
    let a = Matrix::from_rows(rows.to_vec()).expect("nonempty minor");
    a.det().expect("square minor")
}

impl Substitution {
    pub fn new(matrix: &Matrix) -> Substitution {
        assert!(matrix.is_square(), "substitution matrix must be square");
        let n = matrix.rows();
        let m = matrix.conductor();
        let kind = if matrix.is_monomial() {
            let mut perm = Vec::with_capacity(n);
            let mut scal = Vec::with_capacity(n);
            for i in 0..n {
                let j = (0..n).find(|&j| !matrix.get(i, j).is_zero()).expect("monomial row");
                perm.push(j);
                scal.push(matrix.get(i, j).clone());
            }
            let root_exps: Option<Vec<u32>> = scal.iter().map(|c| c.root_of_unity_exponent()).collect();
            let big_n = CycNum::roots_of_unity_count(m);
            let roots = (0..big_n).map(|e| CycNum::from_root_exponent(m, e)).collect();
            Kind::Monomial {
                perm,
                scal,
                root_exps,
                roots,
            }
        } else {
            let mut lin = Vec::with_capacity(n);
            let mut den = Vec::with_capacity(n);
            for i in 0..n {
                let d = matrix.row(i).iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator()));
                let coeffs: Vec<CycNum> = matrix.row(i).iter().map(|c| c.mul_ratio(&d, &BigInt::one())).collect();
                lin.push(MPoly::linear(&coeffs));
                den.push(d);
            }
            Kind::Dense {
                lin,
                den,
                layers: Mutex::new(Vec::new()),
            }
        };
        Substitution {
            n,
            m,
            matrix: matrix.clone(),
            kind,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self.kind, Kind::Monomial { .. })
    }

    /// Images of every degree-d monomial (dense case), with integral coordinates.
    fn layer(&self, d: usize) -> Arc<Layer> {
        let Kind::Dense { lin, layers, .. } = &self.kind else {
            unreachable!("layers only exist for dense substitutions")
        };
        let start = {
            let cache = layers.lock().expect("layer cache");
            if let Some((_, l)) = cache.iter().find(|(e, _)| *e == d) {
                return l.clone();
            }
            cache.iter().filter(|(e, _)| *e < d).max_by_key(|(e, _)| *e).map(|(e, l)| (*e, l.clone()))
        };
        let (mut deg, mut cur) = match start {
            Some((e, l)) => (e, l),
            None => {
                let mut l = Layer::default();
                l.insert(Monomial::one(self.n), MPoly::one(self.n, self.m));
                (0, Arc::new(l))
            }
        };
        while deg < d {
            deg += 1;
            let monos = Monomial::all_of_degree(self.n, deg);
            let prev = &cur;
            let next: Layer = monos
                .into_par_iter()
                .map(|e| {
                    let i = e.exps().iter().position(|&k| k > 0).expect("positive degree");
                    let lower = e.with_exp(i, e.exp(i) - 1);
                    let img = &prev[&lower] * &lin[i];
                    (e, img)
                })
                .collect();
            cur = Arc::new(next);
        }
        let mut cache = layers.lock().expect("layer cache");
        if !cache.iter().any(|(e, _)| *e == d) {
            if cache.len() >= LAYER_CACHE {
                cache.remove(0);
            }
            cache.push((d, cur.clone()));
        }
        cur
    }

    /// `f(Mx)`.
    pub fn apply_poly(&self, f: &MPoly) -> MPoly {
        assert_eq!(f.nvars(), self.n, "substitution dimension mismatch");
        match &self.kind {
            Kind::Monomial {
                perm,
                scal,
                root_exps,
                roots,
            } => {
                let mut terms = BTreeMap::new();
                let big_n = roots.len() as u64;
                for (mono, c) in f.terms() {
                    let mut exps = vec![0u16; self.n];
                    for (i, &e) in mono.exps().iter().enumerate() {
                        exps[perm[i]] += e;
                    }
                    let coeff = match root_exps {
                        Some(re) => {
                            let k: u64 = mono.exps().iter().zip(re).map(|(&e, &r)| e as u64 * r as u64).sum();
                            let k = (k % big_n) as usize;
                            if k == 0 {
                                c.clone()
                            } else {
                                c * &roots[k]
                            }
                        }
                        None => {
                            let mut acc = c.clone();
                            for (i, &e) in mono.exps().iter().enumerate() {
                                if e > 0 {
                                    acc = &acc * &scal[i].pow(e as i64).expect("nonzero scalar");
                                }
                            }
                            acc
                        }
                    };
                    terms.insert(Monomial::new(&exps), coeff);
                }
                MPoly::from_terms(self.n, self.m, terms)
            }
            Kind::Dense { den, .. } => {
                let mut by_degree: BTreeMap<usize, Vec<(&Monomial, &CycNum)>> = BTreeMap::new();
                for (mono, c) in f.terms() {
                    by_degree.entry(mono.degree()).or_default().push((mono, c));
                }
                let mut out = MPoly::zero(self.n, self.m);
                let one_mono = Monomial::one(self.n);
                for (d, terms) in by_degree {
                    let layer = self.layer(d);
                    for (mono, c) in terms {
                        let mut scale = BigInt::one();
                        for (i, &e) in mono.exps().iter().enumerate() {
                            if e > 0 && !den[i].is_one() {
                                scale *= num_traits::pow(den[i].clone(), e as usize);
                            }
                        }
                        let c = if scale.is_one() { c.clone() } else { c.mul_ratio(&BigInt::one(), &scale) };
                        out.add_scaled(&layer[mono], &one_mono, &c);
                    }
                }
                out
            }
        }
    }

    /// Image of `dx_I` as a list of `(J, coefficient)`.
    fn basis_image(&self, idx: &[u8]) -> Vec<(Multiindex, CycNum)> {
        let p = idx.len();
        if p == 0 {
            return vec![(Multiindex::new(), CycNum::one(self.m))];
        }
        if let Kind::Monomial { perm, scal, .. } = &self.kind {
            let targets: Vec<usize> = idx.iter().map(|&i| perm[i as usize]).collect();
            let mut c = CycNum::one(self.m);
            for &i in idx {
                c = &c * &scal[i as usize];
            }
            if sort_sign(&targets) < 0 {
                c = -c;
            }
            let mut j: Multiindex = targets.iter().map(|&t| t as u8).collect();
            j.sort_unstable();
            return vec![(j, c)];
        }
        let mut out = Vec::new();
        for j in super::form::multiindices(self.n, p) {
            let rows: Vec<Vec<CycNum>> = idx
                .iter()
                .map(|&a| j.iter().map(|&b| self.matrix.get(a as usize, b as usize).clone()).collect())
                .collect();
            let d = small_det(&rows);
            if !d.is_zero() {
                out.push((j, d));
            }
        }
        out
    }

    /// Pullback of a form.
    pub fn apply_form(&self, w: &DiffForm) -> DiffForm {
        assert_eq!(w.nvars(), self.n, "substitution dimension mismatch");
        let mut out = DiffForm::zero(self.n, self.m, w.degree());
        for (idx, f) in w.components() {
            let g = self.apply_poly(f);
            for (j, c) in self.basis_image(idx) {
                out.add_component(j, &g.scale(&c));
            }
        }
        out
    }
}

impl std::fmt::Debug for Substitution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Substitution({:?})", self.matrix)
    }
}
