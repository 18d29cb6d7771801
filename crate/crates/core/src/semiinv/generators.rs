//! Basic invariants and generators of the χ-invariant 1-forms, found degree by
//! degree with exact linear algebra on graded pieces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactnum::EchelonBasis;
use crate::polyring::{jacobian_det, DiffForm, MPoly};
use crate::reflgroup::{isotypic_dim, Character};

use super::wedge::{saito_check, GeneratorCertificate};
use super::{isotypic_basis, GroupActions, SemiError, SemiInvariantContext};

/// Algebraically independent homogeneous generators of the invariant ring.
#[derive(Clone, Debug, Serialize)]
pub struct BasicInvariants {
    pub fs: Vec<MPoly>,
    pub degrees: Vec<usize>,
}

impl BasicInvariants {
    /// All monomials `f^e` with `Σ e_i d_i = d`.
    pub fn monomials_of_degree(&self, d: usize) -> Vec<MPoly> {
        let (n, m) = self.fs.first().map_or((0, 1), |f| (f.nvars(), f.conductor()));
        weighted_exponents(&self.degrees, d)
            .into_iter()
            .map(|e| {
                e.iter()
                    .zip(&self.fs)
                    .fold(MPoly::one(n, m), |acc, (&k, f)| if k == 0 { acc } else { &acc * &f.pow(k as u32) })
            })
            .collect()
    }

    /// Dimension of the degree-d piece of the invariant ring.
    pub fn ring_dim(&self, d: usize) -> usize {
        weighted_exponents(&self.degrees, d).len()
    }
}

/// Exponent vectors `e` with `Σ e_i w_i = d` (all weights positive).
pub fn weighted_exponents(weights: &[usize], d: usize) -> Vec<Vec<usize>> {
    fn go(weights: &[usize], d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match weights.split_first() {
            None => {
                if d == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&w, rest)) => {
                for k in 0..=d / w {
                    cur.push(k);
                    go(rest, d - k * w, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(weights, d, &mut Vec::new(), &mut out);
    out
}

/// Rescales a nonzero form so its coefficients are integral in the power basis
/// with trivial content and its leading coefficient is a positive integer.
pub fn normalize_integral(w: &DiffForm) -> DiffForm {
    let lead = w
        .components()
        .last()
        .and_then(|(_, f)| f.leading_coeff().cloned());
    let Some(lead) = lead else {
        return w.clone();
    };
    let w = w.scale(&lead.inverse().expect("nonzero leading coefficient"));
    let mut den = BigInt::one();
    for (_, f) in w.components() {
        for (_, c) in f.terms() {
            den = den.lcm(&c.denominator());
        }
    }
    let w = w.map_coeffs(|f| f.map_coeffs(|c| c.mul_ratio(&den, &BigInt::one())));
    let mut g = BigInt::zero();
    for (_, f) in w.components() {
        for (_, c) in f.terms() {
            g = g.gcd(&c.numerator_gcd());
        }
    }
    w.map_coeffs(|f| f.map_coeffs(|c| c.mul_ratio(&BigInt::one(), &g)))
}

/// Basic invariants, lowest degrees first; each new invariant is the residual
/// of the isotypic basis modulo products of the ones already found.
pub fn basic_invariants(actions: &GroupActions) -> Result<BasicInvariants, SemiError> {
    let g = actions.group();
    let (n, m) = (g.dim(), g.conductor());
    let trivial = Character::trivial(g);
    let mut found = BasicInvariants { fs: Vec::new(), degrees: Vec::new() };
    let cap = g.order();
    for d in 1..=cap {
        if found.fs.len() == n {
            break;
        }
        let iso = isotypic_dim(g, &trivial, 0, d)?;
        if iso == 0 {
            continue;
        }
        let mut ech = EchelonBasis::new();
        for f in found.monomials_of_degree(d) {
            ech.insert(DiffForm::from_poly(f).to_sparse());
        }
        if ech.rank() == iso {
            continue;
        }
        for b in isotypic_basis(actions, &trivial, 0, d)?.iter() {
            if let Some(r) = ech.insert(b.to_sparse()) {
                let f = normalize_integral(&DiffForm::from_sparse(n, m, 0, &r));
                found.fs.push(f.coeff(&[]));
                found.degrees.push(d);
            }
        }
        if found.fs.len() > n {
            return Err(SemiError::Assertion(format!("more than {n} basic invariants; not a reflection group")));
        }
    }
    if found.fs.len() < n {
        return Err(SemiError::DegreeCapReached { cap, found: found.fs.len(), needed: n });
    }
    let prod: usize = found.degrees.iter().product();
    if prod != g.order() {
        return Err(SemiError::Assertion(format!("product of degrees {prod} differs from |G| = {}", g.order())));
    }
    if jacobian_det(&found.fs)?.is_zero() {
        return Err(SemiError::Assertion("basic invariants are algebraically dependent".into()));
    }
    Ok(found)
}

/// Progress report of a generator search.
#[derive(Clone, Debug, Serialize)]
pub struct SearchStep {
    pub degree: usize,
    pub isotypic_dim: usize,
    pub span_rank: usize,
    pub new_generators: usize,
}

/// Finds `n` χ-invariant 1-forms generating the module over the invariant
/// ring, then certifies them with [`saito_check`]; a failed certificate is an
/// internal error.
pub fn find_generators(
    ctx: &SemiInvariantContext,
    basics: &BasicInvariants,
    degree_cap: usize,
) -> Result<(GeneratorCertificate, Vec<SearchStep>), SemiError> {
    let g = ctx.group();
    let (n, m) = (g.dim(), g.conductor());
    let mut forms: Vec<(usize, DiffForm)> = Vec::new();
    let mut log = Vec::new();
    for d in 0..=degree_cap {
        if forms.len() == n {
            break;
        }
        let iso = isotypic_dim(g, ctx.chi(), 1, d)?;
        if iso == 0 {
            continue;
        }
        let mut ech = EchelonBasis::new();
        for (e, w) in &forms {
            for f in basics.monomials_of_degree(d - e) {
                ech.insert(w.mul_poly(&f).to_sparse());
            }
        }
        let span_rank = ech.rank();
        let before = forms.len();
        if span_rank < iso {
            for b in isotypic_basis(ctx.actions(), ctx.chi(), 1, d)?.iter() {
                if let Some(r) = ech.insert(b.to_sparse()) {
                    forms.push((d, normalize_integral(&DiffForm::from_sparse(n, m, 1, &r))));
                }
            }
        }
        log.push(SearchStep { degree: d, isotypic_dim: iso, span_rank, new_generators: forms.len() - before });
        if forms.len() > n {
            return Err(SemiError::Assertion(format!("found {} generators, more than the rank {n}", forms.len())));
        }
    }
    if forms.len() < n {
        return Err(SemiError::DegreeCapReached { cap: degree_cap, found: forms.len(), needed: n });
    }
    let forms: Vec<DiffForm> = forms.into_iter().map(|(_, w)| w).collect();
    match saito_check(&forms, ctx)? {
        Ok(cert) => Ok((cert, log)),
        Err(f) => Err(SemiError::Assertion(format!("generator search output fails the criterion: {f}"))),
    }
}

/// Whether the homogeneous form `w` lies in the invariant-ring span of `gens`.
pub fn r_span_contains(basics: &BasicInvariants, gens: &[DiffForm], w: &DiffForm) -> bool {
    let Ok(Some(d)) = w.coeff_degree() else {
        return w.is_zero();
    };
    let mut ech = EchelonBasis::new();
    for g in gens {
        if let Ok(Some(e)) = g.coeff_degree() {
            if e <= d && g.degree() == w.degree() {
                for f in basics.monomials_of_degree(d - e) {
                    ech.insert(g.mul_poly(&f).to_sparse());
                }
            }
        }
    }
    ech.contains(&w.to_sparse())
}

#[cfg(test)]
mod tests {
    use super::super::testing::{b2, ctx, cyclic};
    use super::*;
    use crate::polyring::parse_poly;

    #[test]
    fn b2_basic_invariants() {
        let a = b2();
        let b = basic_invariants(&a).unwrap();
        assert_eq!(b.degrees, vec![2, 4]);
        let j = jacobian_det(&b.fs).unwrap();
        assert!(j.eq_up_to_scalar(&parse_poly("x*y*(x^2 - y^2)", 2, 2).unwrap()).is_some());
    }

    #[test]
    fn cyclic_generators() {
        for m in [2u32, 3, 6] {
            let a = cyclic(m);
            let b = basic_invariants(&a).unwrap();
            assert_eq!(b.fs, vec![parse_poly(&format!("x^{m}"), 1, m).unwrap()]);
            for k in 0..m as i64 {
                let c = ctx(&a, k);
                let (cert, _) = find_generators(&c, &b, 2 * m as usize).unwrap();
                let target = DiffForm::dx(1, m, 0).mul_poly(c.q_chi_det());
                assert!(cert.forms[0].eq_up_to_scalar(&target).is_some(), "m={m} k={k}");
                assert_eq!(cert.degrees[0] as u32, c.a_det()[0]);
            }
        }
    }

    #[test]
    fn b2_trivial_generators_match_differentials() {
        let a = b2();
        let b = basic_invariants(&a).unwrap();
        let c = ctx(&a, 0);
        let (cert, _) = find_generators(&c, &b, 6).unwrap();
        let dfs: Vec<DiffForm> = b.fs.iter().map(DiffForm::differential).collect();
        for w in &cert.forms {
            assert!(r_span_contains(&b, &dfs, w));
        }
        for w in &dfs {
            assert!(r_span_contains(&b, &cert.forms, w));
        }
    }

    #[test]
    fn weighted_exponent_counts() {
        assert_eq!(weighted_exponents(&[2, 4], 8).len(), 3);
        assert_eq!(weighted_exponents(&[6, 12, 18], 36).len(), 7);
        assert_eq!(weighted_exponents(&[3], 4).len(), 0);
    }

    #[test]
    fn normalization_is_integral_and_primitive() {
        let f = parse_poly("3/4*x^2 - 3/2*y^2", 2, 2).unwrap();
        let w = normalize_integral(&DiffForm::from_poly(f));
        assert_eq!(w.coeff(&[]), parse_poly("x^2 - 2*y^2", 2, 2).unwrap());
    }
}
