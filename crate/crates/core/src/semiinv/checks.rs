//! Executable versions of the structural identities: the a_H recurrence, the
//! local divisibility pattern near a hyperplane, divisibility of products,
//! the top-degree description, the Hilbert series of the isotypic
//! polynomials, the Jacobian identity and the ⌣-algebra axioms.

use serde::{Deserialize, Serialize};

use crate::exactnum::CycNum;
use crate::polyring::{jacobian_det, DiffForm, MPoly, Substitution};
use crate::reflgroup::{hilbert_series, isotypic_series, Character, Hyperplane, ReflectionGroup};

use super::sampling::FormSample;
use super::{chi_wedge, isotypic_basis, BasicInvariants, SemiError, SemiInvariantContext};

/// One named pass/fail line with free-form details.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, pass: bool, details: impl Into<String>) -> CheckResult {
        CheckResult { name: name.into(), pass, details: details.into() }
    }
}

/// Both sides of the a_H recurrence for one hyperplane.
#[derive(Clone, Debug, Serialize)]
pub struct Recurrence {
    pub hyperplane: String,
    pub order: u32,
    pub a_chi: u32,
    pub a_chi_det: u32,
    pub expected: u32,
    pub pass: bool,
}

/// `a_H(χ·det)` against `a_H(χ) − 1` (when `a_H(χ) ≠ 0`) or `o(s_H) − 1`.
pub fn ah_recurrence_check(g: &ReflectionGroup, h: &Hyperplane, chi: &Character) -> Result<Recurrence, SemiError> {
    let a = chi.a_h(g, h)?;
    let a_det = chi.twist(g, 1).a_h(g, h)?;
    let expected = if a != 0 { a - 1 } else { h.stab_order() - 1 };
    Ok(Recurrence {
        hyperplane: h.alpha().to_string(),
        order: h.stab_order(),
        a_chi: a,
        a_chi_det: a_det,
        expected,
        pass: a_det == expected,
    })
}

/// Whether `a_H(χ)` is the same for every generator of every pointwise stabilizer.
pub fn ah_generator_independent(g: &ReflectionGroup, chi: &Character) -> Result<bool, SemiError> {
    for h in g.arrangement() {
        let a = chi.a_h(g, h)?;
        for &s in h.stab_elements() {
            if g.element(s).order() as u32 != h.stab_order() {
                continue;
            }
            // For another generator s' = s_H^k the defining congruence changes
            // by the same power on both sides, so a_H must agree.
            if chi.a_h_with(g, h, s)? != a {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest power of the first variable dividing `f` (`u32::MAX` for zero).
fn x1_valuation(f: &MPoly) -> u32 {
    f.terms().map(|(mono, _)| mono.exp(0) as u32).min().unwrap_or(u32::MAX)
}

/// A violation of the local divisibility pattern.
#[derive(Clone, Debug, Serialize)]
pub struct LocalFailure {
    pub hyperplane: String,
    pub form: usize,
    pub index: Vec<u8>,
    pub valuation: u32,
    pub required: u32,
}

/// In coordinates where `x₁ = α_H` and `s_H` is diagonal, the coefficient of
/// `dx_I` of a χ-invariant form is divisible by `x₁^{a−1}` when `1 ∈ I` and by
/// `x₁^a` otherwise, with `a = a_H(χ)`. Checked for every hyperplane and every
/// sampled form; returns the number of (hyperplane, form) pairs checked.
pub fn local_divisibility_check(ctx: &SemiInvariantContext, sample: &FormSample) -> Result<Result<usize, LocalFailure>, SemiError> {
    let g = ctx.group();
    let mut checked = 0;
    for (h, &a) in g.arrangement().iter().zip(ctx.a()) {
        if a == 0 {
            // Both clauses are vacuous.
            checked += sample.len();
            continue;
        }
        let sub = Substitution::new(&h.adapted_coordinates());
        // The substitution is linear, so transforming the basis suffices.
        let images: Vec<Vec<DiffForm>> = sample
            .pieces
            .iter()
            .map(|piece| piece.basis.iter().map(|b| sub.apply_form(b)).collect())
            .collect();
        for k in 0..sample.len() {
            let w = sample.combine(k, &images);
            for (idx, f) in w.components() {
                let required = if idx.contains(&0) { a - 1 } else { a };
                let valuation = x1_valuation(f);
                if valuation < required {
                    return Ok(Err(LocalFailure {
                        hyperplane: h.alpha().to_string(),
                        form: k,
                        index: idx.iter().map(|&i| i + 1).collect(),
                        valuation,
                        required,
                    }));
                }
            }
            checked += 1;
        }
    }
    Ok(Ok(checked))
}

/// `Q_χ` divides `μ ∧ ω` for sampled pairs and the quotient is χ-invariant.
///
/// Invariance is verified on the quotients of basis pairs; each sampled
/// quotient is then checked to equal the matching combination of those.
pub fn product_divisibility_check(ctx: &SemiInvariantContext, sample: &FormSample, pairs: usize, seed: u64) -> Result<CheckResult, SemiError> {
    use rand::{Rng, SeedableRng};
    let name = format!("Q_chi divides products ({}-forms)", sample.p);
    if sample.is_empty() {
        return Ok(CheckResult::new(name, true, "no forms"));
    }
    let m = ctx.conductor();
    let pieces = &sample.pieces;
    // Quotients of basis pairs, keyed by (piece, i, piece, j).
    let mut basis_q = std::collections::HashMap::new();
    for (pa, a) in pieces.iter().enumerate() {
        for (pb, b) in pieces.iter().enumerate() {
            for (i, u) in a.basis.iter().enumerate() {
                for (j, v) in b.basis.iter().enumerate() {
                    let q = match chi_wedge(u, v, ctx, false) {
                        Ok(q) => q,
                        Err(SemiError::NotDivisible { hyperplane, power }) => {
                            return Ok(CheckResult::new(name, false, format!("basis pair not divisible by ({hyperplane})^{power}")))
                        }
                        Err(e) => return Err(e),
                    };
                    if !q.is_zero() {
                        if let Some(gen) = ctx.actions().invariance_failure(ctx.chi(), &q) {
                            return Ok(CheckResult::new(name, false, format!("quotient not invariant under generator {gen}")));
                        }
                    }
                    basis_q.insert((pa, i, pb, j), q);
                }
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for t in 0..pairs {
        let (k1, k2) = (rng.gen_range(0..sample.len()), rng.gen_range(0..sample.len()));
        let (mu, w) = (sample.form(k1), sample.form(k2));
        let q = match chi_wedge(&mu, &w, ctx, false) {
            Ok(q) => q,
            Err(SemiError::NotDivisible { hyperplane, power }) => {
                return Ok(CheckResult::new(name, false, format!("pair {t} not divisible by ({hyperplane})^{power}")))
            }
            Err(e) => return Err(e),
        };
        let (d1, d2) = (&sample.draws[k1], &sample.draws[k2]);
        let mut expect = DiffForm::zero(q.nvars(), m, q.degree());
        for (i, c1) in d1.coeffs.iter().enumerate() {
            for (j, c2) in d2.coeffs.iter().enumerate() {
                let bq = &basis_q[&(d1.piece, i, d2.piece, j)];
                expect = expect.checked_add(&bq.scale(&CycNum::from_int(m, c1 * c2)))?;
            }
        }
        if q != expect {
            return Ok(CheckResult::new(name, false, format!("pair {t}: quotient is not the bilinear combination")));
        }
    }
    Ok(CheckResult::new(
        name,
        true,
        format!("{pairs} pairs, {} basis quotients invariant", basis_q.len()),
    ))
}

/// Every χ-invariant n-form in the sampled degrees is an invariant multiple of
/// `Q_{χ·det} vol`.
pub fn top_degree_check(ctx: &SemiInvariantContext, degrees: usize) -> Result<CheckResult, SemiError> {
    let n = ctx.dim();
    let name = "top forms are R-multiples of Q_(chi*det) vol";
    let trivial = Character::trivial(ctx.group());
    let degs = super::sampling::lowest_degrees(ctx, n, degrees)?;
    let mut count = 0;
    for &d in &degs {
        for w in isotypic_basis(ctx.actions(), ctx.chi(), n, d)?.iter() {
            let q = match w.exact_divide(ctx.q_chi_det()) {
                Ok(q) => q,
                Err(_) => return Ok(CheckResult::new(name, false, format!("degree {d}: not divisible"))),
            };
            let all: Vec<u8> = (0..n as u8).collect();
            let coeff = DiffForm::from_poly(q.coeff(&all));
            if ctx.actions().invariance_failure(&trivial, &coeff).is_some() {
                return Ok(CheckResult::new(name, false, format!("degree {d}: quotient not invariant")));
            }
            count += 1;
        }
    }
    Ok(CheckResult::new(name, true, format!("{count} basis forms in degrees {degs:?}")))
}

/// Isotypic polynomial dimensions against `t^{deg Q_χ} / Π (1 − t^{d_i})` up to `max_d`.
pub fn stanley_check(ctx: &SemiInvariantContext, basics: &BasicInvariants, max_d: usize) -> Result<CheckResult, SemiError> {
    let name = format!("Hilbert series of ({}) polynomials", ctx.chi().name());
    let got = isotypic_series(ctx.group(), ctx.chi(), 0, max_d)?;
    let want = hilbert_series(ctx.deg_q_chi(), &basics.degrees, max_d);
    match got.iter().zip(&want).position(|(a, b)| a != b) {
        None => Ok(CheckResult::new(name, true, format!("equal through degree {max_d}"))),
        Some(d) => Ok(CheckResult::new(name, false, format!("degree {d}: {} vs {}", got[d], want[d]))),
    }
}

/// `jacobian_det(f) ≐ Q_det`; returns the witness.
pub fn steinberg_check(ctx: &SemiInvariantContext, basics: &BasicInvariants) -> Result<(CheckResult, Option<CycNum>), SemiError> {
    let j = jacobian_det(&basics.fs)?;
    let c = j.eq_up_to_scalar(ctx.q_det()).filter(|c| !c.is_zero());
    let details = match &c {
        Some(c) => format!("jacobian = ({c}) * Q_det"),
        None => "jacobian is not a multiple of Q_det".to_string(),
    };
    Ok((CheckResult::new("Jacobian of basic invariants", c.is_some(), details), c))
}

/// Unit, associativity and graded commutativity of ⌣ on sampled triples.
pub fn wedge_algebra_check(ctx: &SemiInvariantContext, samples: &[&FormSample], triples: usize, seed: u64) -> Result<CheckResult, SemiError> {
    use rand::{Rng, SeedableRng};
    let name = "chi-wedge algebra axioms";
    let pool: Vec<DiffForm> = samples.iter().flat_map(|s| s.forms()).collect();
    if pool.is_empty() {
        return Ok(CheckResult::new(name, true, "no forms"));
    }
    let unit = DiffForm::from_poly(ctx.q_chi().clone());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for t in 0..triples {
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| pool[rng.gen_range(0..pool.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        if chi_wedge(&unit, &a, ctx, false)? != a || chi_wedge(&a, &unit, ctx, false)? != a {
            return Ok(CheckResult::new(name, false, format!("triple {t}: unit law fails")));
        }
        let left = chi_wedge(&chi_wedge(&a, &b, ctx, false)?, &c, ctx, false)?;
        let right = chi_wedge(&a, &chi_wedge(&b, &c, ctx, false)?, ctx, false)?;
        if left != right {
            return Ok(CheckResult::new(name, false, format!("triple {t}: associativity fails")));
        }
        let ab = chi_wedge(&a, &b, ctx, false)?;
        let ba = chi_wedge(&b, &a, ctx, false)?;
        let sign = if (a.degree() * b.degree()) % 2 == 0 { 1 } else { -1 };
        if ab != ba.scale(&CycNum::from_int(ctx.conductor(), sign)) {
            return Ok(CheckResult::new(name, false, format!("triple {t}: graded commutativity fails")));
        }
    }
    Ok(CheckResult::new(name, true, format!("{triples} triples")))
}

#[cfg(test)]
mod tests {
    use super::super::testing::{b2, ctx, cyclic};
    use super::super::basic_invariants;
    use super::*;

    #[test]
    fn recurrence_examples() {
        let a = b2();
        let g = a.group();
        let det = Character::det_power(g, 1);
        for h in g.arrangement() {
            let r = ah_recurrence_check(g, h, &det).unwrap();
            assert_eq!((r.a_chi, r.a_chi_det), (1, 0));
            assert!(r.pass);
            let t = ah_recurrence_check(g, h, &Character::trivial(g)).unwrap();
            assert_eq!(t.a_chi_det, h.stab_order() - 1);
        }
        let z = cyclic(6);
        let r = ah_recurrence_check(z.group(), &z.group().arrangement()[0], &Character::det_power(z.group(), 2)).unwrap();
        assert_eq!((r.a_chi, r.a_chi_det, r.pass), (4, 3, true));
    }

    #[test]
    fn b2_battery() {
        let a = b2();
        let basics = basic_invariants(&a).unwrap();
        for k in 0..2 {
            let c = ctx(&a, k);
            let s1 = FormSample::new(&c, 1, 20, 7).unwrap();
            let s2 = FormSample::new(&c, 2, 20, 7).unwrap();
            assert!(local_divisibility_check(&c, &s1).unwrap().is_ok());
            assert!(local_divisibility_check(&c, &s2).unwrap().is_ok());
            assert!(product_divisibility_check(&c, &s1, 30, 1).unwrap().pass);
            assert!(top_degree_check(&c, 2).unwrap().pass);
            assert!(stanley_check(&c, &basics, 16).unwrap().pass);
            assert!(steinberg_check(&c, &basics).unwrap().0.pass);
            assert!(wedge_algebra_check(&c, &[&s1, &s2], 20, 3).unwrap().pass);
            assert!(ah_generator_independent(a.group(), c.chi()).unwrap());
        }
    }

    #[test]
    fn local_check_detects_violations() {
        // A sample built from a non-invariant basis must fail the pattern.
        let c = ctx(&b2(), 1);
        let mut s = FormSample::new(&c, 1, 4, 0).unwrap();
        let bad = DiffForm::dx(2, 2, 1);
        s.pieces[0].basis = std::sync::Arc::new(vec![bad; s.pieces[0].basis.len()]);
        assert!(local_divisibility_check(&c, &s).unwrap().is_err());
    }
}
