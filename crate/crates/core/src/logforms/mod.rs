//! Logarithmic forms along a (multi)arrangement.
//!
//! A rational form `ω / Q` with `Q = Π α_H^{m_H}` is logarithmic when
//! `ω ∧ dα_H` is divisible by `α_H^{m_H}` for every hyperplane. Only the
//! polynomial numerator `ω` is ever stored; the denominator is the defining
//! polynomial of the multiarrangement.

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::CycNum;
use crate::polyring::{DiffForm, MPoly, PolyError};
use crate::reflgroup::{Character, GroupError, Hyperplane, ReflectionGroup};
use crate::semiinv::{CheckResult, FormSample, SemiInvariantContext};

#[derive(Debug, Error)]
pub enum LogError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("operand {operand} is not logarithmic: {witness}")]
    Precondition { operand: usize, witness: LogWitness },
    #[error("rescaling factor list has length {found}, expected {expected}")]
    Rescale { expected: usize, found: usize },
}

/// A hyperplane with its defining form and multiplicity.
#[derive(Clone, Debug)]
pub struct MultiHyperplane {
    pub alpha: MPoly,
    pub multiplicity: u32,
}

#[derive(Clone, Debug)]
pub struct Multiarrangement {
    hyperplanes: Vec<MultiHyperplane>,
    defining_poly: MPoly,
}

/// Where a form fails to be logarithmic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogWitness {
    pub hyperplane: String,
    pub multiplicity: u32,
    /// 1-based multiindex of the offending coefficient of `ω ∧ dα_H`.
    pub index: Vec<u8>,
}

impl std::fmt::Display for LogWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})^{} does not divide the dx{:?} coefficient of w ^ d({})", self.hyperplane, self.multiplicity, self.index, self.hyperplane)
    }
}

impl Multiarrangement {
    /// From defining forms and multiplicities; the defining polynomial is their product.
    pub fn new(nvars: usize, m: u32, hyperplanes: Vec<MultiHyperplane>) -> Multiarrangement {
        let mut q = MPoly::one(nvars, m);
        for h in &hyperplanes {
            if h.multiplicity > 0 {
                q = &q * &h.alpha.pow(h.multiplicity);
            }
        }
        Multiarrangement { hyperplanes, defining_poly: q }
    }

    fn from_arrangement(g: &ReflectionGroup, mult: impl Fn(&Hyperplane) -> Result<u32, GroupError>) -> Result<Multiarrangement, LogError> {
        let hs = g
            .arrangement()
            .iter()
            .map(|h| Ok(MultiHyperplane { alpha: h.alpha().clone(), multiplicity: mult(h)? }))
            .collect::<Result<Vec<_>, GroupError>>()?;
        Ok(Multiarrangement::new(g.dim(), g.conductor(), hs))
    }

    /// The reflection arrangement with every multiplicity one.
    pub fn simple(g: &ReflectionGroup) -> Result<Multiarrangement, LogError> {
        Multiarrangement::from_arrangement(g, |_| Ok(1))
    }

    /// The multiarrangement with multiplicities `a_H(χ)`, defined by `Q_χ`.
    pub fn of_character(g: &ReflectionGroup, chi: &Character) -> Result<Multiarrangement, LogError> {
        Multiarrangement::from_arrangement(g, |h| chi.a_h(g, h))
    }

    pub fn hyperplanes(&self) -> &[MultiHyperplane] {
        &self.hyperplanes
    }

    pub fn defining_poly(&self) -> &MPoly {
        &self.defining_poly
    }

    /// The same multiarrangement with each `α_H` multiplied by a nonzero scalar.
    pub fn rescaled(&self, factors: &[CycNum]) -> Result<Multiarrangement, LogError> {
        if factors.len() != self.hyperplanes.len() {
            return Err(LogError::Rescale { expected: self.hyperplanes.len(), found: factors.len() });
        }
        let (n, m) = (self.defining_poly.nvars(), self.defining_poly.conductor());
        let hs = self
            .hyperplanes
            .iter()
            .zip(factors)
            .map(|(h, c)| MultiHyperplane { alpha: h.alpha.scale(c), multiplicity: h.multiplicity })
            .collect();
        Ok(Multiarrangement::new(n, m, hs))
    }
}

/// Tests whether `ω / Q` is logarithmic, returning the first failure.
pub fn is_logarithmic(w: &DiffForm, arr: &Multiarrangement) -> Result<Option<LogWitness>, LogError> {
    for h in &arr.hyperplanes {
        if h.multiplicity == 0 {
            continue;
        }
        let prod = w.wedge(&DiffForm::differential(&h.alpha))?;
        let power = h.alpha.pow(h.multiplicity);
        for (idx, f) in prod.components() {
            if f.exact_divide(&power).is_err() {
                return Ok(Some(LogWitness {
                    hyperplane: h.alpha.to_string(),
                    multiplicity: h.multiplicity,
                    index: idx.iter().map(|&i| i + 1).collect(),
                }));
            }
        }
    }
    Ok(None)
}

/// Outcome of the product closure test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ClosureOutcome {
    Pass,
    /// `ω ∧ μ` is not divisible by the defining polynomial.
    NotDivisible,
    /// The quotient is not logarithmic.
    NotLogarithmic(LogWitness),
}

/// `(ω/Q) ∧ (μ/Q)` is again logarithmic: `Q` divides `ω ∧ μ` and the quotient
/// passes [`is_logarithmic`]. Both operands must be logarithmic.
pub fn closure_product_check(w: &DiffForm, mu: &DiffForm, arr: &Multiarrangement) -> Result<ClosureOutcome, LogError> {
    for (operand, f) in [w, mu].into_iter().enumerate() {
        if let Some(witness) = is_logarithmic(f, arr)? {
            return Err(LogError::Precondition { operand, witness });
        }
    }
    let prod = w.wedge(mu)?;
    let Ok(q) = prod.exact_divide(&arr.defining_poly) else {
        return Ok(ClosureOutcome::NotDivisible);
    };
    Ok(match is_logarithmic(&q, arr)? {
        None => ClosureOutcome::Pass,
        Some(witness) => ClosureOutcome::NotLogarithmic(witness),
    })
}

/// Every sampled form is logarithmic along `A_χ`, and `pairs` seeded pairs
/// pass [`closure_product_check`].
pub fn logarithmic_battery(ctx: &SemiInvariantContext, samples: &[&FormSample], pairs: usize, seed: u64) -> Result<CheckResult, LogError> {
    use rand::{Rng, SeedableRng};
    let name = format!("logarithmic forms along A_chi ({})", ctx.chi().name());
    let arr = Multiarrangement::of_character(ctx.group(), ctx.chi())?;
    let forms: Vec<DiffForm> = samples.iter().flat_map(|s| s.forms()).collect();
    for (k, w) in forms.iter().enumerate() {
        if let Some(witness) = is_logarithmic(w, &arr)? {
            return Ok(CheckResult::new(name, false, format!("form {k}: {witness}")));
        }
    }
    if forms.is_empty() {
        return Ok(CheckResult::new(name, true, "no forms"));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for t in 0..pairs {
        let (i, j) = (rng.gen_range(0..forms.len()), rng.gen_range(0..forms.len()));
        let outcome = closure_product_check(&forms[i], &forms[j], &arr)?;
        if outcome != ClosureOutcome::Pass {
            return Ok(CheckResult::new(name, false, format!("pair {t} ({i}, {j}): {outcome:?}")));
        }
    }
    Ok(CheckResult::new(name, true, format!("{} forms logarithmic, {pairs} products closed", forms.len())))
}
