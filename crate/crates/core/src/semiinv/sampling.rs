//! Seeded samples of χ-invariant forms.
//!
//! A sampled form is a random integer combination of the reduced echelon
//! basis of one graded piece, i.e. the projection of a random form onto that
//! piece. Keeping the coefficient vectors lets checks that are linear in the
//! form run once per basis element and then be recombined exactly.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::CycNum;
use crate::polyring::DiffForm;
use crate::reflgroup::isotypic_series;

use super::{isotypic_basis, SemiError, SemiInvariantContext};

/// One graded piece used by a sample.
#[derive(Clone, Debug)]
pub struct SamplePiece {
    pub degree: usize,
    pub basis: Arc<Vec<DiffForm>>,
}

/// A draw: piece index and integer coordinates in that piece's basis.
#[derive(Clone, Debug)]
pub struct Draw {
    pub piece: usize,
    pub coeffs: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct FormSample {
    pub p: usize,
    pub pieces: Vec<SamplePiece>,
    pub draws: Vec<Draw>,
    m: u32,
}

/// The lowest `count` degrees where the χ-isotypic p-forms are nonzero.
pub fn lowest_degrees(ctx: &SemiInvariantContext, p: usize, count: usize) -> Result<Vec<usize>, SemiError> {
    let g = ctx.group();
    let bound = 2 * ctx.q_det().degree().unwrap_or(0) + ctx.q_chi_det().degree().unwrap_or(0) + 2 * g.order().min(64);
    let series = isotypic_series(g, ctx.chi(), p, bound)?;
    let degs: Vec<usize> = series.iter().enumerate().filter(|(_, &k)| k > 0).map(|(d, _)| d).take(count).collect();
    if degs.is_empty() && p <= g.dim() {
        return Err(SemiError::Assertion(format!("no χ-invariant {p}-forms up to degree {bound}")));
    }
    Ok(degs)
}

impl FormSample {
    /// `count` draws spread over the lowest two nonzero degrees.
    pub fn new(ctx: &SemiInvariantContext, p: usize, count: usize, seed: u64) -> Result<FormSample, SemiError> {
        let mut pieces = Vec::new();
        for d in lowest_degrees(ctx, p, 2)? {
            pieces.push(SamplePiece { degree: d, basis: isotypic_basis(ctx.actions(), ctx.chi(), p, d)? });
        }
        let salt = ctx.chi().exponents().iter().fold(p as u64, |h, &e| h.wrapping_mul(1_000_003).wrapping_add(e as u64));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
        let count = if pieces.is_empty() { 0 } else { count };
        let draws = (0..count)
            .map(|k| {
                let piece = k % pieces.len();
                let coeffs = (0..pieces[piece].basis.len())
                    .map(|_| {
                        let c: i64 = rng.gen_range(1..=9);
                        if rng.gen_bool(0.5) { c } else { -c }
                    })
                    .collect();
                Draw { piece, coeffs }
            })
            .collect();
        Ok(FormSample { p, pieces, draws, m: ctx.conductor() })
    }

    pub fn len(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    /// Recombines per-basis data (one list per piece, one entry per basis element).
    pub fn combine(&self, k: usize, images: &[Vec<DiffForm>]) -> DiffForm {
        let draw = &self.draws[k];
        combine_with(self.m, &draw.coeffs, &images[draw.piece])
    }

    /// The k-th sampled form.
    pub fn form(&self, k: usize) -> DiffForm {
        let draw = &self.draws[k];
        combine_with(self.m, &draw.coeffs, &self.pieces[draw.piece].basis)
    }

    pub fn forms(&self) -> Vec<DiffForm> {
        (0..self.len()).map(|k| self.form(k)).collect()
    }
}

fn combine_with(m: u32, coeffs: &[i64], forms: &[DiffForm]) -> DiffForm {
    let mut acc = forms[0].scale(&CycNum::from_int(m, coeffs[0]));
    for (c, f) in coeffs.iter().zip(forms).skip(1) {
        acc = acc.checked_add(&f.scale(&CycNum::from_int(m, *c))).expect("same shape");
    }
    acc
}
