//! Lifting graded subobjects, Hodge loci along pencils, and pointwise
//! quotient families.

pub mod construction;
pub mod pencil;

use crate::error::{Error, Result};
use crate::linalg::{GaussRat, Matrix, Rat, Subspace};
use crate::mhs::Mhs;
use crate::triple::{TPoint, Triple};

pub use construction::{Construction, FamilyNode, QuotBy};
pub use pencil::{locus_on_pencil, LocusKind, LocusResult, Pencil};

/// The unique `A_ℚ ⊆ M_ℚ` with `Gr^W A = Ã`, if it exists.
///
/// `graded` is given in the block coordinates of `Gr^W M`. With
/// `α = α_M`, a lift exists iff every `α(W_n Ã_ℂ)` is defined over ℚ.
pub fn can_lift(m: &Mhs, graded: &Subspace<Rat>) -> Result<Option<Subspace<Rat>>> {
    m.graded_sum().sub(graded)?;
    can_lift_with(m, &m.deligne_sections(), graded)
}

/// [`can_lift`] with `α_M` precomputed and `graded` already checked.
pub(crate) fn can_lift_with(
    m: &Mhs,
    alpha: &Matrix<GaussRat>,
    graded: &Subspace<Rat>,
) -> Result<Option<Subspace<Rat>>> {
    let g = graded.to_gauss();
    for n in m.frame().weights() {
        let part = g.intersect(&m.frame().blocks_upto(n).to_gauss())?;
        if !part.image(alpha)?.is_defined_over_q() {
            return Ok(None);
        }
    }
    Ok(Some(g.image(alpha)?.rational_part()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeResult {
    GlobalOnSamples,
    /// Index of the first sample where `A` is not a subobject.
    FailsAt(usize),
}

pub fn global_hodge_subspace_probe(
    mu: &Triple,
    a: &Subspace<Rat>,
    construction: &Construction,
    samples: &[TPoint],
) -> Result<ProbeResult> {
    if samples.is_empty() {
        return Err(Error::Unsupported("the probe needs at least one sample".into()));
    }
    for (i, s) in samples.iter().enumerate() {
        let derived = construction.eval(&mu.build(s)?)?;
        match derived.sub(a) {
            Ok(_) => {}
            Err(Error::NotSubobject(_)) => return Ok(ProbeResult::FailsAt(i)),
            Err(e) => return Err(e),
        }
    }
    Ok(ProbeResult::GlobalOnSamples)
}

/// `N_s / A` for the derived object `N_s` at the point `s`.
pub fn quotient_at_point(
    mu: &Triple,
    s: &TPoint,
    a: &Subspace<Rat>,
    construction: &Construction,
) -> Result<Mhs> {
    construction.eval(&mu.build(s)?)?.quotient(a)
}
