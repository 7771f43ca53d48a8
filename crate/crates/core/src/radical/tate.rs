//! `u_p(M)` when every graded piece is a one-dimensional Tate object and the
//! weight differences are pairwise distinct.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{ext_class_rep, splits_mod_unchecked};
use crate::error::{Error, Result};
use crate::linalg::{Rat, Subspace};
use crate::loci::can_lift_with;
use crate::mhs::Mhs;

/// Largest number of weight blocks of `H` for which subsets are enumerated.
const MAX_BLOCKS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    TateExact,
}

#[derive(Clone, Debug)]
pub struct UpResult {
    pub p: i32,
    /// `u_p(M)` inside `H = Hom(M/W_p, W_p)`, in `H` coordinates.
    pub subspace: Subspace<Rat>,
    pub regime: Regime,
    pub large: bool,
}

#[derive(Clone, Debug)]
pub struct LargenessReport {
    pub large: bool,
    pub per_p: Vec<UpResult>,
    pub failing_p: Vec<i32>,
}

pub fn check_tate_regime(m: &Mhs) -> Result<()> {
    let frame = m.frame();
    if let Some(piece) = frame.pieces().iter().find(|p| p.dim != 1) {
        return Err(Error::Regime(format!(
            "Gr_{} has dimension {}",
            piece.weight, piece.dim
        )));
    }
    let weights = frame.weights();
    let mut seen = BTreeSet::new();
    for (k, a) in weights.iter().enumerate() {
        for b in &weights[..k] {
            if !seen.insert(a - b) {
                return Err(Error::Regime(format!("weight difference {} repeats", a - b)));
            }
        }
    }
    Ok(())
}

/// Smallest subobject `A ⊆ H` modulo which `E_p(M)` splits.
///
/// Subobjects of `H` have one-dimensional weight pieces, so each is the
/// unique lift of a set of graded blocks; all liftable sets are tried.
pub fn u_p_tate(m: &Mhs, p: i32) -> Result<UpResult> {
    check_tate_regime(m)?;
    let w_p = m.w(p);
    if w_p.is_zero() || w_p.is_full() {
        return Ok(UpResult {
            p,
            subspace: Subspace::zero(0),
            regime: Regime::TateExact,
            large: true,
        });
    }
    let (hd, rep) = ext_class_rep(m, p)?;
    let h = &hd.h;
    let blocks = h.frame().pieces().len();
    if blocks > MAX_BLOCKS {
        return Err(Error::ResourceGuard {
            dim: blocks,
            limit: MAX_BLOCKS,
        });
    }
    let offsets: Vec<usize> = h.frame().pieces().iter().map(|b| b.offset).collect();
    let alpha = h.deligne_sections();
    let gr = h.graded_sum();
    let mut splitting = Vec::new();
    for mask in 0u32..(1 << blocks) {
        let idx: Vec<usize> = (0..blocks)
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| offsets[k])
            .collect();
        let graded = Subspace::coordinate(h.dim(), &idx);
        // unions of whole rank-one blocks are always graded subobjects
        debug_assert!(gr.sub(&graded).is_ok());
        if let Some(a) = can_lift_with(h, &alpha, &graded)? {
            if splits_mod_unchecked(&hd, &rep, &a) {
                splitting.push(a);
            }
        }
    }
    let mut u = Subspace::full(h.dim());
    for a in &splitting {
        u = u.intersect(a)?;
    }
    if !splitting.contains(&u) {
        return Err(Error::Unsupported(
            "splitting subobjects have no smallest member".into(),
        ));
    }
    let large = u.is_full();
    Ok(UpResult {
        p,
        subspace: u,
        regime: Regime::TateExact,
        large,
    })
}

/// `u(M)` is large iff `u_p(M)` is large at every cut between weights.
pub fn is_u_large(m: &Mhs) -> Result<LargenessReport> {
    check_tate_regime(m)?;
    let jumps = m.weight().jumps();
    let mut per_p = Vec::new();
    for &p in jumps.iter().take(jumps.len().saturating_sub(1)) {
        per_p.push(u_p_tate(m, p)?);
    }
    let failing_p: Vec<i32> = per_p.iter().filter(|r| !r.large).map(|r| r.p).collect();
    Ok(LargenessReport {
        large: failing_p.is_empty(),
        per_p,
        failing_p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::gq;
    use crate::mhs::functors::{direct_sum, tate};
    use crate::mhs::tests::kummer;
    use crate::triple::Triple;

    #[test]
    fn kummer_largeness() {
        let r = u_p_tate(&kummer(gq(0, 1, 1, 1)), -2).unwrap();
        assert!(r.large);
        assert_eq!(r.subspace.dim(), 1);
        let r = u_p_tate(&kummer(gq(1, 2, 0, 1)), -2).unwrap();
        assert!(!r.large);
        assert!(r.subspace.is_zero());
    }

    #[test]
    fn repeated_differences_leave_the_regime() {
        let m = direct_sum(&direct_sum(&tate(0), &tate(1)), &tate(2));
        assert!(matches!(check_tate_regime(&m), Err(Error::Regime(_))));
    }

    #[test]
    fn generic_tate3_point_is_large() {
        let m3 = direct_sum(&direct_sum(&tate(0), &tate(1)), &tate(3));
        let mu = Triple::of(&m3);
        let m = mu.build(&mu.sample_point(7, 10)).unwrap();
        let rep = is_u_large(&m).unwrap();
        assert!(rep.large, "{:?}", rep.failing_p);
        assert_eq!(rep.per_p.len(), 2);
        let split = is_u_large(&m3).unwrap();
        assert_eq!(split.failing_p, vec![-6, -2]);
    }
}
