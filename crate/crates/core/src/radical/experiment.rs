//! Seeded sampling of `S(μ)` in the rank-one Tate regime.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::tate::{check_tate_regime, is_u_large};
use crate::error::Result;
use crate::json::{matrix_doc, TripleDoc};
use crate::linalg::scalar::{gauss, rat};
use crate::linalg::{Matrix, Rat};
use crate::triple::{OffDiagonal, Triple};

/// Rational control points evaluated after the samples.
pub const CONTROL_POINTS: u64 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerP {
    pub p: i32,
    pub n_large: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ControlPoint {
    /// Off-diagonal blocks keyed `"m,n"`.
    pub params: BTreeMap<String, Vec<Vec<String>>>,
    pub u_p_dims: BTreeMap<i32, usize>,
    pub large: bool,
    pub failing_p: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentReport {
    pub triple: TripleDoc,
    pub seed: u64,
    pub height: u32,
    pub n_samples: usize,
    pub per_p: Vec<PerP>,
    pub all_large_count: usize,
    /// Sample indices where some `u_p` was not large.
    pub non_large_samples: Vec<u64>,
    pub degenerate: Vec<ControlPoint>,
}

fn params_doc(params: &OffDiagonal) -> BTreeMap<String, Vec<Vec<String>>> {
    params
        .iter()
        .map(|((m, n), c)| (format!("{m},{n}"), matrix_doc(c)))
        .collect()
}

/// All-rational coefficients: zero for the first control point, then
/// seeded rationals of the given height.
fn control_params(mu: &Triple, seed: u64, k: u64, height: u32) -> OffDiagonal {
    let h = i64::from(height.max(1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX - k);
    let mut out = OffDiagonal::new();
    let pieces = mu.frame().pieces();
    for (j, pn) in pieces.iter().enumerate() {
        for pm in &pieces[..j] {
            let c = Matrix::from_fn(pm.dim, pn.dim, |_, _| {
                if k == 0 {
                    return gauss(Rat::from_integer(0.into()), rat(0, 1));
                }
                let a = rng.random_range(-h..=h);
                let b = rng.random_range(1..=h);
                gauss(rat(a, b), rat(0, 1))
            });
            out.insert((pm.weight, pn.weight), c);
        }
    }
    out
}

pub fn genericity_experiment(
    mu: &Triple,
    n_samples: usize,
    seed: u64,
    height: u32,
) -> Result<ExperimentReport> {
    check_tate_regime(&mu.split())?;
    let jumps = mu.frame().weights();
    let cuts: Vec<i32> = jumps.iter().take(jumps.len().saturating_sub(1)).copied().collect();
    let outcomes: Vec<Result<Vec<bool>>> = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let m = mu.build(&mu.sample_point_indexed(seed, i, height))?;
            Ok(is_u_large(&m)?.per_p.iter().map(|r| r.large).collect())
        })
        .collect();
    let mut per_p: Vec<PerP> = cuts.iter().map(|&p| PerP { p, n_large: 0 }).collect();
    let mut all_large_count = 0;
    let mut non_large_samples = Vec::new();
    for (i, o) in outcomes.into_iter().enumerate() {
        let flags = o?;
        for (slot, large) in per_p.iter_mut().zip(&flags) {
            slot.n_large += usize::from(*large);
        }
        if flags.iter().all(|&b| b) {
            all_large_count += 1;
        } else {
            non_large_samples.push(i as u64);
        }
    }
    let mut degenerate = Vec::new();
    if n_samples > 0 {
        for k in 0..CONTROL_POINTS {
            let params = control_params(mu, seed, k, height);
            let m = mu.build(&mu.point_from_params(&params)?)?;
            let rep = is_u_large(&m)?;
            degenerate.push(ControlPoint {
                params: params_doc(&params),
                u_p_dims: rep.per_p.iter().map(|r| (r.p, r.subspace.dim())).collect(),
                large: rep.large,
                failing_p: rep.failing_p,
            });
        }
    }
    Ok(ExperimentReport {
        triple: TripleDoc::from(mu),
        seed,
        height,
        n_samples,
        per_p,
        all_large_count,
        non_large_samples,
        degenerate,
    })
}
