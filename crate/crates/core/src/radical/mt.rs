//! Upper bounds for the Mumford–Tate Lie algebra from Hodge classes in
//! small mixed tensor powers.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::matrix::null_space;
use crate::linalg::{Rat, Subspace};
use crate::mhs::functors::mixed_tensor_power;
use crate::mhs::Mhs;

pub const MAX_TENSOR_DIM_VAR: &str = "HODGEKIT_MAX_TENSOR_DIM";
const DEFAULT_MAX_TENSOR_DIM: usize = 10_000;

pub fn max_tensor_dim() -> usize {
    std::env::var(MAX_TENSOR_DIM_VAR)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_TENSOR_DIM)
}

/// `X·v` for the derivation action of `X = E_{r,s}` (`e_s ↦ e_r`) on
/// `M^{⊗a} ⊗ (M^∨)^{⊗b}`, where `-Xᵀ` acts on the dual factors.
fn derivation_image(v: &[Rat], n: usize, a: usize, b: usize, r: usize, s: usize) -> Vec<Rat> {
    let factors = a + b;
    let mut out = vec![Rat::zero(); v.len()];
    for (idx, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for k in 0..factors {
            let stride = n.pow((factors - 1 - k) as u32);
            let digit = (idx / stride) % n;
            if k < a {
                if digit == s {
                    let j = idx - s * stride + r * stride;
                    out[j] = out[j].clone() + x.clone();
                }
            } else if digit == r {
                let j = idx - r * stride + s * stride;
                out[j] = out[j].clone() - x.clone();
            }
        }
    }
    out
}

/// `g_d`: endomorphisms killing every weight-zero Hodge class of
/// `M^{⊗a,b}` with `1 ≤ a + b ≤ d`. Returned in `End(M)` coordinates,
/// index `i*dim + j` for `e_i ↦ e_j`.
pub fn mt_lie_upper_bound(m: &Mhs, d: usize) -> Result<Subspace<Rat>> {
    if d == 0 {
        return Err(Error::Unsupported("tensor degree must be at least 1".into()));
    }
    let n = m.dim();
    let limit = max_tensor_dim();
    let end_dim = n * n;
    let mut constraints: Vec<Vec<Rat>> = Vec::new();
    for total in 1..=d {
        let size = n.checked_pow(total as u32).unwrap_or(usize::MAX);
        if size > limit {
            return Err(Error::ResourceGuard { dim: size, limit });
        }
        for a in 0..=total {
            let b = total - a;
            let t = mixed_tensor_power(m, a, b);
            let classes = t.hodge_classes();
            for v in classes.basis() {
                // column `i*n + j` of the constraint block is E_{j,i}·v
                let cols: Vec<Vec<Rat>> = (0..end_dim)
                    .map(|k| derivation_image(v, n, a, b, k % n, k / n))
                    .collect();
                for row in 0..size {
                    let eq: Vec<Rat> = cols.iter().map(|c| c[row].clone()).collect();
                    if eq.iter().any(|x| !x.is_zero()) {
                        constraints.push(eq);
                    }
                }
            }
        }
    }
    Subspace::span(end_dim, null_space(constraints, end_dim))
}
