//! Seeded random triples and MHS built from Tate pieces and weight-odd
//! rank-two pieces.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::scalar::{gauss, rat};
use crate::linalg::{GaussRat, Rat, Subspace};
use crate::mhs::functors::tate;
use crate::mhs::{Direction, Filtration, Mhs};
use crate::triple::Triple;

/// Pure of odd weight `2k - 1`: `F^{k-1}` everything, `F^k = span(1, τ)`.
pub fn odd_piece(k: i32, tau: GaussRat) -> Mhs {
    let mut f = BTreeMap::new();
    f.insert(k - 1, Subspace::full(2));
    f.insert(
        k,
        Subspace::span(2, vec![vec![gauss(rat(1, 1), rat(0, 1)), tau]]).expect("two entries"),
    );
    Mhs::new(
        2,
        Filtration::trivial(2, Direction::Increasing, 2 * k - 1),
        Filtration::new(2, Direction::Decreasing, f).expect("monotone"),
    )
    .expect("τ is not real")
}

fn small_gauss(rng: &mut impl Rng, h: i64, nonreal: bool) -> GaussRat {
    let a = rng.random_range(-h..=h);
    let b = rng.random_range(1..=h);
    let mut c = rng.random_range(-h..=h);
    if nonreal && c == 0 {
        c = 1;
    }
    let d = rng.random_range(1..=h);
    gauss(rat(a, b), rat(c, d))
}

/// A triple of total dimension at most `max_dim` with distinct weights in
/// `-6..=2`; pieces are `ℚ(k)` for even weights and rank two otherwise.
pub fn random_triple(seed: u64, max_dim: usize) -> Triple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<i32> = (-6..=2).collect();
    let mut graded = BTreeMap::new();
    let mut dim = 0;
    let n_pieces = rng.random_range(1..=3);
    for _ in 0..n_pieces {
        if weights.is_empty() {
            break;
        }
        let n = weights.remove(rng.random_range(0..weights.len()));
        let piece = if n % 2 == 0 {
            tate(-n / 2)
        } else {
            odd_piece((n + 1) / 2, small_gauss(&mut rng, 5, true))
        };
        if dim + piece.dim() > max_dim {
            continue;
        }
        dim += piece.dim();
        graded.insert(n, piece);
    }
    if graded.is_empty() {
        graded.insert(0, tate(0));
        dim = 1;
    }
    // W in a scrambled rational basis: W_n spanned by the first blocks of
    // the columns of an upper unitriangular change of basis.
    let mut basis: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Equal => rat(1, 1),
                    std::cmp::Ordering::Less => rat(rng.random_range(-3..=3), 1),
                    std::cmp::Ordering::Greater => rat(0, 1),
                })
                .collect()
        })
        .collect();
    if rng.random_bool(0.5) {
        basis.reverse();
    }
    let mut steps = BTreeMap::new();
    let mut used = 0;
    for (n, m) in &graded {
        used += m.dim();
        steps.insert(*n, Subspace::span(dim, basis[..used].to_vec()).expect("rows of length dim"));
    }
    let w = Filtration::new(dim, Direction::Increasing, steps).expect("nested spans");
    Triple::new(dim, w, graded).expect("pieces match the jumps")
}

/// A random valid MHS: a random triple at a sampled point.
pub fn random_mhs(seed: u64, max_dim: usize) -> Mhs {
    let mu = random_triple(seed, max_dim);
    mu.build(&mu.sample_point_indexed(seed, 1, 6))
        .expect("sampled points are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_objects_are_valid_and_bounded() {
        for seed in 0..30 {
            let m = random_mhs(seed, 6);
            assert!(m.dim() <= 6);
            assert!(m.validate().is_valid());
        }
    }
}
