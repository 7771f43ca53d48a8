//! Linear-algebra functors on mixed Hodge structures.
//!
//! Coordinates: the dual uses the dual basis, tensor products use index
//! `i*dim(N) + j` for `e_i ⊗ f_j`, and `hom(M, N) = M^∨ ⊗ N`, so index
//! `i*dim(N) + j` is the map sending `e_i` to `f_j`.

use super::{Direction, Filtration, Mhs};
use crate::linalg::{Matrix, Scalar};

pub fn dual(m: &Mhs) -> Mhs {
    Mhs::new(m.dim(), m.weight().dual(), m.hodge().dual()).expect("dual of a valid MHS is valid")
}

pub fn tensor(m: &Mhs, n: &Mhs) -> Mhs {
    Mhs::new(
        m.dim() * n.dim(),
        m.weight().tensor(n.weight()),
        m.hodge().tensor(n.hodge()),
    )
    .expect("tensor product of valid MHS is valid")
}

pub fn hom(m: &Mhs, n: &Mhs) -> Mhs {
    tensor(&dual(m), n)
}

pub fn end(m: &Mhs) -> Mhs {
    hom(m, m)
}

pub fn direct_sum(m: &Mhs, n: &Mhs) -> Mhs {
    Mhs::new(
        m.dim() + n.dim(),
        m.weight().direct_sum(n.weight()),
        m.hodge().direct_sum(n.hodge()),
    )
    .expect("direct sum of valid MHS is valid")
}

/// `ℚ(k)`: one-dimensional, weight `-2k`, Hodge type `(-k, -k)`.
pub fn tate(k: i32) -> Mhs {
    Mhs::new(
        1,
        Filtration::trivial(1, Direction::Increasing, -2 * k),
        Filtration::trivial(1, Direction::Decreasing, -k),
    )
    .expect("Tate objects are valid")
}

pub fn unit() -> Mhs {
    tate(0)
}

/// `M^{⊗a} ⊗ (M^∨)^{⊗b}`, with the `M` factors first.
pub fn mixed_tensor_power(m: &Mhs, a: usize, b: usize) -> Mhs {
    let d = dual(m);
    let mut out = unit();
    for _ in 0..a {
        out = tensor(&out, m);
    }
    for _ in 0..b {
        out = tensor(&out, &d);
    }
    out
}

/// Reads a Hom vector as a `dim_tgt × dim_src` matrix.
pub fn hom_vec_to_matrix<K: Scalar>(v: &[K], dim_src: usize, dim_tgt: usize) -> Matrix<K> {
    Matrix::from_fn(dim_tgt, dim_src, |j, i| v[i * dim_tgt + j].clone())
}

pub fn matrix_to_hom_vec<K: Scalar>(f: &Matrix<K>) -> Vec<K> {
    let (tgt, src) = (f.rows(), f.cols());
    let mut v = Vec::with_capacity(tgt * src);
    for i in 0..src {
        for j in 0..tgt {
            v.push(f.get(j, i).clone());
        }
    }
    v
}
