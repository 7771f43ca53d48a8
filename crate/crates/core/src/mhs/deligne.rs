use std::collections::BTreeMap;

use num_traits::Zero;

use super::Mhs;
use crate::linalg::{GaussRat, Matrix, Subspace};

/// The pieces `I^{p,q}`, keyed by `(p, q)`; zero pieces are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bigrading {
    pub ambient: usize,
    pub components: BTreeMap<(i32, i32), Subspace<GaussRat>>,
}

impl Bigrading {
    pub fn get(&self, p: i32, q: i32) -> Subspace<GaussRat> {
        self.components
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.ambient))
    }

    /// `⊕` of the pieces selected by `keep`, together with whether the sum is direct.
    pub fn sum_where(&self, keep: impl Fn(i32, i32) -> bool) -> (Subspace<GaussRat>, bool) {
        let parts: Vec<&Subspace<GaussRat>> = self
            .components
            .iter()
            .filter(|((p, q), _)| keep(*p, *q))
            .map(|(_, s)| s)
            .collect();
        let total: usize = parts.iter().map(|s| s.dim()).sum();
        let sum = Subspace::sum_all(self.ambient, parts).expect("same ambient");
        let direct = sum.dim() == total;
        (sum, direct)
    }
}

pub(super) fn bigrading(m: &Mhs) -> Bigrading {
    let n_amb = m.dim();
    let mut components = BTreeMap::new();
    let (Some(fmin), Some(fmax)) = (m.hodge().min_index(), m.hodge().max_index()) else {
        return Bigrading {
            ambient: n_amb,
            components,
        };
    };
    let wmin = m.weight().min_index().unwrap_or(0);
    let fbar = m.hodge().conj();
    for n in m.weight().jumps() {
        let wn = m.w(n).to_gauss();
        for p in fmin..=fmax {
            let q = n - p;
            let left = m.f(p).intersect(&wn).expect("same ambient");
            if left.is_zero() {
                continue;
            }
            let mut right = fbar.get(q).intersect(&wn).expect("same ambient");
            let mut j = 2;
            while n - j >= wmin {
                let part = fbar
                    .get(q - j + 1)
                    .intersect(&m.w(n - j).to_gauss())
                    .expect("same ambient");
                right = right.sum(&part).expect("same ambient");
                j += 1;
            }
            let piece = left.intersect(&right).expect("same ambient");
            if !piece.is_zero() {
                components.insert((p, q), piece);
            }
        }
    }
    Bigrading {
        ambient: n_amb,
        components,
    }
}

/// `a_M = G·B^{-1}` where `B` lists a basis of the bigrading and `G` the
/// images of those vectors in their graded pieces.
pub(super) fn splitting(m: &Mhs) -> Matrix<GaussRat> {
    let bg = bigrading(m);
    let dim = m.dim();
    let frame = m.frame();
    let mut b_cols = Vec::with_capacity(dim);
    let mut g_cols = Vec::with_capacity(dim);
    for ((p, q), space) in &bg.components {
        let piece = frame
            .piece(p + q)
            .expect("bigrading pieces sit in weights of M");
        let proj = piece.proj.to_gauss();
        for v in space.basis() {
            let local = proj.apply(v).expect("projection fits");
            let mut g = vec![GaussRat::zero(); dim];
            for (k, x) in local.into_iter().enumerate() {
                g[piece.offset + k] = x;
            }
            b_cols.push(v.clone());
            g_cols.push(g);
        }
    }
    let b = Matrix::from_columns(&b_cols, dim).expect("basis vectors fit");
    let g = Matrix::from_columns(&g_cols, dim).expect("graded vectors fit");
    let b_inv = b
        .inverse()
        .expect("bigrading of a valid MHS spans the whole space");
    g.mul(&b_inv).expect("square matrices of equal size")
}

/// Checks the defining properties of `I^{p,q}` and `a_M` directly:
/// direct sum, recovery of `W` and `F`, conjugation congruence, and that
/// `a_M` is a filtered isomorphism onto `Gr^W` inducing the identity.
pub fn axiom_violations(m: &Mhs) -> Vec<String> {
    let mut out = Vec::new();
    let bg = bigrading(m);
    let (all, direct) = bg.sum_where(|_, _| true);
    if !direct || !all.is_full() {
        out.push("pieces are not a direct-sum decomposition".to_string());
    }
    let (w_lo, w_hi) = m.weight().span_range();
    for n in w_lo..=w_hi {
        let (s, direct) = bg.sum_where(|p, q| p + q <= n);
        if !direct || s != m.w(n).to_gauss() {
            out.push(format!("W_{n} is not the sum of I^(p,q) with p+q <= {n}"));
        }
    }
    let (f_lo, f_hi) = m.hodge().span_range();
    for r in f_lo..=f_hi {
        let (s, direct) = bg.sum_where(|p, _| p >= r);
        if !direct || s != m.f(r) {
            out.push(format!("F^{r} is not the sum of I^(p,q) with p >= {r}"));
        }
    }
    for (&(p, q), piece) in &bg.components {
        let (lower, _) = bg.sum_where(|a, b| a < q && b < p);
        let target = bg.get(q, p).sum(&lower).expect("same ambient");
        if !target.contains_subspace(&piece.conj()) {
            out.push(format!("conj(I^({p},{q})) is not congruent to I^({q},{p})"));
        }
    }
    let a = splitting(m);
    let gr = m.graded_sum();
    let frame = m.frame();
    for n in w_lo..=w_hi {
        let image = m.w(n).to_gauss().image(&a).expect("square");
        if image != frame.blocks_upto(n).to_gauss() {
            out.push(format!("a_M does not carry W_{n} onto its graded counterpart"));
        }
    }
    for r in f_lo..=f_hi {
        if m.f(r).image(&a).expect("square") != gr.f(r) {
            out.push(format!("a_M does not carry F^{r} onto F^{r} of Gr^W"));
        }
    }
    for piece in frame.pieces() {
        let proj = piece.proj.to_gauss();
        for v in m.w(piece.weight).to_gauss().basis() {
            let av = a.apply(v).expect("square");
            let block = &av[piece.offset..piece.offset + piece.dim];
            if block != proj.apply(v).expect("fits").as_slice() {
                out.push(format!("Gr_{} of a_M is not the identity", piece.weight));
                break;
            }
        }
    }
    out
}
