//! Triples `(M_ℚ, W, M̃)`, section tuples, and the space of MHS they parametrize.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::scalar::{gauss, rat};
use crate::linalg::{GaussRat, Matrix, QuotientMap, Rat, Subspace};
use crate::mhs::functors::{end, hom};
use crate::mhs::{Direction, Filtration, GradedFrame, Mhs};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    dim: usize,
    w: Filtration<Rat>,
    frame: GradedFrame,
    graded: BTreeMap<i32, Mhs>,
}

/// A point of `T(μ)`: for each weight `n` a section `α_n : Gr_n → W_n` over ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoint {
    pub sections: BTreeMap<i32, Matrix<GaussRat>>,
}

/// Lie algebras of `U(μ)` and `F^0U(μ)` inside `End(M̃)`.
#[derive(Clone, Debug)]
pub struct LieData {
    pub end: Mhs,
    pub w_minus1_end: Subspace<Rat>,
    pub f0_w_minus1_end: Subspace<GaussRat>,
}

/// Off-diagonal coefficients `C_{m,n}` (`m < n`) of a section tuple
/// `α_n = s_n + Σ_{m<n} s_m·C_{m,n}`.
pub type OffDiagonal = BTreeMap<(i32, i32), Matrix<GaussRat>>;

#[derive(Clone, Debug)]
pub struct Truncation {
    pub p: i32,
    /// `μ_p`, on `W_p` in pivot coordinates.
    pub sub: Triple,
    /// `μ_{>p}`, on `M/W_p` in quotient coordinates.
    pub quot: Triple,
    pub w_p: Subspace<Rat>,
    pub quot_map: QuotientMap<Rat>,
    /// Change of graded coordinates from `μ` to the truncated triples.
    pub t_sub: BTreeMap<i32, Matrix<Rat>>,
    pub t_quot: BTreeMap<i32, Matrix<Rat>>,
}

impl TPoint {
    /// The sections side by side, as a map `Gr^W → M`.
    pub fn matrix(&self, dim: usize) -> Matrix<GaussRat> {
        let blocks: Vec<_> = self.sections.values().cloned().collect();
        Matrix::hstack(&blocks, dim).expect("sections share the ambient dimension")
    }
}

impl Triple {
    pub fn new(dim: usize, w: Filtration<Rat>, graded: BTreeMap<i32, Mhs>) -> Result<Self> {
        if w.ambient() != dim {
            return Err(Error::dim("weight filtration of triple", dim, w.ambient()));
        }
        let issues = w.issues();
        if !issues.is_empty() {
            return Err(Error::Filtration(issues.join("; ")));
        }
        let w = w.canonical();
        let frame = GradedFrame::new(&w);
        if frame.weights() != graded.keys().copied().collect::<Vec<_>>() {
            return Err(Error::InvalidTriple(format!(
                "graded weights {:?} do not match the jumps {:?} of W",
                graded.keys().collect::<Vec<_>>(),
                frame.weights()
            )));
        }
        for piece in frame.pieces() {
            let m = &graded[&piece.weight];
            if m.dim() != piece.dim {
                return Err(Error::InvalidTriple(format!(
                    "graded piece of weight {} has dimension {} instead of {}",
                    piece.weight,
                    m.dim(),
                    piece.dim
                )));
            }
            if m.weight().jumps() != vec![piece.weight] {
                return Err(Error::InvalidTriple(format!(
                    "graded piece of weight {} is not pure of that weight",
                    piece.weight
                )));
            }
        }
        Ok(Triple {
            dim,
            w,
            frame,
            graded,
        })
    }

    /// The triple an MHS is associated to.
    pub fn of(m: &Mhs) -> Triple {
        Triple::new(m.dim(), m.weight().clone(), m.gr_w()).expect("an MHS determines its triple")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weight(&self) -> &Filtration<Rat> {
        &self.w
    }

    pub fn frame(&self) -> &GradedFrame {
        &self.frame
    }

    pub fn graded(&self) -> &BTreeMap<i32, Mhs> {
        &self.graded
    }

    /// `M̃ = ⊕ M̃_n` in block coordinates.
    pub fn split(&self) -> Mhs {
        self.graded
            .values()
            .fold(Mhs::zero(), |acc, m| crate::mhs::functors::direct_sum(&acc, m))
    }

    pub fn lie_data(&self) -> LieData {
        let end = end(&self.split());
        let w_minus1_end = end.w(-1);
        let f0_w_minus1_end = end
            .f(0)
            .intersect(&w_minus1_end.to_gauss())
            .expect("same ambient");
        LieData {
            end,
            w_minus1_end,
            f0_w_minus1_end,
        }
    }

    pub fn dim_s(&self) -> usize {
        let ld = self.lie_data();
        ld.w_minus1_end.dim() - ld.f0_w_minus1_end.dim()
    }

    pub fn is_associated(&self, m: &Mhs) -> bool {
        m.dim() == self.dim
            && m.weight() == &self.w
            && m
                .gr_w()
                .iter()
                .zip(&self.graded)
                .all(|((a, x), (b, y))| a == b && x.same_as(y))
            && m.gr_w().len() == self.graded.len()
    }

    pub fn check_point(&self, alpha: &TPoint) -> Result<()> {
        if alpha.sections.keys().copied().collect::<Vec<_>>() != self.frame.weights() {
            return Err(Error::InvalidSection(
                "section weights do not match the graded pieces".into(),
            ));
        }
        for piece in self.frame.pieces() {
            let a = &alpha.sections[&piece.weight];
            if a.rows() != self.dim || a.cols() != piece.dim {
                return Err(Error::InvalidSection(format!(
                    "section of weight {} has shape {}x{}, expected {}x{}",
                    piece.weight,
                    a.rows(),
                    a.cols(),
                    self.dim,
                    piece.dim
                )));
            }
            let wn = self.w.get(piece.weight).to_gauss();
            if !a.columns().iter().all(|c| wn.contains(c)) {
                return Err(Error::InvalidSection(format!(
                    "section of weight {} leaves W_{}",
                    piece.weight, piece.weight
                )));
            }
            let comp = piece.proj.to_gauss().mul(a)?;
            if comp != Matrix::identity(piece.dim) {
                return Err(Error::InvalidSection(format!(
                    "section of weight {} does not split W_{} -> Gr_{}",
                    piece.weight, piece.weight, piece.weight
                )));
            }
        }
        Ok(())
    }

    /// `F_α = α(F M̃)`.
    pub fn build(&self, alpha: &TPoint) -> Result<Mhs> {
        self.check_point(alpha)?;
        let a = alpha.matrix(self.dim);
        let f = self.split().hodge().image(&a)?;
        Mhs::new(self.dim, self.w.clone(), f)
    }

    /// `α_M = a_M^{-1}`, cut into its graded blocks.
    pub fn sections_from_mhs(&self, m: &Mhs) -> Result<TPoint> {
        if !self.is_associated(m) {
            return Err(Error::NotAssociated(
                "weight filtration or graded pieces differ from the triple".into(),
            ));
        }
        let alpha = m.deligne_sections();
        Ok(self.cut(&alpha))
    }

    fn cut(&self, alpha: &Matrix<GaussRat>) -> TPoint {
        TPoint {
            sections: self
                .frame
                .pieces()
                .iter()
                .map(|p| (p.weight, alpha.column_block(p.offset, p.dim)))
                .collect(),
        }
    }

    /// The split point `α_n = s_n`.
    pub fn identity_point(&self) -> TPoint {
        self.point_from_params(&OffDiagonal::new())
            .expect("the empty parameter set is admissible")
    }

    pub fn point_from_params(&self, params: &OffDiagonal) -> Result<TPoint> {
        let pieces = self.frame.pieces();
        let mut sections = BTreeMap::new();
        for (k, pn) in pieces.iter().enumerate() {
            let mut a = pn.section.to_gauss();
            for pm in &pieces[..k] {
                if let Some(c) = params.get(&(pm.weight, pn.weight)) {
                    if c.rows() != pm.dim || c.cols() != pn.dim {
                        return Err(Error::InvalidSection(format!(
                            "coefficient block ({}, {}) has the wrong shape",
                            pm.weight, pn.weight
                        )));
                    }
                    a = a.add(&pm.section.to_gauss().mul(c)?)?;
                }
            }
            sections.insert(pn.weight, a);
        }
        for (m, n) in params.keys() {
            if self.frame.piece(*m).is_none() || self.frame.piece(*n).is_none() || m >= n {
                return Err(Error::InvalidSection(format!(
                    "no coefficient block ({m}, {n}) for this triple"
                )));
            }
        }
        Ok(TPoint { sections })
    }

    /// Random off-diagonal coefficients: real part `a/b`, imaginary part
    /// `c/d` with `|a|, |c| ≤ height`, `1 ≤ b, d ≤ height`, `c ≠ 0`.
    pub fn sample_params(&self, seed: u64, index: u64, height: u32) -> OffDiagonal {
        let h = i64::from(height.max(1));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let mut out = OffDiagonal::new();
        let pieces = self.frame.pieces();
        for (k, pn) in pieces.iter().enumerate() {
            for pm in &pieces[..k] {
                let c = Matrix::from_fn(pm.dim, pn.dim, |_, _| {
                    let a = rng.random_range(-h..=h);
                    let b = rng.random_range(1..=h);
                    let mut c = rng.random_range(-h..h);
                    if c >= 0 {
                        c += 1;
                    }
                    let d = rng.random_range(1..=h);
                    gauss(rat(a, b), rat(c, d))
                });
                out.insert((pm.weight, pn.weight), c);
            }
        }
        out
    }

    pub fn sample_point(&self, seed: u64, height: u32) -> TPoint {
        self.sample_point_indexed(seed, 0, height)
    }

    pub fn sample_point_indexed(&self, seed: u64, index: u64, height: u32) -> TPoint {
        self.point_from_params(&self.sample_params(seed, index, height))
            .expect("sampled blocks have the right shapes")
    }

    pub fn equal_in_s(&self, a: &TPoint, b: &TPoint) -> Result<bool> {
        Ok(self.build(a)?.hodge() == self.build(b)?.hodge())
    }

    /// `α^{-1}β` preserves the Hodge filtration of `M̃`.
    pub fn group_criterion(&self, a: &TPoint, b: &TPoint) -> Result<bool> {
        self.check_point(a)?;
        self.check_point(b)?;
        let u = a
            .matrix(self.dim)
            .inverse()
            .expect("section tuples are invertible")
            .mul(&b.matrix(self.dim))?;
        let f = self.split();
        for p in f.hodge().jumps() {
            if f.f(p).image(&u)? != f.f(p) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn truncate(&self, p: i32) -> Truncation {
        let w_p = self.w.get(p);
        let coords = w_p.coords_matrix();
        let w_sub = self.w.restrict(&w_p).expect("W_p is a subspace");
        let quot_map = Subspace::full(self.dim)
            .quotient_map(&w_p)
            .expect("W_p is a subspace");
        let w_quot = self.w.image(&quot_map.proj).expect("projection fits");
        let frame_sub = GradedFrame::new(&w_sub);
        let frame_quot = GradedFrame::new(&w_quot);
        let mut graded_sub = BTreeMap::new();
        let mut graded_quot = BTreeMap::new();
        let mut t_sub = BTreeMap::new();
        let mut t_quot = BTreeMap::new();
        for piece in self.frame.pieces() {
            let n = piece.weight;
            let (frame, to_new, graded, ts) = if n <= p {
                (&frame_sub, &coords, &mut graded_sub, &mut t_sub)
            } else {
                (&frame_quot, &quot_map.proj, &mut graded_quot, &mut t_quot)
            };
            let new_piece = frame.piece(n).expect("truncation keeps the weight");
            let t = new_piece
                .proj
                .mul(&to_new.mul(&piece.section).expect("fits"))
                .expect("fits");
            let pure = &self.graded[&n];
            let f = pure.hodge().image(&t.to_gauss()).expect("fits");
            let m = Mhs::new(piece.dim, pure.weight().clone(), f)
                .expect("isomorphic image of a pure structure");
            graded.insert(n, m);
            ts.insert(n, t);
        }
        Truncation {
            p,
            sub: Triple::new(w_p.dim(), w_sub, graded_sub).expect("truncated triple"),
            quot: Triple::new(quot_map.proj.rows(), w_quot, graded_quot)
                .expect("truncated triple"),
            w_p,
            quot_map,
            t_sub,
            t_quot,
        }
    }

    /// `(α_p, α_{>p})` by restriction and passing to the quotient.
    pub fn truncate_point(&self, tr: &Truncation, alpha: &TPoint) -> Result<(TPoint, TPoint)> {
        self.check_point(alpha)?;
        let coords = tr.w_p.coords_matrix().to_gauss();
        let proj = tr.quot_map.proj.to_gauss();
        let mut sub = BTreeMap::new();
        let mut quot = BTreeMap::new();
        for (n, a) in &alpha.sections {
            if *n <= tr.p {
                let t_inv = tr.t_sub[n].to_gauss().inverse().expect("change of basis");
                sub.insert(*n, coords.mul(a)?.mul(&t_inv)?);
            } else {
                let t_inv = tr.t_quot[n].to_gauss().inverse().expect("change of basis");
                quot.insert(*n, proj.mul(a)?.mul(&t_inv)?);
            }
        }
        Ok((TPoint { sections: sub }, TPoint { sections: quot }))
    }

    /// `F = F_x W_p + ψ(F_y(M/W_p))` for a section `ψ` of `M → M/W_p`.
    pub fn fiber_point(&self, tr: &Truncation, x: &Mhs, y: &Mhs, psi: &Matrix<GaussRat>) -> Result<Mhs> {
        self.check_fiber_inputs(tr, x, y)?;
        let dq = tr.quot.dim();
        if psi.rows() != self.dim || psi.cols() != dq {
            return Err(Error::InvalidSection(format!(
                "section of M -> M/W_p must be {}x{}, got {}x{}",
                self.dim,
                dq,
                psi.rows(),
                psi.cols()
            )));
        }
        if tr.quot_map.proj.to_gauss().mul(psi)? != Matrix::identity(dq) {
            return Err(Error::InvalidSection("psi is not a section of M -> M/W_p".into()));
        }
        let incl = tr.w_p.basis_matrix().to_gauss();
        let fx = x.hodge().image(&incl)?;
        let fy = y.hodge().image(psi)?;
        let (a0, a1) = fx.span_range();
        let (b0, b1) = fy.span_range();
        let f = Filtration::from_fn(self.dim, Direction::Decreasing, a0.min(b0), a1.max(b1), |k| {
            fx.get(k).sum(&fy.get(k)).expect("same ambient")
        });
        Mhs::new(self.dim, self.w.clone(), f)
    }

    /// `γ_ψ = α + ψβ` for representatives `α` of `x` and `β` of `y`, as a
    /// section tuple of `μ`.
    pub fn fiber_section(&self, tr: &Truncation, x: &Mhs, y: &Mhs, psi: &Matrix<GaussRat>) -> Result<TPoint> {
        self.check_fiber_inputs(tr, x, y)?;
        let ax = tr.sub.sections_from_mhs(x)?;
        let ay = tr.quot.sections_from_mhs(y)?;
        let incl = tr.w_p.basis_matrix().to_gauss();
        let mut sections = BTreeMap::new();
        for piece in self.frame.pieces() {
            let n = piece.weight;
            let s = if n <= tr.p {
                incl.mul(&ax.sections[&n])?.mul(&tr.t_sub[&n].to_gauss())?
            } else {
                psi.mul(&ay.sections[&n])?.mul(&tr.t_quot[&n].to_gauss())?
            };
            sections.insert(n, s);
        }
        let point = TPoint { sections };
        self.check_point(&point)?;
        Ok(point)
    }

    fn check_fiber_inputs(&self, tr: &Truncation, x: &Mhs, y: &Mhs) -> Result<()> {
        if !tr.sub.is_associated(x) {
            return Err(Error::NotAssociated(format!("x is not associated to the truncation at p = {}", tr.p)));
        }
        if !tr.quot.is_associated(y) {
            return Err(Error::NotAssociated(format!("y is not associated to the quotient at p = {}", tr.p)));
        }
        Ok(())
    }

    /// `dim Hom(M/W_p, W_p) - dim F^0 Hom(y, x)`.
    pub fn fiber_dim(&self, tr: &Truncation, x: &Mhs, y: &Mhs) -> Result<usize> {
        self.check_fiber_inputs(tr, x, y)?;
        let h = hom(y, x);
        Ok(h.dim() - h.f(0).dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mhs::functors::{direct_sum, tate};

    fn kummer_triple() -> Triple {
        Triple::of(&direct_sum(&tate(1), &tate(0)))
    }

    #[test]
    fn kummer_triple_shape() {
        let mu = kummer_triple();
        assert_eq!(mu.frame().weights(), vec![-2, 0]);
        assert_eq!(mu.dim_s(), 1);
    }

    #[test]
    fn sampling_is_deterministic_with_nonzero_imaginary_parts() {
        let mu = kummer_triple();
        let a = mu.sample_params(7, 3, 10);
        assert_eq!(a, mu.sample_params(7, 3, 10));
        assert_ne!(a, mu.sample_params(7, 4, 10));
        let z = a[&(-2, 0)].get(0, 0).clone();
        assert!(z.im != rat(0, 1));
    }

    #[test]
    fn wrong_sections_rejected() {
        let mu = kummer_triple();
        let mut alpha = mu.identity_point();
        alpha
            .sections
            .insert(0, Matrix::from_fn(2, 1, |_, _| GaussRat::from(rat(1, 1))));
        assert!(mu.build(&alpha).is_ok());
        alpha
            .sections
            .insert(-2, Matrix::from_fn(2, 1, |i, _| GaussRat::from(rat(i as i64, 1))));
        assert!(matches!(mu.build(&alpha), Err(Error::InvalidSection(_))));
    }
}
