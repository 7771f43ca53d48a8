//! Mixed Hodge structures with rational weight filtration and Hodge
//! filtration over ℚ(i).

pub mod deligne;
pub mod filtration;
pub mod functors;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use deligne::{axiom_violations, Bigrading};
pub use filtration::{Direction, Filtration};

use crate::error::{Error, Result};
use crate::linalg::{GaussRat, Matrix, Rat, Subspace};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PurityFailure {
    pub n: i32,
    pub p: i32,
}

/// Outcome of checking the axioms. Filtration problems (wrong ambient
/// dimension, non-monotone, not exhaustive) are kept apart from failures of
/// the purity condition on graded pieces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub filtration: Vec<String>,
    pub purity: Vec<PurityFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.filtration.is_empty() && self.purity.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let mut parts: Vec<String> = self.filtration.clone();
        parts.extend(
            self.purity
                .iter()
                .map(|e| format!("Gr_{} is not pure at p = {}", e.n, e.p)),
        );
        f.write_str(&parts.join("; "))
    }
}

/// One graded piece `Gr^W_n`, with coordinates given by a complement of
/// `W_{n-1}` inside `W_n` chosen from the echelon basis of `W_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub weight: i32,
    pub offset: usize,
    pub dim: usize,
    /// `dim × ambient`; kills `W_{n-1}` and reads coordinates on `W_n`.
    pub proj: Matrix<Rat>,
    /// `ambient × dim`; a rational section with columns in `W_n`.
    pub section: Matrix<Rat>,
}

/// The coordinate layout of `Gr^W`: pieces in increasing weight order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFrame {
    ambient: usize,
    pieces: Vec<GradedPiece>,
}

impl GradedFrame {
    pub fn new(w: &Filtration<Rat>) -> Self {
        let mut pieces = Vec::new();
        let mut offset = 0;
        for n in w.jumps() {
            let qm = w
                .get(n)
                .quotient_map(&w.get(n - 1))
                .expect("weight filtration is increasing");
            let dim = qm.proj.rows();
            pieces.push(GradedPiece {
                weight: n,
                offset,
                dim,
                proj: qm.proj,
                section: qm.section,
            });
            offset += dim;
        }
        GradedFrame {
            ambient: w.ambient(),
            pieces,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn pieces(&self) -> &[GradedPiece] {
        &self.pieces
    }

    pub fn weights(&self) -> Vec<i32> {
        self.pieces.iter().map(|p| p.weight).collect()
    }

    pub fn piece(&self, n: i32) -> Option<&GradedPiece> {
        self.pieces.iter().find(|p| p.weight == n)
    }

    /// Block-coordinate subspace `⊕_{m ≤ n} Gr_m`.
    pub fn blocks_upto(&self, n: i32) -> Subspace<Rat> {
        let idx: Vec<usize> = self
            .pieces
            .iter()
            .filter(|p| p.weight <= n)
            .flat_map(|p| p.offset..p.offset + p.dim)
            .collect();
        Subspace::coordinate(self.ambient, &idx)
    }

    /// The weight filtration of `Gr^W` in block coordinates.
    pub fn graded_weight(&self) -> Filtration<Rat> {
        let steps = self
            .pieces
            .iter()
            .map(|p| (p.weight, self.blocks_upto(p.weight)))
            .collect();
        Filtration::unchecked(self.ambient, Direction::Increasing, steps).canonical()
    }

    /// Full rational section `Gr^W → M` assembled from the piece sections.
    pub fn section_matrix(&self) -> Matrix<Rat> {
        let blocks: Vec<Matrix<Rat>> = self.pieces.iter().map(|p| p.section.clone()).collect();
        Matrix::hstack(&blocks, self.ambient).expect("sections share the ambient dimension")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mhs {
    dim: usize,
    w: Filtration<Rat>,
    f: Filtration<GaussRat>,
    frame: GradedFrame,
}

impl Mhs {
    /// Validates and canonicalizes; rejects with the full report.
    pub fn new(dim: usize, w: Filtration<Rat>, f: Filtration<GaussRat>) -> Result<Self> {
        let report = Mhs::check(dim, &w, &f);
        if !report.is_valid() {
            return Err(Error::NotMhs(report));
        }
        let w = w.canonical();
        let frame = GradedFrame::new(&w);
        Ok(Mhs {
            dim,
            w,
            f: f.canonical(),
            frame,
        })
    }

    pub fn check(dim: usize, w: &Filtration<Rat>, f: &Filtration<GaussRat>) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (name, amb, dir, issues) in [
            ("W", w.ambient(), w.direction(), w.issues()),
            ("F", f.ambient(), f.direction(), f.issues()),
        ] {
            if amb != dim {
                report
                    .filtration
                    .push(format!("{name} lives in dimension {amb} instead of {dim}"));
            }
            let expected = if name == "W" {
                Direction::Increasing
            } else {
                Direction::Decreasing
            };
            if dir != expected {
                report.filtration.push(format!("{name} has the wrong direction"));
            }
            report
                .filtration
                .extend(issues.into_iter().map(|s| format!("{name}: {s}")));
        }
        if !report.filtration.is_empty() {
            return report;
        }
        let w = w.clone().canonical();
        let frame = GradedFrame::new(&w);
        let (lo, hi) = f.span_range();
        for piece in frame.pieces() {
            let n = piece.weight;
            let gr = graded_hodge(f, &w, piece);
            let d = piece.dim;
            for p in lo.min(n - hi + 1)..=hi.max(n - lo + 1) {
                let a = gr.get(p);
                let b = gr.get(n - p + 1).conj();
                let ok = a.dim() + b.dim() == d && a.sum(&b).expect("same ambient").is_full();
                if !ok {
                    report.purity.push(PurityFailure { n, p });
                }
            }
        }
        report
    }

    pub fn validate(&self) -> ValidationReport {
        Mhs::check(self.dim, &self.w, &self.f)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weight(&self) -> &Filtration<Rat> {
        &self.w
    }

    pub fn hodge(&self) -> &Filtration<GaussRat> {
        &self.f
    }

    pub fn frame(&self) -> &GradedFrame {
        &self.frame
    }

    pub fn w(&self, n: i32) -> Subspace<Rat> {
        self.w.get(n)
    }

    pub fn f(&self, p: i32) -> Subspace<GaussRat> {
        self.f.get(p)
    }

    pub fn zero() -> Self {
        Mhs::new(
            0,
            Filtration::unchecked(0, Direction::Increasing, BTreeMap::new()),
            Filtration::unchecked(0, Direction::Decreasing, BTreeMap::new()),
        )
        .expect("zero object is valid")
    }

    pub fn is_pure(&self) -> bool {
        self.w.jumps().len() <= 1
    }

    /// The pure structure induced on `Gr^W_n` in frame coordinates.
    pub fn gr(&self, n: i32) -> Option<Mhs> {
        let piece = self.frame.piece(n)?;
        let f = graded_hodge(&self.f, &self.w, piece);
        Some(
            Mhs::new(piece.dim, Filtration::trivial(piece.dim, Direction::Increasing, n), f)
                .expect("graded pieces of a valid MHS are pure"),
        )
    }

    pub fn gr_w(&self) -> BTreeMap<i32, Mhs> {
        self.frame
            .weights()
            .into_iter()
            .map(|n| (n, self.gr(n).expect("weight is a jump")))
            .collect()
    }

    /// `⊕ Gr^W_n` as one object in block coordinates.
    pub fn graded_sum(&self) -> Mhs {
        self.gr_w()
            .values()
            .fold(Mhs::zero(), |acc, m| functors::direct_sum(&acc, m))
    }

    /// Induced structure on `a`, in the pivot coordinates of `a`.
    pub fn sub(&self, a: &Subspace<Rat>) -> Result<Mhs> {
        if a.ambient() != self.dim {
            return Err(Error::dim("sub-MHS candidate", self.dim, a.ambient()));
        }
        let w = self.w.restrict(a)?;
        let f = self.f.restrict(&a.to_gauss())?;
        let report = Mhs::check(a.dim(), &w, &f);
        if !report.is_valid() {
            return Err(Error::NotSubobject(report));
        }
        Mhs::new(a.dim(), w, f)
    }

    pub fn weight_sub(&self, p: i32) -> Mhs {
        self.sub(&self.w(p)).expect("weight steps are subobjects")
    }

    /// Quotient by a subobject, in the coordinates of
    /// `Subspace::full(dim).quotient_map(a)`.
    pub fn quotient(&self, a: &Subspace<Rat>) -> Result<Mhs> {
        self.sub(a)?;
        let qm = Subspace::full(self.dim).quotient_map(a)?;
        let w = self.w.image(&qm.proj)?;
        let f = self.f.image(&qm.proj.to_gauss())?;
        Mhs::new(qm.proj.rows(), w, f)
    }

    pub fn weight_quotient(&self, p: i32) -> Mhs {
        self.quotient(&self.w(p)).expect("weight steps are subobjects")
    }

    /// Weight-zero Hodge classes: rational vectors in `W_0 ∩ F^0`.
    pub fn hodge_classes(&self) -> Subspace<Rat> {
        self.w(0)
            .to_gauss()
            .intersect(&self.f(0))
            .expect("same ambient")
            .rational_part()
    }

    pub fn bigrading(&self) -> Bigrading {
        deligne::bigrading(self)
    }

    /// `a_M : M_ℂ → Gr^W M_ℂ` in frame coordinates.
    pub fn deligne_splitting(&self) -> Matrix<GaussRat> {
        deligne::splitting(self)
    }

    /// `α_M = a_M^{-1} : Gr^W M_ℂ → M_ℂ`.
    pub fn deligne_sections(&self) -> Matrix<GaussRat> {
        self.deligne_splitting()
            .inverse()
            .expect("the Deligne splitting is invertible")
    }

    /// Same underlying filtrations (the ambient dimension included).
    pub fn same_as(&self, other: &Mhs) -> bool {
        self.dim == other.dim && self.w == other.w && self.f == other.f
    }
}

/// `Gr F^p = proj(F^p ∩ W_n)` on one graded piece.
fn graded_hodge(
    f: &Filtration<GaussRat>,
    w: &Filtration<Rat>,
    piece: &GradedPiece,
) -> Filtration<GaussRat> {
    let wn = w.get(piece.weight).to_gauss();
    let proj = piece.proj.to_gauss();
    let mut steps = BTreeMap::new();
    for (p, s) in f.steps() {
        let cut = s.intersect(&wn).expect("same ambient");
        steps.insert(*p, cut.image(&proj).expect("projection fits"));
    }
    Filtration::unchecked(piece.dim, Direction::Decreasing, steps).canonical()
}

/// A rational matrix compatible with both filtrations.
#[derive(Clone, Debug)]
pub struct MorphismMhs {
    pub source: Mhs,
    pub target: Mhs,
    pub matrix: Matrix<Rat>,
}

impl MorphismMhs {
    pub fn new(source: Mhs, target: Mhs, matrix: Matrix<Rat>) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::dim(
                "morphism matrix",
                target.dim() * source.dim(),
                matrix.rows() * matrix.cols(),
            ));
        }
        for n in source.weight().jumps() {
            if !target.w(n).contains_subspace(&source.w(n).image(&matrix)?) {
                return Err(Error::NotMorphism(format!("W_{n} is not preserved")));
            }
        }
        let mg = matrix.to_gauss();
        for p in source.hodge().jumps() {
            if !target.f(p).contains_subspace(&source.f(p).image(&mg)?) {
                return Err(Error::NotMorphism(format!("F^{p} is not preserved")));
            }
        }
        Ok(MorphismMhs {
            source,
            target,
            matrix,
        })
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::linalg::scalar::{gq, rat};
    use crate::linalg::Scalar;

    pub(crate) fn kummer(z: GaussRat) -> Mhs {
        let mut w = BTreeMap::new();
        w.insert(-2, Subspace::coordinate(2, &[0]));
        w.insert(0, Subspace::full(2));
        let mut f = BTreeMap::new();
        f.insert(-1, Subspace::full(2));
        f.insert(0, Subspace::span(2, vec![vec![z, GaussRat::from_i64(1)]]).unwrap());
        Mhs::new(
            2,
            Filtration::new(2, Direction::Increasing, w).unwrap(),
            Filtration::new(2, Direction::Decreasing, f).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn kummer_is_valid_and_bad_f_is_not() {
        let m = kummer(gq(0, 1, 1, 1));
        assert!(m.validate().is_valid());
        let mut f = BTreeMap::new();
        f.insert(-1, Subspace::full(2));
        f.insert(0, Subspace::coordinate(2, &[0]));
        let r = Mhs::check(
            2,
            m.weight(),
            &Filtration::new(2, Direction::Decreasing, f).unwrap(),
        );
        assert!(!r.is_valid());
        assert!(r.filtration.is_empty());
        assert!(r.purity.iter().any(|e| e.n == 0));
    }

    #[test]
    fn sub_and_quotient() {
        let m = kummer(gq(0, 1, 1, 1));
        assert!(m.sub(&Subspace::coordinate(2, &[1])).is_err());
        assert_eq!(m.sub(&Subspace::zero(2)).unwrap().dim(), 0);
        let q = m.quotient(&m.w(-2)).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.weight().jumps(), vec![0]);
        assert_eq!(q.hodge().jumps(), vec![0]);
    }

    #[test]
    fn hodge_classes_of_kummer() {
        assert!(kummer(gq(0, 1, 1, 1)).hodge_classes().is_zero());
        let hc = kummer(gq(1, 2, 0, 1)).hodge_classes();
        assert_eq!(
            hc,
            Subspace::span(2, vec![vec![rat(1, 2), rat(1, 1)]]).unwrap()
        );
    }
}
