//! Extension classes of the weight filtration and the unipotent radical.

pub mod experiment;
pub mod mt;
pub mod tate;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::matrix::null_space;
use crate::linalg::{GaussRat, Matrix, QuotientMap, Rat, Scalar, Subspace};
use crate::mhs::functors::{end, hom, hom_vec_to_matrix, matrix_to_hom_vec, unit};
use crate::mhs::{Mhs, MorphismMhs};

pub use experiment::{genericity_experiment, ExperimentReport};
pub use mt::{max_tensor_dim, mt_lie_upper_bound};
pub use tate::{check_tate_regime, is_u_large, u_p_tate, LargenessReport, UpResult};

/// `Hom(M/W_p, M)^†` together with the data exhibiting it as an extension
/// of `ℚ(0)` by `H = Hom(M/W_p, W_p)`.
#[derive(Clone, Debug)]
pub struct HomDagger {
    pub p: i32,
    pub w_p: Subspace<Rat>,
    pub quot_map: QuotientMap<Rat>,
    /// `Hom(M/W_p, M)`, index `i*dim(M) + j` for `ē_i ↦ e_j`.
    pub hom: Mhs,
    /// The maps `f` with `π∘f` a scalar multiple of the identity.
    pub space: Subspace<Rat>,
    /// The induced structure on `space`, in its pivot coordinates.
    pub mhs: Mhs,
    /// `λ` on `hom` coordinates.
    pub lambda: Vec<Rat>,
    /// `H`, index `i*dim(W_p) + j`.
    pub h: Mhs,
    /// `H → hom`, `f ↦ ι∘f`.
    pub inclusion: Matrix<Rat>,
}

/// Maps `f : ℚ^r → ℚ^dim` with `proj∘f = λ·id`, and `λ` itself.
pub fn dagger_space(proj: &Matrix<Rat>) -> (Subspace<Rat>, Vec<Rat>) {
    let (r, dim) = (proj.rows(), proj.cols());
    let mut eqs = Vec::new();
    for i in 0..r {
        for k in 0..r {
            let mut row = vec![Rat::zero(); r * dim];
            for j in 0..dim {
                row[i * dim + j] = proj.get(k, j).clone();
            }
            if k != i {
                eqs.push(row);
            } else if i > 0 {
                for (j, x) in row[..dim].iter_mut().enumerate() {
                    *x -= proj.get(0, j);
                }
                eqs.push(row);
            }
        }
    }
    let space = Subspace::span(r * dim, null_space(eqs, r * dim)).expect("consistent dimensions");
    let mut lambda = vec![Rat::zero(); r * dim];
    if r > 0 {
        lambda[..dim].clone_from_slice(proj.row(0));
    }
    (space, lambda)
}

pub fn hom_dagger(m: &Mhs, p: i32) -> Result<HomDagger> {
    let w_p = m.w(p);
    if w_p.is_zero() || w_p.is_full() {
        return Err(Error::Degenerate { p });
    }
    let dim = m.dim();
    let quot_map = Subspace::full(dim).quotient_map(&w_p)?;
    let q = m.quotient(&w_p)?;
    let r = q.dim();
    let hom_m = hom(&q, m);
    let (space, lambda) = dagger_space(&quot_map.proj);
    let mhs = hom_m.sub(&space)?;
    let wp_mhs = m.sub(&w_p)?;
    let dp = wp_mhs.dim();
    let h = hom(&q, &wp_mhs);
    let incl = w_p.basis_matrix();
    let inclusion = Matrix::from_columns(
        &(0..r * dp)
            .map(|k| {
                let mut e = vec![Rat::zero(); r * dp];
                e[k] = Rat::one();
                let f = incl
                    .mul(&hom_vec_to_matrix(&e, r, dp))
                    .expect("shapes fit");
                matrix_to_hom_vec(&f)
            })
            .collect::<Vec<_>>(),
        r * dim,
    )?;
    let out = HomDagger {
        p,
        w_p,
        quot_map,
        hom: hom_m,
        space,
        mhs,
        lambda,
        h,
        inclusion,
    };
    out.lambda_morphism()?;
    Ok(out)
}

impl HomDagger {
    pub fn lambda_of(&self, v: &[Rat]) -> Rat {
        crate::linalg::matrix::dot(&self.lambda, v)
    }

    pub fn lambda_of_gauss(&self, v: &[GaussRat]) -> GaussRat {
        self.lambda
            .iter()
            .zip(v)
            .fold(GaussRat::zero(), |acc, (l, x)| acc + x.clone() * l.to_gauss())
    }

    /// `λ` as a morphism from the `Hom^†` structure to `ℚ(0)`.
    pub fn lambda_morphism(&self) -> Result<MorphismMhs> {
        let basis = self.space.basis_matrix();
        let row: Vec<Rat> = (0..self.space.dim())
            .map(|k| self.lambda_of(&basis.column(k)))
            .collect();
        let matrix = Matrix::from_rows(vec![row], self.space.dim())?;
        MorphismMhs::new(self.mhs.clone(), unit(), matrix)
    }

    /// Reads a vector of `hom` lying in `ι(H)` in `H` coordinates.
    pub fn to_h(&self, v: &[GaussRat]) -> Vec<GaussRat> {
        let (r, dim) = (self.quot_map.proj.rows(), self.quot_map.proj.cols());
        let f = hom_vec_to_matrix(v, r, dim);
        let coords = self.w_p.coords_matrix().to_gauss();
        matrix_to_hom_vec(&coords.mul(&f).expect("shapes fit"))
    }

    /// The rational section `ē ↦ s(ē)` of `M → M/W_p` (`λ = 1`).
    pub fn rational_section(&self) -> Vec<Rat> {
        matrix_to_hom_vec(&self.quot_map.section)
    }

    /// An element of `F^0 ∩ Hom^†` with `λ = 1`, from the echelon basis.
    pub fn hodge_section(&self) -> Vec<GaussRat> {
        let f0 = self
            .hom
            .f(0)
            .intersect(&self.space.to_gauss())
            .expect("same ambient");
        for v in f0.basis() {
            let l = self.lambda_of_gauss(v);
            if !l.is_zero() {
                let inv = GaussRat::one() / l;
                return v.iter().map(|x| x.clone() * inv.clone()).collect();
            }
        }
        unreachable!("λ is strict, so it is onto on F^0")
    }
}

/// `e = f_rational - f_hodge`, read in `H = Hom(M/W_p, W_p)`.
#[derive(Clone, Debug)]
pub struct ExtClassRep {
    pub p: i32,
    pub e: Vec<GaussRat>,
    pub f_rational: Vec<Rat>,
    pub f_hodge: Vec<GaussRat>,
}

pub fn ext_class_rep(m: &Mhs, p: i32) -> Result<(HomDagger, ExtClassRep)> {
    let hd = hom_dagger(m, p)?;
    let f_rational = hd.rational_section();
    let f_hodge = hd.hodge_section();
    let rep = ext_class_from_sections(&hd, f_rational, f_hodge)?;
    Ok((hd, rep))
}

/// Builds the representative from explicit choices, checking them.
pub fn ext_class_from_sections(
    hd: &HomDagger,
    f_rational: Vec<Rat>,
    f_hodge: Vec<GaussRat>,
) -> Result<ExtClassRep> {
    if !hd.space.contains(&f_rational) || !hd.lambda_of(&f_rational).is_one() {
        return Err(Error::InvalidSection(
            "rational choice must lie in Hom^† with λ = 1".into(),
        ));
    }
    let in_f0 = hd.hom.f(0).contains(&f_hodge) && hd.space.to_gauss().contains(&f_hodge);
    if !in_f0 || !hd.lambda_of_gauss(&f_hodge).is_one() {
        return Err(Error::InvalidSection(
            "Hodge choice must lie in F^0 Hom^† with λ = 1".into(),
        ));
    }
    let diff: Vec<GaussRat> = f_rational
        .iter()
        .zip(&f_hodge)
        .map(|(a, b)| a.to_gauss() - b.clone())
        .collect();
    Ok(ExtClassRep {
        p: hd.p,
        e: hd.to_h(&diff),
        f_rational,
        f_hodge,
    })
}

/// `e ∈ S + span_ℚ(rational)`, decided by solving a rational system for the
/// real and imaginary parts.
pub fn in_sum_mod_rational(e: &[GaussRat], s: &Subspace<GaussRat>, rational: &Subspace<Rat>) -> bool {
    let ann = s.annihilator();
    if ann.is_zero() {
        return true;
    }
    let b = rational.basis_matrix().to_gauss();
    let c = Matrix::from_rows(ann.basis().to_vec(), s.ambient()).expect("annihilator rows fit");
    let cb = c.mul(&b).expect("shapes fit");
    let ce = c.apply(e).expect("shapes fit");
    let (cb_re, cb_im) = cb.split_parts();
    let k = rational.dim();
    let mut aug: Vec<Vec<Rat>> = Vec::new();
    for (i, z) in ce.iter().enumerate() {
        let mut row = cb_re.row(i).to_vec();
        row.push(z.re.clone());
        aug.push(row);
        let mut row = cb_im.row(i).to_vec();
        row.push(z.im.clone());
        aug.push(row);
    }
    let coeff: Vec<Vec<Rat>> = aug.iter().map(|r| r[..k].to_vec()).collect();
    let rank = |rows: Vec<Vec<Rat>>, cols| crate::linalg::subspace::rref_rows(rows, cols).0.len();
    rank(coeff, k) == rank(aug, k + 1)
}

/// Whether `E_p(M)` dies in `Ext(1, H/A)`.
pub fn splits_mod(m: &Mhs, p: i32, a: &Subspace<Rat>) -> Result<bool> {
    let (hd, rep) = ext_class_rep(m, p)?;
    splits_mod_with(&hd, &rep, a)
}

pub fn splits_mod_with(hd: &HomDagger, rep: &ExtClassRep, a: &Subspace<Rat>) -> Result<bool> {
    hd.h.sub(a)?;
    Ok(splits_mod_unchecked(hd, rep, a))
}

/// As [`splits_mod_with`] for an `a` already known to be a subobject.
pub(crate) fn splits_mod_unchecked(hd: &HomDagger, rep: &ExtClassRep, a: &Subspace<Rat>) -> bool {
    let s = a.to_gauss().sum(&hd.h.f(0)).expect("same ambient");
    in_sum_mod_rational(&rep.e, &s, &Subspace::full(hd.h.dim()))
}

/// `Σ_p ι∘e_p∘π_p` in `End(M)` coordinates, over all weight cuts.
pub fn total_ext_class_rep(m: &Mhs) -> Result<Vec<GaussRat>> {
    let jumps = m.weight().jumps();
    let dim = m.dim();
    let mut total = vec![GaussRat::zero(); dim * dim];
    for &p in jumps.iter().take(jumps.len().saturating_sub(1)) {
        let (hd, rep) = ext_class_rep(m, p)?;
        let r = hd.quot_map.proj.rows();
        let dp = hd.w_p.dim();
        let e = hom_vec_to_matrix(&rep.e, r, dp);
        let f = hd
            .w_p
            .basis_matrix()
            .to_gauss()
            .mul(&e)?
            .mul(&hd.quot_map.proj.to_gauss())?;
        for (t, x) in total.iter_mut().zip(matrix_to_hom_vec(&f)) {
            *t = t.clone() + x;
        }
    }
    Ok(total)
}

/// Whether the total class dies modulo a subobject `a ⊆ W_{-1}End(M)`.
pub fn total_splits_mod(m: &Mhs, a: &Subspace<Rat>) -> Result<bool> {
    let e = end(m);
    let w1 = e.w(-1);
    if !w1.contains_subspace(a) {
        return Err(Error::Unsupported(
            "candidate is not contained in W_{-1}End(M)".into(),
        ));
    }
    e.sub(a)?;
    let total = total_ext_class_rep(m)?;
    let f0 = e.f(0).intersect(&w1.to_gauss())?;
    let s = a.to_gauss().sum(&f0)?;
    Ok(in_sum_mod_rational(&total, &s, &w1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::gq;
    use crate::mhs::tests::kummer;

    #[test]
    fn kummer_splits_iff_rational() {
        for (z, rational) in [
            (gq(0, 1, 0, 1), true),
            (gq(2, 3, 0, 1), true),
            (gq(0, 1, 1, 1), false),
            (gq(1, 2, 1, 3), false),
        ] {
            assert_eq!(splits_mod(&kummer(z), -2, &Subspace::zero(1)).unwrap(), rational);
        }
    }

    #[test]
    fn degenerate_cut_is_an_error() {
        assert!(matches!(hom_dagger(&kummer(gq(0, 1, 1, 1)), 0), Err(Error::Degenerate { p: 0 })));
    }

    #[test]
    fn total_class_of_kummer() {
        let m = kummer(gq(0, 1, 1, 1));
        let w1 = end(&m).w(-1);
        assert!(!total_splits_mod(&m, &Subspace::zero(4)).unwrap());
        assert!(total_splits_mod(&m, &w1).unwrap());
    }
}
