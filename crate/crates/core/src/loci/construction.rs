//! Functor expressions applied to a family member, evaluated either at a
//! single MHS or symbolically along a one-parameter family.

use crate::error::{Error, Result};
use crate::linalg::poly::{constant_matrix, eval_matrix};
use crate::linalg::{GaussRat, Matrix, Poly, Rat, Subspace};
use crate::mhs::functors::{dual, hom, tensor};
use crate::mhs::{Filtration, Mhs};
use crate::radical::{dagger_space, hom_dagger, max_tensor_dim};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotBy {
    Weight(i32),
    Space(Subspace<Rat>),
}

/// Prefix terms over the family member `SELF`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    SelfObj,
    Dual(Box<Construction>),
    Tensor(Box<Construction>, Box<Construction>),
    Hom(Box<Construction>, Box<Construction>),
    WSub(i32, Box<Construction>),
    Quot(QuotBy, Box<Construction>),
    /// `Hom(X/W_p X, X)^†`.
    Dagger(i32, Box<Construction>),
}

fn guard(a: usize, b: usize) -> Result<()> {
    let limit = max_tensor_dim();
    let dim = a.saturating_mul(b);
    if dim > limit {
        return Err(Error::ResourceGuard { dim, limit });
    }
    Ok(())
}

impl Construction {
    pub fn end() -> Self {
        Construction::Hom(Box::new(Construction::SelfObj), Box::new(Construction::SelfObj))
    }

    pub fn eval(&self, m: &Mhs) -> Result<Mhs> {
        use Construction::*;
        Ok(match self {
            SelfObj => m.clone(),
            Dual(x) => dual(&x.eval(m)?),
            Tensor(x, y) => {
                let (a, b) = (x.eval(m)?, y.eval(m)?);
                guard(a.dim(), b.dim())?;
                tensor(&a, &b)
            }
            Hom(x, y) => {
                let (a, b) = (x.eval(m)?, y.eval(m)?);
                guard(a.dim(), b.dim())?;
                hom(&a, &b)
            }
            WSub(p, x) => x.eval(m)?.weight_sub(*p),
            Quot(QuotBy::Weight(p), x) => x.eval(m)?.weight_quotient(*p),
            Quot(QuotBy::Space(a), x) => x.eval(m)?.quotient(a)?,
            Dagger(p, x) => {
                let a = x.eval(m)?;
                guard(a.dim(), a.dim())?;
                hom_dagger(&a, *p)?.mhs
            }
        })
    }

    /// The same term along a family, in the coordinates `eval` uses.
    pub fn transport(&self, base: &FamilyNode) -> Result<FamilyNode> {
        use Construction::*;
        match self {
            SelfObj => Ok(base.clone()),
            Dual(x) => Ok(x.transport(base)?.dual()),
            Tensor(x, y) => {
                let (a, b) = (x.transport(base)?, y.transport(base)?);
                guard(a.dim(), b.dim())?;
                Ok(a.tensor(&b))
            }
            Hom(x, y) => {
                let (a, b) = (x.transport(base)?, y.transport(base)?);
                guard(a.dim(), b.dim())?;
                Ok(a.dual().tensor(&b))
            }
            WSub(p, x) => {
                let a = x.transport(base)?;
                let wp = a.w.get(*p);
                a.restrict(&wp)
            }
            Quot(QuotBy::Weight(p), x) => {
                let a = x.transport(base)?;
                let wp = a.w.get(*p);
                a.quotient(&wp)
            }
            Quot(QuotBy::Space(s), x) => x.transport(base)?.quotient(s),
            Dagger(p, x) => {
                let a = x.transport(base)?;
                guard(a.dim(), a.dim())?;
                a.dagger(*p)
            }
        }
    }
}

/// A family `t ↦ (W, Φ(t)·F_ref)` with `Φ(t)` a polynomial matrix whose
/// inverse is polynomial too. `F_ref` lives on a reference space `R`.
#[derive(Clone, Debug)]
pub struct FamilyNode {
    pub w: Filtration<Rat>,
    pub f_ref: Filtration<GaussRat>,
    pub phi: Matrix<Poly<GaussRat>>,
    pub phi_inv: Matrix<Poly<GaussRat>>,
}

fn poly_const(m: &Matrix<Rat>) -> Matrix<Poly<GaussRat>> {
    constant_matrix(&m.to_gauss())
}

impl FamilyNode {
    pub fn dim(&self) -> usize {
        self.w.ambient()
    }

    pub fn phi_at(&self, t: &GaussRat) -> Matrix<GaussRat> {
        eval_matrix(&self.phi, t)
    }

    pub fn at(&self, t: &GaussRat) -> Result<Mhs> {
        let f = self.f_ref.image(&self.phi_at(t))?;
        Mhs::new(self.dim(), self.w.clone(), f)
    }

    pub fn dual(&self) -> Self {
        FamilyNode {
            w: self.w.dual(),
            f_ref: self.f_ref.dual(),
            phi: self.phi_inv.transpose(),
            phi_inv: self.phi.transpose(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        FamilyNode {
            w: self.w.tensor(&other.w),
            f_ref: self.f_ref.tensor(&other.f_ref),
            phi: self.phi.kron(&other.phi),
            phi_inv: self.phi_inv.kron(&other.phi_inv),
        }
    }

    /// `Φ(t)^{-1}(s)` as a subspace of `R`, required to be independent of `t`.
    fn reference_image(&self, s: &Subspace<Rat>) -> Result<Subspace<GaussRat>> {
        if s.ambient() != self.dim() {
            return Err(Error::dim("family subspace", self.dim(), s.ambient()));
        }
        let r = self.f_ref.ambient();
        let cols = self.phi_inv.mul(&poly_const(&s.basis_matrix()))?;
        let at0: Vec<Vec<GaussRat>> = cols.columns().iter().map(|c| c.iter().map(Poly::constant_term).collect()).collect();
        let base = Subspace::span(r, at0)?;
        for c in cols.columns() {
            let deg = c.iter().filter_map(Poly::degree).max().unwrap_or(0);
            for k in 1..=deg {
                let v: Vec<GaussRat> = c
                    .iter()
                    .map(|p| p.coeffs().get(k).cloned().unwrap_or_else(num_traits::Zero::zero))
                    .collect();
                if !base.contains(&v) {
                    return Err(Error::Unsupported(
                        "subspace is not carried to a fixed reference subspace along the family".into(),
                    ));
                }
            }
        }
        Ok(base)
    }

    /// Sub-family on a rational subspace, in its pivot coordinates. Being a
    /// subobject is checked at `t = 0`; the graded pieces do not move.
    pub fn restrict(&self, d: &Subspace<Rat>) -> Result<Self> {
        let d_ref = self.reference_image(d)?;
        self.at(&num_traits::Zero::zero())?.sub(d)?;
        Ok(FamilyNode {
            w: self.w.restrict(d)?,
            f_ref: self.f_ref.restrict(&d_ref)?,
            phi: poly_const(&d.coords_matrix())
                .mul(&self.phi)?
                .mul(&constant_matrix(&d_ref.basis_matrix()))?,
            phi_inv: constant_matrix(&d_ref.coords_matrix())
                .mul(&self.phi_inv)?
                .mul(&poly_const(&d.basis_matrix()))?,
        })
    }

    /// Quotient family, in the coordinates of `Mhs::quotient`.
    pub fn quotient(&self, a: &Subspace<Rat>) -> Result<Self> {
        let a_ref = self.reference_image(a)?;
        self.at(&num_traits::Zero::zero())?.sub(a)?;
        let qx = Subspace::full(self.dim()).quotient_map(a)?;
        let qr = Subspace::full(self.f_ref.ambient()).quotient_map(&a_ref)?;
        Ok(FamilyNode {
            w: self.w.image(&qx.proj)?,
            f_ref: self.f_ref.image(&qr.proj)?,
            phi: poly_const(&qx.proj)
                .mul(&self.phi)?
                .mul(&constant_matrix(&qr.section))?,
            phi_inv: constant_matrix(&qr.proj)
                .mul(&self.phi_inv)?
                .mul(&poly_const(&qx.section))?,
        })
    }

    pub fn dagger(&self, p: i32) -> Result<Self> {
        let wp = self.w.get(p);
        if wp.is_zero() || wp.is_full() {
            return Err(Error::Degenerate { p });
        }
        let q = self.quotient(&wp)?;
        let h = q.dual().tensor(self);
        let qm = Subspace::full(self.dim()).quotient_map(&wp)?;
        let (space, _) = dagger_space(&qm.proj);
        h.restrict(&space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::poly::affine_matrix;
    use crate::linalg::scalar::gq;
    use crate::mhs::functors::{direct_sum, tate};
    use crate::triple::Triple;

    fn kummer_family() -> (Triple, FamilyNode) {
        let mu = Triple::of(&direct_sum(&tate(1), &tate(0)));
        let mut d = Matrix::zeros(2, 2);
        d.set(0, 1, gq(1, 1, 0, 1));
        let one = Matrix::identity(2);
        let node = FamilyNode {
            w: mu.weight().clone(),
            f_ref: mu.split().hodge().clone(),
            phi: affine_matrix(&one, &d),
            phi_inv: affine_matrix(&one, &d.scale(&gq(-1, 1, 0, 1))),
        };
        (mu, node)
    }

    #[test]
    fn transported_terms_match_pointwise_evaluation() {
        let (_, node) = kummer_family();
        let terms = vec![
            Construction::SelfObj,
            Construction::end(),
            Construction::Dual(Box::new(Construction::SelfObj)),
            Construction::WSub(-2, Box::new(Construction::end())),
            Construction::Quot(QuotBy::Weight(-2), Box::new(Construction::end())),
            Construction::Dagger(-2, Box::new(Construction::SelfObj)),
        ];
        for t in [gq(0, 1, 0, 1), gq(1, 2, 0, 1), gq(1, 1, 1, 1)] {
            let m = node.at(&t).unwrap();
            for c in &terms {
                let direct = c.eval(&m).unwrap();
                let family = c.transport(&node).unwrap().at(&t).unwrap();
                assert!(direct.same_as(&family), "{c:?} at {t}");
            }
        }
    }
}
