//! Hodge loci along affine lines `ψ0 + t·δψ` in a fiber of `Θ_p`.

use num_traits::{One, Zero};

use super::construction::{Construction, FamilyNode};
use crate::error::{Error, Result};
use crate::linalg::poly::{affine_matrix, constant_matrix};
use crate::linalg::{GaussRat, Matrix, Poly, Rat};
use crate::mhs::Mhs;
use crate::radical::hom_dagger;
use crate::triple::{TPoint, Triple, Truncation};

#[derive(Clone, Debug)]
pub struct Pencil {
    triple: Triple,
    p: i32,
    x: Mhs,
    y: Mhs,
    psi0: Matrix<GaussRat>,
    dpsi: Matrix<GaussRat>,
    truncation: Truncation,
}

impl Pencil {
    pub fn new(
        triple: Triple,
        p: i32,
        x: Mhs,
        y: Mhs,
        psi0: Matrix<GaussRat>,
        dpsi: Matrix<GaussRat>,
    ) -> Result<Self> {
        let truncation = triple.truncate(p);
        if dpsi.rows() != psi0.rows() || dpsi.cols() != psi0.cols() {
            return Err(Error::InvalidSection("direction and base have different shapes".into()));
        }
        if dpsi.is_zero() {
            return Err(Error::InvalidSection("pencil direction is zero".into()));
        }
        if !truncation.quot_map.proj.to_gauss().mul(&dpsi)?.is_zero() {
            return Err(Error::InvalidSection(
                "direction does not take values in W_p".into(),
            ));
        }
        triple.fiber_section(&truncation, &x, &y, &psi0)?;
        Ok(Pencil {
            triple,
            p,
            x,
            y,
            psi0,
            dpsi,
            truncation,
        })
    }

    pub fn triple(&self) -> &Triple {
        &self.triple
    }

    pub fn p(&self) -> i32 {
        self.p
    }

    pub fn x(&self) -> &Mhs {
        &self.x
    }

    pub fn y(&self) -> &Mhs {
        &self.y
    }

    pub fn psi0(&self) -> &Matrix<GaussRat> {
        &self.psi0
    }

    pub fn dpsi(&self) -> &Matrix<GaussRat> {
        &self.dpsi
    }

    pub fn psi_at(&self, t: &GaussRat) -> Matrix<GaussRat> {
        self.psi0.add(&self.dpsi.scale(t)).expect("same shape")
    }

    pub fn point_at(&self, t: &GaussRat) -> Result<TPoint> {
        self.triple
            .fiber_section(&self.truncation, &self.x, &self.y, &self.psi_at(t))
    }

    pub fn mhs_at(&self, t: &GaussRat) -> Result<Mhs> {
        self.triple.build(&self.point_at(t)?)
    }

    /// The pencil `s ↦ ψ0 + (a·s + b)·δψ`.
    pub fn reparametrize(&self, a: &GaussRat, b: &GaussRat) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidSection("reparametrization must be invertible".into()));
        }
        Pencil::new(
            self.triple.clone(),
            self.p,
            self.x.clone(),
            self.y.clone(),
            self.psi_at(b),
            self.dpsi.scale(a),
        )
    }

    /// `t ↦ γ(t)` acting on the split object. `γ(t) = γ0(1 + tN)` with
    /// `N² = 0`, since `N` moves `Gr_{>p}` into `W_p`.
    pub fn base_node(&self) -> Result<FamilyNode> {
        let dim = self.triple.dim();
        let g0 = self.point_at(&GaussRat::zero())?.matrix(dim);
        let g1 = self.point_at(&GaussRat::one())?.matrix(dim);
        let d = g1.sub(&g0)?;
        let g0_inv = g0
            .inverse()
            .ok_or_else(|| Error::InvalidSection("section tuple is not invertible".into()))?;
        let n = g0_inv.mul(&d)?;
        let phi = affine_matrix(&g0, &d);
        let phi_inv = affine_matrix(&g0_inv, &n.mul(&g0_inv)?.scale(&-GaussRat::one()));
        if phi.mul(&phi_inv)? != constant_matrix(&Matrix::identity(dim)) {
            return Err(Error::Unsupported("pencil direction is not nilpotent".into()));
        }
        Ok(FamilyNode {
            w: self.triple.weight().clone(),
            f_ref: self.triple.split().hodge().clone(),
            phi,
            phi_inv,
        })
    }

    /// `Hom(M/W_p, M)^†` and the rational section of `M → M/W_p`, read in
    /// its coordinates. `E_p` of the member splits exactly where this
    /// vector is a Hodge class.
    pub fn splitting_witness(&self) -> Result<(Construction, Vec<Rat>)> {
        let hd = hom_dagger(&self.mhs_at(&GaussRat::zero())?, self.p)?;
        let v = hd.space.coords(&hd.rational_section());
        Ok((Construction::Dagger(self.p, Box::new(Construction::SelfObj)), v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocusKind {
    All,
    AffineSubset,
}

/// `{t : v ∈ W_0 ∩ F^0}` of the derived member at `ψ0 + t·δψ`, as the
/// common zeros of polynomials in `t` over ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusResult {
    pub kind: LocusKind,
    pub constraints: Vec<Poly<GaussRat>>,
    /// Monic gcd of the constraints; zero when there are none.
    pub gcd: Poly<GaussRat>,
    /// The locus is `{point}` when `gcd` is linear.
    pub point: Option<GaussRat>,
    pub outside_w0: bool,
}

impl LocusResult {
    pub fn is_empty(&self) -> bool {
        self.kind == LocusKind::AffineSubset && self.gcd.is_constant()
    }

    pub fn contains(&self, t: &GaussRat) -> bool {
        self.constraints.iter().all(|c| c.eval(t).is_zero()) && !self.outside_w0
    }
}

pub fn locus_on_pencil(pencil: &Pencil, v: &[Rat], construction: &Construction) -> Result<LocusResult> {
    let node = construction.transport(&pencil.base_node()?)?;
    if v.len() != node.dim() {
        return Err(Error::dim("locus vector", node.dim(), v.len()));
    }
    if !node.w.get(0).contains(v) {
        return Ok(LocusResult {
            kind: LocusKind::AffineSubset,
            constraints: vec![Poly::one()],
            gcd: Poly::one(),
            point: None,
            outside_w0: true,
        });
    }
    let lifted: Vec<Poly<GaussRat>> = v
        .iter()
        .map(|x| Poly::constant(GaussRat::new(x.clone(), Rat::zero())))
        .collect();
    let u = node.phi_inv.apply(&lifted)?;
    let ann = node.f_ref.get(0).annihilator();
    let constraints: Vec<Poly<GaussRat>> = ann
        .basis()
        .iter()
        .map(|row| {
            row.iter()
                .zip(&u)
                .fold(Poly::zero(), |acc, (c, p)| acc + p.scale(c))
        })
        .filter(|p: &Poly<GaussRat>| !p.is_zero())
        .collect();
    let gcd = constraints.iter().fold(Poly::zero(), |g, c| g.gcd(c));
    let kind = if constraints.is_empty() {
        LocusKind::All
    } else {
        LocusKind::AffineSubset
    };
    Ok(LocusResult {
        kind,
        point: gcd.linear_root(),
        constraints,
        gcd,
        outside_w0: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::gq;
    use crate::mhs::functors::{direct_sum, tate};

    fn kummer_pencil() -> Pencil {
        let mu = Triple::of(&direct_sum(&tate(1), &tate(0)));
        let psi0 = Matrix::from_rows(vec![vec![gq(0, 1, 0, 1)], vec![gq(1, 1, 0, 1)]], 1).unwrap();
        let dpsi = Matrix::from_rows(vec![vec![gq(1, 1, 0, 1)], vec![gq(0, 1, 0, 1)]], 1).unwrap();
        Pencil::new(mu, -2, tate(1), tate(0), psi0, dpsi).unwrap()
    }

    #[test]
    fn splitting_witness_cuts_out_the_origin() {
        let pencil = kummer_pencil();
        let (c, v) = pencil.splitting_witness().unwrap();
        let locus = locus_on_pencil(&pencil, &v, &c).unwrap();
        assert_eq!(locus.kind, LocusKind::AffineSubset);
        assert_eq!(locus.point, Some(GaussRat::zero()));
    }

    #[test]
    fn identity_endomorphism_is_everywhere_hodge() {
        let pencil = kummer_pencil();
        let mut id = vec![Rat::zero(); 4];
        id[0] = Rat::one();
        id[3] = Rat::one();
        let locus = locus_on_pencil(&pencil, &id, &Construction::end()).unwrap();
        assert_eq!(locus.kind, LocusKind::All);
    }
}
