//! Subspaces of coordinate spaces, kept in reduced row echelon form so that
//! equality of subspaces is equality of the stored matrices.

use num_traits::Zero;

use super::matrix::{null_space, Matrix};
use super::scalar::{GaussRat, Rat, Scalar};
use crate::error::{Error, Result};

/// Reduces `rows` (each of length `cols`) to RREF, dropping zero rows.
/// Returns the reduced rows and their pivot columns.
pub fn rref_rows<K: Scalar>(mut rows: Vec<Vec<K>>, cols: usize) -> (Vec<Vec<K>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = K::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.clone() - factor.clone() * y.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<K> {
    ambient: usize,
    basis: Vec<Vec<K>>,
    pivots: Vec<usize>,
}

/// Coordinates on a quotient `V/U`: `proj` kills `U` and `proj ∘ section = id`.
#[derive(Clone, Debug)]
pub struct QuotientMap<K> {
    pub proj: Matrix<K>,
    pub section: Matrix<K>,
}

impl<K: Scalar> Subspace<K> {
    pub fn span(ambient: usize, rows: Vec<Vec<K>>) -> Result<Self> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ambient {
                return Err(Error::dim(format!("spanning vector {i}"), ambient, r.len()));
            }
        }
        let (basis, pivots) = rref_rows(rows, ambient);
        Ok(Subspace {
            ambient,
            basis,
            pivots,
        })
    }

    pub(crate) fn span_unchecked(ambient: usize, rows: Vec<Vec<K>>) -> Self {
        let (basis, pivots) = rref_rows(rows, ambient);
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = Matrix::<K>::identity(ambient).to_rows();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let rows = indices
            .iter()
            .map(|&k| {
                let mut v = vec![K::zero(); ambient];
                v[k] = K::one();
                v
            })
            .collect();
        Subspace::span_unchecked(ambient, rows)
    }

    /// Column space of `f`.
    pub fn image_of(f: &Matrix<K>) -> Self {
        Subspace::span_unchecked(f.rows(), f.columns())
    }

    pub fn kernel_of(f: &Matrix<K>) -> Self {
        Subspace::span_unchecked(f.cols(), f.kernel())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<K>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Matrix of shape `(ambient, dim)` whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix<K> {
        Matrix::from_fn(self.ambient, self.dim(), |i, j| self.basis[j][i].clone())
    }

    /// Coordinates of `v ∈ self` in the echelon basis (read off at pivots).
    pub fn coords(&self, v: &[K]) -> Vec<K> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Matrix of [`Self::coords`], shape `(dim, ambient)`.
    pub fn coords_matrix(&self) -> Matrix<K> {
        Matrix::from_fn(self.dim(), self.ambient, |i, j| {
            if self.pivots[i] == j {
                K::one()
            } else {
                K::zero()
            }
        })
    }

    fn check_ambient(&self, other: &Self, what: &str) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::dim(what, self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[K]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        // Subtract the echelon combination determined by the pivot entries.
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                *x = x.clone() - c.clone() * y.clone();
            }
        }
        r.iter().all(Zero::is_zero)
    }

    /// `other ⊆ self`.
    pub fn contains_subspace(&self, other: &Self) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other, "subspace sum")?;
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Subspace::span_unchecked(self.ambient, rows))
    }

    pub fn sum_all<'a>(ambient: usize, parts: impl IntoIterator<Item = &'a Self>) -> Result<Self> {
        let mut rows = Vec::new();
        for p in parts {
            if p.ambient != ambient {
                return Err(Error::dim("subspace sum", ambient, p.ambient));
            }
            rows.extend(p.basis.iter().cloned());
        }
        Ok(Subspace::span_unchecked(ambient, rows))
    }

    /// Annihilator under the coordinate pairing `⟨u, w⟩ = Σ u_k w_k`.
    pub fn annihilator(&self) -> Self {
        Subspace::span_unchecked(self.ambient, null_space(self.basis.clone(), self.ambient))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other, "subspace intersection")?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// Image of this subspace under `f`.
    pub fn image(&self, f: &Matrix<K>) -> Result<Self> {
        if f.cols() != self.ambient {
            return Err(Error::dim("image under linear map", f.cols(), self.ambient));
        }
        let rows = self
            .basis
            .iter()
            .map(|b| f.apply(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span_unchecked(f.rows(), rows))
    }

    /// `{x : f·x ∈ self}`.
    pub fn preimage(&self, f: &Matrix<K>) -> Result<Self> {
        if f.rows() != self.ambient {
            return Err(Error::dim("preimage under linear map", f.rows(), self.ambient));
        }
        let ann = self.annihilator();
        let eqs = ann
            .basis
            .iter()
            .map(|c| {
                (0..f.cols())
                    .map(|j| {
                        c.iter()
                            .enumerate()
                            .fold(K::zero(), |acc, (i, ci)| acc + ci.clone() * f.get(i, j).clone())
                    })
                    .collect()
            })
            .collect();
        Ok(Subspace::span_unchecked(f.cols(), null_space(eqs, f.cols())))
    }

    /// `self ⊗ other` inside `K^a ⊗ K^b`, index `i*b + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut rows = Vec::with_capacity(self.dim() * other.dim());
        for u in &self.basis {
            for w in &other.basis {
                rows.push(
                    u.iter()
                        .flat_map(|x| w.iter().map(move |y| x.clone() * y.clone()))
                        .collect(),
                );
            }
        }
        Subspace::span_unchecked(self.ambient * other.ambient, rows)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.ambient + other.ambient;
        let rows = self
            .basis
            .iter()
            .map(|u| u.iter().cloned().chain(std::iter::repeat_n(K::zero(), other.ambient)).collect())
            .chain(other.basis.iter().map(|w| {
                std::iter::repeat_n(K::zero(), self.ambient)
                    .chain(w.iter().cloned())
                    .collect()
            }))
            .collect();
        Subspace::span_unchecked(n, rows)
    }

    /// Re-expresses a subspace of `self` in the coordinates of `self`.
    pub fn restrict(&self, inner: &Self) -> Result<Self> {
        if !self.contains_subspace(inner) {
            return Err(Error::Unsupported(
                "restriction of a subspace that is not contained in the ambient subspace".into(),
            ));
        }
        Ok(Subspace::span_unchecked(
            self.dim(),
            inner.basis.iter().map(|v| self.coords(v)).collect(),
        ))
    }

    /// Basis vectors of `self` chosen greedily from its echelon rows so that
    /// together with `inner` they span `self`.
    pub fn complement_of(&self, inner: &Self) -> Vec<Vec<K>> {
        let mut acc = inner.clone();
        let mut out = Vec::new();
        for row in &self.basis {
            if !acc.contains(row) {
                acc = Subspace::span_unchecked(
                    self.ambient,
                    acc.basis.iter().chain(std::iter::once(row)).cloned().collect(),
                );
                out.push(row.clone());
            }
        }
        out
    }

    /// Coordinates on `self / inner`; fails unless `inner ⊆ self`.
    pub fn quotient_map(&self, inner: &Self) -> Result<QuotientMap<K>> {
        if !self.contains_subspace(inner) {
            return Err(Error::Unsupported(
                "quotient by a subspace that is not contained in the ambient subspace".into(),
            ));
        }
        let n = self.ambient;
        let comp = self.complement_of(inner);
        let r = comp.len();
        let mut full: Vec<Vec<K>> = inner.basis.clone();
        full.extend(comp.iter().cloned());
        let partial = Subspace::span_unchecked(n, full.clone());
        full.extend(Subspace::<K>::full(n).complement_of(&partial));
        // Rows of `full` form a basis; coordinates of x solve x = c·B.
        let b = Matrix::from_rows(full, n)?;
        let b_inv = b.inverse().expect("extended basis is invertible");
        let offset = inner.dim();
        let proj = Matrix::from_fn(r, n, |j, k| b_inv.get(k, offset + j).clone());
        let section = Matrix::from_columns(&comp, n)?;
        Ok(QuotientMap { proj, section })
    }
}

impl Subspace<Rat> {
    pub fn to_gauss(&self) -> Subspace<GaussRat> {
        Subspace {
            ambient: self.ambient,
            basis: self
                .basis
                .iter()
                .map(|r| r.iter().map(Scalar::to_gauss).collect())
                .collect(),
            pivots: self.pivots.clone(),
        }
    }
}

impl Subspace<GaussRat> {
    pub fn conj(&self) -> Self {
        // Conjugating an echelon matrix entrywise keeps it in echelon form.
        Subspace {
            ambient: self.ambient,
            basis: self
                .basis
                .iter()
                .map(|r| r.iter().map(Scalar::conj).collect())
                .collect(),
            pivots: self.pivots.clone(),
        }
    }

    /// The rational vectors lying in this subspace.
    pub fn rational_part(&self) -> Subspace<Rat> {
        let ann = self.annihilator();
        let mut eqs: Vec<Vec<Rat>> = Vec::with_capacity(2 * ann.dim());
        for c in ann.basis() {
            eqs.push(c.iter().map(|z| z.re.clone()).collect());
            eqs.push(c.iter().map(|z| z.im.clone()).collect());
        }
        Subspace::span_unchecked(self.ambient, null_space(eqs, self.ambient))
    }

    pub fn is_defined_over_q(&self) -> bool {
        self.rational_part().dim() == self.dim()
    }

    /// `Some` when every echelon entry is rational.
    pub fn to_rational(&self) -> Option<Subspace<Rat>> {
        let mut basis = Vec::with_capacity(self.dim());
        for r in &self.basis {
            basis.push(r.iter().map(|z| z.as_rat()).collect::<Option<Vec<_>>>()?);
        }
        Some(Subspace {
            ambient: self.ambient,
            basis,
            pivots: self.pivots.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{gq, rat};

    fn q(rows: &[&[i64]], n: usize) -> Subspace<Rat> {
        Subspace::span(
            n,
            rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect(),
        )
        .unwrap()
    }

    fn e(n: usize, k: usize) -> Vec<Rat> {
        let mut v = vec![rat(0, 1); n];
        v[k] = rat(1, 1);
        v
    }

    #[test]
    fn rref_examples() {
        assert_eq!(q(&[&[2, 0], &[0, 3]], 2), Subspace::full(2));
        assert_eq!(q(&[&[1, 1], &[2, 2]], 2).basis(), &[vec![rat(1, 1), rat(1, 1)]]);
        let z: Subspace<Rat> = Subspace::span(3, vec![]).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.ambient(), 3);
        assert!(matches!(
            Subspace::span(2, vec![vec![rat(1, 1)]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rref_is_idempotent() {
        let u = q(&[&[1, 2, 3], &[4, 5, 6]], 3);
        let again = Subspace::span(3, u.basis().to_vec()).unwrap();
        assert_eq!(u, again);
    }

    #[test]
    fn lattice_operations() {
        let diag = q(&[&[1, 1]], 2);
        let x = q(&[&[1, 0]], 2);
        let y = q(&[&[0, 1]], 2);
        assert!(diag.intersect(&x).unwrap().is_zero());
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(2));
        // projection (x, y) ↦ x·e1
        let f = Matrix::from_rows(vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(0, 1)]], 2)
            .unwrap();
        assert_eq!(x.preimage(&f).unwrap(), Subspace::full(2));
        assert_eq!(Subspace::image_of(&f), x);
        assert!(x.contains(&e(2, 0)));
        assert!(!x.contains(&e(2, 1)));
    }

    #[test]
    fn quotient_coordinates() {
        let big = Subspace::<Rat>::full(3);
        let small = q(&[&[1, 1, 0]], 3);
        let qm = big.quotient_map(&small).unwrap();
        assert_eq!(qm.proj.rows(), 2);
        assert!(qm.proj.apply(&small.basis()[0]).unwrap().iter().all(Zero::is_zero));
        assert_eq!(qm.proj.mul(&qm.section).unwrap(), Matrix::identity(2));
        assert!(small.quotient_map(&big).is_err());
    }

    #[test]
    fn rational_part_examples() {
        let i = gq(0, 1, 1, 1);
        let one = gq(1, 1, 0, 1);
        let zero = gq(0, 1, 0, 1);
        let both = Subspace::span(
            2,
            vec![vec![one.clone(), i.clone()], vec![one.clone(), -i.clone()]],
        )
        .unwrap();
        assert_eq!(both.rational_part(), Subspace::full(2));
        assert!(both.is_defined_over_q());
        let line = Subspace::span(2, vec![vec![one.clone(), i.clone()]]).unwrap();
        assert!(line.rational_part().is_zero());
        assert!(!line.is_defined_over_q());
        let e1 = Subspace::span(2, vec![vec![one, zero]]).unwrap();
        assert_eq!(e1.rational_part(), q(&[&[1, 0]], 2));
        assert!(Subspace::<GaussRat>::zero(4).is_defined_over_q());
    }
}
