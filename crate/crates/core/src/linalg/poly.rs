//! Univariate polynomials over an exact field, used for one-parameter families.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::scalar::Scalar;

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Scalar> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: K) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Poly::new(vec![K::zero(), K::one()])
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> K {
        self.coeffs.first().cloned().unwrap_or_else(K::zero)
    }

    pub fn eval(&self, t: &K) -> K {
        self.coeffs
            .iter()
            .rev()
            .fold(K::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn scale(&self, c: &K) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// `p(a·t + b)`.
    pub fn compose_affine(&self, a: &K, b: &K) -> Self {
        let lin = Poly::new(vec![b.clone(), a.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc * lin.clone() + Poly::constant(c.clone()))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(K::one() / l.clone())),
            None => self.clone(),
        }
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![K::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().clone() / lead.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd; the gcd of zero polynomials is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The root of a degree-one polynomial.
    pub fn linear_root(&self) -> Option<K> {
        (self.degree() == Some(1)).then(|| -self.coeffs[0].clone() / self.coeffs[1].clone())
    }
}

impl<K: Scalar> Zero for Poly<K> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<K: Scalar> One for Poly<K> {
    fn one() -> Self {
        Poly::constant(K::one())
    }
}

impl<K: Scalar> Add for Poly<K> {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(K::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(K::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<K: Scalar> Neg for Poly<K> {
    type Output = Self;

    fn neg(self) -> Self {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<K: Scalar> Sub for Poly<K> {
    type Output = Self;

    fn sub(self, other: Self) -> Self {
        self + (-other)
    }
}

impl<K: Scalar> Mul for Poly<K> {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

/// `a + t·b` as a polynomial matrix.
pub fn affine_matrix<K: Scalar>(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<Poly<K>> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| {
        Poly::new(vec![a.get(i, j).clone(), b.get(i, j).clone()])
    })
}

pub fn constant_matrix<K: Scalar>(a: &Matrix<K>) -> Matrix<Poly<K>> {
    a.map(|x| Poly::constant(x.clone()))
}

pub fn eval_matrix<K: Scalar>(m: &Matrix<Poly<K>>, t: &K) -> Matrix<K> {
    m.map(|p| p.eval(t))
}

/// `Some` when every entry is constant.
pub fn constant_part<K: Scalar>(m: &Matrix<Poly<K>>) -> Option<Matrix<K>> {
    m.to_rows()
        .iter()
        .all(|r| r.iter().all(Poly::is_constant))
        .then(|| m.map(Poly::constant_term))
}
