//! Exact scalars: rationals and Gaussian rationals, with their string forms.

use std::fmt::{self, Debug};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Rational numbers. The numerator/denominator pair is always reduced with a
/// positive denominator.
pub type Rat = BigRational;

/// Elements of ℚ(i), stored as `re + im·i`.
pub type GaussRat = Complex<Rat>;

/// The coefficient fields supported by the linear algebra layer.
pub trait Scalar: Num + Clone + Neg<Output = Self> + Debug + Send + Sync + 'static {
    /// Complex conjugation; the identity on ℚ.
    fn conj(&self) -> Self;
    fn from_rat(r: Rat) -> Self;
    fn to_gauss(&self) -> GaussRat;
    /// `Some(r)` iff the value lies in ℚ.
    fn as_rat(&self) -> Option<Rat>;
    fn format(&self) -> String;
    fn parse(s: &str) -> Result<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(rat(n, 1))
    }
}

impl Scalar for Rat {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_rat(r: Rat) -> Self {
        r
    }

    fn to_gauss(&self) -> GaussRat {
        Complex::new(self.clone(), Rat::zero())
    }

    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }

    fn format(&self) -> String {
        format_rat(self)
    }

    fn parse(s: &str) -> Result<Self> {
        parse_rat(s)
    }
}

impl Scalar for GaussRat {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_rat(r: Rat) -> Self {
        Complex::new(r, Rat::zero())
    }

    fn to_gauss(&self) -> GaussRat {
        self.clone()
    }

    fn as_rat(&self) -> Option<Rat> {
        self.im.is_zero().then(|| self.re.clone())
    }

    fn format(&self) -> String {
        format_gauss(self)
    }

    fn parse(s: &str) -> Result<Self> {
        parse_gauss(s)
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn gauss(re: Rat, im: Rat) -> GaussRat {
    Complex::new(re, im)
}

/// Shorthand for `(a/b) + (c/d)·i` with machine-integer parts.
pub fn gq(a: i64, b: i64, c: i64, d: i64) -> GaussRat {
    Complex::new(rat(a, b), rat(c, d))
}

pub fn imag_unit() -> GaussRat {
    Complex::new(Rat::zero(), Rat::one())
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_gauss(z: &GaussRat) -> String {
    if z.im.is_zero() {
        return format_rat(&z.re);
    }
    let im_abs = z.im.abs();
    let im_part = if im_abs.is_one() {
        "i".to_string()
    } else {
        format!("{}i", format_rat(&im_abs))
    };
    if z.re.is_zero() {
        if z.im.is_negative() {
            format!("-{im_part}")
        } else {
            im_part
        }
    } else {
        let sign = if z.im.is_negative() { '-' } else { '+' };
        format!("{}{}{}", format_rat(&z.re), sign, im_part)
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::parse("", format!("malformed rational {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::parse("", format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Parses `"a/b+c/di"`; either part may be omitted (`"3"`, `"-i"`, `"1/2i"`).
pub fn parse_gauss(s: &str) -> Result<GaussRat> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::parse("", format!("malformed Gaussian rational {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::new(parse_rat(&t)?, Rat::zero()));
    };
    // Split at the last sign that is not leading and does not follow '/'.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/');
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_part {
        "" | "+" => Rat::one(),
        "-" => -Rat::one(),
        other => parse_rat(other).map_err(|_| bad())?,
    };
    let re = if re_part.is_empty() {
        Rat::zero()
    } else {
        parse_rat(re_part).map_err(|_| bad())?
    };
    Ok(Complex::new(re, im))
}

/// Display adapter for scalars in the canonical string form.
pub struct Show<'a, K: Scalar>(pub &'a K);

impl<K: Scalar> fmt::Display for Show<'_, K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format())
    }
}
