//! Scalar fields.
//!
//! Two exact fields are supported: rationals and gaussian rationals (a+bi
//! with rational a, b). `f64` implements the trait for convenience, but it
//! reports itself as inexact and every routine that has to decide whether a
//! quantity is zero (elimination, rank, annihilators) refuses to run on it.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Gaussian = Complex<BigRational>;

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Whether equality and zero tests are exact.
    const EXACT: bool;
    /// Short name used in reports.
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(q: &Rational) -> Self;
    fn conj(&self) -> Self;
    /// The imaginary unit, if the field has one.
    fn imag_unit() -> Option<Self>;
    /// Real and imaginary parts, when both are rational.
    fn parts(&self) -> Option<(Rational, Rational)>;
    fn parse(s: &str) -> Result<Self>;
    fn render(&self) -> String;

    fn add_ref(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn div_ref(&self, o: &Self) -> Self {
        self.clone() / o.clone()
    }

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(p), BigInt::from(q)))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn is_real(&self) -> bool {
        *self == self.conj()
    }
}

/// Fails with [`Error::Inexact`] unless `F` is an exact field.
pub fn require_exact<F: Scalar>(op: &'static str) -> Result<()> {
    if F::EXACT {
        Ok(())
    } else {
        Err(Error::Inexact { op, field: F::NAME })
    }
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn gauss(re: Rational, im: Rational) -> Gaussian {
    Complex::new(re, im)
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const NAME: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn parts(&self) -> Option<(Rational, Rational)> {
        Some((self.clone(), Zero::zero()))
    }
    fn parse(s: &str) -> Result<Self> {
        parse_rational(s)
    }
    fn render(&self) -> String {
        self.to_string()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
}

impl Scalar for Gaussian {
    const EXACT: bool = true;
    const NAME: &'static str = "gaussian";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Zero::zero())
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn imag_unit() -> Option<Self> {
        Some(Complex::new(Zero::zero(), One::one()))
    }
    fn parts(&self) -> Option<(Rational, Rational)> {
        Some((self.re.clone(), self.im.clone()))
    }
    fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Complex::new(parse_rational(&t)?, Zero::zero()));
        };
        // Split at the last sign that is not the leading one.
        let cut = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match cut {
            Some(k) => (parse_rational(&body[..k])?, &body[k..]),
            None => (Zero::zero(), body),
        };
        let im = match im {
            "" | "+" => One::one(),
            "-" => -<Rational as One>::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        Ok(Complex::new(re, im))
    }
    fn render(&self) -> String {
        if Zero::is_zero(&self.im) {
            return self.re.to_string();
        }
        let mag = self.im.abs();
        let mag = if One::is_one(&mag) { String::new() } else { mag.to_string() };
        let sign = if self.im.is_negative() { "-" } else { "+" };
        if Zero::is_zero(&self.re) {
            let sign = if self.im.is_negative() { "-" } else { "" };
            return format!("{sign}{mag}i");
        }
        format!("{}{sign}{mag}i", self.re)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float64";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rational(q: &Rational) -> Self {
        num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn parts(&self) -> Option<(Rational, Rational)> {
        None
    }
    fn parse(s: &str) -> Result<Self> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not a float: {s:?}")))
    }
    fn render(&self) -> String {
        format!("{self:?}")
    }
}

/// Lifts a rational into any field.
pub fn lift<F: Scalar>(q: &Rational) -> F {
    F::from_rational(q)
}

/// Sums an iterator of scalars.
pub fn sum<F: Scalar>(it: impl IntoIterator<Item = F>) -> F {
    it.into_iter().fold(F::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_round_trip() {
        for s in ["0", "3", "-1/2", "1/2+3/4i", "-2-i", "i", "-3i", "5/3-7/2i"] {
            let z = Gaussian::parse(s).unwrap();
            assert_eq!(Gaussian::parse(&z.render()).unwrap(), z, "{s}");
        }
        assert_eq!(Gaussian::parse("i").unwrap(), Gaussian::imag_unit().unwrap());
        assert_eq!(Gaussian::parse("-i").unwrap().render(), "-i");
        assert_eq!(Gaussian::parse("0+1i").unwrap().render(), "i");
        assert_eq!(Gaussian::parse("1/2-i").unwrap(), gauss(rat(1, 2), rat(-1, 1)));
    }

    #[test]
    fn rational_parse() {
        assert_eq!(Rational::parse("6/4").unwrap(), rat(3, 2));
        assert_eq!(Rational::parse(" -7 ").unwrap(), rat(-7, 1));
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("x").is_err());
        assert!(Rational::parse("1+2i").is_err());
    }

    #[test]
    fn conjugation_is_involutive_automorphism() {
        let a = Gaussian::parse("1/3+2i").unwrap();
        let b = Gaussian::parse("-4-5/7i").unwrap();
        assert_eq!(a.conj().conj(), a);
        assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
        let q: Gaussian = lift(&rat(5, 9));
        assert_eq!(q.conj(), q);
    }

    #[test]
    fn float_is_flagged_inexact() {
        assert!(require_exact::<Rational>("x").is_ok());
        assert!(require_exact::<Gaussian>("x").is_ok());
        assert!(matches!(require_exact::<f64>("x"), Err(Error::Inexact { .. })));
    }
}
