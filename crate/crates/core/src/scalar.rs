//! Exact scalars over the rationals and the Gaussian rationals `Q(i)`.
//!
//! A [`Scalar`] always stores a real and an imaginary part; a rational is a
//! scalar whose imaginary part is zero. The field a value belongs to is
//! therefore a property of the value, while the field a matrix is declared
//! over lives on the matrix (see [`Field`]).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The two fields this crate computes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    GaussianRational,
}

impl Field {
    /// Tag used in matrix files: `"Q"` or `"Q(i)"`.
    pub fn tag(self) -> &'static str {
        match self {
            Field::Rational => "Q",
            Field::GaussianRational => "Q(i)",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        match tag {
            "Q" => Ok(Field::Rational),
            "Q(i)" => Ok(Field::GaussianRational),
            other => Err(Error::Input(format!("unknown field {other:?}"))),
        }
    }

    /// The smallest field containing both.
    pub fn join(self, other: Field) -> Field {
        self.max(other)
    }
}

/// An element of `Q(i)`, stored as a pair of reduced fractions.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::real(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::real(BigRational::new(num.into(), den.into()))
    }

    pub fn real(re: BigRational) -> Self {
        Scalar { re, im: BigRational::zero() }
    }

    pub fn complex(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    /// Gaussian integer `re + im*i`.
    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar::complex(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Smallest field containing the value.
    pub fn field(&self) -> Field {
        if self.is_real() {
            Field::Rational
        } else {
            Field::GaussianRational
        }
    }

    /// True for real values strictly greater than zero.
    pub fn is_positive_real(&self) -> bool {
        self.is_real() && self.re.is_positive()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|^2`, always rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(Scalar::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Some(Scalar { re: &self.re / &n, im: -&self.im / &n })
    }

    /// Exact quotient; `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Scalar) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Non-negative rational square root of a real value, if it exists in `Q`.
    pub fn rational_sqrt(&self) -> Option<Self> {
        if !self.is_real() {
            return None;
        }
        is_perfect_square(&self.re).map(Scalar::real)
    }

    /// A square root inside `Q(i)`, if one exists.
    ///
    /// For real non-negative input this agrees with [`Scalar::rational_sqrt`].
    pub fn gaussian_sqrt(&self) -> Option<Self> {
        if self.is_real() {
            if !self.re.is_negative() {
                return self.rational_sqrt();
            }
            return is_perfect_square(&-&self.re)
                .map(|r| Scalar { re: BigRational::zero(), im: r });
        }
        // (x + yi)^2 = a + bi  with  x^2 = (a + |z|)/2,  y = b / 2x
        let modulus = is_perfect_square(&self.norm_sqr())?;
        let two = BigRational::from_integer(2.into());
        let x = is_perfect_square(&((&self.re + &modulus) / &two))?;
        let y = &self.im / (&two * &x);
        Some(Scalar { re: x, im: y })
    }
}

/// Returns the non-negative rational `r` with `r^2 = x`, when `x` is a
/// square in `Q`.
pub fn is_perfect_square(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let num_root = exact_isqrt(x.numer())?;
    let den_root = exact_isqrt(x.denom())?;
    Some(BigRational::new(num_root, den_root))
}

fn exact_isqrt(v: &BigInt) -> Option<BigInt> {
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

fn parse_rational(text: &str, whole: &str) -> Result<BigRational> {
    let bad = || Error::Parse(whole.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix(['-', '+']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let num = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| bad())?;
    let den = match den {
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            BigInt::from_str(d).map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::ZeroDenominator(whole.to_string()));
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p`, `p/q`, `a+bi`, `a-bi`, `bi` and `i` forms with
    /// rational `a` and `b`.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse(s.to_string()));
        }
        let Some(body) = text.strip_suffix('i') else {
            return Ok(Scalar::real(parse_rational(&text, s)?));
        };
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re_text, im_text) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_text.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re_text, s)?
        };
        let im = match im_text {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            t => parse_rational(t, s)?,
        };
        Ok(Scalar { re, im })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::real(v)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

// Integer fast paths: products and sums of integers need no gcd.

fn q_add(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_integer() && y.is_integer() {
        BigRational::from_integer(x.numer() + y.numer())
    } else {
        x + y
    }
}

fn q_sub(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_integer() && y.is_integer() {
        BigRational::from_integer(x.numer() - y.numer())
    } else {
        x - y
    }
}

fn q_mul(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_zero() || y.is_zero() {
        BigRational::zero()
    } else if x.is_integer() && y.is_integer() {
        BigRational::from_integer(x.numer() * y.numer())
    } else {
        x * y
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { re: q_add(&self.re, &rhs.re), im: q_add(&self.im, &rhs.im) }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { re: q_sub(&self.re, &rhs.re), im: q_sub(&self.im, &rhs.im) }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::real(q_mul(&self.re, &rhs.re));
        }
        Scalar {
            re: q_sub(&q_mul(&self.re, &rhs.re), &q_mul(&self.im, &rhs.im)),
            im: q_add(&q_mul(&self.re, &rhs.im), &q_mul(&self.im, &rhs.re)),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if !rhs.re.is_zero() {
            self.re = q_add(&self.re, &rhs.re);
        }
        if !rhs.im.is_zero() {
            self.im = q_add(&self.im, &rhs.im);
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if !rhs.re.is_zero() {
            self.re = q_sub(&self.re, &rhs.re);
        }
        if !rhs.im.is_zero() {
            self.im = q_sub(&self.im, &rhs.im);
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}
