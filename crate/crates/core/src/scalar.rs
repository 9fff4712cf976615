//! Gaussian-rational scalars.
//!
//! Every quantity in the engine is a complex number `re + im*i` whose real and
//! imaginary parts are arbitrary-precision rationals. Arithmetic is exact:
//! equality means literal equality of normalized fractions, and there is no
//! tolerance anywhere downstream.
//!
//! The text form used by the spec files is `a/b`, `a/b+c/d*i` or `c/d*i`, with
//! `/1` omitted and a `-` joining the parts when the imaginary part is
//! negative. `Display` always emits that canonical form, so value → string →
//! value round-trips bit-exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Exact Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// Exact fraction `num/den`. Panics if `den == 0`.
    pub fn rational(num: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `(a + b*i)/den` as a convenience for tables of small constants.
    pub fn gaussian(a: i64, b: i64, den: i64) -> Self {
        Scalar::new(
            BigRational::new(BigInt::from(a), BigInt::from(den)),
            BigRational::new(BigInt::from(b), BigInt::from(den)),
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

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`, the multiplicative norm into the rationals.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar::new(&self.re / &n, -&self.im / &n))
    }

    /// `self^k` for small non-negative exponents.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

/// Error for text that is not a well-formed Gaussian rational.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed scalar {input:?}: expected a/b, a/b+c/d*i or c/d*i")]
pub struct ScalarParseError {
    pub input: String,
}

fn parse_ratio(s: &str, whole: &str) -> Result<BigRational, ScalarParseError> {
    let body = s.strip_prefix('+').unwrap_or(s);
    BigRational::from_str(body).map_err(|_| ScalarParseError { input: whole.to_owned() })
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarParseError { input: s.to_owned() };
        if s.is_empty() {
            return Err(err());
        }
        // A '+' or '-' after the leading character separates the real and
        // imaginary terms; inside a single term signs only occur in front.
        let split = s
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k);
        match split {
            Some(k) => {
                let (re_part, im_part) = (&s[..k], &s[k..]);
                let im_body = im_part.strip_suffix("*i").ok_or_else(err)?;
                Ok(Scalar::new(parse_ratio(re_part, s)?, parse_ratio(im_body, s)?))
            }
            None => {
                if let Some(body) = s.strip_suffix("*i") {
                    Ok(Scalar::new(BigRational::zero(), parse_ratio(body, s)?))
                } else {
                    Ok(Scalar::new(parse_ratio(s, s)?, BigRational::zero()))
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("scalar division by zero");
        self * &inv
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}
