//! Arbitrary-precision rational scalars.
//!
//! `Rational` wraps `num_rational::BigRational` and pins the contract used
//! everywhere else in the crate: always reduced, denominator always positive,
//! serialized across any external boundary as the string `"p/q"` (or `"p"`
//! when the denominator is 1) so that no float ever contaminates an exact
//! pipeline.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number. Always stored reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Build `num/den`, reducing and normalizing the sign. `den == 0` is an error.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// Build from arbitrary-precision parts. `den == 0` is an error.
    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    /// `self^k` for a signed integer exponent. `0^k` with `k < 0` is an error.
    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 && self.is_zero() {
            return Err(Error::InvalidArgument("zero to a negative power".into()));
        }
        Ok(Rational(self.0.pow(k)))
    }

    /// Closest `f64`; used only at the simulation / reporting boundary.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact conversion of a finite `f64` (every finite float is a dyadic
    /// rational). Infinite or NaN inputs are errors.
    pub fn from_f64_exact(x: f64) -> Result<Self> {
        BigRational::from_float(x)
            .map(Rational)
            .ok_or_else(|| Error::InvalidArgument(format!("non-finite float {x}")))
    }

    /// Parse `"p/q"`, `"p"` or `"-p/q"`. Whitespace around parts is ignored.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let make_err = || Error::Config(format!("cannot parse rational from {s:?}"));
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| make_err())?;
                Ok(Rational::from_bigint(n))
            }
            Some((num, den)) => {
                let n = BigInt::from_str(num.trim()).map_err(|_| make_err())?;
                let d = BigInt::from_str(den.trim()).map_err(|_| make_err())?;
                if d.sign() != Sign::Plus {
                    return Err(Error::Config(format!(
                        "denominator must be positive in {s:?}"
                    )));
                }
                Rational::from_big(n, d)
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Rational::parse(s)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rational::parse(&s).map_err(de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

macro_rules! forward_div {
    ($lhs:ty, $rhs:ty) => {
        impl Div<$rhs> for $lhs {
            type Output = Rational;
            fn div(self, rhs: $rhs) -> Rational {
                assert!(!rhs.is_zero(), "division by zero rational");
                Rational(&self.0 / &rhs.0)
            }
        }
    };
}

forward_div!(Rational, Rational);
forward_div!(&Rational, &Rational);
forward_div!(Rational, &Rational);
forward_div!(&Rational, Rational);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

// ---- Integer combinatorics used throughout the moment formulas ----

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient as a `Rational`, convenient in coefficient formulas.
pub fn binomial_r(n: usize, k: usize) -> Rational {
    Rational::from_bigint(binomial(n, k))
}

/// `n!` as a `Rational`.
pub fn factorial_r(n: usize) -> Rational {
    Rational::from_bigint(factorial(n))
}
