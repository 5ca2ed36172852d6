use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ParseError;

/// An exact rational number kept in lowest terms with a positive denominator.
///
/// Zero is always `0/1`, and a scalar is integral exactly when its denominator
/// is `1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Scalar(BigRational::from_integer(n.into()))
    }

    /// `numer / denom`, reduced. Returns `None` for a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Option<Self> {
        let d = denom.into();
        if d.is_zero() {
            return None;
        }
        Some(Scalar(BigRational::new(numer.into(), d)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Scalar(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Scalar(num_traits::Pow::pow(&self.0, exp))
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// Bits contributed to the literal polynomial size: `⌈log₂|p|⌉ + ⌈log₂ q⌉`.
    pub fn size_bits(&self) -> u64 {
        ceil_log2(self.numer().magnitude()) + ceil_log2(self.denom().magnitude())
    }

    /// Plain bit-length of numerator plus denominator. Diagnostic only.
    pub fn bit_length(&self) -> u64 {
        self.numer().magnitude().bits() + self.denom().magnitude().bits()
    }
}

/// `⌈log₂ a⌉` for `a ≥ 1`; zero and one both give `0`.
pub fn ceil_log2(a: &BigUint) -> u64 {
    if a <= &BigUint::one() {
        0
    } else {
        (a - 1u32).bits()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

/// Parses a decimal integer with an optional leading `-` and no leading zeros.
pub(crate) fn parse_canonical_int(s: &str) -> Result<BigInt, ParseError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let bad = || ParseError::new(format!("not a canonical integer: {s:?}"));
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return Err(bad());
    }
    if s.starts_with('-') && digits == "0" {
        return Err(bad());
    }
    let mag = BigUint::parse_bytes(digits.as_bytes(), 10).ok_or_else(bad)?;
    let sign = if s.starts_with('-') { Sign::Minus } else { Sign::Plus };
    Ok(BigInt::from_biguint(sign, mag))
}

impl FromStr for Scalar {
    type Err = ParseError;

    /// Accepts only the canonical spelling: `"<int>"` or `"<int>/<posint>"`
    /// in lowest terms with a denominator other than 1.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s.split_once('/') {
            None => Ok(Scalar::from_int(parse_canonical_int(s)?)),
            Some((n, d)) => {
                let numer = parse_canonical_int(n)?;
                let denom = parse_canonical_int(d)?;
                if denom <= BigInt::one() {
                    return Err(ParseError::new(format!(
                        "denominator must be an integer greater than 1: {s:?}"
                    )));
                }
                let value = Scalar(BigRational::new(numer.clone(), denom.clone()));
                if value.numer() != &numer || value.denom() != &denom {
                    return Err(ParseError::new(format!("fraction not in lowest terms: {s:?}")));
                }
                Ok(value)
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
