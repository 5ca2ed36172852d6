//! Serde adapters for big integers.

use num_bigint::BigInt;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::polyring::{parse_canonical_int, Scalar};

/// Big integers as canonical decimal strings.
pub(crate) mod decimal {
    use super::*;

    pub fn serialize<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: TryFrom<BigInt>,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        let n = parse_canonical_int(&s).map_err(de::Error::custom)?;
        T::try_from(n).map_err(|_| de::Error::custom(format!("{s} is out of range")))
    }
}

pub(crate) mod decimal_vec {
    use super::*;

    pub fn serialize<T: std::fmt::Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Vec<T>, D::Error>
    where
        T: TryFrom<BigInt>,
        D: Deserializer<'de>,
    {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|s| {
                let n = parse_canonical_int(&s).map_err(de::Error::custom)?;
                T::try_from(n).map_err(|_| de::Error::custom(format!("{s} is out of range")))
            })
            .collect()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NumberOrString {
    Signed(i64),
    Unsigned(u64),
    Text(String),
}

/// Integers as JSON numbers when they fit in 64 bits, otherwise as decimal
/// strings. Both forms are accepted on input.
pub(crate) mod loose_int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(v) {
            Ok(n) => n.serialize(s),
            Err(_) => s.collect_str(v),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match NumberOrString::deserialize(d)? {
            NumberOrString::Signed(n) => Ok(n.into()),
            NumberOrString::Unsigned(n) => Ok(n.into()),
            NumberOrString::Text(s) => parse_canonical_int(&s).map_err(de::Error::custom),
        }
    }
}

/// Like [`loose_int`], but a string may also hold a fraction `p/q`, so that a
/// non-integral scalar parses and can be rejected by the checker.
pub(crate) mod loose_scalar {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        match v.to_integer().and_then(|n| i64::try_from(&n).ok()) {
            Some(n) => n.serialize(s),
            None => s.collect_str(v),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        match NumberOrString::deserialize(d)? {
            NumberOrString::Signed(n) => Ok(Scalar::from_int(n)),
            NumberOrString::Unsigned(n) => Ok(Scalar::from_int(n)),
            NumberOrString::Text(s) => s.parse().map_err(de::Error::custom),
        }
    }
}
