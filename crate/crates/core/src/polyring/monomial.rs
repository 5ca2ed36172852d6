use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ParseError;

/// Original problem variables (`X`) sort before extension variables (`Y`).
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Namespace {
    X,
    Y,
}

/// A variable `x<k>` or `y<k>` with `k ≥ 1`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VarId {
    pub namespace: Namespace,
    pub index: u32,
}

impl VarId {
    pub fn x(index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        VarId { namespace: Namespace::X, index }
    }

    pub fn y(index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        VarId { namespace: Namespace::Y, index }
    }

    pub fn is_x(self) -> bool {
        self.namespace == Namespace::X
    }

    pub fn is_y(self) -> bool {
        self.namespace == Namespace::Y
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.namespace {
            Namespace::X => 'x',
            Namespace::Y => 'y',
        };
        write!(f, "{p}{}", self.index)
    }
}

impl FromStr for VarId {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let bad = || ParseError::new(format!("invalid variable name {s:?}"));
        let namespace = match s.as_bytes().first() {
            Some(b'x') => Namespace::X,
            Some(b'y') => Namespace::Y,
            _ => return Err(bad()),
        };
        let digits = &s[1..];
        if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: u32 = digits.parse().map_err(|_| bad())?;
        Ok(VarId { namespace, index })
    }
}

impl Serialize for VarId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VarId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A power product of variables. Exponents are positive and the factors are
/// sorted by variable; the empty product is the constant monomial `1`.
///
/// Monomials are totally ordered graded-lexicographically: total degree
/// first, then the exponent of the smallest variable where they differ.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Monomial {
    factors: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0u32) += e;
        }
        Monomial { factors: map.into_iter().filter(|&(_, e)| e > 0).collect() }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// `(var, exp)` pairs in variable order.
    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.factors
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    /// Variables with multiplicity, in variable order: `x1²·y2` gives
    /// `[x1, x1, y2]`.
    pub fn expanded(&self) -> Vec<VarId> {
        self.factors
            .iter()
            .flat_map(|&(v, e)| std::iter::repeat_n(v, e as usize))
            .collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn mul_var(&self, v: VarId) -> Monomial {
        let mut factors = self.factors.clone();
        match factors.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => factors[i].1 += 1,
            Err(i) => factors.insert(i, (v, 1)),
        }
        Monomial { factors }
    }

    /// `self / v^e`, or `None` if `v` does not divide with that multiplicity.
    pub fn div_var_pow(&self, v: VarId, e: u32) -> Option<Monomial> {
        let i = self.factors.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let have = self.factors[i].1;
        if have < e {
            return None;
        }
        let mut factors = self.factors.clone();
        if have == e {
            factors.remove(i);
        } else {
            factors[i].1 -= e;
        }
        Some(Monomial { factors })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.factors.iter().zip(&other.factors) {
                match a.0.cmp(&b.0) {
                    // `self` has a smaller variable that `other` lacks.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match a.1.cmp(&b.1) {
                        Ordering::Equal => {}
                        ord => return ord,
                    },
                }
            }
            // Equal degree and one is a prefix of the other: only possible when equal.
            self.factors.len().cmp(&other.factors.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.factors.len()))?;
        for (v, e) in &self.factors {
            map.serialize_entry(&v.to_string(), e)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct MonoVisitor;

        impl<'de> Visitor<'de> for MonoVisitor {
            type Value = Monomial;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from variable names to positive exponents")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Monomial, A::Error> {
                use serde::de::Error;
                let mut map = BTreeMap::new();
                while let Some((name, exp)) = access.next_entry::<String, u32>()? {
                    let v: VarId = name.parse().map_err(A::Error::custom)?;
                    if exp == 0 {
                        return Err(A::Error::custom(format!("zero exponent on {v}")));
                    }
                    if map.insert(v, exp).is_some() {
                        return Err(A::Error::custom(format!("duplicate variable {v}")));
                    }
                }
                Ok(Monomial { factors: map.into_iter().collect() })
            }
        }

        deserializer.deserialize_map(MonoVisitor)
    }
}
