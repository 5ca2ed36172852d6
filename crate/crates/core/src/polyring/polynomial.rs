use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Monomial, PolyError, Scalar, VarId};

/// A sparse multivariate polynomial with exact rational coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Scalar::one())
    }

    pub fn constant(c: impl Into<Scalar>) -> Self {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        Polynomial::term(Monomial::var(v), Scalar::one())
    }

    pub fn term(m: Monomial, c: impl Into<Scalar>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Sums the given terms; repeated monomials are merged.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order (leading term first).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant value, if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms.keys().next_back().map_or(-1, |m| i64::from(m.degree()))
    }

    /// Largest exponent of `v` over all terms.
    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Scalar::is_integer)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// `α·self + β·other`.
    pub fn lin_comb(&self, alpha: &Scalar, other: &Polynomial, beta: &Scalar) -> Polynomial {
        let mut out = self.scale(alpha);
        if !beta.is_zero() {
            for (m, c) in &other.terms {
                out.add_term(m.clone(), c * beta);
            }
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect() }
    }

    pub fn mul_var(&self, v: VarId) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.mul_var(v), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Simultaneous substitution; variables without a binding are left as is.
    pub fn substitute(&self, bindings: &BTreeMap<VarId, Polynomial>) -> Polynomial {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut powers: HashMap<(VarId, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut prod = Polynomial::constant(c.clone());
            for &(v, e) in m.factors() {
                match bindings.get(&v) {
                    Some(image) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| image.pow(e));
                        prod = prod.mul(pw);
                    }
                    None => kept.push((v, e)),
                }
            }
            let prod = prod.mul_monomial(&Monomial::from_pairs(kept));
            for (m2, c2) in prod.terms {
                out.add_term(m2, c2);
            }
        }
        out
    }

    /// Exact value at a point. Every variable of `self` must be bound.
    pub fn evaluate(&self, point: &BTreeMap<VarId, Scalar>) -> Result<Scalar, PolyError> {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for &(v, e) in m.factors() {
                let a = point.get(&v).ok_or(PolyError::UnboundVariable(v))?;
                val = val * a.pow(e);
            }
            total = total + val;
        }
        Ok(total)
    }

    /// Value at an integer point, computed in exact integer arithmetic.
    /// Returns `None` if a coefficient is not integral.
    pub fn evaluate_integer(&self, point: &BTreeMap<VarId, BigInt>) -> Result<Option<BigInt>, PolyError> {
        let mut total = BigInt::from(0);
        for (m, c) in &self.terms {
            let Some(mut val) = c.to_integer() else {
                return Ok(None);
            };
            for &(v, e) in m.factors() {
                let a = point.get(&v).ok_or(PolyError::UnboundVariable(v))?;
                val *= num_traits::Pow::pow(a, e);
            }
            total += val;
        }
        Ok(Some(total))
    }

    /// Literal bit size: sum over coefficients `p/q` (lowest terms) of
    /// `⌈log₂|p|⌉ + ⌈log₂ q⌉`. Coefficients `±1` contribute nothing.
    pub fn size_paper(&self) -> u64 {
        self.terms.values().map(Scalar::size_bits).sum()
    }

    /// Sum of the plain bit-lengths of all numerators and denominators.
    /// Diagnostic only.
    pub fn size_bit_length(&self) -> u64 {
        self.terms.values().map(Scalar::bit_length).sum()
    }

    /// Product (not lcm) of the denominators of all coefficients.
    pub fn denominator_product(&self) -> BigInt {
        self.terms.values().map(|c| c.denom().clone()).product()
    }

    /// Least common multiple of the denominators of all coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}*{m}")?;
            } else {
                write!(f, "({mag})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    coef: Scalar,
    mono: Monomial,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            terms: self
                .terms()
                .map(|(m, c)| TermRepr { coef: c.clone(), mono: m.clone() })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut terms = BTreeMap::new();
        for t in repr.terms {
            if t.coef.is_zero() {
                return Err(D::Error::custom(format!("zero coefficient on monomial {}", t.mono)));
            }
            let shown = t.mono.to_string();
            if terms.insert(t.mono, t.coef).is_some() {
                return Err(D::Error::custom(format!("duplicate monomial {shown}")));
            }
        }
        Ok(Polynomial { terms })
    }
}
