//! Resolution over linear equations (Res-Lin).
//!
//! Lines are disjunctions of integer linear equations `a·x = a₀`. The rules
//! are resolution, weakening, simplification and contraction, plus the Boolean
//! axiom `(x = 0) ∨ (x = 1)`. A refutation ends in the empty disjunction.
//!
//! The checker compares each claimed disjunction with the one the rule
//! computes, as multisets, so the order of disjuncts on a line only matters for
//! the positions that later rules cite.

mod hat;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::json;
use crate::polyring::{ceil_log2, Polynomial, Scalar, VarId};
use crate::proofcore::{CheckOptions, ErrorCode, LineError};

pub use hat::{build_registry, canonical_form, hat, AffineKey, HatSystem, Registry, ReslinError};

/// The equation `Σ coeffs[v]·v = constant`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinEq {
    #[serde(deserialize_with = "de_coeffs", serialize_with = "ser_coeffs")]
    coeffs: BTreeMap<VarId, BigInt>,
    #[serde(rename = "const", with = "json::loose_int")]
    constant: BigInt,
}

fn ser_coeffs<S: serde::Serializer>(m: &BTreeMap<VarId, BigInt>, s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Wrap<'a>(#[serde(with = "json::loose_int")] &'a BigInt);
    s.collect_map(m.iter().map(|(v, c)| (v, Wrap(c))))
}

fn de_coeffs<'de, D: serde::Deserializer<'de>>(d: D) -> Result<BTreeMap<VarId, BigInt>, D::Error> {
    use serde::de::Error;
    #[derive(Deserialize)]
    struct Wrap(#[serde(with = "json::loose_int")] BigInt);
    struct Visitor;
    impl<'de> serde::de::Visitor<'de> for Visitor {
        type Value = BTreeMap<VarId, BigInt>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map from x-variable names to nonzero integers")
        }
        fn visit_map<A: serde::de::MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some((v, Wrap(c))) = map.next_entry::<VarId, Wrap>()? {
                if !v.is_x() {
                    return Err(A::Error::custom(format!("{v} is not an x variable")));
                }
                if c.is_zero() {
                    return Err(A::Error::custom(format!("zero coefficient for {v}")));
                }
                if out.insert(v, c).is_some() {
                    return Err(A::Error::custom(format!("duplicate variable {v}")));
                }
            }
            Ok(out)
        }
    }
    d.deserialize_map(Visitor).map_err(D::Error::custom)
}

impl LinEq {
    /// Zero coefficients are dropped.
    pub fn new(coeffs: impl IntoIterator<Item = (VarId, BigInt)>, constant: impl Into<BigInt>) -> Self {
        let mut map: BTreeMap<VarId, BigInt> = BTreeMap::new();
        for (v, c) in coeffs {
            assert!(v.is_x(), "linear equations range over x variables only");
            *map.entry(v).or_default() += c;
        }
        map.retain(|_, c| !c.is_zero());
        LinEq { coeffs: map, constant: constant.into() }
    }

    /// `v = c`.
    pub fn var_equals(v: VarId, c: impl Into<BigInt>) -> Self {
        LinEq::new([(v, BigInt::from(1))], c)
    }

    /// `0 = c`.
    pub fn constant_eq(c: impl Into<BigInt>) -> Self {
        LinEq::new([], c)
    }

    pub fn coeffs(&self) -> &BTreeMap<VarId, BigInt> {
        &self.coeffs
    }

    pub fn constant(&self) -> &BigInt {
        &self.constant
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `alpha·self + beta·other`, constants included.
    pub fn combine(&self, alpha: &BigInt, other: &LinEq, beta: &BigInt) -> LinEq {
        let terms = self
            .coeffs
            .iter()
            .map(|(v, c)| (*v, alpha * c))
            .chain(other.coeffs.iter().map(|(v, c)| (*v, beta * c)));
        LinEq::new(terms, alpha * &self.constant + beta * &other.constant)
    }

    /// The affine form `a·x − a₀`, which vanishes exactly when the equation
    /// holds.
    pub fn affine_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::constant(Scalar::from_int(-self.constant.clone()));
        for (v, c) in &self.coeffs {
            p = &p + &Polynomial::var(*v).scale(&Scalar::from_int(c.clone()));
        }
        p
    }

    pub fn is_satisfied_by(&self, point: &BTreeMap<VarId, BigInt>) -> bool {
        let lhs: BigInt = self.coeffs.iter().map(|(v, c)| c * point.get(v).cloned().unwrap_or_default()).sum();
        lhs == self.constant
    }
}

impl fmt::Display for LinEq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (v, c)) in self.coeffs.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if mag == BigInt::from(1) {
                write!(f, "{v}")?;
            } else {
                write!(f, "{mag}*{v}")?;
            }
        }
        write!(f, " = {}", self.constant)
    }
}

/// A disjunction of linear equations; empty means false.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Disjunction(pub Vec<LinEq>);

impl Disjunction {
    pub fn new(disjuncts: Vec<LinEq>) -> Self {
        Disjunction(disjuncts)
    }

    pub fn empty() -> Self {
        Disjunction(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn disjuncts(&self) -> &[LinEq] {
        &self.0
    }

    pub fn without(&self, position: usize) -> Vec<LinEq> {
        let mut out = self.0.clone();
        out.remove(position);
        out
    }

    /// Equality as multisets of equations.
    pub fn same_multiset(&self, other: &Disjunction) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut a = self.0.clone();
        let mut b = other.0.clone();
        a.sort();
        b.sort();
        a == b
    }

    pub fn is_satisfied_by(&self, point: &BTreeMap<VarId, BigInt>) -> bool {
        self.0.iter().any(|l| l.is_satisfied_by(point))
    }
}

impl fmt::Display for Disjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("⊥");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∨ ")?;
            }
            write!(f, "({l})")?;
        }
        Ok(())
    }
}

/// How a Res-Lin line is justified. Positions index the disjuncts of the cited
/// line in the order written there.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum RlRule {
    Axiom {
        index: usize,
    },
    /// `(v = 0) ∨ (v = 1)`.
    #[serde(rename = "bool-axiom")]
    BoolAxiom { var: VarId },
    /// From `A ∨ L₁` (line `j`, position `dj`) and `B ∨ L₂` (line `k`,
    /// position `dk`) derive `A ∨ B ∨ (alpha·L₁ + beta·L₂)`.
    Resolution {
        j: usize,
        k: usize,
        dj: usize,
        dk: usize,
        #[serde(with = "json::loose_scalar")]
        alpha: Scalar,
        #[serde(with = "json::loose_scalar")]
        beta: Scalar,
    },
    Weakening {
        j: usize,
        eq: LinEq,
    },
    /// Drops a false constant equation `0 = k`, `k ≠ 0`.
    Simplification {
        j: usize,
        d: usize,
    },
    /// Drops position `d2`, which must equal position `d1`.
    Contraction {
        j: usize,
        d1: usize,
        d2: usize,
    },
}

impl RlRule {
    pub fn resolution(j: usize, k: usize, dj: usize, dk: usize, alpha: i64, beta: i64) -> Self {
        RlRule::Resolution { j, k, dj, dk, alpha: alpha.into(), beta: beta.into() }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RlLine {
    pub disjunction: Disjunction,
    pub rule: RlRule,
}

impl RlLine {
    pub fn new(disjunction: Disjunction, rule: RlRule) -> Self {
        RlLine { disjunction, rule }
    }
}

/// A Res-Lin certificate: the axioms `K` and the proof lines.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RlProof {
    #[serde(default)]
    pub axioms: Vec<Disjunction>,
    pub lines: Vec<RlLine>,
}

impl RlProof {
    pub fn new(axioms: Vec<Disjunction>) -> Self {
        RlProof { axioms, lines: Vec::new() }
    }

    /// Appends the conclusion of `rule`, computed rather than claimed.
    pub fn push(&mut self, rule: RlRule) -> Result<usize, LineError> {
        let d = derive_conclusion(&self.axioms, &self.lines, self.lines.len(), &rule)?;
        self.lines.push(RlLine::new(d, rule));
        Ok(self.lines.len() - 1)
    }

    pub fn check(&self) -> RlCheckReport {
        check_reslin(&self.axioms, &self.lines)
    }

    pub fn is_refutation(&self) -> bool {
        self.lines.last().is_some_and(|l| l.disjunction.is_empty())
    }
}

/// Outcome of checking a Res-Lin proof.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RlCheckReport {
    /// Every line is justified.
    pub valid: bool,
    pub error: Option<LineError>,
    /// Valid and ending in the empty disjunction.
    pub refutation: bool,
    #[serde(with = "json::decimal")]
    pub size_unary: BigUint,
    pub size_binary: u64,
    pub line_count: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<LineError>,
}

fn disjunction_sizes(d: &Disjunction) -> (BigUint, u64) {
    let mut unary = BigUint::zero();
    let mut binary = 0;
    for c in d.0.iter().flat_map(|l| l.coeffs.values()) {
        let mag = c.magnitude();
        unary += mag;
        binary += ceil_log2(mag);
    }
    (unary, binary)
}

/// `Σ |aᵢ|` over every coefficient of every disjunct of every line. Constant
/// terms are not counted.
pub fn size_unary(lines: &[RlLine]) -> BigUint {
    lines.iter().map(|l| disjunction_sizes(&l.disjunction).0).sum()
}

/// `Σ ⌈log₂|aᵢ|⌉` over the same coefficients.
pub fn size_binary(lines: &[RlLine]) -> u64 {
    lines.iter().map(|l| disjunction_sizes(&l.disjunction).1).sum()
}

/// The disjunction `rule` yields at position `at`, given the earlier lines.
pub fn derive_conclusion(
    axioms: &[Disjunction],
    prior: &[RlLine],
    at: usize,
    rule: &RlRule,
) -> Result<Disjunction, LineError> {
    use ErrorCode::*;
    let line = |k: usize| -> Result<&Disjunction, LineError> {
        if k >= at || k >= prior.len() {
            return Err(LineError::at(at, BadIndex, format!("line {at} refers to line {k}, which does not precede it")));
        }
        Ok(&prior[k].disjunction)
    };
    let position = |d: &Disjunction, k: usize, p: usize| -> Result<(), LineError> {
        if p >= d.len() {
            return Err(LineError::at(
                at,
                BadPosition,
                format!("position {p} is out of range for line {k}, which has {} disjuncts", d.len()),
            ));
        }
        Ok(())
    };
    match rule {
        RlRule::Axiom { index } => axioms.get(*index).cloned().ok_or_else(|| {
            LineError::at(at, BadIndex, format!("axiom index {index} out of range ({} axioms)", axioms.len()))
        }),
        RlRule::BoolAxiom { var } => {
            if !var.is_x() {
                return Err(LineError::at(at, RuleMismatch, format!("{var} is not an x variable")));
            }
            Ok(Disjunction::new(vec![LinEq::var_equals(*var, 0), LinEq::var_equals(*var, 1)]))
        }
        RlRule::Resolution { j, k, dj, dk, alpha, beta } => {
            let (a, b) = (line(*j)?, line(*k)?);
            position(a, *j, *dj)?;
            position(b, *k, *dk)?;
            let (Some(alpha), Some(beta)) = (alpha.to_integer(), beta.to_integer()) else {
                return Err(LineError::at(at, NonIntegerScalar, format!("resolution scalars {alpha}, {beta} must be integers")));
            };
            let combined = a.0[*dj].combine(&alpha, &b.0[*dk], &beta);
            let mut out = a.without(*dj);
            out.extend(b.without(*dk));
            out.push(combined);
            Ok(Disjunction::new(out))
        }
        RlRule::Weakening { j, eq } => {
            let mut out = line(*j)?.0.clone();
            out.push(eq.clone());
            Ok(Disjunction::new(out))
        }
        RlRule::Simplification { j, d } => {
            let a = line(*j)?;
            position(a, *j, *d)?;
            let target = &a.0[*d];
            if !target.is_constant() {
                return Err(LineError::at(at, RuleMismatch, format!("disjunct ({target}) is not a constant equation")));
            }
            if target.constant.is_zero() {
                return Err(LineError::at(at, SimplificationOnZero, "the equation 0 = 0 cannot be simplified away"));
            }
            Ok(Disjunction::new(a.without(*d)))
        }
        RlRule::Contraction { j, d1, d2 } => {
            let a = line(*j)?;
            position(a, *j, *d1)?;
            position(a, *j, *d2)?;
            if d1 == d2 {
                return Err(LineError::at(at, BadPosition, format!("contraction needs two distinct positions, got {d1} twice")));
            }
            if a.0[*d1] != a.0[*d2] {
                return Err(LineError::at(
                    at,
                    ContractionUnequal,
                    format!("({}) and ({}) differ", a.0[*d1], a.0[*d2]),
                ));
            }
            Ok(Disjunction::new(a.without(*d2)))
        }
    }
}

fn check_line(axioms: &[Disjunction], lines: &[RlLine], at: usize) -> Result<(), LineError> {
    let expect = derive_conclusion(axioms, &lines[..at], at, &lines[at].rule)?;
    let claimed = &lines[at].disjunction;
    if !claimed.same_multiset(&expect) {
        let code = if matches!(lines[at].rule, RlRule::Axiom { .. }) { ErrorCode::AxiomNotInSet } else { ErrorCode::RuleMismatch };
        return Err(LineError::at(at, code, format!("rule yields {expect}, line claims {claimed}")));
    }
    Ok(())
}

pub fn check_reslin(axioms: &[Disjunction], lines: &[RlLine]) -> RlCheckReport {
    check_reslin_with(axioms, lines, CheckOptions::default())
}

pub fn check_reslin_with(axioms: &[Disjunction], lines: &[RlLine], options: CheckOptions) -> RlCheckReport {
    let mut errors = Vec::new();
    for at in 0..lines.len() {
        if let Err(e) = check_line(axioms, lines, at) {
            errors.push(e);
            if !options.all_errors {
                break;
            }
        }
    }
    let error = errors.first().cloned();
    let valid = error.is_none();
    RlCheckReport {
        valid,
        error,
        refutation: valid && lines.last().is_some_and(|l| l.disjunction.is_empty()),
        size_unary: size_unary(lines),
        size_binary: size_binary(lines),
        line_count: lines.len(),
        diagnostics: if options.all_errors { errors } else { Vec::new() },
    }
}
