//! The Binary Value Principle `1 + x₁ + 2x₂ + … + 2ⁿ⁻¹xₙ = 0` over Boolean `x`.
//!
//! Any ℤ refutation of BVP_n ends in a constant divisible by every prime
//! `p ≤ 2ⁿ`: assign `x` the bits of `p − 1`, so `G = p`, and every line stays
//! divisible by `p`. [`trace_mod_check`] replays that argument on a concrete
//! proof and [`audit_divisibility`] checks its conclusion on the final
//! constant.

mod oracle;
mod primes;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::json;
use crate::polyring::{boolean_axiom, ceil_log2, Polynomial, Scalar, VarId};
use crate::proofcore::{AxiomSet, LineError, ProofLine};

pub use oracle::{brute_force_refutation, ORACLE_LIMIT};
pub use primes::{primes_below, primorial_bits, SIEVE_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BvpError {
    #[error("n = {n} exceeds the cost guard of {limit}; pass force to override")]
    CostGuard { n: u32, limit: u32 },
    #[error("sieve bound {bound} exceeds {limit}")]
    SieveGuard { bound: u64, limit: u64 },
    #[error("the constant is zero")]
    ZeroConstant,
    #[error("k + 1 = {0} is not prime")]
    KPlusOneNotPrime(u64),
    #[error("k = {k} is outside 0 ≤ k < 2^{n}")]
    KOutOfRange { k: u64, n: u32 },
    #[error("extension variable {0} takes a non-integer value")]
    NonIntegralExtensionValue(VarId),
    #[error("line {0} takes a non-integer value")]
    NonIntegralLineValue(usize),
    #[error("not a BVP instance: {0}")]
    NotBvpInstance(String),
    #[error(transparent)]
    Proof(#[from] LineError),
}

/// `G = 1 + Σ 2^{i−1}·x_i` together with the Boolean axioms `x_i² − x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BvpInstance {
    pub n: u32,
    #[serde(rename = "G")]
    pub g: Polynomial,
    pub booleans: Vec<Polynomial>,
}

impl BvpInstance {
    /// Base axioms `[G, F₁, …, Fₙ]`.
    pub fn axioms(&self) -> AxiomSet {
        let mut base = vec![self.g.clone()];
        base.extend(self.booleans.iter().cloned());
        AxiomSet::new(base)
    }
}

pub fn gen_bvp(n: u32) -> BvpInstance {
    assert!(n >= 1, "BVP_n needs n ≥ 1");
    let mut g = Polynomial::one();
    for i in 1..=n {
        let weight = Scalar::from_int(BigInt::from(1) << (i - 1));
        g = &g + &Polynomial::var(VarId::x(i)).scale(&weight);
    }
    let booleans = (1..=n).map(|i| boolean_axiom(VarId::x(i))).collect();
    BvpInstance { n, g, booleans }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisibilityReport {
    pub n: u32,
    #[serde(rename = "M", with = "json::decimal")]
    pub m: BigInt,
    /// Every prime `p ≤ 2ⁿ`.
    pub primes_checked: Vec<u64>,
    pub missing: Vec<u64>,
    /// `⌈log₂|M|⌉`.
    pub bit_length: u64,
    pub passed: bool,
}

/// Checks that every prime `p ≤ 2ⁿ` divides `m`.
pub fn audit_divisibility(m: &BigInt, n: u32) -> Result<DivisibilityReport, BvpError> {
    if m.is_zero() {
        return Err(BvpError::ZeroConstant);
    }
    let bound = 1u64.checked_shl(n).filter(|b| *b < SIEVE_LIMIT).ok_or(BvpError::SieveGuard {
        bound: u64::MAX,
        limit: SIEVE_LIMIT,
    })?;
    let primes_checked = primes_below(bound + 1)?;
    let missing: Vec<u64> = primes_checked.iter().copied().filter(|&p| !(m % BigInt::from(p)).is_zero()).collect();
    Ok(DivisibilityReport {
        n,
        m: m.clone(),
        passed: missing.is_empty(),
        primes_checked,
        missing,
        bit_length: ceil_log2(m.magnitude()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceReport {
    pub n: u32,
    pub k: u64,
    /// `b_i`, the bits of `k`, least significant first.
    pub assignment: Vec<u8>,
    /// `c_i = Q_i(b, c₁, …, c_{i−1})`.
    #[serde(with = "json::decimal_vec")]
    pub extension_values: Vec<BigInt>,
    /// Value of each line at `(b, c)` modulo `k + 1`.
    #[serde(with = "json::decimal_vec")]
    pub residues: Vec<BigInt>,
    pub first_nonzero: Option<usize>,
    pub passed: bool,
}

/// Evaluates every line at `x = bits(k)` and `y = c` and reduces modulo
/// `k + 1`. For a ℤ refutation of BVP_n every residue is zero.
pub fn trace_mod_check(axioms: &AxiomSet, lines: &[ProofLine], n: u32, k: u64) -> Result<TraceReport, BvpError> {
    if n >= 63 || k >= (1u64 << n) {
        return Err(BvpError::KOutOfRange { k, n });
    }
    let modulus = k + 1;
    if !primes::is_prime(modulus) {
        return Err(BvpError::KPlusOneNotPrime(modulus));
    }
    let expected = gen_bvp(n).axioms();
    if axioms.base != expected.base {
        return Err(BvpError::NotBvpInstance(format!("base axioms are not those of BVP_{n}")));
    }

    let assignment: Vec<u8> = (0..n).map(|i| ((k >> i) & 1) as u8).collect();
    let mut point: BTreeMap<VarId, Scalar> =
        assignment.iter().enumerate().map(|(i, &b)| (VarId::x(i as u32 + 1), Scalar::from_int(b))).collect();
    let mut extension_values = Vec::with_capacity(axioms.extensions.len());
    for e in &axioms.extensions {
        let value = e.definition.evaluate(&point).map_err(|_| BvpError::NonIntegralExtensionValue(e.var))?;
        let int = value.to_integer().ok_or(BvpError::NonIntegralExtensionValue(e.var))?;
        point.insert(e.var, value);
        extension_values.push(int);
    }

    let modulus_big = BigInt::from(modulus);
    let mut residues = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        let value = line.poly.evaluate(&point).map_err(|_| BvpError::NonIntegralLineValue(i))?;
        let value = value.to_integer().ok_or(BvpError::NonIntegralLineValue(i))?;
        residues.push(value.mod_floor(&modulus_big));
    }
    let first_nonzero = residues.iter().position(|r| !r.is_zero());
    Ok(TraceReport {
        n,
        k,
        assignment,
        extension_values,
        residues,
        first_nonzero,
        passed: first_nonzero.is_none(),
    })
}

/// `⌈log₂((2ⁿ)!)⌉`.
pub fn factorial_bits(n: u32) -> u64 {
    ceil_log2(oracle::factorial(1u64 << n).magnitude())
}

/// `(2ⁿ)!`.
pub fn bvp_factorial(n: u32) -> BigInt {
    oracle::factorial(1u64 << n)
}
