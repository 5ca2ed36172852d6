use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{gen_bvp, BvpError};
use crate::polyring::{multilinear_reduce, Monomial, Polynomial, Scalar, VarId};
use crate::proofcore::{AxiomSet, ProofBuilder, ProofLine, SystemKind};

/// Largest `n` the oracle accepts without `force`.
pub const ORACLE_LIMIT: u32 = 5;

/// `∏_{k<count} (s − k)` as coefficients by ascending power of `s`.
fn falling_product(count: u64) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::one()];
    for k in 0..count {
        let k = BigInt::from(k);
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &k;
        }
        coeffs = next;
    }
    coeffs
}

/// Quotient of `p(s)` by `s + 1`; the remainder must vanish.
fn divide_by_s_plus_one(p: &[BigInt]) -> Vec<BigInt> {
    let d = p.len() - 1;
    let mut q = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for i in (1..=d).rev() {
        carry = &p[i] - carry;
        q[i - 1] = carry.clone();
    }
    assert!((&p[0] - carry).is_zero(), "s + 1 does not divide");
    q
}

/// `Σ cᵢ·sⁱ` with `s` replaced by `sub`, by Horner's rule.
fn compose(coeffs: &[BigInt], sub: &Polynomial) -> Polynomial {
    coeffs
        .iter()
        .rev()
        .fold(Polynomial::zero(), |acc, c| &acc.mul(sub) + &Polynomial::constant(Scalar::from_int(c.clone())))
}

/// A ℤ refutation of BVP_n with final constant `(2ⁿ)!`.
///
/// With `S = G − 1`, the product `P = ∏_{k<2ⁿ}(S − k)` vanishes on `{0,1}ⁿ`,
/// so it is a combination of the Boolean axioms. Writing
/// `P(s) − (2ⁿ)! = C(s)·(s + 1)` gives `(2ⁿ)! = P − C·G`.
pub fn brute_force_refutation(n: u32, force: bool) -> Result<(AxiomSet, Vec<ProofLine>), BvpError> {
    if n == 0 {
        return Err(BvpError::NotBvpInstance("n must be at least 1".into()));
    }
    if n > ORACLE_LIMIT && !force {
        return Err(BvpError::CostGuard { n, limit: ORACLE_LIMIT });
    }
    let instance = gen_bvp(n);
    let axioms = instance.axioms();
    let size = 1u64 << n;
    let s = &instance.g - &Polynomial::one();

    let p_univariate = falling_product(size);
    let mut shifted = p_univariate.clone();
    shifted[0] -= factorial(size);
    let c_univariate = divide_by_s_plus_one(&shifted);
    let p = compose(&p_univariate, &s);
    let c = compose(&c_univariate, &s);

    let xs: BTreeSet<VarId> = (1..=n).map(VarId::x).collect();
    let (reduced, ledger) = multilinear_reduce(&p, &xs);
    assert!(reduced.is_zero(), "P does not vanish on the cube");
    let mut grouped: BTreeMap<(VarId, Monomial), Scalar> = BTreeMap::new();
    for step in ledger {
        let slot = grouped.entry((step.var, step.multiplier)).or_insert_with(Scalar::zero);
        *slot = &*slot + &step.coef;
    }

    let mut b = ProofBuilder::new(axioms.clone(), SystemKind::PcSqrtZ);
    let g_line = b.axiom(0)?;
    let mut cg_terms = Vec::with_capacity(c.len());
    for (m, coef) in c.terms() {
        cg_terms.push((b.monomial_chain(g_line, m)?, coef.clone()));
    }
    let cg = b.weighted_sum(&cg_terms)?.expect("C is nonzero");

    let mut p_terms = Vec::with_capacity(grouped.len());
    for ((v, m), coef) in grouped {
        if coef.is_zero() {
            continue;
        }
        let f_line = b.axiom(v.index as usize)?;
        p_terms.push((b.monomial_chain(f_line, &m)?, coef));
    }
    let p_line = b.weighted_sum(&p_terms)?.expect("P is nonzero");
    b.lin_comb(p_line, cg, 1, -1)?;
    Ok((axioms, b.finish()))
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}
