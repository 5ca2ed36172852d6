use std::collections::{BTreeMap, BTreeSet};

use super::{Monomial, Polynomial, Scalar, VarId};

/// One rewrite `coef·mono·(v² − v)` subtracted during multilinear reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub multiplier: Monomial,
    pub coef: Scalar,
    pub var: VarId,
}

impl ReductionStep {
    /// `coef · multiplier · (var² − var)`.
    pub fn polynomial(&self) -> Polynomial {
        boolean_axiom(self.var).mul_monomial(&self.multiplier).scale(&self.coef)
    }
}

/// `v² − v`.
pub fn boolean_axiom(v: VarId) -> Polynomial {
    Polynomial::from_terms([
        (Monomial::from_pairs([(v, 2)]), Scalar::one()),
        (Monomial::var(v), -Scalar::one()),
    ])
}

/// Rewrites `p` modulo the ideal of `v² − v` for every `v` in `boolean_vars`.
///
/// Returns the multilinear representative together with a ledger such that
/// `p = reduced + Σ step.polynomial()`. Monomials are processed largest first;
/// each step lowers one exponent by one, so every rewritten monomial is
/// strictly smaller than the one it came from.
pub fn multilinear_reduce(p: &Polynomial, boolean_vars: &BTreeSet<VarId>) -> (Polynomial, Vec<ReductionStep>) {
    let excess_var = |m: &Monomial| m.factors().iter().find(|(v, e)| *e >= 2 && boolean_vars.contains(v)).map(|&(v, _)| v);

    let mut pending: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    let mut done = Vec::new();
    for (m, c) in p.terms() {
        if excess_var(m).is_some() {
            pending.insert(m.clone(), c.clone());
        } else {
            done.push((m.clone(), c.clone()));
        }
    }

    let mut ledger = Vec::new();
    while let Some((m, c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        let v = excess_var(&m).expect("pending monomials are not multilinear");
        let multiplier = m.div_var_pow(v, 2).expect("exponent is at least two");
        let lowered = multiplier.mul_var(v);
        ledger.push(ReductionStep { multiplier, coef: c.clone(), var: v });
        if excess_var(&lowered).is_some() {
            let slot = pending.entry(lowered).or_insert_with(Scalar::zero);
            *slot = &*slot + &c;
        } else {
            done.push((lowered, c));
        }
    }
    (Polynomial::from_terms(done), ledger)
}
