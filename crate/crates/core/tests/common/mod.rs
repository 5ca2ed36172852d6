//! Proptest strategies shared by the property suites.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use sqrtpc::polyring::{Monomial, Polynomial, Scalar, VarId};
use sqrtpc::proofcore::{AxiomSet, ExtensionAxiom, ProofBuilder, ProofLine, SystemKind};
use sqrtpc::reslin::{Disjunction, LinEq, RlProof, RlRule};

pub const NVARS: u32 = 3;

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

pub fn int_scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9).prop_map(Scalar::from_int)
}

pub fn monomial(vars: Vec<VarId>, max_exp: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0..=max_exp, vars.len())
        .prop_map(move |exps| Monomial::from_pairs(vars.iter().copied().zip(exps)))
}

fn xs() -> Vec<VarId> {
    (1..=NVARS).map(VarId::x).collect()
}

/// Polynomials over `x₁..x₃` with rational coefficients.
pub fn poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((monomial(xs(), 2), scalar()), 0..5).prop_map(Polynomial::from_terms)
}

pub fn int_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((monomial(xs(), 2), int_scalar()), 0..4).prop_map(Polynomial::from_terms)
}

/// Every point of `{0,1}ⁿ`.
pub fn cube(n: u32) -> Vec<BTreeMap<VarId, BigInt>> {
    (0..1u32 << n).map(|bits| (0..n).map(|i| (VarId::x(i + 1), BigInt::from((bits >> i) & 1))).collect()).collect()
}

pub fn as_scalars(point: &BTreeMap<VarId, BigInt>) -> BTreeMap<VarId, Scalar> {
    point.iter().map(|(v, c)| (*v, Scalar::from_int(c.clone()))).collect()
}

// ---------------------------------------------------------------------------
// Random PC derivations, driven by a script of small integers so that
// proptest can shrink them.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum Op {
    Axiom(usize),
    LinComb(usize, usize, Scalar, Scalar),
    MulVar(usize, VarId),
    /// Square a line through monomial multiples, then take the root, with the
    /// given sign.
    Square(usize, bool),
}

pub fn ops(integral: bool, with_y: u32) -> impl Strategy<Value = Vec<Op>> {
    let s = move || if integral { int_scalar().boxed() } else { scalar().boxed() };
    let var = (0..NVARS + with_y).prop_map(|i| if i < NVARS { VarId::x(i + 1) } else { VarId::y(i - NVARS + 1) });
    let op = prop_oneof![
        1 => any::<usize>().prop_map(Op::Axiom),
        2 => (any::<usize>(), any::<usize>(), s(), s()).prop_map(|(j, k, a, b)| Op::LinComb(j, k, a, b)),
        1 => (any::<usize>(), var).prop_map(|(k, v)| Op::MulVar(k, v)),
        1 => (any::<usize>(), any::<bool>()).prop_map(|(k, neg)| Op::Square(k, neg)),
    ];
    proptest::collection::vec(op, 1..12)
}

/// Replays `script` on top of `axioms`; line indices wrap around. Large
/// lines are skipped rather than squared or multiplied further.
pub fn derive(axioms: &AxiomSet, kind: SystemKind, script: &[Op]) -> Vec<ProofLine> {
    let mut b = ProofBuilder::new(axioms.clone(), kind);
    b.axiom_fresh(0).unwrap();
    for op in script {
        let len = b.len();
        match op {
            Op::Axiom(i) => {
                b.axiom_fresh(i % axioms.len()).unwrap();
            }
            Op::LinComb(j, k, a, c) => {
                b.lin_comb(j % len, k % len, a.clone(), c.clone()).unwrap();
            }
            Op::MulVar(k, v) => {
                if b.poly(k % len).degree() < 5 {
                    b.mul_var(k % len, *v).unwrap();
                }
            }
            Op::Square(k, neg) => {
                let r = b.poly(k % len).clone();
                if r.is_zero() || r.len() > 3 || r.degree() > 2 {
                    continue;
                }
                let parts: Vec<(Monomial, Scalar)> = r.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
                let mut terms = Vec::new();
                for (m, c) in parts {
                    terms.push((b.monomial_chain(k % len, &m).unwrap(), c));
                }
                let square = b.weighted_sum(&terms).unwrap().unwrap();
                b.sqrt(square, if *neg { r.neg() } else { r }).unwrap();
            }
        }
    }
    b.finish()
}

/// Rational extension definitions `y_i = Q_i(x, y_<i)`, each with at most
/// two terms.
pub fn definitions(count: usize) -> impl Strategy<Value = Vec<ExtensionAxiom>> {
    proptest::collection::vec(
        proptest::collection::vec((0..NVARS + count as u32, 0u32..=2, scalar()), 1..3),
        count,
    )
    .prop_map(|defs| {
        defs.into_iter()
            .enumerate()
            .map(|(i, terms)| {
                let poly = Polynomial::from_terms(terms.into_iter().map(|(v, e, c)| {
                    // only x variables and earlier y variables
                    let var = if v < NVARS || v - NVARS >= i as u32 { VarId::x(v % NVARS + 1) } else { VarId::y(v - NVARS + 1) };
                    (Monomial::from_pairs([(var, e)]), c)
                }));
                ExtensionAxiom::new(VarId::y(i as u32 + 1), poly)
            })
            .collect()
    })
}

// ---------------------------------------------------------------------------
// Random Res-Lin derivations
// ---------------------------------------------------------------------------

pub fn lin_eq() -> impl Strategy<Value = LinEq> {
    (proptest::collection::vec(-2i64..=2, NVARS as usize), -2i64..=2).prop_map(|(cs, c)| {
        LinEq::new(cs.into_iter().enumerate().map(|(i, a)| (VarId::x(i as u32 + 1), BigInt::from(a))), c)
    })
}

pub fn disjunction() -> impl Strategy<Value = Disjunction> {
    (proptest::collection::vec(lin_eq(), 1..3), any::<bool>()).prop_map(|(mut eqs, dup)| {
        if dup {
            eqs.push(eqs[0].clone());
        }
        Disjunction::new(eqs)
    })
}

#[derive(Clone, Debug)]
pub struct RlOp {
    pub kind: u8,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub alpha: i64,
    pub beta: i64,
    pub eq: LinEq,
}

fn rl_op() -> impl Strategy<Value = RlOp> {
    (0u8..6, any::<usize>(), any::<usize>(), any::<usize>(), any::<usize>(), -2i64..=2, -2i64..=2, lin_eq())
        .prop_map(|(kind, a, b, c, d, alpha, beta, eq)| RlOp { kind, a, b, c, d, alpha, beta, eq })
}

/// A valid Res-Lin derivation: random rule applications, dropping the ones
/// the checker would reject.
pub fn reslin_derivation() -> impl Strategy<Value = RlProof> {
    (proptest::collection::vec(disjunction(), 1..4), proptest::collection::vec(rl_op(), 1..14)).prop_map(
        |(axioms, script)| {
            let mut p = RlProof::new(axioms);
            p.push(RlRule::Axiom { index: 0 }).unwrap();
            for op in script {
                let len = p.lines.len();
                let (j, k) = (op.a % len, op.b % len);
                let width = |i: usize| p.lines[i].disjunction.len().max(1);
                let rule = match op.kind {
                    0 => RlRule::Axiom { index: op.a % p.axioms.len() },
                    1 => RlRule::BoolAxiom { var: VarId::x(op.a as u32 % NVARS + 1) },
                    2 => RlRule::resolution(j, k, op.c % width(j), op.d % width(k), op.alpha, op.beta),
                    3 => RlRule::Weakening { j, eq: op.eq },
                    4 => RlRule::Simplification { j, d: op.c % width(j) },
                    _ => RlRule::Contraction { j, d1: op.c % width(j), d2: op.d % width(j) },
                };
                // ignore rejected steps and keep disjunctions small
                if p.push(rule).is_ok() && p.lines.last().unwrap().disjunction.len() > 5 {
                    p.lines.pop();
                }
            }
            p
        },
    )
}
