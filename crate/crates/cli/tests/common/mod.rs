//! Hand-built certificate corpora shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use sqrtpc::polyring::{Monomial, Polynomial, Scalar, VarId};
use sqrtpc::proofcore::{AxiomSet, ExtensionAxiom, ProofBuilder, ProofLine, SystemKind};
use sqrtpc::reslin::{Disjunction, LinEq, RlProof, RlRule};

pub fn x(i: u32) -> VarId {
    VarId::x(i)
}

pub fn px(i: u32) -> Polynomial {
    Polynomial::var(VarId::x(i))
}

pub fn py(i: u32) -> Polynomial {
    Polynomial::var(VarId::y(i))
}

pub fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

pub fn eq(coeffs: &[(u32, i64)], constant: i64) -> LinEq {
    LinEq::new(coeffs.iter().map(|&(i, c)| (x(i), BigInt::from(c))), constant)
}

// ---------------------------------------------------------------------------
// Res-Lin refutations
// ---------------------------------------------------------------------------

fn position(p: &RlProof, line: usize, target: &LinEq) -> usize {
    p.lines[line].disjunction.0.iter().position(|l| l == target).unwrap_or_else(|| {
        panic!("({target}) not in line {line}: {}", p.lines[line].disjunction)
    })
}

/// Resolves `line_j` on `ej` against `line_k` on `ek`.
fn resolve(p: &mut RlProof, j: usize, ej: &LinEq, k: usize, ek: &LinEq, alpha: i64, beta: i64) -> usize {
    let (dj, dk) = (position(p, j, ej), position(p, k, ek));
    p.push(RlRule::resolution(j, k, dj, dk, alpha, beta)).unwrap()
}

/// Drops the first constant disjunct of `line`.
fn simplify(p: &mut RlProof, line: usize) -> usize {
    let d = p.lines[line].disjunction.0.iter().position(|l| l.is_constant()).expect("a constant disjunct");
    p.push(RlRule::Simplification { j: line, d }).unwrap()
}

/// `{x = 0}, {x = 1}`: resolve, then simplify `0 = 1`.
pub fn reslin_four_line() -> RlProof {
    let mut p = RlProof::new(vec![Disjunction::new(vec![eq(&[(1, 1)], 0)]), Disjunction::new(vec![eq(&[(1, 1)], 1)])]);
    p.push(RlRule::Axiom { index: 0 }).unwrap();
    p.push(RlRule::Axiom { index: 1 }).unwrap();
    p.push(RlRule::resolution(0, 1, 0, 0, 1, -1)).unwrap();
    p.push(RlRule::Simplification { j: 2, d: 0 }).unwrap();
    p
}

/// `{x₁ = 2}` using every rule once or more.
pub fn reslin_every_rule() -> RlProof {
    let two = eq(&[(1, 1)], 2);
    let (zero, one) = (eq(&[(1, 1)], 0), eq(&[(1, 1)], 1));
    let mut p = RlProof::new(vec![Disjunction::new(vec![two.clone()])]);
    let a = p.push(RlRule::Axiom { index: 0 }).unwrap();
    let w = p.push(RlRule::Weakening { j: a, eq: two.clone() }).unwrap();
    let c = p.push(RlRule::Contraction { j: w, d1: 0, d2: 1 }).unwrap();
    let b = p.push(RlRule::BoolAxiom { var: x(1) }).unwrap();
    let r = resolve(&mut p, c, &two, b, &zero, 1, -1);
    let s = simplify(&mut p, r);
    let r = resolve(&mut p, c, &two, s, &one, 1, -1);
    simplify(&mut p, r);
    p
}

/// `{x₁ + x₂ = 3}` over Boolean values.
pub fn reslin_sum_three() -> RlProof {
    let k = eq(&[(1, 1), (2, 1)], 3);
    let (x1_0, x1_1) = (eq(&[(1, 1)], 0), eq(&[(1, 1)], 1));
    let (x2_0, x2_1) = (eq(&[(2, 1)], 0), eq(&[(2, 1)], 1));
    let mut p = RlProof::new(vec![Disjunction::new(vec![k.clone()])]);
    let a = p.push(RlRule::Axiom { index: 0 }).unwrap();
    let b1 = p.push(RlRule::BoolAxiom { var: x(1) }).unwrap();
    let b2 = p.push(RlRule::BoolAxiom { var: x(2) }).unwrap();
    // x₂ ∈ {2, 3}, then x₂ = 1 twice over
    let l = resolve(&mut p, a, &k, b1, &x1_1, 1, -1);
    let l = resolve(&mut p, l, &x1_0, a, &k, -1, 1);
    let l = resolve(&mut p, l, &eq(&[(2, 1)], 2), b2, &x2_0, 1, -1);
    let l = simplify(&mut p, l);
    let l = resolve(&mut p, l, &eq(&[(2, 1)], 3), b2, &x2_0, 1, -1);
    let l = simplify(&mut p, l);
    let x2_is_1 = p.push(RlRule::Contraction { j: l, d1: 0, d2: 1 }).unwrap();
    // x₁ = 2 forces x₁ = 1, contradiction
    let x1_is_2 = resolve(&mut p, a, &k, x2_is_1, &x2_1, 1, -1);
    let l = resolve(&mut p, x1_is_2, &eq(&[(1, 1)], 2), b1, &x1_0, 1, -1);
    let x1_is_1 = simplify(&mut p, l);
    let l = resolve(&mut p, x1_is_2, &eq(&[(1, 1)], 2), x1_is_1, &x1_1, 1, -1);
    simplify(&mut p, l);
    p
}

/// `{2x₁ = 1}`.
pub fn reslin_odd() -> RlProof {
    let k = eq(&[(1, 2)], 1);
    let mut p = RlProof::new(vec![Disjunction::new(vec![k.clone()])]);
    let a = p.push(RlRule::Axiom { index: 0 }).unwrap();
    let b = p.push(RlRule::BoolAxiom { var: x(1) }).unwrap();
    let l = resolve(&mut p, a, &k, b, &eq(&[(1, 1)], 0), 1, -2);
    let one = simplify(&mut p, l);
    let l = resolve(&mut p, a, &k, one, &eq(&[(1, 1)], 1), 1, -2);
    simplify(&mut p, l);
    p
}

/// `{x₁ = 1 ∨ x₂ = 1}, {x₁ = 0}, {x₂ = 0}`.
pub fn reslin_unit_chain() -> RlProof {
    let (x1_1, x2_1) = (eq(&[(1, 1)], 1), eq(&[(2, 1)], 1));
    let (x1_0, x2_0) = (eq(&[(1, 1)], 0), eq(&[(2, 1)], 0));
    let mut p = RlProof::new(vec![
        Disjunction::new(vec![x1_1.clone(), x2_1.clone()]),
        Disjunction::new(vec![x1_0.clone()]),
        Disjunction::new(vec![x2_0.clone()]),
    ]);
    let a0 = p.push(RlRule::Axiom { index: 0 }).unwrap();
    let a1 = p.push(RlRule::Axiom { index: 1 }).unwrap();
    let l = resolve(&mut p, a0, &x1_1, a1, &x1_0, 1, -1);
    let l = simplify(&mut p, l);
    let a2 = p.push(RlRule::Axiom { index: 2 }).unwrap();
    let l = resolve(&mut p, l, &x2_1, a2, &x2_0, 1, -1);
    simplify(&mut p, l);
    p
}

/// `{x₁ = 1 ∨ x₁ = 1}, {x₁ = 0}`, contracting before resolving.
pub fn reslin_duplicate() -> RlProof {
    let (one, zero) = (eq(&[(1, 1)], 1), eq(&[(1, 1)], 0));
    let mut p = RlProof::new(vec![
        Disjunction::new(vec![one.clone(), one.clone()]),
        Disjunction::new(vec![zero.clone()]),
    ]);
    let a = p.push(RlRule::Axiom { index: 0 }).unwrap();
    let c = p.push(RlRule::Contraction { j: a, d1: 0, d2: 1 }).unwrap();
    let b = p.push(RlRule::Axiom { index: 1 }).unwrap();
    let l = resolve(&mut p, c, &one, b, &zero, 3, -3);
    simplify(&mut p, l);
    p
}

pub fn reslin_corpus() -> Vec<(&'static str, RlProof)> {
    vec![
        ("four-line", reslin_four_line()),
        ("every-rule", reslin_every_rule()),
        ("sum-three", reslin_sum_three()),
        ("odd", reslin_odd()),
        ("unit-chain", reslin_unit_chain()),
        ("duplicate", reslin_duplicate()),
    ]
}

// ---------------------------------------------------------------------------
// Ext-PC√ refutations over ℚ
// ---------------------------------------------------------------------------

/// Derives `m − m(v)` from the lines `z − v_z`, peeling one variable at a
/// time: `z·m′ − v_z·m′(v) = m′·(z − v_z) + v_z·(m′ − m′(v))`.
struct Evaluator {
    values: BTreeMap<VarId, Scalar>,
    anchors: BTreeMap<VarId, usize>,
    memo: BTreeMap<Monomial, usize>,
}

impl Evaluator {
    fn monomial(&mut self, b: &mut ProofBuilder, m: &Monomial) -> usize {
        if let Some(&line) = self.memo.get(m) {
            return line;
        }
        let vars = m.expanded();
        let z = vars[0];
        let rest = vars[1..].iter().fold(Monomial::one(), |acc, v| acc.mul_var(*v));
        let head = b.monomial_chain(self.anchors[&z], &rest).unwrap();
        let line = if rest.is_one() || self.values[&z].is_zero() {
            head
        } else {
            let tail = self.monomial(b, &rest);
            b.lin_comb(head, tail, 1, self.values[&z].clone()).unwrap()
        };
        self.memo.insert(m.clone(), line);
        line
    }

    /// Line `p − p(v)`, or `None` when `p` is constant.
    fn polynomial(&mut self, b: &mut ProofBuilder, p: &Polynomial) -> Option<usize> {
        let terms: Vec<(usize, Scalar)> = p
            .terms()
            .filter(|(m, _)| !m.is_one())
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect::<Vec<_>>()
            .into_iter()
            .map(|(m, c)| (self.monomial(b, &m), c))
            .collect();
        b.weighted_sum(&terms).unwrap()
    }
}

/// Refutes `{a·x₁ − b, x₁² − x₁}` (with `b/a ∉ {0, 1}`) over ℚ, first pinning
/// every extension variable to its value, then taking one square root.
pub fn rational_refutation(a: i64, b_: i64, defs: &[Polynomial]) -> (AxiomSet, Vec<ProofLine>) {
    let base = vec![&px(1).scale(&Scalar::from_int(a)) - &Polynomial::constant(b_), &px(1).pow(2) - &px(1)];
    let extensions: Vec<ExtensionAxiom> =
        defs.iter().enumerate().map(|(i, d)| ExtensionAxiom::new(VarId::y(i as u32 + 1), d.clone())).collect();
    let axioms = AxiomSet::with_extensions(base, extensions);
    let mut b = ProofBuilder::new(axioms.clone(), SystemKind::ExtPcSqrtQ);

    let vx = Scalar::new(b_, a).unwrap();
    let mut ev = Evaluator { values: BTreeMap::new(), anchors: BTreeMap::new(), memo: BTreeMap::new() };
    let g = b.axiom(0).unwrap();
    let lx = b.scale(g, Scalar::new(1, a).unwrap()).unwrap();
    ev.values.insert(x(1), vx.clone());
    ev.anchors.insert(x(1), lx);

    let mut last = None;
    for (i, d) in defs.iter().enumerate() {
        let y = VarId::y(i as u32 + 1);
        let value = d.evaluate(&ev.values).unwrap();
        let def = b.axiom(2 + i).unwrap();
        let line = match ev.polynomial(&mut b, d) {
            Some(l) => b.lin_comb(def, l, 1, 1).unwrap(),
            None => def,
        };
        ev.values.insert(y, value.clone());
        ev.anchors.insert(y, line);
        last = Some((y, line, value));
    }

    if let Some((y, line, value)) = last {
        // (y − v)² = y·(y − v) − v·(y − v), whose root may carry either sign
        let yl = b.mul_var(line, y).unwrap();
        let square = b.lin_comb(yl, line, 1, -value.clone()).unwrap();
        let root = &Polynomial::constant(value) - &Polynomial::var(y);
        b.sqrt(square, root).unwrap();
    }

    // (x² − x) − ((x² − v²) − (x − v)) = v² − v
    let sq = ev.monomial(&mut b, &Monomial::from_pairs([(x(1), 2)]));
    let diff = b.lin_comb(sq, lx, 1, -1).unwrap();
    let f = b.axiom(1).unwrap();
    b.lin_comb(f, diff, 1, -1).unwrap();
    (axioms, b.finish())
}

pub fn rational_corpus() -> Vec<(&'static str, AxiomSet, Vec<ProofLine>)> {
    let c = |s: &str| Polynomial::constant(q(s));
    let specs: Vec<(&'static str, i64, i64, Vec<Polynomial>)> = vec![
        ("half", 2, 1, vec![px(1).scale(&q("1/2"))]),
        ("third-shifted", 3, 1, vec![&px(1).scale(&q("1/3")) + &c("1/2")]),
        ("square-over-five", 2, 1, vec![px(1).scale(&q("1/2")), py(1).pow(2).scale(&q("1/5"))]),
        (
            "mixed-product",
            3,
            2,
            vec![&px(1).scale(&q("2/7")) - &c("1/3"), &(&py(1) * &px(1)).scale(&q("1/2")) + &py(1).scale(&q("3/4"))],
        ),
        (
            "three-deep",
            5,
            2,
            vec![
                px(1).pow(2).scale(&q("1/4")),
                &py(1).scale(&q("1/3")) - &px(1).scale(&q("1/6")),
                &py(2).pow(2) + &py(1).scale(&q("1/2")),
            ],
        ),
        (
            "cubic",
            7,
            3,
            vec![
                &px(1).scale(&q("1/2")) + &c("1/3"),
                (&py(1).pow(2) * &px(1)).scale(&q("1/5")),
                &py(2).scale(&q("1/11")) - &py(1),
            ],
        ),
    ];
    specs
        .into_iter()
        .map(|(name, a, b, defs)| {
            let (axioms, lines) = rational_refutation(a, b, &defs);
            (name, axioms, lines)
        })
        .collect()
}
