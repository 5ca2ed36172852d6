use std::collections::BTreeMap;

use serde::Serialize;

use super::XlateError;
use crate::polyring::{boolean_axiom, Monomial, Polynomial, Scalar, VarId};
use crate::proofcore::{
    check_derivation, check_refutation, AxiomSet, LineError, Proof, ProofBuilder, ProofLine, StepRule, SystemKind,
};
use crate::reslin::{build_registry, check_reslin, hat, Disjunction, LinEq, Registry, RlLine, RlRule};

/// Ext-PC√ translation of a Res-Lin proof.
#[derive(Clone, Debug, Serialize)]
pub struct SimulationOutput {
    /// Hat products of the Res-Lin axioms, then `x² − x` for each variable a
    /// Boolean axiom mentions, then one affine definition per registered form.
    pub axioms: AxiomSet,
    pub proof: Vec<ProofLine>,
    /// Res-Lin line `i` is realized by proof line `line_map[i]`, whose
    /// polynomial is the hat product of that line.
    pub line_map: Vec<usize>,
}

impl SimulationOutput {
    pub fn into_proof(self) -> Proof {
        Proof::new(SystemKind::ExtPcSqrtQ, self.axioms, self.proof)
    }

    pub fn sqrt_count(&self) -> usize {
        self.proof.iter().filter(|l| matches!(l.rule, StepRule::Sqrt { .. })).count()
    }
}

struct Simulator<'a> {
    registry: &'a Registry,
    builder: ProofBuilder,
    boolean_axioms: BTreeMap<VarId, usize>,
}

impl Simulator<'_> {
    fn mono(&self, ls: &[LinEq]) -> Monomial {
        ls.iter().fold(Monomial::one(), |m, l| m.mul_var(self.var(l)))
    }

    fn var(&self, l: &LinEq) -> VarId {
        self.registry.var_of(l).expect("every form is registered")
    }

    /// Line holding the definition axiom `y_L − (a·x − a₀)`.
    fn definition(&mut self, l: &LinEq) -> Result<usize, LineError> {
        let index = self.builder.axioms().extension_index(self.var(l)).expect("registry variables are declared");
        self.builder.axiom(index)
    }

    fn step(&mut self, lines: &[RlLine], line_map: &[usize], at: usize) -> Result<usize, LineError> {
        let d = |k: usize| &lines[k].disjunction;
        match &lines[at].rule {
            RlRule::Axiom { index } => self.builder.axiom(*index),
            RlRule::BoolAxiom { var } => {
                let zero = LinEq::var_equals(*var, 0);
                let one = LinEq::var_equals(*var, 1);
                let e0 = self.definition(&zero)?;
                let e1 = self.definition(&one)?;
                let f = self.builder.axiom(self.boolean_axioms[var])?;
                // (y₀ − x)·y₁ + (y₁ − x + 1)·x + (x² − x) = y₀·y₁
                let l1 = self.builder.mul_var(e0, self.var(&one))?;
                let l2 = self.builder.mul_var(e1, *var)?;
                let l3 = self.builder.lin_comb(l1, l2, 1, 1)?;
                self.builder.lin_comb(l3, f, 1, 1)
            }
            RlRule::Resolution { j, k, dj, dk, alpha, beta } => {
                let (l1, l2) = (&d(*j).0[*dj], &d(*k).0[*dk]);
                let l3 = l1.combine(&alpha.to_integer().unwrap(), l2, &beta.to_integer().unwrap());
                let a = self.mono(&d(*j).without(*dj));
                let b = self.mono(&d(*k).without(*dk));
                // (α·y₁ + β·y₂)·a·b
                let u = self.builder.emit_monomial_multiple(line_map[*j], &b, 1)?;
                let v = self.builder.emit_monomial_multiple(line_map[*k], &a, 1)?;
                let w = self.builder.lin_comb(u, v, alpha.clone(), beta.clone())?;
                // E₃ − α·E₁ − β·E₂ = y₃ − α·y₁ − β·y₂, the affine parts cancel
                let (e1, e2, e3) = (self.definition(l1)?, self.definition(l2)?, self.definition(&l3)?);
                let z = self.builder.lin_comb(e3, e1, 1, -alpha.clone())?;
                let z = self.builder.lin_comb(z, e2, 1, -beta.clone())?;
                let abz = self.builder.emit_monomial_multiple(z, &a.mul(&b), 1)?;
                self.builder.lin_comb(w, abz, 1, 1)
            }
            RlRule::Weakening { j, eq } => self.builder.mul_var(line_map[*j], self.var(eq)),
            RlRule::Simplification { j, d: pos } => {
                let target = &d(*j).0[*pos];
                let a = self.mono(&d(*j).without(*pos));
                // y_t·a − (y_t + a₀)·a = −a₀·a
                let e = self.definition(target)?;
                let ea = self.builder.emit_monomial_multiple(e, &a, 1)?;
                let c = Scalar::from_int(-target.constant().clone()).recip().expect("simplified constant is nonzero");
                self.builder.lin_comb(line_map[*j], ea, c.clone(), -c)
            }
            RlRule::Contraction { j, d1, d2 } => {
                let y = self.var(&d(*j).0[*d1]);
                let mut rest = d(*j).0.clone();
                rest.remove(*d1.max(d2));
                rest.remove(*d1.min(d2));
                let a = self.mono(&rest);
                // (y²·a)·a = (y·a)²
                let square = self.builder.emit_monomial_multiple(line_map[*j], &a, 1)?;
                self.builder.sqrt(square, Polynomial::term(a.mul_var(y), 1))
            }
        }
    }
}

/// Translates a Res-Lin proof from `axioms` into an Ext-PC√ proof over ℚ.
/// The output is a refutation exactly when the input is.
pub fn simulate_reslin_b(axioms: &[Disjunction], lines: &[RlLine]) -> Result<SimulationOutput, XlateError> {
    let report = check_reslin(axioms, lines);
    if let Some(e) = report.error {
        return Err(XlateError::InvalidInputProof(e.to_string()));
    }
    let registry = build_registry(axioms, lines);
    let mut base: Vec<Polynomial> = axioms
        .iter()
        .map(|d| hat(d, &registry).map(|h| h.product_equation))
        .collect::<Result<_, _>>()
        .expect("axiom forms are registered");
    let mut boolean_axioms = BTreeMap::new();
    for l in lines {
        if let RlRule::BoolAxiom { var } = l.rule {
            boolean_axioms.entry(var).or_insert_with(|| {
                base.push(boolean_axiom(var));
                base.len() - 1
            });
        }
    }
    let axiom_set = AxiomSet::with_extensions(base, registry.definitions());
    let mut sim = Simulator {
        registry: &registry,
        builder: ProofBuilder::new(axiom_set.clone(), SystemKind::ExtPcSqrtQ),
        boolean_axioms,
    };

    let mut line_map = Vec::with_capacity(lines.len());
    for at in 0..lines.len() {
        let out = sim.step(lines, &line_map, at).map_err(XlateError::InternalCheckFailure)?;
        let expect = Polynomial::term(sim.mono(&lines[at].disjunction.0), 1);
        if sim.builder.poly(out) != &expect {
            return Err(XlateError::InternalCheckFailure(LineError::at(
                out,
                crate::proofcore::ErrorCode::RuleMismatch,
                format!("Res-Lin line {at} realized as {}, expected {expect}", sim.builder.poly(out)),
            )));
        }
        line_map.push(out);
    }
    // A cached axiom line may sit earlier than the end.
    if let Some(&last) = line_map.last() {
        if last + 1 != sim.builder.len() {
            let copy = sim.builder.scale(last, 1).map_err(XlateError::InternalCheckFailure)?;
            *line_map.last_mut().unwrap() = copy;
        }
    }

    let proof = sim.builder.finish();
    let refutes = lines.last().is_some_and(|l| l.disjunction.is_empty());
    if refutes {
        let report = check_refutation(&axiom_set, &proof, SystemKind::ExtPcSqrtQ);
        if let Some(e) = report.error {
            return Err(XlateError::InternalCheckFailure(e));
        }
    } else {
        check_derivation(&axiom_set, &proof, SystemKind::ExtPcSqrtQ).map_err(XlateError::InternalCheckFailure)?;
    }
    Ok(SimulationOutput { axioms: axiom_set, proof, line_map })
}
