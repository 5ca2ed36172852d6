use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{AxiomSet, CheckReport, ErrorCode, LineError, ProofLine, StepRule, SystemKind};
use crate::polyring::{Polynomial, VarId};

/// Below this many lines the checker stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 256;

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    /// Keep going after the first problem and list every one found. The
    /// verdict and the reported first error are unaffected.
    pub all_errors: bool,
}

/// Size (sum of literal polynomial sizes), degree and length of a proof.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Measure {
    pub total_size: u64,
    pub degree: i64,
    pub line_count: usize,
}

pub fn measure(lines: &[ProofLine]) -> Measure {
    Measure {
        total_size: lines.iter().map(|l| l.poly.size_paper()).sum(),
        degree: lines.iter().map(|l| l.poly.degree()).max().unwrap_or(-1),
        line_count: lines.len(),
    }
}

/// Checks extension ordering, affinity (ΣΠΣ-PC) and integrality (ℤ systems).
pub fn validate_axiom_set(axioms: &AxiomSet, kind: SystemKind) -> Result<(), LineError> {
    use ErrorCode::*;
    if !axioms.extensions.is_empty() && !kind.allows_extensions() {
        return Err(LineError::global(
            ExtensionsForbidden,
            format!("{kind} does not admit extension axioms"),
        ));
    }
    let all_declared: BTreeSet<VarId> = axioms.extensions.iter().map(|e| e.var).collect();
    for (i, p) in axioms.base.iter().enumerate() {
        if let Some(v) = p.variables().into_iter().find(|v| v.is_y() && !all_declared.contains(v)) {
            return Err(LineError::global(
                ExtensionOrderViolation,
                format!("base axiom {i} mentions undeclared extension variable {v}"),
            ));
        }
    }
    let mut declared: BTreeSet<VarId> = BTreeSet::new();
    let mut last: Option<VarId> = None;
    for (i, ext) in axioms.extensions.iter().enumerate() {
        if !ext.var.is_y() {
            return Err(LineError::global(
                ExtensionOrderViolation,
                format!("extension {i} defines {} which is not an extension variable", ext.var),
            ));
        }
        if last.is_some_and(|l| l >= ext.var) {
            return Err(LineError::global(
                ExtensionOrderViolation,
                format!("extension {i} defines {} out of order", ext.var),
            ));
        }
        if let Some(v) = ext.definition.variables().into_iter().find(|v| v.is_y() && !declared.contains(v)) {
            return Err(LineError::global(
                ExtensionOrderViolation,
                format!("definition of {} refers to {v}, which is not defined before it", ext.var),
            ));
        }
        if kind.requires_affine_extensions() {
            let d = &ext.definition;
            if d.degree() > 1 || d.variables().iter().any(|v| v.is_y()) {
                return Err(LineError::global(
                    ExtensionNotAffine,
                    format!("definition of {} is not affine in the x variables: {d}", ext.var),
                ));
            }
        }
        declared.insert(ext.var);
        last = Some(ext.var);
    }
    if kind.is_integral() {
        for (i, p) in axioms.polynomials().iter().enumerate() {
            if !p.is_integral() {
                return Err(LineError::global(
                    NonIntegerCoefficient,
                    format!("axiom {i} has a non-integer coefficient: {p}"),
                ));
            }
        }
    }
    Ok(())
}

struct Context<'a> {
    kind: SystemKind,
    axiom_polys: Vec<Polynomial>,
    declared_y: BTreeSet<VarId>,
    lines: &'a [ProofLine],
}

impl<'a> Context<'a> {
    fn new(axioms: &AxiomSet, kind: SystemKind, lines: &'a [ProofLine]) -> Self {
        Context {
            kind,
            axiom_polys: axioms.polynomials(),
            declared_y: axioms.extensions.iter().map(|e| e.var).collect(),
            lines,
        }
    }

    fn premise(&self, at: usize, k: usize) -> Result<&Polynomial, LineError> {
        if k >= at {
            return Err(LineError::at(
                at,
                ErrorCode::BadIndex,
                format!("line {at} refers to line {k}, which does not precede it"),
            ));
        }
        Ok(&self.lines[k].poly)
    }

    /// Verdict for line `at`, which may only look at `lines[..at]`.
    fn check_line(&self, at: usize) -> Result<(), LineError> {
        self.check_candidate(at, &self.lines[at])
    }

    /// Verdict for `line` placed at position `at`, given `lines[..at]`.
    fn check_candidate(&self, at: usize, line: &ProofLine) -> Result<(), LineError> {
        use ErrorCode::*;
        let coefficient_check = || {
            if self.kind.is_integral() && !line.poly.is_integral() {
                Err(LineError::at(at, NonIntegerCoefficient, format!("non-integer coefficient in {}", line.poly)))
            } else {
                Ok(())
            }
        };
        match &line.rule {
            StepRule::Axiom { index } => {
                let Some(ax) = self.axiom_polys.get(*index) else {
                    return Err(LineError::at(
                        at,
                        BadIndex,
                        format!("axiom index {index} out of range ({} axioms)", self.axiom_polys.len()),
                    ));
                };
                coefficient_check()?;
                if &line.poly != ax {
                    return Err(LineError::at(
                        at,
                        AxiomNotInSet,
                        format!("claimed {} but axiom {index} is {ax}", line.poly),
                    ));
                }
            }
            StepRule::LinComb { j, k, alpha, beta } => {
                let rj = self.premise(at, *j)?;
                let rk = self.premise(at, *k)?;
                if self.kind.is_integral() && !(alpha.is_integer() && beta.is_integer()) {
                    return Err(LineError::at(
                        at,
                        NonIntegerScalar,
                        format!("scalars {alpha} and {beta} must be integers in {}", self.kind),
                    ));
                }
                coefficient_check()?;
                let expect = rj.lin_comb(alpha, rk, beta);
                if line.poly != expect {
                    return Err(LineError::at(
                        at,
                        RuleMismatch,
                        format!("({alpha})·R{j} + ({beta})·R{k} is {expect}, not {}", line.poly),
                    ));
                }
            }
            StepRule::MulVar { k, var } => {
                let rk = self.premise(at, *k)?;
                if var.is_y() && !self.declared_y.contains(var) {
                    return Err(LineError::at(at, RuleMismatch, format!("{var} is not a declared extension variable")));
                }
                coefficient_check()?;
                let expect = rk.mul_var(*var);
                if line.poly != expect {
                    return Err(LineError::at(
                        at,
                        RuleMismatch,
                        format!("{var}·R{k} is {expect}, not {}", line.poly),
                    ));
                }
            }
            StepRule::Sqrt { k } => {
                if !self.kind.allows_sqrt() {
                    return Err(LineError::at(at, SqrtForbidden, format!("{} has no square-root rule", self.kind)));
                }
                let rk = self.premise(at, *k)?;
                coefficient_check()?;
                let square = line.poly.mul(&line.poly);
                if &square != rk {
                    return Err(LineError::at(
                        at,
                        SqrtMismatch,
                        format!("({})² is {square}, not R{k} = {rk}", line.poly),
                    ));
                }
            }
        }
        Ok(())
    }

    fn line_errors(&self, stop_at_first: bool) -> Vec<LineError> {
        let n = self.lines.len();
        if n < PARALLEL_THRESHOLD {
            let mut out = Vec::new();
            for i in 0..n {
                if let Err(e) = self.check_line(i) {
                    out.push(e);
                    if stop_at_first {
                        break;
                    }
                }
            }
            return out;
        }
        if stop_at_first {
            // Lines are independent given the claimed polynomials of earlier
            // lines, so the leftmost failure equals the sequential answer.
            (0..n)
                .into_par_iter()
                .filter_map(|i| self.check_line(i).err())
                .min_by_key(|e| e.line)
                .into_iter()
                .collect()
        } else {
            let mut all: Vec<LineError> = (0..n).into_par_iter().filter_map(|i| self.check_line(i).err()).collect();
            all.sort_by_key(|e| e.line);
            all
        }
    }
}

/// Verdict `check_refutation` would give for `line` appended after `prefix`,
/// ignoring the final-line rule.
pub fn check_step(prefix: &[ProofLine], line: &ProofLine, axioms: &AxiomSet, kind: SystemKind) -> Result<(), LineError> {
    Context::new(axioms, kind, prefix).check_candidate(prefix.len(), line)
}

/// Checks that every line is justified, without any requirement on the last
/// line.
pub fn check_derivation(axioms: &AxiomSet, lines: &[ProofLine], kind: SystemKind) -> Result<(), LineError> {
    validate_axiom_set(axioms, kind)?;
    match Context::new(axioms, kind, lines).line_errors(true).into_iter().next() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

pub fn check_refutation(axioms: &AxiomSet, lines: &[ProofLine], kind: SystemKind) -> CheckReport {
    check_refutation_with(axioms, lines, kind, CheckOptions::default())
}

pub fn check_refutation_with(
    axioms: &AxiomSet,
    lines: &[ProofLine],
    kind: SystemKind,
    options: CheckOptions,
) -> CheckReport {
    let m = measure(lines);
    let mut errors = Vec::new();

    if lines.is_empty() {
        errors.push(LineError::global(ErrorCode::EmptyProof, "a refutation needs at least one line"));
    }
    if let Err(e) = validate_axiom_set(axioms, kind) {
        errors.push(e);
    }
    if errors.is_empty() || options.all_errors {
        errors.extend(Context::new(axioms, kind, lines).line_errors(!options.all_errors));
    }
    if errors.is_empty() || options.all_errors {
        if let Some(e) = final_line_error(lines, kind) {
            errors.push(e);
        }
    }

    let first = errors.first().cloned();
    let valid = first.is_none();
    let final_constant = if valid { lines.last().and_then(|l| l.poly.as_constant()) } else { None };
    CheckReport {
        valid,
        error: first,
        final_constant,
        total_size: m.total_size,
        degree: m.degree,
        line_count: m.line_count,
        diagnostics: if options.all_errors { errors } else { Vec::new() },
    }
}

fn final_line_error(lines: &[ProofLine], kind: SystemKind) -> Option<LineError> {
    use ErrorCode::*;
    let at = lines.len().checked_sub(1)?;
    let last = &lines[at].poly;
    match last.as_constant() {
        None => Some(LineError::at(at, FinalNotConstant, format!("final line {last} is not a constant"))),
        Some(c) if c.is_zero() => Some(LineError::at(at, FinalZero, "final line is zero")),
        Some(c) if kind.requires_final_one() && !c.is_one() => {
            Some(LineError::at(at, FinalNotOne, format!("{kind} refutations must end in 1, not {c}")))
        }
        Some(_) => None,
    }
}
