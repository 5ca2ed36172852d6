use std::collections::{BTreeSet, HashMap};

use super::{AxiomSet, ErrorCode, LineError, Proof, ProofLine, StepRule, SystemKind};
use crate::polyring::{Monomial, Polynomial, Scalar, VarId};

/// Appends proof lines whose polynomials are computed from the rule, so the
/// result is correct by construction. The kind's restrictions (integral
/// scalars, no square roots, declared extension variables) are enforced on
/// every append and reported with the line index the step would have taken.
#[derive(Clone, Debug)]
pub struct ProofBuilder {
    axioms: AxiomSet,
    axiom_polys: Vec<Polynomial>,
    declared_y: BTreeSet<VarId>,
    kind: SystemKind,
    lines: Vec<ProofLine>,
    axiom_lines: HashMap<usize, usize>,
    chains: HashMap<(usize, Monomial), usize>,
}

impl ProofBuilder {
    pub fn new(axioms: AxiomSet, kind: SystemKind) -> Self {
        ProofBuilder {
            axiom_polys: axioms.polynomials(),
            declared_y: axioms.extensions.iter().map(|e| e.var).collect(),
            axioms,
            kind,
            lines: Vec::new(),
            axiom_lines: HashMap::new(),
            chains: HashMap::new(),
        }
    }

    pub fn axioms(&self) -> &AxiomSet {
        &self.axioms
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[ProofLine] {
        &self.lines
    }

    pub fn poly(&self, line: usize) -> &Polynomial {
        &self.lines[line].poly
    }

    pub fn finish(self) -> Vec<ProofLine> {
        self.lines
    }

    pub fn into_proof(self) -> Proof {
        Proof::new(self.kind, self.axioms, self.lines)
    }

    fn next_error(&self, code: ErrorCode, message: String) -> LineError {
        LineError::at(self.lines.len(), code, message)
    }

    fn premise(&self, k: usize) -> Result<&Polynomial, LineError> {
        self.lines.get(k).map(|l| &l.poly).ok_or_else(|| {
            self.next_error(ErrorCode::BadIndex, format!("line {k} does not exist yet"))
        })
    }

    fn push(&mut self, poly: Polynomial, rule: StepRule) -> Result<usize, LineError> {
        if self.kind.is_integral() && !poly.is_integral() {
            return Err(self.next_error(ErrorCode::NonIntegerCoefficient, format!("non-integer coefficient in {poly}")));
        }
        self.lines.push(ProofLine::new(poly, rule));
        Ok(self.lines.len() - 1)
    }

    /// Emits axiom `index` once; later calls return the same line.
    pub fn axiom(&mut self, index: usize) -> Result<usize, LineError> {
        if let Some(&line) = self.axiom_lines.get(&index) {
            return Ok(line);
        }
        let Some(poly) = self.axiom_polys.get(index).cloned() else {
            return Err(self.next_error(ErrorCode::BadIndex, format!("axiom index {index} out of range")));
        };
        let line = self.push(poly, StepRule::axiom(index))?;
        self.axiom_lines.insert(index, line);
        Ok(line)
    }

    /// Emits axiom `index` as a fresh line even if it was emitted before.
    pub fn axiom_fresh(&mut self, index: usize) -> Result<usize, LineError> {
        let Some(poly) = self.axiom_polys.get(index).cloned() else {
            return Err(self.next_error(ErrorCode::BadIndex, format!("axiom index {index} out of range")));
        };
        self.push(poly, StepRule::axiom(index))
    }

    pub fn lin_comb(
        &mut self,
        j: usize,
        k: usize,
        alpha: impl Into<Scalar>,
        beta: impl Into<Scalar>,
    ) -> Result<usize, LineError> {
        let (alpha, beta) = (alpha.into(), beta.into());
        if self.kind.is_integral() && !(alpha.is_integer() && beta.is_integer()) {
            return Err(self.next_error(
                ErrorCode::NonIntegerScalar,
                format!("scalars {alpha} and {beta} must be integers in {}", self.kind),
            ));
        }
        let poly = self.premise(j)?.lin_comb(&alpha, self.premise(k)?, &beta);
        self.push(poly, StepRule::LinComb { j, k, alpha, beta })
    }

    /// `s·R_k`, written as `LinComb(k, k, s, 0)`.
    pub fn scale(&mut self, k: usize, s: impl Into<Scalar>) -> Result<usize, LineError> {
        self.lin_comb(k, k, s, 0)
    }

    pub fn mul_var(&mut self, k: usize, var: VarId) -> Result<usize, LineError> {
        if var.is_y() && !self.declared_y.contains(&var) {
            return Err(self.next_error(ErrorCode::RuleMismatch, format!("{var} is not a declared extension variable")));
        }
        let poly = self.premise(k)?.mul_var(var);
        self.push(poly, StepRule::mul_var(k, var))
    }

    /// Emits `root` by the square-root rule from line `k`; `root²` must equal
    /// `R_k`.
    pub fn sqrt(&mut self, k: usize, root: Polynomial) -> Result<usize, LineError> {
        if !self.kind.allows_sqrt() {
            return Err(self.next_error(ErrorCode::SqrtForbidden, format!("{} has no square-root rule", self.kind)));
        }
        let square = root.mul(&root);
        if &square != self.premise(k)? {
            return Err(self.next_error(ErrorCode::SqrtMismatch, format!("({root})² is not R{k}")));
        }
        self.push(root, StepRule::sqrt(k))
    }

    /// `mono·R_source` through MulVar steps, sharing prefixes with earlier
    /// chains from the same source. Returns `source` itself when `mono` is 1.
    pub fn monomial_chain(&mut self, source: usize, mono: &Monomial) -> Result<usize, LineError> {
        self.premise(source)?;
        let mut current = source;
        let mut prefix = Monomial::one();
        for v in mono.expanded() {
            prefix = prefix.mul_var(v);
            current = match self.chains.get(&(source, prefix.clone())) {
                Some(&line) => line,
                None => {
                    let line = self.mul_var(current, v)?;
                    self.chains.insert((source, prefix.clone()), line);
                    line
                }
            };
        }
        Ok(current)
    }

    /// Appends exactly `deg(mono) + 1` lines: one MulVar per variable
    /// occurrence, then `LinComb(last, last, s, 0)`. The final line is
    /// `s·mono·R_source`.
    pub fn emit_monomial_multiple(
        &mut self,
        source: usize,
        mono: &Monomial,
        s: impl Into<Scalar>,
    ) -> Result<usize, LineError> {
        self.premise(source)?;
        let mut current = source;
        for v in mono.expanded() {
            current = self.mul_var(current, v)?;
        }
        self.scale(current, s)
    }

    /// Balanced sum `Σ cᵢ·R_{lᵢ}`, one LinComb per internal node. Coefficients
    /// are folded into the leaves' combinations, so no scaling lines are
    /// added except for a single-term sum with coefficient other than 1.
    pub fn weighted_sum(&mut self, terms: &[(usize, Scalar)]) -> Result<Option<usize>, LineError> {
        match terms {
            [] => Ok(None),
            [(line, c)] if c.is_one() => Ok(Some(*line)),
            [(line, c)] => self.scale(*line, c.clone()).map(Some),
            _ => {
                let mut level: Vec<(usize, Scalar)> = terms.to_vec();
                while level.len() > 1 {
                    let mut next = Vec::with_capacity(level.len().div_ceil(2));
                    let mut it = level.into_iter();
                    while let Some((a, ca)) = it.next() {
                        match it.next() {
                            Some((b, cb)) => next.push((self.lin_comb(a, b, ca, cb)?, Scalar::one())),
                            None => next.push((a, ca)),
                        }
                    }
                    level = next;
                }
                let (line, c) = level.pop().expect("nonempty");
                if c.is_one() {
                    Ok(Some(line))
                } else {
                    self.scale(line, c).map(Some)
                }
            }
        }
    }
}
