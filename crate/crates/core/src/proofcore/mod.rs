//! Line-based algebraic proofs and their checker.
//!
//! A proof is a list of [`ProofLine`]s, each carrying the polynomial it
//! claims together with the [`StepRule`] that justifies it. Six proof systems
//! are supported (see [`SystemKind`]); they differ in the coefficient ring,
//! whether the square-root rule is available, whether extension variables may
//! be introduced, and what the final line must be.

mod builder;
mod check;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::polyring::{Polynomial, Scalar, VarId};

pub use builder::ProofBuilder;
pub use check::{
    check_derivation, check_refutation, check_refutation_with, check_step, measure, validate_axiom_set,
    CheckOptions, Measure,
};

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum SystemKind {
    /// Polynomial Calculus over ℚ: no square roots, no extensions, final line `1`.
    #[serde(rename = "pc-q")]
    PcQ,
    #[serde(rename = "pcsqrt-q")]
    PcSqrtQ,
    #[serde(rename = "pcsqrt-z")]
    PcSqrtZ,
    #[serde(rename = "extpcsqrt-q")]
    ExtPcSqrtQ,
    #[serde(rename = "extpcsqrt-z")]
    ExtPcSqrtZ,
    /// PC over ℚ with affine extension definitions in the `x` variables.
    #[serde(rename = "spspc-q")]
    SpsPcQ,
}

impl SystemKind {
    pub const ALL: [SystemKind; 6] = [
        SystemKind::PcQ,
        SystemKind::PcSqrtQ,
        SystemKind::PcSqrtZ,
        SystemKind::ExtPcSqrtQ,
        SystemKind::ExtPcSqrtZ,
        SystemKind::SpsPcQ,
    ];

    /// Coefficients and linear-combination scalars must be integers.
    pub fn is_integral(self) -> bool {
        matches!(self, SystemKind::PcSqrtZ | SystemKind::ExtPcSqrtZ)
    }

    pub fn allows_sqrt(self) -> bool {
        matches!(
            self,
            SystemKind::PcSqrtQ | SystemKind::PcSqrtZ | SystemKind::ExtPcSqrtQ | SystemKind::ExtPcSqrtZ
        )
    }

    pub fn allows_extensions(self) -> bool {
        matches!(self, SystemKind::ExtPcSqrtQ | SystemKind::ExtPcSqrtZ | SystemKind::SpsPcQ)
    }

    pub fn requires_affine_extensions(self) -> bool {
        self == SystemKind::SpsPcQ
    }

    /// Plain PC refutations end in exactly `1`; the square-root systems accept
    /// any nonzero constant.
    pub fn requires_final_one(self) -> bool {
        matches!(self, SystemKind::PcQ | SystemKind::SpsPcQ)
    }

    pub fn name(self) -> &'static str {
        match self {
            SystemKind::PcQ => "pc-q",
            SystemKind::PcSqrtQ => "pcsqrt-q",
            SystemKind::PcSqrtZ => "pcsqrt-z",
            SystemKind::ExtPcSqrtQ => "extpcsqrt-q",
            SystemKind::ExtPcSqrtZ => "extpcsqrt-z",
            SystemKind::SpsPcQ => "spspc-q",
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SystemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SystemKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown proof system {s:?}"))
    }
}

/// How a proof line is justified. Line references are 0-based and must point
/// strictly backwards.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum StepRule {
    /// Index into the base axioms followed by the extension axioms.
    Axiom { index: usize },
    /// `alpha·R_j + beta·R_k`.
    #[serde(rename = "lincomb")]
    LinComb { j: usize, k: usize, alpha: Scalar, beta: Scalar },
    /// `var·R_k`.
    #[serde(rename = "mulvar")]
    MulVar { k: usize, var: VarId },
    /// The line's polynomial squares to `R_k`.
    Sqrt { k: usize },
}

impl StepRule {
    pub fn axiom(index: usize) -> Self {
        StepRule::Axiom { index }
    }

    pub fn lin_comb(j: usize, k: usize, alpha: impl Into<Scalar>, beta: impl Into<Scalar>) -> Self {
        StepRule::LinComb { j, k, alpha: alpha.into(), beta: beta.into() }
    }

    pub fn mul_var(k: usize, var: VarId) -> Self {
        StepRule::MulVar { k, var }
    }

    pub fn sqrt(k: usize) -> Self {
        StepRule::Sqrt { k }
    }

    /// Earlier lines this rule refers to.
    pub fn premises(&self) -> Vec<usize> {
        match *self {
            StepRule::Axiom { .. } => vec![],
            StepRule::LinComb { j, k, .. } => vec![j, k],
            StepRule::MulVar { k, .. } | StepRule::Sqrt { k } => vec![k],
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProofLine {
    pub poly: Polynomial,
    pub rule: StepRule,
}

impl ProofLine {
    pub fn new(poly: Polynomial, rule: StepRule) -> Self {
        ProofLine { poly, rule }
    }
}

/// Definitional axiom `var − def`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionAxiom {
    pub var: VarId,
    #[serde(rename = "def")]
    pub definition: Polynomial,
}

impl ExtensionAxiom {
    pub fn new(var: VarId, definition: Polynomial) -> Self {
        ExtensionAxiom { var, definition }
    }

    pub fn polynomial(&self) -> Polynomial {
        &Polynomial::var(self.var) - &self.definition
    }
}

/// Base polynomials plus an ordered list of extension axioms.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomSet {
    pub base: Vec<Polynomial>,
    #[serde(default)]
    pub extensions: Vec<ExtensionAxiom>,
}

impl AxiomSet {
    pub fn new(base: Vec<Polynomial>) -> Self {
        AxiomSet { base, extensions: Vec::new() }
    }

    pub fn with_extensions(base: Vec<Polynomial>, extensions: Vec<ExtensionAxiom>) -> Self {
        AxiomSet { base, extensions }
    }

    pub fn len(&self) -> usize {
        self.base.len() + self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The axiom polynomial addressed by `StepRule::Axiom { index }`.
    pub fn polynomial(&self, index: usize) -> Option<Polynomial> {
        if index < self.base.len() {
            Some(self.base[index].clone())
        } else {
            self.extensions.get(index - self.base.len()).map(ExtensionAxiom::polynomial)
        }
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        (0..self.len()).filter_map(|i| self.polynomial(i)).collect()
    }

    /// Axiom index of the extension axiom for `var`.
    pub fn extension_index(&self, var: VarId) -> Option<usize> {
        self.extensions.iter().position(|e| e.var == var).map(|i| i + self.base.len())
    }
}

/// A complete proof file: system, axioms and lines.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Proof {
    pub system: SystemKind,
    pub axioms: AxiomSet,
    pub lines: Vec<ProofLine>,
}

impl Proof {
    pub fn new(system: SystemKind, axioms: AxiomSet, lines: Vec<ProofLine>) -> Self {
        Proof { system, axioms, lines }
    }

    pub fn check(&self) -> CheckReport {
        check_refutation(&self.axioms, &self.lines, self.system)
    }

    pub fn final_polynomial(&self) -> Option<&Polynomial> {
        self.lines.last().map(|l| &l.poly)
    }
}

/// Machine-readable reason a certificate was rejected.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum ErrorCode {
    BadIndex,
    RuleMismatch,
    SqrtMismatch,
    SqrtForbidden,
    NonIntegerScalar,
    NonIntegerCoefficient,
    ExtensionOrderViolation,
    ExtensionNotAffine,
    ExtensionsForbidden,
    AxiomNotInSet,
    FinalNotConstant,
    FinalZero,
    FinalNotOne,
    EmptyProof,
    // Res-Lin
    BadPosition,
    SimplificationOnZero,
    ContractionUnequal,
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A rejection, located at a line when the problem is line-specific.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize, thiserror::Error)]
#[serde(deny_unknown_fields)]
#[error("{}{code}: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct LineError {
    pub line: Option<usize>,
    pub code: ErrorCode,
    pub message: String,
}

impl LineError {
    pub fn at(line: usize, code: ErrorCode, message: impl Into<String>) -> Self {
        LineError { line: Some(line), code, message: message.into() }
    }

    pub fn global(code: ErrorCode, message: impl Into<String>) -> Self {
        LineError { line: None, code, message: message.into() }
    }
}

/// Outcome of checking a refutation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckReport {
    pub valid: bool,
    pub error: Option<LineError>,
    pub final_constant: Option<Scalar>,
    pub total_size: u64,
    pub degree: i64,
    pub line_count: usize,
    /// Every problem found, filled only in all-errors mode.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<LineError>,
}
