use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use sqrtpc::bvp::{self, BvpError, BvpInstance};
use sqrtpc::proofcore::{check_refutation_with, measure, CheckOptions, Proof, SystemKind};
use sqrtpc::reslin::{check_reslin_with, Disjunction, RlProof};
use sqrtpc::xlate::{self, RationalizeOptions, XlateError};

use crate::Command;

/// What a successful run prints, and whether the verdict was positive.
pub struct Outcome {
    pub json: String,
    pub ok: bool,
}

/// A run that stopped before producing its normal output.
#[derive(Debug)]
pub struct Failure {
    pub exit: u8,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    fn new(exit: u8, kind: &'static str, message: impl Into<String>) -> Self {
        Failure { exit, kind, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new(2, "usage", message)
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure::new(1, "invalid", message)
    }

    pub fn to_json(&self) -> String {
        let doc = json!({ "error": { "kind": self.kind, "exit": self.exit, "message": self.message } });
        serde_json::to_string_pretty(&doc).expect("plain JSON")
    }
}

impl From<BvpError> for Failure {
    fn from(e: BvpError) -> Self {
        match e {
            BvpError::CostGuard { .. }
            | BvpError::SieveGuard { .. }
            | BvpError::KPlusOneNotPrime(_)
            | BvpError::KOutOfRange { .. } => Failure::usage(e.to_string()),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

impl From<XlateError> for Failure {
    fn from(e: XlateError) -> Self {
        match e {
            XlateError::InternalCheckFailure(_) => Failure::new(2, "internal", e.to_string()),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

type Run = Result<Outcome, Failure>;

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn read<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(2, "io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::new(2, "parse", format!("{}: {e}", path.display())))
}

fn write<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = pretty(value);
    text.push('\n');
    fs::write(path, text).map_err(|e| Failure::new(2, "io", format!("{}: {e}", path.display())))
}

/// Writes the artifact to `out` and prints `summary`, or prints the artifact
/// when there is no `out`.
fn emit<T: Serialize>(out: Option<&PathBuf>, artifact: &T, summary: Value) -> Run {
    let json = match out {
        Some(path) => {
            write(path, artifact)?;
            let mut summary = summary;
            summary["out"] = json!(path.display().to_string());
            pretty(&summary)
        }
        None => pretty(artifact),
    };
    Ok(Outcome { json, ok: true })
}

fn read_reslin(path: &Path, axioms: Option<&PathBuf>) -> Result<RlProof, Failure> {
    let mut proof: RlProof = read(path)?;
    if let Some(axioms) = axioms {
        let k: Vec<Disjunction> = read(axioms)?;
        if !proof.axioms.is_empty() && proof.axioms != k {
            return Err(Failure::usage("the certificate carries axioms that differ from --axioms"));
        }
        proof.axioms = k;
    }
    Ok(proof)
}

/// A proof that must be a valid refutation before anything else is done.
fn read_refutation(path: &Path) -> Result<Proof, Failure> {
    let proof: Proof = read(path)?;
    let report = proof.check();
    match report.error {
        Some(e) => Err(Failure::invalid(format!("{}: {e}", path.display()))),
        None => Ok(proof),
    }
}

pub fn run(command: Command) -> Run {
    match command {
        Command::Check { proof: Some(path), system, all_errors, .. } => {
            let proof: Proof = read(&path)?;
            if let Some(kind) = system {
                if kind != proof.system {
                    return Err(Failure::usage(format!("--system {kind} but the file declares {}", proof.system)));
                }
            }
            let report = check_refutation_with(&proof.axioms, &proof.lines, proof.system, CheckOptions { all_errors });
            Ok(Outcome { ok: report.valid, json: pretty(&report) })
        }
        Command::Check { reslin: Some(path), axioms, all_errors, .. } => {
            let proof = read_reslin(&path, axioms.as_ref())?;
            let report = check_reslin_with(&proof.axioms, &proof.lines, CheckOptions { all_errors });
            Ok(Outcome { ok: report.valid, json: pretty(&report) })
        }
        Command::Check { .. } => Err(Failure::usage("one of --proof or --reslin is required")),

        Command::GenBvp { n, out } => {
            if n == 0 {
                return Err(Failure::usage("--n must be at least 1"));
            }
            let instance = bvp::gen_bvp(n);
            emit(out.as_ref(), &instance, json!({ "n": n }))
        }

        Command::OracleRefute { n, instance, force, out } => {
            if let Some(path) = instance {
                let given: BvpInstance = read(&path)?;
                if given != bvp::gen_bvp(given.n) || given.n != n {
                    return Err(Failure::invalid(format!("{} is not BVP_{n}", path.display())));
                }
            }
            let (axioms, lines) = bvp::brute_force_refutation(n, force)?;
            let proof = Proof::new(SystemKind::PcSqrtZ, axioms, lines);
            let summary = json!({
                "n": n,
                "system": proof.system,
                "line_count": proof.lines.len(),
                "final_constant": proof.final_polynomial().map(|p| p.to_string()),
            });
            emit(out.as_ref(), &proof, summary)
        }

        Command::Translate { reslin, axioms, out } => {
            let input = read_reslin(&reslin, axioms.as_ref())?;
            let sim = xlate::simulate_reslin_b(&input.axioms, &input.lines)?;
            let summary = json!({
                "line_count": sim.proof.len(),
                "sqrt_count": sim.sqrt_count(),
                "line_map": sim.line_map,
            });
            emit(out.as_ref(), &sim.into_proof(), summary)
        }

        Command::Rationalize { proof, out, state, faithful_constants } => {
            let input: Proof = read(&proof)?;
            if input.system != SystemKind::ExtPcSqrtQ {
                return Err(Failure::usage(format!("expected an extpcsqrt-q proof, found {}", input.system)));
            }
            let result = xlate::rationalize(&input.axioms, &input.lines, RationalizeOptions { faithful_constants })?;
            if let Some(path) = &state {
                write(path, &result.state)?;
            }
            let output = Proof::new(SystemKind::ExtPcSqrtZ, result.axioms, result.lines);
            let summary = json!({ "line_count": output.lines.len(), "state": result.state });
            emit(out.as_ref(), &output, summary)
        }

        Command::Audit { proof, n } => {
            let proof = read_refutation(&proof)?;
            let constant = proof.check().final_constant.expect("valid refutations end in a constant");
            let m = constant
                .to_integer()
                .ok_or_else(|| Failure::invalid(format!("final constant {constant} is not an integer")))?;
            let report = bvp::audit_divisibility(&m, n)?;
            Ok(Outcome { ok: report.passed, json: pretty(&report) })
        }

        Command::Trace { proof, n, k } => {
            let proof = read_refutation(&proof)?;
            if !proof.system.is_integral() {
                return Err(Failure::invalid(format!("trace needs a proof over ℤ, found {}", proof.system)));
            }
            let report = bvp::trace_mod_check(&proof.axioms, &proof.lines, n, k)?;
            Ok(Outcome { ok: report.passed, json: pretty(&report) })
        }

        Command::Measure { proof } => {
            let proof: Proof = read(&proof)?;
            Ok(Outcome { ok: true, json: pretty(&measure(&proof.lines)) })
        }

        Command::Primes { below } => {
            let primes = bvp::primes_below(below)?;
            let bits = bvp::primorial_bits(below)?;
            Ok(Outcome { ok: true, json: pretty(&json!({ "primes": primes, "primorial_bits": bits })) })
        }
    }
}
