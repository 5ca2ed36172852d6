use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::XlateError;
use crate::json;
use crate::polyring::{Polynomial, Scalar, VarId};
use crate::proofcore::{
    check_derivation, check_refutation, AxiomSet, ErrorCode, ExtensionAxiom, LineError, ProofBuilder, ProofLine,
    StepRule, SystemKind,
};

#[derive(Clone, Copy, Debug, Default)]
pub struct RationalizeOptions {
    /// In square-root steps, scale by `L_k·∏ T_j^{α_j}` (a product of the
    /// tracked constants) instead of the least common denominator of the root.
    pub faithful_constants: bool,
}

/// Constants of the ℚ to ℤ conversion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct RationalizeState {
    /// Product of the coefficient denominators of each extension definition.
    #[serde(with = "json::decimal_vec")]
    pub M: Vec<BigInt>,
    /// Scaling factor of each extension variable.
    #[serde(with = "json::decimal_vec")]
    pub T: Vec<BigInt>,
    /// `alpha_exponents[i][j]`: largest power of the `j`-th extension
    /// variable in the `i`-th definition, `j < i`.
    pub alpha_exponents: Vec<Vec<u32>>,
    /// Distinct denominators of all linear-combination scalars, ascending.
    #[serde(with = "json::decimal_vec")]
    pub deltas: Vec<BigInt>,
    /// Product of the coefficient denominators of each input line.
    #[serde(with = "json::decimal_vec")]
    pub L: Vec<BigInt>,
    /// Factor by which the last line of the lifted proof exceeds the last
    /// line of the input.
    #[serde(with = "json::decimal")]
    pub F_final: BigInt,
    /// Final constant of the ℤ proof.
    #[serde(with = "json::decimal")]
    pub final_constant: BigInt,
}

/// How a rescaled line relates to the input line it came from, under the
/// substitution `y_i ↦ T_i·y_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScaleTag {
    /// The substituted polynomial equals the input line.
    Unscaled,
    /// It equals `T_k` times the input line, `k` an extension position.
    Scaled(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseOneLine {
    pub poly: Polynomial,
    pub rule: StepRule,
    /// Index of the input line this line stands for.
    pub provenance: usize,
    pub scale_tag: ScaleTag,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PhaseOneError {
    #[error("line {0}: substituting the scaled extension variables does not give back the input line")]
    SubstitutionIdentityFailure(usize),
    #[error("line {0}: linear combination uses scalars that are neither the input's nor 1/T")]
    ScalarDisciplineFailure(usize),
}

#[derive(Clone, Debug)]
pub struct RationalizeOutput {
    /// Same base axioms, with every definition `Q_i` replaced by the integral
    /// `T_i·Q_i(x, y₁/T₁, …)`.
    pub axioms: AxiomSet,
    pub lines: Vec<ProofLine>,
    pub state: RationalizeState,
    pub phase_one: Vec<PhaseOneLine>,
}

fn scaling_map(vars: &[VarId], t: &[BigInt], invert: bool) -> BTreeMap<VarId, Polynomial> {
    vars.iter()
        .zip(t)
        .map(|(v, ti)| {
            let s = Scalar::from_int(ti.clone());
            let s = if invert { s.recip().expect("T is positive") } else { s };
            (*v, Polynomial::var(*v).scale(&s))
        })
        .collect()
}

/// `M_i`, `T_i = M_i·∏_{j<i} T_j^{α_ij}` and the exponents `α_ij`, taken as
/// the largest degree of `y_j` in `Q_i`.
pub fn compute_t(axioms: &AxiomSet) -> (Vec<BigInt>, Vec<BigInt>, Vec<Vec<u32>>) {
    let mut m = Vec::new();
    let mut t: Vec<BigInt> = Vec::new();
    let mut alpha = Vec::new();
    for (i, ext) in axioms.extensions.iter().enumerate() {
        let mi = ext.definition.denominator_product();
        let ai: Vec<u32> = axioms.extensions[..i].iter().map(|e| ext.definition.degree_in(e.var)).collect();
        let ti = ai.iter().zip(&t).fold(mi.clone(), |acc, (&a, tj)| acc * tj.pow(a));
        m.push(mi);
        alpha.push(ai);
        t.push(ti);
    }
    (m, t, alpha)
}

fn extension_vars(axioms: &AxiomSet) -> Vec<VarId> {
    axioms.extensions.iter().map(|e| e.var).collect()
}

/// The axiom set with integral definitions `Q_i' = T_i·Q_i(x, y/T)`.
fn rescaled_axioms(axioms: &AxiomSet, t: &[BigInt]) -> AxiomSet {
    let down = scaling_map(&extension_vars(axioms), t, true);
    let extensions = axioms
        .extensions
        .iter()
        .zip(t)
        .map(|(e, ti)| {
            let q = e.definition.substitute(&down).scale(&Scalar::from_int(ti.clone()));
            assert!(q.is_integral(), "rescaled definition of {} is not integral: {q}", e.var);
            ExtensionAxiom::new(e.var, q)
        })
        .collect();
    AxiomSet::with_extensions(axioms.base.clone(), extensions)
}

/// Rewrites the proof over the rescaled axioms so that every scalar is either
/// an input scalar or some `1/T_f`. Returns the rescaled axioms, the new
/// lines and, for each input line, the new line standing for it unscaled.
pub fn phase_one(
    axioms: &AxiomSet,
    lines: &[ProofLine],
    t: &[BigInt],
) -> Result<(AxiomSet, Vec<PhaseOneLine>, Vec<usize>), LineError> {
    let vars = extension_vars(axioms);
    let position = |v: VarId| vars.iter().position(|&w| w == v);
    let down = scaling_map(&vars, t, true);
    let primed_axioms = rescaled_axioms(axioms, t);
    let mut b = ProofBuilder::new(primed_axioms.clone(), SystemKind::ExtPcSqrtQ);
    let mut tags = Vec::new();
    let mut map = Vec::with_capacity(lines.len());
    let inv_t = |e: usize| Scalar::from_int(t[e].clone()).recip().expect("T is positive");

    for (j, line) in lines.iter().enumerate() {
        let out = match &line.rule {
            StepRule::Axiom { index } if *index < axioms.base.len() => {
                tags.push((j, ScaleTag::Unscaled));
                b.axiom_fresh(*index)?
            }
            StepRule::Axiom { index } => {
                let e = index - axioms.base.len();
                let p = b.axiom_fresh(*index)?;
                tags.push((j, ScaleTag::Scaled(e)));
                tags.push((j, ScaleTag::Unscaled));
                b.scale(p, inv_t(e))?
            }
            StepRule::LinComb { j: a, k, alpha, beta } => {
                tags.push((j, ScaleTag::Unscaled));
                b.lin_comb(map[*a], map[*k], alpha.clone(), beta.clone())?
            }
            StepRule::MulVar { k, var } => match position(*var) {
                None => {
                    tags.push((j, ScaleTag::Unscaled));
                    b.mul_var(map[*k], *var)?
                }
                Some(e) => {
                    let p = b.mul_var(map[*k], *var)?;
                    tags.push((j, ScaleTag::Scaled(e)));
                    tags.push((j, ScaleTag::Unscaled));
                    b.scale(p, inv_t(e))?
                }
            },
            StepRule::Sqrt { k } => {
                tags.push((j, ScaleTag::Unscaled));
                b.sqrt(map[*k], line.poly.substitute(&down))?
            }
        };
        map.push(out);
    }
    let primed = b
        .finish()
        .into_iter()
        .zip(tags)
        .map(|(l, (provenance, scale_tag))| PhaseOneLine { poly: l.poly, rule: l.rule, provenance, scale_tag })
        .collect();
    Ok((primed_axioms, primed, map))
}

/// Checks, for every rescaled line, the substitution identity its tag claims
/// and that each linear combination reuses the input line's scalars or is a
/// pure `1/T_f` scaling.
pub fn verify_phase_one(
    original: &[ProofLine],
    primed: &[PhaseOneLine],
    extension_vars: &[VarId],
    t: &[BigInt],
) -> Result<(), PhaseOneError> {
    let up = scaling_map(extension_vars, t, false);
    let inverses: Vec<Scalar> = t.iter().map(|ti| Scalar::from_int(ti.clone()).recip().expect("T is positive")).collect();
    for (i, p) in primed.iter().enumerate() {
        let Some(src) = original.get(p.provenance) else {
            return Err(PhaseOneError::SubstitutionIdentityFailure(i));
        };
        let expect = match p.scale_tag {
            ScaleTag::Unscaled => src.poly.clone(),
            ScaleTag::Scaled(k) => match t.get(k) {
                Some(tk) => src.poly.scale(&Scalar::from_int(tk.clone())),
                None => return Err(PhaseOneError::SubstitutionIdentityFailure(i)),
            },
        };
        if p.poly.substitute(&up) != expect {
            return Err(PhaseOneError::SubstitutionIdentityFailure(i));
        }
        if let StepRule::LinComb { j, k, alpha, beta } = &p.rule {
            let reused = matches!(&src.rule, StepRule::LinComb { alpha: a, beta: b, .. } if a == alpha && b == beta);
            let pure_scale = j == k && beta.is_zero() && inverses.contains(alpha);
            if !(reused || pure_scale) {
                return Err(PhaseOneError::ScalarDisciplineFailure(i));
            }
        }
    }
    Ok(())
}

fn lift_error(e: LineError) -> XlateError {
    XlateError::InternalCheckFailure(e)
}

/// Converts an Ext-PC√ refutation over ℚ into one over ℤ. Base axioms must be
/// integral; the output proves the rescaled axiom set, whose definitions
/// introduce `T_i·y_i` in place of `y_i`.
pub fn rationalize(
    axioms: &AxiomSet,
    lines: &[ProofLine],
    options: RationalizeOptions,
) -> Result<RationalizeOutput, XlateError> {
    if let Some(i) = axioms.base.iter().position(|p| !p.is_integral()) {
        return Err(XlateError::NonIntegerBaseAxiom(i));
    }
    let report = check_refutation(axioms, lines, SystemKind::ExtPcSqrtQ);
    if let Some(e) = report.error {
        return Err(XlateError::InvalidInputProof(e.to_string()));
    }
    let input_constant = report.final_constant.expect("valid refutations end in a constant");

    let (m, t, alpha_exponents) = compute_t(axioms);
    let vars = extension_vars(axioms);
    for (i, p) in axioms.base.iter().enumerate() {
        if vars.iter().zip(&t).any(|(v, ti)| !ti.is_one() && p.degree_in(*v) > 0) {
            return Err(XlateError::InvalidInputProof(format!(
                "base axiom {i} mentions an extension variable whose definition has denominators"
            )));
        }
    }
    let deltas: Vec<BigInt> = lines
        .iter()
        .filter_map(|l| match &l.rule {
            StepRule::LinComb { alpha, beta, .. } => Some([alpha.denom().clone(), beta.denom().clone()]),
            _ => None,
        })
        .flatten()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let l: Vec<BigInt> = lines.iter().map(|l| l.poly.denominator_product()).collect();

    let (primed_axioms, primed, _) = phase_one(axioms, lines, &t).map_err(lift_error)?;
    let primed_lines: Vec<ProofLine> = primed.iter().map(|p| ProofLine::new(p.poly.clone(), p.rule.clone())).collect();
    check_derivation(&primed_axioms, &primed_lines, SystemKind::ExtPcSqrtQ).map_err(lift_error)?;
    if let Err(e) = verify_phase_one(lines, &primed, &vars, &t) {
        return Err(XlateError::InternalCheckFailure(LineError::global(ErrorCode::RuleMismatch, e.to_string())));
    }

    let sqrt_scale = |i: usize| -> BigInt {
        if options.faithful_constants {
            let src = &lines[primed[i].provenance].poly;
            vars.iter().zip(&t).fold(l[primed[i].provenance].clone(), |acc, (v, tj)| acc * tj.pow(src.degree_in(*v)))
        } else {
            primed[i].poly.denominator_lcm()
        }
    };
    let (z_lines, f) = z_lift(&primed_axioms, &primed_lines, sqrt_scale).map_err(lift_error)?;

    let report = check_refutation(&primed_axioms, &z_lines, SystemKind::ExtPcSqrtZ);
    if let Some(e) = report.error {
        return Err(XlateError::InternalCheckFailure(e));
    }
    let final_constant = report.final_constant.and_then(|c| c.to_integer()).expect("integral refutation");
    debug_assert_eq!(Scalar::from_int(final_constant.clone()), &input_constant * &Scalar::from_int(f.clone()));
    let state = RationalizeState { M: m, T: t, alpha_exponents, deltas, L: l, F_final: f, final_constant };
    Ok(RationalizeOutput { axioms: primed_axioms, lines: z_lines, state, phase_one: primed })
}

/// Lifts a derivation from integral axioms into ℤ. After step `i` the last
/// `i + 1` lines are `F·R'_0, …, F·R'_i` for the current multiplier `F`; each
/// step re-emits that whole block.
fn z_lift(
    axioms: &AxiomSet,
    primed: &[ProofLine],
    sqrt_scale: impl Fn(usize) -> BigInt,
) -> Result<(Vec<ProofLine>, BigInt), LineError> {
    let mut b = ProofBuilder::new(axioms.clone(), SystemKind::ExtPcSqrtZ);
    let mut block: Vec<usize> = Vec::new();
    let mut f = BigInt::one();
    let copies = |b: &mut ProofBuilder, block: &[usize], s: &BigInt| -> Result<Vec<usize>, LineError> {
        block.iter().map(|&r| b.scale(r, Scalar::from_int(s.clone()))).collect()
    };
    for (i, line) in primed.iter().enumerate() {
        let next = match &line.rule {
            StepRule::Axiom { index } => {
                let a = b.axiom_fresh(*index)?;
                let mut next = copies(&mut b, &block, &BigInt::one())?;
                next.push(b.scale(a, Scalar::from_int(f.clone()))?);
                next
            }
            StepRule::MulVar { k, var } => {
                let mut next = copies(&mut b, &block, &BigInt::one())?;
                next.push(b.mul_var(block[*k], *var)?);
                next
            }
            StepRule::LinComb { j, k, alpha, beta } => {
                let (p1, q1) = (alpha.numer(), alpha.denom());
                let (p2, q2) = (beta.numer(), beta.denom());
                let s = q1 * q2;
                let mut next = copies(&mut b, &block, &s)?;
                next.push(b.lin_comb(block[*j], block[*k], Scalar::from_int(p1 * q2), Scalar::from_int(p2 * q1))?);
                f *= s;
                next
            }
            StepRule::Sqrt { k } => {
                let m = sqrt_scale(i);
                debug_assert!(line.poly.scale(&Scalar::from_int(m.clone())).is_integral());
                let square = b.scale(block[*k], Scalar::from_int(&f * &m * &m))?;
                let mut next = copies(&mut b, &block, &m)?;
                f *= &m;
                next.push(b.sqrt(square, line.poly.scale(&Scalar::from_int(f.clone())))?);
                next
            }
        };
        block = next;
    }
    Ok((b.finish(), f))
}
