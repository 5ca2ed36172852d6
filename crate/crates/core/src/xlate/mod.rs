//! Proof translations.
//!
//! [`simulate_reslin_b`] turns a Res-Lin refutation into an Ext-PC√ refutation
//! over ℚ, one rule at a time, through the hat encoding of each line.
//! [`rationalize`] turns an Ext-PC√ refutation over ℚ into one over ℤ: it first
//! rescales the extension variables so that every definition becomes integral,
//! then lifts the proof line by line, multiplying the whole derived block by
//! whatever constant the next step needs to stay integral.

mod rationalize;
mod simulate;

use crate::proofcore::LineError;

pub use rationalize::{
    compute_t, phase_one, rationalize, verify_phase_one, PhaseOneError, PhaseOneLine, RationalizeOptions,
    RationalizeOutput, RationalizeState, ScaleTag,
};
pub use simulate::{simulate_reslin_b, SimulationOutput};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum XlateError {
    #[error("input proof is invalid: {0}")]
    InvalidInputProof(String),
    #[error("base axiom {0} has a non-integer coefficient")]
    NonIntegerBaseAxiom(usize),
    /// The translation produced something the checker rejects. This is a bug.
    #[error("translated proof failed its self-check: {0}")]
    InternalCheckFailure(LineError),
}
