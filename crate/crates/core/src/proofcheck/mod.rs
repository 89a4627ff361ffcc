//! Exact verification, in `Q(sqrt(a^2 - 4))`, of the inequalities and
//! algebraic identities behind the cubed floor identity.
//!
//! Every verdict is an exact sign decision; decimal thresholds are encoded
//! as exact fractions (`1681/10000`, `53/10000`, `3/10`, `7/10`, `87/100`)
//! and there is no tolerance anywhere. Checks distinguish what they *assert*
//! (inequalities that hold in their stated ranges, gated by suites and exit
//! codes) from what they merely *record*: boundary probes outside a stated
//! range, and two statements whose printed form exact arithmetic refutes.
//! Refuted statements stay visible in the reports; see the individual checks
//! in [`checks`].

mod checks;
mod quantities;
mod suite;

use std::fmt;

use thiserror::Error;

use crate::quadfield::QuadFieldError;
use crate::sequence::SequenceError;
use crate::tailsum::TailSumError;

pub use checks::{
    check_constant_bounds, check_delta1_bound, check_epsilon_bound,
    check_geometric_tail_identity, check_lambda_bounds, check_mod5_decomposition,
    check_remainder_bound, check_sandwich, check_sandwich_with_enclosure,
    check_term_expansion,
};
pub use quantities::{ProofContext, ProofQuantity, QuantityKind};
pub use suite::{run_proof_suite, run_proof_suite_filtered};

#[derive(Debug, Error)]
pub enum ProofCheckError {
    #[error("invalid proof-check parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Field(#[from] QuadFieldError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    TailSum(#[from] TailSumError),
}

/// The nine check kinds, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    TermExpansion,
    RemainderBound,
    GeometricTailIdentity,
    Delta1Bound,
    LambdaBounds,
    EpsilonBound,
    Mod5Decomposition,
    ConstantBounds,
    Sandwich,
}

impl CheckKind {
    pub const ALL: [CheckKind; 9] = [
        CheckKind::TermExpansion,
        CheckKind::RemainderBound,
        CheckKind::GeometricTailIdentity,
        CheckKind::Delta1Bound,
        CheckKind::LambdaBounds,
        CheckKind::EpsilonBound,
        CheckKind::Mod5Decomposition,
        CheckKind::ConstantBounds,
        CheckKind::Sandwich,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            CheckKind::TermExpansion => "term_expansion",
            CheckKind::RemainderBound => "remainder_bound",
            CheckKind::GeometricTailIdentity => "geometric_tail_identity",
            CheckKind::Delta1Bound => "delta1_bound",
            CheckKind::LambdaBounds => "lambda_bounds",
            CheckKind::EpsilonBound => "epsilon_bound",
            CheckKind::Mod5Decomposition => "mod5_decomposition",
            CheckKind::ConstantBounds => "constant_bounds",
            CheckKind::Sandwich => "sandwich",
        }
    }

    /// True for checks indexed by the summand index `k` rather than the
    /// sum start `n`.
    pub fn indexed_by_k(&self) -> bool {
        matches!(self, CheckKind::TermExpansion | CheckKind::RemainderBound)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Outcome of one exact verification at one grid point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub kind: CheckKind,
    pub a: i64,
    /// `n`, or `k` for the k-indexed checks.
    pub index: i64,
    /// Exact truth of the asserted relations at this point (of the probed
    /// relation when nothing is asserted here). Never tolerance-based.
    pub passed: bool,
    /// Whether this instance asserts anything: `false` marks a recorded
    /// probe (outside the stated range, or a statement exact arithmetic
    /// refutes) that never gates a suite.
    pub claimed: bool,
    /// Textual rendering of the exact quantities compared. Decimals in the
    /// witness are annotations; verdicts come from exact signs only.
    pub witness: String,
}

impl CheckReport {
    pub fn status(&self) -> &'static str {
        match (self.claimed, self.passed) {
            (true, true) => "pass",
            (true, false) => "fail",
            (false, _) => "probe",
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = if self.kind.indexed_by_k() { "k" } else { "n" };
        write!(
            f,
            "{:<24} a={:<3} {idx}={:<3} {}",
            self.kind.id(),
            self.a,
            self.index,
            self.status()
        )
    }
}
