//! Grid runner for the full check suite.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::rational;
use crate::tailsum::TailSumError;

use super::{checks, CheckKind, CheckReport, ProofCheckError};

/// Runs every check over the `(a, n)` grid (the same numeric range serves as
/// the `k` range for the k-indexed checks) and returns the reports in
/// deterministic `(a, index, check)` order regardless of completion order.
///
/// Individual failures are data, not errors: a sandwich refinement that
/// exhausts its cap is reported as a failed instance. Empty ranges yield an
/// empty report list.
pub fn run_proof_suite(
    a_range: RangeInclusive<i64>,
    n_range: RangeInclusive<i64>,
) -> Result<Vec<CheckReport>, ProofCheckError> {
    run_proof_suite_filtered(a_range, n_range, &CheckKind::ALL)
}

/// [`run_proof_suite`] restricted to a subset of check kinds.
pub fn run_proof_suite_filtered(
    a_range: RangeInclusive<i64>,
    n_range: RangeInclusive<i64>,
    kinds: &[CheckKind],
) -> Result<Vec<CheckReport>, ProofCheckError> {
    if a_range.is_empty() || n_range.is_empty() || kinds.is_empty() {
        return Ok(Vec::new());
    }
    if *a_range.start() < 3 {
        return Err(ProofCheckError::InvalidParams(format!(
            "suite needs a >= 3, got {}",
            a_range.start()
        )));
    }
    if *n_range.start() < 2 {
        return Err(ProofCheckError::InvalidParams(format!(
            "suite needs n >= 2, got {}",
            n_range.start()
        )));
    }
    let cells: Vec<(i64, i64)> = a_range
        .flat_map(|a| n_range.clone().map(move |n| (a, n)))
        .collect();
    let mut reports = cells
        .into_par_iter()
        .map(|(a, n)| cell_reports(a, n, kinds))
        .collect::<Result<Vec<Vec<CheckReport>>, ProofCheckError>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<CheckReport>>();
    reports.sort_by_key(|r| (r.a, r.index, r.kind));
    Ok(reports)
}

fn cell_reports(a: i64, n: i64, kinds: &[CheckKind]) -> Result<Vec<CheckReport>, ProofCheckError> {
    let mut out = Vec::with_capacity(kinds.len());
    for kind in CheckKind::ALL {
        if !kinds.contains(&kind) {
            continue;
        }
        out.push(match kind {
            CheckKind::TermExpansion => checks::check_term_expansion(a, n)?,
            CheckKind::RemainderBound => checks::check_remainder_bound(a, n)?,
            CheckKind::GeometricTailIdentity => merged_geometric(a, n)?,
            CheckKind::Delta1Bound => checks::check_delta1_bound(a, n)?,
            CheckKind::LambdaBounds => checks::check_lambda_bounds(a, n)?,
            CheckKind::EpsilonBound => checks::check_epsilon_bound(a, n)?,
            CheckKind::Mod5Decomposition => checks::check_mod5_decomposition(a, n)?,
            CheckKind::ConstantBounds => checks::check_constant_bounds(a, n)?,
            CheckKind::Sandwich => sandwich_as_data(a, n)?,
        });
    }
    Ok(out)
}

/// One suite report covering both tail-bound multipliers.
fn merged_geometric(a: i64, n: i64) -> Result<CheckReport, ProofCheckError> {
    let ten = checks::check_geometric_tail_identity(a, n, &rational::int(10))?;
    let eleven = checks::check_geometric_tail_identity(a, n, &rational::int(11))?;
    Ok(CheckReport {
        kind: CheckKind::GeometricTailIdentity,
        a,
        index: n,
        passed: ten.passed && eleven.passed,
        claimed: true,
        witness: format!("{}; {}", ten.witness, eleven.witness),
    })
}

fn sandwich_as_data(a: i64, n: i64) -> Result<CheckReport, ProofCheckError> {
    match checks::check_sandwich(a, n) {
        Ok(report) => Ok(report),
        Err(ProofCheckError::TailSum(TailSumError::Undecided {
            terms_used,
            enclosure,
        })) => Ok(CheckReport {
            kind: CheckKind::Sandwich,
            a,
            index: n,
            passed: false,
            claimed: true,
            witness: format!(
                "undecided: enclosure {enclosure} not separated from the bounds after {terms_used} terms"
            ),
        }),
        Err(other) => Err(other),
    }
}
