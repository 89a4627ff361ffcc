//! Certified evaluation of `floor((sum_{k>=n} 1/U_k^s)^-1)`.
//!
//! The sum is enclosed between an exact rational partial sum `L` over
//! `[n, m)` and `L + T` where `T` is a provable geometric tail bound, so the
//! reciprocal lies in `[1/(L+T), 1/L]`. The window `m` grows until both
//! endpoints share a floor. The returned value is unconditionally correct;
//! when the refinement cap is reached with the enclosure still straddling an
//! integer the evaluator reports [`TailSumError::Undecided`] rather than
//! guessing.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::rational;
use crate::sequence::{recip_power, Family, SequenceError, SequenceParams, TermCursor};

/// Terms added per refinement round. Each term shrinks the tail by at least
/// `(p-1)^s >= 8` for the `q = -1` family, so eight at a time converges in a
/// handful of rounds without overshooting the work.
pub const REFINEMENT_STEP: u32 = 8;
/// First window end is `n + INITIAL_OFFSET`, keeping the irregular leading
/// terms inside the exact partial sum.
pub const INITIAL_OFFSET: u32 = 8;
/// Default refinement cap.
pub const DEFAULT_MAX_TERMS: u32 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TailSumError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("undecided after {terms_used} terms: enclosure {enclosure} straddles an integer")]
    Undecided {
        terms_used: u32,
        enclosure: Box<RationalInterval>,
    },
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

/// A reciprocal-power-sum query: `floor((sum_{k>=n} 1/U_k^s)^-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerSumQuery {
    pub params: SequenceParams,
    pub s: u32,
    pub n: i64,
    pub max_terms: u32,
}

impl PowerSumQuery {
    pub fn new(params: SequenceParams, s: u32, n: i64) -> Result<Self, TailSumError> {
        if s < 1 {
            return Err(TailSumError::InvalidQuery("power s must be >= 1".into()));
        }
        if n < 1 {
            return Err(TailSumError::InvalidQuery(format!(
                "start index n must be >= 1, got {n}"
            )));
        }
        Ok(PowerSumQuery {
            params,
            s,
            n,
            max_terms: DEFAULT_MAX_TERMS,
        })
    }

    pub fn with_max_terms(mut self, max_terms: u32) -> Result<Self, TailSumError> {
        if max_terms == 0 {
            return Err(TailSumError::InvalidQuery("max_terms must be >= 1".into()));
        }
        self.max_terms = max_terms;
        Ok(self)
    }
}

/// A certified enclosure `[lo, hi]` with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    /// True when `other` lies inside `self`.
    pub fn contains_interval(&self, other: &RationalInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `Some(floor)` when both endpoints floor to the same integer.
    pub fn decided_floor(&self) -> Option<BigInt> {
        let lo = rational::floor_to_int(&self.lo);
        let hi = rational::floor_to_int(&self.hi);
        (lo == hi).then_some(lo)
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A proven floor plus the evidence that proves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorResult {
    /// The certified value `floor((sum_{k>=n} 1/U_k^s)^-1)`.
    pub value: BigInt,
    /// Number of terms in the exact partial sum when the floor was decided.
    pub terms_used: u32,
    /// Final enclosure of the reciprocal of the sum.
    pub enclosure: RationalInterval,
}

/// A rational `T` with `sum_{k>=m} 1/U_k^s <= T`, strictly positive and
/// decreasing at least geometrically in `m`.
///
/// - family `q = -1`, `p >= 3`: `T = (1/U_m^s) / (1 - (p-1)^-s)`, justified
///   by `U_{k+1} >= (p-1) U_k` for `k >= 1`;
/// - family `q = +1`, `p >= 1`: `T = (1/U_m^s + 1/U_{m+1}^s) / (1 - (p^2+1)^-s)`,
///   justified by `U_{k+2} >= (p^2+1) U_k` for `k >= 1`.
pub fn tail_bound(params: &SequenceParams, s: u32, m: i64) -> Result<BigRational, TailSumError> {
    if s < 1 {
        return Err(TailSumError::InvalidQuery("power s must be >= 1".into()));
    }
    if m < 1 {
        return Err(TailSumError::InvalidQuery(format!(
            "tail start m must be >= 1, got {m}"
        )));
    }
    let geometric = |ratio_base: i64| -> BigRational {
        // 1 / (1 - base^-s) = base^s / (base^s - 1)
        let pow = BigInt::from(ratio_base).pow(s);
        BigRational::new(pow.clone(), pow - BigInt::one())
    };
    let mut cursor = TermCursor::new(params.clone(), m);
    let u_m = cursor.next().expect("cursor is infinite").value;
    match params.family() {
        Family::GeneralQMinus1 => {
            Ok(recip_power(&u_m, s) * geometric(params.p() - 1))
        }
        Family::QPlus1 => {
            let u_m1 = cursor.next().expect("cursor is infinite").value;
            let head = recip_power(&u_m, s) + recip_power(&u_m1, s);
            Ok(head * geometric(params.p() * params.p() + 1))
        }
    }
}

/// Successively refined enclosures of the reciprocal `(sum_{k>=n} 1/U_k^s)^-1`.
///
/// Yields `(terms_used, enclosure)` pairs; enclosures are nested. Infinite --
/// callers impose their own cap.
pub struct ReciprocalEnclosures {
    params: SequenceParams,
    s: u32,
    start: i64,
    step: u32,
    cursor: TermCursor,
    window_end: i64,
    partial: BigRational,
    first: bool,
}

impl ReciprocalEnclosures {
    fn new(params: SequenceParams, s: u32, n: i64, initial_offset: u32, step: u32) -> Self {
        ReciprocalEnclosures {
            params,
            s,
            start: n,
            step: step.max(1),
            cursor: TermCursor::new(params, n),
            window_end: n + initial_offset.max(1) as i64,
            partial: BigRational::zero(),
            first: true,
        }
    }

    fn extend_to(&mut self, end: i64) {
        while self.cursor.peek_index() < end {
            let term = self.cursor.next().expect("cursor is infinite");
            self.partial += recip_power(&term.value, self.s);
        }
    }
}

impl Iterator for ReciprocalEnclosures {
    type Item = (u32, RationalInterval);

    fn next(&mut self) -> Option<(u32, RationalInterval)> {
        if self.first {
            self.first = false;
        } else {
            self.window_end += self.step as i64;
        }
        self.extend_to(self.window_end);
        let tail = tail_bound(&self.params, self.s, self.window_end)
            .expect("window end is >= 1 for a validated query");
        let lo = (&self.partial + tail).recip();
        let hi = self.partial.recip();
        let terms = (self.window_end - self.start) as u32;
        Some((terms, RationalInterval::new(lo, hi)))
    }
}

/// Enclosure stream with the default refinement schedule.
pub fn reciprocal_enclosures(
    params: SequenceParams,
    s: u32,
    n: i64,
) -> Result<ReciprocalEnclosures, TailSumError> {
    let query = PowerSumQuery::new(params, s, n)?;
    Ok(ReciprocalEnclosures::new(
        query.params,
        query.s,
        query.n,
        INITIAL_OFFSET,
        REFINEMENT_STEP,
    ))
}

/// Certified `floor((sum_{k>=n} 1/U_k^s)^-1)` with the default schedule.
pub fn floor_recip_sum(query: &PowerSumQuery) -> Result<FloorResult, TailSumError> {
    floor_recip_sum_with(query, INITIAL_OFFSET, REFINEMENT_STEP)
}

/// Same as [`floor_recip_sum`] with an explicit refinement schedule. The
/// returned value is schedule-invariant; only `terms_used` varies.
pub fn floor_recip_sum_with(
    query: &PowerSumQuery,
    initial_offset: u32,
    step: u32,
) -> Result<FloorResult, TailSumError> {
    // Re-validate: queries can be built with struct syntax.
    let checked = PowerSumQuery::new(query.params, query.s, query.n)?
        .with_max_terms(query.max_terms)?;
    let mut last = None;
    for (terms_used, enclosure) in
        ReciprocalEnclosures::new(checked.params, checked.s, checked.n, initial_offset, step)
    {
        if let Some(value) = enclosure.decided_floor() {
            return Ok(FloorResult {
                value,
                terms_used,
                enclosure,
            });
        }
        let done = terms_used >= checked.max_terms;
        last = Some((terms_used, enclosure));
        if done {
            break;
        }
    }
    let (terms_used, enclosure) = last.expect("at least one enclosure is produced");
    Err(TailSumError::Undecided {
        terms_used,
        enclosure,
    })
}
