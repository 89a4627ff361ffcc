//! Generalized Fibonacci terms `U_n(p, q)` as exact big integers, with an
//! exact Binet-formula cross-check in `Q(sqrt(p^2 + 4q))`.
//!
//! Two parameter families are supported, matching the identities this crate
//! evaluates: `q = -1` with `p >= 3` (the `G_n` sequences) and `q = +1` with
//! `p >= 1` (Fibonacci, Pell, ...). Each admits a provable geometric growth
//! bound, which is what makes the certified tail bounds possible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::quadfield::{QuadElem, QuadField, QuadFieldError};
use crate::rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("unsupported (p, q) = ({p}, {q}): need q = -1 with p >= 3, or q = +1 with p >= 1")]
    UnsupportedParams { p: i64, q: i64 },
    #[error("invalid discriminant for (p, q) = ({p}, {q}): {source}")]
    InvalidDiscriminant {
        p: i64,
        q: i64,
        source: QuadFieldError,
    },
    #[error("index {0} below -1; terms are defined for n >= -1 only")]
    IndexBelowMinusOne(i64),
    #[error("invalid range [{lo}, {hi}]")]
    InvalidRange { lo: i64, hi: i64 },
    #[error("Binet evaluation for (p, q) = ({p}, {q}) at n = {n} left field residue {residue}")]
    BinetInconsistency { p: i64, q: i64, n: i64, residue: String },
}

/// The two supported recurrence families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `q = -1`, `p >= 3`: strictly increasing with `U_{k+1} >= (p-1) U_k`.
    GeneralQMinus1,
    /// `q = +1`, `p >= 1`: two-step growth `U_{k+2} >= (p^2+1) U_k`.
    QPlus1,
}

/// A validated recurrence pair `(p, q)` for `U_n = p U_{n-1} + q U_{n-2}`,
/// `U_0 = 0`, `U_1 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequenceParams {
    p: i64,
    q: i64,
    family: Family,
}

impl SequenceParams {
    pub fn new(p: i64, q: i64) -> Result<Self, SequenceError> {
        let family = match (p, q) {
            (p, -1) if p >= 3 => Family::GeneralQMinus1,
            (p, 1) if p >= 1 => Family::QPlus1,
            _ => return Err(SequenceError::UnsupportedParams { p, q }),
        };
        // p^2 + 4q > 0 and non-square holds for both families; keep the
        // guard so the invariant is checked where it is stated.
        let d = p
            .checked_mul(p)
            .and_then(|pp| pp.checked_add(4 * q))
            .ok_or(SequenceError::UnsupportedParams { p, q })?;
        QuadField::new(d).map_err(|source| SequenceError::InvalidDiscriminant { p, q, source })?;
        Ok(SequenceParams { p, q, family })
    }

    /// Fibonacci numbers: `(p, q) = (1, 1)`.
    pub fn fibonacci() -> Self {
        SequenceParams::new(1, 1).expect("(1, 1) is a supported family")
    }

    /// Pell numbers: `(p, q) = (2, 1)`.
    pub fn pell() -> Self {
        SequenceParams::new(2, 1).expect("(2, 1) is a supported family")
    }

    /// The theorem's `G_n` family: `(p, q) = (a, -1)` with `a >= 3`.
    pub fn g_family(a: i64) -> Result<Self, SequenceError> {
        SequenceParams::new(a, -1)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// `D = p^2 + 4q`.
    pub fn discriminant(&self) -> u64 {
        (self.p * self.p + 4 * self.q) as u64
    }

    pub fn field(&self) -> QuadField {
        QuadField::new(self.discriminant() as i64).expect("validated on construction")
    }

    /// `alpha = (p + sqrt(D)) / 2`, the dominant root of `x^2 = p x + q`.
    pub fn alpha(&self) -> QuadElem {
        self.field()
            .elem(rational::ratio(self.p, 2), rational::ratio(1, 2))
    }

    /// `beta = (p - sqrt(D)) / 2`, the conjugate root.
    pub fn beta(&self) -> QuadElem {
        self.alpha().conjugate()
    }
}

/// One sequence term: an index and its exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTerm {
    pub index: i64,
    pub value: BigInt,
}

/// Exact `U_n` by iteration.
///
/// `n = -1` returns the convention value `U_{-1} = 1`, mirroring the
/// identities' use of `P_{-1} = F_{-1} = 1`. For `q = +1` this also satisfies
/// the recurrence; for `q = -1` it is a convention only and no identity here
/// relies on it.
pub fn seq_term(params: &SequenceParams, n: i64) -> Result<BigInt, SequenceError> {
    if n < -1 {
        return Err(SequenceError::IndexBelowMinusOne(n));
    }
    if n == -1 {
        return Ok(BigInt::one());
    }
    Ok(TermCursor::new(*params, n)
        .next()
        .expect("cursor is infinite")
        .value)
}

/// Exact `U_n` by fast doubling on the pair `(U_k, U_{k+1})`:
/// `U_{2k} = U_k (2 U_{k+1} - p U_k)` and `U_{2k+1} = U_{k+1}^2 + q U_k^2`.
///
/// An optimization over [`seq_term`]; the two must agree exactly, which the
/// property suite checks.
pub fn seq_term_fast(params: &SequenceParams, n: i64) -> Result<BigInt, SequenceError> {
    if n < -1 {
        return Err(SequenceError::IndexBelowMinusOne(n));
    }
    if n == -1 {
        return Ok(BigInt::one());
    }
    let p = BigInt::from(params.p);
    let q = BigInt::from(params.q);
    // (u, v) = (U_k, U_{k+1}), starting at k = 0 and consuming bits of n
    // from the most significant end.
    let mut u = BigInt::zero();
    let mut v = BigInt::one();
    let bits = 64 - (n as u64).leading_zeros();
    for shift in (0..bits).rev() {
        let doubled = &u * (BigInt::from(2) * &v - &p * &u);
        let doubled_next = &v * &v + &q * (&u * &u);
        if (n as u64 >> shift) & 1 == 0 {
            u = doubled;
            v = doubled_next;
        } else {
            v = &p * &doubled_next + &q * &doubled;
            u = doubled_next;
        }
    }
    Ok(u)
}

/// `(alpha^n - beta^n) / (alpha - beta)` evaluated entirely in
/// `Q(sqrt(D))`. The result must collapse to an integer equal to
/// [`seq_term`]; a nonzero `sqrt(D)` residue or a non-integer rational part
/// signals an arithmetic bug, reported as [`SequenceError::BinetInconsistency`].
pub fn binet_eval(params: &SequenceParams, n: i64) -> Result<BigInt, SequenceError> {
    if n < 0 {
        return Err(SequenceError::IndexBelowMinusOne(n));
    }
    let alpha = params.alpha();
    let beta = params.beta();
    let diff = alpha.pow(n) - beta.pow(n);
    let value = &diff / &params.field().sqrt_d();
    let inconsistency = |residue: String| SequenceError::BinetInconsistency {
        p: params.p,
        q: params.q,
        n,
        residue,
    };
    let rational = value
        .as_rational()
        .ok_or_else(|| inconsistency(format!("sqrt coefficient {}", value.y())))?;
    if !rational.is_integer() {
        return Err(inconsistency(format!("non-integer part {rational}")));
    }
    Ok(rational.to_integer())
}

/// Contiguous terms `U_lo ..= U_hi` in a single linear pass.
pub fn seq_range(
    params: &SequenceParams,
    lo: i64,
    hi: i64,
) -> Result<Vec<SequenceTerm>, SequenceError> {
    if lo < -1 {
        return Err(SequenceError::IndexBelowMinusOne(lo));
    }
    if lo > hi {
        return Err(SequenceError::InvalidRange { lo, hi });
    }
    let mut out = Vec::with_capacity((hi - lo + 1) as usize);
    if lo == -1 {
        out.push(SequenceTerm {
            index: -1,
            value: BigInt::one(),
        });
    }
    let start = lo.max(0);
    for term in TermCursor::new(*params, 0) {
        if term.index > hi {
            break;
        }
        if term.index >= start {
            out.push(term);
        }
    }
    Ok(out)
}

/// Infinite iterator over consecutive terms from a starting index `>= 0`.
#[derive(Debug, Clone)]
pub struct TermCursor {
    params: SequenceParams,
    /// Index of the term `curr` holds.
    index: i64,
    prev: BigInt,
    curr: BigInt,
}

impl TermCursor {
    /// Positions the cursor so the first yielded term is `U_start`.
    pub fn new(params: SequenceParams, start: i64) -> Self {
        assert!(start >= 0, "cursor starts at a non-negative index");
        // Seed prev with the recurrence-consistent U_{-1} = 1/q = q (q is a
        // unit), so stepping is uniform across both families. This internal
        // seed is distinct from the exposed convention U_{-1} = 1.
        let mut cursor = TermCursor {
            params,
            index: 0,
            prev: BigInt::from(params.q),
            curr: BigInt::zero(),
        };
        for _ in 0..start {
            cursor.step();
        }
        cursor
    }

    /// Index of the term the next call to `next` yields.
    pub fn peek_index(&self) -> i64 {
        self.index
    }

    fn step(&mut self) {
        let next = BigInt::from(self.params.p) * &self.curr
            + BigInt::from(self.params.q) * &self.prev;
        self.prev = std::mem::replace(&mut self.curr, next);
        self.index += 1;
    }
}

impl Iterator for TermCursor {
    type Item = SequenceTerm;

    fn next(&mut self) -> Option<SequenceTerm> {
        let term = SequenceTerm {
            index: self.index,
            value: self.curr.clone(),
        };
        self.step();
        Some(term)
    }
}

/// Embeds `U_k` into `Q(sqrt(D))` as a rational element.
pub fn term_elem(params: &SequenceParams, n: i64) -> Result<QuadElem, SequenceError> {
    Ok(params.field().big(seq_term(params, n)?))
}

/// `1 / U_k^s` as an exact rational; `U_k` must be positive.
pub(crate) fn recip_power(value: &BigInt, s: u32) -> BigRational {
    debug_assert!(value.is_positive());
    BigRational::new(BigInt::one(), num_traits::Pow::pow(value, s))
}
