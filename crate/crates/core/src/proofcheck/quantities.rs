//! The proof quantities as exact elements of `Q(sqrt(a^2 - 4))`.
//!
//! Everything is built verbatim from the closed-form expressions with exact
//! rational coefficients (`6.3` is `63/10`). For the `q = -1` family,
//! `alpha * beta = 1` and `alpha - beta = sqrt(D)` with `D = a^2 - 4`.

use std::fmt;

use num_bigint::BigInt;

use crate::identities::correction_indices;
use crate::quadfield::{QuadElem, QuadField};
use crate::sequence::{seq_term, SequenceParams};

use super::ProofCheckError;

/// Shared state for one parameter `a`: the field, `alpha` and
/// `alpha - beta = sqrt(D)`.
#[derive(Debug, Clone)]
pub struct ProofContext {
    a: i64,
    params: SequenceParams,
    field: QuadField,
    alpha: QuadElem,
    sqrt_d: QuadElem,
}

impl ProofContext {
    pub fn new(a: i64) -> Result<Self, ProofCheckError> {
        if a < 3 {
            return Err(ProofCheckError::InvalidParams(format!(
                "proof checks need a >= 3, got {a}"
            )));
        }
        let params = SequenceParams::g_family(a)?;
        let field = params.field();
        Ok(ProofContext {
            a,
            params,
            field,
            alpha: params.alpha(),
            sqrt_d: field.sqrt_d(),
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn params(&self) -> SequenceParams {
        self.params
    }

    pub fn alpha(&self) -> &QuadElem {
        &self.alpha
    }

    /// `alpha - beta = sqrt(a^2 - 4)`.
    pub fn sqrt_d(&self) -> &QuadElem {
        &self.sqrt_d
    }

    pub fn int(&self, v: i64) -> QuadElem {
        self.field.int(v)
    }

    /// `alpha^e` (binary exponentiation; negative exponents via `beta^|e|`
    /// since `alpha^-1 = beta`).
    pub fn apow(&self, e: i64) -> QuadElem {
        self.alpha.pow(e)
    }

    pub fn g_term(&self, k: i64) -> Result<BigInt, ProofCheckError> {
        Ok(seq_term(&self.params, k)?)
    }

    pub fn g_elem(&self, k: i64) -> Result<QuadElem, ProofCheckError> {
        Ok(self.field.big(self.g_term(k)?))
    }

    /// `G_n^3 - G_{n-1}^3` embedded in the field.
    pub fn g_cubed_diff(&self, n: i64) -> Result<QuadElem, ProofCheckError> {
        let gn = self.g_elem(n)?;
        let gn1 = self.g_elem(n - 1)?;
        Ok(gn.pow(3) - gn1.pow(3))
    }

    /// `lambda_1 = 3(alpha-1)/((alpha-beta)^3 alpha^n) + 4/alpha^(n+3)`.
    pub fn lambda1(&self, n: i64) -> QuadElem {
        let s3 = self.sqrt_d.pow(3);
        self.int(3) * (&self.alpha - &self.int(1)) / (&s3 * &self.apow(n))
            + self.int(4) / self.apow(n + 3)
    }

    /// `lambda_2`, the five-term lower-bound correction; its last
    /// coefficient is the exact fraction `63/10`.
    pub fn lambda2(&self, n: i64) -> QuadElem {
        let s3 = self.sqrt_d.pow(3);
        let a3 = self.apow(3) - self.int(1);
        let a7 = self.apow(7) - self.int(1);
        let a631 = self.apow(6) + self.apow(3) + self.int(1);
        let a5 = self.apow(5) - self.int(1);
        self.int(3) * (&self.alpha - &self.int(1)) / (&s3 * &self.apow(n))
            - &a3 / (&s3 * &self.apow(3 * n))
            - self.int(6) * &self.alpha * &a3 * &a3 / (self.apow(n) * &s3 * &a7)
            - self.int(11) * self.apow(3) * &a3 / (self.apow(3 * n) * &s3 * &a631)
            + self.field.ratio(63, 10) * &self.alpha * a3.pow(3)
                / (self.apow(n) * &s3 * a5.pow(2))
    }

    /// `delta_1`, the eight-term remainder of the upper-bound expansion
    /// (powers `alpha^-n` through `alpha^-9n`).
    pub fn delta1(&self, n: i64) -> QuadElem {
        let s3 = self.sqrt_d.pow(3);
        let a3 = self.apow(3) - self.int(1);
        let a5 = self.apow(5) - self.int(1);
        let a7 = self.apow(7) - self.int(1);
        let a631 = self.apow(6) + self.apow(3) + self.int(1);
        let t1 = self.int(-6) * &self.alpha * &a3 * &a3 / (self.apow(n) * &s3 * &a7);
        let t2 = self.int(-10) * self.apow(3) * &a3 / (self.apow(3 * n) * &s3 * &a631);
        let t3 = self.int(9) * &self.alpha * a3.pow(3) / (self.apow(n) * &s3 * a5.pow(2));
        let t4 = self.int(36) * self.apow(3) * a3.pow(3) / (self.apow(3 * n) * &s3 * &a5 * &a7);
        let t5 = self.int(36) * self.apow(5) * a3.pow(3) / (self.apow(5 * n) * &s3 * a7.pow(2));
        let t6 =
            self.int(60) * self.apow(5) * &a3 * &a3 / (self.apow(5 * n) * &s3 * &a5 * &a631);
        let t7 =
            self.int(120) * self.apow(7) * &a3 * &a3 / (self.apow(7 * n) * &s3 * &a7 * &a631);
        let t8 = self.int(100) * self.apow(9) * &a3 / (self.apow(9 * n) * &s3 * a631.pow(2));
        t1 + t2 + t3 + t4 + t5 + t6 + t7 + t8
    }

    /// `epsilon = 3 alpha^2 (alpha^3-1) / (alpha^2n (alpha^5-1))
    ///          + 6 alpha^4 (alpha^3-1) / (alpha^4n (alpha^7-1))
    ///          + 11 alpha^6 / (alpha^6n (alpha^6+alpha^3+1))`.
    pub fn epsilon(&self, n: i64) -> QuadElem {
        let a3 = self.apow(3) - self.int(1);
        self.int(3) * self.apow(2) * &a3 / (self.apow(2 * n) * (self.apow(5) - self.int(1)))
            + self.int(6) * self.apow(4) * &a3
                / (self.apow(4 * n) * (self.apow(7) - self.int(1)))
            + self.int(11) * self.apow(6)
                / (self.apow(6 * n) * (self.apow(6) + self.apow(3) + self.int(1)))
    }

    /// The tail remainder of the `1/G_k^3` expansion:
    /// `(10 alpha^4k - 15 alpha^2k + 6) / (alpha^7k (alpha^2k - 1)^3)`.
    pub fn remainder_term(&self, k: i64) -> QuadElem {
        self.remainder_term_with(k, 10, -15, 6)
    }

    /// Same with free numerator coefficients, for mutation sensitivity.
    pub(crate) fn remainder_term_with(&self, k: i64, c4: i64, c2: i64, c0: i64) -> QuadElem {
        let numer =
            self.int(c4) * self.apow(4 * k) + self.int(c2) * self.apow(2 * k) + self.int(c0);
        let denom = self.apow(7 * k) * (self.apow(2 * k) - self.int(1)).pow(3);
        numer / denom
    }

    /// `c * alpha^6 / (alpha^6n (alpha^6 + alpha^3 + 1))`, the `R_n` bound
    /// shape for `c = 10` (lower) and `c = 11` (upper).
    pub fn rn_bound(&self, n: i64, c: i64) -> QuadElem {
        self.int(c) * self.apow(6) / (self.apow(6 * n) * (self.apow(6) + self.apow(3) + self.int(1)))
    }

    /// Numerator constant of the mod-5 residue case for `n`:
    /// `alpha^2 + alpha^3` for `n = 0, 1`, `alpha + alpha^4` for `n = 2, 4`,
    /// `1 + alpha^5` for `n = 3 (mod 5)`.
    pub fn mod5_case_numerator(&self, n: i64) -> QuadElem {
        match n.rem_euclid(5) {
            0 | 1 => self.apow(2) + self.apow(3),
            2 | 4 => self.alpha.clone() + self.apow(4),
            _ => self.int(1) + self.apow(5),
        }
    }

    /// The residue constant `c / ((alpha - beta)(alpha^5 - 1))`.
    pub fn mod5_constant(&self, n: i64) -> QuadElem {
        self.mod5_case_numerator(n) / (&self.sqrt_d * &(self.apow(5) - self.int(1)))
    }

    /// `sum G_{n-3-5k}` over the correction indices, embedded in the field.
    pub fn correction_sum(&self, n: i64) -> Result<QuadElem, ProofCheckError> {
        let mut total = BigInt::from(0);
        for idx in correction_indices(n) {
            total += self.g_term(idx)?;
        }
        Ok(self.field.big(total))
    }

    /// The sandwich middle term `3 alpha^(n+2) / ((alpha - beta)(alpha^5 - 1))`.
    ///
    /// Note: no stray `alpha` in the denominator. The printed form carries
    /// one, but expanding `G_n^3 - G_{n-1}^3` exactly forces this shape; the
    /// printed variant misses the true value by an `O(alpha^n)` margin, which
    /// `checks::tests` pins down.
    pub fn sandwich_middle(&self, n: i64) -> QuadElem {
        self.int(3) * self.apow(n + 2) / (&self.sqrt_d * &(self.apow(5) - self.int(1)))
    }

    /// The sandwich bounds
    /// `G_n^3 - G_{n-1}^3 - 3 alpha^(n+2)/((alpha-beta)(alpha^5-1)) + lambda_{2,1}`
    /// as exact field elements `(lower, upper)`.
    pub fn sandwich_bounds(&self, n: i64) -> Result<(QuadElem, QuadElem), ProofCheckError> {
        let base = self.g_cubed_diff(n)? - self.sandwich_middle(n);
        Ok((&base + &self.lambda2(n), &base + &self.lambda1(n)))
    }
}

/// Names for the individual proof quantities, mirroring the proof's symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuantityKind {
    RnLower,
    RnUpper,
    Delta1,
    Lambda1,
    Lambda2,
    Epsilon,
    Mod5Constant,
    SandwichLower,
    SandwichUpper,
}

impl fmt::Display for QuantityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            QuantityKind::RnLower => "R_n_lower",
            QuantityKind::RnUpper => "R_n_upper",
            QuantityKind::Delta1 => "delta1",
            QuantityKind::Lambda1 => "lambda1",
            QuantityKind::Lambda2 => "lambda2",
            QuantityKind::Epsilon => "epsilon",
            QuantityKind::Mod5Constant => "mod5_constant",
            QuantityKind::SandwichLower => "sandwich_lower",
            QuantityKind::SandwichUpper => "sandwich_upper",
        };
        f.write_str(name)
    }
}

/// A named proof quantity evaluated exactly at `(a, n)`.
#[derive(Debug, Clone)]
pub struct ProofQuantity {
    pub kind: QuantityKind,
    pub a: i64,
    pub n: i64,
    pub value: QuadElem,
}

impl ProofQuantity {
    pub fn build(kind: QuantityKind, a: i64, n: i64) -> Result<Self, ProofCheckError> {
        let ctx = ProofContext::new(a)?;
        let value = match kind {
            QuantityKind::RnLower => ctx.rn_bound(n, 10),
            QuantityKind::RnUpper => ctx.rn_bound(n, 11),
            QuantityKind::Delta1 => ctx.delta1(n),
            QuantityKind::Lambda1 => ctx.lambda1(n),
            QuantityKind::Lambda2 => ctx.lambda2(n),
            QuantityKind::Epsilon => ctx.epsilon(n),
            QuantityKind::Mod5Constant => ctx.mod5_constant(n),
            QuantityKind::SandwichLower => ctx.sandwich_bounds(n)?.0,
            QuantityKind::SandwichUpper => ctx.sandwich_bounds(n)?.1,
        };
        Ok(ProofQuantity { kind, a, n, value })
    }
}
