//! Exact arithmetic for reciprocal power sums of generalized Fibonacci
//! (Lucas) sequences.
//!
//! The crate evaluates `floor((sum_{k>=n} 1/U_k^s)^-1)` with certified
//! rational enclosures, evaluates the closed-form floor identities for the
//! Fibonacci, Pell and `G_n = U_n(a, -1)` families, and verifies the
//! inequalities behind the cubed closed form exactly in the quadratic field
//! `Q(sqrt(D))`. No floating point is used anywhere: every verdict is an
//! exact sign decision on big rationals.
//!
//! Module map:
//! - [`quadfield`]: exact `x + y*sqrt(D)` arithmetic with total ordering
//! - [`sequence`]: `U_n(p, q)` terms plus an exact Binet cross-check
//! - [`tailsum`]: certified floor evaluator for reciprocal power sums
//! - [`identities`]: the closed-form floor identities
//! - [`proofcheck`]: exact verification of the supporting inequalities

pub mod identities;
pub mod proofcheck;
pub mod quadfield;
pub mod rational;
pub mod sequence;
pub mod tailsum;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
