//! Small helpers on top of [`BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Floor toward negative infinity, as a [`BigInt`].
///
/// `BigRational::to_integer` truncates toward zero, which is the wrong
/// convention for the negative inner floors in the Pell `s = 3` identity.
pub fn floor_to_int(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

/// Render `r` as a plain decimal string with `digits` fractional digits,
/// truncated toward zero. Intended for human-readable annotations only; the
/// exact fraction stays authoritative.
pub fn decimal_string(r: &BigRational, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let abs = r.abs();
    let int_part = abs.trunc().to_integer();
    let frac = &abs - abs.trunc();
    let scale = BigInt::from(10u8).pow(digits as u32);
    let scaled = (frac * BigRational::from_integer(scale)).trunc().to_integer();
    let mut frac_digits = scaled.to_string();
    while frac_digits.len() < digits {
        frac_digits.insert(0, '0');
    }
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_digits}")
    }
}

/// Rational approximation of `sqrt(d)` from below, with error `< 10^-digits`:
/// `isqrt(d * 10^(2*digits)) / 10^digits`.
pub fn sqrt_lower_approx(d: u64, digits: usize) -> BigRational {
    let scale = BigInt::from(10u8).pow(digits as u32);
    let scaled = BigInt::from(d) * &scale * &scale;
    BigRational::new(scaled.sqrt(), scale)
}

/// `r1/r2` as a rational, panicking on a zero denominator.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer embedded as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// True if `r` is an integer.
pub fn is_integer(r: &BigRational) -> bool {
    r.is_integer() || r.is_zero()
}
