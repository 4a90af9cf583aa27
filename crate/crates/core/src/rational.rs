//! Exact rational helpers shared by every exact computation in the crate.
//!
//! All exact quantities (harmonic numbers, Bernoulli numbers, decomposition
//! coefficients, binomial weights) live in [`Rat`], a reduced-form
//! arbitrary-precision rational with the sign carried on the numerator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational in canonical reduced form.
///
/// `num_rational` guarantees the invariants we rely on: denominator > 0 and
/// gcd(|numerator|, denominator) = 1 after every operation, so exact equality
/// is structural equality.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer-valued `Rat`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Binomial coefficient `C(n, k)` as an exact integer.
///
/// Out-of-range `k` (negative or above `n`) yields 0 by convention.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rising factorial `t (t+1) ... (t+n-1)`, with the empty product equal to 1.
pub fn pochhammer(t: &Rat, n: u64) -> Rat {
    let mut acc = Rat::one();
    let mut factor = t.clone();
    for _ in 0..n {
        acc *= &factor;
        factor += Rat::one();
    }
    acc
}

/// Integer power `base^exp` of a rational, `exp >= 0`.
pub fn rat_pow(base: &Rat, exp: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// `(-1)^k` as a rational sign.
pub fn alt_sign(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Decimal expansion of a rational to `digits` significant digits.
///
/// Used for deterministic printing of extended-precision values.
pub fn to_decimal_string(x: &Rat, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    // Scale into [10^(digits-1), 10^digits) and round to nearest.
    let ten = BigInt::from(10);
    let mut exp10: i64 = 0;
    let mut scaled = ax.clone();
    let one = Rat::one();
    let ten_r = Rat::from_integer(ten.clone());
    while scaled >= ten_r {
        scaled /= &ten_r;
        exp10 += 1;
    }
    while scaled < one {
        scaled *= &ten_r;
        exp10 -= 1;
    }
    // scaled in [1, 10); take digits of ax * 10^(digits-1-exp10)
    let shift = digits as i64 - 1 - exp10;
    let mut v = ax;
    if shift >= 0 {
        v *= Rat::from_integer(ten.pow(shift as u32));
    } else {
        v /= Rat::from_integer(ten.pow((-shift) as u32));
    }
    let rounded = (v + rat(1, 2)).floor().to_integer();
    let mut mantissa = rounded.to_string();
    // Rounding may push the mantissa to digits+1 places (e.g. 9.99 -> 10.0).
    if mantissa.len() > digits {
        mantissa.truncate(digits);
        exp10 += 1;
    }
    let sign = if neg { "-" } else { "" };
    let (head, tail) = mantissa.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{exp10}")
    } else {
        format!("{sign}{head}.{tail}e{exp10}")
    }
}
