//! Convergence acceleration for alternating series.
//!
//! The workhorse is the Chebyshev-polynomial scheme of Cohen, Rodriguez
//! Villegas and Zagier: summing `sum_k (-1)^k a_k` with depth `d` costs `d`
//! terms and shrinks the error by roughly `(3 + sqrt 8)^(-d)` for smooth
//! positive `a_k`. We run it after an even plain-sum offset so the sampled
//! tail sequence is deep in its smooth regime, evaluate at two depths, and
//! report the observed depth stability as the error bound.

use num_bigint::BigInt;

use crate::approx::Approx;
use crate::dd::{dd_from_rat, DD, DD_EPSILON};
use crate::rational::Rat;

/// Chebyshev weights divisor: ((3+sqrt 8)^d + (3-sqrt 8)^d) / 2, exactly,
/// via the integer recurrence u_{k+1} = 6 u_k - u_{k-1}.
fn chebyshev_divisor(depth: usize) -> DD {
    let mut prev = BigInt::from(2);
    let mut cur = BigInt::from(6);
    if depth == 0 {
        return dd_from_rat(&Rat::new(prev, BigInt::from(2)));
    }
    for _ in 1..depth {
        let next = BigInt::from(6) * &cur - prev;
        prev = cur;
        cur = next;
    }
    dd_from_rat(&Rat::new(cur, BigInt::from(2)))
}

/// Accelerated value of `sum_{k>=0} (-1)^k a(k)` at one depth.
fn cvz_pass(terms: &[DD], depth: usize) -> DD {
    let d = chebyshev_divisor(depth);
    let mut b = -DD::ONE;
    let mut c = -d;
    let mut s = DD::ZERO;
    for (k, &ak) in terms.iter().take(depth).enumerate() {
        c = b - c;
        s += c * ak;
        let k = k as i64;
        let n = depth as i64;
        b = b * DD::from_i64((k + n) * (k - n))
            / (DD::new(k as f64 + 0.5, 0.0) * DD::from_i64(k + 1));
    }
    s / d
}

/// Options for alternating summation.
#[derive(Clone, Copy, Debug)]
pub struct AltOptions {
    /// Number of plainly-summed leading terms (kept even).
    pub offset: usize,
    /// Acceleration depth; a second pass runs at twice this depth.
    pub depth: usize,
}

impl Default for AltOptions {
    fn default() -> Self {
        AltOptions {
            offset: 128,
            depth: 48,
        }
    }
}

/// Accelerated value of `sum_{k>=0} (-1)^k terms[k]`, run at `depth` and at
/// `2*depth` (which must not exceed `terms.len()`); the pass difference is
/// the error estimate.
pub fn chebyshev_accelerate_tail(terms: &[DD], depth: usize) -> (DD, f64) {
    debug_assert!(terms.len() >= 2 * depth);
    let v1 = cvz_pass(terms, depth);
    let v2 = cvz_pass(terms, 2 * depth);
    let floor = v2.to_f64().abs() * DD_EPSILON * 8.0;
    (v2, (v1 - v2).to_f64().abs().max(floor))
}

/// Sum `sum_{n>=1} (-1)^(n-1) a(n)` for eventually smooth, decreasing,
/// positive `a`.
///
/// The leading `offset` terms are added directly; the tail is accelerated at
/// `depth` and `2*depth`, with the difference between the two passes taken as
/// the error estimate.
pub fn alternating_sum(mut a: impl FnMut(u64) -> DD, opts: AltOptions) -> Approx {
    let offset = opts.offset & !1; // even, so the tail starts on a +1 sign
    let mut head = DD::ZERO;
    for n in 1..=offset as u64 {
        let t = a(n);
        head = if n % 2 == 1 { head + t } else { head - t };
    }
    let needed = 2 * opts.depth;
    let tail_terms: Vec<DD> = (0..needed as u64)
        .map(|k| a(offset as u64 + 1 + k))
        .collect();
    let (accel, accel_err) = chebyshev_accelerate_tail(&tail_terms, opts.depth);
    let value = head + accel;
    let floor = value.to_f64().abs() * DD_EPSILON * (offset as f64 + 8.0);
    let err = accel_err.max(floor);
    Approx::new(value, err).with_terms(offset as u64 + needed as u64)
}

/// Raw partial sums of the alternating series, for bracketing checks.
pub fn alternating_partial_sums(mut a: impl FnMut(u64) -> DD, count: usize) -> Vec<DD> {
    let mut sums = Vec::with_capacity(count);
    let mut acc = DD::ZERO;
    for n in 1..=count as u64 {
        let t = a(n);
        acc = if n % 2 == 1 { acc + t } else { acc - t };
        sums.push(acc);
    }
    sums
}

/// True when `value` lies between every adjacent pair of partial sums past
/// the first index where the term magnitudes decrease.
pub fn brackets_value(partial_sums: &[DD], value: DD) -> bool {
    if partial_sums.len() < 3 {
        return true;
    }
    // Find where |terms| start decreasing: |s_{i+1} - s_i| <= |s_i - s_{i-1}|.
    let mut start = 0;
    for i in 1..partial_sums.len() - 1 {
        let prev = (partial_sums[i] - partial_sums[i - 1]).to_f64().abs();
        let next = (partial_sums[i + 1] - partial_sums[i]).to_f64().abs();
        if next <= prev {
            start = i;
            break;
        }
    }
    partial_sums[start..].windows(2).all(|w| {
        let lo = if w[0] < w[1] { w[0] } else { w[1] };
        let hi = if w[0] < w[1] { w[1] } else { w[0] };
        // Tolerate the rounding floor at the bracket edges.
        let slack = DD_EPSILON * 16.0 * (1.0 + hi.to_f64().abs());
        value.to_f64() >= lo.to_f64() - slack && value.to_f64() <= hi.to_f64() + slack
    })
}
