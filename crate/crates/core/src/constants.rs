//! High-precision evaluation of the constants every closed form reduces to:
//! zeta values, alternating zeta values, polylogarithms, the inverse tangent
//! integral and Catalan's constant.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::Signed;
use once_cell::sync::Lazy;

use crate::accel::{alternating_sum, AltOptions};
use crate::approx::Approx;
use crate::dd::{atan_series, dd_from_rat, ln2, pi, DD, DD_EPSILON};
use crate::error::{Error, Result};
use crate::exact::bernoulli_plus;
use crate::rational::{rat_int, Rat};

static ZETA_CACHE: Lazy<RwLock<HashMap<u32, Approx>>> = Lazy::new(|| RwLock::new(HashMap::new()));

fn zeta_uncached(s: u32) -> Approx {
    debug_assert!(s >= 2);
    if s % 2 == 0 {
        // zeta(2n) = (-1)^(n+1) B_{2n} (2 pi)^(2n) / (2 (2n)!)
        let n = s / 2;
        let mut fact = Rat::from_integer(1.into());
        for k in 1..=s as i64 {
            fact *= rat_int(k);
        }
        let coeff = bernoulli_plus(s) / (rat_int(2) * fact)
            * if n % 2 == 1 { rat_int(1) } else { rat_int(-1) };
        let two_pi = pi().scale_pow2(1);
        return Approx::exact_dd(dd_from_rat(&coeff.abs()) * two_pi.powi(s as i32)).with_terms(1);
    }
    // Odd s: accelerated alternating series for eta(s), then
    // zeta(s) = eta(s) / (1 - 2^(1-s)).
    let eta = alternating_sum(
        |n| (DD::ONE / DD::from_i64(n as i64)).powi(s as i32),
        AltOptions::default(),
    );
    let scale = Approx::exact_dd(DD::ONE - DD::ONE.scale_pow2(1 - s as i32));
    eta / scale
}

/// Riemann zeta at an integer argument `s >= 2`.
///
/// Even arguments use the Bernoulli/pi closed form, odd arguments an
/// accelerated alternating series.
pub fn zeta(s: i64) -> Result<Approx> {
    if s <= 1 {
        return Err(Error::Divergent(format!(
            "zeta({s}) diverges; the argument must be at least 2"
        )));
    }
    let s = s as u32;
    if let Some(v) = ZETA_CACHE.read().unwrap().get(&s) {
        return Ok(*v);
    }
    let v = zeta_uncached(s);
    ZETA_CACHE.write().unwrap().insert(s, v);
    Ok(v)
}

/// Alternating zeta at `s >= 1`: `(1 - 2^(1-s)) zeta(s)`, with the `s = 1`
/// value `ln 2`.
pub fn zeta_alt(s: i64) -> Result<Approx> {
    if s <= 0 {
        return Err(Error::Divergent(format!(
            "alternating zeta({s}) requires s >= 1"
        )));
    }
    if s == 1 {
        return Ok(Approx::exact_dd(ln2()).with_terms(1));
    }
    let scale = Approx::exact_dd(DD::ONE - DD::ONE.scale_pow2(1 - s as i32));
    Ok(zeta(s)? * scale)
}

/// Alternating zeta by direct accelerated summation; cross-check route for
/// the scaled form above.
pub fn zeta_alt_direct(s: i64) -> Result<Approx> {
    if s <= 0 {
        return Err(Error::Divergent(format!(
            "alternating zeta({s}) requires s >= 1"
        )));
    }
    Ok(alternating_sum(
        |n| (DD::ONE / DD::from_i64(n as i64)).powi(s as i32),
        AltOptions::default(),
    ))
}

/// Polylogarithm `Li_p(x)` for integer `p >= 1` and `|x| <= 1`.
///
/// Direct power series everywhere inside the disc (the geometric tail bound
/// is the reported error); alternating acceleration on the negative radius;
/// zeta closed forms at the two endpoints. `(p, x) = (1, 1)` diverges.
pub fn polylog(p: i64, x: f64) -> Result<Approx> {
    if p < 1 {
        return Err(Error::InvalidArgument(format!(
            "polylog order must be >= 1, got {p}"
        )));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::InvalidArgument(format!(
            "polylog argument must satisfy |x| <= 1, got {x}"
        )));
    }
    if x == 1.0 {
        if p == 1 {
            return Err(Error::Divergent(
                "polylog(1, 1) is the harmonic series".into(),
            ));
        }
        return zeta(p);
    }
    if x == -1.0 {
        return Ok(-zeta_alt(p)?);
    }
    if x == 0.0 {
        return Ok(Approx::zero());
    }
    if x < -0.5 {
        // Alternating series in |x| with slow geometric decay: accelerate.
        let ax = DD::from_f64(-x);
        return Ok(alternating_sum(
            |n| ax.powi(n as i32) / DD::from_i64(n as i64).powi(p as i32),
            AltOptions::default(),
        ));
    }
    let xd = DD::from_f64(x);
    let ax = x.abs();
    let mut power = DD::ONE;
    let mut sum = DD::ZERO;
    let mut n = 0u64;
    loop {
        n += 1;
        power *= xd;
        sum += power / DD::from_i64(n as i64).powi(p as i32);
        let tail_bound = ax.powi(n as i32 + 1) / ((n as f64 + 1.0).powi(p as i32) * (1.0 - ax));
        if tail_bound <= sum.to_f64().abs() * DD_EPSILON || tail_bound < 1e-45 {
            let err = tail_bound + sum.to_f64().abs() * DD_EPSILON * n as f64;
            return Ok(Approx::new(sum, err).with_terms(n));
        }
        if n > 500_000 {
            let err = tail_bound + sum.to_f64().abs() * DD_EPSILON * n as f64;
            return Ok(Approx::new(sum, err).with_terms(n));
        }
    }
}

/// Inverse tangent integral `Ti_2(x) = sum_{n>=0} (-1)^n x^(2n+1)/(2n+1)^2`
/// for `0 <= x <= 1`.
pub fn ti2(x: f64) -> Result<Approx> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidArgument(format!(
            "ti2 argument must lie in [0, 1], got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(Approx::zero());
    }
    if x == 1.0 {
        return Ok(catalan());
    }
    // Alternating with ratio x^2; bracketing partial sums certify the bound.
    let xd = DD::from_f64(x);
    let x2 = xd * xd;
    let mut power = xd;
    let mut sum = DD::ZERO;
    let mut n = 0u64;
    loop {
        let term = power / DD::from_i64(2 * n as i64 + 1).powi(2);
        sum = if n % 2 == 0 { sum + term } else { sum - term };
        power *= x2;
        n += 1;
        let next = (power / DD::from_i64(2 * n as i64 + 1).powi(2))
            .to_f64()
            .abs();
        if next <= sum.to_f64().abs() * DD_EPSILON || next < 1e-45 {
            return Ok(
                Approx::new(sum, next + sum.to_f64().abs() * DD_EPSILON * n as f64).with_terms(n),
            );
        }
        assert!(n < 1_000_000, "ti2 series stalled");
    }
}

static CATALAN: Lazy<Approx> = Lazy::new(|| {
    alternating_sum(
        |n| DD::ONE / DD::from_i64(2 * n as i64 - 1).powi(2),
        AltOptions::default(),
    )
});

/// Catalan's constant, by acceleration of its defining alternating series.
pub fn catalan() -> Approx {
    *CATALAN
}

/// arctan(x) for |x| <= 1/2, at working precision.
pub fn atan(x: &Rat) -> Approx {
    let xd = dd_from_rat(x);
    assert!(
        xd.to_f64().abs() <= 0.5,
        "atan series only used for small arguments"
    );
    Approx::exact_dd(atan_series(xd))
}
