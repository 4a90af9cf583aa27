//! Closed forms for log-power moments and binomial-sum representations of
//! harmonic numbers, with exact-rational checkers.
//!
//! The moment formulas collect their binomial sums into exact rational
//! coefficients of `ln` powers before any floating evaluation, so the heavy
//! alternating cancellation never touches the floating layer.

use std::sync::RwLock;

use num_traits::Zero;
use once_cell::sync::Lazy;

use crate::approx::Approx;
use crate::dd::{dd_from_rat, DD};
use crate::error::{Error, Result};
use crate::rational::{alt_sign, binomial, pochhammer, rat_int, rat_pow, Rat};

/// `integral_0^x y^n ln^m(y) dy` in closed form.
///
/// At `x = 1` this collapses to `m! (-1)^m / (n+1)^(m+1)`.
pub fn log_power_moment(n: u32, m: u32, x: f64) -> Result<Approx> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "log_power_moment needs x in (0, 1], got {x}"
        )));
    }
    let xr = Rat::from_float(x).expect("finite x");
    let ln_x = DD::from_f64(x).ln();
    let lead = rat_pow(&xr, n + 1) / rat_int(n as i64 + 1);
    let mut acc = DD::ZERO;
    for j in 0..=m {
        let c = &lead * pochhammer(&rat_int((m + 1 - j) as i64), j as u64)
            / rat_pow(&rat_int(n as i64 + 1), j)
            * alt_sign(j as i64);
        let log_pow = if m == j {
            DD::ONE
        } else {
            ln_x.powi((m - j) as i32)
        };
        acc += dd_from_rat(&c) * log_pow;
    }
    Ok(Approx::exact_dd(acc).with_terms(m as u64 + 1))
}

/// `integral_x^1 y^n ln^m(1-y) dy` in closed form.
///
/// At `x = 0` this is `(-1)^m m! sum_j C(n,j) (-1)^j / (j+1)^(m+1)`.
pub fn log1m_power_moment(n: u32, m: u32, x: f64) -> Result<Approx> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::InvalidArgument(format!(
            "log1m_power_moment needs x in [0, 1), got {x}"
        )));
    }
    let one_minus = Rat::from_float(1.0 - x).expect("finite x");
    let ln_1mx = if x == 0.0 {
        DD::ZERO
    } else {
        dd_from_rat(&one_minus).ln()
    };
    let mut acc = DD::ZERO;
    for i in 0..=m {
        // Exact rational coefficient of ln^(m-i)(1-x).
        let mut c = Rat::zero();
        for j in 0..=n {
            c += Rat::from_integer(binomial(n as u64, j as i64))
                * alt_sign(j as i64)
                * rat_pow(&one_minus, j + 1)
                / rat_pow(&rat_int(j as i64 + 1), i + 1);
        }
        c *= pochhammer(&rat_int((m + 1 - i) as i64), i as u64) * alt_sign(i as i64);
        let log_pow = if m == i {
            DD::ONE
        } else {
            ln_1mx.powi((m - i) as i32)
        };
        acc += dd_from_rat(&c) * log_pow;
    }
    Ok(Approx::exact_dd(acc).with_terms((n as u64 + 1) * (m as u64 + 1)))
}

/// `sum_{j=0..n} C(n+1, j+1) (-1)^j / (j+1)`, which telescopes to `H_{n+1}`.
pub fn harmonic_binomial_sum(n: u64) -> Rat {
    let mut acc = Rat::zero();
    for j in 0..=n {
        acc += Rat::from_integer(binomial(n + 1, j as i64 + 1)) * alt_sign(j as i64)
            / rat_int(j as i64 + 1);
    }
    acc
}

/// Binomial representation of the classical hyperharmonic number `h_n^(r)`.
pub fn hyperharmonic_binomial_sum(n: u64, r: u32) -> Rat {
    assert!(r >= 1);
    let top = n + r as u64 - 1;
    let mut first = Rat::zero();
    if top >= 1 {
        for j in 0..=(top - 1) {
            first += Rat::from_integer(binomial(top, j as i64 + 1)) * alt_sign(j as i64)
                / rat_int(j as i64 + 1);
        }
    }
    let mut second = Rat::zero();
    if r >= 2 {
        for j in 0..=(r as u64 - 2) {
            second += Rat::from_integer(binomial(r as u64 - 1, j as i64 + 1)) * alt_sign(j as i64)
                / rat_int(j as i64 + 1);
        }
    }
    Rat::from_integer(binomial(top, r as i64 - 1)) * (first - second)
}

// Inner alternating binomial sums reused across the order-2/3 formulas;
// they depend only on their own index, so a shared table keeps the full
// n-sweep quadratic instead of cubic.
static INNER_FIRST: Lazy<RwLock<Vec<Rat>>> = Lazy::new(|| RwLock::new(Vec::new()));
static INNER_SECOND: Lazy<RwLock<Vec<Rat>>> = Lazy::new(|| RwLock::new(Vec::new()));

fn inner_sum(cache: &RwLock<Vec<Rat>>, power: u32, k: u64) -> Rat {
    {
        let values = cache.read().unwrap();
        if let Some(v) = values.get(k as usize) {
            return v.clone();
        }
    }
    let mut values = cache.write().unwrap();
    while values.len() <= k as usize {
        let kk = values.len() as u64;
        let mut acc = Rat::zero();
        for j in 0..=kk {
            acc += Rat::from_integer(binomial(kk + 1, j as i64 + 1)) * alt_sign(j as i64)
                / rat_pow(&rat_int(j as i64 + 1), power);
        }
        values.push(acc);
    }
    values[k as usize].clone()
}

/// Binomial double-sum representation of `H_{n+1}^(2)`.
pub fn harmonic2_binomial_sum(n: u64) -> Rat {
    let mut acc = Rat::zero();
    for j in 0..=n {
        acc += Rat::from_integer(binomial(n + 1, j as i64 + 1)) * alt_sign(j as i64)
            / rat_pow(&rat_int(j as i64 + 1), 2);
    }
    for k in 0..n {
        acc -= inner_sum(&INNER_FIRST, 1, k) / rat_int(k as i64 + 2);
    }
    acc
}

/// Binomial triple-sum representation of `H_{n+1}^(3)`.
///
/// The middle correction divides by `(j+2)^2`; dividing by `(j+1)^2` breaks
/// exactness from `n = 1` on (it reduces to `sum H_i/i^2` instead of the
/// `sum H_i/(i+1)^2` the moment identity produces).
pub fn harmonic3_binomial_sum(n: u64) -> Rat {
    let mut acc = Rat::zero();
    for j in 0..=n {
        acc += Rat::from_integer(binomial(n + 1, j as i64 + 1)) * alt_sign(j as i64)
            / rat_pow(&rat_int(j as i64 + 1), 3);
    }
    for j in 0..n {
        acc -= inner_sum(&INNER_FIRST, 1, j) / rat_pow(&rat_int(j as i64 + 2), 2);
        acc -= inner_sum(&INNER_SECOND, 2, j) / rat_int(j as i64 + 2);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::tanh_sinh;
    use crate::rational::rat;
    use crate::sequences::{harmonic, hyperharmonic};

    #[test]
    fn moment_examples() {
        // integral_0^1 ln y dy = -1
        let v = log_power_moment(0, 1, 1.0).unwrap();
        assert!((v.to_f64() + 1.0).abs() < 1e-30);
        // m = 0: x^(n+1)/(n+1)
        let v2 = log_power_moment(3, 0, 0.5).unwrap();
        assert!((v2.to_f64() - 0.5f64.powi(4) / 4.0).abs() < 1e-17);
        // (1, 2, 1) -> 2!/(2^3) = 1/4
        let v3 = log_power_moment(1, 2, 1.0).unwrap();
        assert!((v3.to_f64() - 0.25).abs() < 1e-30);
    }

    #[test]
    fn moment_at_one_closed_form() {
        for n in 0..=4u32 {
            for m in 0..=4u32 {
                let v = log_power_moment(n, m, 1.0).unwrap();
                let mut fact = 1f64;
                for i in 1..=m {
                    fact *= i as f64;
                }
                let want = fact * if m % 2 == 0 { 1.0 } else { -1.0 }
                    / ((n + 1) as f64).powi(m as i32 + 1);
                assert!((v.to_f64() - want).abs() < 1e-16 * want.abs().max(1.0));
            }
        }
    }

    #[test]
    fn moments_match_quadrature() {
        for n in 0..=4u32 {
            for m in 0..=4u32 {
                for &x in &[0.25f64, 0.5, 1.0] {
                    let closed = log_power_moment(n, m, x).unwrap();
                    let quad = tanh_sinh(
                        &|p| {
                            let l = p.from_left.ln();
                            p.x.powi(n as i32) * l.powi(m as i32)
                        },
                        0.0,
                        x,
                        1e-12,
                    );
                    let diff = closed.abs_diff(quad);
                    assert!(diff < 1e-8, "L({n},{m},{x}): diff {diff:e}");
                }
            }
        }
    }

    #[test]
    fn log1m_moment_examples() {
        // M(n,1,0) = -H_{n+1}/(n+1)
        for n in 0..=6u64 {
            let v = log1m_power_moment(n as u32, 1, 0.0).unwrap();
            let want = -harmonic(n + 1, 1) / rat_int(n as i64 + 1);
            assert!(
                (v.value - dd_from_rat(&want)).to_f64().abs() < 1e-28,
                "n={n}"
            );
        }
        // M(0,m,0) = (-1)^m m!
        for m in 0..=5u32 {
            let v = log1m_power_moment(0, m, 0.0).unwrap();
            let mut want = 1f64;
            for i in 1..=m {
                want *= i as f64;
            }
            if m % 2 == 1 {
                want = -want;
            }
            assert!((v.to_f64() - want).abs() < 1e-12);
        }
        // M(1,1,0) = -3/4
        let v = log1m_power_moment(1, 1, 0.0).unwrap();
        assert!((v.value - dd_from_rat(&rat(-3, 4))).to_f64().abs() < 1e-30);
    }

    #[test]
    fn log1m_moments_match_quadrature() {
        for n in 0..=3u32 {
            for m in 0..=3u32 {
                for &x in &[0.0f64, 0.5] {
                    let closed = log1m_power_moment(n, m, x).unwrap();
                    let quad = tanh_sinh(
                        &|p| {
                            let l = p.from_right.ln(); // ln(1-y) via distance to 1
                            p.x.powi(n as i32) * l.powi(m as i32)
                        },
                        x,
                        1.0,
                        1e-12,
                    );
                    let diff = closed.abs_diff(quad);
                    assert!(diff < 1e-8, "M({n},{m},{x}): diff {diff:e}");
                }
            }
        }
    }

    #[test]
    fn harmonic_binomial_examples() {
        assert_eq!(harmonic_binomial_sum(0), rat_int(1));
        assert_eq!(harmonic_binomial_sum(1), rat(3, 2));
        for n in 0..=40u64 {
            assert_eq!(harmonic_binomial_sum(n), harmonic(n + 1, 1), "n={n}");
        }
    }

    #[test]
    fn hyperharmonic_binomial_examples() {
        assert_eq!(hyperharmonic_binomial_sum(3, 2), rat(13, 3));
        for n in 0..=25u64 {
            for r in 1..=5u32 {
                assert_eq!(
                    hyperharmonic_binomial_sum(n, r),
                    hyperharmonic(n, 1, r),
                    "n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn order2_order3_binomial_sums() {
        assert_eq!(harmonic2_binomial_sum(1), rat(5, 4));
        assert_eq!(harmonic3_binomial_sum(0), rat_int(1));
        assert_eq!(harmonic3_binomial_sum(1), rat(9, 8));
        for n in 0..=30u64 {
            assert_eq!(harmonic2_binomial_sum(n), harmonic(n + 1, 2), "h2 n={n}");
            assert_eq!(harmonic3_binomial_sum(n), harmonic(n + 1, 3), "h3 n={n}");
        }
    }
}
