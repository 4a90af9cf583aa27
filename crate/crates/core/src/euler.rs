//! Numerical evaluation of classical linear and quadratic (alternating)
//! Euler sums, the basis constants every closed form reduces to.
//!
//! Non-alternating sums are truncated at a configurable depth and closed with
//! the Euler-Maclaurin tail built from the harmonic-number expansions in
//! [`crate::tail`]. Outer-alternating sums go through Chebyshev acceleration.
//! Inner-alternating sums are split around the limit of the alternating
//! harmonic numbers, leaving a smooth residual series.

use std::collections::HashMap;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::accel::{alternating_sum, AltOptions};
use crate::approx::Approx;
use crate::constants::{zeta, zeta_alt};
use crate::dd::{DD, DD_EPSILON};
use crate::error::{Error, Result};
use crate::tail::{
    alternating_tail_expansion, expansion_tail, harmonic_expansion, shifted_power_expansion,
    Expansion,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_minus(self) -> bool {
        matches!(self, Sign::Minus)
    }
}

/// Descriptor of one classical Euler sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EulerSumSpec {
    /// `sum_n (+-1)^(n-1) H_n^(p) / n^q`, with the inner sign selecting the
    /// alternating harmonic numerator.
    Linear {
        p: u32,
        q: u32,
        inner: Sign,
        outer: Sign,
    },
    /// `sum_n (+-1)^(n-1) H_n^(p1) H_n^(p2) / n^q`.
    Quadratic {
        p1: u32,
        p2: u32,
        q: u32,
        outer: Sign,
    },
}

impl EulerSumSpec {
    /// Convergence check: non-alternating outer weight needs `q >= 2`,
    /// alternating needs `q >= 1`.
    pub fn validate(&self) -> Result<()> {
        let (q, outer, label) = match *self {
            EulerSumSpec::Linear { p, q, outer, .. } => {
                if p == 0 {
                    return Err(Error::InvalidArgument(
                        "linear Euler sum requires p >= 1".into(),
                    ));
                }
                (q, outer, "linear")
            }
            EulerSumSpec::Quadratic { p1, p2, q, outer } => {
                if p1 == 0 || p2 == 0 {
                    return Err(Error::InvalidArgument(
                        "quadratic Euler sum requires p1, p2 >= 1".into(),
                    ));
                }
                (q, outer, "quadratic")
            }
        };
        let min_q = if outer.is_minus() { 1 } else { 2 };
        if q < min_q {
            return Err(Error::Divergent(format!(
                "{label} Euler sum with outer sign {} requires q >= {min_q}, got q = {q}",
                if outer.is_minus() { "-" } else { "+" },
            )));
        }
        Ok(())
    }

    fn normalized(self) -> EulerSumSpec {
        match self {
            EulerSumSpec::Quadratic { p1, p2, q, outer } if p1 > p2 => EulerSumSpec::Quadratic {
                p1: p2,
                p2: p1,
                q,
                outer,
            },
            other => other,
        }
    }
}

/// Evaluation parameters for Euler sums.
#[derive(Clone, Copy, Debug)]
pub struct EulerParams {
    /// Truncation depth for non-alternating sums.
    pub truncation: u64,
    /// Euler-Maclaurin correction count in tails.
    pub corrections: u32,
    /// Expansion order carried past the leading power.
    pub expansion_order: i32,
    /// Acceleration options for alternating sums.
    pub alt: AltOptions,
}

impl Default for EulerParams {
    fn default() -> Self {
        EulerParams {
            truncation: 100_000,
            corrections: 4,
            expansion_order: 12,
            alt: AltOptions::default(),
        }
    }
}

/// Euler-sum evaluator with a per-instance value cache.
pub struct EulerCtx {
    pub params: EulerParams,
    cache: RwLock<HashMap<EulerSumSpec, Approx>>,
}

#[inline]
fn recip_pow(n: u64, p: u32) -> DD {
    DD::from_i64(n as i64).powi(-(p as i32))
}

impl EulerCtx {
    pub fn new(params: EulerParams) -> Self {
        EulerCtx {
            params,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn eval(&self, spec: EulerSumSpec) -> Result<Approx> {
        spec.validate()?;
        let key = spec.normalized();
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return Ok(*v);
        }
        let v = self.eval_uncached(key)?;
        self.cache.write().unwrap().insert(key, v);
        Ok(v)
    }

    /// `S_{p,q}` with the requested sign pair.
    pub fn linear(&self, p: u32, q: u32, inner: Sign, outer: Sign) -> Result<Approx> {
        self.eval(EulerSumSpec::Linear { p, q, inner, outer })
    }

    /// `S_{p1,p2,q}` quadratic sum with the requested outer sign.
    pub fn quadratic(&self, p1: u32, p2: u32, q: u32, outer: Sign) -> Result<Approx> {
        self.eval(EulerSumSpec::Quadratic { p1, p2, q, outer })
    }

    fn eval_uncached(&self, spec: EulerSumSpec) -> Result<Approx> {
        match spec {
            EulerSumSpec::Linear {
                p,
                q,
                inner: Sign::Plus,
                outer: Sign::Plus,
            } => self.linear_plus_plus(p, q),
            EulerSumSpec::Linear {
                p,
                q,
                inner: Sign::Plus,
                outer: Sign::Minus,
            } => Ok(self.linear_plus_minus(p, q)),
            EulerSumSpec::Linear {
                p,
                q,
                inner: Sign::Minus,
                outer: Sign::Plus,
            } => self.linear_minus_plus(p, q),
            EulerSumSpec::Linear {
                p,
                q,
                inner: Sign::Minus,
                outer: Sign::Minus,
            } => self.linear_minus_minus(p, q),
            EulerSumSpec::Quadratic {
                p1,
                p2,
                q,
                outer: Sign::Plus,
            } => self.quadratic_plus(p1, p2, q),
            EulerSumSpec::Quadratic {
                p1,
                p2,
                q,
                outer: Sign::Minus,
            } => Ok(self.quadratic_minus(p1, p2, q)),
        }
    }

    fn harmonic_exp(&self, p: u32) -> Result<Expansion> {
        let zp = if p >= 2 {
            Some(zeta(p as i64)?.value)
        } else {
            None
        };
        Ok(harmonic_expansion(p, zp, self.params.expansion_order))
    }

    /// Close a truncated positive series: partial sum plus expansion tail,
    /// with the residual between the last true term and the expansion at the
    /// truncation point driving the model error.
    fn close_positive(&self, partial: DD, last_term: DD, term_exp: &Expansion, n: u64) -> Approx {
        let (tail, tail_err) = expansion_tail(term_exp, n, self.params.corrections);
        let model = (last_term - term_exp.eval(n)).to_f64().abs() * n as f64 * 2.0;
        let rounding = partial.to_f64().abs() * DD_EPSILON * n as f64;
        let value = partial + tail;
        Approx::new(value, tail_err + model + rounding).with_terms(n)
    }

    fn linear_plus_plus(&self, p: u32, q: u32) -> Result<Approx> {
        let n_t = self.params.truncation;
        let mut h = DD::ZERO;
        let mut sum = DD::ZERO;
        let mut last = DD::ZERO;
        for n in 1..=n_t {
            h += recip_pow(n, p);
            last = h * recip_pow(n, q);
            sum += last;
        }
        let exp = self.harmonic_exp(p)?.shift_power(q as i32);
        Ok(self.close_positive(sum, last, &exp, n_t))
    }

    fn linear_plus_minus(&self, p: u32, q: u32) -> Approx {
        let mut h = DD::ZERO;
        let mut expect = 1u64;
        alternating_sum(
            move |n| {
                debug_assert_eq!(n, expect, "terms must be consumed in order");
                expect += 1;
                h += recip_pow(n, p);
                h * recip_pow(n, q)
            },
            self.params.alt,
        )
    }

    /// Split around the limit: `Hbar_n = etabar(p) - (-1)^n V_n` with
    /// positive smooth `V`, so the sum becomes
    /// `etabar(p) zeta(q) + sum (-1)^(n-1) V_n / n^q`.
    fn linear_minus_plus(&self, p: u32, q: u32) -> Result<Approx> {
        let zb = zeta_alt(p as i64)?;
        let base = zb * zeta(q as i64)?;
        let zbv = zb.value;
        let mut hbar = DD::ZERO;
        let alt_part = alternating_sum(
            move |n| {
                let t = recip_pow(n, p);
                hbar = if n % 2 == 1 { hbar + t } else { hbar - t };
                let v = if n % 2 == 0 { zbv - hbar } else { hbar - zbv };
                v * recip_pow(n, q)
            },
            self.params.alt,
        );
        Ok(base + alt_part)
    }

    /// Same split with both signs alternating: the residual series is
    /// positive, `etabar(p) etabar(q) + sum V_n / n^q`.
    fn linear_minus_minus(&self, p: u32, q: u32) -> Result<Approx> {
        let zb = zeta_alt(p as i64)?;
        let base = zb * zeta_alt(q as i64)?;
        let zbv = zb.value;
        let n_t = self.params.truncation.min(20_000);
        let mut hbar = DD::ZERO;
        let mut sum = DD::ZERO;
        let mut last = DD::ZERO;
        for n in 1..=n_t {
            let t = recip_pow(n, p);
            hbar = if n % 2 == 1 { hbar + t } else { hbar - t };
            let v = if n % 2 == 0 { zbv - hbar } else { hbar - zbv };
            last = v * recip_pow(n, q);
            sum += last;
        }
        // V_n = W_{n+1}: compose the alternating-tail expansion with n+1.
        let w = alternating_tail_expansion(p, p as i32 + self.params.expansion_order);
        let mut v_exp = Expansion::zero(w.max_order());
        for (&(s, t), &c) in w.terms() {
            debug_assert_eq!(t, 0);
            v_exp = v_exp.add(&shifted_power_expansion(s as u32, 1, w.max_order()).scale(c));
        }
        let term_exp = v_exp.shift_power(q as i32);
        Ok(base + self.close_positive(sum, last, &term_exp, n_t))
    }

    fn quadratic_plus(&self, p1: u32, p2: u32, q: u32) -> Result<Approx> {
        let n_t = self.params.truncation;
        let mut h1 = DD::ZERO;
        let mut h2 = DD::ZERO;
        let mut sum = DD::ZERO;
        let mut last = DD::ZERO;
        for n in 1..=n_t {
            h1 += recip_pow(n, p1);
            h2 = if p2 == p1 { h1 } else { h2 + recip_pow(n, p2) };
            last = h1 * h2 * recip_pow(n, q);
            sum += last;
        }
        let exp = self
            .harmonic_exp(p1)?
            .mul(&self.harmonic_exp(p2)?)
            .shift_power(q as i32);
        Ok(self.close_positive(sum, last, &exp, n_t))
    }

    fn quadratic_minus(&self, p1: u32, p2: u32, q: u32) -> Approx {
        let mut h1 = DD::ZERO;
        let mut h2 = DD::ZERO;
        alternating_sum(
            move |n| {
                h1 += recip_pow(n, p1);
                h2 = if p2 == p1 { h1 } else { h2 + recip_pow(n, p2) };
                h1 * h2 * recip_pow(n, q)
            },
            self.params.alt,
        )
    }
}

impl Default for EulerCtx {
    fn default() -> Self {
        EulerCtx::new(EulerParams::default())
    }
}

/// Both sides of the classical reduction
/// `2 sum H_n / n^m = (m+2) zeta(m+1) - sum_{n=1}^{m-2} zeta(m-n) zeta(n+1)`,
/// computed independently. A standing self-test of the tail model.
pub fn euler_reduction_check(ctx: &EulerCtx, m: u32) -> Result<(Approx, Approx)> {
    if m < 2 {
        return Err(Error::Divergent(
            "the harmonic Euler sum reduction needs m >= 2".into(),
        ));
    }
    let lhs = ctx.linear(1, m, Sign::Plus, Sign::Plus)? * Approx::from_i64(2);
    let mut rhs = zeta(m as i64 + 1)? * Approx::from_i64(m as i64 + 2);
    for n in 1..=(m as i64 - 2) {
        rhs = rhs - zeta(m as i64 - n)? * zeta(n + 1)?;
    }
    Ok((lhs, rhs))
}
