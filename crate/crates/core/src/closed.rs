//! Closed-form assembly of hyperharmonic series with reciprocal binomial
//! coefficients.
//!
//! Everything reduces, through partial fractions and the hyperharmonic
//! decomposition table, to classical Euler sums, zeta values and finite
//! boundary sums of (alternating) harmonic numbers. Negative orders route
//! through the exact power-sum closed form, alternating variants through the
//! alternating boundary sums.

use serde::Serialize;

use crate::approx::Approx;
use crate::constants::{zeta, zeta_alt};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::euler::Sign;
use crate::exact::bernoulli_plus;
use crate::rational::{alt_sign, binomial, rat_int, rat_pow, Rat};
use crate::sequences::{coeff_table, harmonic, harmonic_alt};

/// Descriptor of one target series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SumKind {
    Linear { p: u32, s: u32 },
    Quadratic { p1: u32, s1: u32, p2: u32, s2: u32 },
}

/// One hyperharmonic series with a reciprocal binomial weight:
/// numerator `H_n^(p,s)` (or a product of two), denominator
/// `n^m C(n+k, k)`, optionally with the alternating weight `(-1)^(n+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SumSpec {
    #[serde(flatten)]
    pub kind: SumKind,
    pub alternating: bool,
    pub m: u32,
    pub k: u32,
}

impl SumSpec {
    pub fn linear(p: u32, s: u32, m: u32, k: u32, alternating: bool) -> SumSpec {
        SumSpec {
            kind: SumKind::Linear { p, s },
            alternating,
            m,
            k,
        }
    }

    pub fn quadratic(
        p1: u32,
        s1: u32,
        p2: u32,
        s2: u32,
        m: u32,
        k: u32,
        alternating: bool,
    ) -> SumSpec {
        SumSpec {
            kind: SumKind::Quadratic { p1, s1, p2, s2 },
            alternating,
            m,
            k,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            SumKind::Linear { p, s } => {
                if p < 1 || s < 1 || self.m < 1 || self.k < 1 {
                    return Err(Error::Hypothesis(
                        "linear series requires p, s, m, k >= 1".into(),
                    ));
                }
                if self.m < s {
                    return Err(Error::Hypothesis(format!(
                        "linear series requires m >= s (got m = {}, s = {s})",
                        self.m
                    )));
                }
            }
            SumKind::Quadratic { p1, s1, p2, s2 } => {
                if p1 < 1 || s1 < 1 || p2 < 1 || s2 < 1 || self.m < 1 || self.k < 1 {
                    return Err(Error::Hypothesis(
                        "quadratic series requires p1, s1, p2, s2, m, k >= 1".into(),
                    ));
                }
                if self.m + 1 < s1 + s2 {
                    return Err(Error::Hypothesis(format!(
                        "quadratic series requires m >= s1 + s2 - 1 (got m = {}, s1 = {s1}, s2 = {s2})",
                        self.m
                    )));
                }
            }
        }
        Ok(())
    }

    /// Short deterministic identifier for reports.
    pub fn id(&self) -> String {
        match self.kind {
            SumKind::Linear { p, s } => format!(
                "{}linear(p={p},s={s},m={},k={})",
                if self.alternating { "alt-" } else { "" },
                self.m,
                self.k
            ),
            SumKind::Quadratic { p1, s1, p2, s2 } => format!(
                "{}quadratic(p1={p1},s1={s1},p2={p2},s2={s2},m={},k={})",
                if self.alternating { "alt-" } else { "" },
                self.m,
                self.k
            ),
        }
    }
}

/// Partial-fraction weights of the reciprocal binomial coefficient:
/// `1/C(n+k,k) = sum_{r=1..k} w_r / (n+r)` with `w_r = (-1)^(r+1) r C(k,r)`.
pub fn reciprocal_binomial_weights(k: u32) -> Vec<(u32, Rat)> {
    assert!(k >= 1);
    (1..=k)
        .map(|r| {
            let w = alt_sign(r as i64 + 1)
                * rat_int(r as i64)
                * Rat::from_integer(binomial(k as u64, r as i64));
            (r, w)
        })
        .collect()
}

fn sign_i(k: i64) -> Approx {
    Approx::from_i64(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn recip_r_pow(r: u32, e: u32) -> Rat {
    rat_int(1) / rat_pow(&rat_int(r as i64), e)
}

impl Engine {
    /// `sum_n a H_n^(s) / (n (n+a))`: zeta(s+1) plus finite boundary sums.
    pub fn linear_base_sum(&self, s: u32, a: u32) -> Result<Approx> {
        if s < 1 || a < 1 {
            return Err(Error::Hypothesis(
                "the base linear sum requires s >= 1 and a >= 1".into(),
            ));
        }
        let mut acc = zeta(s as i64 + 1)?;
        for j in 1..=(a as u64 - 1) {
            let c = alt_sign(s as i64 + 1) * harmonic(j, 1) / rat_pow(&rat_int(j as i64), s);
            acc = acc + Approx::from_rat(&c);
        }
        for i in 2..=s {
            let h = harmonic(a as u64 - 1, (s - i + 1) as i32);
            acc = acc + zeta(i as i64)?.scale_rat(&(alt_sign((s - i) as i64) * h));
        }
        Ok(acc)
    }

    /// Alternating boundary sum `sum_n (-1)^(n+1) H_n^(p) / (n+r)`.
    pub fn shifted_linear_boundary(&self, p: u32, r: u32) -> Result<Approx> {
        if p < 1 || r < 1 {
            return Err(Error::Hypothesis(
                "the alternating boundary sum requires p >= 1 and r >= 1".into(),
            ));
        }
        let s_p1 = self.euler.linear(p, 1, Sign::Plus, Sign::Minus)?;
        let mut acc = sign_i(r as i64) * s_p1 + sign_i(r as i64 + 1) * zeta_alt(p as i64 + 1)?;
        for j in 1..=p {
            let hbar = harmonic_alt(r as u64 - 1, (p - j + 1) as i32);
            let coeff = alt_sign((p - j) as i64 + r as i64) * hbar;
            acc = acc + zeta_alt(j as i64)?.scale_rat(&coeff);
        }
        let hp = harmonic(r as u64 - 1, p as i32);
        acc = acc + zeta_alt(1)?.scale_rat(&(alt_sign(p as i64 + r as i64 + 1) * hp));
        let mut boundary = Rat::from_integer(0.into());
        for n in 1..=(r as u64 - 1) {
            boundary += harmonic_alt(n, 1) / rat_pow(&rat_int(n as i64), p);
        }
        acc = acc + Approx::from_rat(&(alt_sign(p as i64 + r as i64) * boundary));
        Ok(acc)
    }

    /// Shifted linear sum `sum_n (+-1)^(n+1)? H_n^(p) / (n^m (n+r))` with the
    /// order dispatching between the positive branch (Euler sums) and the
    /// power-sum branch (zeta values only). `p` may be any integer.
    pub fn shifted_linear_sum(&self, p: i64, m: u32, r: u32, alt: bool) -> Result<Approx> {
        if r < 1 {
            return Err(Error::Hypothesis("the shifted sum requires r >= 1".into()));
        }
        let key = (p, m, r, alt);
        if let Some(v) = self.s_cache.read().unwrap().get(&key) {
            return Ok(*v);
        }
        let v = self.shifted_linear_sum_uncached(p, m, r, alt)?;
        self.s_cache.write().unwrap().insert(key, v);
        Ok(v)
    }

    fn shifted_linear_sum_uncached(&self, p: i64, m: u32, r: u32, alt: bool) -> Result<Approx> {
        if p >= 1 {
            let p = p as u32;
            if !alt {
                if m < 1 {
                    return Err(Error::Hypothesis(
                        "the non-alternating shifted sum with positive order requires m >= 1"
                            .into(),
                    ));
                }
                let mut acc = Approx::zero();
                for i in 2..=m {
                    let c = alt_sign((m - i) as i64) * recip_r_pow(r, m - i + 1);
                    acc = acc
                        + self
                            .euler
                            .linear(p, i, Sign::Plus, Sign::Plus)?
                            .scale_rat(&c);
                }
                let c = alt_sign(m as i64 + 1) * recip_r_pow(r, m);
                return Ok(acc + self.linear_base_sum(p, r)?.scale_rat(&c));
            }
            if m == 0 {
                return self.shifted_linear_boundary(p, r);
            }
            let mut acc = Approx::zero();
            for i in 1..=m {
                let c = alt_sign((m - i) as i64) * recip_r_pow(r, m - i + 1);
                acc = acc
                    + self
                        .euler
                        .linear(p, i, Sign::Plus, Sign::Minus)?
                        .scale_rat(&c);
            }
            let c = alt_sign(m as i64) * recip_r_pow(r, m);
            return Ok(acc + self.shifted_linear_boundary(p, r)?.scale_rat(&c));
        }

        // Power-sum branch: the numerator is an exact polynomial in n.
        let pt = (-p) as u32;
        if !alt {
            if m < pt + 2 {
                return Err(Error::Hypothesis(format!(
                    "the non-alternating shifted sum with power-sum order p = {p} requires m >= {} (got m = {m})",
                    pt + 2
                )));
            }
            let mut acc = Approx::zero();
            for l in 0..=pt {
                let coeff = Rat::from_integer(binomial(pt as u64 + 1, l as i64))
                    * bernoulli_plus(l)
                    / rat_int(pt as i64 + 1);
                let t = m - pt - 1 + l;
                let mut inner = Approx::zero();
                for i in 2..=t {
                    let c = alt_sign((t - i) as i64) * recip_r_pow(r, t - i + 1);
                    inner = inner + zeta(i as i64)?.scale_rat(&c);
                }
                let h_r = harmonic(r as u64, 1);
                inner =
                    inner + Approx::from_rat(&(alt_sign(t as i64 + 1) * recip_r_pow(r, t) * h_r));
                acc = acc + inner.scale_rat(&coeff);
            }
            return Ok(acc);
        }
        if m < pt + 1 {
            return Err(Error::Hypothesis(format!(
                "the alternating shifted sum with power-sum order p = {p} requires m >= {} (got m = {m})",
                pt + 1
            )));
        }
        let mut acc = Approx::zero();
        for l in 0..=pt {
            let coeff = Rat::from_integer(binomial(pt as u64 + 1, l as i64)) * bernoulli_plus(l)
                / rat_int(pt as i64 + 1);
            let t = m - pt - 1 + l;
            let mut inner = Approx::zero();
            for i in 1..=t {
                let c = alt_sign((t - i) as i64) * recip_r_pow(r, t - i + 1);
                inner = inner + zeta_alt(i as i64)?.scale_rat(&c);
            }
            let hbar_r = harmonic_alt(r as u64, 1);
            let tail = zeta_alt(1)? - Approx::from_rat(&hbar_r);
            inner = inner + tail.scale_rat(&(alt_sign(t as i64 + r as i64) * recip_r_pow(r, t)));
            acc = acc + inner.scale_rat(&coeff);
        }
        Ok(acc)
    }

    /// `sum_n r H_n^(p1) H_n^(p2) / (n (n+r))`.
    pub fn quadratic_base_sum(&self, p1: u32, p2: u32, r: u32) -> Result<Approx> {
        if p1 < 1 || p2 < 1 || r < 1 {
            return Err(Error::Hypothesis(
                "the quadratic base sum requires p1, p2, r >= 1".into(),
            ));
        }
        let mut acc = self.euler.linear(p1, p2 + 1, Sign::Plus, Sign::Plus)?
            + self.euler.linear(p2, p1 + 1, Sign::Plus, Sign::Plus)?
            - zeta((p1 + p2) as i64 + 1)?;
        for b in 1..=(r - 1) {
            acc = acc + self.shifted_linear_sum(p1 as i64, p2, b, false)?;
            acc = acc + self.shifted_linear_sum(p2 as i64, p1, b, false)?;
            acc = acc - self.shifted_linear_sum(0, p1 + p2 + 1, b, false)?;
        }
        Ok(acc)
    }

    /// Alternating quadratic boundary sum
    /// `sum_n (-1)^(n+1) H_n^(p1) H_n^(p2) / (n+r)`.
    pub fn shifted_quadratic_boundary(&self, p1: u32, p2: u32, r: u32) -> Result<Approx> {
        if p1 < 1 || p2 < 1 || r < 1 {
            return Err(Error::Hypothesis(
                "the alternating quadratic boundary sum requires p1, p2, r >= 1".into(),
            ));
        }
        let base = self.euler.quadratic(p1, p2, 1, Sign::Minus)?
            - self.euler.linear(p1, p2 + 1, Sign::Plus, Sign::Minus)?
            - self.euler.linear(p2, p1 + 1, Sign::Plus, Sign::Minus)?
            + zeta_alt((p1 + p2) as i64 + 1)?;
        let mut acc = sign_i(r as i64) * base;
        for j in 1..=(r - 1) {
            let s_pair = self.shifted_linear_sum(p1 as i64, p2, j, true)?
                + self.shifted_linear_sum(p2 as i64, p1, j, true)?;
            acc = acc + sign_i(r as i64 - 1 - j as i64) * s_pair;
            let s0 = self.shifted_linear_sum(0, p1 + p2 + 1, j, true)?;
            acc = acc + sign_i(r as i64 - j as i64) * s0;
        }
        Ok(acc)
    }

    /// Shifted quadratic sum
    /// `sum_n (+-1)^(n+1)? H_n^(p1) H_n^(p2) / (n^m (n+r))`, orders of either
    /// sign. Negative orders expand through power sums into shifted linear
    /// sums.
    pub fn shifted_quadratic_sum(
        &self,
        p1: i64,
        p2: i64,
        m: u32,
        r: u32,
        alt: bool,
    ) -> Result<Approx> {
        if r < 1 {
            return Err(Error::Hypothesis("the shifted sum requires r >= 1".into()));
        }
        let (p1, p2) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let key = (p1, p2, m, r, alt);
        if let Some(v) = self.t_cache.read().unwrap().get(&key) {
            return Ok(*v);
        }
        let v = self.shifted_quadratic_sum_uncached(p1, p2, m, r, alt)?;
        self.t_cache.write().unwrap().insert(key, v);
        Ok(v)
    }

    fn shifted_quadratic_sum_uncached(
        &self,
        p1: i64,
        p2: i64,
        m: u32,
        r: u32,
        alt: bool,
    ) -> Result<Approx> {
        debug_assert!(p1 <= p2);
        if p1 >= 1 {
            // Both orders positive.
            let (p1, p2) = (p1 as u32, p2 as u32);
            if !alt {
                if m < 1 {
                    return Err(Error::Hypothesis(
                        "the non-alternating shifted quadratic sum requires m >= 1".into(),
                    ));
                }
                let mut acc = Approx::zero();
                for i in 2..=m {
                    let c = alt_sign((m - i) as i64) * recip_r_pow(r, m - i + 1);
                    acc = acc + self.euler.quadratic(p1, p2, i, Sign::Plus)?.scale_rat(&c);
                }
                let c = alt_sign(m as i64 + 1) * recip_r_pow(r, m);
                return Ok(acc + self.quadratic_base_sum(p1, p2, r)?.scale_rat(&c));
            }
            if m == 0 {
                return self.shifted_quadratic_boundary(p1, p2, r);
            }
            let mut acc = Approx::zero();
            for i in 1..=m {
                let c = alt_sign((m - i) as i64) * recip_r_pow(r, m - i + 1);
                acc = acc + self.euler.quadratic(p1, p2, i, Sign::Minus)?.scale_rat(&c);
            }
            let c = alt_sign(m as i64) * recip_r_pow(r, m);
            return Ok(acc + self.shifted_quadratic_boundary(p1, p2, r)?.scale_rat(&c));
        }

        if p2 >= 1 {
            // Mixed signs: expand the power-sum factor.
            let pt = (-p1) as u32;
            let need = pt + if alt { 1 } else { 2 };
            if m < need {
                return Err(Error::Hypothesis(format!(
                    "the shifted quadratic sum with power-sum order p = {p1} requires m >= {need} (got m = {m})"
                )));
            }
            let mut acc = Approx::zero();
            for l in 0..=pt {
                let coeff = Rat::from_integer(binomial(pt as u64 + 1, l as i64))
                    * bernoulli_plus(l)
                    / rat_int(pt as i64 + 1);
                let inner = self.shifted_linear_sum(p2, m - pt - 1 + l, r, alt)?;
                acc = acc + inner.scale_rat(&coeff);
            }
            return Ok(acc);
        }

        // Both orders are power sums.
        let (pt1, pt2) = ((-p1) as u32, (-p2) as u32);
        let need = pt1 + pt2 + if alt { 2 } else { 3 };
        if m < need {
            return Err(Error::Hypothesis(format!(
                "the shifted quadratic sum with power-sum orders p1 = {p1}, p2 = {p2} requires m >= {need} (got m = {m})"
            )));
        }
        let mut acc = Approx::zero();
        for l1 in 0..=pt1 {
            for l2 in 0..=pt2 {
                let coeff = Rat::from_integer(binomial(pt1 as u64 + 1, l1 as i64))
                    * Rat::from_integer(binomial(pt2 as u64 + 1, l2 as i64))
                    * bernoulli_plus(l1)
                    * bernoulli_plus(l2)
                    / rat_int((pt1 as i64 + 1) * (pt2 as i64 + 1));
                let inner = self.shifted_linear_sum(0, m - pt1 - pt2 - 1 + l1 + l2, r, alt)?;
                acc = acc + inner.scale_rat(&coeff);
            }
        }
        Ok(acc)
    }

    /// Closed form of a linear hyperharmonic series with a reciprocal
    /// binomial weight: the decomposition table splits the numerator, the
    /// binomial weights split the denominator, and every piece is a shifted
    /// linear sum.
    pub fn theorem_linear(&self, spec: &SumSpec) -> Result<Approx> {
        spec.validate()?;
        let (p, s) = match spec.kind {
            SumKind::Linear { p, s } => (p, s),
            _ => {
                return Err(Error::InvalidArgument(
                    "theorem_linear needs a linear spec".into(),
                ))
            }
        };
        let table = coeff_table(s);
        let weights = reciprocal_binomial_weights(spec.k);
        let mut acc = Approx::zero();
        for (&(l1, l2), a) in table.iter() {
            let mut inner = Approx::zero();
            for (r, w) in &weights {
                let s_val = self.shifted_linear_sum(
                    p as i64 - l1 as i64,
                    spec.m - l2,
                    *r,
                    spec.alternating,
                )?;
                inner = inner + s_val.scale_rat(w);
            }
            acc = acc + inner.scale_rat(a);
        }
        Ok(acc)
    }

    /// Closed form of a quadratic hyperharmonic series with a reciprocal
    /// binomial weight.
    pub fn theorem_quadratic(&self, spec: &SumSpec) -> Result<Approx> {
        spec.validate()?;
        let (p1, s1, p2, s2) = match spec.kind {
            SumKind::Quadratic { p1, s1, p2, s2 } => (p1, s1, p2, s2),
            _ => {
                return Err(Error::InvalidArgument(
                    "theorem_quadratic needs a quadratic spec".into(),
                ))
            }
        };
        let table1 = coeff_table(s1);
        let table2 = coeff_table(s2);
        let weights = reciprocal_binomial_weights(spec.k);
        let mut acc = Approx::zero();
        for (&(l1, t1), a1) in table1.iter() {
            for (&(l2, t2), a2) in table2.iter() {
                let mut inner = Approx::zero();
                for (r, w) in &weights {
                    let t_val = self.shifted_quadratic_sum(
                        p1 as i64 - l1 as i64,
                        p2 as i64 - l2 as i64,
                        spec.m - t1 - t2,
                        *r,
                        spec.alternating,
                    )?;
                    inner = inner + t_val.scale_rat(w);
                }
                acc = acc + inner.scale_rat(&(a1 * a2));
            }
        }
        Ok(acc)
    }

    /// Dispatch on the spec kind.
    pub fn theorem_value(&self, spec: &SumSpec) -> Result<Approx> {
        match spec.kind {
            SumKind::Linear { .. } => self.theorem_linear(spec),
            SumKind::Quadratic { .. } => self.theorem_quadratic(spec),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::{dd_from_rat, ln2, DD};
    use crate::rational::rat;

    fn engine() -> Engine {
        let cfg = crate::config::EngineConfig {
            euler_truncation: 20_000,
            ..Default::default()
        };
        Engine::new(cfg).unwrap()
    }

    #[test]
    fn binomial_weight_examples() {
        assert_eq!(reciprocal_binomial_weights(1), vec![(1, rat_int(1))]);
        assert_eq!(
            reciprocal_binomial_weights(2),
            vec![(1, rat_int(2)), (2, rat_int(-2))]
        );
    }

    #[test]
    fn binomial_weight_identity_exact() {
        for k in 1..=12u32 {
            let weights = reciprocal_binomial_weights(k);
            for n in 1..=100u64 {
                let mut acc = Rat::from_integer(0.into());
                for (r, w) in &weights {
                    acc += w / rat_int(n as i64 + *r as i64);
                }
                acc *= Rat::from_integer(binomial(n + k as u64, k as i64));
                assert_eq!(acc, rat_int(1), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn base_sum_examples() {
        let e = engine();
        // a = 1 collapses to zeta(s+1).
        for s in 1..=4u32 {
            let v = e.linear_base_sum(s, 1).unwrap();
            let z = zeta(s as i64 + 1).unwrap();
            assert!(v.abs_diff(z) < 1e-25);
        }
        // s=1, a=2: zeta(2) + 1.
        let v = e.linear_base_sum(1, 2).unwrap();
        let want = zeta(2).unwrap() + Approx::from_i64(1);
        assert!(v.abs_diff(want) < 1e-25);
        // s=2, a=2: zeta(3) - 1 + zeta(2); checked against direct summation
        // of 2 H_n^(2) / (n(n+2)) in the oracle tests.
        let v22 = e.linear_base_sum(2, 2).unwrap();
        let want22 = zeta(3).unwrap() + zeta(2).unwrap() - Approx::from_i64(1);
        assert!(v22.abs_diff(want22) < 1e-25);
    }

    #[test]
    fn base_sum_against_brute_force() {
        let e = engine();
        for (s, a) in [(1u32, 2u32), (2, 2), (2, 3), (3, 2), (1, 4)] {
            let v = e.linear_base_sum(s, a).unwrap();
            let mut direct = DD::ZERO;
            let mut h = DD::ZERO;
            for n in 1..=400_000u64 {
                h += DD::from_i64(n as i64).powi(-(s as i32));
                let nn = DD::from_i64(n as i64);
                direct += DD::from_i64(a as i64) * h / (nn * (nn + DD::from_i64(a as i64)));
            }
            // Tail ~ a (zeta(s) or ln n) / n; allow a generous bracket.
            let diff = (v.value - direct).to_f64().abs();
            assert!(diff < 2e-4 * a as f64, "s={s} a={a} diff={diff:e}");
        }
    }

    #[test]
    fn shifted_linear_examples() {
        let e = engine();
        // S(1,2,1,1,0) = 2 zeta(3) - zeta(2)
        let v = e.shifted_linear_sum(1, 2, 1, false).unwrap();
        let want = zeta(3).unwrap() * Approx::from_i64(2) - zeta(2).unwrap();
        assert!(v.abs_diff(want) <= v.err + want.err + 1e-20);
        // S(0,3,1,1,0) = sum 1/(n^2 (n+1)) = zeta(2) - 1
        let v0 = e.shifted_linear_sum(0, 3, 1, false).unwrap();
        let want0 = zeta(2).unwrap() - Approx::from_i64(1);
        assert!(v0.abs_diff(want0) <= 1e-25);
    }

    #[test]
    fn shifted_linear_alt_m1() {
        // S(1,1,1,1,1) = sum (-1)^(n+1) H_n/(n(n+1)) = 2 S^{+,-}_{1,1} - etabar(2),
        // numerically 0.3420139... (= zeta(2) - ln^2 2 - (pi^2/12 - ...)).
        let e = engine();
        let v = e.shifted_linear_sum(1, 1, 1, true).unwrap();
        let s11 = e.euler().linear(1, 1, Sign::Plus, Sign::Minus).unwrap();
        let want = s11 * Approx::from_i64(2) - zeta_alt(2).unwrap();
        assert!(v.abs_diff(want) <= v.err + want.err + 1e-22);
        // Direct value: zeta(2)/2 - ln^2 2/2 doubled minus pi^2/12 => 0.34201...
        assert!((v.to_f64() - 0.342014).abs() < 1e-5);
    }

    #[test]
    fn boundary_sum_log2_value() {
        // sum (-1)^(n+1) H_n/(n+1) = ln^2(2)/2
        let e = engine();
        let v = e.shifted_linear_boundary(1, 1).unwrap();
        let want = (ln2() * ln2()).scale_pow2(-1);
        assert!(
            (v.value - want).to_f64().abs() <= v.err + 1e-25,
            "diff {:e}",
            (v.value - want).to_f64().abs()
        );
    }

    #[test]
    fn boundary_sum_structure() {
        let e = engine();
        // r = 1 base case: -S^{+,-}_{p,1} + etabar(p+1).
        for p in 1..=3u32 {
            let v = e.shifted_linear_boundary(p, 1).unwrap();
            let want = zeta_alt(p as i64 + 1).unwrap()
                - e.euler().linear(p, 1, Sign::Plus, Sign::Minus).unwrap();
            assert!(v.abs_diff(want) < 1e-24);
        }
    }

    #[test]
    fn boundary_sum_against_brute_force() {
        let e = engine();
        for (p, r) in [(1u32, 3u32), (2, 2), (3, 4)] {
            let v = e.shifted_linear_boundary(p, r).unwrap();
            let direct = crate::accel::alternating_sum(
                {
                    let mut h = DD::ZERO;
                    move |n| {
                        h += DD::from_i64(n as i64).powi(-(p as i32));
                        h / DD::from_i64(n as i64 + r as i64)
                    }
                },
                crate::accel::AltOptions::default(),
            );
            assert!(
                v.abs_diff(direct) <= v.err + direct.err + 1e-20,
                "p={p} r={r}: {:e}",
                v.abs_diff(direct)
            );
        }
    }

    #[test]
    fn quadratic_base_examples() {
        let e = engine();
        // r=1: 2 S_{1,2} - zeta(3) = 3 zeta(3)
        let v = e.quadratic_base_sum(1, 1, 1).unwrap();
        let want = zeta(3).unwrap() * Approx::from_i64(3);
        assert!(
            v.abs_diff(want) <= v.err + want.err + 1e-18,
            "diff={:e}",
            v.abs_diff(want)
        );
        // structure at r=1 for (1,2)
        let v12 = e.quadratic_base_sum(1, 2, 1).unwrap();
        let want12 = e.euler().linear(1, 3, Sign::Plus, Sign::Plus).unwrap()
            + e.euler().linear(2, 2, Sign::Plus, Sign::Plus).unwrap()
            - zeta(4).unwrap();
        assert!(v12.abs_diff(want12) < 1e-24);
    }

    #[test]
    fn quadratic_boundary_symmetry() {
        let e = engine();
        let a = e.shifted_quadratic_boundary(2, 1, 1).unwrap();
        let b = e.shifted_quadratic_boundary(1, 2, 1).unwrap();
        assert!(a.abs_diff(b) < 1e-28);
    }

    #[test]
    fn quadratic_boundary_base_structure() {
        // r = 1: -S^{+,+,-}_{1,1,1} + 2 S^{+,-}_{1,2} - etabar(3).
        let e = engine();
        let v = e.shifted_quadratic_boundary(1, 1, 1).unwrap();
        let want = -e.euler().quadratic(1, 1, 1, Sign::Minus).unwrap()
            + e.euler()
                .linear(1, 2, Sign::Plus, Sign::Minus)
                .unwrap()
                .scale_rat(&rat_int(2))
            - zeta_alt(3).unwrap();
        assert!(v.abs_diff(want) < 1e-26);
    }

    #[test]
    fn theorem_linear_degenerate_case() {
        // s = 1, k = 1 collapses to a single shifted sum.
        let e = engine();
        let spec = SumSpec::linear(1, 1, 2, 1, false);
        let v = e.theorem_linear(&spec).unwrap();
        let direct = e.shifted_linear_sum(1, 2, 1, false).unwrap();
        assert!(v.abs_diff(direct) < 1e-28);
        let want = zeta(3).unwrap() * Approx::from_i64(2) - zeta(2).unwrap();
        assert!(v.abs_diff(want) <= v.err + want.err + 1e-20);
    }

    #[test]
    fn theorem_linear_s1_matches_weighted_combination() {
        let e = engine();
        for k in 1..=3u32 {
            let spec = SumSpec::linear(2, 1, 3, k, true);
            let v = e.theorem_linear(&spec).unwrap();
            let mut direct = Approx::zero();
            for (r, w) in reciprocal_binomial_weights(k) {
                direct = direct + e.shifted_linear_sum(2, 3, r, true).unwrap().scale_rat(&w);
            }
            assert!(v.abs_diff(direct) < 1e-26, "k={k}");
        }
    }

    #[test]
    fn theorem_quadratic_degenerate_case() {
        let e = engine();
        let spec = SumSpec::quadratic(1, 1, 1, 1, 2, 1, false);
        let v = e.theorem_quadratic(&spec).unwrap();
        let direct = e.shifted_quadratic_sum(1, 1, 2, 1, false).unwrap();
        assert!(v.abs_diff(direct) < 1e-28);
    }

    #[test]
    fn theorem_quadratic_swap_symmetry() {
        let e = engine();
        let a = e
            .theorem_quadratic(&SumSpec::quadratic(1, 2, 2, 1, 4, 2, true))
            .unwrap();
        let b = e
            .theorem_quadratic(&SumSpec::quadratic(2, 1, 1, 2, 4, 2, true))
            .unwrap();
        assert!(a.abs_diff(b) <= a.err + b.err + 1e-24);
    }

    #[test]
    fn hypothesis_errors_name_the_constraint() {
        let e = engine();
        let err = e
            .theorem_linear(&SumSpec::linear(1, 3, 2, 1, false))
            .unwrap_err();
        assert!(err.to_string().contains("m >= s"));
        let err2 = e.shifted_linear_sum(-1, 2, 1, false).unwrap_err();
        assert!(err2.to_string().contains("m >= 3"));
        let err3 = e.shifted_quadratic_sum(-1, -1, 3, 1, false).unwrap_err();
        assert!(err3.to_string().contains("m >= 5"));
    }

    #[test]
    fn spec_validation() {
        assert!(SumSpec::linear(1, 1, 2, 1, false).validate().is_ok());
        assert!(SumSpec::linear(1, 3, 2, 1, false).validate().is_err());
        assert!(SumSpec::quadratic(1, 2, 1, 2, 3, 1, false)
            .validate()
            .is_ok());
        assert!(SumSpec::quadratic(1, 2, 1, 2, 2, 1, false)
            .validate()
            .is_err());
        assert!(SumSpec::linear(0, 1, 2, 1, false).validate().is_err());
    }

    #[test]
    fn mixed_order_quadratic_routes_through_linear() {
        // With one power-sum factor of order 0, H^(0)_n = n cancels a power:
        // T(1, 0, m, r, 0) must equal the linear sum with m-1.
        let e = engine();
        for &(m, r) in &[(3u32, 1u32), (4, 2)] {
            let t = e.shifted_quadratic_sum(1, 0, m, r, false).unwrap();
            let s = e.shifted_linear_sum(1, m - 1, r, false).unwrap();
            assert!(t.abs_diff(s) <= t.err + s.err + 1e-24, "m={m} r={r}");
        }
    }

    #[test]
    fn shifted_quadratic_against_brute_force() {
        let e = engine();
        // Non-alternating: sum H_n^2/(n^2 (n+1)) summed directly in dd with a
        // crude positive-tail bracket.
        let t = e.shifted_quadratic_sum(1, 1, 2, 1, false).unwrap();
        let mut h = DD::ZERO;
        let mut direct = DD::ZERO;
        let n_max = 400_000u64;
        for n in 1..=n_max {
            let nn = DD::from_i64(n as i64);
            h += nn.recip();
            direct += h * h / (nn * nn * (nn + DD::ONE));
        }
        let diff = (t.value - direct).to_f64().abs();
        assert!(diff < 2e-9, "diff {diff:e}"); // tail ~ ln^2 N / (2 N^2)
                                               // Alternating with a shift, exercising the boundary recursion.
        for &(m, r) in &[(1u32, 2u32), (2, 3)] {
            let t = e.shifted_quadratic_sum(1, 1, m, r, true).unwrap();
            let direct = crate::accel::alternating_sum(
                {
                    let mut h = DD::ZERO;
                    move |n| {
                        h += DD::from_i64(n as i64).recip();
                        h * h * DD::from_i64(n as i64).powi(-(m as i32))
                            / DD::from_i64(n as i64 + r as i64)
                    }
                },
                crate::accel::AltOptions::default(),
            );
            assert!(
                t.abs_diff(direct) <= t.err + direct.err + 1e-18,
                "m={m} r={r} diff={:e}",
                t.abs_diff(direct)
            );
        }
    }

    #[test]
    fn quadratic_boundary_against_brute_force() {
        let e = engine();
        for &(p1, p2, r) in &[(1u32, 1u32, 2u32), (2, 1, 3)] {
            let v = e.shifted_quadratic_boundary(p1, p2, r).unwrap();
            let direct = crate::accel::alternating_sum(
                {
                    let mut h1 = DD::ZERO;
                    let mut h2 = DD::ZERO;
                    move |n| {
                        h1 += DD::from_i64(n as i64).powi(-(p1 as i32));
                        h2 = if p1 == p2 {
                            h1
                        } else {
                            h2 + DD::from_i64(n as i64).powi(-(p2 as i32))
                        };
                        h1 * h2 / DD::from_i64(n as i64 + r as i64)
                    }
                },
                crate::accel::AltOptions::default(),
            );
            assert!(
                v.abs_diff(direct) <= v.err + direct.err + 1e-18,
                "p1={p1} p2={p2} r={r} diff={:e}",
                v.abs_diff(direct)
            );
        }
    }

    #[test]
    fn sum_spec_ids() {
        assert_eq!(
            SumSpec::linear(1, 2, 3, 4, false).id(),
            "linear(p=1,s=2,m=3,k=4)"
        );
        assert_eq!(
            SumSpec::quadratic(1, 2, 3, 1, 5, 2, true).id(),
            "alt-quadratic(p1=1,s1=2,p2=3,s2=1,m=5,k=2)"
        );
    }

    #[test]
    fn power_sum_branch_value() {
        // S(-1, 4, 1, 1, 0): the numerator n(n+1)/2 cancels (n+1), leaving
        // (1/2) sum 1/n^3 = zeta(3)/2.
        let e = engine();
        let v = e.shifted_linear_sum(-1, 4, 1, false).unwrap();
        let want = zeta(3).unwrap().scale_rat(&rat(1, 2));
        assert!(v.abs_diff(want) < 1e-24, "diff {:e}", v.abs_diff(want));
        // Alternating power-sum branch: S(-1, 3, 1, 1) =
        // sum (-1)^(n+1) n(n+1)/(2 n^3 (n+1)) = etabar(2)/2.
        let va = e.shifted_linear_sum(-1, 3, 1, true).unwrap();
        let wa = zeta_alt(2).unwrap().scale_rat(&rat(1, 2));
        assert!(va.abs_diff(wa) < 1e-24, "diff {:e}", va.abs_diff(wa));
    }

    #[test]
    fn power_sum_alt_brute_force() {
        // Independent check of the rederived alternating power-sum branch
        // (with alternating zeta inside) against direct summation.
        let e = engine();
        for &(p, m, r) in &[(-1i64, 3u32, 2u32), (-2, 4, 1), (0, 2, 3), (-1, 4, 3)] {
            let v = e.shifted_linear_sum(p, m, r, true).unwrap();
            let direct = crate::accel::alternating_sum(
                |n| {
                    let power_sum = dd_from_rat(&harmonic(n, p as i32));
                    power_sum * DD::from_i64(n as i64).powi(-(m as i32))
                        / DD::from_i64(n as i64 + r as i64)
                },
                crate::accel::AltOptions::default(),
            );
            assert!(
                v.abs_diff(direct) <= v.err + direct.err + 1e-20,
                "p={p} m={m} r={r} diff={:e}",
                v.abs_diff(direct)
            );
        }
    }
}
