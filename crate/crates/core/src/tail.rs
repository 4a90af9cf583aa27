//! Asymptotic-series tail machinery for slowly convergent positive series.
//!
//! A truncated series is closed by expanding the summand as
//! `sum c_{s,t} ln^t(n) / n^s`, then summing each power-log term past the
//! truncation point with Euler-Maclaurin corrections built from the exact
//! Bernoulli table. Alternating power tails get the analogous expansion with
//! Euler-polynomial weights, which feeds the inner-alternating sums.

use std::collections::BTreeMap;

use crate::dd::{dd_from_rat, euler_gamma, DD, DD_EPSILON};
use crate::exact::bernoulli_plus;
use crate::rational::{pochhammer, rat_int, Rat};

const MAX_LOG_POW: u8 = 4;

/// Truncated expansion `sum_{s,t} c_{s,t} ln^t(n) n^(-s)`, coefficients kept
/// through `n^(-max_s)`.
#[derive(Clone, Debug)]
pub struct Expansion {
    max_s: i32,
    coeffs: BTreeMap<(i32, u8), DD>,
}

impl Expansion {
    pub fn zero(max_s: i32) -> Expansion {
        Expansion {
            max_s,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: DD, max_s: i32) -> Expansion {
        let mut e = Expansion::zero(max_s);
        e.put(0, 0, c);
        e
    }

    pub fn put(&mut self, s: i32, t: u8, c: DD) {
        if s > self.max_s || c.is_zero() {
            return;
        }
        assert!(t <= MAX_LOG_POW);
        let slot = self.coeffs.entry((s, t)).or_insert(DD::ZERO);
        *slot += c;
    }

    pub fn add(&self, other: &Expansion) -> Expansion {
        let mut out = Expansion::zero(self.max_s.min(other.max_s));
        for (&(s, t), &c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.put(s, t, c);
        }
        out
    }

    pub fn mul(&self, other: &Expansion) -> Expansion {
        let mut out = Expansion::zero(self.max_s.min(other.max_s));
        for (&(s1, t1), &c1) in &self.coeffs {
            for (&(s2, t2), &c2) in &other.coeffs {
                if s1 + s2 <= out.max_s && t1 + t2 <= MAX_LOG_POW {
                    out.put(s1 + s2, t1 + t2, c1 * c2);
                }
            }
        }
        out
    }

    /// Multiply by `n^(-q)`.
    pub fn shift_power(&self, q: i32) -> Expansion {
        let mut out = Expansion::zero(self.max_s);
        for (&(s, t), &c) in &self.coeffs {
            out.put(s + q, t, c);
        }
        out
    }

    pub fn scale(&self, c: DD) -> Expansion {
        let mut out = Expansion::zero(self.max_s);
        for (&(s, t), &v) in &self.coeffs {
            out.put(s, t, v * c);
        }
        out
    }

    /// Evaluate at integer argument `n` (uses a high-precision `ln n`).
    pub fn eval(&self, n: u64) -> DD {
        let nd = DD::from_i64(n as i64);
        let ln_n = nd.ln();
        let mut acc = DD::ZERO;
        for (&(s, t), &c) in &self.coeffs {
            acc += c * nd.powi(-s) * ln_n.powi(t as i32);
        }
        acc
    }

    /// Smallest power with a nonzero coefficient.
    pub fn min_power(&self) -> Option<i32> {
        self.coeffs.keys().map(|&(s, _)| s).min()
    }

    /// Iterate `((s, t), c)` terms in deterministic order.
    pub fn terms(&self) -> impl Iterator<Item = (&(i32, u8), &DD)> {
        self.coeffs.iter()
    }

    pub fn max_order(&self) -> i32 {
        self.max_s
    }
}

/// Expansion of `(n+j)^(-a)` in powers of `1/n`, for small integer `j`.
pub fn shifted_power_expansion(a: u32, j: i64, max_s: i32) -> Expansion {
    let mut out = Expansion::zero(max_s);
    let mut coeff = Rat::from_integer(1.into());
    let mut t = 0u32;
    loop {
        let s = a as i32 + t as i32;
        if s > max_s {
            break;
        }
        out.put(s, 0, dd_from_rat(&coeff));
        // next binomial coefficient: C(-a, t+1) j^(t+1)
        coeff = coeff * rat_int(-(a as i64) - t as i64) / rat_int(t as i64 + 1) * rat_int(j);
        t += 1;
    }
    out
}

/// Asymptotic expansion of the generalized harmonic number of order `p >= 1`.
///
/// Order 1 carries `ln n + gamma`; higher orders approach `zeta(p)` with a
/// pure power tail. Coefficients come from the Bernoulli table.
pub fn harmonic_expansion(p: u32, zeta_p: Option<DD>, max_s: i32) -> Expansion {
    assert!(p >= 1);
    let mut e = Expansion::zero(max_s);
    if p == 1 {
        e.put(0, 1, DD::ONE);
        e.put(0, 0, euler_gamma());
        e.put(1, 0, DD::new(0.5, 0.0));
        let mut k = 1u32;
        while 2 * k as i32 <= max_s {
            let c = -bernoulli_plus(2 * k) / rat_int(2 * k as i64);
            e.put(2 * k as i32, 0, dd_from_rat(&c));
            k += 1;
        }
        return e;
    }
    // H_n^(p) = zeta(p) - tail, with tail from Euler-Maclaurin on j^(-p).
    e.put(0, 0, zeta_p.expect("zeta(p) required for p >= 2"));
    e.put(
        p as i32 - 1,
        0,
        dd_from_rat(&(-rat_int(1) / rat_int(p as i64 - 1))),
    );
    e.put(p as i32, 0, DD::new(0.5, 0.0));
    let mut k = 1u32;
    loop {
        let s = p as i32 + 2 * k as i32 - 1;
        if s > max_s {
            break;
        }
        let mut fact = Rat::from_integer(1.into());
        for i in 1..=(2 * k as i64) {
            fact *= rat_int(i);
        }
        let c = -bernoulli_plus(2 * k) / fact * pochhammer(&rat_int(p as i64), 2 * k as u64 - 1);
        e.put(s, 0, dd_from_rat(&c));
        k += 1;
    }
    e
}

/// Expansion of the alternating tail `W_j = sum_{i>=0} (-1)^i (j+i)^(-q)` in
/// powers of `1/j`, via Euler-polynomial values at zero.
pub fn alternating_tail_expansion(q: u32, max_s: i32) -> Expansion {
    let mut e = Expansion::zero(max_s);
    let mut k = 0u32;
    loop {
        let s = q as i32 + k as i32;
        if s > max_s {
            break;
        }
        // E_k(0): 1 at k = 0, else -2 (2^(k+1) - 1) B_{k+1} / (k+1).
        let ek0 = if k == 0 {
            rat_int(1)
        } else {
            -rat_int(2) * (rat_int(2).pow(k as i32 + 1) - rat_int(1)) * bernoulli_plus(k + 1)
                / rat_int(k as i64 + 1)
        };
        if !num_traits::Zero::is_zero(&ek0) {
            let mut fact = Rat::from_integer(1.into());
            for i in 1..=(k as i64) {
                fact *= rat_int(i);
            }
            let sign = if k % 2 == 0 { rat_int(1) } else { rat_int(-1) };
            let c = ek0 / fact * sign * pochhammer(&rat_int(q as i64), k as u64) / rat_int(2);
            e.put(s, 0, dd_from_rat(&c));
        }
        k += 1;
    }
    e
}

fn factorial_rat(n: u32) -> Rat {
    let mut f = Rat::from_integer(1.into());
    for i in 1..=(n as i64) {
        f *= rat_int(i);
    }
    f
}

/// `integral_N^inf x^(-s) ln^t(x) dx` for `s >= 2`.
fn powlog_integral(s: i32, t: u8, n: u64) -> DD {
    let nd = DD::from_i64(n as i64);
    let ln_n = nd.ln();
    let sm1 = DD::from_i64(s as i64 - 1);
    let mut acc = DD::ZERO;
    let mut falling = 1f64; // t! / (t-i)!
    for i in 0..=t {
        acc += DD::from_f64(falling) * ln_n.powi((t - i) as i32) / sm1.powi(i as i32 + 1);
        falling *= (t - i) as f64;
    }
    acc * nd.powi(1 - s)
}

/// One power-log term `x^(-s) ln^t x` and its derivatives, represented by
/// log-polynomial coefficients at fixed power.
fn powlog_derivative_coeffs(s: i32, t: u8, order: u32) -> (i32, Vec<Rat>) {
    // Start with coefficient vector beta for x^(-s) sum_b beta_b ln^b x.
    let mut a = s;
    let mut beta: Vec<Rat> = vec![Rat::from_integer(0.into()); t as usize + 1];
    beta[t as usize] = rat_int(1);
    for _ in 0..order {
        let mut next = vec![Rat::from_integer(0.into()); beta.len()];
        for (b, val) in beta.iter().enumerate() {
            // d/dx [x^(-a) ln^b x] = -a x^(-a-1) ln^b x + b x^(-a-1) ln^(b-1) x
            next[b] += -rat_int(a as i64) * val;
            if b > 0 {
                next[b - 1] += rat_int(b as i64) * val;
            }
        }
        beta = next;
        a += 1;
    }
    (a, beta)
}

fn eval_log_poly(a: i32, beta: &[Rat], n: u64) -> DD {
    let nd = DD::from_i64(n as i64);
    let ln_n = nd.ln();
    let mut acc = DD::ZERO;
    for (b, c) in beta.iter().enumerate() {
        if !num_traits::Zero::is_zero(c) {
            acc += dd_from_rat(c) * ln_n.powi(b as i32);
        }
    }
    acc * nd.powi(-a)
}

/// Tail `sum_{n > N} n^(-s) ln^t n` by Euler-Maclaurin with `corrections`
/// Bernoulli terms. Returns the value and an estimate of the omitted order.
pub fn powlog_tail(s: i32, t: u8, n: u64, corrections: u32) -> (DD, f64) {
    assert!(s >= 2, "power-log tail needs s >= 2, got {s}");
    let mut acc = powlog_integral(s, t, n);
    let (a0, b0) = powlog_derivative_coeffs(s, t, 0);
    acc -= eval_log_poly(a0, &b0, n).scale_pow2(-1);
    for k in 1..=corrections {
        let (a, beta) = powlog_derivative_coeffs(s, t, 2 * k - 1);
        let w = bernoulli_plus(2 * k) / factorial_rat(2 * k);
        acc -= dd_from_rat(&w) * eval_log_poly(a, &beta, n);
    }
    // First omitted correction as the error scale.
    let k = corrections + 1;
    let (a, beta) = powlog_derivative_coeffs(s, t, 2 * k - 1);
    let w = bernoulli_plus(2 * k) / factorial_rat(2 * k);
    let omitted = (dd_from_rat(&w) * eval_log_poly(a, &beta, n))
        .to_f64()
        .abs();
    (acc, 2.0 * omitted + acc.to_f64().abs() * DD_EPSILON * 4.0)
}

/// Tail `sum_{n > N} f(n)` for a summand with known expansion `f`.
///
/// Every contributing power must have `s >= 2`; anything else means the
/// caller asked for a divergent tail.
pub fn expansion_tail(f: &Expansion, n: u64, corrections: u32) -> (DD, f64) {
    let mut acc = DD::ZERO;
    let mut err = 0.0f64;
    for (&(s, t), &c) in &f.coeffs {
        if c.is_zero() {
            continue;
        }
        assert!(s >= 2, "divergent tail term n^({}) ln^{}", -s, t);
        let (v, e) = powlog_tail(s, t, n, corrections);
        acc += c * v;
        err += c.to_f64().abs() * e;
    }
    (acc, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::zeta;
    use crate::sequences::{harmonic, harmonic_alt};

    #[test]
    fn power_tail_matches_exact_residual() {
        // sum_{n>50} n^(-s) = zeta(s) - H_50^(s), exactly known.
        for s in 2..=5i64 {
            let residual = zeta(s).unwrap().value - dd_from_rat(&harmonic(50, s as i32));
            let (tail, err) = powlog_tail(s as i32, 0, 50, 6);
            let diff = (tail - residual).to_f64().abs();
            assert!(diff < 1e-27 + err, "s={s}: diff {diff:e} err {err:e}");
        }
    }

    #[test]
    fn tails_telescope() {
        // tail(N) - tail(4N) must equal the explicitly summed block.
        for &(s, t) in &[(2i32, 0u8), (2, 1), (3, 2), (4, 1)] {
            let (t1, e1) = powlog_tail(s, t, 64, 5);
            let (t2, e2) = powlog_tail(s, t, 256, 5);
            let mut block = DD::ZERO;
            for n in 65..=256u64 {
                let nd = DD::from_i64(n as i64);
                block += nd.powi(-s) * nd.ln().powi(t as i32);
            }
            let diff = ((t1 - t2) - block).to_f64().abs();
            assert!(diff <= e1 + e2 + 1e-28, "s={s} t={t}: diff {diff:e}");
        }
    }

    #[test]
    fn harmonic_expansion_accuracy() {
        for p in 1..=4u32 {
            let zp = if p >= 2 {
                Some(zeta(p as i64).unwrap().value)
            } else {
                None
            };
            let e = harmonic_expansion(p, zp, 14);
            for &n in &[40u64, 100, 1000] {
                let exact = dd_from_rat(&harmonic(n, p as i32));
                let diff = (e.eval(n) - exact).to_f64().abs();
                let scale = (n as f64).powi(-15);
                assert!(diff < 1e3 * scale.max(1e-31), "p={p} n={n} diff={diff:e}");
            }
        }
    }

    #[test]
    fn alternating_tail_expansion_accuracy() {
        // W_j = (-1)^(j-1) (etabar(q) - Hbar_{j-1}^(q)) checked against the
        // expansion at moderate j.
        for q in 1..=3u32 {
            let e = alternating_tail_expansion(q, q as i32 + 12);
            let eta = crate::constants::zeta_alt(q as i64).unwrap().value;
            for &j in &[50u64, 200] {
                let hbar = dd_from_rat(&harmonic_alt(j - 1, q as i32));
                let w_exact = if j % 2 == 1 {
                    eta - hbar
                } else {
                    -(eta - hbar)
                };
                let diff = (e.eval(j) - w_exact).to_f64().abs();
                assert!(diff < 1e-20, "q={q} j={j} diff={diff:e}");
            }
        }
    }

    #[test]
    fn alternating_tail_recurrence() {
        // W_j + W_{j+1} = j^(-q) must hold asymptotically for the expansion.
        for q in 1..=3u32 {
            let e = alternating_tail_expansion(q, q as i32 + 12);
            for &j in &[128u64, 512] {
                let sum = e.eval(j) + e.eval(j + 1);
                let want = DD::from_i64(j as i64).powi(-(q as i32));
                assert!((sum - want).to_f64().abs() < 1e-24, "q={q} j={j}");
            }
        }
    }

    #[test]
    fn shifted_power_matches_direct() {
        let e = shifted_power_expansion(3, 1, 20);
        for &n in &[30u64, 100] {
            let direct = DD::from_i64(n as i64 + 1).powi(-3);
            let diff = (e.eval(n) - direct).to_f64().abs();
            assert!(diff < 1e-25, "n={n} diff={diff:e}");
        }
    }

    #[test]
    fn expansion_products() {
        // (ln n + 1/n)^2 via mul agrees with direct evaluation.
        let mut a = Expansion::zero(10);
        a.put(0, 1, DD::ONE);
        a.put(1, 0, DD::ONE);
        let sq = a.mul(&a);
        for &n in &[17u64, 123] {
            let nd = DD::from_i64(n as i64);
            let direct = (nd.ln() + nd.recip()).powi(2);
            assert!((sq.eval(n) - direct).to_f64().abs() < 1e-28);
        }
    }
}
