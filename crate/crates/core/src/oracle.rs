//! Independent ground truth: direct summation of the defining series.
//!
//! Terms come from the defining recursions only (iterated partial sums for
//! the hyperharmonic numerators, multiplicative updates for the binomial),
//! never from the decomposition table or the closed forms, so agreement with
//! the theorem machinery is meaningful. Leading terms are exact rationals;
//! past the configured switch point the recurrences continue in
//! double-double.
//!
//! Positive series close with a power-log tail fitted to the last computed
//! term, with the shift between two fit anchors as the model error.
//! Alternating series run through Chebyshev acceleration with bracketing
//! against raw partial sums.

use num_traits::Zero;

use crate::accel::chebyshev_accelerate_tail;
use crate::approx::Approx;
use crate::closed::{SumKind, SumSpec};
use crate::dd::{dd_from_rat, DD, DD_EPSILON};
use crate::engine::Engine;
use crate::error::Result;
use crate::rational::{rat_int, rat_pow, Rat};
use crate::report::VerificationReport;
use crate::tail::powlog_tail;

/// One hyperharmonic tower: running accumulators for orders `1..=s`.
struct Tower {
    p: u32,
    exact: Option<Vec<Rat>>,
    float: Vec<DD>,
}

impl Tower {
    fn new(p: u32, s: u32, exact: bool) -> Tower {
        Tower {
            p,
            exact: exact.then(|| vec![Rat::zero(); s as usize]),
            float: vec![DD::ZERO; s as usize],
        }
    }

    /// Advance to index `n` (must be called with consecutive n starting at 1).
    fn step(&mut self, n: u64) {
        if let Some(levels) = &mut self.exact {
            levels[0] += rat_int(1) / rat_pow(&rat_int(n as i64), self.p);
            for j in 1..levels.len() {
                let lower = levels[j - 1].clone();
                levels[j] += lower;
            }
        } else {
            self.float[0] += DD::from_i64(n as i64).powi(-(self.p as i32));
            for j in 1..self.float.len() {
                let lower = self.float[j - 1];
                self.float[j] += lower;
            }
        }
    }

    fn switch_to_float(&mut self) {
        if let Some(levels) = self.exact.take() {
            self.float = levels.iter().map(dd_from_rat).collect();
        }
    }

    fn top_exact(&self) -> Option<&Rat> {
        self.exact.as_ref().map(|l| l.last().unwrap())
    }

    fn top_float(&self) -> DD {
        self.float.last().copied().unwrap_or(DD::ZERO)
    }
}

/// Term generator for the defining series of a spec (without the alternating
/// sign).
struct TermGen {
    towers: Vec<Tower>,
    m: u32,
    k: u32,
    binom_exact: Option<Rat>,
    binom_float: DD,
    switch_at: u64,
    n: u64,
    last_exact: Option<Rat>,
}

impl TermGen {
    fn new(spec: &SumSpec, switch_at: u64) -> TermGen {
        let towers = match spec.kind {
            SumKind::Linear { p, s } => vec![Tower::new(p, s, switch_at > 0)],
            SumKind::Quadratic { p1, s1, p2, s2 } => vec![
                Tower::new(p1, s1, switch_at > 0),
                Tower::new(p2, s2, switch_at > 0),
            ],
        };
        TermGen {
            towers,
            m: spec.m,
            k: spec.k,
            binom_exact: (switch_at > 0).then(|| Rat::from_integer(1.into())),
            binom_float: DD::ONE,
            switch_at,
            n: 0,
            last_exact: None,
        }
    }

    /// Term at the next index, as extended-precision.
    fn next_term(&mut self) -> DD {
        self.n += 1;
        let n = self.n;
        if self.binom_exact.is_some() && n > self.switch_at {
            for t in &mut self.towers {
                t.switch_to_float();
            }
            self.binom_float = dd_from_rat(self.binom_exact.as_ref().unwrap());
            self.binom_exact = None;
            self.last_exact = None;
        }
        if let Some(binom) = &mut self.binom_exact {
            // C(n+k, k) = C(n-1+k, k) (n+k) / n
            *binom *= rat_int(n as i64 + self.k as i64) / rat_int(n as i64);
            let mut numer = Rat::from_integer(1.into());
            for t in &mut self.towers {
                t.step(n);
                numer *= t.top_exact().unwrap();
            }
            let term = numer / (rat_pow(&rat_int(n as i64), self.m) * binom.clone());
            let dd = dd_from_rat(&term);
            self.last_exact = Some(term);
            dd
        } else {
            self.binom_float *= DD::from_i64(n as i64 + self.k as i64) / DD::from_i64(n as i64);
            let mut numer = DD::ONE;
            for t in &mut self.towers {
                t.step(n);
                numer *= t.top_float();
            }
            numer * DD::from_i64(n as i64).powi(-(self.m as i32)) / self.binom_float
        }
    }
}

/// Decay model of the terms: leading power and log power.
fn decay_model(spec: &SumSpec) -> (i32, u8) {
    match spec.kind {
        SumKind::Linear { p, s } => {
            let alpha = spec.m as i32 + spec.k as i32 - (s as i32 - 1);
            (alpha, u8::from(p == 1))
        }
        SumKind::Quadratic { p1, s1, p2, s2 } => {
            let alpha = spec.m as i32 + spec.k as i32 - (s1 as i32 - 1) - (s2 as i32 - 1);
            (alpha, u8::from(p1 == 1) + u8::from(p2 == 1))
        }
    }
}

/// Solve for the coefficients of `t = n^(-alpha) sum_j c_j ln^j n` through
/// `degree + 1` anchor points (degree <= 2), by Cramer's rule on the
/// Vandermonde system in `ln n`.
fn fit_log_poly(points: &[(u64, DD)], alpha: i32, degree: usize) -> Vec<DD> {
    debug_assert_eq!(points.len(), degree + 1);
    let y: Vec<DD> = points
        .iter()
        .map(|&(n, t)| t * DD::from_i64(n as i64).powi(alpha))
        .collect();
    let l: Vec<DD> = points
        .iter()
        .map(|&(n, _)| DD::from_i64(n as i64).ln())
        .collect();
    match degree {
        0 => vec![y[0]],
        1 => {
            let det = l[1] - l[0];
            let c1 = (y[1] - y[0]) / det;
            let c0 = y[0] - c1 * l[0];
            vec![c0, c1]
        }
        2 => {
            // Newton's divided differences, then expand to monomials.
            let d01 = (y[1] - y[0]) / (l[1] - l[0]);
            let d12 = (y[2] - y[1]) / (l[2] - l[1]);
            let c2 = (d12 - d01) / (l[2] - l[0]);
            let c1 = d01 - c2 * (l[0] + l[1]);
            let c0 = y[0] - l[0] * (c1 + c2 * l[0]);
            vec![c0, c1, c2]
        }
        _ => unreachable!("log-degree above 2 cannot arise"),
    }
}

/// Result of an oracle evaluation.
#[derive(Clone, Copy, Debug)]
pub struct OracleOutcome {
    pub value: Approx,
    /// False when `max_terms` ran out before the tolerance was met; the
    /// error field still bounds the truncation honestly.
    pub converged: bool,
}

impl Engine {
    /// Exact partial sum of the defining series through `n_terms` terms.
    pub fn oracle_partial_sum(&self, spec: &SumSpec, n_terms: u64) -> Result<Rat> {
        spec.validate()?;
        let mut gen = TermGen::new(spec, n_terms + 1);
        let mut acc = Rat::zero();
        for n in 1..=n_terms {
            gen.next_term();
            let term = gen.last_exact.clone().expect("inside exact phase");
            if spec.alternating && n % 2 == 0 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        Ok(acc)
    }

    /// Direct summation of the defining series to absolute tolerance `tol`,
    /// spending at most `max_terms` terms.
    pub fn oracle_series(&self, spec: &SumSpec, tol: f64, max_terms: u64) -> Result<OracleOutcome> {
        spec.validate()?;
        let switch = self.config.oracle_exact_terms;
        if spec.alternating {
            self.oracle_alternating(spec, tol, max_terms, switch)
        } else {
            self.oracle_positive(spec, tol, max_terms, switch)
        }
    }

    fn oracle_positive(
        &self,
        spec: &SumSpec,
        tol: f64,
        max_terms: u64,
        switch: u64,
    ) -> Result<OracleOutcome> {
        let (alpha, logpow) = decay_model(spec);
        debug_assert!(alpha >= 2, "convergent spec has alpha >= 2");
        let mut gen = TermGen::new(spec, switch);
        let mut sum = DD::ZERO;
        let mut term = DD::ZERO;

        // Fit t_n ~ n^(-alpha) (c_0 + c_1 ln n + ...) through the most recent
        // anchors and close the series with the fitted power-log tails.
        let estimate = |sum: DD, anchors: &[(u64, DD)]| -> DD {
            let degree = (logpow as usize).min(anchors.len() - 1);
            let pts = &anchors[anchors.len() - (degree + 1)..];
            let coeffs = fit_log_poly(pts, alpha, degree);
            let n = pts.last().unwrap().0;
            let mut tail = DD::ZERO;
            for (j, c) in coeffs.iter().enumerate() {
                let (t, _) = powlog_tail(alpha, j as u8, n, self.config.tail_corrections);
                tail += *c * t;
            }
            sum + tail
        };

        let mut anchors: Vec<(u64, DD)> = Vec::new();
        let mut prev_estimate: Option<DD> = None;
        let mut n_done = 0u64;
        let mut checkpoint = 1024u64.min(max_terms);
        let mut value;
        let mut err = f64::MAX;
        let mut converged = false;
        loop {
            while n_done < checkpoint {
                term = gen.next_term();
                sum += term;
                n_done += 1;
            }
            anchors.push((n_done, term));
            value = estimate(sum, &anchors);
            if let Some(prev) = prev_estimate {
                let model = (value - prev).to_f64().abs() * 2.0;
                let rounding = sum.to_f64().abs() * DD_EPSILON * n_done as f64;
                err = model + rounding + 1e-30;
                if err <= tol {
                    converged = true;
                    break;
                }
            }
            if n_done >= max_terms {
                if err == f64::MAX {
                    // Single checkpoint: bound by the whole fitted tail.
                    err = (value - sum).to_f64().abs();
                }
                break;
            }
            prev_estimate = Some(value);
            checkpoint = (checkpoint * 2).min(max_terms);
        }
        Ok(OracleOutcome {
            value: Approx::new(value, err).with_terms(n_done),
            converged,
        })
    }

    fn oracle_alternating(
        &self,
        spec: &SumSpec,
        tol: f64,
        max_terms: u64,
        switch: u64,
    ) -> Result<OracleOutcome> {
        let offset = (self.config.accel_offset as u64).min(max_terms / 2) & !1;
        let depth = self.config.accel_depth.min((max_terms / 4) as usize).max(4);
        let mut gen = TermGen::new(spec, switch);
        let mut head = DD::ZERO;
        let mut recent: Vec<DD> = Vec::new();
        for n in 1..=offset {
            let t = gen.next_term();
            head = if n % 2 == 1 { head + t } else { head - t };
            if n + 8 >= offset {
                recent.push(head);
            }
        }
        let tail_terms: Vec<DD> = (0..2 * depth as u64).map(|_| gen.next_term()).collect();
        let (accel, accel_err) = chebyshev_accelerate_tail(&tail_terms, depth);
        let value = head + accel;
        // Bracketing check against the raw partial sums near the offset.
        let mut bracket_slack = 0.0f64;
        for w in recent.windows(2) {
            let (lo, hi) = if w[0] < w[1] {
                (w[0].to_f64(), w[1].to_f64())
            } else {
                (w[1].to_f64(), w[0].to_f64())
            };
            let v = value.to_f64();
            if v < lo || v > hi {
                bracket_slack = bracket_slack.max((v - hi).max(lo - v));
            }
        }
        let rounding = value.to_f64().abs() * DD_EPSILON * (offset + 2 * depth as u64) as f64;
        let err = accel_err + rounding + bracket_slack;
        Ok(OracleOutcome {
            value: Approx::new(value, err).with_terms(offset + 2 * depth as u64),
            converged: err <= tol,
        })
    }

    /// Run the matching closed-form evaluator and the oracle, and assemble a
    /// report. Hypothesis violations come back as SKIPPED.
    pub fn verify(&self, spec: &SumSpec, tol: f64) -> VerificationReport {
        let params = serde_json::to_value(spec).expect("spec serializes");
        let closed = match self.theorem_value(spec) {
            Ok(v) => v,
            Err(e) => return VerificationReport::skipped(spec.id(), params, e.to_string()),
        };
        let oracle = match self.oracle_series(spec, tol, self.config.oracle_max_terms) {
            Ok(o) => o,
            Err(e) => return VerificationReport::skipped(spec.id(), params, e.to_string()),
        };
        let mut report =
            VerificationReport::from_pair(spec.id(), params, closed, oracle.value, tol);
        report.terms_used = oracle.value.terms;
        report
    }
}
