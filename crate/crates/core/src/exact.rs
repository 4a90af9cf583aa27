//! Bernoulli numbers and power-sum (Faulhaber) machinery, all exact.
//!
//! The Bernoulli convention used throughout is the one generated by
//! t/(1 - e^(-t)), i.e. `B1 = +1/2`. The defining recurrence
//! `sum_{j=0..k} C(k+1,j) B_j = k+1` pins the convention down and doubles as
//! a test oracle.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::Zero;
use once_cell::sync::Lazy;

use crate::rational::{binomial, rat_int, Rat};

/// Grow-on-demand table of Bernoulli numbers `B_n` (positive convention).
///
/// Reads after fill are lock-cheap; concurrent fills recompute the same
/// values, so the table contents never depend on thread timing.
pub struct BernoulliTable {
    values: RwLock<Vec<Rat>>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        BernoulliTable {
            values: RwLock::new(vec![rat_int(1)]),
        }
    }

    /// `B_n` under the `B1 = +1/2` convention.
    pub fn get(&self, n: u32) -> Rat {
        {
            let values = self.values.read().unwrap();
            if let Some(v) = values.get(n as usize) {
                return v.clone();
            }
        }
        let mut values = self.values.write().unwrap();
        while values.len() <= n as usize {
            // Solve the recurrence sum_{j=0..k} C(k+1,j) B_j = k+1 for B_k.
            let k = values.len() as u64;
            let mut sum = Rat::zero();
            for (j, bj) in values.iter().enumerate() {
                sum += Rat::from_integer(binomial(k + 1, j as i64)) * bj;
            }
            let bk = (rat_int(k as i64 + 1) - sum) / Rat::from_integer(binomial(k + 1, k as i64));
            values.push(bk);
        }
        values[n as usize].clone()
    }
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

static BERNOULLI: Lazy<BernoulliTable> = Lazy::new(BernoulliTable::new);

/// `B_n` with `B1 = +1/2`, memoized globally.
pub fn bernoulli_plus(n: u32) -> Rat {
    BERNOULLI.get(n)
}

/// Coefficients `c_j = C(k+1,j) B_j / (k+1)` so that
/// `sum_{l=1..n} l^k = sum_{j=0..k} c_j n^(k+1-j)`.
pub fn faulhaber_coeffs(k: u32) -> Vec<Rat> {
    (0..=k)
        .map(|j| {
            Rat::from_integer(binomial(k as u64 + 1, j as i64)) * bernoulli_plus(j)
                / rat_int(k as i64 + 1)
        })
        .collect()
}

/// Power sum `1^k + 2^k + ... + n^k` via the Bernoulli closed form.
pub fn faulhaber_sum(n: u64, k: u32) -> Rat {
    let n_rat = Rat::from_integer(BigInt::from(n));
    let mut acc = Rat::zero();
    let mut power = crate::rational::rat_pow(&n_rat, k + 1);
    for c in faulhaber_coeffs(k) {
        acc += c * &power;
        if n == 0 {
            break;
        }
        power /= &n_rat;
    }
    acc
}
