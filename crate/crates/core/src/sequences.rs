//! Exact harmonic, alternating-harmonic and hyperharmonic families, plus the
//! coefficient table that rewrites a hyperharmonic number as a polynomial
//! combination of plain harmonic numbers.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::exact::{bernoulli_plus, faulhaber_sum};
use crate::rational::{alt_sign, binomial, rat_int, rat_pow, Rat};

fn harmonic_step(n: u64, p: i32) -> Rat {
    // 1/n^p for p >= 1; callers handle p <= 0 via power sums.
    Rat::new(BigInt::one(), BigInt::from(n).pow(p as u32))
}

static HARMONIC_CACHE: Lazy<RwLock<HashMap<i32, Vec<Rat>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Generalized harmonic number of order `p`.
///
/// For `p >= 1` this is `sum_{j=1..n} 1/j^p`. For `p <= 0` it is the power
/// sum `sum_{j=1..n} j^(-p)`, evaluated exactly through the Bernoulli closed
/// form rather than term by term.
pub fn harmonic(n: u64, p: i32) -> Rat {
    if p <= 0 {
        return faulhaber_sum(n, (-p) as u32);
    }
    {
        let cache = HARMONIC_CACHE.read().unwrap();
        if let Some(values) = cache.get(&p) {
            if let Some(v) = values.get(n as usize) {
                return v.clone();
            }
        }
    }
    let mut cache = HARMONIC_CACHE.write().unwrap();
    let values = cache.entry(p).or_insert_with(|| vec![Rat::zero()]);
    while values.len() <= n as usize {
        let j = values.len() as u64;
        let next = values.last().unwrap() + harmonic_step(j, p);
        values.push(next);
    }
    values[n as usize].clone()
}

/// Alternating harmonic number `sum_{j=1..n} (-1)^(j-1) / j^m`, `m >= 1`.
pub fn harmonic_alt(n: u64, m: i32) -> Rat {
    assert!(m >= 1, "alternating harmonic numbers need order >= 1");
    let mut acc = Rat::zero();
    for j in 1..=n {
        let term = harmonic_step(j, m);
        if j % 2 == 1 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

// Keyed by (p, r); each entry holds values for n = 0..len.
type HyperCache = HashMap<(i32, u32), Vec<Rat>>;
static HYPER_CACHE: Lazy<RwLock<HyperCache>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Generalized hyperharmonic number, defined by iterating partial sums:
/// order `r = 1` is `harmonic(n, p)` and each further order sums the previous
/// one over `1..=n`. Memoized per `(p, r)`.
pub fn hyperharmonic(n: u64, p: i32, r: u32) -> Rat {
    assert!(r >= 1, "hyperharmonic order r must be >= 1");
    if r == 1 {
        return harmonic(n, p);
    }
    if n == 0 {
        return Rat::zero();
    }
    {
        let cache = HYPER_CACHE.read().unwrap();
        if let Some(values) = cache.get(&(p, r)) {
            if let Some(v) = values.get(n as usize) {
                return v.clone();
            }
        }
    }
    // Fill all lower orders up to n first, outside of our own write lock.
    hyperharmonic(n, p, r - 1);
    let mut cache = HYPER_CACHE.write().unwrap();
    // Re-check after acquiring the write lock, then extend.
    let have = cache.get(&(p, r)).map(|v| v.len()).unwrap_or(0);
    if have <= n as usize {
        // Clone the lower order values we need while holding the lock once.
        let lower: Vec<Rat> = if r - 1 == 1 {
            (have.max(1)..=n as usize)
                .map(|j| harmonic(j as u64, p))
                .collect()
        } else {
            let prev = cache.get(&(p, r - 1)).expect("lower order filled");
            prev[have.max(1)..=n as usize].to_vec()
        };
        let values = cache.entry((p, r)).or_insert_with(|| vec![Rat::zero()]);
        for v in lower {
            let next = values.last().unwrap() + v;
            values.push(next);
        }
    }
    cache.get(&(p, r)).unwrap()[n as usize].clone()
}

/// Triangular table of the exact coefficients `a(r, m, j)` expressing
/// a hyperharmonic number of order `r` as
/// `sum_{m,j} a(r,m,j) n^j H_n^(p-m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub order: u32,
    entries: BTreeMap<(u32, u32), Rat>,
}

impl CoeffTable {
    /// Coefficient `a(r, m, j)`; zero outside the triangular index domain.
    pub fn get(&self, m: u32, j: u32) -> Rat {
        self.entries.get(&(m, j)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Iterate entries in deterministic `(m, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.entries.iter()
    }
}

fn d_kernel(m: u32, j: u32, y: u32) -> Rat {
    // Inner sum weight for the j-degree-zero recurrence:
    // D = sum_{l=max(0,m-y-1)}^{j} C(j+1, j-l) B_{j-l} C(l+1, m-y) (-1)^(1+l-m+y) / (j+1)
    let lo = if m > y + 1 { m - y - 1 } else { 0 };
    let mut acc = Rat::zero();
    for l in lo..=j {
        let term = Rat::from_integer(binomial(j as u64 + 1, (j - l) as i64))
            * bernoulli_plus(j - l)
            * Rat::from_integer(binomial(l as u64 + 1, (m - y) as i64))
            * alt_sign(1 + l as i64 - m as i64 + y as i64)
            / rat_int(j as i64 + 1);
        acc += term;
    }
    acc
}

static COEFF_CACHE: Lazy<RwLock<Vec<CoeffTable>>> = Lazy::new(|| {
    let mut base = BTreeMap::new();
    base.insert((0u32, 0u32), Rat::one());
    RwLock::new(vec![CoeffTable {
        order: 1,
        entries: base,
    }])
});

/// Coefficient table of order `r`, built strictly incrementally from the
/// order-1 seed `a(1,0,0) = 1` through the three recurrences.
pub fn coeff_table(r: u32) -> CoeffTable {
    assert!(r >= 1, "coefficient table order must be >= 1");
    {
        let cache = COEFF_CACHE.read().unwrap();
        if let Some(t) = cache.get(r as usize - 1) {
            return t.clone();
        }
    }
    let mut cache = COEFF_CACHE.write().unwrap();
    while cache.len() < r as usize {
        let prev = cache.last().unwrap();
        let pr = prev.order;
        let mut entries = BTreeMap::new();

        // Top band: a(r+1, r, 0) from the trailing diagonal of the previous order.
        let mut top = Rat::zero();
        for m in 0..pr {
            top -= prev.get(m, pr - 1 - m) / rat_int((pr - m) as i64);
        }
        entries.insert((pr, 0u32), top);

        for m in 0..pr {
            // Positive degrees: a(r+1, m, l), 1 <= l <= r - m.
            for l in 1..=(pr - m) {
                let mut acc = Rat::zero();
                for j in (l - 1)..=(pr - 1 - m) {
                    acc += prev.get(m, j) / rat_int(j as i64 + 1)
                        * Rat::from_integer(binomial(j as u64 + 1, (j + 1 - l) as i64))
                        * bernoulli_plus(j + 1 - l);
                }
                entries.insert((m, l), acc);
            }
            // Degree zero: a(r+1, m, 0) through the D kernel.
            let mut acc = Rat::zero();
            for y in 0..=m {
                let lo = if m > y + 1 { m - y - 1 } else { 0 };
                for j in lo..=(pr - 1 - y) {
                    acc -= prev.get(y, j) * d_kernel(m, j, y);
                }
            }
            entries.insert((m, 0), acc);
        }

        cache.push(CoeffTable {
            order: pr + 1,
            entries,
        });
    }
    cache[r as usize - 1].clone()
}

/// Hyperharmonic number evaluated through the coefficient table instead of
/// the defining recursion. Orders `p - m <= 0` route to exact power sums.
pub fn hyperharmonic_via_coeffs(n: u64, p: i32, r: u32) -> Rat {
    let table = coeff_table(r);
    let n_rat = Rat::from_integer(BigInt::from(n));
    let mut acc = Rat::zero();
    for (&(m, j), c) in table.iter() {
        acc += c * rat_pow(&n_rat, j) * harmonic(n, p - m as i32);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(4, 1), rat(25, 12));
        assert_eq!(harmonic(3, 2), rat(49, 36));
        assert_eq!(harmonic(3, -2), rat_int(14));
        assert_eq!(harmonic(0, 3), Rat::zero());
    }

    #[test]
    fn harmonic_alt_examples() {
        assert_eq!(harmonic_alt(3, 1), rat(5, 6));
        assert_eq!(harmonic_alt(1, 7), rat_int(1));
        assert_eq!(harmonic_alt(4, 2), rat(115, 144));
        assert_eq!(harmonic_alt(0, 2), Rat::zero());
    }

    #[test]
    fn hyperharmonic_examples() {
        assert_eq!(hyperharmonic(3, 1, 2), rat(13, 3));
        assert_eq!(hyperharmonic(2, 2, 2), rat(9, 4));
        for n in 0..=20 {
            assert_eq!(hyperharmonic(n, 2, 1), harmonic(n, 2));
        }
    }

    #[test]
    fn coeff_table_small_orders() {
        let t1 = coeff_table(1);
        assert_eq!(t1.get(0, 0), rat_int(1));
        assert_eq!(t1.iter().count(), 1);

        let t2 = coeff_table(2);
        assert_eq!(t2.get(0, 0), rat_int(1));
        assert_eq!(t2.get(0, 1), rat_int(1));
        assert_eq!(t2.get(1, 0), rat_int(-1));
        assert_eq!(t2.iter().count(), 3);
    }

    #[test]
    fn coeff_table_domain_shape() {
        for r in 1..=6u32 {
            let t = coeff_table(r);
            for (&(m, j), _) in t.iter() {
                assert!(m < r && j < r - m, "index ({m},{j}) outside order {r}");
            }
            let expected = (r * (r + 1) / 2) as usize;
            assert_eq!(t.iter().count(), expected);
        }
    }

    #[test]
    fn decomposition_identity() {
        for r in 1..=5u32 {
            for p in 1..=4i32 {
                for n in 0..=50u64 {
                    assert_eq!(
                        hyperharmonic_via_coeffs(n, p, r),
                        hyperharmonic(n, p, r),
                        "decomposition failed at n={n} p={p} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn order_two_closed_form() {
        for p in 1..=4i32 {
            for n in 0..=100u64 {
                let lhs = hyperharmonic(n, p, 2);
                let rhs = rat_int(n as i64 + 1) * harmonic(n, p) - harmonic(n, p - 1);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn classical_hyperharmonic_identity() {
        // h_n^(r) = C(n+r-1, r-1) (H_{n+r-1} - H_{r-1}) for the p = 1 family.
        for r in 1..=5u32 {
            for n in 1..=50u64 {
                let lhs = hyperharmonic(n, 1, r);
                let c = Rat::from_integer(binomial(n + r as u64 - 1, r as i64 - 1));
                let rhs = c * (harmonic(n + r as u64 - 1, 1) - harmonic(r as u64 - 1, 1));
                assert_eq!(lhs, rhs, "n={n} r={r}");
            }
        }
    }
}
