//! Double-double arithmetic: an unevaluated sum of two `f64`s giving roughly
//! 32 significant decimal digits.
//!
//! This is the working precision for every floating computation in the crate.
//! Default tolerances sit at 1e-8 while closed forms are long linear
//! combinations with heavy cancellation, so plain `f64` would be marginal;
//! double-double leaves ~20 digits of headroom.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::exact::bernoulli_plus;
use crate::rational::{rat_int, Rat};

/// Relative rounding unit of a double-double, about 4.93e-32.
pub const DD_EPSILON: f64 = 4.930380657631324e-32; // 2^-104

#[derive(Clone, Copy, Debug, Default)]
pub struct DD {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };
    pub const ONE: DD = DD { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> DD {
        let (s, e) = two_sum(hi, lo);
        DD { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> DD {
        DD { hi: x, lo: 0.0 }
    }

    pub fn from_i64(x: i64) -> DD {
        DD {
            hi: x as f64,
            lo: 0.0,
        } // exact: |x| < 2^53 for all our uses
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> DD {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Exact multiplication by 2^k.
    pub fn scale_pow2(self, k: i32) -> DD {
        let f = 2f64.powi(k);
        DD {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn recip(self) -> DD {
        DD::ONE / self
    }

    pub fn powi(self, n: i32) -> DD {
        if n == 0 {
            return DD::ONE;
        }
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut result = DD::ONE;
        let mut base = self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result *= base;
            }
            base = base * base;
            e >>= 1;
        }
        result
    }

    /// Exact conversion to a rational (both limbs are exact rationals).
    pub fn to_rational(self) -> Rat {
        let hi = Rat::from_float(self.hi).expect("finite dd");
        let lo = Rat::from_float(self.lo).expect("finite dd");
        hi + lo
    }

    /// Natural logarithm, `self > 0`.
    pub fn ln(self) -> DD {
        assert!(self.hi > 0.0, "ln of non-positive value");
        let mut e = self.hi.log2().floor() as i32;
        let mut m = self.scale_pow2(-e);
        // Reduce the mantissa to [sqrt(1/2), sqrt(2)) so the atanh series
        // argument stays below 0.172.
        if m.hi >= std::f64::consts::SQRT_2 {
            m = m.scale_pow2(-1);
            e += 1;
        }
        if m.hi < std::f64::consts::FRAC_1_SQRT_2 {
            m = m.scale_pow2(1);
            e -= 1;
        }
        let u = (m - DD::ONE) / (m + DD::ONE);
        atanh_series(u).scale_pow2(1) + DD::from_i64(e as i64) * ln2()
    }
}

/// atanh by direct odd series; requires |u| well below 1 (callers keep
/// |u| <= 1/3).
fn atanh_series(u: DD) -> DD {
    let u2 = u * u;
    let mut term = u;
    let mut sum = u;
    let mut k = 1u32;
    loop {
        term *= u2;
        let contrib = term / DD::from_i64(2 * k as i64 + 1);
        sum += contrib;
        if contrib.to_f64().abs() <= sum.to_f64().abs() * DD_EPSILON {
            break;
        }
        k += 1;
        assert!(k < 200, "atanh series failed to converge");
    }
    sum
}

/// arctan by the alternating odd series; callers keep |x| <= 1/2.
pub fn atan_series(x: DD) -> DD {
    let x2 = x * x;
    let mut power = x;
    let mut sum = x;
    let mut k = 1u32;
    loop {
        power *= x2;
        let contrib = power / DD::from_i64(2 * k as i64 + 1);
        sum = if k % 2 == 1 {
            sum - contrib
        } else {
            sum + contrib
        };
        if contrib.to_f64().abs() <= sum.to_f64().abs() * DD_EPSILON {
            break;
        }
        k += 1;
        assert!(k < 400, "atan series failed to converge");
    }
    sum
}

fn dd_from_bigint(x: &BigInt) -> DD {
    if x.is_zero() {
        return DD::ZERO;
    }
    let hi = x.to_f64().expect("bigint fits f64 range");
    let hi_exact = BigInt::from_f64(hi).expect("finite hi");
    let r = x - hi_exact;
    let lo = r.to_f64().expect("residual fits");
    DD::new(hi, lo)
}

/// Round a rational to the nearest double-double, correct to ~2^-106.
pub fn dd_from_rat(x: &Rat) -> DD {
    if x.is_zero() {
        return DD::ZERO;
    }
    let n = x.numer();
    let d = x.denom();
    let shift = d.bits() as i64 - n.bits() as i64 + 110;
    let q: BigInt = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    debug_assert!(
        shift.unsigned_abs() < 900,
        "rational magnitude out of dd range"
    );
    dd_from_bigint(&q).scale_pow2(-(shift as i32))
}

impl Add for DD {
    type Output = DD;
    #[inline]
    fn add(self, rhs: DD) -> DD {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        DD { hi, lo }
    }
}

impl Sub for DD {
    type Output = DD;
    #[inline]
    fn sub(self, rhs: DD) -> DD {
        self + (-rhs)
    }
}

impl Neg for DD {
    type Output = DD;
    #[inline]
    fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for DD {
    type Output = DD;
    #[inline]
    fn mul(self, rhs: DD) -> DD {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        DD { hi, lo }
    }
}

impl Div for DD {
    type Output = DD;
    fn div(self, rhs: DD) -> DD {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs.mul_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs.mul_f64(q2);
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        DD::new(s, e + q3)
    }
}

impl DD {
    #[inline]
    fn mul_f64(self, rhs: f64) -> DD {
        let (p1, p2) = two_prod(self.hi, rhs);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * rhs);
        DD { hi, lo }
    }
}

impl AddAssign for DD {
    fn add_assign(&mut self, rhs: DD) {
        *self = *self + rhs;
    }
}
impl SubAssign for DD {
    fn sub_assign(&mut self, rhs: DD) {
        *self = *self - rhs;
    }
}
impl MulAssign for DD {
    fn mul_assign(&mut self, rhs: DD) {
        *self = *self * rhs;
    }
}
impl DivAssign for DD {
    fn div_assign(&mut self, rhs: DD) {
        *self = *self / rhs;
    }
}

impl PartialEq for DD {
    fn eq(&self, other: &DD) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for DD {
    fn partial_cmp(&self, other: &DD) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl fmt::Display for DD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(31);
        write!(
            f,
            "{}",
            crate::rational::to_decimal_string(&self.to_rational(), digits)
        )
    }
}

fn machin_pi() -> DD {
    let a5 = atan_series(DD::ONE / DD::from_i64(5));
    let a239 = atan_series(DD::ONE / DD::from_i64(239));
    a5.scale_pow2(4) - a239.scale_pow2(2)
}

static LN2: Lazy<DD> = Lazy::new(|| atanh_series(DD::ONE / DD::from_i64(3)).scale_pow2(1));
static PI: Lazy<DD> = Lazy::new(machin_pi);
static EULER_GAMMA: Lazy<DD> = Lazy::new(|| {
    // Euler-Maclaurin at N = 128: gamma = H_N - ln N - 1/(2N)
    // + sum_k B_{2k} / (2k N^{2k}), truncation far below working precision.
    let n = 128u64;
    let mut h = Rat::zero();
    for j in 1..=n {
        h += rat_int(1) / rat_int(j as i64);
    }
    let mut correction = Rat::zero();
    let n_rat = rat_int(n as i64);
    for k in 1..=10u32 {
        correction += bernoulli_plus(2 * k)
            / (rat_int(2 * k as i64) * crate::rational::rat_pow(&n_rat, 2 * k));
    }
    let exact_part = dd_from_rat(&(h - rat_int(1) / rat_int(2 * n as i64) + correction));
    exact_part - DD::from_i64(7) * ln2() // ln 128 = 7 ln 2
});

/// ln 2 at working precision.
pub fn ln2() -> DD {
    *LN2
}

/// pi at working precision.
pub fn pi() -> DD {
    *PI
}

/// Euler-Mascheroni constant at working precision (internal use by tail
/// expansions; not part of the public constant surface).
pub(crate) fn euler_gamma() -> DD {
    *EULER_GAMMA
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use num_traits::Signed;

    fn close(a: DD, b: DD, tol: f64) -> bool {
        (a - b).to_f64().abs() <= tol
    }

    #[test]
    fn basic_arithmetic() {
        let third = DD::ONE / DD::from_i64(3);
        let one = third + third + third;
        assert!(close(one, DD::ONE, 1e-31));
        let x = dd_from_rat(&rat(22, 7));
        assert!(close(x * DD::from_i64(7), DD::from_i64(22), 1e-29));
    }

    #[test]
    fn rational_roundtrip_tight() {
        // Conversion error must sit near 2^-106 relative.
        let cases = [rat(1, 3), rat(-355, 113), rat(123456789, 987654321)];
        for c in &cases {
            let x = dd_from_rat(c);
            let back = x.to_rational();
            let err = (back - c).abs();
            let bound = c.abs() * Rat::from_float(3e-32).unwrap();
            assert!(err <= bound, "roundtrip too lossy for {c}");
        }
    }

    #[test]
    fn huge_rational_conversion() {
        // Value of modest size built from thousand-digit numerator/denominator.
        let mut n = num_bigint::BigInt::from(1);
        let mut d = num_bigint::BigInt::from(1);
        for k in 1..=400u64 {
            n *= BigInt::from(2 * k + 1);
            d *= BigInt::from(2 * k);
        }
        let x = Rat::new(n, d); // (801)!! / (800)!!, value frozen from exact
        let dd = dd_from_rat(&x);
        let approx = dd.to_f64();
        assert!((approx - 22.5887327408646).abs() < 1e-12, "got {approx}");
    }

    #[test]
    fn pi_two_routes_agree() {
        // Machin vs Stormer decompositions.
        let a8 = atan_series(DD::ONE / DD::from_i64(8));
        let a57 = atan_series(DD::ONE / DD::from_i64(57));
        let a239 = atan_series(DD::ONE / DD::from_i64(239));
        let stormer = DD::from_i64(24) * a8 + DD::from_i64(8) * a57 + DD::from_i64(4) * a239;
        assert!(close(pi(), stormer, 1e-30));
        assert!((pi().to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn ln2_two_routes_agree() {
        // atanh route vs the geometric series sum_k 1/(k 2^k).
        let mut s = DD::ZERO;
        for k in (1..=120u32).rev() {
            s += DD::ONE / (DD::from_i64(k as i64) * DD::from_f64(2f64.powi(k as i32)));
        }
        assert!(close(ln2(), s, 1e-31));
        assert!((ln2().to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn ln_consistency() {
        for k in 1..=8 {
            let x = DD::from_i64(1 << k);
            assert!(close(x.ln(), DD::from_i64(k) * ln2(), 1e-30));
        }
        let a = DD::from_i64(100_000);
        assert!((a.ln().to_f64() - (1e5f64).ln()).abs() < 1e-13);
        // ln(ab) = ln a + ln b
        let b = dd_from_rat(&rat(5, 4));
        assert!(close((a * b).ln(), a.ln() + b.ln(), 1e-29));
    }

    #[test]
    fn gamma_constant() {
        assert!((euler_gamma().to_f64() - 0.5772156649015329).abs() < 1e-15);
        // Same Euler-Maclaurin route at a different anchor must agree.
        let n = 256u64;
        let mut h = Rat::zero();
        for j in 1..=n {
            h += rat_int(1) / rat_int(j as i64);
        }
        let mut corr = Rat::zero();
        let n_rat = rat_int(n as i64);
        for k in 1..=10u32 {
            corr += bernoulli_plus(2 * k)
                / (rat_int(2 * k as i64) * crate::rational::rat_pow(&n_rat, 2 * k));
        }
        let g2 = dd_from_rat(&(h - rat(1, 2 * n as i64) + corr)) - DD::from_i64(8) * ln2();
        assert!(close(euler_gamma(), g2, 1e-30));
    }

    #[test]
    fn powi_and_compare() {
        let x = dd_from_rat(&rat(3, 2));
        assert!(close(x.powi(4), dd_from_rat(&rat(81, 16)), 1e-30));
        assert!(close(x.powi(-2), dd_from_rat(&rat(4, 9)), 1e-30));
        assert!(DD::from_i64(2) < DD::from_i64(3));
        assert!(dd_from_rat(&rat(1, 3)) > dd_from_rat(&rat(1, 4)));
    }
}
