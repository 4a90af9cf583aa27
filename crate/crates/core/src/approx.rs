//! High-precision value paired with an absolute error bound.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::dd::{dd_from_rat, DD, DD_EPSILON};
use crate::rational::Rat;

/// A real value carried in double-double precision together with a claimed
/// absolute error bound and the number of terms/evaluations spent on it.
///
/// Arithmetic propagates the bound to first order and always adds the
/// working-precision rounding floor, so a chain of operations keeps `err`
/// dominating the true error of the chain.
#[derive(Clone, Copy, Debug)]
pub struct Approx {
    pub value: DD,
    pub err: f64,
    pub terms: u64,
}

impl Approx {
    pub fn new(value: DD, err: f64) -> Approx {
        debug_assert!(err >= 0.0 && err.is_finite());
        Approx {
            value,
            err,
            terms: 0,
        }
    }

    /// A value known to working precision (error at the rounding floor).
    pub fn exact_dd(value: DD) -> Approx {
        Approx::new(value, value.to_f64().abs() * DD_EPSILON)
    }

    /// An exact rational, converted once (conversion rounding only).
    pub fn from_rat(x: &Rat) -> Approx {
        Approx::exact_dd(dd_from_rat(x))
    }

    pub fn from_i64(x: i64) -> Approx {
        Approx::new(DD::from_i64(x), 0.0)
    }

    pub fn zero() -> Approx {
        Approx::new(DD::ZERO, 0.0)
    }

    pub fn with_terms(mut self, terms: u64) -> Approx {
        self.terms = terms;
        self
    }

    pub fn to_f64(self) -> f64 {
        self.value.to_f64()
    }

    fn floor_term(v: DD) -> f64 {
        v.to_f64().abs() * DD_EPSILON
    }

    pub fn scale_rat(self, c: &Rat) -> Approx {
        let cd = dd_from_rat(c);
        let value = self.value * cd;
        Approx {
            value,
            err: cd.to_f64().abs() * self.err + Self::floor_term(value),
            terms: self.terms,
        }
    }

    /// Absolute distance between two approximate values.
    pub fn abs_diff(self, other: Approx) -> f64 {
        (self.value - other.value).to_f64().abs()
    }
}

impl Add for Approx {
    type Output = Approx;
    fn add(self, rhs: Approx) -> Approx {
        let value = self.value + rhs.value;
        Approx {
            value,
            err: self.err + rhs.err + Self::floor_term(value),
            terms: self.terms + rhs.terms,
        }
    }
}

impl Sub for Approx {
    type Output = Approx;
    fn sub(self, rhs: Approx) -> Approx {
        self + (-rhs)
    }
}

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx {
            value: -self.value,
            err: self.err,
            terms: self.terms,
        }
    }
}

impl Mul for Approx {
    type Output = Approx;
    fn mul(self, rhs: Approx) -> Approx {
        let value = self.value * rhs.value;
        let err = self.value.to_f64().abs() * rhs.err
            + rhs.value.to_f64().abs() * self.err
            + self.err * rhs.err
            + Self::floor_term(value);
        Approx {
            value,
            err,
            terms: self.terms + rhs.terms,
        }
    }
}

impl Div for Approx {
    type Output = Approx;
    fn div(self, rhs: Approx) -> Approx {
        let value = self.value / rhs.value;
        let denom = rhs.value.to_f64().abs();
        let err = (self.err + value.to_f64().abs() * rhs.err) / denom + Self::floor_term(value);
        Approx {
            value,
            err,
            terms: self.terms + rhs.terms,
        }
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(31);
        write!(f, "{:.*} ± {:.3e}", digits, self.value, self.err)
    }
}
