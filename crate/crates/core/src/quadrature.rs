//! Tanh-sinh (double exponential) quadrature and the fixed catalog of
//! integrands used by the integral verification suite.
//!
//! The integrands carry endpoint log singularities and removable 0/0 points;
//! the double-exponential substitution damps both. Nodes are generated as
//! distances from the endpoints so integrands can evaluate `ln x` or
//! `1/(1-x)` without catastrophic cancellation near the boundary.

use crate::approx::Approx;
use crate::dd::DD;
use crate::error::{Error, Result};

/// Evaluation point of the transformed rule: the abscissa plus its exact
/// distances to both interval endpoints.
#[derive(Clone, Copy, Debug)]
pub struct QuadPoint {
    pub x: f64,
    /// Distance to the left endpoint (positive).
    pub from_left: f64,
    /// Distance to the right endpoint (positive).
    pub from_right: f64,
}

/// Integrate `f` over `[a, b]` with tanh-sinh quadrature.
///
/// Doubles the node density per level until two successive levels agree to
/// `tol`; the reported error is the last inter-level difference, floored by
/// the accumulated rounding estimate. When `tol` cannot be reached the value
/// is still returned with its honest error.
pub fn tanh_sinh(f: &dyn Fn(QuadPoint) -> f64, a: f64, b: f64, tol: f64) -> Approx {
    assert!(b > a && a.is_finite() && b.is_finite());
    let half = 0.5 * (b - a);
    let max_level = 12u32;
    let t_max = 6.5f64; // exp(-pi/2 sinh 6.5) underflows well past f64

    let sample = |t: f64| -> Option<(QuadPoint, f64)> {
        // x = tanh(pi/2 sinh t); weight pi/2 cosh t / cosh^2(pi/2 sinh t).
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        if u.abs() > 350.0 {
            return None;
        }
        let cosh_u = u.cosh();
        let w = std::f64::consts::FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        if w < 1e-320 {
            return None;
        }
        let x_unit = u.tanh();
        // 1 - |x_unit| = 2 e^{-2|u|} / (1 + e^{-2|u|}), stable near the edge.
        let e = (-2.0 * u.abs()).exp();
        let near = 2.0 * e / (1.0 + e);
        let (dl_unit, dr_unit) = if x_unit >= 0.0 {
            (1.0 + x_unit, near)
        } else {
            (near, 1.0 - x_unit)
        };
        let point = QuadPoint {
            x: a + half * dl_unit,
            from_left: half * dl_unit,
            from_right: half * dr_unit,
        };
        if point.from_left <= 0.0 || point.from_right <= 0.0 {
            return None;
        }
        Some((point, w * half))
    };

    let mut evals: u64 = 0;
    let mut sum = DD::ZERO;
    // Level 0: step 1, nodes at integer t.
    {
        let mut add = |t: f64| {
            if let Some((p, w)) = sample(t) {
                let v = f(p);
                if v.is_finite() {
                    sum += DD::from_f64(v * w);
                    evals += 1;
                }
            }
        };
        add(0.0);
        let mut t = 1.0;
        while t <= t_max {
            add(t);
            add(-t);
            t += 1.0;
        }
    }
    let mut h = 1.0f64;
    let mut prev = sum; // integral estimate at current level
    let mut err = f64::MAX;
    for level in 1..=max_level {
        h *= 0.5;
        // New nodes at odd multiples of h.
        let mut new_sum = DD::ZERO;
        let mut t = h;
        while t <= t_max {
            for sgn in [t, -t] {
                if let Some((p, w)) = sample(sgn) {
                    let v = f(p);
                    if v.is_finite() {
                        new_sum += DD::from_f64(v * w);
                        evals += 1;
                    }
                }
            }
            t += 2.0 * h;
        }
        sum += new_sum;
        let current = sum.scale_pow2(-(level as i32));
        let diff = (current - prev).to_f64().abs();
        prev = current;
        err = diff;
        if level >= 3 && diff <= tol.max(1e-15 * (1.0 + current.to_f64().abs())) {
            break;
        }
    }
    let value = prev;
    let rounding = 1e-16 * (1.0 + value.to_f64().abs()) * (evals as f64).sqrt();
    Approx::new(value, err.max(rounding)).with_terms(evals)
}

/// Named integrands of the verification catalog, each with its interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Integrand {
    /// `phi^2 / sin phi` on `[0, pi/2]`.
    PhiSquaredOverSin,
    /// `phi / sin phi` on `[0, pi/2]`.
    PhiOverSin,
    /// `ln^2 x / (x^2 - 1)` on `[0, 1]`.
    LogSquaredOverXSquaredMinusOne,
    /// `ln y / (1 + y^2)` on `[0, 1]`.
    LogOverOnePlusYSquared,
    /// `ln^2 y / (1 + y^2)` on `[0, 1]`.
    LogSquaredOverOnePlusYSquared,
    /// `phi (2 cos phi - 1) / (5 - 4 cos phi)` on `[0, pi/2]`.
    PhiWeightedCos,
    /// `2 phi sin phi / (5 - 4 cos phi)` on `[0, pi/2]`.
    PhiWeightedSin,
    /// Variant of the above with `5 - 4 sin phi`, kept for the erratum note.
    PhiWeightedCosSinDenom,
    /// Variant of the above with `5 - 4 sin phi`, kept for the erratum note.
    PhiWeightedSinSinDenom,
    /// `y ln y / (4 + y^2)` on `[0, 1]`.
    YLogOverFourPlusYSquared,
    /// `ln x / (2 - x)` on `[0, 1]`.
    LogOverTwoMinusX,
    /// `pi / (4 + y^2)` on `[0, 1]`.
    PiOverFourPlusYSquared,
    /// `(pi/2) y / (4 + y^2)` on `[0, 1]`.
    HalfPiYOverFourPlusYSquared,
    /// `2 ln y / (4 + y^2)` on `[0, 1]`.
    TwoLogOverFourPlusYSquared,
    /// `arctan(y) / y` on `[0, 1/2]`.
    AtanOverY,
}

impl Integrand {
    pub fn all() -> &'static [Integrand] {
        use Integrand::*;
        &[
            PhiSquaredOverSin,
            PhiOverSin,
            LogSquaredOverXSquaredMinusOne,
            LogOverOnePlusYSquared,
            LogSquaredOverOnePlusYSquared,
            PhiWeightedCos,
            PhiWeightedSin,
            PhiWeightedCosSinDenom,
            PhiWeightedSinSinDenom,
            YLogOverFourPlusYSquared,
            LogOverTwoMinusX,
            PiOverFourPlusYSquared,
            HalfPiYOverFourPlusYSquared,
            TwoLogOverFourPlusYSquared,
            AtanOverY,
        ]
    }

    pub fn name(self) -> &'static str {
        use Integrand::*;
        match self {
            PhiSquaredOverSin => "phi^2/sin(phi) on [0,pi/2]",
            PhiOverSin => "phi/sin(phi) on [0,pi/2]",
            LogSquaredOverXSquaredMinusOne => "ln^2(x)/(x^2-1) on [0,1]",
            LogOverOnePlusYSquared => "ln(y)/(1+y^2) on [0,1]",
            LogSquaredOverOnePlusYSquared => "ln^2(y)/(1+y^2) on [0,1]",
            PhiWeightedCos => "phi(2cos(phi)-1)/(5-4cos(phi)) on [0,pi/2]",
            PhiWeightedSin => "2 phi sin(phi)/(5-4cos(phi)) on [0,pi/2]",
            PhiWeightedCosSinDenom => "phi(2cos(phi)-1)/(5-4sin(phi)) on [0,pi/2]",
            PhiWeightedSinSinDenom => "2 phi sin(phi)/(5-4sin(phi)) on [0,pi/2]",
            YLogOverFourPlusYSquared => "y ln(y)/(4+y^2) on [0,1]",
            LogOverTwoMinusX => "ln(x)/(2-x) on [0,1]",
            PiOverFourPlusYSquared => "pi/(4+y^2) on [0,1]",
            HalfPiYOverFourPlusYSquared => "(pi/2) y/(4+y^2) on [0,1]",
            TwoLogOverFourPlusYSquared => "2 ln(y)/(4+y^2) on [0,1]",
            AtanOverY => "atan(y)/y on [0,1/2]",
        }
    }

    pub fn interval(self) -> (f64, f64) {
        use Integrand::*;
        match self {
            PhiSquaredOverSin
            | PhiOverSin
            | PhiWeightedCos
            | PhiWeightedSin
            | PhiWeightedCosSinDenom
            | PhiWeightedSinSinDenom => (0.0, std::f64::consts::FRAC_PI_2),
            AtanOverY => (0.0, 0.5),
            _ => (0.0, 1.0),
        }
    }

    /// Evaluate at a quadrature point; removable points use their limits.
    pub fn eval(self, p: QuadPoint) -> f64 {
        use Integrand::*;
        let x = p.x;
        match self {
            PhiSquaredOverSin => {
                if x == 0.0 {
                    0.0
                } else {
                    x * x / x.sin()
                }
            }
            PhiOverSin => {
                if x == 0.0 {
                    1.0
                } else {
                    x / x.sin()
                }
            }
            LogSquaredOverXSquaredMinusOne => {
                // Near x = 1 use ln(1 - d) with the exact endpoint distance.
                let d = p.from_right;
                let ln_x = if d < 0.5 { (-d).ln_1p() } else { x.ln() };
                if d == 0.0 {
                    0.0
                } else {
                    ln_x * ln_x / (-d * (x + 1.0))
                }
            }
            LogOverOnePlusYSquared => p.from_left.ln() / (1.0 + x * x),
            LogSquaredOverOnePlusYSquared => {
                let l = p.from_left.ln();
                l * l / (1.0 + x * x)
            }
            PhiWeightedCos => x * (2.0 * x.cos() - 1.0) / (5.0 - 4.0 * x.cos()),
            PhiWeightedSin => 2.0 * x * x.sin() / (5.0 - 4.0 * x.cos()),
            PhiWeightedCosSinDenom => x * (2.0 * x.cos() - 1.0) / (5.0 - 4.0 * x.sin()),
            PhiWeightedSinSinDenom => 2.0 * x * x.sin() / (5.0 - 4.0 * x.sin()),
            YLogOverFourPlusYSquared => {
                if x == 0.0 {
                    0.0
                } else {
                    x * p.from_left.ln() / (4.0 + x * x)
                }
            }
            LogOverTwoMinusX => p.from_left.ln() / (2.0 - x),
            PiOverFourPlusYSquared => std::f64::consts::PI / (4.0 + x * x),
            HalfPiYOverFourPlusYSquared => std::f64::consts::FRAC_PI_2 * x / (4.0 + x * x),
            TwoLogOverFourPlusYSquared => 2.0 * p.from_left.ln() / (4.0 + x * x),
            AtanOverY => {
                if x == 0.0 {
                    1.0
                } else {
                    x.atan() / x
                }
            }
        }
    }
}

/// Adaptive evaluation of one named integrand.
pub fn integrate(integrand: Integrand, tol: f64) -> Result<Approx> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let (a, b) = integrand.interval();
    Ok(tanh_sinh(&|p| integrand.eval(p), a, b, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let v = tanh_sinh(&|p| p.x * p.x * p.x, 0.0, 1.0, 1e-12);
        assert!((v.to_f64() - 0.25).abs() < 1e-14, "got {}", v.to_f64());
        assert!(v.err < 1e-10);
    }

    #[test]
    fn log_singularity() {
        // integral_0^1 ln x dx = -1
        let v = tanh_sinh(&|p| p.from_left.ln(), 0.0, 1.0, 1e-13);
        assert!((v.to_f64() + 1.0).abs() < 1e-13, "got {}", v.to_f64());
        // integral_0^1 ln^2 x dx = 2
        let v2 = tanh_sinh(
            &|p| {
                let l = p.from_left.ln();
                l * l
            },
            0.0,
            1.0,
            1e-13,
        );
        assert!((v2.to_f64() - 2.0).abs() < 1e-12, "got {}", v2.to_f64());
    }

    #[test]
    fn shifted_interval() {
        // integral_1^2 1/x dx = ln 2
        let v = tanh_sinh(&|p| 1.0 / p.x, 1.0, 2.0, 1e-13);
        assert!((v.to_f64() - std::f64::consts::LN_2).abs() < 1e-13);
    }

    #[test]
    fn error_is_honest_on_rough_integrand() {
        let v = tanh_sinh(&|p| p.x.abs().sqrt().sin(), 0.0, 2.0, 1e-30);
        // Unreachable tolerance: the reported error must dominate reality.
        assert!(v.err > 0.0);
    }

    #[test]
    fn removable_point_catalog_entries() {
        for &i in Integrand::all() {
            let v = integrate(i, 1e-10).unwrap();
            assert!(v.to_f64().is_finite(), "{:?} is not finite", i);
        }
    }
}
