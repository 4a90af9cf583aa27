//! Randomized invariants over the exact and extended-precision layers.

use num_traits::Signed;
use proptest::prelude::*;

use hhsum_core::closed::reciprocal_binomial_weights;
use hhsum_core::constants::polylog;
use hhsum_core::dd::{dd_from_rat, DD};
use hhsum_core::exact::faulhaber_sum;
use hhsum_core::rational::{binomial, rat, rat_int, rat_pow, Rat};
use hhsum_core::sequences::{harmonic, hyperharmonic, hyperharmonic_via_coeffs};
use hhsum_core::Approx;

proptest! {
    #[test]
    fn dd_mul_div_roundtrip(a in -1e6f64..1e6, b in -1e6f64..1e6) {
        prop_assume!(b.abs() > 1e-3);
        let x = DD::from_f64(a);
        let y = DD::from_f64(b);
        let back = x * y / y;
        let diff = (back - x).to_f64().abs();
        prop_assert!(diff <= a.abs() * 1e-30 + 1e-36, "diff {diff:e}");
    }

    #[test]
    fn dd_rational_roundtrip(p in -100_000i64..100_000, q in 1i64..100_000) {
        let r = rat(p, q);
        let back = dd_from_rat(&r).to_rational();
        let err = (back - &r).abs();
        prop_assert!(err <= r.abs() * Rat::from_float(1e-31).unwrap());
    }

    #[test]
    fn faulhaber_matches_direct(n in 0u64..300, k in 0u32..8) {
        let mut direct = Rat::from_integer(0.into());
        for j in 1..=n {
            direct += rat_pow(&rat_int(j as i64), k);
        }
        prop_assert_eq!(faulhaber_sum(n, k), direct);
    }

    #[test]
    fn decomposition_holds_everywhere(n in 0u64..80, p in 1i32..5, r in 1u32..6) {
        prop_assert_eq!(
            hyperharmonic_via_coeffs(n, p, r),
            hyperharmonic(n, p, r)
        );
    }

    #[test]
    fn binomial_weights_resolve_exactly(n in 1u64..400, k in 1u32..13) {
        let mut acc = Rat::from_integer(0.into());
        for (r, w) in reciprocal_binomial_weights(k) {
            acc += w / rat_int(n as i64 + r as i64);
        }
        prop_assert_eq!(
            acc * Rat::from_integer(binomial(n + k as u64, k as i64)),
            rat_int(1)
        );
    }

    #[test]
    fn polylog_error_dominates_longer_sum(p in 1i64..5, x in 0.01f64..0.5) {
        let v = polylog(p, x).unwrap();
        let xd = DD::from_f64(x);
        let mut long = DD::ZERO;
        let mut power = DD::ONE;
        for n in 1..=(v.terms * 10) {
            power *= xd;
            long += power / DD::from_i64(n as i64).powi(p as i32);
        }
        let true_err = (v.value - long).to_f64().abs();
        prop_assert!(v.err >= true_err, "err {:e} < true {:e}", v.err, true_err);
    }

    #[test]
    fn approx_error_bounds_hold_under_arithmetic(
        a_num in -1000i64..1000, a_den in 1i64..1000,
        b_num in -1000i64..1000, b_den in 1i64..1000,
    ) {
        prop_assume!(b_num != 0);
        let ra = rat(a_num, a_den);
        let rb = rat(b_num, b_den);
        let xa = Approx::from_rat(&ra);
        let xb = Approx::from_rat(&rb);
        let sum = xa + xb;
        let prod = xa * xb;
        let quot = xa / xb;
        let exact_sum = &ra + &rb;
        let exact_prod = &ra * &rb;
        let exact_quot = &ra / &rb;
        let check = |v: Approx, exact: Rat| {
            let diff = (v.value.to_rational() - exact).abs();
            Rat::from_float(v.err).unwrap() >= diff
        };
        prop_assert!(check(sum, exact_sum));
        prop_assert!(check(prod, exact_prod));
        prop_assert!(check(quot, exact_quot));
    }

    #[test]
    fn harmonic_prefix_additivity(n in 1u64..200, p in 1i32..4) {
        // H_n - H_{n-1} = 1/n^p, exactly.
        let step = harmonic(n, p) - harmonic(n - 1, p);
        prop_assert_eq!(step, rat_int(1) / rat_pow(&rat_int(n as i64), p as u32));
    }
}
