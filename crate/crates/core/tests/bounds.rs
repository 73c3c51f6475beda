use knotcalc_core::bounds::{
    bound_constants, cgm_tube_radius, critical_cone_order, critical_geodesic_length, global_bounds,
    martin_cone_radius,
};
use knotcalc_core::scalar::{parse_decimal, Interval, IntervalCtx, Real};
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #[test]
    fn tube_radius_decreases(a in 1u32..10_000, b in 1u32..10_000) {
        prop_assume!(a != b);
        let ctx = IntervalCtx::with_digits(30);
        let l = |k: u32| Interval::from_ratio(&parse_decimal(&format!("{k}e-5")).unwrap(), &ctx);
        let (ra, rb) = (cgm_tube_radius(&l(a), &ctx).unwrap(), cgm_tube_radius(&l(b), &ctx).unwrap());
        prop_assert_eq!(a < b, rb.certainly_lt(&ra));
    }

    #[test]
    fn cone_radius_increases(q in 7i64..100_000) {
        let ctx = IntervalCtx::with_digits(30);
        let r = |q: i64| martin_cone_radius::<Interval>(&BigInt::from(q), &ctx).unwrap();
        prop_assert!(r(q).certainly_lt(&r(q + 1)));
    }

    #[test]
    fn f64_and_interval_agree(l in 1e-6f64..0.11) {
        let ctx = IntervalCtx::default();
        let exact = num_rational::BigRational::from_float(l).unwrap();
        let a = cgm_tube_radius(&l, &()).unwrap();
        let b = cgm_tube_radius(&Interval::from_ratio(&exact, &ctx), &ctx).unwrap();
        prop_assert!((a - b.to_f64()).abs() <= 1e-9 * b.to_f64());
    }
}

#[test]
fn thresholds_move_with_length() {
    let ctx = IntervalCtx::default();
    let mut last_l = critical_geodesic_length(0, &ctx).unwrap();
    let mut last_q = critical_cone_order(0, &ctx).unwrap();
    for plen in 1..=8 {
        let l = critical_geodesic_length(plen, &ctx).unwrap();
        let q = critical_cone_order(plen, &ctx).unwrap();
        assert!(l.above.certainly_lt(&last_l.below) || last_l.at_domain_end);
        assert!(q > last_q);
        (last_l, last_q) = (l, q);
    }
}

#[test]
fn huge_lengths_stay_exact() {
    let c = bound_constants(1000);
    assert_eq!(c.t.to_string().len(), 478);
    let ctx = IntervalCtx::default();
    let g = global_bounds(10_000, None, None, &ctx).unwrap();
    assert!(g.tube_r_max.to_f64() > 16_000.0);
    let q = critical_cone_order(40, &ctx).unwrap();
    assert!(q.bits() > 90);
}

#[test]
fn degree_bound_is_a_floor() {
    let ctx = IntervalCtx::default();
    for (plen, vol, want) in [(4, "2.0", 6), (1, "2.029883212819307", 1), (10, "0.9427", 33)] {
        let v = parse_decimal(vol).unwrap();
        let g = global_bounds(plen, Some(&v), None, &ctx).unwrap();
        assert_eq!(g.degree_bound, Some(BigInt::from(want)));
    }
    assert!(global_bounds(1, Some(&parse_decimal("0").unwrap()), None, &ctx).is_err());
}
