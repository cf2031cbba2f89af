use std::sync::Arc;

use carlitz_core::carlitz_basics::{digit_sum, r_digits, CarlitzCache};
use carlitz_core::carlitz_numbers::{CarlitzNumbers, StirlingKind};
use carlitz_core::exact_arith::{make_field, rat, BigRational, FFElement, FieldParams, Poly, RatFunc, Rationals};
use carlitz_core::series::{ht_product_rule, ht_quotient_check, QuotientRule, Series};
use proptest::prelude::*;

fn f25() -> Arc<FieldParams> {
    make_field(5, 2, None).unwrap()
}

fn f5() -> Arc<FieldParams> {
    make_field(5, 1, None).unwrap()
}

fn arb_element(field: Arc<FieldParams>) -> impl Strategy<Value = FFElement> {
    (0..field.r()).prop_map(move |i| field.element(i).unwrap())
}

fn arb_poly(field: Arc<FieldParams>, max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(arb_element(field.clone()), 0..=max_len).prop_map(move |c| Poly::new(field.clone(), c))
}

fn arb_nonzero_poly(field: Arc<FieldParams>, max_len: usize) -> impl Strategy<Value = Poly> {
    arb_poly(field, max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_ratfunc(field: Arc<FieldParams>) -> impl Strategy<Value = RatFunc> {
    (arb_poly(field.clone(), 3), arb_nonzero_poly(field, 3)).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn arb_unit_series_f5(prec: usize) -> impl Strategy<Value = Series<RatFunc>> {
    let f = f5();
    prop::collection::vec(arb_ratfunc(f.clone()), prec)
        .prop_filter("unit", |c| !c[0].is_zero())
        .prop_map(move |c| Series::new(f.clone(), c))
}

fn arb_unit_series_q(prec: usize) -> impl Strategy<Value = Series<BigRational>> {
    prop::collection::vec(arb_rational(), prec)
        .prop_filter("unit", |c| c[0] != rat(0, 1))
        .prop_map(|c| Series::new(Rationals, c))
}

proptest! {
    #[test]
    fn extension_field_axioms(a in arb_element(f25()), b in arb_element(f25()), c in arb_element(f25())) {
        let f = f25();
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
        // Frobenius is additive.
        prop_assert_eq!(f.pow(f.add(a, b), 5), f.add(f.pow(a, 5), f.pow(b, 5)));
    }

    #[test]
    fn ratfunc_normalization_is_idempotent(x in arb_ratfunc(f25())) {
        let once = x.normalized();
        prop_assert_eq!(once.normalized(), once.clone());
        prop_assert!(x.den().is_monic());
        prop_assert_eq!(RatFunc::parse(&f25(), &x.to_string()).unwrap(), x);
    }

    #[test]
    fn ratfunc_field_laws(a in arb_ratfunc(f5()), b in arb_ratfunc(f5()), c in arb_ratfunc(f5())) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn gcd_is_monic_common_divisor(a in arb_nonzero_poly(f5(), 6), b in arb_nonzero_poly(f5(), 6), c in arb_nonzero_poly(f5(), 3)) {
        let a = &a * &c;
        let b = &b * &c;
        let g = a.gcd(&b);
        prop_assert!(g.is_monic());
        prop_assert!(a.divmod(&g).unwrap().1.is_zero());
        prop_assert!(b.divmod(&g).unwrap().1.is_zero());
        prop_assert!(g.divmod(&c).unwrap().1.is_zero());
        let (g2, s, t) = a.ext_gcd(&b);
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn reciprocal_round_trip_f5(a in arb_unit_series_f5(8)) {
        let prod = &a * &a.reciprocal().unwrap();
        prop_assert_eq!(prod, Series::one(&f5(), 8));
    }

    #[test]
    fn reciprocal_round_trip_q(a in arb_unit_series_q(10)) {
        let prod = &a * &a.reciprocal().unwrap();
        prop_assert_eq!(prod, Series::one(&Rationals, 10));
    }

    #[test]
    fn ht_rules_f5(f in arb_unit_series_f5(8), g in arb_unit_series_f5(8), n in 1usize..=6) {
        let direct = (&f * &g).ht_derivative(n).unwrap();
        prop_assert_eq!(ht_product_rule(&[f.clone(), g], n).unwrap(), direct);
        let inv = f.reciprocal().unwrap().ht_derivative(n).unwrap();
        prop_assert_eq!(ht_quotient_check(&f, n, QuotientRule::PositiveParts).unwrap(), inv.clone());
        prop_assert_eq!(ht_quotient_check(&f, n, QuotientRule::WeightedNonnegative).unwrap(), inv);
    }

    #[test]
    fn ht_rules_q(f in arb_unit_series_q(8), g in arb_unit_series_q(8), h in arb_unit_series_q(8), n in 1usize..=6) {
        let direct = (&(&f * &g) * &h).ht_derivative(n).unwrap();
        prop_assert_eq!(ht_product_rule(&[f.clone(), g, h], n).unwrap(), direct);
        let inv = f.reciprocal().unwrap().ht_derivative(n).unwrap();
        prop_assert_eq!(ht_quotient_check(&f, n, QuotientRule::PositiveParts).unwrap(), inv.clone());
        prop_assert_eq!(ht_quotient_check(&f, n, QuotientRule::WeightedNonnegative).unwrap(), inv);
    }

    #[test]
    fn digit_sum_congruence(n in 0u64..100_000, r in 3u64..=9) {
        prop_assert_eq!(digit_sum(n, r) % (r - 1), n % (r - 1));
        let back: u64 = r_digits(n, r).iter().rev().fold(0, |acc, &d| acc * r + d);
        prop_assert_eq!(back, n);
    }
}

#[test]
fn factorial_formulas_agree() {
    for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
        let cache = CarlitzCache::new(make_field(p, e, None).unwrap());
        let r = cache.r();
        for n in 0..=200 {
            let pi = cache.carlitz_factorial(n).unwrap();
            assert_eq!(pi, cache.carlitz_factorial_alt(n).unwrap(), "r={r} n={n}");
            let want_deg: u64 = r_digits(n, r)
                .iter()
                .enumerate()
                .map(|(j, &c)| c * j as u64 * r.pow(j as u32))
                .sum();
            assert_eq!(pi.degree(), Some(want_deg as usize), "r={r} n={n}");
        }
    }
}

#[test]
fn shared_cache_across_threads() {
    let c = Arc::new(CarlitzNumbers::for_field(make_field(3, 1, None).unwrap()));
    let handles: Vec<_> = (0..4u64)
        .map(|t| {
            let c = c.clone();
            std::thread::spawn(move || {
                (0..12u64)
                    .map(|n| (n, c.cauchy_carlitz(n + t).unwrap()))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    let serial = CarlitzNumbers::for_field(make_field(3, 1, None).unwrap());
    for (t, h) in handles.into_iter().enumerate() {
        for (n, v) in h.join().unwrap() {
            assert_eq!(v, serial.cauchy_carlitz(n + t as u64).unwrap());
        }
    }
    assert!(serial.stirling_carlitz(StirlingKind::First, 4, 2).unwrap().is_one());
}
