use isogeny_alpha::exactnum::Rational;
use isogeny_alpha::localdata::tate_algorithm;
use isogeny_alpha::weierstrass::{Transformation, WeierstrassModel};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, prop_oneof![Just(1i64), Just(1), Just(2), Just(3), Just(5), Just(7)])
        .prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn model() -> impl Strategy<Value = WeierstrassModel> {
    proptest::array::uniform5(small_rational())
        .prop_map(WeierstrassModel::from_coefficients)
        .prop_filter("nonsingular", |m| !m.is_singular())
}

fn integral_model() -> impl Strategy<Value = WeierstrassModel> {
    proptest::array::uniform5(-40i64..=40)
        .prop_map(WeierstrassModel::from_ints)
        .prop_filter("nonsingular", |m| !m.is_singular())
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5), Just(7), Just(11)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn discriminant_shifts_by_twelve_val_u(m in model(), p in prime(), e in -2i64..=2,
                                           unit in prop_oneof![Just(1i64), Just(-1), Just(2), Just(-4)],
                                           r in small_rational(), s in small_rational(), t in small_rational()) {
        let u = Rational::prime_power(p, e) * Rational::from_int(unit);
        let tr = Transformation::new(u, r, s, t).unwrap();
        let n = m.transform(&tr).unwrap();
        let before = m.discriminant_valuation(p).unwrap();
        prop_assert_eq!(n.discriminant_valuation(p).unwrap(), before - 12 * e);
        prop_assert_eq!(n.j_invariant().unwrap(), m.j_invariant().unwrap());
        prop_assert_eq!(isogeny_alpha::weierstrass::differential_scale(&m, &n, p).unwrap(), e);
    }

    #[test]
    fn invariant_identities(m in model()) {
        let inv = m.invariants().unwrap();
        let c4 = &inv.c4;
        let c6 = &inv.c6;
        prop_assert_eq!(Rational::from_int(1728) * &inv.discriminant, c4 * c4 * c4 - c6 * c6);
        prop_assert_eq!(Rational::from_int(4) * &inv.b8, &inv.b2 * &inv.b6 - &inv.b4 * &inv.b4);
    }

    #[test]
    fn local_data_invariant_under_unimodular_changes(m in integral_model(), p in prime(),
                                                     unit in prop_oneof![Just(1i64), Just(-1), Just(2), Just(-2)],
                                                     r in -20i64..=20, s in -20i64..=20, t in -20i64..=20) {
        let u = Rational::from_int(if (unit.unsigned_abs()) % p == 0 { 1 } else { unit });
        let tr = Transformation::new(u, r.into(), s.into(), t.into()).unwrap();
        let a = tate_algorithm(&m, p).unwrap();
        let b = tate_algorithm(&m.transform(&tr).unwrap(), p).unwrap();
        prop_assert_eq!(a.record(), b.record());
        prop_assert_eq!(a.v_min, a.conductor_exponent + a.m - 1);
        prop_assert_eq!(a.v_min == 0, a.reduction.is_good());
        if p >= 5 && a.reduction.is_additive() {
            prop_assert_eq!(a.conductor_exponent, 2);
        }
    }

    #[test]
    fn minimal_model_is_idempotent(m in model(), p in prime()) {
        let (min, t) = isogeny_alpha::localdata::minimal_model(&m, p).unwrap();
        prop_assert_eq!(&m.transform(&t).unwrap(), &min);
        let (again, t2) = isogeny_alpha::localdata::minimal_model(&min, p).unwrap();
        prop_assert_eq!(again, min);
        prop_assert!(t2.is_identity());
    }

    #[test]
    fn composition_law(m in model(), a in proptest::array::uniform4(small_rational()), b in proptest::array::uniform4(small_rational())) {
        prop_assume!(!a[0].is_zero() && !b[0].is_zero());
        let [u1, r1, s1, t1] = a;
        let [u2, r2, s2, t2] = b;
        let t1 = Transformation::new(u1, r1, s1, t1).unwrap();
        let t2 = Transformation::new(u2, r2, s2, t2).unwrap();
        let comp = t1.then(&t2);
        prop_assert_eq!(&comp.u, &(&t1.u * &t2.u));
        prop_assert_eq!(m.transform(&comp).unwrap(), m.transform(&t1).unwrap().transform(&t2).unwrap());
    }
}
