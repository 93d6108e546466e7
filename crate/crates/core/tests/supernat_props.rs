use invlim::supernat::{product_divisibility_criterion, EventuallyPeriodic, Supernatural};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn terms() -> impl Strategy<Value = (Vec<u64>, Vec<u64>)> {
    (prop::collection::vec(1u64..=12, 0..=3), prop::collection::vec(1u64..=12, 1..=2))
}

fn supernatural() -> impl Strategy<Value = Supernatural> {
    terms().prop_map(|(prefix, period)| Supernatural::from_eventually_periodic_product(&prefix, &period).unwrap())
}

fn ratio() -> impl Strategy<Value = BigRational> {
    (1i64..=24, 1i64..=24).prop_map(|(m, n)| BigRational::new(m.into(), n.into()))
}

proptest! {
    #[test]
    fn multiply_is_a_commutative_monoid(a in supernatural(), b in supernatural(), c in supernatural()) {
        prop_assert_eq!(a.multiply(&b), b.multiply(&a));
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
        prop_assert_eq!(a.multiply(&Supernatural::one()), a.clone());
    }

    #[test]
    fn divides_is_a_partial_order(a in supernatural(), b in supernatural(), c in supernatural()) {
        prop_assert!(a.divides(&a));
        if a.divides(&b) && b.divides(&a) {
            prop_assert_eq!(&a, &b);
        }
        if a.divides(&b) && b.divides(&c) {
            prop_assert!(a.divides(&c));
        }
        prop_assert!(a.divides(&a.multiply(&b)));
    }

    #[test]
    fn q_equivalence_is_an_equivalence(a in supernatural(), b in supernatural(), c in supernatural()) {
        prop_assert!(Supernatural::q_equivalent(&a, &a));
        prop_assert_eq!(Supernatural::q_equivalent(&a, &b), Supernatural::q_equivalent(&b, &a));
        if Supernatural::q_equivalent(&a, &b) && Supernatural::q_equivalent(&b, &c) {
            prop_assert!(Supernatural::q_equivalent(&a, &c));
        }
    }

    #[test]
    fn membership_agrees_with_bounded_criterion(s in terms(), t in terms(), q in ratio()) {
        let a = Supernatural::from_eventually_periodic_product(&s.0, &s.1).unwrap();
        let b = Supernatural::from_eventually_periodic_product(&t.0, &t.1).unwrap();
        let exact = Supernatural::rational_ratio_member(&q, &a, &b).unwrap();
        let (s, t) = (EventuallyPeriodic::new(s.0, s.1), EventuallyPeriodic::new(t.0, t.1));
        if let Ok(bounded) = product_divisibility_criterion(&s, &t, &q, 12) {
            prop_assert_eq!(bounded, exact);
        }
        if exact {
            prop_assert!(Supernatural::q_equivalent(&a, &b));
        }
    }

    #[test]
    fn witness_is_a_member(a in supernatural(), b in supernatural()) {
        if let Some(w) = Supernatural::ratio_witness(&a, &b) {
            prop_assert!(Supernatural::rational_ratio_member(&w, &a, &b).unwrap());
        }
    }

    #[test]
    fn finite_integers_round_trip(n in 1u64..100_000) {
        let s = Supernatural::from_u64(n).unwrap();
        prop_assert_eq!(s.to_integer().unwrap(), num_bigint::BigUint::from(n));
        prop_assert!(Supernatural::from_factored_integer(&BigInt::from(n)).unwrap().divides(&s));
    }
}
