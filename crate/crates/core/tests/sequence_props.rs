use invlim::classify::{isomorphic, ClassifyOptions, Decision};
use invlim::seqspec::{AlgebraType, DensityType, SymmetryType, Triple, TripleSequence};
use invlim::supernat::Supernatural;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn triple() -> impl Strategy<Value = Triple> {
    (0u64..=3, 0u64..=2, 0u64..=3).prop_filter_map("l + r > 0", |(l, r, z)| Triple::new(l, r, z))
}

fn sequence() -> impl Strategy<Value = TripleSequence> {
    (prop::collection::vec(triple(), 0..=2), prop::collection::vec(triple(), 1..=2))
        .prop_map(|(prefix, period)| TripleSequence::new(prefix, period).unwrap())
}

/// Sequences that present a type O algebra with a unital tail.
fn unital_tail() -> impl Strategy<Value = TripleSequence> {
    (
        prop::collection::vec((1u64..=3, 0u64..=2), 0..=2),
        prop::collection::vec(1u64..=3, 1..=2),
    )
        .prop_map(|(prefix, period)| {
            let prefix = prefix.into_iter().map(|(l, z)| Triple::new(l, 0, z).unwrap()).collect();
            let period = period.into_iter().map(|l| Triple::new(l, 0, 0).unwrap()).collect();
            TripleSequence::new(prefix, period).unwrap()
        })
}

proptest! {
    #[test]
    fn partial_densities_decrease(s in sequence()) {
        let partial: Vec<BigRational> = (1..=16).map(|i| s.partial_density(i)).collect();
        for w in partial.windows(2) {
            prop_assert!(w[1] <= w[0]);
        }
        prop_assert!(s.density_profile().1 <= partial[15]);
    }

    #[test]
    fn first_convention_starts_at_full_density(l in 1u64..=5, rest in sequence()) {
        let mut prefix = vec![Triple::new(l, 0, 0).unwrap()];
        prefix.extend_from_slice(rest.prefix());
        let s = TripleSequence::with_convention(prefix, rest.period().to_vec(), true).unwrap();
        prop_assert_eq!(s.partial_density(2), BigRational::one());
    }

    #[test]
    fn pure_density_is_eventually_exact(s in unital_tail()) {
        let (kind, delta) = s.density_profile();
        prop_assert_eq!(kind, DensityType::D3);
        let last_z = s.prefix().iter().rposition(|t| t.z > 0).map_or(0, |k| k + 1);
        for i in last_z + 1..last_z + 6 {
            prop_assert_eq!(s.partial_density(i), delta.clone());
        }
    }

    #[test]
    fn partial_symmetries(s in sequence()) {
        let partial: Vec<BigRational> = (1..=12).map(|i| s.partial_symmetry(i)).collect();
        for w in partial.windows(2) {
            prop_assert!(w[1] <= w[0]);
        }
        let (kind, sigma) = s.symmetry_profile();
        match kind {
            SymmetryType::S1 => prop_assert_eq!(&partial[s.prefix().len().max(1) + 2], &sigma),
            SymmetryType::S2 => {
                let first = (1..).find(|&i| { let t = s.triple(i); t.l == t.r }).unwrap();
                for (k, p) in partial.iter().enumerate() {
                    prop_assert_eq!(p.is_zero(), k + 1 >= first);
                }
            }
            _ => {}
        }
    }

    #[test]
    fn finite_products_divide_the_limit(s in sequence(), i in 1usize..=8) {
        let pi = s.invariant_profile(AlgebraType::O, 0).map(|p| p.pi_s);
        let Ok(pi) = pi else { return Ok(()); };
        let partial = Supernatural::from_factored_integer(&BigInt::from(s.sum_product(1, i + 1))).unwrap();
        prop_assert!(partial.divides(&pi));
    }

    #[test]
    fn symmetric_profiles_carry_two_to_infinity(s in sequence()) {
        let p = s.invariant_profile(AlgebraType::A, 0).unwrap();
        if p.symmetry_type == Some(SymmetryType::S2) {
            prop_assert!(p.pi_s.has_infinite(2));
        }
    }

    #[test]
    fn classify_is_reflexive_and_symmetric(
        s in sequence(),
        t in sequence(),
        kinds in (0usize..2, 0usize..2),
    ) {
        let pick = |k: usize| [AlgebraType::A, AlgebraType::O][k];
        let (k1, k2) = (pick(kinds.0), pick(kinds.1));
        let (Ok(p), Ok(q)) = (s.invariant_profile(k1, 0), t.invariant_profile(k2, 0)) else { return Ok(()); };
        let opts = ClassifyOptions::default();
        prop_assert_eq!(isomorphic(&p, &p, opts).unwrap().isomorphic, Decision::Isomorphic);
        prop_assert_eq!(isomorphic(&p, &q, opts).unwrap().isomorphic, isomorphic(&q, &p, opts).unwrap().isomorphic);
    }

    #[test]
    fn unrolling_a_period_changes_no_verdict(s in sequence(), t in sequence()) {
        let opts = ClassifyOptions::default();
        let profile = |x: &TripleSequence| x.invariant_profile(AlgebraType::A, 0).unwrap();
        let (p, q) = (profile(&s), profile(&t));
        let unrolled = profile(&s.unroll_period());
        prop_assert_eq!(isomorphic(&p, &q, opts).unwrap().isomorphic, isomorphic(&unrolled, &q, opts).unwrap().isomorphic);
    }

    #[test]
    fn dense_witnesses(s in sequence(), extra in triple()) {
        // Prepending a step keeps the limit's supernatural class but moves δ.
        let mut prefix = vec![extra];
        prefix.extend_from_slice(s.prefix());
        let t = TripleSequence::new(prefix, s.period().to_vec()).unwrap();
        let (Ok(p), Ok(q)) = (s.invariant_profile(AlgebraType::O, 0), t.invariant_profile(AlgebraType::O, 0)) else {
            return Ok(());
        };
        let verdict = isomorphic(&p, &q, ClassifyOptions::default()).unwrap();
        if verdict.isomorphic == Decision::Isomorphic && p.density_type != DensityType::D1 {
            let alpha = verdict.alpha.unwrap();
            prop_assert_eq!(&alpha, &(&p.delta / &q.delta));
            prop_assert!(Supernatural::rational_ratio_member(&alpha, &p.pi_s, &q.pi_s).unwrap());
        }
    }
}
