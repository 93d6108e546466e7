use invlim::bratteli::{build, k0_presentation, Shape};
use invlim::seqspec::{AlgebraType, Triple, TripleSequence};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn presentation() -> impl Strategy<Value = (AlgebraType, TripleSequence)> {
    let triple = (1u64..=3, 0u64..=2, 0u64..=2).prop_map(|(l, r, z)| (l, r, z));
    (
        prop::sample::select(vec![AlgebraType::A, AlgebraType::O]),
        prop::collection::vec(triple.clone(), 0..=2),
        prop::collection::vec(triple, 1..=2),
    )
        .prop_map(|(kind, prefix, period)| {
            let make = |v: Vec<(u64, u64, u64)>| -> Vec<Triple> {
                v.into_iter()
                    .map(|(l, r, z)| {
                        let r = if kind == AlgebraType::A { r } else { 0 };
                        Triple::new(l, r, z).unwrap()
                    })
                    .collect()
            };
            (kind, TripleSequence::new(make(prefix), make(period)).unwrap())
        })
}

fn vector(rank: usize) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec((-20i64..=20).prop_map(BigInt::from), rank)
}

fn units(p: &invlim::bratteli::DimensionGroupPresentation, k: usize) -> Vec<BigInt> {
    p.order_units[k].iter().map(|x| BigInt::from(x.0.clone())).collect()
}

proptest! {
    #[test]
    fn fill_is_bounded_and_tight_at_unital_levels((kind, s) in presentation()) {
        let d = build(&s, kind, 5).unwrap();
        for k in 0..5 {
            let unital = s.triple(d.levels[k].index).z == 0;
            for (used, size) in d.fill(k) {
                prop_assert!(used <= size);
                prop_assert_eq!(used == size, unital);
            }
        }
    }

    #[test]
    fn order_units_are_carried((kind, s) in presentation()) {
        let p = k0_presentation(&s, kind, 5).unwrap();
        for k in 0..5 {
            let level = p.first_level + k;
            prop_assert_eq!(p.transport(&units(&p, k), level, level + 1).unwrap(), units(&p, k + 1));
            let t = s.triple(level);
            let n = &p.order_units[k][0].0;
            let next = BigUint::from(t.sum()) * n + t.z;
            prop_assert_eq!(&p.order_units[k + 1][0].0, &next);
        }
    }

    #[test]
    fn transport_is_functorial((kind, s) in presentation(), v in vector(3), cut in (0usize..=5, 0usize..=5)) {
        let p = k0_presentation(&s, kind, 5).unwrap();
        let v = &v[..p.ranks[0]];
        let (a, b) = (p.first_level + cut.0.min(cut.1), p.first_level + cut.0.max(cut.1));
        let c = p.last_level();
        let direct = p.transport(v, p.first_level, c).unwrap();
        let first = p.transport(v, p.first_level, a).unwrap();
        let staged = p.transport(&p.transport(&first, a, b).unwrap(), b, c).unwrap();
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn swapping_components_commutes_with_transport(s in presentation().prop_map(|(_, s)| s), v in vector(3)) {
        let p = k0_presentation(&s, AlgebraType::A, 4).unwrap();
        prop_assume!(p.shape == Shape::PairNonunital);
        let swapped = vec![v[1].clone(), v[0].clone(), v[2].clone()];
        let (x, y) = (
            p.transport(&v, p.first_level, p.last_level()).unwrap(),
            p.transport(&swapped, p.first_level, p.last_level()).unwrap(),
        );
        prop_assert_eq!(vec![x[1].clone(), x[0].clone(), x[2].clone()], y);
    }
}
