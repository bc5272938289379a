use proptest::prelude::*;

use fixedloci_core::gerbe::{
    add_classes, equivariant_twist, is_trivial, kummer_class, negate_class, GerbeClass, PicModel,
};
use fixedloci_core::lattice::coker_structure;
use fixedloci_core::FinAbGroup;

fn pic() -> impl Strategy<Value = PicModel> {
    (0usize..3, prop::collection::vec(2u64..=12, 0..3)).prop_filter_map("nonzero rank", |(free, orders)| {
        (free + orders.len() > 0)
            .then(|| PicModel::from_group(&FinAbGroup::from_cyclic_factors(free, &orders).unwrap(), None).unwrap())
    })
}

fn bundle(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-50i64..=50, rank)
}

fn pic_and_bundles() -> impl Strategy<Value = (PicModel, Vec<i64>, Vec<i64>, u64)> {
    pic().prop_flat_map(|p| {
        let k = p.rank();
        (Just(p), bundle(k), bundle(k), 1u64..=12)
    })
}

proptest! {
    #[test]
    fn kummer_is_a_homomorphism((p, a, b, r) in pic_and_bundles()) {
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let ca = kummer_class(&p, &a, r).unwrap();
        let cb = kummer_class(&p, &b, r).unwrap();
        prop_assert_eq!(add_classes(&ca, &cb).unwrap(), kummer_class(&p, &sum, r).unwrap());
        prop_assert_eq!(add_classes(&ca, &cb).unwrap(), add_classes(&cb, &ca).unwrap());
        prop_assert!(is_trivial(&add_classes(&ca, &negate_class(&ca)).unwrap()));
        prop_assert_eq!(add_classes(&ca, &GerbeClass::zero(&p, r).unwrap()).unwrap(), ca);
    }

    #[test]
    fn rth_powers_are_trivial((p, a, _b, r) in pic_and_bundles()) {
        let scaled: Vec<i64> = a.iter().map(|x| x * r as i64).collect();
        prop_assert!(is_trivial(&kummer_class(&p, &scaled, r).unwrap()));
    }

    #[test]
    fn quotient_matches_cokernel((p, _a, _b, r) in pic_and_bundles()) {
        let direct = coker_structure(&p.quotient_relations(r).unwrap()).unwrap();
        prop_assert_eq!(p.quotient_structure(r).unwrap(), direct.clone());
        prop_assert_eq!(direct.free_rank(), 0);
        prop_assert_eq!(direct.order(), Some(p.moduli(r).iter().product::<u64>()));
    }

    #[test]
    fn triviality_on_the_line(n in -100i64..=100, r in 1u64..=30) {
        let c = kummer_class(&PicModel::projective_line(), &[n], r).unwrap();
        prop_assert_eq!(is_trivial(&c), n % r as i64 == 0);
    }

    #[test]
    fn twist_is_additive_in_the_weight((p, a, _b, r) in pic_and_bundles(), w1 in -20i64..=20, w2 in -20i64..=20) {
        let c = kummer_class(&p, &a, r).unwrap();
        let zero = GerbeClass::zero(&p, r).unwrap();
        let lhs = add_classes(&equivariant_twist(&c, w1), &equivariant_twist(&zero, w2)).unwrap();
        prop_assert_eq!(lhs, equivariant_twist(&c, w1 + w2));
    }
}
