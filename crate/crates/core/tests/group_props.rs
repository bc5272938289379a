use proptest::prelude::*;
use proptest::sample::select;

use fixedloci_core::groupoid::{
    action_groupoid, contracted_product_over_point, equivalent, is_banded_gerbe, rigidify, ActionGroupoid,
    CentralExtension,
};
use fixedloci_core::groups::{find_isomorphism, invariant_factors_of_abelian, is_isomorphic};
use fixedloci_core::{corpus, DivisorChain, FiniteGroup, GroupHom, Subgroup};

const NAMES: &[&str] = &["C2", "C4", "C6", "C2xC2", "C2xC4", "Q8", "D4", "S3"];

fn named() -> impl Strategy<Value = FiniteGroup> {
    select(NAMES).prop_map(|n| FiniteGroup::by_name(n).unwrap())
}

/// The same group with its elements renamed by `perm`.
fn relabel(g: &FiniteGroup, perm: &[usize]) -> FiniteGroup {
    let n = g.order();
    let mut rows = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            rows[perm[a]][perm[b]] = perm[g.mul(a, b)];
        }
    }
    FiniteGroup::from_table(rows).unwrap()
}

fn group_and_perm() -> impl Strategy<Value = (FiniteGroup, Vec<usize>)> {
    named().prop_flat_map(|g| {
        let perm = Just((0..g.order()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

proptest! {
    #[test]
    fn isomorphism_is_relabelling_invariant((g, perm) in group_and_perm()) {
        let h = relabel(&g, &perm);
        prop_assert!(is_isomorphic(&g, &h).unwrap());
        let phi = find_isomorphism(&g, &h).unwrap().expect("isomorphic");
        prop_assert!(phi.is_homomorphism(&g, &h) && phi.is_injective());
        prop_assert_eq!(g.center().len(), h.center().len());
        prop_assert_eq!(g.order_profile(), h.order_profile());
    }

    #[test]
    fn distinct_names_are_not_isomorphic(a in select(NAMES), b in select(NAMES)) {
        let (g, h) = (FiniteGroup::by_name(a).unwrap(), FiniteGroup::by_name(b).unwrap());
        prop_assert_eq!(is_isomorphic(&g, &h).unwrap(), a == b);
    }

    #[test]
    fn abelian_invariants(moduli in prop::collection::vec(1usize..=6, 1..4)) {
        prop_assume!(moduli.iter().product::<usize>() <= 216);
        let g = FiniteGroup::abelian(&moduli);
        let expected = DivisorChain::normalize(&moduli.iter().map(|&m| m as i64).collect::<Vec<_>>()).unwrap();
        let found = invariant_factors_of_abelian(&g).unwrap();
        prop_assert_eq!(found.nontrivial(), expected.nontrivial());
    }

    #[test]
    fn quotient_orders(g in named()) {
        for n in g.all_subgroups().into_iter().filter(|n| g.is_normal(n)) {
            let (q, p) = g.quotient(&n).unwrap();
            prop_assert_eq!(q.order() * n.len(), g.order());
            prop_assert!(p.is_homomorphism(&g, &q) && p.is_surjective(&q));
            prop_assert_eq!(p.kernel(&q), n);
        }
    }
}

/// Central subgroups together with an action in which they act trivially.
fn rigidification_input() -> impl Strategy<Value = (ActionGroupoid, Subgroup)> {
    named().prop_flat_map(|g| {
        let centrals: Vec<Subgroup> = g.all_subgroups().into_iter().filter(|h| g.is_central(h)).collect();
        select(centrals).prop_flat_map(move |h| {
            let actions = corpus::candidate_actions(&g, &h);
            let g = g.clone();
            select(actions).prop_map(move |act| (ActionGroupoid::new(g.clone(), act[0].len(), act).unwrap(), h.clone()))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rigidify_divides_by_the_band((act, h) in rigidification_input()) {
        let gpd = &act.groupoid;
        let (quotient, witness) = rigidify(gpd, &act.subgroup_assignment(&h)).unwrap();
        prop_assert_eq!(quotient.morphisms() * h.len(), gpd.morphisms());
        prop_assert_eq!(quotient.components().len(), gpd.components().len());
        prop_assert!(is_banded_gerbe(&witness));
        for x in 0..gpd.objects() {
            prop_assert_eq!(quotient.automorphisms(witness.object_map[x]).len() * h.len(), gpd.automorphisms(x).len());
        }
    }

    #[test]
    fn equivalence_is_an_equivalence((a, _) in rigidification_input(), (b, _) in rigidification_input(), (c, _) in rigidification_input()) {
        let (a, b, c) = (&a.groupoid, &b.groupoid, &c.groupoid);
        prop_assert!(equivalent(a, a).unwrap());
        prop_assert_eq!(equivalent(a, b).unwrap(), equivalent(b, a).unwrap());
        if equivalent(a, b).unwrap() && equivalent(b, c).unwrap() {
            prop_assert!(equivalent(a, c).unwrap());
        }
    }

    #[test]
    fn relabelled_action_is_equivalent((act, _) in rigidification_input(), shift in 0usize..6) {
        // conjugating the point set by a cyclic shift
        let n = act.points;
        let s = |u: usize| (u + shift) % n;
        let mut moved = vec![vec![0; n]; act.group.order()];
        for (h, row) in act.action.iter().enumerate() {
            for u in 0..n {
                moved[h][s(u)] = s(row[u]);
            }
        }
        let other = action_groupoid(&act.group, n, &moved).unwrap();
        prop_assert!(equivalent(&act.groupoid, &other).unwrap());
    }
}

/// Every central extension of `V4` by `C2` arising from a group of order 8,
/// with the projection made to land on one fixed copy of `V4`.
fn extensions_over_klein() -> Vec<CentralExtension> {
    let q8 = FiniteGroup::quaternion();
    let (base, _) = q8.quotient(&q8.center()).unwrap();
    let c2 = FiniteGroup::cyclic(2);
    let mut out = vec![CentralExtension::trivial(&c2, &base)];
    for name in ["C2xC4", "D4", "Q8"] {
        let g = FiniteGroup::by_name(name).unwrap();
        for z in g.all_subgroups().into_iter().filter(|z| z.len() == 2 && g.is_central(z)) {
            let (q, p) = g.quotient(&z).unwrap();
            let Some(phi) = find_isomorphism(&q, &base).unwrap() else { continue };
            let projection = GroupHom::new(&g, &base, (0..g.order()).map(|x| phi.apply(p.apply(x))).collect()).unwrap();
            let inclusion = GroupHom::new(&c2, &g, z.elements().to_vec()).unwrap();
            out.push(CentralExtension::new(g.clone(), c2.clone(), base.clone(), inclusion, projection).unwrap());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn contracted_product_is_a_group_law(i in 0usize..16, j in 0usize..16, k in 0usize..16) {
        let all = extensions_over_klein();
        let (a, b, c) = (&all[i % all.len()], &all[j % all.len()], &all[k % all.len()]);
        let unit = &all[0];
        let ab = contracted_product_over_point(a, b).unwrap();
        prop_assert!(ab.is_equivalent(&contracted_product_over_point(b, a).unwrap()).unwrap());
        let left = contracted_product_over_point(&ab, c).unwrap();
        let right = contracted_product_over_point(a, &contracted_product_over_point(b, c).unwrap()).unwrap();
        prop_assert!(left.is_equivalent(&right).unwrap());
        prop_assert!(contracted_product_over_point(a, unit).unwrap().is_equivalent(a).unwrap());
        prop_assert!(contracted_product_over_point(a, a).unwrap().is_equivalent(unit).unwrap());
    }
}
