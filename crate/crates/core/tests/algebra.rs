use num_rational::BigRational;
use proptest::prelude::*;

use linkorbit_core::category::{compose, enumerate_chains, enumerate_chains_brute_force, hom_brute_force};
use linkorbit_core::group::{all_subgroups, all_subgroups_brute_force, families, normalizer};
use linkorbit_core::simplex::{induced_map, SimplexPoint};
use linkorbit_core::LinkOrbitCategory;

#[test]
fn subgroup_and_chain_enumeration_match_brute_force() {
    for name in families::BATTERY {
        let g = families::by_name(name).unwrap();
        let mut fast = all_subgroups(&g);
        let mut slow = all_subgroups_brute_force(&g).unwrap();
        fast.sort();
        slow.sort();
        assert_eq!(fast, slow, "{name}");

        let cat = LinkOrbitCategory::new(&g);
        let mut chains = enumerate_chains(cat.lattice());
        let mut brute = enumerate_chains_brute_force(cat.lattice());
        chains.sort();
        brute.sort();
        assert_eq!(chains, brute, "{name}");
    }
}

#[test]
fn hom_sets_match_definition() {
    for name in ["c4", "s3", "q8"] {
        let cat = LinkOrbitCategory::new(&families::by_name(name).unwrap());
        let n = cat.objects().len();
        for a in 0..n {
            for b in 0..n {
                let mut brute = hom_brute_force(cat.object(a), cat.object(b));
                brute.sort();
                assert_eq!(brute.as_slice(), cat.hom_ids(a, b), "{name}: {a} -> {b}");
            }
        }
    }
}

/// Random exact coordinates summing to one.
fn coords(len: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(0i64..6, len).prop_filter_map("all zero", |w| {
        let total: i64 = w.iter().sum();
        (total > 0).then(|| w.iter().map(|&x| BigRational::new(x.into(), total.into())).collect())
    })
}

/// The first `len` weights, rescaled; `None` when they are all zero.
fn truncate(w: &[BigRational], len: usize) -> Option<Vec<BigRational>> {
    let total: BigRational = w[..len].iter().sum();
    (total != BigRational::from_integer(0.into())).then(|| w[..len].iter().map(|c| c / &total).collect())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn normalizer_contains_and_normalizes(group in 0usize..7, pick in any::<prop::sample::Index>()) {
        let g = families::by_name(families::BATTERY[group]).unwrap();
        let subs = all_subgroups(&g);
        let h = pick.get(&subs);
        let n = normalizer(&g, h).unwrap();
        prop_assert!(h.is_subset_of(&n));
        for x in n.elements() {
            prop_assert!(h.is_normalized_by_element(*x));
        }
        let outside = g.elements().filter(|x| !n.contains(*x)).count();
        prop_assert_eq!(outside, g.order() - n.order());
    }

    #[test]
    fn induced_maps_compose(
        group in 0usize..7,
        a_pick in any::<prop::sample::Index>(),
        f_pick in any::<prop::sample::Index>(),
        h_pick in any::<prop::sample::Index>(),
        g_pick in any::<prop::sample::Index>(),
        w in coords(4),
    ) {
        let grp = families::by_name(families::BATTERY[group]).unwrap();
        let cat = LinkOrbitCategory::new(&grp);
        let n = cat.objects().len();
        let a = a_pick.index(n);
        let out: Vec<_> = (0..n).flat_map(|b| cat.hom_ids(a, b).iter().cloned()).collect();
        let f = f_pick.get(&out).clone();
        let b = cat.object_id(&f.dst).unwrap();
        let next: Vec<_> = (0..n).flat_map(|c| cat.hom_ids(b, c).iter().cloned()).collect();
        let h = h_pick.get(&next).clone();

        let chain = cat.object(a).clone();
        let Some(x) = truncate(&w, chain.len()) else { return Ok(()) };
        let p = SimplexPoint::new(chain, g_pick.index(grp.order()), x).unwrap();
        let hf = compose(&f, &h).unwrap();
        let direct = induced_map(&hf, &p).unwrap();
        let stepwise = induced_map(&h, &induced_map(&f, &p).unwrap()).unwrap();
        prop_assert_eq!(direct, stepwise);
    }

    #[test]
    fn stabilizer_matches_brute_force(
        group in 0usize..7,
        a_pick in any::<prop::sample::Index>(),
        g_pick in any::<prop::sample::Index>(),
        w in coords(4),
    ) {
        let grp = families::by_name(families::BATTERY[group]).unwrap();
        let cat = LinkOrbitCategory::new(&grp);
        let chain = a_pick.get(cat.objects()).clone();
        let Some(x) = truncate(&w, chain.len()) else { return Ok(()) };
        let p = SimplexPoint::new(chain, g_pick.index(grp.order()), x).unwrap();
        prop_assert_eq!(p.stabilizer(), p.stabilizer_brute_force());
    }
}
