// SPDX-License-Identifier: Apache-2.0

//! Cross-checks of every search against the exhaustive oracle on denser
//! random graphs than the acceptance gate uses.

use proptest::prelude::*;

use krcore::generate::random_instance;
use krcore::{
    advanced_enum, brute_force_maximum, brute_force_mkrc, clique_based_enum, find_maximum, naive_enum,
    BoundKind, CliqueConfig, EnumConfig, KrCore, MaxConfig, OrderStrategy, Query,
};

fn strategy() -> impl Strategy<Value = OrderStrategy> {
    prop_oneof![
        Just(OrderStrategy::D1ThenD2),
        (0.0..10.0f64).prop_map(OrderStrategy::LambdaScore),
        Just(OrderStrategy::DegreeGreedy),
        any::<u64>().prop_map(OrderStrategy::Random),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn searches_agree_with_oracle(
        seed in any::<u64>(),
        n in 6usize..=13,
        p in 0.3..0.9f64,
        rho in 0.0..0.35f64,
        k in 1usize..=5,
        order in strategy(),
    ) {
        let (g, sim) = random_instance(seed, n, p, rho);
        let q = Query::new(k, sim).unwrap();
        let want = brute_force_mkrc(&g, &q, 20).unwrap();
        let cfg = EnumConfig { order, verify_invariants: true, threads: Some(1), ..EnumConfig::default() };

        let adv = advanced_enum(&g, &q, &cfg).unwrap();
        prop_assert_eq!(&adv.cores, &want);
        prop_assert_eq!(adv.stats.invariant_violations, 0);
        for c in &adv.cores {
            prop_assert!(KrCore::validated(&g, &q, c.vertices().to_vec()).is_ok());
        }
        for (i, a) in adv.cores.iter().enumerate() {
            for b in &adv.cores[i + 1..] {
                prop_assert!(!a.is_subset_of(b) && !b.is_subset_of(a));
            }
        }

        let basic = naive_enum(&g, &q, true, &cfg).unwrap();
        prop_assert_eq!(&basic.cores, &want);
        prop_assert!(adv.stats.nodes_visited <= basic.stats.nodes_visited);
        let naive = naive_enum(&g, &q, false, &cfg).unwrap();
        prop_assert_eq!(&naive.cores, &want);
        prop_assert!(basic.stats.nodes_visited <= naive.stats.nodes_visited);

        let clique = clique_based_enum(&g, &q, &CliqueConfig::default()).unwrap();
        prop_assert_eq!(&clique.cores, &want);

        let best = brute_force_maximum(&g, &q, 20).unwrap().map_or(0, |c| c.len());
        for bound in BoundKind::ALL {
            let r = find_maximum(&g, &q, &MaxConfig { bound, order, ..MaxConfig::default() }).unwrap();
            prop_assert_eq!(r.size(), best, "bound {}", bound);
        }
    }
}
