// SPDX-License-Identifier: Apache-2.0

//! Cross-check the search against exhaustive subset enumeration on a batch of
//! tiny random graphs.

use krcore::generate::random_instance;
use krcore::{advanced_enum, brute_force_maximum, brute_force_mkrc, find_maximum, EnumConfig, MaxConfig, Query};

fn main() -> krcore::Result<()> {
    let mut checked = 0;
    for seed in 0..50 {
        let (g, sim) = random_instance(seed, 12, 0.5, 0.2);
        for k in 1..=4 {
            let query = Query::new(k, sim)?;
            let want = brute_force_mkrc(&g, &query, 20)?;
            let got = advanced_enum(&g, &query, &EnumConfig::default())?;
            assert_eq!(got.cores, want, "seed {seed} k {k}");

            let best = brute_force_maximum(&g, &query, 20)?.map_or(0, |c| c.len());
            assert_eq!(find_maximum(&g, &query, &MaxConfig::default())?.size(), best);
            checked += 1;
        }
    }
    println!("{checked} instances agree with the oracle");
    Ok(())
}
