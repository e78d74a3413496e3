// SPDX-License-Identifier: Apache-2.0

//! Find the largest (k,r)-core under each upper bound and compare the work.

use krcore::generate::random_instance;
use krcore::{find_maximum, BoundKind, MaxConfig, Query};

fn main() -> krcore::Result<()> {
    let (g, sim) = random_instance(7, 40, 0.35, 0.15);
    let query = Query::new(4, sim)?;

    println!("{:<7} {:>4} {:>7} {:>8}", "bound", "size", "nodes", "cutoffs");
    for bound in BoundKind::ALL {
        let cfg = MaxConfig { bound, ..MaxConfig::default() };
        let res = find_maximum(&g, &query, &cfg)?;
        println!(
            "{:<7} {:>4} {:>7} {:>8}",
            bound.name(),
            res.size(),
            res.stats.nodes_visited,
            res.stats.bound_cutoffs
        );
    }
    Ok(())
}
