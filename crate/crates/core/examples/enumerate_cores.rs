// SPDX-License-Identifier: Apache-2.0

//! Enumerate every maximal (k,r)-core of a small graph.

use krcore::{advanced_enum, fixtures, EnumConfig, Query};

fn main() -> krcore::Result<()> {
    // K6 where vertices 0 and 5 are too far apart to share a core.
    let (g, sim) = fixtures::k6_minus_pair();
    let query = Query::new(2, sim)?;
    let res = advanced_enum(&g, &query, &EnumConfig::default())?;

    for core in &res.cores {
        println!("{:?}", core.vertices());
    }
    println!(
        "{} cores, max {}, avg {:.1}, {} search nodes",
        res.cores.len(),
        res.max_size(),
        res.avg_size(),
        res.stats.nodes_visited
    );
    Ok(())
}
