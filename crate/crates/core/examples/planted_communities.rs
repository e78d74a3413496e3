// SPDX-License-Identifier: Apache-2.0

//! A larger run: 50k vertices in planted communities of 50, enumerated in
//! parallel across components.

use std::time::Instant;

use krcore::generate::{planted_communities, PlantedConfig};
use krcore::{advanced_enum, find_maximum, EnumConfig, MaxConfig, Query};

fn main() -> krcore::Result<()> {
    let (g, sim) = planted_communities(1, &PlantedConfig::default());
    println!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
    let query = Query::new(5, sim)?;

    let t = Instant::now();
    let all = advanced_enum(&g, &query, &EnumConfig::default())?;
    println!(
        "enumerate: {} cores, largest {}, {:.2}s",
        all.cores.len(),
        all.max_size(),
        t.elapsed().as_secs_f64()
    );

    let t = Instant::now();
    let best = find_maximum(&g, &query, &MaxConfig::default())?;
    println!("maximum: {} vertices, {:.2}s", best.size(), t.elapsed().as_secs_f64());
    Ok(())
}
