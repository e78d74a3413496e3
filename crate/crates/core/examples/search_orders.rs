// SPDX-License-Identifier: Apache-2.0

//! The branching order changes the amount of work, never the answer.

use krcore::generate::random_instance;
use krcore::{advanced_enum, EnumConfig, OrderStrategy, Query};

fn main() -> krcore::Result<()> {
    let (g, sim) = random_instance(3, 60, 0.25, 0.1);
    let query = Query::new(3, sim)?;
    let orders = [
        ("d1 then d2", OrderStrategy::D1ThenD2),
        ("lambda 5", OrderStrategy::LambdaScore(5.0)),
        ("lambda 0", OrderStrategy::LambdaScore(0.0)),
        ("degree", OrderStrategy::DegreeGreedy),
        ("random", OrderStrategy::Random(42)),
    ];

    let mut answer = None;
    for (name, order) in orders {
        let cfg = EnumConfig { order, ..EnumConfig::default() };
        let res = advanced_enum(&g, &query, &cfg)?;
        println!("{name:<11} {:>3} cores {:>7} nodes", res.cores.len(), res.stats.nodes_visited);
        match &answer {
            None => answer = Some(res.cores),
            Some(prev) => assert_eq!(prev, &res.cores),
        }
    }
    Ok(())
}
