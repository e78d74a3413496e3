// SPDX-License-Identifier: Apache-2.0

//! The clique-based baseline: list maximal cliques of the similarity graph,
//! then cut each down to its structural cores. It should agree with the
//! dedicated search.

use krcore::generate::random_instance;
use krcore::{advanced_enum, clique_based_enum, CliqueConfig, EnumConfig, Query};

fn main() -> krcore::Result<()> {
    let (g, sim) = random_instance(11, 30, 0.4, 0.2);
    let query = Query::new(3, sim)?;

    let baseline = clique_based_enum(&g, &query, &CliqueConfig::default())?;
    let search = advanced_enum(&g, &query, &EnumConfig::default())?;

    println!("baseline: {} cores", baseline.cores.len());
    println!("search:   {} cores", search.cores.len());
    assert_eq!(baseline.cores, search.cores);
    println!("identical");
    Ok(())
}
