// SPDX-License-Identifier: Apache-2.0

//! Inspect the four size bounds at the root of each component.

use krcore::maximum::upper_bound;
use krcore::{fixtures, preprocess, BoundKind, Query};

fn main() -> krcore::Result<()> {
    // Structurally a 4-core, but no large set is both cohesive and similar.
    let (g, sim) = fixtures::bound_gap();
    let query = Query::new(3, sim)?;

    for (i, comp) in preprocess(&g, &query)?.iter().enumerate() {
        let root = comp.root_state();
        print!("component {i} ({} vertices):", comp.len());
        for kind in BoundKind::ALL {
            print!(" {}={}", kind.name(), upper_bound(kind, comp, &root));
        }
        println!();
    }
    Ok(())
}
