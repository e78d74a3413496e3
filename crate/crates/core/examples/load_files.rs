// SPDX-License-Identifier: Apache-2.0

//! Read an edge list and attribute file, write cores as JSON lines.
//!
//!     cargo run --example load_files -- edges.txt attrs.txt 0.9 2
//!
//! Without arguments a small demo pair is written to a temp directory.

use std::env;
use std::fs;
use std::io;
use std::path::PathBuf;

use krcore::io::{load_inputs, write_cores, AttrMode};
use krcore::{advanced_enum, EnumConfig, Query, Similarity, SimilarityMetric};

fn demo_files() -> io::Result<(PathBuf, PathBuf)> {
    let dir = env::temp_dir().join("krcore-demo");
    fs::create_dir_all(&dir)?;
    let edges = dir.join("edges.txt");
    let attrs = dir.join("attrs.txt");
    fs::write(&edges, "a b\na c\nb c\nc d\nd e\nc e\n")?;
    fs::write(&attrs, "a 0 0\nb 0.2 0\nc 0.4 0\nd 0.9 0\ne 1.0 0\n")?;
    Ok((edges, attrs))
}

fn main() -> krcore::Result<()> {
    let args: Vec<String> = env::args().skip(1).collect();
    let (edges, attrs, r, k) = match args.as_slice() {
        [e, a, r, k] => (
            PathBuf::from(e),
            PathBuf::from(a),
            r.parse().expect("r is a number"),
            k.parse().expect("k is an integer"),
        ),
        _ => {
            let (e, a) = demo_files()?;
            (e, a, 0.5, 2)
        }
    };

    let g = load_inputs(&edges, &attrs, AttrMode::Geo)?;
    let query = Query::new(k, Similarity::new(SimilarityMetric::Euclidean, r)?)?;
    let res = advanced_enum(&g, &query, &EnumConfig::default())?;
    write_cores(&mut io::stdout().lock(), &g, &res.cores)?;
    Ok(())
}
