// SPDX-License-Identifier: Apache-2.0

//! Text input formats and JSON-lines output.
//!
//! * edge list: two whitespace-separated vertex ids per line;
//! * keyword attributes: `id token:weight token:weight ...`;
//! * point attributes: `id x y`.
//!
//! Blank lines and anything after `#` are ignored. Vertex ids are arbitrary
//! tokens; if every id is a plain non-negative integer they are ordered
//! numerically and written back as JSON numbers, otherwise lexicographically
//! and written as strings.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{AttributedGraph, VertexAttribute, VertexId};
use crate::search::KrCore;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttrMode {
    Keywords,
    Geo,
}

impl FromStr for AttrMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "keywords" => Ok(AttrMode::Keywords),
            "geo" => Ok(AttrMode::Geo),
            _ => Err(Error::Config(format!("unknown attribute mode {s:?} (keywords, geo)"))),
        }
    }
}

impl fmt::Display for AttrMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttrMode::Keywords => "keywords",
            AttrMode::Geo => "geo",
        })
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn parse_error(path: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        line,
        msg: msg.into(),
    }
}

pub fn parse_edges(text: &str, path: &str) -> Result<Vec<(String, String)>> {
    content_lines(text)
        .map(|(line, f)| match f.as_slice() {
            [u, v] => Ok((u.to_string(), v.to_string())),
            _ => Err(parse_error(path, line, format!("expected two vertex ids, found {} fields", f.len()))),
        })
        .collect()
}

fn parse_number(path: &str, line: usize, s: &str) -> Result<f64> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(parse_error(path, line, format!("{s:?} is not a finite number"))),
    }
}

pub fn parse_attributes(text: &str, path: &str, mode: AttrMode) -> Result<Vec<(String, VertexAttribute)>> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut out = Vec::new();
    for (line, f) in content_lines(text) {
        let id = f[0].to_string();
        if let Some(first) = seen.insert(id.clone(), line) {
            return Err(parse_error(path, line, format!("vertex {id} already has attributes (line {first})")));
        }
        let attr = match mode {
            AttrMode::Geo => {
                if f.len() != 3 {
                    return Err(parse_error(path, line, format!("expected `id x y`, found {} fields", f.len())));
                }
                VertexAttribute::point(parse_number(path, line, f[1])?, parse_number(path, line, f[2])?)
            }
            AttrMode::Keywords => {
                let mut items = Vec::with_capacity(f.len() - 1);
                for item in &f[1..] {
                    let Some((token, weight)) = item.rsplit_once(':') else {
                        return Err(parse_error(path, line, format!("expected token:weight, found {item:?}")));
                    };
                    let w = parse_number(path, line, weight)?;
                    if token.is_empty() || w <= 0.0 {
                        return Err(parse_error(path, line, format!("bad keyword {item:?}: weights must be positive")));
                    }
                    items.push((token.to_string(), w));
                }
                VertexAttribute::keywords(items)
            }
        };
        out.push((id, attr));
    }
    Ok(out)
}

fn canonical_integer(s: &str) -> Option<u64> {
    s.parse::<u64>().ok().filter(|n| n.to_string() == s)
}

/// Maps external ids to dense ids and assembles the graph. Every vertex named
/// in an edge needs an attribute; attributed vertices without edges are kept.
pub fn build_graph(edges: Vec<(String, String)>, attributes: Vec<(String, VertexAttribute)>) -> Result<AttributedGraph> {
    let attr_ids: HashMap<&str, usize> = attributes.iter().enumerate().map(|(i, (id, _))| (id.as_str(), i)).collect();
    let mut missing: Vec<&str> = edges
        .iter()
        .flat_map(|(u, v)| [u.as_str(), v.as_str()])
        .filter(|id| !attr_ids.contains_key(id))
        .collect();
    if !missing.is_empty() {
        missing.sort_unstable();
        missing.dedup();
        return Err(Error::MissingAttributes(missing.into_iter().map(String::from).collect()));
    }
    let n = attributes.len();
    if n > VertexId::MAX as usize {
        return Err(Error::IdOverflow(n));
    }
    let mut order: Vec<usize> = (0..n).collect();
    if attributes.iter().all(|(id, _)| canonical_integer(id).is_some()) {
        order.sort_by_key(|&i| canonical_integer(&attributes[i].0));
    } else {
        order.sort_by(|&a, &b| attributes[a].0.cmp(&attributes[b].0));
    }
    let mut dense = vec![0 as VertexId; n];
    for (d, &i) in order.iter().enumerate() {
        dense[i] = d as VertexId;
    }
    let id_of = |s: &str| dense[attr_ids[s]];
    let dense_edges: Vec<(VertexId, VertexId)> = edges.iter().map(|(u, v)| (id_of(u), id_of(v))).collect();
    let mut slots: Vec<Option<(String, VertexAttribute)>> = attributes.into_iter().map(Some).collect();
    let mut labels = Vec::with_capacity(n);
    let mut attrs = Vec::with_capacity(n);
    for i in order {
        let (id, attr) = slots[i].take().expect("each slot taken once");
        labels.push(id);
        attrs.push(attr);
    }
    AttributedGraph::with_labels(dense_edges, attrs, labels)
}

pub fn load_inputs(graph_path: &Path, attr_path: &Path, mode: AttrMode) -> Result<AttributedGraph> {
    let read = |p: &Path| {
        fs::read_to_string(p).map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))
    };
    let edges = parse_edges(&read(graph_path)?, &graph_path.display().to_string())?;
    let attrs = parse_attributes(&read(attr_path)?, &attr_path.display().to_string(), mode)?;
    build_graph(edges, attrs)
}

/// The external label as a JSON number when it is a plain integer.
pub fn label_json(label: &str) -> Value {
    match canonical_integer(label) {
        Some(n) => json!(n),
        None => json!(label),
    }
}

#[derive(Serialize)]
struct CoreLine {
    vertices: Vec<Value>,
    size: usize,
}

/// `{"vertices":[...],"size":n}` with external ids.
pub fn core_json(g: &AttributedGraph, core: &KrCore) -> String {
    let line = CoreLine {
        vertices: core.vertices().iter().map(|&u| label_json(g.label(u))).collect(),
        size: core.len(),
    };
    serde_json::to_string(&line).expect("plain data serializes")
}

/// One JSON object per line, in the given order.
pub fn write_cores<W: Write>(out: &mut W, g: &AttributedGraph, cores: &[KrCore]) -> Result<()> {
    for core in cores {
        writeln!(out, "{}", core_json(g, core))?;
    }
    Ok(())
}
