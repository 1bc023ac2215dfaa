//! Text edge lists and coordinate files.
//!
//! ```text
//! # comment
//! digraph 3
//! 0 1
//! 2 1
//! ```

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::generators::AnyGraph;
use crate::graph::{Digraph, Graph, GraphLike};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<AnyGraph> {
    let mut header: Option<(bool, usize)> = None;
    let mut links = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let (a, b) = (tok.next(), tok.next());
        if tok.next().is_some() {
            return Err(parse_err(line_no, "expected two tokens"));
        }
        match header {
            None => {
                let directed = match a {
                    Some("digraph") => true,
                    Some("graph") => false,
                    _ => return Err(parse_err(line_no, "expected `digraph <n>` or `graph <n>`")),
                };
                let n = b
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| parse_err(line_no, "missing vertex count"))?;
                header = Some((directed, n));
            }
            Some(_) => {
                let parse = |t: Option<&str>| {
                    t.and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| parse_err(line_no, format!("bad pair {line:?}")))
                };
                links.push((parse(a)?, parse(b)?));
            }
        }
    }
    let (directed, n) = header.ok_or_else(|| parse_err(0, "empty input"))?;
    Ok(if directed {
        Digraph::new(n, links)?.into()
    } else {
        Graph::new(n, links)?.into()
    })
}

pub fn write_edge_list(g: &AnyGraph) -> String {
    let mut out = String::new();
    let kind = if g.is_directed() { "digraph" } else { "graph" };
    writeln!(out, "{kind} {}", g.vertex_count()).unwrap();
    for (u, v) in g.links() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn write_digraph(g: &Digraph) -> String {
    write_edge_list(&AnyGraph::Digraph(g.clone()))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {}\n", g.vertex_count());
    for (u, v) in g.links() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    let bad = || Error::BadParams(format!("not an exact rational: {v}"));
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(bad),
        Value::String(s) => {
            let (num, den) = s.split_once('/').unwrap_or((s, "1"));
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        _ => Err(bad()),
    }
}

/// Vertex coordinates in ℚ^N: a JSON array of arrays, one per vertex, or an
/// object keyed by vertex id. Entries are integers or strings like `"-3/4"`.
pub fn parse_coords(json: &str, vertex_count: usize) -> Result<Vec<Vec<BigRational>>> {
    let value: Value =
        serde_json::from_str(json).map_err(|e| Error::BadParams(format!("coords: {e}")))?;
    let rows: Vec<&Value> = match &value {
        Value::Array(a) => a.iter().collect(),
        Value::Object(m) => (0..vertex_count)
            .map(|v| {
                m.get(&v.to_string())
                    .ok_or_else(|| Error::BadParams(format!("coords missing vertex {v}")))
            })
            .collect::<Result<_>>()?,
        _ => return Err(Error::BadParams("coords must be an array or object".into())),
    };
    if rows.len() != vertex_count {
        return Err(Error::BadParams(format!(
            "coords for {} vertices, graph has {vertex_count}",
            rows.len()
        )));
    }
    rows.into_iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::BadParams("each vertex needs a coordinate array".into()))?
                .iter()
                .map(parse_rational)
                .collect()
        })
        .collect()
}
