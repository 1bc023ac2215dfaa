//! Finite windows of the standard example families.
//!
//! Numbering conventions:
//! * line, zigzag, segment: vertex `k` is `v_k`, `k = 0..n`.
//! * cycles: vertex `k` is the residue class `[k]` mod `r`, arcs `k -> k+1`.
//! * lattices: row-major, the first coordinate is most significant, so
//!   `(z_0, .., z_{l-1})` has index `Σ z_i · Π_{j>i} dims_j`; arcs `z -> z + e_i`.
//!
//! Closed-form distances of the infinite families survive windowing for the
//! line, the cycle and the zigzag. For lattice digraphs, comparable pairs
//! keep the taxicab distance and coordinatewise incomparable pairs have no
//! directed path either way, so their distance is infinite.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Digraph, DistanceTable, Graph, GraphLike, VertexId};

pub fn line_digraph(n: usize) -> Digraph {
    Digraph::new(n, (1..n).map(|k| (k - 1, k))).expect("valid arcs")
}

pub fn line_graph(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|k| (k - 1, k))).expect("valid edges")
}

/// The segment digraph `u_0 -> u_1 -> .. -> u_{n-1}`; `n = 2` gives the
/// single-arc segment.
pub fn segment(n: usize) -> Digraph {
    line_digraph(n)
}

pub fn cycle_digraph(r: usize) -> Result<Digraph> {
    if r < 2 {
        return Err(Error::BadParams(format!("cycle needs r >= 2, got {r}")));
    }
    Digraph::new(r, (0..r).map(|k| (k, (k + 1) % r)))
}

pub fn cycle_graph(r: usize) -> Result<Graph> {
    if r < 2 {
        return Err(Error::BadParams(format!("cycle needs r >= 2, got {r}")));
    }
    Graph::new(r, (0..r).map(|k| (k, (k + 1) % r)))
}

/// Zigzag window: every even vertex is a source with arcs to both neighbours.
pub fn zigzag(n: usize) -> Digraph {
    let arcs = (0..n).step_by(2).flat_map(|k| {
        let left = k.checked_sub(1).map(|j| (k, j));
        let right = (k + 1 < n).then_some((k, k + 1));
        left.into_iter().chain(right)
    });
    Digraph::new(n, arcs).expect("valid arcs")
}

pub fn complete_graph(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("valid edges")
}

fn lattice_links(dims: &[usize]) -> Result<(usize, Vec<(VertexId, VertexId)>)> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::BadParams(format!(
            "lattice needs at least one axis and positive widths, got {dims:?}"
        )));
    }
    let n = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or_else(|| Error::BadParams("lattice too large".into()))?;
    let mut links = Vec::new();
    for v in 0..n {
        let z = lattice_coords(dims, v);
        for axis in 0..dims.len() {
            if z[axis] + 1 < dims[axis] {
                let mut w = z.clone();
                w[axis] += 1;
                links.push((v, lattice_index(dims, &w)));
            }
        }
    }
    Ok((n, links))
}

pub fn lattice_digraph(dims: &[usize]) -> Result<Digraph> {
    let (n, links) = lattice_links(dims)?;
    Digraph::new(n, links)
}

pub fn lattice_graph(dims: &[usize]) -> Result<Graph> {
    let (n, links) = lattice_links(dims)?;
    Graph::new(n, links)
}

pub fn lattice_index(dims: &[usize], coords: &[usize]) -> VertexId {
    coords.iter().zip(dims).fold(0, |acc, (&z, &d)| acc * d + z)
}

pub fn lattice_coords(dims: &[usize], mut index: VertexId) -> Vec<usize> {
    let mut z = vec![0; dims.len()];
    for (slot, &d) in z.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    z
}

/// Canonical map from a line window of `n` vertices onto the `r`-cycle,
/// `v_k ↦ [k]`.
pub fn cycle_covering_map(n: usize, r: usize) -> Vec<VertexId> {
    (0..n).map(|k| k % r).collect()
}

/// Zigzag window onto the single-arc segment: even to `u_0`, odd to `u_1`.
pub fn zigzag_parity_map(n: usize) -> Vec<VertexId> {
    (0..n).map(|k| k % 2).collect()
}

/// Vertex map of the lattice inclusion that inserts a new axis at position
/// `axis` with fixed coordinate `value`. Returns the target dims and the map.
pub fn lattice_axis_inclusion(
    dims: &[usize],
    axis: usize,
    width: usize,
    value: usize,
) -> Result<(Vec<usize>, Vec<VertexId>)> {
    if axis > dims.len() || value >= width {
        return Err(Error::BadParams(format!(
            "cannot insert axis {axis} of width {width} at value {value} into {dims:?}"
        )));
    }
    let mut target = dims.to_vec();
    target.insert(axis, width);
    let n: usize = dims.iter().product();
    let map = (0..n)
        .map(|v| {
            let mut z = lattice_coords(dims, v);
            z.insert(axis, value);
            lattice_index(&target, &z)
        })
        .collect();
    Ok((target, map))
}

/// Either kind of input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Digraph(Digraph),
    Graph(Graph),
}

impl AnyGraph {
    pub fn vertex_count(&self) -> usize {
        match self {
            AnyGraph::Digraph(g) => g.vertex_count(),
            AnyGraph::Graph(g) => g.vertex_count(),
        }
    }

    pub fn distance_table(&self) -> DistanceTable {
        match self {
            AnyGraph::Digraph(g) => g.distance_table(),
            AnyGraph::Graph(g) => g.distance_table(),
        }
    }

    pub fn is_directed(&self) -> bool {
        matches!(self, AnyGraph::Digraph(_))
    }

    pub fn links(&self) -> Vec<(VertexId, VertexId)> {
        match self {
            AnyGraph::Digraph(g) => g.links(),
            AnyGraph::Graph(g) => g.links(),
        }
    }

    /// The digraph itself, or the full preimage of a graph.
    pub fn to_digraph(&self) -> Digraph {
        match self {
            AnyGraph::Digraph(g) => g.clone(),
            AnyGraph::Graph(g) => g.full_preimage(),
        }
    }
}

impl From<Digraph> for AnyGraph {
    fn from(g: Digraph) -> Self {
        AnyGraph::Digraph(g)
    }
}

impl From<Graph> for AnyGraph {
    fn from(g: Graph) -> Self {
        AnyGraph::Graph(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    LineDigraph,
    LineGraph,
    CycleDigraph,
    CycleGraph,
    Zigzag,
    Segment,
    LatticeDigraph,
    LatticeGraph,
    CompleteGraph,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 9] = [
        GeneratorKind::LineDigraph,
        GeneratorKind::LineGraph,
        GeneratorKind::CycleDigraph,
        GeneratorKind::CycleGraph,
        GeneratorKind::Zigzag,
        GeneratorKind::Segment,
        GeneratorKind::LatticeDigraph,
        GeneratorKind::LatticeGraph,
        GeneratorKind::CompleteGraph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::LineDigraph => "line_digraph",
            GeneratorKind::LineGraph => "line_graph",
            GeneratorKind::CycleDigraph => "cycle_digraph",
            GeneratorKind::CycleGraph => "cycle_graph",
            GeneratorKind::Zigzag => "zigzag",
            GeneratorKind::Segment => "segment",
            GeneratorKind::LatticeDigraph => "lattice_digraph",
            GeneratorKind::LatticeGraph => "lattice_graph",
            GeneratorKind::CompleteGraph => "complete_graph",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::BadParams(format!("unknown generator {s:?}")))
    }
}

/// A parsed generator spec such as `cycle_digraph:r=6`,
/// `gen:zigzag,n=8` or `lattice_digraph:dims=4x4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub params: Vec<(String, String)>,
}

impl FromStr for GeneratorSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().strip_prefix("gen:").unwrap_or(s.trim());
        let (kind, rest) = match body.find([':', ',']) {
            Some(i) => (&body[..i], &body[i + 1..]),
            None => (body, ""),
        };
        let kind: GeneratorKind = kind.parse()?;
        let params = rest
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                p.split_once('=')
                    .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                    .ok_or_else(|| Error::BadParams(format!("expected key=value, got {p:?}")))
            })
            .collect::<Result<_>>()?;
        Ok(GeneratorSpec { kind, params })
    }
}

impl GeneratorSpec {
    fn param(&self, keys: &[&str]) -> Option<&str> {
        self.params
            .iter()
            .find(|(k, _)| keys.contains(&k.as_str()))
            .map(|(_, v)| v.as_str())
    }

    fn usize_param(&self, keys: &[&str], default: Option<usize>) -> Result<usize> {
        match self.param(keys) {
            Some(v) => v
                .parse()
                .map_err(|_| Error::BadParams(format!("{}: not a number: {v:?}", keys[0]))),
            None => default.ok_or_else(|| {
                Error::BadParams(format!("{} needs parameter {}", self.kind, keys[0]))
            }),
        }
    }

    fn dims(&self) -> Result<Vec<usize>> {
        if let Some(d) = self.param(&["dims"]) {
            return d
                .split(['x', 'X', '*'])
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::BadParams(format!("bad dims {d:?}")))
                })
                .collect();
        }
        let axes = self.usize_param(&["l", "axes"], None)?;
        let width = self.usize_param(&["w", "n", "width"], None)?;
        Ok(vec![width; axes])
    }

    pub fn build(&self) -> Result<AnyGraph> {
        let positive = |n: usize| {
            if n == 0 {
                Err(Error::BadParams(format!("{} needs a positive size", self.kind)))
            } else {
                Ok(n)
            }
        };
        let size = |default| self.usize_param(&["n", "len"], default).and_then(positive);
        Ok(match self.kind {
            GeneratorKind::LineDigraph => line_digraph(size(None)?).into(),
            GeneratorKind::LineGraph => line_graph(size(None)?).into(),
            GeneratorKind::Segment => segment(size(Some(2))?).into(),
            GeneratorKind::Zigzag => zigzag(size(None)?).into(),
            GeneratorKind::CompleteGraph => complete_graph(size(None)?).into(),
            GeneratorKind::CycleDigraph => cycle_digraph(self.usize_param(&["r"], None)?)?.into(),
            GeneratorKind::CycleGraph => cycle_graph(self.usize_param(&["r"], None)?)?.into(),
            GeneratorKind::LatticeDigraph => lattice_digraph(&self.dims()?)?.into(),
            GeneratorKind::LatticeGraph => lattice_graph(&self.dims()?)?.into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Dist;

    #[test]
    fn zigzag_arcs_leave_even_vertices() {
        let z = zigzag(5);
        assert_eq!(z.links(), vec![(0, 1), (2, 1), (2, 3), (4, 3)]);
        assert_eq!(z.underlying_graph(), line_graph(5));
    }

    #[test]
    fn lattice_numbering_is_row_major() {
        let dims = [3, 4];
        assert_eq!(lattice_index(&dims, &[2, 1]), 9);
        assert_eq!(lattice_coords(&dims, 9), vec![2, 1]);
        let g = lattice_digraph(&[3, 3]).unwrap();
        let t = g.distance_table();
        assert_eq!(t.get(0, lattice_index(&[3, 3], &[2, 1])), Dist::Finite(3));
        assert_eq!(t.get(lattice_index(&[3, 3], &[0, 1]), lattice_index(&[3, 3], &[1, 0])), Dist::Infinite);
    }

    #[test]
    fn specs_parse_both_forms() {
        let a: GeneratorSpec = "gen:zigzag,n=8".parse().unwrap();
        let b: GeneratorSpec = "zigzag:n=8".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.build().unwrap().vertex_count(), 8);
        let l: GeneratorSpec = "lattice_digraph:l=2,w=3".parse().unwrap();
        assert_eq!(l.build().unwrap().vertex_count(), 9);
        let l: GeneratorSpec = "lattice_graph:dims=2x3x2".parse().unwrap();
        assert_eq!(l.build().unwrap().vertex_count(), 12);
        assert_eq!("segment".parse::<GeneratorSpec>().unwrap().build().unwrap().links(), vec![(0, 1)]);
        assert!("cycle_graph:r=1".parse::<GeneratorSpec>().unwrap().build().is_err());
        assert!("torus:r=1".parse::<GeneratorSpec>().is_err());
        assert!("line_graph:n=0".parse::<GeneratorSpec>().unwrap().build().is_err());
    }

    #[test]
    fn axis_inclusion_inserts_coordinate() {
        let (target, map) = lattice_axis_inclusion(&[2, 2], 1, 3, 2).unwrap();
        assert_eq!(target, vec![2, 3, 2]);
        assert_eq!(lattice_coords(&target, map[3]), vec![1, 2, 1]);
    }

    #[test]
    fn complete_graph_distances_are_one() {
        let t = complete_graph(5).distance_table();
        assert!((0..5).all(|u| (0..5).all(|v| u == v || t.get(u, v) == Dist::Finite(1))));
    }
}
