//! Digraphs, graphs and the symmetrized distance.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense vertex index, `0..vertex_count`.
pub type VertexId = usize;

/// A distance in ℕ ∪ {∞}. `Finite(_) < Infinite` always.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dist {
    Finite(u32),
    Infinite,
}

impl Dist {
    pub fn finite(self) -> Option<u32> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Dist::Infinite
    }

    fn from_raw(raw: u32) -> Dist {
        if raw == INF {
            Dist::Infinite
        } else {
            Dist::Finite(raw)
        }
    }
}

impl From<u32> for Dist {
    fn from(d: u32) -> Self {
        Dist::Finite(d)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(d) => write!(f, "{d}"),
            Dist::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Dist {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "∞") {
            return Ok(Dist::Infinite);
        }
        t.parse::<u32>()
            .map(Dist::Finite)
            .map_err(|_| Error::BadParams(format!("not a distance: {s:?}")))
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dist::Finite(d) => s.serialize_u32(*d),
            Dist::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Dist::Finite(n)),
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

const INF: u32 = u32::MAX;

/// Common interface of [`Digraph`] and [`Graph`]. A *link* is an arc for
/// digraphs and an edge for graphs.
pub trait GraphLike: Clone + Send + Sync + Sized {
    const DIRECTED: bool;

    fn vertex_count(&self) -> usize;
    fn has_link(&self, u: VertexId, v: VertexId) -> bool;
    /// Arcs, or edges as `(u, v)` with `u < v`; sorted.
    fn links(&self) -> Vec<(VertexId, VertexId)>;
    fn from_links<I>(n: usize, links: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>;
    fn distance_table(&self) -> DistanceTable;
    /// `(in-degree, out-degree)`; both equal the degree for graphs.
    fn degree_signature(&self, v: VertexId) -> (usize, usize);
}

fn check_link(n: usize, u: usize, v: usize) -> Result<()> {
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                count: n,
            });
        }
    }
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    Ok(())
}

/// A finite digraph without self-loops or parallel arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<VertexId>>,
    inc: Vec<Vec<VertexId>>,
    labels: Option<Vec<String>>,
}

impl Digraph {
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut out = vec![BTreeSet::new(); n];
        for (u, v) in arcs {
            check_link(n, u, v)?;
            out[u].insert(v);
        }
        let out: Vec<Vec<_>> = out.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut inc = vec![Vec::new(); n];
        for (u, succ) in out.iter().enumerate() {
            for &v in succ {
                inc[v].push(u);
            }
        }
        Ok(Digraph {
            out,
            inc,
            labels: None,
        })
    }

    pub fn empty(n: usize) -> Self {
        Digraph::new(n, []).expect("no arcs")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::BadParams(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn label(&self, v: VertexId) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    pub fn out_neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.out[u]
    }

    pub fn in_neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.inc[u]
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
    }

    /// Forget directions.
    /// One-way distances: `result[u][v]` is the length of a shortest
    /// directed path from `u` to `v`.
    pub fn directed_distances(&self) -> Vec<Vec<Dist>> {
        (0..self.vertex_count())
            .into_par_iter()
            .map(|s| bfs(&self.out, s).into_iter().map(Dist::from_raw).collect())
            .collect()
    }

    pub fn underlying_graph(&self) -> Graph {
        Graph::new(self.vertex_count(), self.arcs()).expect("arcs are valid edges")
    }

    /// Weak connectivity: connected as an undirected graph.
    pub fn is_weakly_connected(&self) -> bool {
        self.underlying_graph().is_connected()
    }
}

impl GraphLike for Digraph {
    const DIRECTED: bool = true;

    fn vertex_count(&self) -> usize {
        self.out.len()
    }

    fn has_link(&self, u: VertexId, v: VertexId) -> bool {
        self.has_arc(u, v)
    }

    fn links(&self) -> Vec<(VertexId, VertexId)> {
        self.arcs().collect()
    }

    fn from_links<I>(n: usize, links: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Digraph::new(n, links)
    }

    fn distance_table(&self) -> DistanceTable {
        // d(s, v) = min(s -> v, v -> s); the second is a BFS from s over reversed arcs.
        let rows: Vec<Vec<u32>> = (0..self.vertex_count())
            .into_par_iter()
            .map(|s| {
                let fwd = bfs(&self.out, s);
                let bwd = bfs(&self.inc, s);
                fwd.into_iter().zip(bwd).map(|(a, b)| a.min(b)).collect()
            })
            .collect();
        DistanceTable::from_rows(rows)
    }

    fn degree_signature(&self, v: VertexId) -> (usize, usize) {
        (self.inc[v].len(), self.out[v].len())
    }
}

/// A finite simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            check_link(n, u, v)?;
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph {
            adj: adj.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, []).expect("no edges")
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.adj[u]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// The digraph with both arcs `(u,v)` and `(v,u)` for every edge.
    pub fn full_preimage(&self) -> Digraph {
        Digraph::new(
            self.vertex_count(),
            self.edges().flat_map(|(u, v)| [(u, v), (v, u)]),
        )
        .expect("edges are valid arcs")
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        n == 0 || bfs(&self.adj, 0).iter().all(|&d| d != INF)
    }
}

impl GraphLike for Graph {
    const DIRECTED: bool = false;

    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn has_link(&self, u: VertexId, v: VertexId) -> bool {
        self.has_edge(u, v)
    }

    fn links(&self) -> Vec<(VertexId, VertexId)> {
        self.edges().collect()
    }

    fn from_links<I>(n: usize, links: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Graph::new(n, links)
    }

    fn distance_table(&self) -> DistanceTable {
        let rows = (0..self.vertex_count())
            .into_par_iter()
            .map(|s| bfs(&self.adj, s))
            .collect();
        DistanceTable::from_rows(rows)
    }

    fn degree_signature(&self, v: VertexId) -> (usize, usize) {
        (self.adj[v].len(), self.adj[v].len())
    }
}

fn bfs(adj: &[Vec<VertexId>], s: VertexId) -> Vec<u32> {
    let mut dist = vec![INF; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == INF {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Symmetric |V|×|V| table of distances in ℕ ∪ {∞}. Not necessarily a
/// metric: the triangle inequality can fail for digraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    raw: Vec<u32>,
}

impl DistanceTable {
    fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        DistanceTable {
            n,
            raw: rows.into_iter().flatten().collect(),
        }
    }

    /// Build from explicit values. Fails unless square, symmetric and zero
    /// exactly on the diagonal.
    pub fn from_values(values: Vec<Vec<Dist>>) -> Result<Self> {
        let n = values.len();
        let mut raw = Vec::with_capacity(n * n);
        for row in &values {
            if row.len() != n {
                return Err(Error::BadParams("distance table is not square".into()));
            }
            raw.extend(row.iter().map(|d| d.finite().unwrap_or(INF)));
        }
        let t = DistanceTable { n, raw };
        for u in 0..n {
            for v in 0..n {
                let d = t.raw(u, v);
                if d != t.raw(v, u) || (u == v) != (d == 0) {
                    return Err(Error::BadParams(format!(
                        "invalid distance entry at ({u}, {v})"
                    )));
                }
            }
        }
        Ok(t)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> Dist {
        Dist::from_raw(self.raw(u, v))
    }

    /// Raw entry with `u32::MAX` standing for ∞; compares like [`Dist`].
    #[inline]
    pub fn raw(&self, u: VertexId, v: VertexId) -> u32 {
        self.raw[u * self.n + v]
    }

    pub fn rows(&self) -> Vec<Vec<Dist>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| self.get(u, v)).collect())
            .collect()
    }

    /// Largest finite off-diagonal value, 0 if there is none.
    pub fn max_finite(&self) -> u32 {
        self.raw.iter().copied().filter(|&d| d != INF).max().unwrap_or(0)
    }

    /// Supremum of all entries: the doubled radius of the (di)graph.
    pub fn sup(&self) -> Dist {
        Dist::from_raw(self.raw.iter().copied().max().unwrap_or(0))
    }

    /// Sorted distinct finite off-diagonal values.
    pub fn finite_values(&self) -> Vec<u32> {
        let set: BTreeSet<u32> = self
            .raw
            .iter()
            .copied()
            .filter(|&d| d != 0 && d != INF)
            .collect();
        set.into_iter().collect()
    }

    pub fn has_infinite(&self) -> bool {
        self.raw.contains(&INF)
    }

    /// Pointwise `self >= other`.
    pub fn dominates(&self, other: &DistanceTable) -> bool {
        self.n == other.n && self.raw.iter().zip(&other.raw).all(|(a, b)| a >= b)
    }
}

impl Serialize for DistanceTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DistanceTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Dist>>::deserialize(d)?;
        DistanceTable::from_values(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dist_orders_infinity_last() {
        assert!(Dist::Finite(u32::MAX - 1) < Dist::Infinite);
        assert_eq!("inf".parse::<Dist>().unwrap(), Dist::Infinite);
        assert_eq!(serde_json::to_string(&Dist::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<Dist>("7").unwrap(), Dist::Finite(7));
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert_eq!(Digraph::new(2, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn symmetric_pair_collapses() {
        let g = Digraph::new(2, [(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.arc_count(), 2);
        assert_eq!(g.underlying_graph().links(), vec![(0, 1)]);
        assert_eq!(Digraph::empty(3).underlying_graph().edge_count(), 0);
    }

    #[test]
    fn preimage_round_trip() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let d = g.full_preimage();
        assert_eq!(d.links(), vec![(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2)]);
        assert_eq!(d.underlying_graph(), g);
        assert_eq!(d.distance_table(), g.distance_table());
    }

    #[test]
    fn digraph_distance_takes_min_direction() {
        // u -> v <- w: d(u,w) is infinite although both touch v.
        let g = Digraph::new(3, [(0, 1), (2, 1)]).unwrap();
        let t = g.distance_table();
        assert_eq!(t.get(0, 1), Dist::Finite(1));
        assert_eq!(t.get(1, 0), Dist::Finite(1));
        assert_eq!(t.get(0, 2), Dist::Infinite);
        assert_eq!(g.underlying_graph().distance_table().get(0, 2), Dist::Finite(2));
        assert_eq!(t.sup(), Dist::Infinite);
        assert_eq!(t.finite_values(), vec![1]);
    }

    #[test]
    fn table_json_uses_inf() {
        let t = Digraph::new(2, []).unwrap().distance_table();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"[[0,"inf"],["inf",0]]"#);
        assert_eq!(serde_json::from_str::<DistanceTable>(&s).unwrap(), t);
    }
}
