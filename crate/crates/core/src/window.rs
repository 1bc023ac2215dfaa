//! Windows, window graphs and constraint independence complexes.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::graph::{Digraph, Dist, DistanceTable, GraphLike, VertexId};
use crate::linalg::{matrix_rank, SparseVec};
use crate::morphism::GraphMorphism;

/// The constraint interval `(n, m]`, `1 <= n < m <= ∞`. Displayed in the
/// halved convention as `(n/2, m/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Window {
    n: u32,
    m: Dist,
}

impl Window {
    pub fn new(n: u32, m: impl Into<Dist>) -> Result<Self> {
        let m = m.into();
        if n == 0 {
            return Err(Error::BadWindow("lower threshold must be at least 1".into()));
        }
        if m <= Dist::Finite(n) {
            return Err(Error::BadWindow(format!("need n < m, got ({n}, {m}]")));
        }
        Ok(Window { n, m })
    }

    pub fn up_to_infinity(n: u32) -> Result<Self> {
        Window::new(n, Dist::Infinite)
    }

    /// `(1, ∞]`: the window of ordinary independent sets.
    pub fn classical() -> Self {
        Window {
            n: 1,
            m: Dist::Infinite,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> Dist {
        self.m
    }

    #[inline]
    pub fn admits(&self, d: Dist) -> bool {
        d > Dist::Finite(self.n) && d <= self.m
    }

    /// Same test on a raw table entry (`u32::MAX` is ∞).
    #[inline]
    pub fn admits_raw(&self, d: u32) -> bool {
        let m = self.m.finite().unwrap_or(u32::MAX);
        d > self.n && d <= m
    }

    /// Halved label such as `(1/2, inf]`.
    pub fn half_label(&self) -> String {
        format!("({}/2, {}]", self.n, match self.m {
            Dist::Finite(m) => format!("{m}/2"),
            Dist::Infinite => "inf".into(),
        })
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n, self.m)
    }
}

impl FromStr for Window {
    type Err = Error;
    /// `n:m` with `m` possibly `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, m) = s
            .split_once(':')
            .ok_or_else(|| Error::BadWindow(format!("expected n:m, got {s:?}")))?;
        let n = n
            .trim()
            .parse()
            .map_err(|_| Error::BadWindow(format!("bad lower threshold {n:?}")))?;
        let m: Dist = m.parse().map_err(|_| Error::BadWindow(format!("bad upper threshold {m:?}")))?;
        Window::new(n, m)
    }
}

/// Pairs admitted by a window, as an undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowGraph {
    window: Window,
    adj: Vec<FixedBitSet>,
}

impl WindowGraph {
    pub fn new(table: &DistanceTable, window: Window) -> Self {
        let n = table.vertex_count();
        let adj = (0..n)
            .map(|u| {
                let mut row = FixedBitSet::with_capacity(n);
                for v in 0..n {
                    if u != v && window.admits_raw(table.raw(u, v)) {
                        row.insert(v);
                    }
                }
                row
            })
            .collect();
        WindowGraph { window, adj }
    }

    pub fn of<G: GraphLike>(g: &G, window: Window) -> Self {
        WindowGraph::new(&g.distance_table(), window)
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].contains(v)
    }

    pub fn adjacency(&self, u: VertexId) -> &FixedBitSet {
        &self.adj[u]
    }

    pub fn neighbors(&self, u: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[u].ones()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| self.neighbors(u).filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn is_clique(&self, vertices: &[VertexId]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

/// A simplex as a strictly increasing vertex list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Sorts and removes duplicates.
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Number of vertices; the dimension is one less.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Codimension-one faces, the `i`-th omitting vertex `i`.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut f = self.0.clone();
            f.remove(i);
            Simplex(f)
        })
    }
}

/// Dimension of a complex, with truncation made explicit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComplexDimension {
    /// `None` for the empty complex.
    pub dim: Option<usize>,
    /// Simplices above the dimension cap exist and were not enumerated.
    pub capped: bool,
}

/// The flag complex of a window graph, enumerated up to `dim_cap`.
/// Simplices of each dimension are materialized on first use, in
/// lexicographic order.
#[derive(Debug)]
pub struct WindowComplex {
    graph: WindowGraph,
    dim_cap: usize,
    levels: Vec<OnceLock<Vec<Simplex>>>,
}

impl Clone for WindowComplex {
    fn clone(&self) -> Self {
        WindowComplex::new(self.graph.clone(), self.dim_cap)
    }
}

impl WindowComplex {
    pub fn new(graph: WindowGraph, dim_cap: usize) -> Self {
        WindowComplex {
            graph,
            dim_cap,
            levels: (0..=dim_cap).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn from_table(table: &DistanceTable, window: Window, dim_cap: usize) -> Self {
        WindowComplex::new(WindowGraph::new(table, window), dim_cap)
    }

    pub fn graph(&self) -> &WindowGraph {
        &self.graph
    }

    pub fn window(&self) -> Window {
        self.graph.window
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// Simplices of dimension `d`; empty above the cap.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        if d > self.dim_cap {
            return &[];
        }
        self.levels[d].get_or_init(|| {
            if d == 0 {
                return (0..self.graph.vertex_count()).map(|v| Simplex(vec![v])).collect();
            }
            let mut out = Vec::new();
            for s in self.simplices(d - 1) {
                let last = *s.0.last().expect("nonempty");
                let mut common = self.graph.adj[s.0[0]].clone();
                for &v in &s.0[1..] {
                    common.intersect_with(&self.graph.adj[v]);
                }
                for w in common.ones().filter(|&w| w > last) {
                    let mut t = s.0.clone();
                    t.push(w);
                    out.push(Simplex(t));
                }
            }
            out
        })
    }

    /// Simplex counts per dimension, trailing zeros removed.
    pub fn counts(&self) -> Vec<usize> {
        let mut c: Vec<usize> = (0..=self.dim_cap).map(|d| self.simplices(d).len()).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        c
    }

    pub fn dimension(&self) -> ComplexDimension {
        let counts = self.counts();
        let dim = counts.len().checked_sub(1);
        let capped = dim == Some(self.dim_cap)
            && self.simplices(self.dim_cap).iter().any(|s| {
                let last = *s.0.last().expect("nonempty");
                (last + 1..self.graph.vertex_count()).any(|w| s.0.iter().all(|&v| self.graph.has_edge(v, w)))
            });
        ComplexDimension { dim, capped }
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        !s.is_empty()
            && s.dim() <= self.dim_cap
            && s.0.iter().all(|&v| v < self.graph.vertex_count())
            && self.graph.is_clique(&s.0)
    }

    /// Position of `s` in `simplices(s.dim())`.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.simplices(s.dim()).binary_search(s).ok()
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        (0..=self.dim_cap).flat_map(move |d| self.simplices(d).iter())
    }
}

/// Ordered `k`-tuples of distinct, pairwise window-adjacent vertices, in
/// lexicographic order.
pub fn ordered_configurations(graph: &WindowGraph, k: usize) -> Vec<Vec<VertexId>> {
    fn grow(g: &WindowGraph, k: usize, cur: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..g.vertex_count() {
            if cur.iter().all(|&u| u != v && g.has_edge(u, v)) {
                cur.push(v);
                grow(g, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k >= 1 {
        grow(graph, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Smallest and largest pairwise distance of a vertex set. A single vertex
/// has `(∞, 0)`, so it is alive in every window.
pub fn pairwise_extremes(table: &DistanceTable, vertices: &[VertexId]) -> (Dist, Dist) {
    let mut lo = Dist::Infinite;
    let mut hi = Dist::Finite(0);
    for (i, &u) in vertices.iter().enumerate() {
        for &v in &vertices[i + 1..] {
            let d = table.get(u, v);
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilteredSimplex {
    pub simplex: Simplex,
    pub minpd: Dist,
    pub maxpd: Dist,
}

impl FilteredSimplex {
    /// `σ ∈ Ind(n, m)` iff `n < minpd` and `maxpd <= m`.
    pub fn alive_at(&self, w: Window) -> bool {
        Dist::Finite(w.n()) < self.minpd && self.maxpd <= w.m()
    }
}

/// Every simplex of `Ind(1, ∞)` with its pairwise distance extremes. The
/// complexes of all windows are sub-complexes, read off by
/// [`FilteredSimplex::alive_at`].
#[derive(Debug, Clone)]
pub struct Bifiltration {
    simplices: Vec<FilteredSimplex>,
    n_thresholds: Vec<u32>,
    m_thresholds: Vec<Dist>,
    dim_cap: usize,
}

impl Bifiltration {
    pub fn new(table: &DistanceTable, dim_cap: usize) -> Self {
        let full = WindowComplex::from_table(table, Window::classical(), dim_cap);
        let simplices = full
            .all_simplices()
            .map(|s| {
                let (minpd, maxpd) = pairwise_extremes(table, s.vertices());
                FilteredSimplex {
                    simplex: s.clone(),
                    minpd,
                    maxpd,
                }
            })
            .collect();
        let values = table.finite_values();
        let mut n_thresholds = vec![1];
        n_thresholds.extend(values.iter().copied().filter(|&d| d > 1));
        let mut m_thresholds: Vec<Dist> = values.iter().copied().filter(|&d| d >= 2).map(Dist::Finite).collect();
        m_thresholds.push(Dist::Infinite);
        Bifiltration {
            simplices,
            n_thresholds,
            m_thresholds,
            dim_cap,
        }
    }

    pub fn simplices(&self) -> &[FilteredSimplex] {
        &self.simplices
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// Lower thresholds: 1 and every finite distance above 1, ascending.
    pub fn n_thresholds(&self) -> &[u32] {
        &self.n_thresholds
    }

    /// Upper thresholds: every finite distance from 2, then ∞.
    pub fn m_thresholds(&self) -> &[Dist] {
        &self.m_thresholds
    }

    /// Every window `(n, m]` on the threshold grid.
    pub fn grid(&self) -> Vec<Window> {
        self.n_thresholds
            .iter()
            .flat_map(|&n| self.m_thresholds.iter().filter_map(move |&m| Window::new(n, m).ok()))
            .collect()
    }

    pub fn complex_at(&self, w: Window) -> Vec<&Simplex> {
        self.simplices
            .iter()
            .filter(|s| s.alive_at(w))
            .map(|s| &s.simplex)
            .collect()
    }
}

/// Result of comparing two complexes on the same vertex set under the
/// vertex-identity map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionCheck {
    pub source_window: Window,
    pub target_window: Window,
    pub source_counts: Vec<usize>,
    pub target_counts: Vec<usize>,
    /// Source and target have the same simplices.
    pub equal: bool,
}

/// Verify that every simplex of `source` is a simplex of `target`.
pub fn check_inclusion(source: &WindowComplex, target: &WindowComplex) -> Result<InclusionCheck> {
    if let Some(s) = source.all_simplices().find(|s| !target.contains(s)) {
        return Err(Error::NotASimplicialMap(format!(
            "simplex {:?} of Ind{} is missing from Ind{}",
            s.vertices(),
            source.window().half_label(),
            target.window().half_label()
        )));
    }
    let (sc, tc) = (source.counts(), target.counts());
    Ok(InclusionCheck {
        source_window: source.window(),
        target_window: target.window(),
        equal: sc == tc,
        source_counts: sc,
        target_counts: tc,
    })
}

/// Ind(G, n/2, ∞) → Ind(Ĝ, n/2, ∞) for each `n`, where `G` is the
/// underlying graph.
pub fn embed_i(g: &Digraph, ns: &[u32], dim_cap: usize) -> Result<Vec<InclusionCheck>> {
    let directed = g.distance_table();
    let undirected = g.underlying_graph().distance_table();
    ns.iter()
        .map(|&n| {
            let w = Window::up_to_infinity(n)?;
            check_inclusion(
                &WindowComplex::from_table(&undirected, w, dim_cap),
                &WindowComplex::from_table(&directed, w, dim_cap),
            )
        })
        .collect()
}

/// Ind(Ĝ, 1/2, m/2) → Ind(G, 1/2, m/2) for each `m`.
pub fn embed_j(g: &Digraph, ms: &[Dist], dim_cap: usize) -> Result<Vec<InclusionCheck>> {
    let directed = g.distance_table();
    let undirected = g.underlying_graph().distance_table();
    ms.iter()
        .map(|&m| {
            let w = Window::new(1, m)?;
            check_inclusion(
                &WindowComplex::from_table(&directed, w, dim_cap),
                &WindowComplex::from_table(&undirected, w, dim_cap),
            )
        })
        .collect()
}

/// Image of one simplex: target dimension, index there, and the sign of
/// the permutation sorting the image vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimplexImage {
    pub dim: usize,
    pub index: usize,
    pub sign: i64,
}

/// A vertex map applied to every simplex of a complex.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    /// `images[d][i]` is the image of the `i`-th `d`-simplex.
    pub images: Vec<Vec<SimplexImage>>,
}

impl SimplicialMap {
    /// Apply `vertex_map` to every simplex of `source`; fails if some image
    /// is not a simplex of `target`.
    pub fn new(source: &WindowComplex, target: &WindowComplex, vertex_map: &[VertexId]) -> Result<Self> {
        let images = (0..=source.dim_cap())
            .map(|d| {
                source
                    .simplices(d)
                    .iter()
                    .map(|s| {
                        let raw: Vec<_> = s.vertices().iter().map(|&v| vertex_map[v]).collect();
                        let sign = permutation_sign(&raw);
                        let image = Simplex::new(raw);
                        let index = target.index_of(&image).ok_or_else(|| {
                            Error::NotASimplicialMap(format!(
                                "{:?} maps to {:?}, not a simplex of the target",
                                s.vertices(),
                                image.vertices()
                            ))
                        })?;
                        Ok(SimplexImage {
                            dim: image.dim(),
                            index,
                            sign,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(SimplicialMap { images })
    }

    pub fn is_dimension_preserving(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(d, level)| level.iter().all(|im| im.dim == d))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().flatten().all(|im| seen.insert((im.dim, im.index)))
    }
}

/// Sign of the permutation sorting `xs`; 0 when an entry repeats.
pub fn permutation_sign(xs: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            match xs[i].cmp(&xs[j]) {
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialMapReport {
    pub window: Window,
    pub source_counts: Vec<usize>,
    pub target_counts: Vec<usize>,
    pub injective: bool,
    pub dimension_preserving: bool,
}

/// The simplicial map `σ ↦ φ(σ)` between window complexes, checked against
/// the radius precondition: `φ` must preserve distances up to `m`.
pub fn induced_complex_map<G: GraphLike>(
    phi: &GraphMorphism<'_, G>,
    window: Window,
    dim_cap: usize,
) -> Result<(SimplicialMap, SimplicialMapReport)> {
    let report = phi.geodesic_report()?;
    if !report.covers(window.m()) {
        return Err(Error::RadiusTooSmall {
            verified: report.max_verified_radius_doubled,
            required: window.m(),
        });
    }
    let source = WindowComplex::from_table(&phi.source.distance_table(), window, dim_cap);
    let target = WindowComplex::from_table(&phi.target.distance_table(), window, dim_cap);
    let map = SimplicialMap::new(&source, &target, phi.map())?;
    if !map.is_dimension_preserving() {
        return Err(Error::NotASimplicialMap("a simplex collapsed under the map".into()));
    }
    let report = SimplicialMapReport {
        window,
        source_counts: source.counts(),
        target_counts: target.counts(),
        injective: map.is_injective(),
        dimension_preserving: true,
    };
    Ok((map, report))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineReport {
    pub regular: bool,
    /// First simplex (in dimension-then-lexicographic order) whose points
    /// are affinely dependent.
    pub violation: Option<Simplex>,
    /// The ambient dimension is below `k − 1` while simplices with `k`
    /// vertices exist, so regularity was impossible.
    pub dimension_too_small: bool,
}

/// Whether every simplex with at most `k` vertices has affinely
/// independent image points. Exact rational arithmetic.
pub fn check_affine_regularity(
    table: &DistanceTable,
    window: Window,
    k: usize,
    coords: &[Vec<BigRational>],
) -> Result<AffineReport> {
    if k == 0 {
        return Err(Error::BadParams("k must be at least 1".into()));
    }
    if coords.len() != table.vertex_count() {
        return Err(Error::BadParams(format!(
            "{} coordinate vectors for {} vertices",
            coords.len(),
            table.vertex_count()
        )));
    }
    let ambient = coords.first().map_or(0, Vec::len);
    if coords.iter().any(|c| c.len() != ambient) {
        return Err(Error::BadParams("coordinate vectors differ in length".into()));
    }
    let complex = WindowComplex::from_table(table, window, k - 1);
    let q = Rationals;
    let violation = (1..k).flat_map(|d| complex.simplices(d).iter()).find(|s| {
        let base = &coords[s.vertices()[0]];
        let diffs: Vec<SparseVec<BigRational>> = s.vertices()[1..]
            .iter()
            .map(|&v| {
                coords[v]
                    .iter()
                    .zip(base)
                    .enumerate()
                    .map(|(i, (a, b))| (i, a - b))
                    .filter(|(_, x)| !num_traits::Zero::is_zero(x))
                    .collect()
            })
            .collect();
        matrix_rank(&q, &diffs) < s.dim()
    });
    let dimension_too_small = ambient + 1 < k && !complex.simplices(k - 1).is_empty();
    Ok(AffineReport {
        regular: violation.is_none(),
        violation: violation.cloned(),
        dimension_too_small,
    })
}
