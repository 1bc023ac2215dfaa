//! Windowed independence numbers and capacity lower bounds.
//!
//! `α(G, w)` is the clique number of the window graph: one more than the
//! dimension of the window complex.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Digraph, GraphLike, VertexId};
use crate::morphism::GraphMorphism;
use crate::product::{power_map, strong_power_capped, PRODUCT_CAP};
use crate::window::{Window, WindowGraph};

/// Default branch-node budget per clique search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A maximum clique with the number of branch nodes visited.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    pub size: usize,
    pub witness: Vec<VertexId>,
    pub nodes: u64,
}

struct Search<'a> {
    adj: &'a [FixedBitSet],
    budget: u64,
    nodes: u64,
    best: Vec<VertexId>,
    current: Vec<VertexId>,
    exhausted: bool,
}

impl Search<'_> {
    /// Greedy sequential colouring of `p`; returns vertices ordered by
    /// colour with their colour numbers (1-based, non-decreasing).
    fn colour_sort(&self, p: &FixedBitSet) -> (Vec<VertexId>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count_ones(..));
        let mut colours = Vec::with_capacity(order.capacity());
        let mut uncoloured = p.clone();
        let mut colour = 0;
        while !uncoloured.is_clear() {
            colour += 1;
            let mut available = uncoloured.clone();
            while let Some(v) = available.minimum() {
                available.set(v, false);
                available.difference_with(&self.adj[v]);
                uncoloured.set(v, false);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, mut p: FixedBitSet) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let (order, colours) = self.colour_sort(&p);
        for i in (0..order.len()).rev() {
            if self.current.len() + colours[i] <= self.best.len() || self.exhausted {
                return;
            }
            let v = order[i];
            self.current.push(v);
            let mut next = p.clone();
            next.intersect_with(&self.adj[v]);
            if next.is_clear() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p.set(v, false);
        }
    }
}

/// Clique grown from a highest-degree vertex, used to seed the search.
fn greedy_clique(adj: &[FixedBitSet]) -> Vec<VertexId> {
    let Some(start) = (0..adj.len()).max_by_key(|&v| (adj[v].count_ones(..), std::cmp::Reverse(v))) else {
        return Vec::new();
    };
    let mut clique = vec![start];
    let mut candidates = adj[start].clone();
    while let Some(v) = candidates.ones().max_by_key(|&v| (adj[v].count_ones(..), std::cmp::Reverse(v))) {
        clique.push(v);
        candidates.intersect_with(&adj[v]);
    }
    clique
}

/// Maximum clique by branch and bound with a greedy colouring bound. On
/// budget exhaustion returns `Timeout` with a lower bound (best clique
/// found) and an upper bound (colours used on the whole graph).
pub fn max_clique(graph: &WindowGraph, budget: u64) -> Result<CliqueResult> {
    let n = graph.vertex_count();
    let adj: Vec<FixedBitSet> = (0..n).map(|v| graph.adjacency(v).clone()).collect();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut s = Search {
        adj: &adj,
        budget,
        nodes: 0,
        best: greedy_clique(&adj),
        current: Vec::new(),
        exhausted: false,
    };
    if n > 0 {
        s.expand(all.clone());
    }
    if s.exhausted {
        let upper = s.colour_sort(&all).1.last().copied().unwrap_or(0);
        return Err(Error::Timeout {
            lower: s.best.len(),
            upper: upper.max(s.best.len()),
            budget,
        });
    }
    let mut witness = s.best;
    witness.sort_unstable();
    Ok(CliqueResult {
        size: witness.len(),
        witness,
        nodes: s.nodes,
    })
}

/// `α(g, w)` with the default budget.
pub fn alpha<G: GraphLike>(g: &G, window: Window) -> Result<usize> {
    max_clique(&WindowGraph::of(g, window), DEFAULT_BUDGET).map(|r| r.size)
}

/// An exact real root `radicand^(1/index)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    radicand: BigUint,
    index: u32,
}

impl Root {
    /// Reduced so that `index` is minimal (e.g. `4^(1/2)` becomes `2`).
    pub fn new(radicand: impl Into<BigUint>, index: u32) -> Self {
        assert!(index >= 1, "root index must be positive");
        let radicand = radicand.into();
        for k in (2..=index).rev().filter(|k| index % k == 0) {
            let r = radicand.nth_root(k);
            if r.pow(k) == radicand {
                return Root::new(r, index / k);
            }
        }
        Root { radicand, index }
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn to_f64(&self) -> f64 {
        self.radicand
            .to_f64()
            .unwrap_or(f64::INFINITY)
            .powf(1.0 / self.index as f64)
    }
}

impl Ord for Root {
    /// `a^(1/p)` vs `b^(1/q)` compares `a^q` with `b^p`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.radicand
            .pow(other.index)
            .cmp(&other.radicand.pow(self.index))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 1 {
            write!(f, "{}", self.radicand)
        } else {
            write!(f, "{}^(1/{})", self.radicand, self.index)
        }
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerAlpha {
    pub p: usize,
    pub alpha: usize,
    pub root: Root,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupermultiplicativityCheck {
    pub p: usize,
    pub q: usize,
    pub holds: bool,
}

/// Finite-`p` lower bound for the windowed capacity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapacityEstimate {
    pub window: Window,
    pub p_max: usize,
    pub powers: Vec<PowerAlpha>,
    /// `max_p α(G^⊠p)^(1/p)`; a lower bound, never an extrapolated limit.
    pub best_bound: Root,
    pub supermultiplicativity: Vec<SupermultiplicativityCheck>,
}

/// `α(g^⊠p, window)` for a single power.
pub fn power_alpha<G: GraphLike>(g: &G, window: Window, p: usize, budget: u64) -> Result<PowerAlpha> {
    let gp = strong_power_capped(g, p, PRODUCT_CAP)?;
    let a = max_clique(&WindowGraph::of(&gp, window), budget)?.size;
    Ok(PowerAlpha {
        p,
        alpha: a,
        root: Root::new(a as u64, p as u32),
    })
}

impl CapacityEstimate {
    /// Assemble from `α` of powers `1..=p_max`, in order.
    pub fn from_powers(window: Window, powers: Vec<PowerAlpha>) -> Result<Self> {
        let p_max = powers.len();
        if p_max == 0 || powers.iter().enumerate().any(|(i, x)| x.p != i + 1) {
            return Err(Error::BadParams("powers must be 1..=p_max in order".into()));
        }
        let best_bound = powers.iter().map(|x| x.root.clone()).max().expect("nonempty");
        let supermultiplicativity = (1..=p_max)
            .flat_map(|p| (p..=p_max - p).map(move |q| (p, q)))
            .map(|(p, q)| SupermultiplicativityCheck {
                p,
                q,
                holds: powers[p + q - 1].alpha >= powers[p - 1].alpha * powers[q - 1].alpha,
            })
            .collect();
        Ok(CapacityEstimate {
            window,
            p_max,
            powers,
            best_bound,
            supermultiplicativity,
        })
    }
}

pub fn capacity_bound<G: GraphLike>(g: &G, window: Window, p_max: usize, budget: u64) -> Result<CapacityEstimate> {
    if p_max == 0 {
        return Err(Error::BadParams("p_max must be at least 1".into()));
    }
    let powers = (1..=p_max)
        .into_par_iter()
        .map(|p| power_alpha(g, window, p, budget))
        .collect::<Result<Vec<_>>>()?;
    CapacityEstimate::from_powers(window, powers)
}

/// For one power: `α(G^⊠p)`, `α(π(Ĝ^⊠p))` and `α(Ĝ^⊠p)` at one window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainEntry {
    pub p: usize,
    pub window: Window,
    pub graph_power: usize,
    pub underlying_of_power: usize,
    pub digraph_power: usize,
}

impl ChainEntry {
    /// `α(G^⊠p) ≤ α(π(Ĝ^⊠p)) ≤ α(Ĝ^⊠p)`, expected for `m = ∞`.
    pub fn upward_chain_holds(&self) -> bool {
        self.graph_power <= self.underlying_of_power && self.underlying_of_power <= self.digraph_power
    }

    /// `α(Ĝ^⊠p) ≤ α(π(Ĝ^⊠p))`, expected for `n = 1`.
    pub fn digraph_below_underlying(&self) -> bool {
        self.digraph_power <= self.underlying_of_power
    }

    /// `α(π(Ĝ^⊠p)) ≤ α(G^⊠p)`: measured only, it fails in general.
    pub fn underlying_below_graph_power(&self) -> bool {
        self.underlying_of_power <= self.graph_power
    }
}

pub fn capacity_chain(g: &Digraph, window: Window, p_max: usize, budget: u64) -> Result<Vec<ChainEntry>> {
    let u = g.underlying_graph();
    (1..=p_max)
        .map(|p| {
            let dp = strong_power_capped(g, p, PRODUCT_CAP)?;
            let a = |wg: WindowGraph| max_clique(&wg, budget).map(|r| r.size);
            Ok(ChainEntry {
                p,
                window,
                graph_power: a(WindowGraph::of(&strong_power_capped(&u, p, PRODUCT_CAP)?, window))?,
                underlying_of_power: a(WindowGraph::of(&dp.underlying_graph(), window))?,
                digraph_power: a(WindowGraph::of(&dp, window))?,
            })
        })
        .collect()
}

/// The upward chain at `(n, ∞)` and its mirror at `(1, m]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapacityInequalityReport {
    pub upward: Vec<ChainEntry>,
    pub mirror: Vec<ChainEntry>,
    /// Every asserted inequality held.
    pub holds: bool,
    /// Mirror entries where `α(π(Ĝ^⊠p)) > α(G^⊠p)`; reported, not a failure.
    pub mirror_upper_link_exceeded: Vec<(usize, Window)>,
}

pub fn verify_capacity_inequalities(
    g: &Digraph,
    ns: &[u32],
    ms: &[crate::graph::Dist],
    p_max: usize,
    budget: u64,
) -> Result<CapacityInequalityReport> {
    let mut upward = Vec::new();
    for &n in ns {
        upward.extend(capacity_chain(g, Window::up_to_infinity(n)?, p_max, budget)?);
    }
    let mut mirror = Vec::new();
    for &m in ms {
        mirror.extend(capacity_chain(g, Window::new(1, m)?, p_max, budget)?);
    }
    let holds = upward.iter().all(ChainEntry::upward_chain_holds)
        && mirror.iter().all(ChainEntry::digraph_below_underlying);
    let mirror_upper_link_exceeded = mirror
        .iter()
        .filter(|e| !e.underlying_below_graph_power())
        .map(|e| (e.p, e.window))
        .collect();
    Ok(CapacityInequalityReport {
        upward,
        mirror,
        holds,
        mirror_upper_link_exceeded,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityEntry {
    pub p: usize,
    pub window: Window,
    pub source_alpha: usize,
    pub target_alpha: usize,
}

/// `α(source^⊠p, w) ≤ α(target^⊠p, w)` for a morphism geodesic at radius
/// `m/2`. Fails with `RadiusTooSmall` if the radius is insufficient.
pub fn capacity_monotonicity<G: GraphLike>(
    phi: &GraphMorphism<'_, G>,
    window: Window,
    p_max: usize,
    budget: u64,
) -> Result<Vec<MonotonicityEntry>> {
    let report = phi.geodesic_report()?;
    if !report.covers(window.m()) {
        return Err(Error::RadiusTooSmall {
            verified: report.max_verified_radius_doubled,
            required: window.m(),
        });
    }
    (1..=p_max)
        .map(|p| {
            let sp = strong_power_capped(phi.source, p, PRODUCT_CAP)?;
            let tp = strong_power_capped(phi.target, p, PRODUCT_CAP)?;
            // Powers of geodesic maps stay geodesic at the same radius.
            let map = power_map(phi.map(), phi.target.vertex_count(), p);
            let pm = GraphMorphism::new(&sp, &tp, map)?;
            let rep = pm.geodesic_report()?;
            if !rep.covers(window.m()) {
                return Err(Error::RadiusTooSmall {
                    verified: rep.max_verified_radius_doubled,
                    required: window.m(),
                });
            }
            Ok(MonotonicityEntry {
                p,
                window,
                source_alpha: max_clique(&WindowGraph::of(&sp, window), budget)?.size,
                target_alpha: max_clique(&WindowGraph::of(&tp, window), budget)?.size,
            })
        })
        .collect()
}

impl One for Root {
    fn one() -> Self {
        Root::new(1u32, 1)
    }
}

impl std::ops::Mul for Root {
    type Output = Root;
    /// `a^(1/p) · b^(1/q) = (a^q b^p)^(1/pq)`.
    fn mul(self, rhs: Root) -> Root {
        Root::new(
            self.radicand.pow(rhs.index) * rhs.radicand.pow(self.index),
            self.index * rhs.index,
        )
    }
}
