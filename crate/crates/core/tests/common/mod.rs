#![allow(dead_code)]

use indcomplex::{Digraph, Graph, GraphLike};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each ordered pair is an arc with probability `density`.
pub fn random_digraph(rng: &mut impl Rng, n: usize, density: f64) -> Digraph {
    let arcs: Vec<_> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .filter(|_| rng.gen_bool(density))
        .collect();
    Digraph::new(n, arcs).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    Graph::new(n, edges).unwrap()
}

/// Digraphs on `1..=max_n` vertices from an arc mask.
pub fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * n).prop_map(move |mask| {
            let arcs = (0..n * n)
                .filter(|&i| mask[i] && i / n != i % n)
                .map(|i| (i / n, i % n));
            Digraph::new(n, arcs).unwrap()
        })
    })
}

/// Brute-force all-pairs one-way reachability lengths by enumerating walks
/// of increasing length (no BFS).
pub fn naive_one_way(g: &Digraph) -> Vec<Vec<Option<usize>>> {
    let n = g.vertex_count();
    let mut out = vec![vec![None; n]; n];
    for s in 0..n {
        let mut frontier = vec![false; n];
        frontier[s] = true;
        out[s][s] = Some(0);
        for len in 1..n {
            let next: Vec<bool> = (0..n)
                .map(|v| (0..n).any(|u| frontier[u] && g.has_arc(u, v)))
                .collect();
            for v in 0..n {
                if next[v] && out[s][v].is_none() {
                    out[s][v] = Some(len);
                }
            }
            frontier = next;
        }
    }
    out
}

/// All cliques of the window graph by subset enumeration.
pub fn brute_force_cliques(wg: &indcomplex::WindowGraph) -> Vec<Vec<usize>> {
    let n = wg.vertex_count();
    (1u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| wg.is_clique(s))
        .collect()
}
