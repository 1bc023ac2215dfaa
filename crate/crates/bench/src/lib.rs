//! Fixtures shared by the benchmarks.

use indcomplex::generators::{cycle_graph, lattice_digraph};
use indcomplex::{Digraph, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random digraph; each ordered pair is an arc with probability `density`.
pub fn random_digraph(n: usize, density: f64, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let arcs: Vec<_> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .filter(|_| rng.gen_bool(density))
        .collect();
    Digraph::new(n, arcs).expect("valid arcs")
}

pub fn pentagon() -> Graph {
    cycle_graph(5).expect("r >= 2")
}

pub fn square_lattice(width: usize) -> Digraph {
    lattice_digraph(&[width, width]).expect("positive widths")
}
