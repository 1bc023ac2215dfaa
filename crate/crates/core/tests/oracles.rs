//! Frozen reference values: closed-form distances, small complexes and
//! homology computed by hand or by exhaustive search.

use indcomplex::generators::*;
use indcomplex::window::ordered_configurations;
use indcomplex::*;

fn d(v: u32) -> Dist {
    Dist::Finite(v)
}

#[test]
fn line_distance_is_index_difference() {
    let t = line_digraph(12).distance_table();
    for p in 0..12 {
        for q in 0..12 {
            assert_eq!(t.get(p, q), d((p as i64 - q as i64).unsigned_abs() as u32));
        }
    }
}

#[test]
fn cycle_distance_closed_form() {
    for r in [5usize, 6, 7, 12] {
        let t = cycle_digraph(r).unwrap().distance_table();
        for p in 0..r {
            for q in 0..r {
                let k = p.abs_diff(q);
                assert_eq!(t.get(p, q), d(k.min(r - k) as u32), "r={r} p={p} q={q}");
            }
        }
    }
}

#[test]
fn zigzag_distance_is_one_or_infinite() {
    let t = zigzag(10).distance_table();
    for p in 0..10usize {
        for q in 0..10usize {
            let want = match p.abs_diff(q) {
                0 => d(0),
                1 => d(1),
                _ => Dist::Infinite,
            };
            assert_eq!(t.get(p, q), want);
        }
    }
}

#[test]
fn lattice_distance_for_comparable_pairs() {
    let t = lattice_digraph(&[4, 4]).unwrap().distance_table();
    let u = lattice_graph(&[4, 4]).unwrap().distance_table();
    for a in 0..16 {
        for b in 0..16 {
            let (za, zb) = (lattice_coords(&[4, 4], a), lattice_coords(&[4, 4], b));
            let l1: usize = za.iter().zip(&zb).map(|(x, y)| x.abs_diff(*y)).sum();
            let comparable = za.iter().zip(&zb).all(|(x, y)| x <= y) || za.iter().zip(&zb).all(|(x, y)| x >= y);
            assert_eq!(t.get(a, b), if comparable { d(l1 as u32) } else { Dist::Infinite });
            assert_eq!(u.get(a, b), d(l1 as u32));
        }
    }
}

#[test]
fn cyclic_complex_dimensions() {
    // (r, n) -> dimension of Ind(C_r, n/2, (n+1)/2]
    let frozen = [
        (4, 1, 1),
        (5, 1, 1),
        (6, 1, 2),
        (7, 1, 1),
        (8, 1, 1),
        (9, 1, 1),
        (6, 2, 1),
        (9, 2, 2),
        (12, 2, 1),
        (8, 3, 1),
        (12, 3, 2),
        (7, 3, 0),
    ];
    for (r, n, dim) in frozen {
        let c = WindowComplex::from_table(&cycle_digraph(r).unwrap().distance_table(), Window::new(n, n + 1).unwrap(), 4);
        assert_eq!(c.dimension().dim, Some(dim), "r={r} n={n}");
    }
}

#[test]
fn antipodal_pairs_of_hexagon() {
    let wg = WindowGraph::of(&cycle_digraph(6).unwrap(), Window::new(2, 3).unwrap());
    let confs = ordered_configurations(&wg, 2);
    assert_eq!(confs.len(), 6);
    assert!(confs.iter().all(|c| c[0].abs_diff(c[1]) == 3));
    assert_eq!(capacity::alpha(&cycle_digraph(6).unwrap(), Window::new(2, 3).unwrap()).unwrap(), 2);
}

#[test]
fn pentagon_capacity_bound() {
    let est = capacity_bound(&cycle_graph(5).unwrap(), Window::classical(), 2, capacity::DEFAULT_BUDGET).unwrap();
    let alphas: Vec<_> = est.powers.iter().map(|p| p.alpha).collect();
    assert_eq!(alphas, [2, 5]);
    assert_eq!(est.best_bound.to_string(), "5^(1/2)");
    assert_eq!(est.best_bound, Root::new(5u32, 2));
}

#[test]
fn covering_map_radius() {
    for r in [5usize, 6, 7, 8] {
        let (l, c) = (line_digraph(r), cycle_digraph(r).unwrap());
        let phi = GraphMorphism::new(&l, &c, cycle_covering_map(r, r)).unwrap();
        let rep = phi.geodesic_report().unwrap();
        assert_eq!(rep.max_verified_radius_doubled, d((r / 2) as u32));
        assert!(!rep.is_embedding);
    }
}

#[test]
fn parity_map_is_an_immersion_but_not_an_embedding() {
    let (z, s) = (zigzag(8), segment(2));
    let phi = GraphMorphism::new(&z, &s, zigzag_parity_map(8)).unwrap();
    let rep = phi.geodesic_report().unwrap();
    assert_eq!(rep.max_verified_radius_doubled, Dist::Infinite);
    assert!(!rep.is_embedding);
}

#[test]
fn path_homology_of_small_windows() {
    // Distance-2 pairs of a 5-vertex line: a path 0-2-4 and an edge 1-3.
    let wg = WindowGraph::of(&line_digraph(5), Window::new(1, 2).unwrap());
    let s = ChainSlice::new(Rationals, &wg, 3).unwrap();
    assert_eq!(s.betti(Side::Inf), [2, 0, 0]);
    assert_eq!(s.betti(Side::Sup), [2, 0, 0]);

    // The classical window of a pentagon is again a pentagon.
    let wg = WindowGraph::of(&cycle_digraph(5).unwrap(), Window::classical());
    let s = ChainSlice::new(Rationals, &wg, 3).unwrap();
    assert_eq!(s.betti(Side::Inf), [1, 1, 0]);
    assert_eq!(s.betti(Side::Sup), [1, 1, 0]);

    // Window (1/2, 1]: the window graph of C4 is two disjoint diagonals.
    let wg = WindowGraph::of(&cycle_digraph(4).unwrap(), Window::new(1, 2).unwrap());
    let s = ChainSlice::new(PrimeField::gf2(), &wg, 2).unwrap();
    assert_eq!(s.betti(Side::Inf), [2, 0]);
}

#[test]
fn pentagon_automorphisms() {
    assert_eq!(automorphisms(&cycle_digraph(5).unwrap()).unwrap().len(), 5);
    assert_eq!(automorphisms(&cycle_graph(5).unwrap()).unwrap().len(), 10);
    assert_eq!(automorphisms(&zigzag(6)).unwrap().len(), 1);
}
