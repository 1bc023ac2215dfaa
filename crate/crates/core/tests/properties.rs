mod common;

use common::{brute_force_cliques, digraph, naive_one_way};
use indcomplex::chain::ChainComplex;
use indcomplex::homology::{simplicial_chain_complex, simplicial_homology, simplicial_induced_ranks};
use indcomplex::linalg::{matrix_rank, SparseVec};
use indcomplex::path::chain_map;
use indcomplex::window::{ordered_configurations, SimplicialMap};
use indcomplex::*;
use proptest::prelude::*;

fn window() -> impl Strategy<Value = Window> {
    (1u32..4, prop::option::of(1u32..4)).prop_map(|(n, extra)| match extra {
        Some(k) => Window::new(n, n + k).unwrap(),
        None => Window::up_to_infinity(n).unwrap(),
    })
}

fn sane<F: Field>(c: &ChainComplex<F>) -> bool {
    let (chain, betti) = c.euler_characteristics();
    c.is_chain_complex() && chain == betti
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn distance_table_is_symmetric_with_zero_diagonal(g in digraph(8)) {
        let t = g.distance_table();
        let n = g.vertex_count();
        for u in 0..n {
            prop_assert_eq!(t.get(u, u), Dist::Finite(0));
            for v in 0..n {
                prop_assert_eq!(t.get(u, v), t.get(v, u));
            }
        }
    }

    #[test]
    fn bfs_agrees_with_walk_enumeration(g in digraph(7)) {
        let naive = naive_one_way(&g);
        let t = g.distance_table();
        let one_way = g.directed_distances();
        let n = g.vertex_count();
        for u in 0..n {
            for v in 0..n {
                let fwd = naive[u][v].map_or(Dist::Infinite, |k| Dist::Finite(k as u32));
                let bwd = naive[v][u].map_or(Dist::Infinite, |k| Dist::Finite(k as u32));
                prop_assert_eq!(one_way[u][v], fwd);
                prop_assert_eq!(t.get(u, v), fwd.min(bwd));
            }
        }
    }

    #[test]
    fn digraph_distance_dominates_underlying(g in digraph(8)) {
        let u = g.underlying_graph();
        prop_assert!(g.distance_table().dominates(&u.distance_table()));
        prop_assert_eq!(u.full_preimage().distance_table(), u.distance_table());
        prop_assert_eq!(u.full_preimage().underlying_graph(), u);
    }

    #[test]
    fn product_distance_against_coordinates(a in digraph(4), b in digraph(4)) {
        let p = strong_product(&a, &b).unwrap();
        let nb = b.vertex_count();
        let (oa, ob, op) = (a.directed_distances(), b.directed_distances(), p.directed_distances());
        let (da, db, dp) = (a.distance_table(), b.distance_table(), p.distance_table());
        let (ua, ub) = (a.underlying_graph(), b.underlying_graph());
        let up = strong_product(&ua, &ub).unwrap().distance_table();
        let (dua, dub) = (ua.distance_table(), ub.distance_table());
        for x in 0..p.vertex_count() {
            for y in 0..p.vertex_count() {
                let (x1, x2, y1, y2) = (x / nb, x % nb, y / nb, y % nb);
                prop_assert_eq!(op[x][y], oa[x1][y1].max(ob[x2][y2]));
                prop_assert!(dp.get(x, y) >= da.get(x1, y1).max(db.get(x2, y2)));
                prop_assert_eq!(up.get(x, y), dua.get(x1, y1).max(dub.get(x2, y2)));
            }
        }
    }

    #[test]
    fn complex_is_the_flag_complex(g in digraph(8), w in window()) {
        let wg = WindowGraph::of(&g, w);
        let c = WindowComplex::new(wg.clone(), 8);
        let mut want = brute_force_cliques(&wg);
        want.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let got: Vec<Vec<usize>> = c.all_simplices().map(|s| s.vertices().to_vec()).collect();
        prop_assert_eq!(got, want);
        let a = capacity::max_clique(&wg, capacity::DEFAULT_BUDGET).unwrap().size;
        prop_assert_eq!(c.dimension().dim.map_or(0, |d| d + 1), a);
    }

    #[test]
    fn configurations_cover_simplices_k_factorial_times(g in digraph(7), w in window()) {
        let wg = WindowGraph::of(&g, w);
        let c = WindowComplex::new(wg.clone(), 5);
        for k in 1..=5 {
            let confs = ordered_configurations(&wg, k);
            prop_assert_eq!(confs.len(), factorial(k) * c.simplices(k - 1).len());
            for conf in &confs {
                let mut rev = conf.clone();
                rev.reverse();
                prop_assert!(wg.is_clique(&rev));
            }
        }
    }

    #[test]
    fn complexes_grow_with_the_window(g in digraph(7), n in 1u32..4, m in 2u32..6) {
        let t = g.distance_table();
        let m = m.max(n + 1);
        let at = |n, m: Dist| WindowComplex::from_table(&t, Window::new(n, m).unwrap(), 6);
        let base = at(n + 1, Dist::Finite(m + 1));
        for bigger in [at(n, Dist::Finite(m + 1)), at(n + 1, Dist::Finite(m + 2)), at(n, Dist::Infinite)] {
            prop_assert!(base.all_simplices().all(|s| bigger.contains(s)));
        }
    }

    #[test]
    fn simplicial_homology_is_consistent(g in digraph(8), w in window()) {
        let c = WindowComplex::from_table(&g.distance_table(), w, 4);
        for field in [Coefficients::Rationals, Coefficients::Prime(PrimeField::gf2())] {
            let ok = match field {
                Coefficients::Rationals => sane(&simplicial_chain_complex(&Rationals, &c, 4)),
                Coefficients::Prime(p) => sane(&simplicial_chain_complex(&p, &c, 4)),
            };
            prop_assert!(ok);
        }
    }

    #[test]
    fn rank_is_transpose_invariant(rows in 1usize..7, cols in 1usize..7, entries in prop::collection::vec(0u64..5, 49)) {
        let f = PrimeField::new(1_000_003).unwrap();
        let column = |j: usize| -> SparseVec<u64> {
            (0..rows).filter_map(|i| {
                let v = entries[i * 7 + j];
                (v != 0).then_some((i, v))
            }).collect()
        };
        let row = |i: usize| -> SparseVec<u64> {
            (0..cols).filter_map(|j| {
                let v = entries[i * 7 + j];
                (v != 0).then_some((j, v))
            }).collect()
        };
        let a: Vec<_> = (0..cols).map(column).collect();
        let at: Vec<_> = (0..rows).map(row).collect();
        prop_assert_eq!(matrix_rank(&f, &a), matrix_rank(&f, &at));
    }

    #[test]
    fn automorphisms_of_a_digraph_are_automorphisms_of_its_shadow(g in digraph(6)) {
        let u = g.underlying_graph();
        let outer = automorphisms(&u).unwrap();
        let inner = automorphisms(&g).unwrap();
        prop_assert!(inner.iter().all(|s| outer.contains(s)));
        prop_assert!(inner.contains(&(0..g.vertex_count()).collect()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inf_and_sup_agree(g in digraph(6), w in window()) {
        let wg = WindowGraph::of(&g, w);
        let q = ChainSlice::new(Rationals, &wg, 3).unwrap();
        prop_assert_eq!(q.betti(Side::Inf), q.betti(Side::Sup));
        prop_assert!(q.containments_hold());
        prop_assert!(sane(q.inf().complex()) && sane(q.sup().complex()));
        for k in 0..3 {
            prop_assert_eq!(q.inclusion_rank(k).unwrap(), q.betti(Side::Inf)[k]);
        }
        let f2 = ChainSlice::new(PrimeField::gf2(), &wg, 3).unwrap();
        prop_assert_eq!(f2.betti(Side::Inf), f2.betti(Side::Sup));
        prop_assert!(q.reversal_invariant() && f2.reversal_invariant());
    }

    #[test]
    fn induced_maps_compose(g in digraph(6), w in window()) {
        let autos = automorphisms(&g).unwrap();
        let wg = WindowGraph::of(&g, w);
        let slice = ChainSlice::new(Rationals, &wg, 2).unwrap();
        let complex = WindowComplex::new(wg, 4);
        let betti = simplicial_homology(&Rationals, &complex, 3).betti;
        for s in autos.iter().take(4) {
            for t in autos.iter().take(4) {
                let st: Vec<usize> = (0..s.len()).map(|v| t[s[v]]).collect();
                let a = chain_map(&slice, &slice, s).unwrap();
                let b = chain_map(&slice, &slice, t).unwrap();
                let ab = chain_map(&slice, &slice, &st).unwrap();
                let composed = a.then(&b, &Rationals);
                prop_assert_eq!(&composed.inf, &ab.inf);
                prop_assert_eq!(&composed.sup, &ab.sup);
            }
            let m = SimplicialMap::new(&complex, &complex, s).unwrap();
            prop_assert!(m.is_injective());
            let ranks = simplicial_induced_ranks(&Rationals, &complex, &complex, &m, 3).unwrap();
            prop_assert_eq!(&ranks[..], &betti[..ranks.len()]);
        }
    }

    #[test]
    fn barcodes_match_direct_homology(g in digraph(6)) {
        let t = g.distance_table();
        let bif = Bifiltration::new(&t, 0);
        let mut dirs = vec![SliceDirection::NDecreasing];
        dirs.extend(bif.n_thresholds().iter().map(|&n| SliceDirection::MIncreasing { n }));
        for dir in dirs {
            let bc = persistence_slice(&Rationals, &t, dir, 2);
            for (step, w) in bc.windows().into_iter().enumerate() {
                let direct = simplicial_homology(&Rationals, &WindowComplex::from_table(&t, w, 3), 2);
                for q in 0..direct.betti.len() {
                    prop_assert_eq!(bc.alive_count(q, step), direct.betti[q]);
                }
            }
        }
        let ri = rank_invariant(&Rationals, &t, 1).unwrap();
        prop_assert!(ri.composition_violations().is_empty());
    }

    #[test]
    fn capacity_chain_holds(g in digraph(5), n in 1u32..4) {
        let entries = capacity::capacity_chain(&g, Window::up_to_infinity(n).unwrap(), 2, capacity::DEFAULT_BUDGET).unwrap();
        prop_assert!(entries.iter().all(|e| e.upward_chain_holds()));
        let mirror = capacity::capacity_chain(&g, Window::new(1, n + 1).unwrap(), 2, capacity::DEFAULT_BUDGET).unwrap();
        prop_assert!(mirror.iter().all(|e| e.digraph_below_underlying()));
    }

    #[test]
    fn classical_alpha_is_supermultiplicative(g in digraph(4)) {
        let u = g.underlying_graph();
        let est = capacity_bound(&u, Window::classical(), 3, capacity::DEFAULT_BUDGET).unwrap();
        prop_assert!(est.supermultiplicativity.iter().all(|c| c.holds));
    }
}
