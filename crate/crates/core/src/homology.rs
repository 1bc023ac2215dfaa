//! Simplicial homology of window complexes, slice barcodes and the
//! two-parameter rank invariant.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::{induced_rank, ChainComplex};
use crate::error::Result;
use crate::field::Field;
use crate::graph::{Dist, DistanceTable};
use crate::linalg::{apply, Echelon, SparseVec};
use crate::window::{Bifiltration, Simplex, SimplicialMap, Window, WindowComplex};

/// Betti numbers in degrees `0..betti.len()`; degrees `>= exact_below` may
/// be too large because higher simplices were not enumerated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub field: String,
    pub betti: Vec<usize>,
    pub exact_below: usize,
    pub chain_dims: Vec<usize>,
}

/// Simplicial chain complex of `complex` in degrees `0..=top` (capped by the
/// complex's own dimension cap).
pub fn simplicial_chain_complex<F: Field>(f: &F, complex: &WindowComplex, top: usize) -> ChainComplex<F> {
    let top = top.min(complex.dim_cap());
    let dims: Vec<usize> = (0..=top).map(|d| complex.simplices(d).len()).collect();
    let mut boundaries = vec![vec![Vec::new(); dims[0]]];
    for d in 1..=top {
        let cols = complex
            .simplices(d)
            .iter()
            .map(|s| facet_column(f, s, |t| complex.index_of(t).expect("flag complex is closed under faces")))
            .collect();
        boundaries.push(cols);
    }
    ChainComplex::new(f.clone(), dims, boundaries).expect("well-formed simplicial complex")
}

fn facet_column<F: Field>(f: &F, s: &Simplex, index: impl Fn(&Simplex) -> usize) -> SparseVec<F::Elem> {
    let mut col: SparseVec<F::Elem> = s
        .facets()
        .enumerate()
        .map(|(i, t)| (index(&t), f.from_i64(if i % 2 == 0 { 1 } else { -1 })))
        .collect();
    col.sort_by_key(|(i, _)| *i);
    col
}

/// Betti numbers up to `degree_cap` (or the complex's cap, if lower).
pub fn simplicial_homology<F: Field>(f: &F, complex: &WindowComplex, degree_cap: usize) -> BettiTable {
    let c = simplicial_chain_complex(f, complex, degree_cap + 1);
    let top = c.len() - 1;
    let shown = degree_cap.min(top);
    let exact_below = if top > shown || !complex.dimension().capped {
        shown + 1
    } else {
        shown
    };
    BettiTable {
        field: f.name(),
        betti: (0..=shown).map(|q| c.betti(q)).collect(),
        exact_below,
        chain_dims: c.dims().to_vec(),
    }
}

/// Chain map of a simplicial map in degrees `0..=top`; collapsed simplices
/// go to zero.
pub fn simplicial_chain_map<F: Field>(f: &F, map: &SimplicialMap, top: usize) -> Vec<Vec<SparseVec<F::Elem>>> {
    map.images
        .iter()
        .take(top + 1)
        .enumerate()
        .map(|(d, level)| {
            level
                .iter()
                .map(|im| {
                    if im.dim == d && im.sign != 0 {
                        vec![(im.index, f.from_i64(im.sign))]
                    } else {
                        Vec::new()
                    }
                })
                .collect()
        })
        .collect()
}

/// Ranks of `H_q(source) → H_q(target)` for `q = 0..=degree_cap`.
pub fn simplicial_induced_ranks<F: Field>(
    f: &F,
    source: &WindowComplex,
    target: &WindowComplex,
    map: &SimplicialMap,
    degree_cap: usize,
) -> Result<Vec<usize>> {
    let top = (degree_cap + 1).min(source.dim_cap()).min(target.dim_cap());
    let cs = simplicial_chain_complex(f, source, top);
    let ct = simplicial_chain_complex(f, target, top);
    let m = simplicial_chain_map(f, map, top);
    (0..=degree_cap.min(top))
        .map(|q| induced_rank(&cs, &ct, q, |x| apply(f, &m[q], x)))
        .collect()
}

/// Which one-parameter slice of the bifiltration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SliceDirection {
    /// `m = ∞`, complexes grow as `n` decreases.
    NDecreasing,
    /// `n` fixed, complexes grow as `m` increases.
    MIncreasing { n: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bar {
    pub degree: usize,
    pub birth: Dist,
    /// `None`: the class never dies.
    #[serde(serialize_with = "serialize_death")]
    pub death: Option<Dist>,
    pub birth_step: usize,
    pub death_step: Option<usize>,
}

fn serialize_death<S: serde::Serializer>(d: &Option<Dist>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match d {
        Some(d) => d.serialize(s),
        None => s.serialize_str("inf"),
    }
}

impl Bar {
    pub fn alive_at(&self, step: usize) -> bool {
        self.birth_step <= step && self.death_step.is_none_or(|d| step < d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Barcode {
    pub direction: SliceDirection,
    /// Threshold of each step, in filtration order.
    pub thresholds: Vec<Dist>,
    pub degree_cap: usize,
    pub bars: Vec<Bar>,
}

impl Barcode {
    pub fn alive_count(&self, degree: usize, step: usize) -> usize {
        self.bars
            .iter()
            .filter(|b| b.degree == degree && b.alive_at(step))
            .count()
    }

    /// The window of each step.
    pub fn windows(&self) -> Vec<Window> {
        self.thresholds
            .iter()
            .map(|&t| match (self.direction, t) {
                (SliceDirection::NDecreasing, Dist::Finite(n)) => Window::up_to_infinity(n),
                (SliceDirection::MIncreasing { n }, m) => Window::new(n, m),
                (SliceDirection::NDecreasing, Dist::Infinite) => unreachable!("n thresholds are finite"),
            })
            .map(|w| w.expect("thresholds form valid windows"))
            .collect()
    }
}

/// Persistence of one slice by column reduction in `(step, dim, lex)` order.
pub fn persistence_slice<F: Field>(
    f: &F,
    table: &DistanceTable,
    direction: SliceDirection,
    degree_cap: usize,
) -> Barcode {
    let bif = Bifiltration::new(table, degree_cap + 1);
    let thresholds: Vec<Dist> = match direction {
        SliceDirection::NDecreasing => bif.n_thresholds().iter().rev().map(|&n| Dist::Finite(n)).collect(),
        SliceDirection::MIncreasing { n } => bif
            .m_thresholds()
            .iter()
            .copied()
            .filter(|&m| m > Dist::Finite(n))
            .collect(),
    };
    let entry = |s: &crate::window::FilteredSimplex| -> Option<usize> {
        match direction {
            SliceDirection::NDecreasing => thresholds.iter().position(|&n| n < s.minpd),
            SliceDirection::MIncreasing { n } => {
                if s.minpd <= Dist::Finite(n) {
                    None
                } else {
                    thresholds.iter().position(|&m| s.maxpd <= m)
                }
            }
        }
    };
    let mut order: Vec<(usize, &Simplex)> = bif
        .simplices()
        .iter()
        .filter_map(|s| entry(s).map(|e| (e, &s.simplex)))
        .collect();
    order.sort_by(|a, b| (a.0, a.1.dim(), a.1).cmp(&(b.0, b.1.dim(), b.1)));
    let position: HashMap<&Simplex, usize> = order.iter().enumerate().map(|(i, (_, s))| (*s, i)).collect();

    let mut echelon = Echelon::new(f.clone());
    let mut killed_by: HashMap<usize, usize> = HashMap::new();
    let mut negative = vec![false; order.len()];
    for (j, (_, s)) in order.iter().enumerate() {
        if s.dim() == 0 {
            continue;
        }
        let col = facet_column(f, s, |t| position[t]);
        if let Some(low) = echelon.insert_pivot(col) {
            killed_by.insert(low, j);
            negative[j] = true;
        }
    }
    let bars = order
        .iter()
        .enumerate()
        .filter(|(i, (_, s))| !negative[*i] && s.dim() <= degree_cap)
        .filter_map(|(i, (step, s))| {
            let death_step = killed_by.get(&i).map(|&j| order[j].0);
            (death_step != Some(*step)).then(|| Bar {
                degree: s.dim(),
                birth: thresholds[*step],
                death: death_step.map(|d| thresholds[d]),
                birth_step: *step,
                death_step,
            })
        })
        .collect();
    Barcode {
        direction,
        thresholds,
        degree_cap,
        bars,
    }
}

/// One comparable pair `(n₂, m₁) ≤ (n₁, m₂)` of the grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub from: Window,
    pub to: Window,
    pub ranks: Vec<usize>,
}

/// Ranks of all inclusions between grid complexes, per degree.
#[derive(Debug, Clone, Serialize)]
pub struct RankInvariant {
    pub field: String,
    pub degree_cap: usize,
    pub grid: Vec<Window>,
    pub entries: Vec<RankEntry>,
}

/// `Ind(n₂, m₁) ⊆ Ind(n₁, m₂)` whenever `n₁ <= n₂` and `m₁ <= m₂`.
pub fn window_le(a: Window, b: Window) -> bool {
    b.n() <= a.n() && a.m() <= b.m()
}

impl RankInvariant {
    pub fn rank(&self, from: Window, to: Window, degree: usize) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.from == from && e.to == to)
            .and_then(|e| e.ranks.get(degree).copied())
    }

    /// Triples `a ≤ b ≤ c` where `rank(a→c) > min(rank(a→b), rank(b→c))`.
    pub fn composition_violations(&self) -> Vec<(Window, Window, Window, usize)> {
        let lookup: HashMap<(Window, Window), &Vec<usize>> =
            self.entries.iter().map(|e| ((e.from, e.to), &e.ranks)).collect();
        let mut out = Vec::new();
        for &a in &self.grid {
            for &b in self.grid.iter().filter(|&&b| window_le(a, b)) {
                for &c in self.grid.iter().filter(|&&c| window_le(b, c)) {
                    for q in 0..=self.degree_cap {
                        let r = |x, y| lookup[&(x, y)][q];
                        if r(a, c) > r(a, b).min(r(b, c)) {
                            out.push((a, b, c, q));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Rank invariant over the full threshold grid of `table`.
pub fn rank_invariant<F: Field>(f: &F, table: &DistanceTable, degree_cap: usize) -> Result<RankInvariant> {
    let bif = Bifiltration::new(table, degree_cap + 1);
    let grid = bif.grid();
    let top = degree_cap + 1;
    type Local<'a, F> = (ChainComplex<F>, Vec<Vec<&'a Simplex>>, Vec<HashMap<&'a Simplex, usize>>);
    let complexes: Vec<Local<'_, F>> = grid
        .iter()
        .map(|&w| {
            let alive: Vec<Vec<&Simplex>> = (0..=top)
                .map(|d| {
                    bif.simplices()
                        .iter()
                        .filter(|s| s.simplex.dim() == d && s.alive_at(w))
                        .map(|s| &s.simplex)
                        .collect()
                })
                .collect();
            let index: Vec<HashMap<&Simplex, usize>> = alive
                .iter()
                .map(|level| level.iter().enumerate().map(|(i, s)| (*s, i)).collect())
                .collect();
            let dims: Vec<usize> = alive.iter().map(Vec::len).collect();
            let boundaries = (0..=top)
                .map(|d| {
                    alive[d]
                        .iter()
                        .map(|s| if d == 0 { Vec::new() } else { facet_column(f, s, |t| index[d - 1][t]) })
                        .collect()
                })
                .collect();
            (ChainComplex::new(f.clone(), dims, boundaries).expect("well-formed"), alive, index)
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..grid.len())
        .flat_map(|i| (0..grid.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| window_le(grid[i], grid[j]))
        .collect();
    let entries = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (src, src_alive, _) = &complexes[i];
            let (tgt, _, tgt_index) = &complexes[j];
            let ranks = (0..=degree_cap)
                .map(|q| {
                    induced_rank(src, tgt, q, |x| {
                        let mut v: SparseVec<F::Elem> =
                            x.iter().map(|(k, c)| (tgt_index[q][src_alive[q][*k]], c.clone())).collect();
                        v.sort_by_key(|(k, _)| *k);
                        v
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(RankEntry {
                from: grid[i],
                to: grid[j],
                ranks,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RankInvariant {
        field: f.name(),
        degree_cap,
        grid,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::generators::*;
    use crate::graph::{Graph, GraphLike};
    use crate::window::WindowGraph;

    #[test]
    fn discrete_cycle_homology() {
        let c = cycle_digraph(6).unwrap();
        let k = WindowComplex::new(WindowGraph::of(&c, Window::up_to_infinity(4).unwrap()), 3);
        let b = simplicial_homology(&Rationals, &k, 2);
        assert_eq!(b.betti, vec![6, 0, 0]);
    }

    #[test]
    fn antipodal_matching() {
        for n in 1..=3u32 {
            let r = 2 * (n as usize + 1);
            let k = WindowComplex::new(WindowGraph::of(&cycle_digraph(r).unwrap(), Window::new(n, n + 1).unwrap()), 3);
            let b = simplicial_homology(&Rationals, &k, 1);
            assert_eq!(b.betti, vec![n as usize + 1, 0]);
        }
    }

    #[test]
    fn full_simplex_is_acyclic() {
        let k = WindowComplex::new(WindowGraph::of(&Graph::empty(5), Window::classical()), 4);
        let b = simplicial_homology(&PrimeField::gf2(), &k, 3);
        assert_eq!(b.betti, vec![1, 0, 0, 0]);
        assert_eq!(b.exact_below, 4);
    }

    #[test]
    fn single_vertex_bar() {
        let t = Graph::empty(1).distance_table();
        let bc = persistence_slice(&Rationals, &t, SliceDirection::NDecreasing, 1);
        assert_eq!(bc.bars.len(), 1);
        assert_eq!(bc.bars[0].death, None);
        assert_eq!(serde_json::to_value(&bc.bars[0]).unwrap()["death"], "inf");
    }

    #[test]
    fn bars_match_betti_on_cycle() {
        let t = cycle_digraph(6).unwrap().distance_table();
        for dir in [SliceDirection::NDecreasing, SliceDirection::MIncreasing { n: 1 }] {
            let bc = persistence_slice(&Rationals, &t, dir, 1);
            for (step, w) in bc.windows().into_iter().enumerate() {
                let k = WindowComplex::from_table(&t, w, 2);
                let b = simplicial_homology(&Rationals, &k, 1);
                for q in 0..=1 {
                    assert_eq!(bc.alive_count(q, step), b.betti[q], "{dir:?} {w} degree {q}");
                }
            }
        }
    }

    #[test]
    fn m_slice_births_are_maxpd() {
        let l = line_digraph(6);
        let t = l.distance_table();
        let bc = persistence_slice(&Rationals, &t, SliceDirection::MIncreasing { n: 1 }, 1);
        for bar in bc.bars.iter().filter(|b| b.degree == 1) {
            assert!(bar.birth >= Dist::Finite(2));
        }
        assert_eq!(bc.alive_count(0, 0), t.vertex_count() - WindowGraph::new(&t, Window::new(1, 2).unwrap()).edge_count());
    }

    #[test]
    fn rank_invariant_diagonal_is_betti() {
        let t = zigzag(6).distance_table();
        let ri = rank_invariant(&Rationals, &t, 1).unwrap();
        for &w in &ri.grid {
            let k = WindowComplex::from_table(&t, w, 2);
            let b = simplicial_homology(&Rationals, &k, 1);
            for q in 0..=1 {
                assert_eq!(ri.rank(w, w, q), Some(b.betti[q]), "{w}");
            }
        }
        assert!(ri.composition_violations().is_empty());
    }
}
