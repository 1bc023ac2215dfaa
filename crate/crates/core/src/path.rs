//! Independent elementary paths, the regular boundary and the Inf/Sup
//! chain complexes.
//!
//! A path of degree `ℓ` has `ℓ + 1` vertices. `D_ℓ` is spanned by the walks
//! of the window graph. Everything lives in the regular-path module: faces
//! with two equal consecutive vertices are dropped by the boundary.
//! `Inf_ℓ = {x ∈ D_ℓ : ∂x ∈ D_{ℓ-1}}` and `Sup_ℓ = D_ℓ + ∂D_{ℓ+1}`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::chain::{commutes, induced_rank, ChainComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{GraphLike, VertexId};
use crate::linalg::{apply, collect_sparse, Basis, Echelon, SparseVec};
use crate::morphism::GraphMorphism;
use crate::window::{Window, WindowGraph};

/// A vertex sequence without equal consecutive entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ElementaryPath(Vec<VertexId>);

impl ElementaryPath {
    /// `None` if two consecutive vertices coincide or the sequence is empty.
    pub fn new(vertices: Vec<VertexId>) -> Option<Self> {
        let regular = !vertices.is_empty() && vertices.windows(2).all(|w| w[0] != w[1]);
        regular.then_some(ElementaryPath(vertices))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    /// The reversed path (the nontrivial element of ℤ₂).
    pub fn reversed(&self) -> Self {
        ElementaryPath(self.0.iter().rev().copied().collect())
    }

    /// Image under a vertex map; `None` if the image is not regular.
    pub fn map(&self, vertex_map: &[VertexId]) -> Option<Self> {
        ElementaryPath::new(self.0.iter().map(|&v| vertex_map[v]).collect())
    }

    /// Whether every step is an edge of the window graph.
    pub fn is_independent(&self, graph: &WindowGraph) -> bool {
        self.0.windows(2).all(|w| graph.has_edge(w[0], w[1]))
    }
}

/// Sparse chain: path to nonzero coefficient.
pub type ChainVector<E> = BTreeMap<ElementaryPath, E>;

/// `∂(v_0..v_ℓ) = Σ (−1)^i v_0..v̂_i..v_ℓ`, dropping non-regular faces.
pub fn regular_boundary<F: Field>(f: &F, chain: &ChainVector<F::Elem>) -> ChainVector<F::Elem> {
    let mut out: ChainVector<F::Elem> = BTreeMap::new();
    for (p, c) in chain {
        for (face, sign) in path_faces(p) {
            let term = if sign > 0 { c.clone() } else { f.neg(c) };
            let slot = out.entry(face).or_insert_with(|| f.zero());
            *slot = f.add(slot, &term);
        }
    }
    out.retain(|_, v| !f.is_zero(v));
    out
}

/// Regular faces of a path with their signs.
fn path_faces(p: &ElementaryPath) -> impl Iterator<Item = (ElementaryPath, i64)> + '_ {
    let k = p.0.len();
    (0..k).filter(move |_| k > 1).filter_map(move |i| {
        if i > 0 && i + 1 < k && p.0[i - 1] == p.0[i + 1] {
            return None;
        }
        let mut face = p.0.clone();
        face.remove(i);
        Some((ElementaryPath(face), if i % 2 == 0 { 1 } else { -1 }))
    })
}

/// Linear extension of path reversal.
pub fn reverse_chain<E: Clone>(chain: &ChainVector<E>) -> ChainVector<E> {
    chain.iter().map(|(p, c)| (p.reversed(), c.clone())).collect()
}

/// All walks of the window graph with `degree + 1` vertices, sorted.
pub fn path_basis(graph: &WindowGraph, degree: usize) -> Vec<ElementaryPath> {
    let mut level: Vec<Vec<VertexId>> = (0..graph.vertex_count()).map(|v| vec![v]).collect();
    for _ in 0..degree {
        level = level
            .into_iter()
            .flat_map(|p| {
                let last = *p.last().expect("nonempty");
                graph.neighbors(last).map(move |w| {
                    let mut q = p.clone();
                    q.push(w);
                    q
                })
            })
            .collect();
    }
    level.into_iter().map(ElementaryPath).collect()
}

/// Paths of one degree in the ambient regular module: the walks first
/// (indices `0..d_len`), then other regular paths as they are met.
#[derive(Debug, Clone, Default)]
struct PathIndex {
    paths: Vec<ElementaryPath>,
    lookup: HashMap<ElementaryPath, usize>,
    d_len: usize,
}

impl PathIndex {
    fn with_walks(walks: Vec<ElementaryPath>) -> Self {
        let mut idx = PathIndex::default();
        for p in walks {
            idx.intern(p);
        }
        idx.d_len = idx.paths.len();
        idx
    }

    fn intern(&mut self, p: ElementaryPath) -> usize {
        if let Some(&i) = self.lookup.get(&p) {
            return i;
        }
        self.lookup.insert(p.clone(), self.paths.len());
        self.paths.push(p);
        self.paths.len() - 1
    }
}

/// One of the two subcomplexes, with bases in ambient coordinates.
#[derive(Debug, Clone)]
pub struct PathSubcomplex<F: Field> {
    bases: Vec<Basis<F>>,
    complex: ChainComplex<F>,
}

impl<F: Field> PathSubcomplex<F> {
    pub fn complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    pub fn dims(&self) -> &[usize] {
        self.complex.dims()
    }

    /// Basis vectors of degree `q` over the ambient path index.
    pub fn basis(&self, q: usize) -> &[SparseVec<F::Elem>] {
        self.bases[q].vectors()
    }

    fn coordinates(&self, q: usize, v: &[(usize, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        self.bases[q].coordinates(v)
    }

    fn contains(&self, q: usize, v: &[(usize, F::Elem)]) -> bool {
        self.bases[q].contains(v)
    }
}

/// `D`, `Inf` and `Sup` of one window up to degree `max_length`.
#[derive(Debug, Clone)]
pub struct ChainSlice<F: Field> {
    field: F,
    window: Window,
    max_length: usize,
    ambient: Vec<PathIndex>,
    d_dims: Vec<usize>,
    inf: PathSubcomplex<F>,
    sup: PathSubcomplex<F>,
}

/// Which of the two complexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Inf,
    Sup,
}

impl<F: Field> ChainSlice<F> {
    pub fn new(field: F, graph: &WindowGraph, max_length: usize) -> Result<Self> {
        let top = max_length + 1;
        let mut ambient: Vec<PathIndex> = (0..=top)
            .map(|q| PathIndex::with_walks(path_basis(graph, q)))
            .collect();
        let d_dims: Vec<usize> = ambient.iter().map(|a| a.d_len).collect();
        let mut cache: Vec<HashMap<usize, SparseVec<F::Elem>>> = vec![HashMap::new(); top + 1];

        // Walk boundaries, and the split of each into D and non-D parts.
        let mut inf_vectors: Vec<Vec<SparseVec<F::Elem>>> = vec![Vec::new(); top + 1];
        let mut sup_extra: Vec<Vec<SparseVec<F::Elem>>> = vec![Vec::new(); top + 1];
        inf_vectors[0] = unit_vectors(&field, d_dims[0]);
        for q in 1..=top {
            let cols: Vec<SparseVec<F::Elem>> = (0..d_dims[q])
                .map(|j| path_boundary(&field, &mut ambient, &mut cache, q, j))
                .collect();
            let below = d_dims[q - 1];
            let outside = |c: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
                c.iter().filter(|(i, _)| *i >= below).cloned().collect()
            };
            if q <= max_length {
                let mut e = Echelon::tracked(field.clone());
                for (j, c) in cols.iter().enumerate() {
                    match e.insert_tagged(outside(c), vec![(j, field.one())]) {
                        Some(kernel) => inf_vectors[q].push(kernel),
                        None => sup_extra[q - 1].push(c.clone()),
                    }
                }
            } else {
                let mut e = Echelon::new(field.clone());
                for c in &cols {
                    if e.insert(outside(c)) {
                        sup_extra[q - 1].push(c.clone());
                    }
                }
            }
        }

        let inf_bases: Vec<Basis<F>> = inf_vectors
            .into_iter()
            .take(max_length + 1)
            .map(|vs| Basis::new(field.clone(), vs))
            .collect();
        let sup_bases: Vec<Basis<F>> = sup_extra
            .into_iter()
            .take(max_length + 1)
            .enumerate()
            .map(|(q, extra)| {
                let mut vs = unit_vectors(&field, d_dims[q]);
                vs.extend(extra);
                Basis::new(field.clone(), vs)
            })
            .collect();

        let inf = assemble(&field, &mut ambient, &mut cache, inf_bases)?;
        let sup = assemble(&field, &mut ambient, &mut cache, sup_bases)?;
        Ok(ChainSlice {
            field,
            window: graph.window(),
            max_length,
            ambient,
            d_dims,
            inf,
            sup,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// `dim D_q` for `q = 0..=max_length + 1`.
    pub fn d_dims(&self) -> &[usize] {
        &self.d_dims
    }

    pub fn inf(&self) -> &PathSubcomplex<F> {
        &self.inf
    }

    pub fn sup(&self) -> &PathSubcomplex<F> {
        &self.sup
    }

    pub fn side(&self, side: Side) -> &PathSubcomplex<F> {
        match side {
            Side::Inf => &self.inf,
            Side::Sup => &self.sup,
        }
    }

    /// The walks of degree `q`.
    pub fn walks(&self, q: usize) -> &[ElementaryPath] {
        &self.ambient[q].paths[..self.d_dims[q]]
    }

    /// Ambient path of index `i` in degree `q`.
    pub fn ambient_path(&self, q: usize, i: usize) -> &ElementaryPath {
        &self.ambient[q].paths[i]
    }

    /// Convert an ambient vector to a chain vector.
    pub fn to_chain(&self, q: usize, v: &[(usize, F::Elem)]) -> ChainVector<F::Elem> {
        v.iter()
            .map(|(i, c)| (self.ambient[q].paths[*i].clone(), c.clone()))
            .collect()
    }

    /// Ambient coordinates of a chain, with paths outside the index placed
    /// past its end (so they are never in any subspace).
    fn from_chain(&self, q: usize, chain: &ChainVector<F::Elem>) -> SparseVec<F::Elem> {
        let mut extra: HashMap<&ElementaryPath, usize> = HashMap::new();
        let base = self.ambient[q].paths.len();
        collect_sparse(
            &self.field,
            chain.iter().map(|(p, c)| {
                let i = match self.ambient[q].lookup.get(p) {
                    Some(&i) => i,
                    None => {
                        let next = base + extra.len();
                        *extra.entry(p).or_insert(next)
                    }
                };
                (i, c.clone())
            }),
        )
    }

    /// Betti numbers of `Inf` or `Sup` in degrees `0..max_length`; the top
    /// degree is left out because it is truncated.
    pub fn betti(&self, side: Side) -> Vec<usize> {
        let c = self.side(side).complex();
        (0..self.max_length).map(|q| c.betti(q)).collect()
    }

    /// Rank of `H_q(Inf) → H_q(Sup)` induced by inclusion.
    pub fn inclusion_rank(&self, q: usize) -> Result<usize> {
        let inf_basis = &self.inf.bases;
        induced_rank(self.inf.complex(), self.sup.complex(), q, |x| {
            let ambient = combine(&self.field, inf_basis[q].vectors(), x);
            self.sup
                .coordinates(q, &ambient)
                .expect("Inf is contained in Sup")
        })
    }

    /// `Inf_q ⊆ D_q ⊆ Sup_q` for every degree.
    pub fn containments_hold(&self) -> bool {
        (0..=self.max_length).all(|q| {
            let d = self.d_dims[q];
            self.inf.basis(q).iter().all(|v| v.iter().all(|(i, _)| *i < d))
                && (0..d).all(|i| self.sup.contains(q, &[(i, self.field.one())]))
        })
    }

    /// Reversal maps walks to walks and each of `Inf_q`, `Sup_q` into itself.
    pub fn reversal_invariant(&self) -> bool {
        (0..=self.max_length).all(|q| {
            let walks_ok = self
                .walks(q)
                .iter()
                .all(|p| self.ambient[q].lookup.get(&p.reversed()).is_some_and(|&i| i < self.d_dims[q]));
            walks_ok
                && [Side::Inf, Side::Sup].into_iter().all(|side| {
                    let sub = self.side(side);
                    sub.basis(q).iter().all(|v| {
                        let rev = reverse_chain(&self.to_chain(q, v));
                        sub.contains(q, &self.from_chain(q, &rev))
                    })
                })
        })
    }

    pub fn report(&self) -> PathHomologyReport {
        PathHomologyReport {
            window: self.window,
            field: self.field.name(),
            max_length: self.max_length,
            d_dims: self.d_dims[..=self.max_length].to_vec(),
            inf_dims: self.inf.dims().to_vec(),
            sup_dims: self.sup.dims().to_vec(),
            inf_betti: self.betti(Side::Inf),
            sup_betti: self.betti(Side::Sup),
            truncated_degree: self.max_length,
        }
    }
}

fn unit_vectors<F: Field>(f: &F, n: usize) -> Vec<SparseVec<F::Elem>> {
    (0..n).map(|i| vec![(i, f.one())]).collect()
}

/// `Σ x_j · basis_j`.
fn combine<F: Field>(f: &F, basis: &[SparseVec<F::Elem>], x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    apply(f, basis, x)
}

fn path_boundary<F: Field>(
    f: &F,
    ambient: &mut [PathIndex],
    cache: &mut [HashMap<usize, SparseVec<F::Elem>>],
    q: usize,
    j: usize,
) -> SparseVec<F::Elem> {
    if let Some(v) = cache[q].get(&j) {
        return v.clone();
    }
    let p = ambient[q].paths[j].clone();
    let faces: Vec<_> = path_faces(&p).collect();
    let v = collect_sparse(
        f,
        faces
            .into_iter()
            .map(|(face, sign)| (ambient[q - 1].intern(face), f.from_i64(sign))),
    );
    cache[q].insert(j, v.clone());
    v
}

fn assemble<F: Field>(
    f: &F,
    ambient: &mut [PathIndex],
    cache: &mut [HashMap<usize, SparseVec<F::Elem>>],
    bases: Vec<Basis<F>>,
) -> Result<PathSubcomplex<F>> {
    let dims: Vec<usize> = bases.iter().map(Basis::len).collect();
    let mut boundaries = vec![vec![Vec::new(); dims[0]]];
    for q in 1..bases.len() {
        let cols = bases[q]
            .vectors()
            .iter()
            .map(|b| {
                let image = collect_sparse(
                    f,
                    b.iter().flat_map(|(j, c)| {
                        path_boundary(f, ambient, cache, q, *j)
                            .into_iter()
                            .map(move |(i, v)| (i, f.mul(c, &v)))
                    }),
                );
                bases[q - 1].coordinates(&image).ok_or_else(|| {
                    Error::NotAChainMap(format!("boundary of a degree-{q} basis vector leaves the subcomplex"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        boundaries.push(cols);
    }
    Ok(PathSubcomplex {
        complex: ChainComplex::new(f.clone(), dims, boundaries)?,
        bases,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathHomologyReport {
    pub window: Window,
    pub field: String,
    pub max_length: usize,
    pub d_dims: Vec<usize>,
    pub inf_dims: Vec<usize>,
    pub sup_dims: Vec<usize>,
    /// Degrees `0..max_length`.
    pub inf_betti: Vec<usize>,
    pub sup_betti: Vec<usize>,
    /// Homology in this degree is not reported.
    pub truncated_degree: usize,
}

/// Per-degree matrices of a chain map between two slices, on both sides.
#[derive(Debug, Clone)]
pub struct InducedChainMap<F: Field> {
    pub inf: Vec<Vec<SparseVec<F::Elem>>>,
    pub sup: Vec<Vec<SparseVec<F::Elem>>>,
}

impl<F: Field> InducedChainMap<F> {
    pub fn side(&self, side: Side) -> &[Vec<SparseVec<F::Elem>>] {
        match side {
            Side::Inf => &self.inf,
            Side::Sup => &self.sup,
        }
    }

    /// Ranks of the induced maps on homology in degrees `0..max_length`.
    pub fn homology_ranks(
        &self,
        side: Side,
        source: &ChainSlice<F>,
        target: &ChainSlice<F>,
    ) -> Result<Vec<usize>> {
        let maps = self.side(side);
        let f = source.field();
        (0..source.max_length.min(target.max_length))
            .map(|q| {
                induced_rank(source.side(side).complex(), target.side(side).complex(), q, |x| {
                    apply(f, &maps[q], x)
                })
            })
            .collect()
    }

    /// Matrix product `other ∘ self`.
    pub fn then(&self, other: &InducedChainMap<F>, f: &F) -> InducedChainMap<F> {
        let compose = |a: &[Vec<SparseVec<F::Elem>>], b: &[Vec<SparseVec<F::Elem>>]| {
            a.iter()
                .zip(b)
                .map(|(aq, bq)| aq.iter().map(|col| apply(f, bq, col)).collect())
                .collect()
        };
        InducedChainMap {
            inf: compose(&self.inf, &other.inf),
            sup: compose(&self.sup, &other.sup),
        }
    }
}

/// The chain map `path ↦ φ(path)` between two slices over the same field,
/// without any radius precondition. Fails with `NotAChainMap` if an image
/// leaves the target subcomplex or a square fails to commute.
pub fn chain_map<F: Field>(
    source: &ChainSlice<F>,
    target: &ChainSlice<F>,
    vertex_map: &[VertexId],
) -> Result<InducedChainMap<F>> {
    if source.field() != target.field() {
        return Err(Error::FieldMismatch(source.field().name(), target.field().name()));
    }
    let top = source.max_length.min(target.max_length);
    let side_map = |side: Side| -> Result<Vec<Vec<SparseVec<F::Elem>>>> {
        (0..=top)
            .map(|q| {
                source
                    .side(side)
                    .basis(q)
                    .iter()
                    .map(|v| {
                        let image: ChainVector<F::Elem> = {
                            let mut acc: ChainVector<F::Elem> = BTreeMap::new();
                            for (i, c) in v {
                                if let Some(p) = source.ambient[q].paths[*i].map(vertex_map) {
                                    let slot = acc.entry(p).or_insert_with(|| source.field.zero());
                                    *slot = source.field.add(slot, c);
                                }
                            }
                            acc.retain(|_, c| !source.field.is_zero(c));
                            acc
                        };
                        target
                            .side(side)
                            .coordinates(q, &target.from_chain(q, &image))
                            .ok_or_else(|| {
                                Error::NotAChainMap(format!("a degree-{q} {side:?} chain maps outside the target"))
                            })
                    })
                    .collect()
            })
            .collect()
    };
    let map = InducedChainMap {
        inf: side_map(Side::Inf)?,
        sup: side_map(Side::Sup)?,
    };
    for side in [Side::Inf, Side::Sup] {
        if !commutes(source.side(side).complex(), target.side(side).complex(), map.side(side)) {
            return Err(Error::NotAChainMap(format!("{side:?} square does not commute")));
        }
    }
    Ok(map)
}

/// The chain map induced by a morphism that is geodesic at radius `m/2`,
/// where `m` is the upper threshold of the slices' window.
pub fn induced_chain_map<G: GraphLike, F: Field>(
    phi: &GraphMorphism<'_, G>,
    source: &ChainSlice<F>,
    target: &ChainSlice<F>,
) -> Result<InducedChainMap<F>> {
    let report = phi.geodesic_report()?;
    let m = source.window().m().max(target.window().m());
    if !report.covers(m) {
        return Err(Error::RadiusTooSmall {
            verified: report.max_verified_radius_doubled,
            required: m,
        });
    }
    chain_map(source, target, phi.map())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::generators::*;
    use crate::graph::{Digraph, Dist};

    fn p(v: &[usize]) -> ElementaryPath {
        ElementaryPath::new(v.to_vec()).unwrap()
    }

    fn single(path: &[usize]) -> ChainVector<num_rational::BigRational> {
        BTreeMap::from([(p(path), Rationals.one())])
    }

    #[test]
    fn boundary_of_edge() {
        let q = Rationals;
        let b = regular_boundary(&q, &single(&[0, 1]));
        assert_eq!(b, BTreeMap::from([(p(&[1]), q.one()), (p(&[0]), q.from_i64(-1))]));
    }

    #[test]
    fn boundary_drops_non_regular_face() {
        let q = Rationals;
        let b = regular_boundary(&q, &single(&[0, 1, 0]));
        assert_eq!(b, BTreeMap::from([(p(&[1, 0]), q.one()), (p(&[0, 1]), q.one())]));
        let bb = regular_boundary(&q, &b);
        assert!(bb.is_empty());
    }

    #[test]
    fn reversal_is_involution() {
        let x = p(&[3, 1, 4, 1, 5]);
        assert_eq!(x.reversed().reversed(), x);
        assert!(ElementaryPath::new(vec![1, 1]).is_none());
    }

    #[test]
    fn line_walk_counts() {
        // Window (1, 2] on a line of 7: steps of exactly 2.
        let g = WindowGraph::of(&line_digraph(7), Window::new(1, 2).unwrap());
        let counts: Vec<_> = (0..4).map(|q| path_basis(&g, q).len()).collect();
        // Walks on two paths of lengths 4 and 3.
        let mut expected = Vec::new();
        for q in 0..4 {
            let walks = |n: usize| {
                let mut v = vec![1u64; n];
                for _ in 0..q {
                    v = (0..n)
                        .map(|i| (if i > 0 { v[i - 1] } else { 0 }) + (if i + 1 < n { v[i + 1] } else { 0 }))
                        .collect();
                }
                v.iter().sum::<u64>() as usize
            };
            expected.push(walks(4) + walks(3));
        }
        assert_eq!(counts, expected);
    }

    #[test]
    fn discrete_cycle_window() {
        let g = WindowGraph::of(&cycle_digraph(6).unwrap(), Window::new(4, Dist::Infinite).unwrap());
        let s = ChainSlice::new(Rationals, &g, 2).unwrap();
        assert_eq!(s.d_dims(), &[6, 0, 0, 0]);
        assert_eq!(s.betti(Side::Inf), vec![6, 0]);
        assert_eq!(s.betti(Side::Sup), vec![6, 0]);
    }

    #[test]
    fn triangle_of_window_edges() {
        // Complete window graph on 3 vertices: walks of all lengths.
        let g = WindowGraph::of(&Digraph::empty(3), Window::classical());
        for f in [PrimeField::gf2(), PrimeField::new(3).unwrap()] {
            let s = ChainSlice::new(f, &g, 3).unwrap();
            assert!(s.inf().complex().is_chain_complex());
            assert!(s.sup().complex().is_chain_complex());
            assert!(s.containments_hold());
            assert!(s.reversal_invariant());
            assert_eq!(s.betti(Side::Inf), s.betti(Side::Sup));
            for q in 0..3 {
                assert_eq!(s.inclusion_rank(q).unwrap(), s.betti(Side::Inf)[q]);
            }
        }
    }

    #[test]
    fn inf_one_is_all_walks() {
        let g = WindowGraph::of(&cycle_digraph(6).unwrap(), Window::new(1, 2).unwrap());
        let s = ChainSlice::new(Rationals, &g, 2).unwrap();
        assert_eq!(s.inf().dims()[..2], s.d_dims()[..2]);
    }

    #[test]
    fn identity_chain_map() {
        let g = zigzag(6);
        let w = Window::new(1, 3).unwrap();
        let s = ChainSlice::new(Rationals, &WindowGraph::of(&g, w), 2).unwrap();
        let id = GraphMorphism::identity(&g);
        let m = induced_chain_map(&id, &s, &s).unwrap();
        for side in [Side::Inf, Side::Sup] {
            for (q, cols) in m.side(side).iter().enumerate() {
                for (j, c) in cols.iter().enumerate() {
                    assert_eq!(c, &vec![(j, Rationals.one())], "{side:?} degree {q}");
                }
            }
            let b = s.betti(side);
            assert_eq!(m.homology_ranks(side, &s, &s).unwrap(), b);
        }
    }

    #[test]
    fn covering_map_needs_radius() {
        let l = line_digraph(8);
        let c = cycle_digraph(8).unwrap();
        let phi = GraphMorphism::new(&l, &c, cycle_covering_map(8, 8)).unwrap();
        let w = Window::new(1, 5).unwrap();
        let s = ChainSlice::new(Rationals, &WindowGraph::of(&l, w), 1).unwrap();
        let t = ChainSlice::new(Rationals, &WindowGraph::of(&c, w), 1).unwrap();
        assert!(matches!(induced_chain_map(&phi, &s, &t), Err(Error::RadiusTooSmall { .. })));
    }
}
