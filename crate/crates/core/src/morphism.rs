//! Morphisms, geodesic checks and automorphisms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Dist, DistanceTable, GraphLike, VertexId};

/// Default vertex cap for [`automorphisms`].
pub const AUTOMORPHISM_CAP: usize = 12;

/// A vertex map between two (di)graphs of the same kind. Whether it is a
/// morphism is checked separately by [`GraphMorphism::is_morphism`].
#[derive(Debug, Clone)]
pub struct GraphMorphism<'a, G: GraphLike> {
    pub source: &'a G,
    pub target: &'a G,
    map: Vec<VertexId>,
}

impl<'a, G: GraphLike> GraphMorphism<'a, G> {
    /// Fails when the map is not total or points outside the target.
    pub fn new(source: &'a G, target: &'a G, map: Vec<VertexId>) -> Result<Self> {
        if map.len() != source.vertex_count() {
            return Err(Error::BadParams(format!(
                "vertex map has {} entries, source has {} vertices",
                map.len(),
                source.vertex_count()
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: target.vertex_count(),
            });
        }
        Ok(GraphMorphism { source, target, map })
    }

    pub fn identity(g: &'a G) -> Self {
        GraphMorphism {
            source: g,
            target: g,
            map: (0..g.vertex_count()).collect(),
        }
    }

    pub fn map(&self) -> &[VertexId] {
        &self.map
    }

    pub fn apply(&self, v: VertexId) -> VertexId {
        self.map[v]
    }

    /// Every link maps to a link or collapses to a vertex.
    pub fn is_morphism(&self) -> bool {
        self.first_violation().is_none()
    }

    fn first_violation(&self) -> Option<(VertexId, VertexId)> {
        self.source.links().into_iter().find(|&(u, v)| {
            let (a, b) = (self.map[u], self.map[v]);
            a != b && !self.target.has_link(a, b)
        })
    }

    pub fn geodesic_report(&self) -> Result<GeodesicReport> {
        if let Some((u, v)) = self.first_violation() {
            return Err(Error::NotAMorphism(format!(
                "link ({u}, {v}) maps to ({}, {}), which is neither a link nor a vertex",
                self.map[u], self.map[v]
            )));
        }
        Ok(geodesic_report_from_tables(
            &self.source.distance_table(),
            &self.target.distance_table(),
            &self.map,
        ))
    }
}

/// How far a morphism preserves distances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeodesicReport {
    pub is_morphism: bool,
    /// Largest `n` such that every pair at source distance `<= n` keeps its
    /// distance. `Infinite` when no pair at finite distance shrinks.
    pub max_verified_radius_doubled: Dist,
    /// All distances preserved, including infinite ones.
    pub is_embedding: bool,
    /// Supremum of source distances, i.e. twice the source radius.
    pub source_radius_doubled: Dist,
    /// A pair `(u, v)` whose distance shrinks at the smallest source distance.
    pub first_failure: Option<(VertexId, VertexId)>,
}

impl GeodesicReport {
    /// Whether the map is an immersion with radius `m/2`.
    pub fn covers(&self, m: Dist) -> bool {
        match m {
            Dist::Infinite => self.is_embedding,
            Dist::Finite(_) => self.max_verified_radius_doubled >= m,
        }
    }
}

/// The geodesic report of a vertex map, given both distance tables. The
/// morphism property is assumed.
pub fn geodesic_report_from_tables(
    source: &DistanceTable,
    target: &DistanceTable,
    map: &[VertexId],
) -> GeodesicReport {
    let n = source.vertex_count();
    let mut smallest_finite: Option<(u32, VertexId, VertexId)> = None;
    let mut infinite_failure = None;
    for u in 0..n {
        for v in u + 1..n {
            let ds = source.get(u, v);
            if ds == target.get(map[u], map[v]) {
                continue;
            }
            match ds {
                Dist::Finite(d) => {
                    if smallest_finite.is_none_or(|(best, _, _)| d < best) {
                        smallest_finite = Some((d, u, v));
                    }
                }
                Dist::Infinite => {
                    infinite_failure.get_or_insert((u, v));
                }
            }
        }
    }
    GeodesicReport {
        is_morphism: true,
        max_verified_radius_doubled: smallest_finite
            .map_or(Dist::Infinite, |(d, _, _)| Dist::Finite(d - 1)),
        is_embedding: smallest_finite.is_none() && infinite_failure.is_none(),
        source_radius_doubled: source.sup(),
        first_failure: smallest_finite.map(|(_, u, v)| (u, v)).or(infinite_failure),
    }
}

/// All automorphisms, as vertex permutations in lexicographic order.
pub fn automorphisms<G: GraphLike>(g: &G) -> Result<Vec<Vec<VertexId>>> {
    automorphisms_capped(g, AUTOMORPHISM_CAP)
}

pub fn automorphisms_capped<G: GraphLike>(g: &G, cap: usize) -> Result<Vec<Vec<VertexId>>> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::TooLarge { count: n, cap });
    }
    let sig: Vec<_> = (0..n).map(|v| g.degree_signature(v)).collect();
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend_automorphism(g, &sig, &mut perm, &mut used, &mut out);
    Ok(out)
}

fn extend_automorphism<G: GraphLike>(
    g: &G,
    sig: &[(usize, usize)],
    perm: &mut Vec<VertexId>,
    used: &mut [bool],
    out: &mut Vec<Vec<VertexId>>,
) {
    let u = perm.len();
    if u == sig.len() {
        out.push(perm.clone());
        return;
    }
    for c in 0..sig.len() {
        if used[c] || sig[c] != sig[u] {
            continue;
        }
        let consistent = perm.iter().enumerate().all(|(w, &pw)| {
            g.has_link(u, w) == g.has_link(c, pw) && g.has_link(w, u) == g.has_link(pw, c)
        });
        if consistent {
            used[c] = true;
            perm.push(c);
            extend_automorphism(g, sig, perm, used, out);
            perm.pop();
            used[c] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::graph::{Digraph, Graph};

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_force<G: GraphLike>(g: &G) -> Vec<Vec<usize>> {
        let links = g.links();
        let mut out: Vec<_> = all_perms(g.vertex_count())
            .into_iter()
            .filter(|p| {
                let mut image: Vec<_> = links
                    .iter()
                    .map(|&(u, v)| {
                        let (a, b) = (p[u], p[v]);
                        if G::DIRECTED { (a, b) } else { (a.min(b), a.max(b)) }
                    })
                    .collect();
                image.sort();
                image == links
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn cycle_automorphisms_match_brute_force() {
        let c = cycle_digraph(5).unwrap();
        let rot = automorphisms(&c).unwrap();
        assert_eq!(rot.len(), 5);
        assert_eq!(rot, brute_force(&c));
        let u = automorphisms(&c.underlying_graph()).unwrap();
        assert_eq!(u.len(), 10);
        assert_eq!(u, brute_force(&c.underlying_graph()));
        assert!(rot.iter().all(|p| u.contains(p)));
    }

    #[test]
    fn edgeless_graph_has_all_permutations() {
        assert_eq!(automorphisms(&Graph::empty(4)).unwrap().len(), 24);
        assert!(matches!(
            automorphisms(&Graph::empty(13)),
            Err(Error::TooLarge { count: 13, cap: 12 })
        ));
    }

    #[test]
    fn morphism_checks() {
        let l = line_digraph(8);
        let c = cycle_digraph(6).unwrap();
        assert!(GraphMorphism::new(&l, &c, cycle_covering_map(8, 6)).unwrap().is_morphism());
        assert!(GraphMorphism::identity(&l).is_morphism());
        let bad = GraphMorphism::new(&l, &l, vec![0, 2, 2, 3, 4, 5, 6, 7]).unwrap();
        assert!(!bad.is_morphism());
        assert!(matches!(bad.geodesic_report(), Err(Error::NotAMorphism(_))));
        assert!(GraphMorphism::new(&l, &c, vec![0; 3]).is_err());
    }

    #[test]
    fn covering_map_radius() {
        for r in [5, 6, 7, 8] {
            let l = line_digraph(3 * r);
            let c = cycle_digraph(r).unwrap();
            let rep = GraphMorphism::new(&l, &c, cycle_covering_map(3 * r, r))
                .unwrap()
                .geodesic_report()
                .unwrap();
            assert_eq!(rep.max_verified_radius_doubled, Dist::Finite(r as u32 / 2));
            assert!(!rep.is_embedding);
        }
    }

    #[test]
    fn zigzag_parity_is_immersion_not_embedding() {
        let z = zigzag(8);
        let s = segment(2);
        let rep = GraphMorphism::new(&z, &s, zigzag_parity_map(8))
            .unwrap()
            .geodesic_report()
            .unwrap();
        assert_eq!(rep.max_verified_radius_doubled, Dist::Infinite);
        assert!(!rep.is_embedding);
        assert!(rep.covers(Dist::Finite(100)));
        assert!(!rep.covers(Dist::Infinite));
    }

    #[test]
    fn automorphisms_are_embeddings() {
        let g = Digraph::new(5, [(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        for p in automorphisms(&g).unwrap() {
            let rep = GraphMorphism::new(&g, &g, p).unwrap().geodesic_report().unwrap();
            assert!(rep.is_embedding);
        }
    }
}
