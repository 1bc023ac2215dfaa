//! Strong products and powers.
//!
//! Product vertices are mixed-radix integers with the first factor most
//! significant: `(u, v) ↦ u·|V_b| + v`.

use crate::error::{Error, Result};
use crate::graph::{GraphLike, VertexId};

/// Default vertex cap for products.
pub const PRODUCT_CAP: usize = 20_000;

fn checked_size(sizes: &[usize], cap: usize) -> Result<usize> {
    let size: u128 = sizes.iter().map(|&s| s as u128).product();
    if size > cap as u128 {
        return Err(Error::SizeOverflow { size, cap });
    }
    Ok(size as usize)
}

pub fn encode(radix: &[usize], coords: &[VertexId]) -> VertexId {
    coords.iter().zip(radix).fold(0, |acc, (&z, &r)| acc * r + z)
}

pub fn decode(radix: &[usize], mut v: VertexId) -> Vec<VertexId> {
    let mut coords = vec![0; radix.len()];
    for (slot, &r) in coords.iter_mut().zip(radix).rev() {
        *slot = v % r;
        v /= r;
    }
    coords
}

/// `a ⊠ b`: `(u,v) ~ (u',v')` iff in each coordinate the two entries are
/// equal or linked, and not both equal.
pub fn strong_product<G: GraphLike>(a: &G, b: &G) -> Result<G> {
    strong_product_capped(a, b, PRODUCT_CAP)
}

pub fn strong_product_capped<G: GraphLike>(a: &G, b: &G, cap: usize) -> Result<G> {
    let (na, nb) = (a.vertex_count(), b.vertex_count());
    let n = checked_size(&[na, nb], cap)?;
    let stay_or_link = |g: &G, n: usize| -> Vec<(VertexId, VertexId)> {
        (0..n).map(|x| (x, x)).chain(g.links()).collect()
    };
    let (la, lb) = (stay_or_link(a, na), stay_or_link(b, nb));
    let mut links = Vec::with_capacity(la.len() * lb.len());
    for &(u, u2) in &la {
        for &(v, v2) in &lb {
            if u == u2 && v == v2 {
                continue;
            }
            let mut s = u * nb + v;
            let mut t = u2 * nb + v2;
            if !G::DIRECTED && s > t {
                std::mem::swap(&mut s, &mut t);
            }
            links.push((s, t));
            // A graph link is stored once; pairing it with a stay in the
            // other factor must also cover the reversed orientation.
            if !G::DIRECTED && u != u2 && v != v2 {
                links.push(((u * nb + v2).min(u2 * nb + v), (u * nb + v2).max(u2 * nb + v)));
            }
        }
    }
    G::from_links(n, links)
}

/// `g^⊠p`, folded left so coordinates are `(x_1, .., x_p)` with `x_1` most
/// significant.
pub fn strong_power<G: GraphLike>(g: &G, p: usize) -> Result<G> {
    strong_power_capped(g, p, PRODUCT_CAP)
}

pub fn strong_power_capped<G: GraphLike>(g: &G, p: usize, cap: usize) -> Result<G> {
    if p == 0 {
        return Err(Error::BadParams("power must be at least 1".into()));
    }
    checked_size(&vec![g.vertex_count(); p], cap)?;
    let mut acc = g.clone();
    for _ in 1..p {
        acc = strong_product_capped(&acc, g, cap)?;
    }
    Ok(acc)
}

/// Vertex map of `φ_1 ⊠ .. ⊠ φ_k` given the factor maps and sizes.
pub fn product_map(
    maps: &[&[VertexId]],
    target_sizes: &[usize],
) -> Vec<VertexId> {
    let source_sizes: Vec<usize> = maps.iter().map(|m| m.len()).collect();
    let n: usize = source_sizes.iter().product();
    (0..n)
        .map(|v| {
            let coords = decode(&source_sizes, v);
            let image: Vec<_> = coords.iter().zip(maps).map(|(&z, m)| m[z]).collect();
            encode(target_sizes, &image)
        })
        .collect()
}

/// Vertex map of `φ^⊠p`.
pub fn power_map(map: &[VertexId], target_size: usize, p: usize) -> Vec<VertexId> {
    product_map(&vec![map; p], &vec![target_size; p])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::graph::{Digraph, Dist, Graph};

    #[test]
    fn encode_decode_round_trip() {
        let radix = [3, 4, 2];
        for v in 0..24 {
            assert_eq!(encode(&radix, &decode(&radix, v)), v);
        }
        assert_eq!(encode(&radix, &[1, 0, 1]), 9);
    }

    #[test]
    fn single_vertex_factor_is_identity() {
        let g = Digraph::new(4, [(0, 1), (1, 2), (3, 2)]).unwrap();
        assert_eq!(strong_product(&Digraph::empty(1), &g).unwrap(), g);
        assert_eq!(strong_power(&g, 1).unwrap(), g);
    }

    #[test]
    fn graph_product_is_symmetric_rule() {
        let k2 = complete_graph(2);
        assert_eq!(strong_product(&k2, &k2).unwrap(), complete_graph(4));
        let p = strong_power(&cycle_graph(5).unwrap(), 2).unwrap();
        assert_eq!(p.vertex_count(), 25);
        // C5 ⊠ C5 is 8-regular.
        assert!((0..25).all(|v| p.neighbors(v).len() == 8));
    }

    #[test]
    fn digraph_product_rule() {
        let a = segment(2);
        let p = strong_product(&a, &a).unwrap();
        assert_eq!(p.links(), vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]);
        assert_eq!(p.distance_table().get(1, 2), Dist::Infinite);
    }

    #[test]
    fn size_cap() {
        let g = Graph::empty(200);
        assert!(matches!(
            strong_power(&g, 2),
            Err(Error::SizeOverflow { size: 40_000, cap: PRODUCT_CAP })
        ));
        assert!(strong_power(&g, 0).is_err());
    }

    #[test]
    fn power_map_is_coordinatewise() {
        let m = cycle_covering_map(4, 3);
        let pm = power_map(&m, 3, 2);
        assert_eq!(pm[encode(&[4, 4], &[3, 2])], encode(&[3, 3], &[0, 2]));
    }
}
