//! Property suites runnable against one input graph. Each claim bundles a
//! group of checks; a check either asserts or only measures.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::capacity::{capacity_monotonicity, verify_capacity_inequalities};
use crate::chain::ChainComplex;
use crate::error::{Error, Result};
use crate::field::{Coefficients, Field, Rationals};
use crate::generators::{cycle_covering_map, cycle_digraph, lattice_axis_inclusion, lattice_digraph, line_digraph};
use crate::graph::{Digraph, Dist, GraphLike};
use crate::homology::{
    persistence_slice, rank_invariant, simplicial_chain_complex, simplicial_homology, simplicial_induced_ranks,
    SliceDirection,
};
use crate::morphism::{automorphisms, GraphMorphism};
use crate::path::{chain_map, induced_chain_map, ChainSlice, Side};
use crate::product::strong_product;
use crate::window::{
    embed_i, embed_j, induced_complex_map, ordered_configurations, Bifiltration, Simplex, SimplicialMap, Window,
    WindowComplex, WindowGraph,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    UnderlyingInclusions,
    DistanceDomination,
    MaxMetric,
    GeodesicEmbeddings,
    PathQuasiIsomorphism,
    PersistenceConsistency,
    CapacityInequalities,
    Equivariance,
}

impl Claim {
    pub const ALL: [Claim; 8] = [
        Claim::UnderlyingInclusions,
        Claim::DistanceDomination,
        Claim::MaxMetric,
        Claim::GeodesicEmbeddings,
        Claim::PathQuasiIsomorphism,
        Claim::PersistenceConsistency,
        Claim::CapacityInequalities,
        Claim::Equivariance,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::UnderlyingInclusions => "underlying-inclusions",
            Claim::DistanceDomination => "distance-domination",
            Claim::MaxMetric => "max-metric",
            Claim::GeodesicEmbeddings => "geodesic-embeddings",
            Claim::PathQuasiIsomorphism => "path-quasi-isomorphism",
            Claim::PersistenceConsistency => "persistence-consistency",
            Claim::CapacityInequalities => "capacity-inequalities",
            Claim::Equivariance => "equivariance",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Claim::UnderlyingInclusions => {
                "Ind(G,1/2,inf) = Ind(D,1/2,inf); Ind(G,n/2,inf) in Ind(D,n/2,inf); Ind(D,1/2,m/2) in Ind(G,1/2,m/2)"
            }
            Claim::DistanceDomination => "digraph distance dominates underlying distance; full preimage is isometric",
            Claim::MaxMetric => "strong product distance is the coordinatewise maximum",
            Claim::GeodesicEmbeddings => "maps geodesic at radius m/2 induce injective maps of Ind and of path chains",
            Claim::PathQuasiIsomorphism => "Inf and Sup have the same homology and the inclusion is a quasi-isomorphism",
            Claim::PersistenceConsistency => "barcodes and the rank invariant agree with direct homology",
            Claim::CapacityInequalities => "alpha of strong powers is ordered along digraph, underlying and graph powers",
            Claim::Equivariance => "symmetric group, reversal and automorphism actions are free or invertible",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| {
                let ids: Vec<_> = Claim::ALL.iter().map(|c| c.id()).collect();
                Error::BadParams(format!("unknown claim {s:?}; expected one of {}", ids.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Asserted,
    Measured,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn asserted(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            kind: CheckKind::Asserted,
            passed,
            detail: detail.into(),
        }
    }

    fn measured(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            kind: CheckKind::Measured,
            passed: true,
            detail: detail.into(),
        }
    }

    /// An `Ok` result passes; an error fails with its message.
    fn from_result<T>(name: impl Into<String>, r: Result<T>, ok: impl FnOnce(T) -> (bool, String)) -> Self {
        match r {
            Ok(v) => {
                let (passed, detail) = ok(v);
                Check::asserted(name, passed, detail)
            }
            Err(e) => Check::asserted(name, false, e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub claim: String,
    pub statement: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub coefficients: Coefficients,
    /// Windows to test; `None` uses the full threshold grid of the input.
    pub windows: Option<Vec<Window>>,
    pub dim_cap: usize,
    pub max_length: usize,
    pub p_max: usize,
    pub budget: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            coefficients: Coefficients::Rationals,
            windows: None,
            dim_cap: 4,
            max_length: 3,
            p_max: 2,
            budget: crate::capacity::DEFAULT_BUDGET,
        }
    }
}

/// Run one claim on a digraph. Undirected inputs enter as their full
/// preimage.
pub fn verify(claim: Claim, g: &Digraph, cfg: &SuiteConfig) -> Result<ClaimReport> {
    let checks = match cfg.coefficients {
        Coefficients::Rationals => run(claim, g, cfg, &Rationals)?,
        Coefficients::Prime(p) => run(claim, g, cfg, &p)?,
    };
    Ok(ClaimReport {
        claim: claim.id().into(),
        statement: claim.statement().into(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn run<F: Field>(claim: Claim, g: &Digraph, cfg: &SuiteConfig, f: &F) -> Result<Vec<Check>> {
    let windows = match &cfg.windows {
        Some(ws) => ws.clone(),
        None => Bifiltration::new(&g.distance_table(), 0).grid(),
    };
    match claim {
        Claim::UnderlyingInclusions => Ok(underlying_inclusions(g, cfg.dim_cap)),
        Claim::DistanceDomination => Ok(distance_domination(g)),
        Claim::MaxMetric => max_metric(g),
        Claim::GeodesicEmbeddings => Ok(geodesic_embeddings(f, cfg)),
        Claim::PathQuasiIsomorphism => path_quasi_isomorphism(f, g, &windows, cfg.max_length),
        Claim::PersistenceConsistency => persistence_consistency(f, g, cfg.dim_cap),
        Claim::CapacityInequalities => capacity_inequalities(g, cfg),
        Claim::Equivariance => equivariance(f, g, &windows, cfg),
    }
}

fn counts_detail(c: &crate::window::InclusionCheck) -> String {
    format!(
        "{} {:?} into {} {:?}",
        c.source_window.half_label(),
        c.source_counts,
        c.target_window.half_label(),
        c.target_counts
    )
}

fn underlying_inclusions(g: &Digraph, dim_cap: usize) -> Vec<Check> {
    let mut out = vec![Check::from_result("identity at (1/2, inf]", embed_i(g, &[1], dim_cap), |v| {
        (v[0].equal, counts_detail(&v[0]))
    })];
    for n in [2, 3, 4] {
        out.push(Check::from_result(format!("inclusion at ({n}/2, inf]"), embed_i(g, &[n], dim_cap), |v| {
            (true, counts_detail(&v[0]))
        }));
    }
    for m in [2, 3] {
        out.push(Check::from_result(
            format!("inclusion at (1/2, {m}/2]"),
            embed_j(g, &[Dist::Finite(m)], dim_cap),
            |v| (true, counts_detail(&v[0])),
        ));
    }
    out
}

fn distance_domination(g: &Digraph) -> Vec<Check> {
    let d = g.distance_table();
    let u = g.underlying_graph();
    let du = u.distance_table();
    vec![
        Check::asserted("digraph dominates underlying", d.dominates(&du), ""),
        Check::asserted(
            "full preimage of underlying is isometric",
            u.full_preimage().distance_table() == du,
            "",
        ),
    ]
}

fn max_metric(g: &Digraph) -> Result<Vec<Check>> {
    let n = g.vertex_count();
    let p = strong_product(g, g)?;
    let pairs = move || (0..n * n).flat_map(move |a| (0..n * n).map(move |b| (a, b)));
    let first = |bad: Option<(usize, usize)>| bad.map_or_else(String::new, |(a, b)| format!("first at ({a}, {b})"));

    let one_way = g.directed_distances();
    let one_way_p = p.directed_distances();
    let bad = pairs().find(|&(a, b)| one_way_p[a][b] != one_way[a / n][b / n].max(one_way[a % n][b % n]));
    let mut out = vec![Check::asserted("one-way distance is the coordinate maximum", bad.is_none(), first(bad))];

    let (d, dp) = (g.distance_table(), p.distance_table());
    let max_of = |a: usize, b: usize| d.get(a / n, b / n).max(d.get(a % n, b % n));
    let bad = pairs().find(|&(a, b)| dp.get(a, b) < max_of(a, b));
    out.push(Check::asserted(
        "symmetrized distance is at least the coordinate maximum",
        bad.is_none(),
        first(bad),
    ));
    let mismatches = pairs().filter(|&(a, b)| dp.get(a, b) != max_of(a, b)).count();
    out.push(Check::measured(
        "symmetrized distance equals the coordinate maximum",
        format!("{mismatches} ordered pairs differ"),
    ));

    let u = g.underlying_graph();
    let (du, dup) = (u.distance_table(), strong_product(&u, &u)?.distance_table());
    let bad = pairs().find(|&(a, b)| dup.get(a, b) != du.get(a / n, b / n).max(du.get(a % n, b % n)));
    out.push(Check::asserted("graph distance is the coordinate maximum", bad.is_none(), first(bad)));
    Ok(out)
}

/// Windows `(n, m]` with `1 <= n < m <= m_max`, plus `(n, inf]` if asked.
fn windows_up_to(m_max: u32, with_infinite: bool) -> Vec<Window> {
    let mut out: Vec<Window> = (1..m_max)
        .flat_map(|n| (n + 1..=m_max).map(move |m| Window::new(n, m).expect("n < m")))
        .collect();
    if with_infinite {
        out.extend((1..=m_max).map(|n| Window::up_to_infinity(n).expect("n >= 1")));
    }
    out
}

/// Covering maps `L_r -> C_r` and an axis inclusion of lattices, which do
/// not depend on the input graph.
pub fn canonical_geodesic_maps() -> Vec<(String, Digraph, Digraph, Vec<usize>, Vec<Window>)> {
    let mut out = Vec::new();
    for r in [6usize, 8] {
        let windows = windows_up_to(r as u32 / 2, false);
        out.push((
            format!("line {r} onto cycle {r}"),
            line_digraph(r),
            cycle_digraph(r).expect("r >= 2"),
            cycle_covering_map(r, r),
            windows,
        ));
    }
    let (dims, map) = lattice_axis_inclusion(&[3, 3], 2, 2, 1).expect("valid axis");
    out.push((
        "3x3 lattice into 3x3x2".into(),
        lattice_digraph(&[3, 3]).expect("nonempty"),
        lattice_digraph(&dims).expect("nonempty"),
        map,
        windows_up_to(4, true),
    ));
    out
}

fn geodesic_embeddings<F: Field>(f: &F, cfg: &SuiteConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for (name, source, target, map, windows) in canonical_geodesic_maps() {
        let phi = GraphMorphism::new(&source, &target, map).expect("canonical map is total");
        for &w in &windows {
            out.push(Check::from_result(
                format!("{name}: Ind at {}", w.half_label()),
                induced_complex_map(&phi, w, cfg.dim_cap),
                |(_, rep)| (rep.injective, format!("{:?} into {:?}", rep.source_counts, rep.target_counts)),
            ));
            let slices = ChainSlice::new(f.clone(), &WindowGraph::of(&source, w), 2)
                .and_then(|s| Ok((s, ChainSlice::new(f.clone(), &WindowGraph::of(&target, w), 2)?)));
            out.push(Check::from_result(
                format!("{name}: path chains at {}", w.half_label()),
                slices.and_then(|(s, t)| induced_chain_map(&phi, &s, &t)),
                |_| (true, String::new()),
            ));
        }
        let report = phi.geodesic_report().expect("canonical map is a morphism");
        if let Dist::Finite(r) = report.max_verified_radius_doubled {
            let w = Window::new(1, r + 1).expect("1 < r + 1");
            let refused = matches!(induced_complex_map(&phi, w, cfg.dim_cap), Err(Error::RadiusTooSmall { .. }));
            out.push(Check::asserted(
                format!("{name}: refused at {}", w.half_label()),
                refused,
                format!("verified radius {}/2", r),
            ));
        }
    }
    out
}

fn complex_sanity<F: Field>(c: &ChainComplex<F>) -> bool {
    let (chain, betti) = c.euler_characteristics();
    c.is_chain_complex() && chain == betti
}

fn path_quasi_isomorphism<F: Field>(f: &F, g: &Digraph, windows: &[Window], max_length: usize) -> Result<Vec<Check>> {
    let table = g.distance_table();
    windows
        .iter()
        .map(|&w| {
            let slice = ChainSlice::new(f.clone(), &WindowGraph::new(&table, w), max_length)?;
            let inf = slice.betti(Side::Inf);
            let sup = slice.betti(Side::Sup);
            let incl = (0..max_length).map(|q| slice.inclusion_rank(q)).collect::<Result<Vec<_>>>()?;
            let passed = inf == sup
                && incl == inf
                && slice.containments_hold()
                && complex_sanity(slice.inf().complex())
                && complex_sanity(slice.sup().complex());
            Ok(Check::asserted(
                format!("Inf vs Sup at {}", w.half_label()),
                passed,
                format!("inf {inf:?} sup {sup:?} inclusion {incl:?}"),
            ))
        })
        .collect()
}

fn persistence_consistency<F: Field>(f: &F, g: &Digraph, degree_cap: usize) -> Result<Vec<Check>> {
    let table = g.distance_table();
    let bif = Bifiltration::new(&table, 0);
    let mut directions = vec![SliceDirection::NDecreasing];
    directions.extend(bif.n_thresholds().iter().map(|&n| SliceDirection::MIncreasing { n }));
    let mut out = Vec::new();
    for dir in directions {
        let bc = persistence_slice(f, &table, dir, degree_cap);
        let mismatch = bc.windows().into_iter().enumerate().find_map(|(step, w)| {
            let complex = WindowComplex::from_table(&table, w, degree_cap + 1);
            let direct = simplicial_homology(f, &complex, degree_cap);
            let sane = complex_sanity(&simplicial_chain_complex(f, &complex, degree_cap + 1));
            let alive: Vec<usize> = (0..direct.betti.len()).map(|q| bc.alive_count(q, step)).collect();
            (alive != direct.betti || !sane).then(|| format!("at {}: bars {alive:?} direct {:?}", w, direct.betti))
        });
        out.push(Check::asserted(
            format!("barcode {dir:?}"),
            mismatch.is_none(),
            mismatch.unwrap_or_else(|| format!("{} bars", bc.bars.len())),
        ));
    }
    let ri = rank_invariant(f, &table, degree_cap)?;
    let violations = ri.composition_violations();
    out.push(Check::asserted(
        "rank invariant composition",
        violations.is_empty(),
        format!("{} grid windows, {} violations", ri.grid.len(), violations.len()),
    ));
    let diagonal_bad = ri.grid.iter().find(|&&w| {
        let direct = simplicial_homology(f, &WindowComplex::from_table(&table, w, degree_cap + 1), degree_cap);
        (0..direct.betti.len()).any(|q| ri.rank(w, w, q) != Some(direct.betti[q]))
    });
    out.push(Check::asserted(
        "rank invariant diagonal is Betti",
        diagonal_bad.is_none(),
        diagonal_bad.map_or_else(String::new, |w| format!("differs at {w}")),
    ));
    Ok(out)
}

fn capacity_inequalities(g: &Digraph, cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let r = verify_capacity_inequalities(g, &[1, 2], &[Dist::Finite(2), Dist::Finite(3)], cfg.p_max, cfg.budget)?;
    let mut out = vec![Check::asserted(
        "upward chain at (n/2, inf] and lower link at (1/2, m/2]",
        r.holds,
        format!("{} entries", r.upward.len() + r.mirror.len()),
    )];
    out.push(Check::measured(
        "underlying power below graph power at (1/2, m/2]",
        format!("exceeded at {:?}", r.mirror_upper_link_exceeded),
    ));
    for (name, source, target, map, windows) in canonical_geodesic_maps().into_iter().take(2) {
        let phi = GraphMorphism::new(&source, &target, map).expect("canonical map is total");
        for w in windows.into_iter().filter(|w| w.n() == 1) {
            out.push(Check::from_result(
                format!("{name}: monotone at {}", w.half_label()),
                capacity_monotonicity(&phi, w, cfg.p_max, cfg.budget),
                |entries| {
                    let ok = entries.iter().all(|e| e.source_alpha <= e.target_alpha);
                    let pairs: Vec<_> = entries.iter().map(|e| (e.source_alpha, e.target_alpha)).collect();
                    (ok, format!("{pairs:?}"))
                },
            ));
        }
    }
    Ok(out)
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn equivariance<F: Field>(f: &F, g: &Digraph, windows: &[Window], cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let table = g.distance_table();
    let autos = automorphisms(g)?;
    let mut out = Vec::new();
    for &w in windows {
        let graph = WindowGraph::new(&table, w);
        let complex = WindowComplex::new(graph.clone(), cfg.dim_cap);
        let fibres_ok = (1..=5.min(cfg.dim_cap + 1)).all(|k| {
            let confs = ordered_configurations(&graph, k);
            confs.len() == factorial(k) * complex.simplices(k - 1).len()
                && confs.iter().all(|c| complex.contains(&Simplex::new(c.clone())))
        });
        out.push(Check::asserted(format!("free symmetric action at {}", w.half_label()), fibres_ok, ""));

        let slice = ChainSlice::new(f.clone(), &graph, cfg.max_length)?;
        out.push(Check::asserted(
            format!("reversal invariance at {}", w.half_label()),
            slice.reversal_invariant(),
            "",
        ));

        let betti = simplicial_homology(f, &complex, cfg.dim_cap.saturating_sub(1)).betti;
        let path_betti = [slice.betti(Side::Inf), slice.betti(Side::Sup)];
        let mut failure = None;
        for sigma in &autos {
            let map = SimplicialMap::new(&complex, &complex, sigma)?;
            let ranks = simplicial_induced_ranks(f, &complex, &complex, &map, cfg.dim_cap.saturating_sub(1))?;
            let cm = chain_map(&slice, &slice, sigma)?;
            let inf = cm.homology_ranks(Side::Inf, &slice, &slice)?;
            let sup = cm.homology_ranks(Side::Sup, &slice, &slice)?;
            if ranks != betti[..ranks.len()] || [inf, sup] != path_betti {
                failure = Some(format!("{sigma:?}"));
                break;
            }
        }
        out.push(Check::asserted(
            format!("automorphisms invertible on homology at {}", w.half_label()),
            failure.is_none(),
            failure.unwrap_or_else(|| format!("{} automorphisms", autos.len())),
        ));
    }
    Ok(out)
}
