use std::path::Path;

use anyhow::{anyhow, bail, Context};
use indcomplex::capacity::power_alpha;
use indcomplex::homology::simplicial_homology;
use indcomplex::io::{parse_coords, parse_edge_list, write_edge_list};
use indcomplex::window::check_affine_regularity;
use indcomplex::{
    automorphisms, persistence_slice, rank_invariant, suites, AnyGraph, CapacityEstimate, ChainSlice, Claim,
    Coefficients, DistanceTable, Error, GeneratorSpec, GraphLike, GraphMorphism, PrimeField, Rationals, SliceDirection,
    SuiteConfig, Window, WindowComplex, WindowGraph,
};
use rayon::prelude::*;
use serde_json::json;

use crate::output::Sink;
use crate::{Cli, Command, Outcome, SliceKind};

/// Run `$body` with `$f` bound to the chosen field.
macro_rules! with_field {
    ($coeff:expr, |$f:ident| $body:expr) => {
        match $coeff {
            Coefficients::Rationals => {
                let $f = &Rationals;
                $body
            }
            Coefficients::Prime(p) => {
                let $f: &PrimeField = &p;
                $body
            }
        }
    };
}

pub fn load_graph(spec: &str) -> anyhow::Result<AnyGraph> {
    if spec == "-" {
        let text = std::io::read_to_string(std::io::stdin())?;
        return Ok(parse_edge_list(&text)?);
    }
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
        return Ok(parse_edge_list(&text).with_context(|| format!("parsing {spec}"))?);
    }
    let gen: GeneratorSpec = spec
        .parse()
        .with_context(|| format!("{spec:?} is neither a file nor a generator spec"))?;
    Ok(gen.build()?)
}

fn ok_if(passed: bool) -> Outcome {
    if passed {
        Outcome::Ok
    } else {
        Outcome::CheckFailed
    }
}

pub fn run(cli: &Cli, out: &mut Sink) -> anyhow::Result<Outcome> {
    let input = cli.input.as_deref().ok_or_else(|| anyhow!("--input is required"))?;
    let g = load_graph(input)?;
    let table = g.distance_table();
    let window = cli.window.unwrap_or_else(Window::classical);
    let dim_cap = cli.dim_cap as usize;
    match &cli.command {
        Command::Dist => {
            out.emit(
                "distance_table",
                &json!({ "vertices": g.vertex_count(), "directed": g.is_directed(), "rows": table }),
            )?;
            Ok(Outcome::Ok)
        }
        Command::Ind { list } => {
            let complex = WindowComplex::from_table(&table, window, dim_cap);
            let homology = with_field!(cli.coeff, |f| simplicial_homology(f, &complex, dim_cap - 1));
            let dim = complex.dimension();
            out.emit(
                "complex",
                &json!({
                    "window": window,
                    "counts": complex.counts(),
                    "dimension": dim.dim,
                    "capped": dim.capped,
                    "homology": homology,
                }),
            )?;
            if *list {
                for s in complex.all_simplices() {
                    out.emit("simplex", &json!({ "dim": s.dim(), "vertices": s.vertices() }))?;
                }
            }
            Ok(Outcome::Ok)
        }
        Command::PathHomology => {
            let graph = WindowGraph::new(&table, window);
            let report = with_field!(cli.coeff, |f| ChainSlice::new(f.clone(), &graph, cli.max_len as usize)?.report());
            out.emit("path_homology", &report)?;
            Ok(Outcome::Ok)
        }
        Command::Persist { slice, n } => {
            let direction = match slice {
                SliceKind::N => SliceDirection::NDecreasing,
                SliceKind::M if *n >= 1 => SliceDirection::MIncreasing { n: *n },
                SliceKind::M => bail!("--n must be at least 1"),
            };
            let barcode = with_field!(cli.coeff, |f| persistence_slice(f, &table, direction, dim_cap - 1));
            out.emit("barcode", &barcode)?;
            Ok(Outcome::Ok)
        }
        Command::RankInvariant { grid } => {
            if grid != "auto" {
                bail!("unsupported grid {grid:?}; only `auto` is available");
            }
            rank_invariant_cmd(cli, &table, out)
        }
        Command::Capacity => match &g {
            AnyGraph::Digraph(d) => capacity_cmd(cli, d, window, out),
            AnyGraph::Graph(u) => capacity_cmd(cli, u, window, out),
        },
        Command::Product { power } => {
            let p: AnyGraph = match &g {
                AnyGraph::Digraph(d) => indcomplex::strong_power(d, *power)?.into(),
                AnyGraph::Graph(u) => indcomplex::strong_power(u, *power)?.into(),
            };
            out.emit(
                "graph",
                &json!({
                    "directed": p.is_directed(),
                    "vertices": p.vertex_count(),
                    "links": p.links(),
                    "edge_list": write_edge_list(&p),
                }),
            )?;
            Ok(Outcome::Ok)
        }
        Command::CheckGeodesic { target, map, radius } => {
            let t = load_graph(target)?;
            let map: Vec<usize> = map
                .split(',')
                .map(|x| x.trim().parse().with_context(|| format!("bad vertex {x:?} in --map")))
                .collect::<anyhow::Result<_>>()?;
            match (&g, &t) {
                (AnyGraph::Digraph(a), AnyGraph::Digraph(b)) => geodesic_cmd(a, b, map, *radius, out),
                (AnyGraph::Graph(a), AnyGraph::Graph(b)) => geodesic_cmd(a, b, map, *radius, out),
                _ => bail!("source and target must both be digraphs or both be graphs"),
            }
        }
        Command::CheckAutomorphisms => {
            let autos = match &g {
                AnyGraph::Digraph(d) => automorphisms(d)?,
                AnyGraph::Graph(u) => automorphisms(u)?,
            };
            out.emit("automorphisms", &json!({ "count": autos.len(), "automorphisms": autos }))?;
            let report = suites::verify(Claim::Equivariance, &g.to_digraph(), &suite_config(cli))?;
            out.emit("claim", &report)?;
            Ok(ok_if(report.passed))
        }
        Command::CheckRegular { coords, k } => {
            let text = std::fs::read_to_string(coords).with_context(|| format!("reading {}", coords.display()))?;
            let coords = parse_coords(&text, g.vertex_count())?;
            let report = check_affine_regularity(&table, window, *k, &coords)?;
            out.emit(
                "affine",
                &json!({
                    "k": k,
                    "window": window,
                    "regular": report.regular,
                    "violation": report.violation,
                    "dimension_too_small": report.dimension_too_small,
                }),
            )?;
            Ok(ok_if(report.regular))
        }
        Command::Verify { claim } => {
            let claims: Vec<Claim> = if claim.is_empty() {
                Claim::ALL.to_vec()
            } else {
                claim.iter().map(|c| c.parse()).collect::<Result<_, _>>()?
            };
            let digraph = g.to_digraph();
            let cfg = suite_config(cli);
            let mut passed = true;
            for c in claims {
                let report = suites::verify(c, &digraph, &cfg)?;
                passed &= report.passed;
                out.emit("claim", &report)?;
            }
            Ok(ok_if(passed))
        }
    }
}

fn suite_config(cli: &Cli) -> SuiteConfig {
    SuiteConfig {
        coefficients: cli.coeff,
        windows: cli.window.map(|w| vec![w]),
        dim_cap: cli.dim_cap as usize,
        max_length: cli.max_len as usize,
        p_max: cli.pmax as usize,
        budget: cli.budget,
    }
}

fn rank_invariant_cmd(cli: &Cli, table: &DistanceTable, out: &mut Sink) -> anyhow::Result<Outcome> {
    let degree_cap = cli.dim_cap as usize - 1;
    let ri = with_field!(cli.coeff, |f| rank_invariant(f, table, degree_cap)?);
    let violations = ri.composition_violations();
    out.emit(
        "rank_invariant",
        &json!({
            "field": ri.field,
            "degree_cap": degree_cap,
            "grid_size": ri.grid.len(),
            "pairs": ri.entries.len(),
            "violations": violations.len(),
        }),
    )?;
    for e in &ri.entries {
        out.emit("rank", e)?;
    }
    Ok(ok_if(violations.is_empty()))
}

fn capacity_cmd<G: GraphLike + Sync>(cli: &Cli, g: &G, window: Window, out: &mut Sink) -> anyhow::Result<Outcome> {
    let results: Vec<_> = (1..=cli.pmax as usize)
        .into_par_iter()
        .map(|p| power_alpha(g, window, p, cli.budget))
        .collect();
    let mut powers = Vec::new();
    let mut timed_out = false;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(a) => {
                out.emit(
                    "alpha",
                    &json!({ "p": a.p, "alpha": a.alpha, "root": a.root, "approx": a.root.to_f64() }),
                )?;
                powers.push(a);
            }
            Err(Error::Timeout { lower, upper, budget }) => {
                out.emit(
                    "timeout",
                    &json!({ "p": i + 1, "lower": lower, "upper": upper, "budget": budget }),
                )?;
                timed_out = true;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if timed_out {
        return Ok(Outcome::Timeout);
    }
    let est = CapacityEstimate::from_powers(window, powers)?;
    out.emit(
        "capacity",
        &json!({
            "window": window,
            "p_max": est.p_max,
            "best_bound": est.best_bound,
            "approx": est.best_bound.to_f64(),
            "supermultiplicativity": est.supermultiplicativity,
        }),
    )?;
    Ok(Outcome::Ok)
}

fn geodesic_cmd<G: GraphLike>(
    source: &G,
    target: &G,
    map: Vec<usize>,
    radius: Option<indcomplex::Dist>,
    out: &mut Sink,
) -> anyhow::Result<Outcome> {
    let phi = GraphMorphism::new(source, target, map)?;
    match phi.geodesic_report() {
        Ok(rep) => {
            let covers = radius.map(|r| rep.covers(r));
            let mut body = serde_json::to_value(&rep)?;
            body["required"] = json!(radius);
            body["covers"] = json!(covers);
            out.emit("geodesic", &body)?;
            Ok(ok_if(covers.unwrap_or(true)))
        }
        Err(Error::NotAMorphism(msg)) => {
            out.emit("geodesic", &json!({ "is_morphism": false, "error": msg }))?;
            Ok(Outcome::CheckFailed)
        }
        Err(e) => Err(e.into()),
    }
}
