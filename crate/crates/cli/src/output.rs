//! Records and their human rendering. Every result is first built as a JSON
//! record; the human format is derived from the same record.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::Format;

pub const SCHEMA_VERSION: u64 = 1;

pub struct Sink {
    format: Format,
    out: std::io::StdoutLock<'static>,
}

impl Sink {
    pub fn new(format: Format) -> Self {
        Sink {
            format,
            out: std::io::stdout().lock(),
        }
    }

    /// Emit one record of the given kind. `body` must serialize to an object.
    pub fn emit(&mut self, kind: &str, body: &impl Serialize) -> anyhow::Result<()> {
        let mut record = Map::new();
        record.insert("schema".into(), SCHEMA_VERSION.into());
        record.insert("kind".into(), kind.into());
        match serde_json::to_value(body)? {
            Value::Object(fields) => record.extend(fields),
            other => {
                record.insert("value".into(), other);
            }
        }
        let record = Value::Object(record);
        match self.format {
            Format::Records => writeln!(self.out, "{record}")?,
            Format::Human => write!(self.out, "{}", human(kind, &record))?,
        }
        Ok(())
    }
}

fn s(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => items.iter().map(s).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn window_label(w: &Value) -> String {
    format!("({}/2, {}]", s(&w["n"]), match &w["m"] {
        Value::String(inf) => inf.clone(),
        m => format!("{m}/2"),
    })
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().zip(&widths).map(|(x, w)| format!("{x:>w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn human(kind: &str, r: &Value) -> String {
    match kind {
        "distance_table" => {
            let rows = r["rows"].as_array().cloned().unwrap_or_default();
            let mut t = vec![std::iter::once(String::new()).chain((0..rows.len()).map(|i| i.to_string())).collect()];
            for (i, row) in rows.iter().enumerate() {
                let cells = row.as_array().map(|c| c.iter().map(s).collect::<Vec<_>>()).unwrap_or_default();
                t.push(std::iter::once(i.to_string()).chain(cells).collect());
            }
            table(&t)
        }
        "complex" => format!(
            "Ind {}: simplices per dimension {}, dimension {}{}\nBetti ({}) {}{}\n",
            window_label(&r["window"]),
            s(&r["counts"]),
            s(&r["dimension"]),
            if r["capped"] == true { " (capped)" } else { "" },
            s(&r["homology"]["field"]),
            s(&r["homology"]["betti"]),
            if r["homology"]["exact_below"].as_u64() < Some(r["homology"]["betti"].as_array().map_or(0, Vec::len) as u64) {
                format!(" (exact below degree {})", s(&r["homology"]["exact_below"]))
            } else {
                String::new()
            }
        ),
        "simplex" => format!("  {}\n", s(&r["vertices"])),
        "path_homology" => format!(
            "path chains {} over {}, degrees 0..{}\n  walks {}\n  Inf dims {}  Betti {}\n  Sup dims {}  Betti {}\n",
            window_label(&r["window"]),
            s(&r["field"]),
            s(&r["max_length"]),
            s(&r["d_dims"]),
            s(&r["inf_dims"]),
            s(&r["inf_betti"]),
            s(&r["sup_dims"]),
            s(&r["sup_betti"]),
        ),
        "barcode" => {
            let mut out = format!("barcode {} thresholds {}\n", s(&r["direction"]["kind"]), s(&r["thresholds"]));
            let bars = r["bars"].as_array().cloned().unwrap_or_default();
            let mut t = vec![vec!["degree".into(), "birth".into(), "death".into()]];
            t.extend(bars.iter().map(|b| vec![s(&b["degree"]), s(&b["birth"]), s(&b["death"])]));
            out.push_str(&table(&t));
            out
        }
        "rank_invariant" => format!(
            "rank invariant over {} on {} grid windows, {} comparable pairs, {} composition violations\n",
            s(&r["field"]),
            s(&r["grid_size"]),
            s(&r["pairs"]),
            s(&r["violations"])
        ),
        "rank" => format!("  {} -> {}: {}\n", window_label(&r["from"]), window_label(&r["to"]), s(&r["ranks"])),
        "alpha" => format!("  p={}  alpha={}  alpha^(1/p)={} ~ {:.6}\n", s(&r["p"]), s(&r["alpha"]), s(&r["root"]), r["approx"].as_f64().unwrap_or(f64::NAN)),
        "capacity" => format!(
            "capacity lower bound at {}: {} ~ {:.7} (finite p <= {}, not a limit)\n",
            window_label(&r["window"]),
            s(&r["best_bound"]),
            r["approx"].as_f64().unwrap_or(f64::NAN),
            s(&r["p_max"])
        ),
        "timeout" => format!(
            "timeout at p={}: alpha in [{}, {}] after {} nodes\n",
            s(&r["p"]),
            s(&r["lower"]),
            s(&r["upper"]),
            s(&r["budget"])
        ),
        "graph" => r["edge_list"].as_str().unwrap_or_default().to_string(),
        "geodesic" => format!(
            "morphism: {}\nverified doubled radius: {}\nembedding: {}\nsource doubled radius: {}\nfirst failure: {}\n{}",
            r["is_morphism"],
            s(&r["max_verified_radius_doubled"]),
            r["is_embedding"],
            s(&r["source_radius_doubled"]),
            s(&r["first_failure"]),
            match &r["required"] {
                Value::Null => String::new(),
                req => format!("required radius {}: {}\n", s(req), if r["covers"] == true { "ok" } else { "FAILED" }),
            }
        ),
        "automorphisms" => format!("{} automorphisms\n", s(&r["count"])),
        "automorphism_check" => format!(
            "  at {}: {}  {}\n",
            window_label(&r["window"]),
            if r["passed"] == true { "ok" } else { "FAILED" },
            s(&r["detail"])
        ),
        "affine" => format!(
            "affinely {}-regular at {}: {}{}{}\n",
            s(&r["k"]),
            window_label(&r["window"]),
            r["regular"],
            match &r["violation"] {
                Value::Null => String::new(),
                v => format!(", first violation {}", s(v)),
            },
            if r["dimension_too_small"] == true { ", coordinates have too few dimensions" } else { "" }
        ),
        "claim" => {
            let mut out = format!(
                "{} {}: {}\n",
                if r["passed"] == true { "PASS" } else { "FAIL" },
                s(&r["claim"]),
                s(&r["statement"])
            );
            for c in r["checks"].as_array().cloned().unwrap_or_default() {
                let mark = match (c["kind"].as_str(), c["passed"] == true) {
                    (Some("measured"), _) => "info",
                    (_, true) => "ok",
                    (_, false) => "FAIL",
                };
                let detail = s(&c["detail"]);
                out.push_str(&format!(
                    "  [{mark}] {}{}\n",
                    s(&c["name"]),
                    if detail.is_empty() { String::new() } else { format!(": {detail}") }
                ));
            }
            out
        }
        _ => format!("{r}\n"),
    }
}
