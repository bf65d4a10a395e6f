//! Output assembly. Every command buffers one string and prints it whole;
//! CSV headers are fixed strings and JSON shapes are stable, while the plain
//! format is human-oriented and carries no compatibility guarantee.

use clap::ValueEnum;
use serde_json::json;

use holey_core::claims::{TwoAdic, VerificationReport};
use holey_core::grid::GridSpec;
use holey_core::linalg::CertificateSet;
use holey_core::profile::HoleCensus;
use holey_core::web::{Mod4Scan, WebCycle, WebGraph};
use holey_core::BigCount;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_owned()
    }
}

fn v2_text(v: Option<u64>) -> String {
    v.map_or_else(|| "inf".to_owned(), |v| v.to_string())
}

fn count_json(count: &BigCount) -> serde_json::Value {
    let dec = TwoAdic::decompose(count);
    json!({
        "count": count.to_string(),
        "v2": dec.valuation,
        "odd_part": dec.odd_part.to_string(),
    })
}

pub fn single_count(
    format: Format,
    spec: GridSpec,
    hole: Option<holey_core::Cell>,
    count: &BigCount,
) -> String {
    let dec = TwoAdic::decompose(count);
    match format {
        Format::Plain => match hole {
            Some(h) => format!(
                "{} hole {}: count = {} (v2 = {}, odd part = {})\n",
                spec,
                h,
                count,
                v2_text(dec.valuation),
                dec.odd_part
            ),
            None => format!(
                "{}: count = {} (v2 = {}, odd part = {})\n",
                spec,
                count,
                v2_text(dec.valuation),
                dec.odd_part
            ),
        },
        Format::Csv => {
            let (r, c) = hole.map_or((String::new(), String::new()), |h| {
                (h.row.to_string(), h.col.to_string())
            });
            format!(
                "row,col,count,v2,odd_part\n{r},{c},{count},{},{}\n",
                v2_text(dec.valuation),
                dec.odd_part
            )
        }
        Format::Json => {
            let mut value = count_json(count);
            let obj = value.as_object_mut().expect("object");
            obj.insert("rows".into(), json!(spec.rows()));
            obj.insert("cols".into(), json!(spec.cols()));
            obj.insert("hole".into(), json!(hole));
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
        }
    }
}

pub fn census(format: Format, spec: GridSpec, census: &HoleCensus) -> String {
    let total_dec = TwoAdic::decompose(&census.total);
    match format {
        Format::Plain => {
            let mut out = String::new();
            for (hole, count) in &census.per_hole {
                let dec = TwoAdic::decompose(count);
                out.push_str(&format!(
                    "hole {hole}: {count} (v2 = {}, odd part = {})\n",
                    v2_text(dec.valuation),
                    dec.odd_part
                ));
            }
            out.push_str(&format!(
                "total over {} white holes: {} (v2 = {}, odd part = {})\n",
                census.per_hole.len(),
                census.total,
                v2_text(total_dec.valuation),
                total_dec.odd_part
            ));
            out
        }
        Format::Csv => {
            let mut out = String::from("row,col,count,v2,odd_part\n");
            for (hole, count) in &census.per_hole {
                let dec = TwoAdic::decompose(count);
                out.push_str(&format!(
                    "{},{},{count},{},{}\n",
                    hole.row,
                    hole.col,
                    v2_text(dec.valuation),
                    dec.odd_part
                ));
            }
            out.push_str(&format!(
                "total,,{},{},{}\n",
                census.total,
                v2_text(total_dec.valuation),
                total_dec.odd_part
            ));
            out
        }
        Format::Json => {
            let holes: Vec<_> = census
                .per_hole
                .iter()
                .map(|(hole, count)| {
                    let mut value = count_json(count);
                    let obj = value.as_object_mut().expect("object");
                    obj.insert("row".into(), json!(hole.row));
                    obj.insert("col".into(), json!(hole.col));
                    value
                })
                .collect();
            let value = json!({
                "rows": spec.rows(),
                "cols": spec.cols(),
                "holes": holes,
                "total": count_json(&census.total),
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
        }
    }
}

pub fn report(format: Format, report: &VerificationReport) -> String {
    match format {
        Format::Plain => {
            let mut out = String::new();
            for i in &report.instances {
                out.push_str(&format!(
                    "[{}] {}: {} (expected {})\n",
                    if i.ok { "ok" } else { "FAIL" },
                    i.params,
                    i.observed,
                    i.expected
                ));
            }
            out.push_str(&format!(
                "claim {} ({}): {}, {} instances in {:.3}s\n",
                report.claim,
                report.range,
                report.verdict,
                report.instances.len(),
                report.seconds
            ));
            out
        }
        Format::Csv => {
            let mut out = String::from("claim,params,observed,expected,ok\n");
            for i in &report.instances {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    csv_escape(&report.claim),
                    csv_escape(&i.params),
                    csv_escape(&i.observed),
                    csv_escape(&i.expected),
                    i.ok
                ));
            }
            out
        }
        Format::Json => format!("{}\n", serde_json::to_string_pretty(report).expect("json")),
    }
}

pub fn certificate(format: Format, cert: &CertificateSet, verified: bool) -> String {
    let verdict = if verified { "verified" } else { "INVALID" };
    match format {
        Format::Plain => {
            let mut out = String::new();
            for cell in &cert.cells {
                out.push_str(&format!("{cell}\n"));
            }
            out.push_str(&format!("{verdict}\n"));
            out
        }
        Format::Csv => {
            let mut out = String::from("row,col\n");
            for cell in &cert.cells {
                out.push_str(&format!("{},{}\n", cell.row, cell.col));
            }
            out.push_str(&format!("verdict,{verdict}\n"));
            out
        }
        Format::Json => {
            let value = json!({
                "cells": cert.cells.iter().collect::<Vec<_>>(),
                "excluded": cert.excluded,
                "verified": verified,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
        }
    }
}

pub fn certificate_none(format: Format) -> String {
    match format {
        Format::Plain => "none\n".to_owned(),
        Format::Csv => "row,col\nverdict,none\n".to_owned(),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({"cells": null, "verified": false})).expect("json")
        ),
    }
}

pub fn web_graph(format: Format, graph: &WebGraph, cycles: &[WebCycle]) -> String {
    match format {
        Format::Plain => {
            let mut out = format!("hole: {}\n", graph.hole());
            for (from, to) in graph.arcs() {
                if let Some(to) = to {
                    out.push_str(&format!("{from}->{to}\n"));
                }
            }
            for cycle in cycles {
                let verts: Vec<String> = cycle.vertices.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!(
                    "cycle: {} encloses_hole={}\n",
                    verts.join("->"),
                    cycle.encloses_hole
                ));
            }
            out.push_str(&format!("cycles: {}\n", cycles.len()));
            out
        }
        Format::Csv => {
            let mut out = String::from("kind,from_row,from_col,to_row,to_col,encloses_hole\n");
            for (from, to) in graph.arcs() {
                if let Some(to) = to {
                    out.push_str(&format!(
                        "arc,{},{},{},{},\n",
                        from.row, from.col, to.row, to.col
                    ));
                }
            }
            for cycle in cycles {
                let n = cycle.vertices.len();
                for i in 0..n {
                    let a = cycle.vertices[i];
                    let b = cycle.vertices[(i + 1) % n];
                    out.push_str(&format!(
                        "cycle,{},{},{},{},{}\n",
                        a.row, a.col, b.row, b.col, cycle.encloses_hole
                    ));
                }
            }
            out
        }
        Format::Json => {
            let arcs: Vec<_> = graph
                .arcs()
                .iter()
                .filter_map(|(from, to)| to.map(|to| json!({"from": from, "to": to})))
                .collect();
            let cycles: Vec<_> = cycles
                .iter()
                .map(|c| {
                    json!({
                        "vertices": c.vertices,
                        "encloses_hole": c.encloses_hole,
                    })
                })
                .collect();
            let value = json!({
                "hole": graph.hole(),
                "arcs": arcs,
                "cycles": cycles,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
        }
    }
}

pub fn web_census(
    format: Format,
    matchings: usize,
    pairs: &[(usize, usize)],
    trees: &[usize],
) -> String {
    match format {
        Format::Plain => {
            let mut out = String::new();
            for (a, b) in pairs {
                out.push_str(&format!("pair: {a} {b}\n"));
            }
            for t in trees {
                out.push_str(&format!("tree: {t}\n"));
            }
            out.push_str(&format!(
                "matchings: {matchings}\npairs: {}\ntrees: {}\n",
                pairs.len(),
                trees.len()
            ));
            out
        }
        Format::Csv => {
            let mut out = String::from("kind,a,b\n");
            for (a, b) in pairs {
                out.push_str(&format!("pair,{a},{b}\n"));
            }
            for t in trees {
                out.push_str(&format!("tree,{t},\n"));
            }
            out
        }
        Format::Json => {
            let value = json!({
                "matchings": matchings,
                "pairs": pairs,
                "trees": trees,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
        }
    }
}

pub fn mod4(format: Format, scan: &Mod4Scan) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("row,col,count,mod4,class\n");
            for e in &scan.entries {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    e.hole.row, e.hole.col, e.count, e.mod4, e.class
                ));
            }
            out
        }
        Format::Plain => {
            let mut out = format!("grid: {}\n", scan.grid);
            for e in &scan.entries {
                out.push_str(&format!(
                    "hole {} ({}): {} = {} (mod 4)\n",
                    e.hole, e.class, e.count, e.mod4
                ));
            }
            out.push_str(&format!(
                "odd-white residue uniform: {}{}\n",
                scan.odd_uniform,
                scan.odd_residue
                    .map_or_else(String::new, |r| format!(" (residue {r})"))
            ));
            out.push_str(&format!(
                "even-white counts divisible by 4: {}\n",
                scan.even_divisible
            ));
            out.push_str(&format!("r=c=3 (mod 4) exemption: {}\n", scan.exemption));
            out
        }
        Format::Json => {
            let entries: Vec<_> = scan
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "row": e.hole.row,
                        "col": e.hole.col,
                        "count": e.count.to_string(),
                        "mod4": e.mod4,
                        "class": e.class,
                    })
                })
                .collect();
            let value = json!({
                "rows": scan.grid.rows(),
                "cols": scan.grid.cols(),
                "entries": entries,
                "odd_uniform": scan.odd_uniform,
                "odd_residue": scan.odd_residue,
                "even_divisible": scan.even_divisible,
                "exemption": scan.exemption,
            });
            format!("{}\n", serde_json::to_string_pretty(&value).expect("json"))
        }
    }
}

pub fn sequence(format: Format, entries: &[(usize, BigCount)]) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("k,a,v2,c_k,c_k_mod8\n");
            for (k, total) in entries {
                let dec = TwoAdic::decompose(total);
                let mod8 = &dec.odd_part % BigCount::from(8u32);
                out.push_str(&format!(
                    "{k},{total},{},{},{mod8}\n",
                    v2_text(dec.valuation),
                    dec.odd_part
                ));
            }
            out
        }
        Format::Plain => {
            let mut out = String::new();
            for (k, total) in entries {
                let dec = TwoAdic::decompose(total);
                let mod8 = &dec.odd_part % BigCount::from(8u32);
                out.push_str(&format!(
                    "k={k}: a({}) = {total} = 2^{} * {}, c_k mod 8 = {mod8}\n",
                    2 * k + 1,
                    v2_text(dec.valuation),
                    dec.odd_part
                ));
            }
            out
        }
        Format::Json => {
            let rows: Vec<_> = entries
                .iter()
                .map(|(k, total)| {
                    let dec = TwoAdic::decompose(total);
                    let mod8 = &dec.odd_part % BigCount::from(8u32);
                    json!({
                        "k": k,
                        "a": total.to_string(),
                        "v2": dec.valuation,
                        "c_k": dec.odd_part.to_string(),
                        "c_k_mod8": mod8.to_string(),
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&rows).expect("json"))
        }
    }
}
