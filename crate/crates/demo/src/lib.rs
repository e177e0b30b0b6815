//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes plain strings and returns `Result<String, String>`, so
//! the same functions are exercised natively by the tests.

use std::fmt::Write;

use qlogic::hasse::{build_graph, HasseGraph};
use qlogic::io::parse_state;
use qlogic::{datasets, evaluate_structure, ks_search, Mode, Scope, Structure, TruthValue, ValuationReport};
use wasm_bindgen::prelude::*;

const LAYER_GAP: f64 = 90.0;
const SLOT: f64 = 78.0;
const MARGIN: f64 = 30.0;
const NODE_H: f64 = 26.0;

fn dataset(name: &str) -> Result<Structure, String> {
    datasets::by_name(name).ok_or_else(|| format!("unknown dataset {name:?}"))
}

fn mode(name: &str) -> Result<Mode, String> {
    name.parse()
        .map_err(|_| format!("unknown mode {name:?}; expected invariant or hilbert"))
}

fn report(dataset_name: &str, state: &str, mode_name: &str) -> Result<(Structure, ValuationReport), String> {
    let st = dataset(dataset_name)?;
    let psi = parse_state(state).map_err(|e| format!("state: {e}"))?;
    st.check_state(&psi).map_err(|e| format!("state: {e}"))?;
    let report = evaluate_structure(&st, &psi, mode(mode_name)?).map_err(|e| e.to_string())?;
    Ok((st, report))
}

#[wasm_bindgen]
pub fn dataset_names() -> Vec<String> {
    datasets::NAMES.iter().map(|s| s.to_string()).collect()
}

#[wasm_bindgen]
pub fn context_names(dataset_name: &str) -> Result<Vec<String>, String> {
    Ok(dataset(dataset_name)?
        .contexts()
        .iter()
        .map(|c| c.name().to_owned())
        .collect())
}

/// Plain-text valuation report.
#[wasm_bindgen]
pub fn evaluate(dataset_name: &str, state: &str, mode_name: &str) -> Result<String, String> {
    Ok(report(dataset_name, state, mode_name)?.1.to_text())
}

/// Kochen-Specker assignments, one per line after a `count:` header.
#[wasm_bindgen]
pub fn ks_assignments(dataset_name: &str) -> Result<String, String> {
    let found = ks_search(&dataset(dataset_name)?);
    let mut out = format!("count: {}\n", found.len());
    for a in &found {
        out.push_str(&a.to_line());
        out.push('\n');
    }
    Ok(out)
}

/// Hasse diagram as a standalone SVG document. `scope` is a context name
/// or `all`.
#[wasm_bindgen]
pub fn hasse_svg(dataset_name: &str, state: &str, mode_name: &str, scope: &str) -> Result<String, String> {
    let (st, report) = report(dataset_name, state, mode_name)?;
    let graph = build_graph(&st, &report, &Scope::parse(scope)).map_err(|e| e.to_string())?;
    Ok(render_svg(&graph, st.ambient_dim()))
}

/// Nodes grouped into layers by dimension, each layer ordered to reduce
/// crossings with a few barycenter sweeps.
pub fn layers(graph: &HasseGraph, ambient_dim: usize) -> Vec<Vec<usize>> {
    let mut layers = vec![Vec::new(); ambient_dim + 1];
    for (i, n) in graph.nodes.iter().enumerate() {
        layers[n.subspace.dim()].push(i);
    }
    let mut pos = vec![0.0; graph.nodes.len()];
    let place = |layers: &Vec<Vec<usize>>, pos: &mut Vec<f64>| {
        for layer in layers {
            for (k, &i) in layer.iter().enumerate() {
                pos[i] = (k as f64 + 0.5) / layer.len() as f64;
            }
        }
    };
    place(&layers, &mut pos);
    for sweep in 0..4 {
        let upward = sweep % 2 == 0;
        let order: Vec<usize> = if upward {
            (1..=ambient_dim).collect()
        } else {
            (0..ambient_dim).rev().collect()
        };
        for d in order {
            let mut keyed: Vec<(f64, usize)> = layers[d]
                .iter()
                .map(|&i| {
                    let nbrs: Vec<f64> = graph
                        .edges
                        .iter()
                        .filter_map(|&(lo, hi)| match upward {
                            true if hi == i => Some(pos[lo]),
                            false if lo == i => Some(pos[hi]),
                            _ => None,
                        })
                        .collect();
                    let key = if nbrs.is_empty() {
                        pos[i]
                    } else {
                        nbrs.iter().sum::<f64>() / nbrs.len() as f64
                    };
                    (key, i)
                })
                .collect();
            keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            layers[d] = keyed.into_iter().map(|(_, i)| i).collect();
            place(&layers, &mut pos);
        }
    }
    layers
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn node_width(label: &str) -> f64 {
    (label.chars().count() as f64 * 7.0 + 16.0).max(NODE_H)
}

pub fn render_svg(graph: &HasseGraph, ambient_dim: usize) -> String {
    let layers = layers(graph, ambient_dim);
    let widest = layers.iter().map(Vec::len).max().unwrap_or(1).max(1);
    let width = widest as f64 * SLOT + 2.0 * MARGIN;
    let height = ambient_dim as f64 * LAYER_GAP + 2.0 * MARGIN;
    let mut xy = vec![(0.0, 0.0); graph.nodes.len()];
    for (d, layer) in layers.iter().enumerate() {
        let y = height - MARGIN - d as f64 * LAYER_GAP;
        let step = (width - 2.0 * MARGIN) / layer.len().max(1) as f64;
        for (k, &i) in layer.iter().enumerate() {
            xy[i] = (MARGIN + step * (k as f64 + 0.5), y);
        }
    }

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    out.push_str("<g stroke=\"#555\" stroke-width=\"1\">\n");
    for &(lo, hi) in &graph.edges {
        let ((x1, y1), (x2, y2)) = (xy[lo], xy[hi]);
        writeln!(out, r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}"/>"#).unwrap();
    }
    out.push_str("</g>\n");
    for (i, n) in graph.nodes.iter().enumerate() {
        let (x, y) = xy[i];
        let w = node_width(&n.label);
        let (fill, text) = match n.value {
            TruthValue::True | TruthValue::False => ("black", "white"),
            TruthValue::Gap => ("white", "black"),
        };
        let (stroke, sw) = if n.shared { ("grey", 3) } else { ("black", 1) };
        let tip = n
            .memberships
            .iter()
            .map(|(c, l)| format!("{c}:{l}"))
            .collect::<Vec<_>>()
            .join(" ");
        writeln!(out, r#"<g class="node" data-value="{}">"#, n.value).unwrap();
        writeln!(
            out,
            "<title>{} = {}\n{}\n{}</title>",
            escape(&n.id),
            n.value,
            escape(&tip),
            escape(&n.subspace.to_string())
        )
        .unwrap();
        let paint = format!(r#"fill="{fill}" stroke="{stroke}" stroke-width="{sw}""#);
        match n.value {
            TruthValue::True => writeln!(
                out,
                r#"<rect x="{:.1}" y="{:.1}" width="{w:.1}" height="{NODE_H}" {paint}/>"#,
                x - w / 2.0,
                y - NODE_H / 2.0
            ),
            _ => writeln!(
                out,
                r#"<ellipse cx="{x:.1}" cy="{y:.1}" rx="{:.1}" ry="{:.1}" {paint}/>"#,
                w / 2.0,
                NODE_H / 2.0
            ),
        }
        .unwrap();
        writeln!(
            out,
            r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle" fill="{text}">{}</text>"#,
            y + 4.0,
            escape(&n.label)
        )
        .unwrap();
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
