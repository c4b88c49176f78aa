//! Graph documents (JSON) and DOT export.
//!
//! ```json
//! {
//!   "vertices": ["a", "b"],
//!   "measured": [],
//!   "edges": [
//!     {"id": "I", "u": "a", "v": "b", "mode_u": 0, "mode_v": 0,
//!      "amp_mag": 1.0, "amp_phase_rad": 0.0, "layer": 0}
//!   ]
//! }
//! ```
//!
//! `measured` and `layer` are optional; so are `id` (defaults to `e<k>`,
//! `k` the edge's position in the list), the modes (default 0), `amp_mag`
//! (default 1) and `amp_phase_rad` (default 0). [`serialize_graph`] always
//! writes every field, with edges sorted by id.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Amplitude, EdgeSpec, ExperimentGraph, GraphBuilder};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    measured: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    u: String,
    v: String,
    #[serde(default)]
    mode_u: i64,
    #[serde(default)]
    mode_v: i64,
    #[serde(default = "unit_magnitude")]
    amp_mag: f64,
    #[serde(default)]
    amp_phase_rad: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    layer: Option<i64>,
}

fn unit_magnitude() -> f64 {
    1.0
}

pub(crate) fn json_error(err: &serde_json::Error) -> Error {
    Error::parse(
        format!("line {}, column {}", err.line(), err.column()),
        err.to_string(),
    )
}

fn non_negative(value: i64, location: String, what: &str) -> Result<u32> {
    u32::try_from(value).map_err(|_| {
        let msg = if value < 0 {
            format!("negative {what} {value}")
        } else {
            format!("{what} {value} out of range")
        };
        Error::parse(location, msg)
    })
}

/// Parse a graph document.
pub fn parse_graph(text: &str) -> Result<ExperimentGraph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| json_error(&e))?;

    let mut names = HashSet::new();
    for (i, name) in doc.vertices.iter().enumerate() {
        if !names.insert(name.as_str()) {
            return Err(Error::parse(
                format!("vertices[{i}]"),
                format!("duplicate vertex `{name}`"),
            ));
        }
    }
    for (i, name) in doc.measured.iter().enumerate() {
        if !names.contains(name.as_str()) {
            return Err(Error::parse(
                format!("measured[{i}]"),
                format!("unknown vertex `{name}`"),
            ));
        }
    }

    let mut ids = HashSet::new();
    let mut specs = Vec::with_capacity(doc.edges.len());
    for (i, e) in doc.edges.into_iter().enumerate() {
        let at = |field: &str| format!("edges[{i}].{field}");
        let id = e.id.unwrap_or_else(|| format!("e{i}"));
        if !ids.insert(id.clone()) {
            return Err(Error::parse(at("id"), format!("duplicate edge id `{id}`")));
        }
        for (field, name) in [("u", &e.u), ("v", &e.v)] {
            if !names.contains(name.as_str()) {
                return Err(Error::parse(at(field), format!("unknown vertex `{name}`")));
            }
        }
        if e.u == e.v {
            return Err(Error::parse(at("v"), format!("edge `{id}` is a self-loop")));
        }
        let mode_u = non_negative(e.mode_u, at("mode_u"), "mode")?;
        let mode_v = non_negative(e.mode_v, at("mode_v"), "mode")?;
        let layer = e
            .layer
            .map(|l| non_negative(l, at("layer"), "layer"))
            .transpose()?;
        let amplitude = Amplitude::new(e.amp_mag, e.amp_phase_rad);
        if !amplitude.is_finite() {
            return Err(Error::parse(at("amp_mag"), "amplitude must be finite"));
        }
        specs.push(EdgeSpec {
            id: Some(id),
            u: e.u,
            v: e.v,
            mode_u,
            mode_v,
            amplitude,
            layer,
        });
    }

    GraphBuilder::new(doc.vertices)
        .measured(doc.measured)
        .edges(specs)
        .build()
}

/// Canonical document: vertices in declaration order, edges sorted by id,
/// every field written. Output is byte-identical for equal graphs.
pub fn serialize_graph(g: &ExperimentGraph) -> String {
    let doc = GraphDoc {
        vertices: g.vertex_names().to_vec(),
        measured: g.measured().map(|v| g.name(v).to_string()).collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                id: Some(e.id.clone()),
                u: g.name(e.u).to_string(),
                v: g.name(e.v).to_string(),
                mode_u: e.mode_u.into(),
                mode_v: e.mode_v.into(),
                amp_mag: e.amplitude.magnitude,
                amp_phase_rad: e.amplitude.phase,
                layer: e.layer.map(i64::from),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("graph document serializes");
    out.push('\n');
    out
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering: one edge statement per crystal labelled
/// `id:(mode_u,mode_v)`; measured vertices are drawn as double circles.
pub fn to_dot(g: &ExperimentGraph) -> String {
    let mut out = String::from("graph experiment {\n");
    for v in g.vertex_ids() {
        let shape = if g.is_measured(v) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {} [shape={shape}];", dot_quote(g.name(v)));
    }
    for e in g.edges() {
        let label = format!("{}:({},{})", e.id, e.mode_u, e.mode_v);
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            dot_quote(g.name(e.u)),
            dot_quote(g.name(e.v)),
            dot_quote(&label)
        );
    }
    out.push_str("}\n");
    out
}
