//! Experiment plans: crystals grouped into layers plus the wiring of each path.
//!
//! A layer is a row of crystals that share no path, so it can be built as one
//! physical stage. Reading a plan back gives the graph it came from.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Amplitude, EdgeSpec, ExperimentGraph, GraphBuilder};
use crate::io::json_error;

/// One crystal of a plan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Crystal {
    pub id: String,
    pub u: String,
    pub v: String,
    pub mode_u: u32,
    pub mode_v: u32,
    pub amp_mag: f64,
    pub amp_phase_rad: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Layer {
    pub index: u32,
    pub crystals: Vec<Crystal>,
}

/// Crystals a path passes through, in build order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Wiring {
    pub path: String,
    pub crystals: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetupPlan {
    pub detectors: Vec<String>,
    pub layers: Vec<Layer>,
    pub wiring: Vec<Wiring>,
}

impl SetupPlan {
    pub fn crystal_count(&self) -> usize {
        self.layers.iter().map(|l| l.crystals.len()).sum()
    }
}

/// Assign every crystal to a layer.
///
/// Existing layer tags are kept; untagged edges, taken in id order, go to the
/// lowest layer where they share no path with a crystal already placed. At
/// most `2Δ - 1` layers are used for untagged graphs (Δ the maximum degree).
///
/// ```
/// use pathgraph::compiler::synthesize_setup;
/// use pathgraph::ExperimentGraph;
/// let plan = synthesize_setup(&ExperimentGraph::complete(4)).unwrap();
/// assert_eq!(plan.layers.len(), 3);
/// ```
pub fn synthesize_setup(g: &ExperimentGraph) -> Result<SetupPlan> {
    if g.has_measured() {
        return Err(Error::domain(
            "graphs with measured vertices are built as separate plans",
        ));
    }
    let n = g.vertex_count();
    // busy[layer][vertex]
    let mut busy: BTreeMap<u32, Vec<Option<&str>>> = BTreeMap::new();
    let mut layer_of = vec![0u32; g.edge_count()];

    for (k, e) in g.edges().iter().enumerate() {
        if let Some(l) = e.layer {
            let row = busy.entry(l).or_insert_with(|| vec![None; n]);
            for v in [e.u, e.v] {
                if let Some(other) = row[v.0] {
                    return Err(Error::domain(format!(
                        "edges `{other}` and `{}` share path `{}` in layer {l}",
                        e.id,
                        g.name(v)
                    )));
                }
                row[v.0] = Some(&e.id);
            }
            layer_of[k] = l;
        }
    }
    for (k, e) in g.edges().iter().enumerate() {
        if e.layer.is_some() {
            continue;
        }
        let mut l = 0;
        loop {
            let row = busy.entry(l).or_insert_with(|| vec![None; n]);
            if row[e.u.0].is_none() && row[e.v.0].is_none() {
                row[e.u.0] = Some(&e.id);
                row[e.v.0] = Some(&e.id);
                layer_of[k] = l;
                break;
            }
            l += 1;
        }
    }

    let mut groups: BTreeMap<u32, Vec<Crystal>> = BTreeMap::new();
    for (k, e) in g.edges().iter().enumerate() {
        groups.entry(layer_of[k]).or_default().push(Crystal {
            id: e.id.clone(),
            u: g.name(e.u).to_string(),
            v: g.name(e.v).to_string(),
            mode_u: e.mode_u,
            mode_v: e.mode_v,
            amp_mag: e.amplitude.magnitude,
            amp_phase_rad: e.amplitude.phase,
        });
    }
    let layers: Vec<Layer> = groups
        .into_iter()
        .map(|(index, crystals)| Layer { index, crystals })
        .collect();
    let detectors = g.vertex_names().to_vec();
    let wiring = wiring_for(&detectors, &layers);
    Ok(SetupPlan {
        detectors,
        layers,
        wiring,
    })
}

fn wiring_for(detectors: &[String], layers: &[Layer]) -> Vec<Wiring> {
    detectors
        .iter()
        .map(|path| Wiring {
            path: path.clone(),
            crystals: layers
                .iter()
                .flat_map(|l| &l.crystals)
                .filter(|c| &c.u == path || &c.v == path)
                .map(|c| c.id.clone())
                .collect(),
        })
        .collect()
}

/// Rebuild the graph described by a plan; each crystal is tagged with its
/// layer index.
pub fn plan_to_graph(plan: &SetupPlan) -> Result<ExperimentGraph> {
    let mut seen_layers = HashSet::new();
    for layer in &plan.layers {
        if !seen_layers.insert(layer.index) {
            return Err(Error::domain(format!("layer {} listed twice", layer.index)));
        }
        let mut paths = HashSet::new();
        for c in &layer.crystals {
            for p in [&c.u, &c.v] {
                if !paths.insert(p.as_str()) {
                    return Err(Error::domain(format!(
                        "layer {} uses path `{p}` twice",
                        layer.index
                    )));
                }
            }
        }
    }
    if plan.layers.windows(2).any(|w| w[0].index > w[1].index) {
        return Err(Error::domain("layers are not in increasing order"));
    }

    let specs = plan.layers.iter().flat_map(|layer| {
        layer.crystals.iter().map(|c| {
            EdgeSpec::new(c.u.clone(), c.v.clone())
                .id(c.id.clone())
                .modes(c.mode_u, c.mode_v)
                .amplitude(Amplitude::new(c.amp_mag, c.amp_phase_rad))
                .layer(layer.index)
        })
    });
    let g = GraphBuilder::new(plan.detectors.iter().cloned())
        .edges(specs)
        .build()?;

    let expected = wiring_for(&plan.detectors, &plan.layers);
    if plan.wiring != expected {
        let bad = plan
            .wiring
            .iter()
            .zip(&expected)
            .find(|(a, b)| a != b)
            .map(|(a, _)| a.path.clone())
            .unwrap_or_else(|| "<missing>".into());
        return Err(Error::domain(format!(
            "wiring for path `{bad}` does not follow the layers"
        )));
    }
    Ok(g)
}

pub fn parse_plan(text: &str) -> Result<SetupPlan> {
    serde_json::from_str(text).map_err(|e| json_error(&e))
}

pub fn serialize_plan(plan: &SetupPlan) -> String {
    let mut out = serde_json::to_string_pretty(plan).expect("plan serializes");
    out.push('\n');
    out
}

/// Human-readable listing: crystals layer by layer, then each path's wiring.
pub fn render_plan(plan: &SetupPlan) -> String {
    let mut out = format!("detectors: {}\n", plan.detectors.join(" "));
    for layer in &plan.layers {
        let _ = write!(out, "layer {}:", layer.index);
        for c in &layer.crystals {
            let _ = write!(out, " {}[{}-{} ({},{})", c.id, c.u, c.v, c.mode_u, c.mode_v);
            if c.amp_mag != 1.0 || c.amp_phase_rad != 0.0 {
                let _ = write!(out, " {}∠{}", c.amp_mag, c.amp_phase_rad);
            }
            out.push(']');
        }
        out.push('\n');
    }
    for w in &plan.wiring {
        let _ = writeln!(out, "path {}: {}", w.path, w.crystals.join(" -> "));
    }
    out
}
