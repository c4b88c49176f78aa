//! The experiment graph: optical paths are vertices, crystals are edges.
//!
//! An [`ExperimentGraph`] is an undirected multigraph whose edges carry the
//! mode number each crystal emits into either path, a complex amplitude (set
//! by phase shifters and pump weights), and an optional layer tag. Parallel
//! edges are allowed; self-loops are not.
//!
//! Graphs are immutable once built. Edges are kept sorted by id, so two graphs
//! that differ only in the order their edges were declared compare equal and
//! behave identically in every downstream computation.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Position of a vertex in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Crystal amplitude in polar form.
///
/// Files store magnitude and phase; keeping the same pair in memory makes
/// parse/serialize round-trips exact. Use [`Amplitude::to_complex`] for
/// arithmetic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub magnitude: f64,
    pub phase: f64,
}

impl Amplitude {
    pub const UNIT: Amplitude = Amplitude {
        magnitude: 1.0,
        phase: 0.0,
    };

    pub fn new(magnitude: f64, phase: f64) -> Self {
        Amplitude { magnitude, phase }
    }

    /// Unit magnitude with the given phase in radians.
    pub fn phase(phase: f64) -> Self {
        Amplitude {
            magnitude: 1.0,
            phase,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.magnitude, self.phase)
    }

    pub fn is_finite(self) -> bool {
        self.magnitude.is_finite() && self.phase.is_finite()
    }
}

impl Default for Amplitude {
    fn default() -> Self {
        Amplitude::UNIT
    }
}

/// A crystal: emits one photon into each of two paths.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: String,
    /// Endpoint with the smaller index.
    pub u: VertexId,
    pub v: VertexId,
    pub mode_u: u32,
    pub mode_v: u32,
    pub amplitude: Amplitude,
    pub layer: Option<u32>,
}

impl Edge {
    /// The mode this edge assigns to `vertex`, if it is an endpoint.
    pub fn mode_at(&self, vertex: VertexId) -> Option<u32> {
        if vertex == self.u {
            Some(self.mode_u)
        } else if vertex == self.v {
            Some(self.mode_v)
        } else {
            None
        }
    }

    pub fn touches(&self, vertex: VertexId) -> bool {
        self.u == vertex || self.v == vertex
    }

    pub fn other(&self, vertex: VertexId) -> Option<VertexId> {
        if vertex == self.u {
            Some(self.v)
        } else if vertex == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

/// Edge description used while building a graph; endpoints are vertex names.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSpec {
    pub id: Option<String>,
    pub u: String,
    pub v: String,
    pub mode_u: u32,
    pub mode_v: u32,
    pub amplitude: Amplitude,
    pub layer: Option<u32>,
}

impl EdgeSpec {
    pub fn new(u: impl Into<String>, v: impl Into<String>) -> Self {
        EdgeSpec {
            id: None,
            u: u.into(),
            v: v.into(),
            mode_u: 0,
            mode_v: 0,
            amplitude: Amplitude::UNIT,
            layer: None,
        }
    }

    pub fn id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    pub fn modes(mut self, mode_u: u32, mode_v: u32) -> Self {
        self.mode_u = mode_u;
        self.mode_v = mode_v;
        self
    }

    /// Both photons in the same mode.
    pub fn mode(self, mode: u32) -> Self {
        self.modes(mode, mode)
    }

    pub fn amplitude(mut self, amplitude: Amplitude) -> Self {
        self.amplitude = amplitude;
        self
    }

    pub fn phase(mut self, phase: f64) -> Self {
        self.amplitude.phase = phase;
        self
    }

    pub fn layer(mut self, layer: u32) -> Self {
        self.layer = Some(layer);
        self
    }
}

/// Collects vertices and edges, then validates everything at once.
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    measured: Vec<String>,
    edges: Vec<EdgeSpec>,
}

impl GraphBuilder {
    pub fn new<I, S>(vertices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        GraphBuilder {
            vertices: vertices.into_iter().map(Into::into).collect(),
            ..Default::default()
        }
    }

    pub fn edge(mut self, spec: EdgeSpec) -> Self {
        self.edges.push(spec);
        self
    }

    pub fn edges(mut self, specs: impl IntoIterator<Item = EdgeSpec>) -> Self {
        self.edges.extend(specs);
        self
    }

    pub fn measured<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.measured.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn build(self) -> Result<ExperimentGraph> {
        let mut index = HashMap::with_capacity(self.vertices.len());
        for (i, name) in self.vertices.iter().enumerate() {
            if index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };

        let mut measured = vec![false; self.vertices.len()];
        for name in &self.measured {
            measured[lookup(name)?.0] = true;
        }

        let mut seen = HashSet::with_capacity(self.edges.len());
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, spec) in self.edges.into_iter().enumerate() {
            let id = spec.id.unwrap_or_else(|| format!("e{k}"));
            if !seen.insert(id.clone()) {
                return Err(Error::DuplicateEdge(id));
            }
            let a = lookup(&spec.u)?;
            let b = lookup(&spec.v)?;
            if a == b {
                return Err(Error::SelfLoop(id));
            }
            if !spec.amplitude.is_finite() {
                return Err(Error::NonFiniteAmplitude { edge: id });
            }
            let (u, v, mode_u, mode_v) = if a < b {
                (a, b, spec.mode_u, spec.mode_v)
            } else {
                (b, a, spec.mode_v, spec.mode_u)
            };
            edges.push(Edge {
                id,
                u,
                v,
                mode_u,
                mode_v,
                amplitude: spec.amplitude,
                layer: spec.layer,
            });
        }
        edges.sort_by(|x, y| x.id.cmp(&y.id));

        Ok(ExperimentGraph {
            vertices: self.vertices,
            edges,
            measured,
        })
    }
}

/// Default path labels: `a`, `b`, ... for up to 26 vertices, `v0`, `v1`, ...
/// beyond that.
pub fn default_vertex_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..n).map(|i| format!("v{i}")).collect()
    }
}

/// An optical setup: paths, crystals, and the paths absorbed by a joint
/// (Bell-state) measurement after merging.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    measured: Vec<bool>,
}

impl ExperimentGraph {
    /// Graph with no vertices and no edges.
    pub fn empty() -> Self {
        ExperimentGraph::default()
    }

    /// Vertices only.
    pub fn edgeless(n: usize) -> Self {
        ExperimentGraph {
            vertices: default_vertex_names(n),
            edges: Vec::new(),
            measured: vec![false; n],
        }
    }

    /// The complete graph on `n` vertices with unit amplitudes and mode 0.
    pub fn complete(n: usize) -> Self {
        let names = default_vertex_names(n);
        let mut specs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                specs.push(EdgeSpec::new(names[i].clone(), names[j].clone()));
            }
        }
        GraphBuilder::new(names)
            .edges(specs)
            .build()
            .expect("complete graph is well-formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|n| n == name).map(VertexId)
    }

    pub(crate) fn require_vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Edges, sorted by id.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edge_index(id).map(|i| &self.edges[i])
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.binary_search_by(|e| e.id.as_str().cmp(id)).ok()
    }

    pub fn is_measured(&self, v: VertexId) -> bool {
        self.measured[v.0]
    }

    pub fn measured(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_ids().filter(|&v| self.measured[v.0])
    }

    pub fn has_measured(&self) -> bool {
        self.measured.iter().any(|&m| m)
    }

    /// Number of photons in a post-selected term.
    pub fn ket_len(&self) -> usize {
        self.measured.iter().filter(|&&m| !m).count()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    pub fn max_degree(&self) -> usize {
        self.vertex_ids().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Indices (into [`edges`](Self::edges)) of the edges at each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (k, e) in self.edges.iter().enumerate() {
            inc[e.u.0].push(k);
            inc[e.v.0].push(k);
        }
        inc
    }

    /// Builder pre-filled with this graph's vertices, edges and measured set.
    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            vertices: self.vertices.clone(),
            measured: self.measured().map(|v| self.name(v).to_string()).collect(),
            edges: self.edges.iter().map(|e| self.edge_spec(e)).collect(),
        }
    }

    pub(crate) fn edge_spec(&self, e: &Edge) -> EdgeSpec {
        EdgeSpec {
            id: Some(e.id.clone()),
            u: self.name(e.u).to_string(),
            v: self.name(e.v).to_string(),
            mode_u: e.mode_u,
            mode_v: e.mode_v,
            amplitude: e.amplitude,
            layer: e.layer,
        }
    }

    /// Copy with one edge's phase replaced.
    pub fn with_edge_phase(&self, id: &str, phase: f64) -> Result<Self> {
        let k = self
            .edge_index(id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))?;
        let mut g = self.clone();
        g.edges[k].amplitude.phase = phase;
        Ok(g)
    }

    /// Copy with every layer tag cleared.
    pub fn without_layers(&self) -> Self {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.layer = None;
        }
        g
    }

    /// Copy with the vertex removed along with every edge touching it.
    pub fn remove_vertex(&self, v: VertexId) -> Self {
        let remap = |x: VertexId| if x.0 > v.0 { VertexId(x.0 - 1) } else { x };
        let mut vertices = self.vertices.clone();
        vertices.remove(v.0);
        let mut measured = self.measured.clone();
        measured.remove(v.0);
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.touches(v))
            .map(|e| Edge {
                u: remap(e.u),
                v: remap(e.v),
                ..e.clone()
            })
            .collect();
        ExperimentGraph {
            vertices,
            edges,
            measured,
        }
    }

    /// Parallel-edge multiplicities.
    pub fn adjacency(&self) -> AdjacencyMatrix {
        let n = self.vertices.len();
        let mut entries = vec![0u32; n * n];
        for e in &self.edges {
            entries[e.u.0 * n + e.v.0] += 1;
            entries[e.v.0 * n + e.u.0] += 1;
        }
        AdjacencyMatrix { order: n, entries }
    }

    /// Two-colouring with the lowest-index vertex of each component in part X.
    ///
    /// Returns the parts in index order, or the odd cycle that prevents a
    /// two-colouring.
    pub fn bipartition(&self) -> Result<(Vec<VertexId>, Vec<VertexId>)> {
        let n = self.vertices.len();
        let inc = self.incidence();
        let mut color: Vec<Option<bool>> = vec![None; n];
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut depth = vec![0usize; n];

        for root in 0..n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &k in &inc[x] {
                    let y = self.edges[k].other(VertexId(x)).unwrap().0;
                    match color[y] {
                        None => {
                            color[y] = Some(!color[x].unwrap());
                            parent[y] = Some(x);
                            depth[y] = depth[x] + 1;
                            queue.push_back(y);
                        }
                        Some(c) if c == color[x].unwrap() => {
                            let cycle = odd_cycle(x, y, &parent, &depth);
                            return Err(Error::NotBipartite {
                                cycle: cycle
                                    .into_iter()
                                    .map(|i| self.vertices[i].clone())
                                    .collect(),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }

        let x = (0..n).filter(|&i| color[i] == Some(false)).map(VertexId);
        let y = (0..n).filter(|&i| color[i] == Some(true)).map(VertexId);
        Ok((x.collect(), y.collect()))
    }

    /// Biadjacency matrix for the auto-detected bipartition.
    pub fn biadjacency(&self) -> Result<BiadjacencyMatrix> {
        let (x, y) = self.bipartition()?;
        self.biadjacency_with_parts(&x, &y)
    }

    /// Biadjacency matrix for caller-pinned parts.
    ///
    /// Every vertex must be in exactly one part and every edge must cross.
    pub fn biadjacency_with_parts(
        &self,
        rows: &[VertexId],
        cols: &[VertexId],
    ) -> Result<BiadjacencyMatrix> {
        let n = self.vertices.len();
        let mut side = vec![None; n];
        for (part, members) in [(0usize, rows), (1, cols)] {
            for &v in members {
                if v.0 >= n {
                    return Err(Error::UnknownVertex(v.to_string()));
                }
                if side[v.0].replace((part, 0)).is_some() {
                    return Err(Error::domain(format!(
                        "vertex `{}` assigned to both parts",
                        self.name(v)
                    )));
                }
            }
        }
        if let Some(i) = side.iter().position(Option::is_none) {
            return Err(Error::domain(format!(
                "vertex `{}` is in neither part",
                self.vertices[i]
            )));
        }
        let row_of: HashMap<VertexId, usize> =
            rows.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let col_of: HashMap<VertexId, usize> =
            cols.iter().enumerate().map(|(i, &v)| (v, i)).collect();

        let mut entries = vec![0u32; rows.len() * cols.len()];
        for e in &self.edges {
            let (r, c) = match (row_of.get(&e.u), col_of.get(&e.v)) {
                (Some(&r), Some(&c)) => (r, c),
                _ => match (row_of.get(&e.v), col_of.get(&e.u)) {
                    (Some(&r), Some(&c)) => (r, c),
                    _ => {
                        return Err(Error::domain(format!(
                            "edge `{}` lies inside one part",
                            e.id
                        )))
                    }
                },
            };
            entries[r * cols.len() + c] += 1;
        }
        Ok(BiadjacencyMatrix {
            rows: rows.to_vec(),
            cols: cols.to_vec(),
            entries,
        })
    }

    /// Identify vertex pairs of two graphs (entanglement swapping).
    ///
    /// Each pair `(x, y)` names a vertex of `self` and one of `other`. The
    /// result keeps `self`'s vertices in order followed by `other`'s unpaired
    /// vertices; each identified vertex takes the position of its `self`
    /// member, is named `x~y`, and is flagged as measured. Names or edge ids
    /// of `other` that clash with existing ones get a `'` suffix.
    pub fn merge(&self, other: &ExperimentGraph, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut left_used = HashSet::new();
        let mut right_used = HashSet::new();
        let mut right_to_left = HashMap::new();
        for &(x, y) in pairs {
            let vx = self.require_vertex(x)?;
            let vy = other.require_vertex(y)?;
            if !left_used.insert(vx) {
                return Err(Error::domain(format!("vertex `{x}` named in two pairs")));
            }
            if !right_used.insert(vy) {
                return Err(Error::domain(format!("vertex `{y}` named in two pairs")));
            }
            if self.is_measured(vx) || other.is_measured(vy) {
                return Err(Error::domain(format!(
                    "pair ({x}, {y}) contains an already merged vertex"
                )));
            }
            right_to_left.insert(vy, vx);
        }

        let mut names: Vec<String> = self.vertices.clone();
        let mut measured = self.measured.clone();
        let mut taken: HashSet<String> = names.iter().cloned().collect();
        for &(x, y) in pairs {
            let vx = self.require_vertex(x)?;
            taken.remove(&names[vx.0]);
            let merged = fresh_name(format!("{x}~{y}"), &taken);
            taken.insert(merged.clone());
            names[vx.0] = merged;
            measured[vx.0] = true;
        }

        let mut right_map = vec![VertexId(0); other.vertex_count()];
        for v in other.vertex_ids() {
            right_map[v.0] = match right_to_left.get(&v) {
                Some(&vx) => vx,
                None => {
                    let name = fresh_name(other.name(v).to_string(), &taken);
                    taken.insert(name.clone());
                    names.push(name);
                    measured.push(other.is_measured(v));
                    VertexId(names.len() - 1)
                }
            };
        }

        let mut ids: HashSet<String> = self.edges.iter().map(|e| e.id.clone()).collect();
        let mut edges = self.edges.clone();
        for e in &other.edges {
            let id = fresh_name(e.id.clone(), &ids);
            ids.insert(id.clone());
            let (a, b) = (right_map[e.u.0], right_map[e.v.0]);
            let (u, v, mode_u, mode_v) = if a < b {
                (a, b, e.mode_u, e.mode_v)
            } else {
                (b, a, e.mode_v, e.mode_u)
            };
            edges.push(Edge {
                id,
                u,
                v,
                mode_u,
                mode_v,
                amplitude: e.amplitude,
                layer: e.layer,
            });
        }
        edges.sort_by(|x, y| x.id.cmp(&y.id));

        Ok(ExperimentGraph {
            vertices: names,
            edges,
            measured,
        })
    }

    /// Erdős–Rényi G(n, p): each of the n(n-1)/2 vertex pairs gets an edge
    /// independently with probability `p`. Edges are visited in (i, j)
    /// lexicographic order and named `e<k>` by the pair's position in that
    /// order, so a fixed seed always reproduces the same graph.
    pub fn random(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!(
                "edge probability {p} is outside [0, 1]"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let names = default_vertex_names(n);
        let mut edges = Vec::new();
        let mut k = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push(Edge {
                        id: format!("e{k}"),
                        u: VertexId(i),
                        v: VertexId(j),
                        mode_u: 0,
                        mode_v: 0,
                        amplitude: Amplitude::UNIT,
                        layer: None,
                    });
                }
                k += 1;
            }
        }
        edges.sort_by(|x, y| x.id.cmp(&y.id));
        Ok(ExperimentGraph {
            vertices: names,
            edges,
            measured: vec![false; n],
        })
    }

    /// Simple graph on `n` vertices from a bitmask over the pairs of K_n in
    /// (i, j) lexicographic order. Used by exhaustive subgraph scans.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let names = default_vertex_names(n);
        let mut edges = Vec::new();
        let mut k = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> k & 1 == 1 {
                    edges.push(Edge {
                        id: format!("e{k:02}"),
                        u: VertexId(i),
                        v: VertexId(j),
                        mode_u: 0,
                        mode_v: 0,
                        amplitude: Amplitude::UNIT,
                        layer: None,
                    });
                }
                k += 1;
            }
        }
        ExperimentGraph {
            vertices: names,
            edges,
            measured: vec![false; n],
        }
    }

    /// Connected components of the graph with `removed` vertices deleted,
    /// each as a sorted vertex list; components ordered by smallest vertex.
    pub fn components_without(&self, removed: &BTreeSet<VertexId>) -> Vec<Vec<VertexId>> {
        let n = self.vertices.len();
        let inc = self.incidence();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || removed.contains(&VertexId(start)) {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![VertexId(start)];
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &k in &inc[x] {
                    let y = self.edges[k].other(VertexId(x)).unwrap();
                    if !seen[y.0] && !removed.contains(&y) {
                        seen[y.0] = true;
                        comp.push(y);
                        stack.push(y.0);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }
}

fn fresh_name(mut name: String, taken: &HashSet<String>) -> String {
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

fn odd_cycle(x: usize, y: usize, parent: &[Option<usize>], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (x, y);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a].unwrap();
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b].unwrap();
        right.push(b);
    }
    while a != b {
        a = parent[a].unwrap();
        b = parent[b].unwrap();
        left.push(a);
        right.push(b);
    }
    // `a == b` is the common ancestor and sits at the end of both lists.
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Symmetric matrix of parallel-edge multiplicities with zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    order: usize,
    entries: Vec<u32>,
}

impl AdjacencyMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries
            .chunks(self.order.max(1))
            .take(self.order)
            .map(<[u32]>::to_vec)
            .collect()
    }
}

/// Multiplicities between the two parts of a bipartition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiadjacencyMatrix {
    pub rows: Vec<VertexId>,
    pub cols: Vec<VertexId>,
    entries: Vec<u32>,
}

impl BiadjacencyMatrix {
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols.len() + c]
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows.len())
            .map(|r| (0..self.cols.len()).map(|c| self.get(r, c)).collect())
            .collect()
    }
}

/// Wrap a phase into (-pi, pi].
pub fn wrap_phase(phase: f64) -> f64 {
    let mut p = phase % (2.0 * PI);
    if p <= -PI {
        p += 2.0 * PI;
    } else if p > PI {
        p -= 2.0 * PI;
    }
    p
}
