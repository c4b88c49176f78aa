//! Perfect matchings and coincidence covers.
//!
//! A post-selected n-fold coincidence happens when every path receives
//! exactly one photon, i.e. the fired crystals form a perfect matching. Paths
//! absorbed by a joint measurement after merging must receive two photons, so
//! for graphs with measured vertices the same machinery enumerates
//! *coincidence covers*: edge sets with degree one at ordinary vertices and
//! degree two at measured ones.
//!
//! Everything here is exact and exponential in the worst case; [`Limits`]
//! guards the entry points.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::graph::{ExperimentGraph, VertexId};

/// Size guards for the exponential algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Largest vertex count for exhaustive scans over all subgraphs of K_n.
    pub max_scan_vertices: usize,
    /// Largest vertex count for the Tutte witness search.
    pub max_tutte_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vertices: 24,
            max_edges: 60,
            max_scan_vertices: 10,
            max_tutte_vertices: 20,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_vertices: usize::MAX,
            max_edges: usize::MAX,
            max_scan_vertices: usize::MAX,
            max_tutte_vertices: usize::MAX,
        }
    }

    pub fn check(&self, g: &ExperimentGraph) -> Result<()> {
        if g.vertex_count() > self.max_vertices {
            return Err(Error::ScaleLimit {
                what: "vertex count",
                actual: g.vertex_count(),
                limit: self.max_vertices,
            });
        }
        if g.edge_count() > self.max_edges {
            return Err(Error::ScaleLimit {
                what: "edge count",
                actual: g.edge_count(),
                limit: self.max_edges,
            });
        }
        Ok(())
    }
}

/// A set of crystals firing together: one photon per path (two per measured
/// path). Ordered lexicographically by edge id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PerfectMatching {
    // Indices into the graph's id-sorted edge list; index order equals id order.
    edges: Vec<usize>,
    ids: Vec<String>,
}

impl PerfectMatching {
    pub(crate) fn from_indices(g: &ExperimentGraph, mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        let ids = edges.iter().map(|&k| g.edges()[k].id.clone()).collect();
        PerfectMatching { edges, ids }
    }

    /// Build from edge ids, checking the degree constraints.
    pub fn from_ids<S: AsRef<str>>(g: &ExperimentGraph, ids: &[S]) -> Result<Self> {
        let mut edges = Vec::with_capacity(ids.len());
        for id in ids {
            let id = id.as_ref();
            edges.push(g.edge_index(id).ok_or_else(|| Error::UnknownEdge(id.into()))?);
        }
        let pm = PerfectMatching::from_indices(g, edges);
        if pm.edges.windows(2).any(|w| w[0] == w[1]) || !is_cover(g, &pm.edges) {
            return Err(Error::domain(format!(
                "{{{}}} is not a perfect matching",
                pm.ids.join(",")
            )));
        }
        Ok(pm)
    }

    pub fn edge_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn edge_indices(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_disjoint(&self, other: &PerfectMatching) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.edges.len() && j < other.edges.len() {
            match self.edges[i].cmp(&other.edges[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub(crate) fn bits(&self, edge_count: usize) -> Bits {
        Bits::from_indices(edge_count, &self.edges)
    }
}

impl Serialize for PerfectMatching {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.ids.serialize(s)
    }
}

/// Required number of photons at each vertex.
fn demand(g: &ExperimentGraph) -> Vec<u8> {
    g.vertex_ids()
        .map(|v| if g.is_measured(v) { 2 } else { 1 })
        .collect()
}

/// Whether the edge indices satisfy the cover constraints exactly.
pub(crate) fn is_cover(g: &ExperimentGraph, edges: &[usize]) -> bool {
    let mut deg = vec![0u8; g.vertex_count()];
    for &k in edges {
        let e = &g.edges()[k];
        deg[e.u.0] = deg[e.u.0].saturating_add(1);
        deg[e.v.0] = deg[e.v.0].saturating_add(1);
    }
    deg == demand(g)
}

/// Check an edge-id set against the perfect-matching (coincidence cover)
/// definition of `g`.
pub fn is_perfect_matching<S: AsRef<str>>(g: &ExperimentGraph, ids: &[S]) -> bool {
    PerfectMatching::from_ids(g, ids).is_ok()
}

/// Depth-first search over covers: always extend at the lowest vertex that
/// still needs photons, choosing its edges in increasing index order.
struct CoverSearch<'a> {
    g: &'a ExperimentGraph,
    inc: Vec<Vec<usize>>,
    need: Vec<u8>,
    used: Vec<bool>,
    last_pick: Vec<Option<usize>>,
    chosen: Vec<usize>,
}

impl<'a> CoverSearch<'a> {
    fn new(g: &'a ExperimentGraph) -> Self {
        CoverSearch {
            g,
            inc: g.incidence(),
            need: demand(g),
            used: vec![false; g.edge_count()],
            last_pick: vec![None; g.vertex_count()],
            chosen: Vec::new(),
        }
    }

    fn feasible_parity(&self) -> bool {
        self.need.iter().map(|&n| n as usize).sum::<usize>() % 2 == 0
    }

    /// Every vertex still in need has enough free edges to vertices in need.
    fn locally_feasible(&self) -> bool {
        self.need.iter().enumerate().all(|(v, &n)| {
            n == 0 || {
                let free = self.inc[v]
                    .iter()
                    .filter(|&&k| {
                        !self.used[k] && {
                            let w = self.g.edges()[k].other(VertexId(v)).unwrap();
                            self.need[w.0] > 0
                        }
                    })
                    .count();
                free >= n as usize
            }
        })
    }

    fn run<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let Some(v) = self.need.iter().position(|&n| n > 0) else {
            return visit(&self.chosen);
        };
        if !self.locally_feasible() {
            return ControlFlow::Continue(());
        }
        for i in 0..self.inc[v].len() {
            let k = self.inc[v][i];
            if self.used[k] || self.last_pick[v].is_some_and(|p| k <= p) {
                continue;
            }
            let w = self.g.edges()[k].other(VertexId(v)).unwrap().0;
            if self.need[w] == 0 {
                continue;
            }
            let prev = self.last_pick[v];
            self.used[k] = true;
            self.need[v] -= 1;
            self.need[w] -= 1;
            self.last_pick[v] = Some(k);
            self.chosen.push(k);

            let flow = self.run(visit);

            self.chosen.pop();
            self.last_pick[v] = prev;
            self.need[w] += 1;
            self.need[v] += 1;
            self.used[k] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Visit every cover of `g` (no limit checks); stop early on `Break`.
pub(crate) fn for_each_cover<F>(g: &ExperimentGraph, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let mut search = CoverSearch::new(g);
    if search.feasible_parity() {
        let _ = search.run(&mut visit);
    }
}

/// All perfect matchings (coincidence covers when `g` has measured
/// vertices), sorted lexicographically by edge ids.
///
/// ```
/// use pathgraph::{enumerate_pm, ExperimentGraph, Limits};
/// let k4 = ExperimentGraph::complete(4);
/// assert_eq!(enumerate_pm(&k4, &Limits::default()).unwrap().len(), 3);
/// ```
pub fn enumerate_pm(g: &ExperimentGraph, limits: &Limits) -> Result<Vec<PerfectMatching>> {
    limits.check(g)?;
    let mut out = Vec::new();
    for_each_cover(g, |edges| {
        out.push(PerfectMatching::from_indices(g, edges.to_vec()));
        ControlFlow::Continue(())
    });
    out.sort();
    Ok(out)
}

/// Number of perfect matchings without materialising them.
pub fn count_pm(g: &ExperimentGraph, limits: &Limits) -> Result<u64> {
    limits.check(g)?;
    let mut n = 0u64;
    for_each_cover(g, |_| {
        n += 1;
        ControlFlow::Continue(())
    });
    Ok(n)
}

/// Some perfect matching, if one exists.
pub fn find_pm(g: &ExperimentGraph) -> Option<PerfectMatching> {
    let mut found = None;
    for_each_cover(g, |edges| {
        found = Some(PerfectMatching::from_indices(g, edges.to_vec()));
        ControlFlow::Break(())
    });
    found
}

/// Number of perfect matchings of the complete graph K_{2n}: (2n)!/(n! 2^n),
/// i.e. the double factorial (2n-1)!!. Returns 1 for `n = 0`.
pub fn count_pm_formula(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * (2 * k - 1))
}

/// Largest set of pairwise edge-disjoint perfect matchings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointMatchings {
    pub d: usize,
    pub witness: Vec<PerfectMatching>,
}

/// Maximum number of pairwise edge-disjoint perfect matchings, with the
/// lexicographically first witness attaining it.
pub fn max_disjoint_pms(g: &ExperimentGraph, limits: &Limits) -> Result<DisjointMatchings> {
    let pms = enumerate_pm(g, limits)?;
    let chosen = max_disjoint_subset(g, &pms);
    Ok(DisjointMatchings {
        d: chosen.len(),
        witness: chosen.into_iter().map(|i| pms[i].clone()).collect(),
    })
}

fn max_disjoint_subset(g: &ExperimentGraph, pms: &[PerfectMatching]) -> Vec<usize> {
    let m = pms.len();
    if m == 0 {
        return Vec::new();
    }
    let masks: Vec<Bits> = pms.iter().map(|p| p.bits(g.edge_count())).collect();
    let compat: Vec<Bits> = (0..m)
        .map(|i| {
            let mut b = Bits::new(m);
            for j in i + 1..m {
                if !masks[i].intersects(&masks[j]) {
                    b.insert(j);
                }
            }
            b
        })
        .collect();
    // Each matching uses one edge at every vertex, so no vertex can carry
    // more disjoint matchings than its degree (half of it when measured).
    let ceiling = g
        .vertex_ids()
        .map(|v| g.degree(v) / if g.is_measured(v) { 2 } else { 1 })
        .min()
        .unwrap_or(m)
        .min(m);

    let mut best = Vec::new();
    let mut chosen = Vec::new();
    clique(&compat, Bits::full(m), &mut chosen, &mut best, ceiling);
    best
}

fn clique(
    compat: &[Bits],
    mut candidates: Bits,
    chosen: &mut Vec<usize>,
    best: &mut Vec<usize>,
    ceiling: usize,
) -> bool {
    if chosen.len() > best.len() {
        *best = chosen.clone();
        if best.len() == ceiling {
            return true;
        }
    }
    while let Some(i) = candidates.first() {
        if chosen.len() + candidates.count() <= best.len() {
            break;
        }
        chosen.push(i);
        let next = candidates.intersection(&compat[i]);
        if clique(compat, next, chosen, best, ceiling) {
            return true;
        }
        chosen.pop();
        candidates.remove(i);
    }
    false
}

/// GHZ dimension realised by `g`: the number of perfect matchings when they
/// are all pairwise edge-disjoint (every term then comes from its own
/// layer), `None` when two matchings share a crystal.
pub fn ghz_dimension(g: &ExperimentGraph, limits: &Limits) -> Result<Option<usize>> {
    let pms = enumerate_pm(g, limits)?;
    Ok(pairwise_disjoint(&pms).then_some(pms.len()))
}

fn pairwise_disjoint(pms: &[PerfectMatching]) -> bool {
    pms.iter()
        .enumerate()
        .all(|(i, a)| pms[i + 1..].iter().all(|b| a.is_disjoint(b)))
}

/// Largest GHZ dimension reachable with `n`-photon simple graphs: 3 for four
/// photons, 2 for every larger even count.
pub fn ghz_dimension_bound(n: usize) -> Result<usize> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::domain(format!(
            "photon count must be even and at least 4, got {n}"
        )));
    }
    Ok(if n == 4 { 3 } else { 2 })
}

/// Result of scanning every simple subgraph of K_n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GhzScan {
    pub vertices: usize,
    pub graphs_scanned: u64,
    /// Largest GHZ dimension over all subgraphs.
    pub max_dimension: usize,
    /// Pair bitmask (see [`ExperimentGraph::from_pair_mask`]) of the first
    /// subgraph attaining it.
    pub witness_mask: u64,
}

/// Exhaustively evaluate [`ghz_dimension`] over all 2^(n(n-1)/2) simple
/// graphs on `n` vertices. Work is split over the rayon pool; the result
/// (maximum, then smallest mask) does not depend on scheduling.
pub fn scan_ghz_dimension(n: usize, limits: &Limits) -> Result<GhzScan> {
    if n > limits.max_scan_vertices {
        return Err(Error::ScaleLimit {
            what: "scan vertex count",
            actual: n,
            limit: limits.max_scan_vertices,
        });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if pairs >= 63 {
        return Err(Error::ScaleLimit {
            what: "scan pair count",
            actual: pairs,
            limit: 62,
        });
    }
    let total = 1u64 << pairs;
    let (max_dimension, witness_mask) = (0..total)
        .into_par_iter()
        .map(|mask| {
            let g = ExperimentGraph::from_pair_mask(n, mask);
            let mut pms = Vec::new();
            for_each_cover(&g, |edges| {
                pms.push(PerfectMatching::from_indices(&g, edges.to_vec()));
                ControlFlow::Continue(())
            });
            let d = if pairwise_disjoint(&pms) { pms.len() } else { 0 };
            (d, mask)
        })
        .reduce(
            || (0, u64::MAX),
            |a, b| {
                if a.0 != b.0 {
                    a.max(b)
                } else {
                    a.min(b)
                }
            },
        );
    Ok(GhzScan {
        vertices: n,
        graphs_scanned: total,
        max_dimension,
        witness_mask: if witness_mask == u64::MAX { 0 } else { witness_mask },
    })
}

/// A partition of all edges into perfect matchings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Factorization {
    pub factors: Vec<PerfectMatching>,
}

/// All 1-factorizations of a regular graph, as unordered partitions. Factors
/// are listed by their smallest edge; the list is sorted.
pub fn enumerate_factorizations(
    g: &ExperimentGraph,
    limits: &Limits,
) -> Result<Vec<Factorization>> {
    if g.has_measured() {
        return Err(Error::domain(
            "1-factorizations are defined for graphs without measured vertices",
        ));
    }
    let degrees: Vec<usize> = g.vertex_ids().map(|v| g.degree(v)).collect();
    if degrees.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::domain("graph is not regular"));
    }
    let pms = enumerate_pm(g, limits)?;
    let m = g.edge_count();
    let masks: Vec<Bits> = pms.iter().map(|p| p.bits(m)).collect();
    let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, p) in pms.iter().enumerate() {
        for &k in p.edge_indices() {
            by_edge[k].push(i);
        }
    }

    let mut out = Vec::new();
    let mut chosen = Vec::new();
    exact_cover(&masks, &by_edge, Bits::full(m), &mut chosen, &mut out);
    let mut result: Vec<Factorization> = out
        .into_iter()
        .map(|idx| Factorization {
            factors: idx.into_iter().map(|i| pms[i].clone()).collect(),
        })
        .collect();
    result.sort();
    Ok(result)
}

fn exact_cover(
    masks: &[Bits],
    by_edge: &[Vec<usize>],
    uncovered: Bits,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some(edge) = uncovered.first() else {
        out.push(chosen.clone());
        return;
    };
    for &i in &by_edge[edge] {
        // A matching fits when all of its edges are still uncovered.
        if masks[i].intersection(&uncovered) != masks[i] {
            continue;
        }
        let mut rest = uncovered.clone();
        rest.difference_with(&masks[i]);
        chosen.push(i);
        exact_cover(masks, by_edge, rest, chosen, out);
        chosen.pop();
    }
}

/// Perfect matchings split into those equal to a full layer and the
/// cross-layer "Maverick" matchings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerReport {
    pub layer_matchings: Vec<PerfectMatching>,
    pub maverick_matchings: Vec<PerfectMatching>,
}

/// Classify every perfect matching against the edges' layer tags. Every
/// edge must be tagged and each layer must itself be a perfect matching.
pub fn classify_layers(g: &ExperimentGraph, limits: &Limits) -> Result<LayerReport> {
    let mut layers: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (k, e) in g.edges().iter().enumerate() {
        let layer = e
            .layer
            .ok_or_else(|| Error::domain(format!("edge `{}` has no layer tag", e.id)))?;
        layers.entry(layer).or_default().push(k);
    }
    for (layer, edges) in &layers {
        if !is_cover(g, edges) {
            return Err(Error::domain(format!(
                "layer {layer} is not a perfect matching"
            )));
        }
    }
    let (layer_matchings, maverick_matchings) = enumerate_pm(g, limits)?
        .into_iter()
        .partition(|pm| layers.values().any(|edges| edges == pm.edge_indices()));
    Ok(LayerReport {
        layer_matchings,
        maverick_matchings,
    })
}
