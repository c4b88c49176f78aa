//! Post-selected multiphoton states.
//!
//! Every crystal set that fires into each path exactly once (a perfect
//! matching) produces one term of the post-selected state; the term's ket
//! reads off the mode each edge assigns to each path and its amplitude is the
//! product of the edge amplitudes. Because the matchings are
//! indistinguishable, terms with equal kets add coherently. That single rule
//! covers GHZ states, the cross-layer "Maverick" terms, frustrated
//! (cancelling) pair generation, and multigraph constructions.
//!
//! Measured vertices (left by [`ExperimentGraph::merge`]) model a
//! high-dimensional Bell-state measurement projecting onto `Σ_i |i,i⟩`: a
//! cover contributes only when both of its edges at the measured vertex carry
//! the same mode, and measured vertices are dropped from the ket.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::graph::{default_vertex_names, EdgeSpec, ExperimentGraph, GraphBuilder};
use crate::io::json_error;
use crate::matching::{for_each_cover, Limits};

/// Amplitudes at or below this magnitude are dropped; amplitudes closer than
/// this compare equal.
pub const AMPLITUDE_TOLERANCE: f64 = 1e-9;

/// Mode numbers of the detected photons, in vertex declaration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ket(pub Vec<u32>);

impl Ket {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<const N: usize> From<[u32; N]> for Ket {
    fn from(modes: [u32; N]) -> Self {
        Ket(modes.to_vec())
    }
}

impl From<Vec<u32>> for Ket {
    fn from(modes: Vec<u32>) -> Self {
        Ket(modes)
    }
}

impl fmt::Display for Ket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("⟩")
    }
}

/// Superposition of kets with complex amplitudes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QuantumState {
    terms: BTreeMap<Ket, Complex64>,
    normalized: bool,
}

impl QuantumState {
    /// Sum the given terms (equal kets add), dropping amplitudes that cancel.
    pub fn from_terms<I, K>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, Complex64)>,
        K: Into<Ket>,
    {
        let mut map: BTreeMap<Ket, Complex64> = BTreeMap::new();
        let mut len = None;
        for (ket, amp) in terms {
            let ket = ket.into();
            if *len.get_or_insert(ket.len()) != ket.len() {
                return Err(Error::domain(format!(
                    "ket {ket} has length {}, expected {}",
                    ket.len(),
                    len.unwrap()
                )));
            }
            if !(amp.re.is_finite() && amp.im.is_finite()) {
                return Err(Error::domain(format!("amplitude of {ket} is not finite")));
            }
            *map.entry(ket).or_default() += amp;
        }
        Ok(QuantumState::pruned(map))
    }

    /// Equal-weight normalized superposition of the given kets.
    pub fn uniform<I, K>(kets: I) -> Result<Self>
    where
        I: IntoIterator<Item = K>,
        K: Into<Ket>,
    {
        QuantumState::from_terms(kets.into_iter().map(|k| (k, Complex64::new(1.0, 0.0))))?
            .normalized()
    }

    fn pruned(mut terms: BTreeMap<Ket, Complex64>) -> Self {
        terms.retain(|_, a| a.norm() > AMPLITUDE_TOLERANCE);
        QuantumState {
            terms,
            normalized: false,
        }
    }

    pub fn terms(&self) -> &BTreeMap<Ket, Complex64> {
        &self.terms
    }

    pub fn amplitude(&self, ket: &Ket) -> Complex64 {
        self.terms.get(ket).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn ket_len(&self) -> Option<usize> {
        self.terms.keys().next().map(Ket::len)
    }

    /// Total post-selected intensity `Σ |amplitude|²`.
    pub fn intensity(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, a| acc + a.norm_sqr())
    }

    /// Rescale to unit norm. An empty state cannot be normalized.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.intensity().sqrt();
        if self.terms.is_empty() || norm <= AMPLITUDE_TOLERANCE {
            return Err(Error::FullyFrustrated);
        }
        let mut s = self.scaled(Complex64::new(1.0 / norm, 0.0));
        s.normalized = true;
        Ok(s)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut s = QuantumState::pruned(
            self.terms
                .iter()
                .map(|(k, &a)| (k.clone(), a * factor))
                .collect(),
        );
        s.normalized = self.normalized && (factor.norm() - 1.0).abs() <= AMPLITUDE_TOLERANCE;
        s
    }

    /// Global phase fixed so the first term (in ket order) is real positive.
    pub fn with_canonical_phase(&self) -> Self {
        match self.terms.values().next() {
            Some(first) => self.scaled(first.conj() / first.norm()),
            None => self.clone(),
        }
    }

    /// Same kets and amplitudes within `tol`.
    pub fn approx_eq(&self, other: &QuantumState, tol: f64) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(&other.terms)
                .all(|((ka, a), (kb, b))| ka == kb && (a - b).norm() <= tol)
    }

    /// Equality after fixing both global phases.
    pub fn eq_up_to_global_phase(&self, other: &QuantumState, tol: f64) -> bool {
        self.with_canonical_phase()
            .approx_eq(&other.with_canonical_phase(), tol)
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (ket, a)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            if a.im.abs() <= AMPLITUDE_TOLERANCE {
                write!(f, "{:+.6} {ket}", a.re)?;
            } else {
                write!(f, "({:+.6}{:+.6}i) {ket}", a.re, a.im)?;
            }
        }
        Ok(())
    }
}

/// Ket and amplitude of one cover, or `None` when a measured vertex sees
/// two different modes.
fn cover_term(g: &ExperimentGraph, positions: &[Option<usize>], edges: &[usize]) -> Option<(Ket, Complex64)> {
    let ket_len = positions.iter().flatten().count();
    let mut modes = vec![0u32; ket_len];
    let mut seen: Vec<Option<u32>> = vec![None; g.vertex_count()];
    let mut amp = Complex64::new(1.0, 0.0);
    for &k in edges {
        let e = &g.edges()[k];
        amp *= e.amplitude.to_complex();
        for (v, m) in [(e.u, e.mode_u), (e.v, e.mode_v)] {
            match positions[v.0] {
                Some(p) => modes[p] = m,
                None => match seen[v.0] {
                    Some(prev) if prev != m => return None,
                    _ => seen[v.0] = Some(m),
                },
            }
        }
    }
    Some((Ket(modes), amp))
}

/// Ket position of each vertex (`None` for measured vertices).
fn ket_positions(g: &ExperimentGraph) -> Vec<Option<usize>> {
    let mut next = 0;
    g.vertex_ids()
        .map(|v| {
            (!g.is_measured(v)).then(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

fn raw_state(g: &ExperimentGraph) -> QuantumState {
    let positions = ket_positions(g);
    let mut terms: BTreeMap<Ket, Complex64> = BTreeMap::new();
    for_each_cover(g, |edges| {
        if let Some((ket, amp)) = cover_term(g, &positions, edges) {
            *terms.entry(ket).or_default() += amp;
        }
        ControlFlow::Continue(())
    });
    QuantumState::pruned(terms)
}

/// Post-selected state of an experiment: the coherent sum over its perfect
/// matchings (coincidence covers when vertices are measured).
///
/// ```
/// use pathgraph::{state_from_graph, ExperimentGraph, Limits};
/// let s = state_from_graph(&ExperimentGraph::complete(4), false, &Limits::default()).unwrap();
/// // All crystals emit mode 0, so the three matchings add up on one ket.
/// assert_eq!(s.len(), 1);
/// assert!((s.intensity() - 9.0).abs() < 1e-12);
/// ```
pub fn state_from_graph(
    g: &ExperimentGraph,
    normalize: bool,
    limits: &Limits,
) -> Result<QuantumState> {
    limits.check(g)?;
    let s = raw_state(g);
    if normalize {
        s.normalized()
    } else {
        Ok(s)
    }
}

/// GHZ form: all amplitudes of equal magnitude, and any two kets differ at
/// every photon.
pub fn is_ghz_like(s: &QuantumState) -> bool {
    let Some(first) = s.terms.values().next() else {
        return false;
    };
    let mag = first.norm();
    if s.terms
        .values()
        .any(|a| (a.norm() - mag).abs() > AMPLITUDE_TOLERANCE)
    {
        return false;
    }
    let kets: Vec<&Ket> = s.terms.keys().collect();
    kets.iter().enumerate().all(|(i, a)| {
        kets[i + 1..]
            .iter()
            .all(|b| a.0.iter().zip(&b.0).all(|(x, y)| x != y))
    })
}

/// Whether `g` produces `target` (both normalized) up to a global phase.
pub fn verify_target(g: &ExperimentGraph, target: &QuantumState, limits: &Limits) -> Result<bool> {
    let Ok(target) = target.normalized() else {
        return Ok(false);
    };
    match state_from_graph(g, true, limits) {
        Ok(s) => Ok(s.eq_up_to_global_phase(&target, AMPLITUDE_TOLERANCE)),
        Err(Error::FullyFrustrated) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Intensity for one phase setting of the scanned crystal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrustrationPoint {
    pub phase: f64,
    pub intensity: f64,
}

/// Sweep one crystal's phase and report the unnormalized post-selected
/// intensity at each setting.
pub fn frustration_scan(
    g: &ExperimentGraph,
    edge_id: &str,
    phases: &[f64],
    limits: &Limits,
) -> Result<Vec<FrustrationPoint>> {
    if g.edge(edge_id).is_none() {
        return Err(Error::UnknownEdge(edge_id.to_string()));
    }
    limits.check(g)?;
    phases
        .iter()
        .map(|&phase| {
            let shifted = g.with_edge_phase(edge_id, phase)?;
            Ok(FrustrationPoint {
                phase,
                intensity: raw_state(&shifted).intensity(),
            })
        })
        .collect()
}

/// Bounds for [`search_graph_for_state`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_edges: usize,
    pub max_mode: u32,
    /// Most crystals allowed between one pair of paths.
    pub max_parallel: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_edges: 8,
            max_mode: 3,
            max_parallel: 4,
        }
    }
}

/// Largest photon count the search accepts.
pub const MAX_SEARCH_PHOTONS: usize = 16;

#[derive(Debug, Clone)]
struct Candidate {
    u: usize,
    v: usize,
    mode_u: u32,
    mode_v: u32,
    /// Target kets this crystal could contribute to.
    kets: Bits,
}

struct StateSearch<'a> {
    n: usize,
    bounds: &'a SearchBounds,
    target: &'a QuantumState,
    kets: Vec<&'a Ket>,
    cands: Vec<Candidate>,
    max_overlap: usize,
    chosen: Vec<usize>,
    pair_use: Vec<usize>,
}

impl StateSearch<'_> {
    fn pair(&self, c: &Candidate) -> usize {
        c.u * self.n + c.v
    }

    fn edges(&self) -> Vec<(usize, usize, u32, u32)> {
        self.chosen
            .iter()
            .map(|&t| {
                let c = &self.cands[t];
                (c.u, c.v, c.mode_u, c.mode_v)
            })
            .collect()
    }

    /// Every matching of the chosen crystals yields a target ket.
    fn terms_in_support(&self) -> bool {
        let edges = self.edges();
        let mut ok = true;
        let _ = raw_matchings(self.n, &edges, &mut |modes| {
            if self.kets.binary_search_by(|k| k.0.as_slice().cmp(modes)).is_err() {
                ok = false;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        ok
    }

    /// Every target ket can still be produced with `remaining` more crystals
    /// drawn from candidates `start..`.
    fn completable(&self, start: usize, remaining: usize) -> bool {
        let mut uncovered_total = 0usize;
        for (t, _) in self.kets.iter().enumerate() {
            let mut pool: Vec<(usize, usize, u32, u32)> = Vec::new();
            let mut covered = 0u32;
            for &c in &self.chosen {
                let c = &self.cands[c];
                if c.kets.contains(t) {
                    covered |= 1 << c.u | 1 << c.v;
                    pool.push((c.u, c.v, c.mode_u, c.mode_v));
                }
            }
            let uncovered = self.n - covered.count_ones() as usize;
            if uncovered.div_ceil(2) > remaining {
                return false;
            }
            uncovered_total += uncovered;
            if remaining > 0 {
                pool.extend(
                    self.cands[start..]
                        .iter()
                        .filter(|c| c.kets.contains(t))
                        .map(|c| (c.u, c.v, c.mode_u, c.mode_v)),
                );
            }
            let mut found = false;
            let _ = raw_matchings(self.n, &pool, &mut |_| {
                found = true;
                ControlFlow::Break(())
            });
            if !found {
                return false;
            }
        }
        // A new crystal reduces the total uncovered count by at most twice
        // the number of kets it is compatible with.
        uncovered_total.div_ceil(2 * self.max_overlap.max(1)) <= remaining
    }

    fn matches_target(&self) -> bool {
        let edges = self.edges();
        let mut terms: BTreeMap<Ket, Complex64> = BTreeMap::new();
        let _ = raw_matchings(self.n, &edges, &mut |modes| {
            *terms.entry(Ket(modes.to_vec())).or_default() += Complex64::new(1.0, 0.0);
            ControlFlow::Continue(())
        });
        QuantumState::pruned(terms)
            .normalized()
            .is_ok_and(|s| s.eq_up_to_global_phase(self.target, AMPLITUDE_TOLERANCE))
    }

    fn dfs(&mut self, start: usize, remaining: usize) -> bool {
        if remaining == 0 {
            return self.matches_target();
        }
        if !self.completable(start, remaining) {
            return false;
        }
        for t in start..self.cands.len() {
            let pair = self.pair(&self.cands[t]);
            if self.pair_use[pair] >= self.bounds.max_parallel {
                continue;
            }
            self.chosen.push(t);
            self.pair_use[pair] += 1;
            if self.terms_in_support() && self.dfs(t, remaining - 1) {
                return true;
            }
            self.pair_use[pair] -= 1;
            self.chosen.pop();
        }
        false
    }
}

/// Perfect matchings of a small raw multigraph, reported by their ket.
fn raw_matchings<F>(n: usize, edges: &[(usize, usize, u32, u32)], visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[u32]) -> ControlFlow<()>,
{
    fn rec<F>(
        n: usize,
        edges: &[(usize, usize, u32, u32)],
        covered: u32,
        modes: &mut [u32],
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[u32]) -> ControlFlow<()>,
    {
        let v = (!covered).trailing_zeros() as usize;
        if v >= n {
            return visit(modes);
        }
        for &(a, b, ma, mb) in edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if covered >> w & 1 == 1 {
                continue;
            }
            modes[a] = ma;
            modes[b] = mb;
            rec(n, edges, covered | 1 << a | 1 << b, modes, visit)?;
        }
        ControlFlow::Continue(())
    }
    if n % 2 == 1 {
        return ControlFlow::Continue(());
    }
    let mut modes = vec![0u32; n];
    rec(n, edges, 0, &mut modes, visit)
}

/// Search multigraphs with unit-amplitude crystals for one whose normalized
/// state equals `target` up to global phase.
///
/// Graphs are tried by increasing crystal count, and within one count as
/// multisets of candidate crystals `(u, v, mode_u, mode_v)` in lexicographic
/// order, so the first hit is deterministic and uses as few crystals as
/// possible. Only crystals whose modes agree with at least one target ket are
/// candidates (any other crystal lies in no useful matching). With unit
/// amplitudes terms never cancel, so a partial graph producing a ket outside
/// the target can be discarded together with all its extensions.
pub fn search_graph_for_state(
    target: &QuantumState,
    bounds: &SearchBounds,
) -> Result<Option<ExperimentGraph>> {
    let Ok(target) = target.normalized() else {
        return Ok(None);
    };
    let n = target.ket_len().unwrap_or(0);
    if n > MAX_SEARCH_PHOTONS {
        return Err(Error::ScaleLimit {
            what: "photon count",
            actual: n,
            limit: MAX_SEARCH_PHOTONS,
        });
    }
    let kets: Vec<&Ket> = target.terms.keys().collect();
    let mut cands = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            for mode_u in 0..=bounds.max_mode {
                for mode_v in 0..=bounds.max_mode {
                    let mut compat = Bits::new(kets.len());
                    for (t, k) in kets.iter().enumerate() {
                        if k.0[u] == mode_u && k.0[v] == mode_v {
                            compat.insert(t);
                        }
                    }
                    if !compat.is_empty() {
                        cands.push(Candidate {
                            u,
                            v,
                            mode_u,
                            mode_v,
                            kets: compat,
                        });
                    }
                }
            }
        }
    }
    let max_overlap = cands.iter().map(|c| c.kets.count()).max().unwrap_or(1);

    for size in 0..=bounds.max_edges {
        let mut search = StateSearch {
            n,
            bounds,
            target: &target,
            kets: kets.clone(),
            cands: cands.clone(),
            max_overlap,
            chosen: Vec::new(),
            pair_use: vec![0; n * n],
        };
        if search.dfs(0, size) {
            let names = default_vertex_names(n);
            let specs = search.chosen.iter().enumerate().map(|(k, &t)| {
                let c = &search.cands[t];
                EdgeSpec::new(names[c.u].clone(), names[c.v].clone())
                    .id(format!("e{k}"))
                    .modes(c.mode_u, c.mode_v)
            });
            return GraphBuilder::new(names.clone()).edges(specs).build().map(Some);
        }
    }
    Ok(None)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    modes: Vec<i64>,
    #[serde(default = "one")]
    amp_mag: f64,
    #[serde(default)]
    amp_phase_rad: f64,
}

fn one() -> f64 {
    1.0
}

/// Parse a state document: a JSON list of
/// `{"modes": [..], "amp_mag": r, "amp_phase_rad": phi}`. Repeated kets add.
pub fn parse_state(text: &str) -> Result<QuantumState> {
    let docs: Vec<TermDoc> = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    let mut terms = Vec::with_capacity(docs.len());
    for (i, t) in docs.into_iter().enumerate() {
        let mut modes = Vec::with_capacity(t.modes.len());
        for (j, &m) in t.modes.iter().enumerate() {
            modes.push(u32::try_from(m).map_err(|_| {
                Error::parse(format!("[{i}].modes[{j}]"), format!("invalid mode {m}"))
            })?);
        }
        if !(t.amp_mag.is_finite() && t.amp_phase_rad.is_finite()) {
            return Err(Error::parse(format!("[{i}]"), "amplitude must be finite"));
        }
        terms.push((Ket(modes), Complex64::from_polar(t.amp_mag, t.amp_phase_rad)));
    }
    let mut s = QuantumState::from_terms(terms)?;
    s.normalized = !s.is_empty() && (s.intensity() - 1.0).abs() <= AMPLITUDE_TOLERANCE;
    Ok(s)
}

/// Serialize a state as a JSON list of terms in ket order.
pub fn serialize_state(s: &QuantumState) -> String {
    let docs: Vec<TermDoc> = s
        .terms
        .iter()
        .map(|(k, a)| TermDoc {
            modes: k.0.iter().map(|&m| m.into()).collect(),
            amp_mag: a.norm(),
            amp_phase_rad: a.arg(),
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&docs).expect("state document serializes");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn double_edge(phase: f64) -> ExperimentGraph {
        GraphBuilder::new(["a", "b"])
            .edge(EdgeSpec::new("a", "b").id("I"))
            .edge(EdgeSpec::new("a", "b").id("II").phase(phase))
            .build()
            .unwrap()
    }

    #[test]
    fn ket_display() {
        assert_eq!(Ket::from([1, 2, 1, 2, 0, 0]).to_string(), "|1,2,1,2,0,0⟩");
    }

    #[test]
    fn destructive_double_edge_has_no_terms() {
        let s = state_from_graph(&double_edge(PI), false, &Limits::default()).unwrap();
        assert!(s.is_empty());
        let err = state_from_graph(&double_edge(PI), true, &Limits::default()).unwrap_err();
        assert_eq!(err, Error::FullyFrustrated);
    }

    #[test]
    fn normalization() {
        let s = QuantumState::from_terms([
            (Ket::from([0, 0]), Complex64::new(3.0, 0.0)),
            (Ket::from([1, 1]), Complex64::new(0.0, 4.0)),
        ])
        .unwrap()
        .normalized()
        .unwrap();
        assert!(s.is_normalized());
        assert!((s.intensity() - 1.0).abs() < 1e-12);
        assert!((s.amplitude(&Ket::from([0, 0])).re - 0.6).abs() < 1e-12);
    }

    #[test]
    fn from_terms_checks_lengths() {
        let r = QuantumState::from_terms([
            (Ket::from([0]), Complex64::new(1.0, 0.0)),
            (Ket::from([0, 1]), Complex64::new(1.0, 0.0)),
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn ghz_like_checks() {
        let ghz = QuantumState::uniform([[0, 0, 0], [1, 1, 1]]).unwrap();
        assert!(is_ghz_like(&ghz));
        let single = QuantumState::uniform([[0, 1]]).unwrap();
        assert!(is_ghz_like(&single));
        let overlap = QuantumState::uniform([[0, 0], [0, 1]]).unwrap();
        assert!(!is_ghz_like(&overlap));
        let unequal = QuantumState::from_terms([
            (Ket::from([0, 0]), Complex64::new(1.0, 0.0)),
            (Ket::from([1, 1]), Complex64::new(2.0, 0.0)),
        ])
        .unwrap();
        assert!(!is_ghz_like(&unequal));
        assert!(!is_ghz_like(&QuantumState::default()));
    }

    #[test]
    fn global_phase_is_ignored() {
        let g = ExperimentGraph::complete(2);
        let target = QuantumState::from_terms([(Ket::from([0, 0]), Complex64::from_polar(1.0, 1.3))])
            .unwrap();
        assert!(verify_target(&g, &target, &Limits::default()).unwrap());
        let wrong = QuantumState::uniform([[1, 1]]).unwrap();
        assert!(!verify_target(&g, &wrong, &Limits::default()).unwrap());
    }

    #[test]
    fn frustration_points() {
        let g = double_edge(0.0);
        let pts = frustration_scan(&g, "II", &[0.0, PI / 2.0, PI], &Limits::default()).unwrap();
        let got: Vec<f64> = pts.iter().map(|p| p.intensity).collect();
        for (a, b) in got.iter().zip([4.0, 2.0, 0.0]) {
            assert!((a - b).abs() < 1e-9, "{got:?}");
        }
        assert!(matches!(
            frustration_scan(&g, "nope", &[0.0], &Limits::default()),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn single_term_search_finds_one_edge() {
        let target = QuantumState::uniform([[0, 0]]).unwrap();
        let g = search_graph_for_state(&target, &SearchBounds::default())
            .unwrap()
            .unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(verify_target(&g, &target, &Limits::default()).unwrap());
    }

    #[test]
    fn search_rejects_unreachable_amplitudes() {
        // Unit crystals cannot produce a relative minus sign.
        let target = QuantumState::from_terms([
            (Ket::from([0, 0]), Complex64::new(1.0, 0.0)),
            (Ket::from([1, 1]), Complex64::new(-1.0, 0.0)),
        ])
        .unwrap();
        assert_eq!(search_graph_for_state(&target, &SearchBounds::default()).unwrap(), None);
    }

    #[test]
    fn state_document_round_trip() {
        let text = r#"[{"modes": [0, 1], "amp_mag": 0.5, "amp_phase_rad": 0.25},
                       {"modes": [1, 0]}]"#;
        let s = parse_state(text).unwrap();
        assert_eq!(s.len(), 2);
        assert!(!s.is_normalized());
        let back = parse_state(&serialize_state(&s)).unwrap();
        assert!(back.approx_eq(&s, 1e-12));
        assert!(parse_state(r#"[{"modes": [-1]}]"#).is_err());
    }
}
