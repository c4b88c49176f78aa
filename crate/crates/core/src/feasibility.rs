//! Perfect-matching existence with certificates.
//!
//! Both checks return either an explicit matching or a witness that none
//! exists: a Hall violator for bipartite graphs, a Tutte set for general ones.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ExperimentGraph, VertexId};
use crate::matching::{find_pm, Limits, PerfectMatching};

/// Outcome of a matchability check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Feasibility<W> {
    Matching { matching: PerfectMatching },
    Violation { witness: W },
}

impl<W> Feasibility<W> {
    pub fn has_matching(&self) -> bool {
        matches!(self, Feasibility::Matching { .. })
    }

    pub fn matching(&self) -> Option<&PerfectMatching> {
        match self {
            Feasibility::Matching { matching } => Some(matching),
            Feasibility::Violation { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Feasibility::Matching { .. } => None,
            Feasibility::Violation { witness } => Some(witness),
        }
    }
}

/// A subset `W` of one part whose neighbourhood is smaller than itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallWitness {
    pub subset: Vec<String>,
    pub neighborhood: Vec<String>,
}

/// A vertex set `U` whose removal leaves more odd components than `|U|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TutteWitness {
    pub subset: Vec<String>,
    pub odd_components: Vec<Vec<String>>,
}

fn no_measured(g: &ExperimentGraph) -> Result<()> {
    if g.has_measured() {
        return Err(Error::domain(
            "matchability checks apply to graphs without measured vertices",
        ));
    }
    Ok(())
}

fn names(g: &ExperimentGraph, vs: impl IntoIterator<Item = VertexId>) -> Vec<String> {
    vs.into_iter().map(|v| g.name(v).to_string()).collect()
}

/// Augmenting-path matching between the parts of a bipartite graph.
///
/// `parts` pins the two sides; by default they come from
/// [`ExperimentGraph::bipartition`]. When some vertex of the first part
/// cannot be matched, the vertices reached by its failed alternating search
/// form the Hall violator: their neighbourhood is exactly the reached
/// vertices of the second part, one fewer than themselves.
///
/// ```
/// use pathgraph::feasibility::hall_check;
/// use pathgraph::{EdgeSpec, GraphBuilder, VertexId};
/// let g = GraphBuilder::new(["a", "b", "c", "d"])
///     .edge(EdgeSpec::new("a", "b"))
///     .edge(EdgeSpec::new("c", "b"))
///     .build()
///     .unwrap();
/// // `d` is isolated, so pin the parts {a, c} and {b, d}.
/// let (x, y) = ([VertexId(0), VertexId(2)], [VertexId(1), VertexId(3)]);
/// let w = hall_check(&g, Some((&x, &y))).unwrap();
/// let w = w.witness().unwrap();
/// assert_eq!(w.subset, ["a", "c"]);
/// assert_eq!(w.neighborhood, ["b"]);
/// ```
pub fn hall_check(
    g: &ExperimentGraph,
    parts: Option<(&[VertexId], &[VertexId])>,
) -> Result<Feasibility<HallWitness>> {
    no_measured(g)?;
    let (xs, ys) = match parts {
        Some((x, y)) => {
            // Validates that the parts cover everything and every edge crosses.
            g.biadjacency_with_parts(x, y)?;
            (x.to_vec(), y.to_vec())
        }
        None => g.bipartition()?,
    };
    if xs.len() != ys.len() {
        return Err(Error::domain(format!(
            "parts have unequal sizes {} and {}",
            xs.len(),
            ys.len()
        )));
    }

    let n = g.vertex_count();
    let mut col = vec![usize::MAX; n];
    for (i, &y) in ys.iter().enumerate() {
        col[y.0] = i;
    }
    // adj[x] = (column, edge index), lowest edge index first.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); xs.len()];
    let mut row = vec![usize::MAX; n];
    for (i, &x) in xs.iter().enumerate() {
        row[x.0] = i;
    }
    for (k, e) in g.edges().iter().enumerate() {
        let (x, y) = if row[e.u.0] != usize::MAX { (e.u, e.v) } else { (e.v, e.u) };
        adj[row[x.0]].push((col[y.0], k));
    }

    // mate[c] = (row, edge) currently matched to column c.
    let mut mate: Vec<Option<(usize, usize)>> = vec![None; ys.len()];
    for r in 0..xs.len() {
        let mut seen = vec![false; ys.len()];
        if !augment(r, &adj, &mut mate, &mut seen) {
            let mut subset: Vec<VertexId> = vec![xs[r]];
            let mut neighborhood = Vec::new();
            for (c, &s) in seen.iter().enumerate() {
                if s {
                    neighborhood.push(ys[c]);
                    let (r2, _) = mate[c].expect("reached column is matched");
                    subset.push(xs[r2]);
                }
            }
            subset.sort();
            neighborhood.sort();
            return Ok(Feasibility::Violation {
                witness: HallWitness {
                    subset: names(g, subset),
                    neighborhood: names(g, neighborhood),
                },
            });
        }
    }
    let edges = mate.iter().map(|m| m.expect("all columns matched").1).collect();
    Ok(Feasibility::Matching {
        matching: PerfectMatching::from_indices(g, edges),
    })
}

fn augment(
    r: usize,
    adj: &[Vec<(usize, usize)>],
    mate: &mut [Option<(usize, usize)>],
    seen: &mut [bool],
) -> bool {
    for &(c, k) in &adj[r] {
        if seen[c] {
            continue;
        }
        seen[c] = true;
        let free = match mate[c] {
            None => true,
            Some((r2, _)) => augment(r2, adj, mate, seen),
        };
        if free {
            mate[c] = Some((r, k));
            return true;
        }
    }
    false
}

/// Matching by backtracking, or the first Tutte set found when subsets are
/// tried by increasing size and then lexicographically by vertex position.
/// The witness is therefore of minimum size.
///
/// ```
/// use pathgraph::feasibility::tutte_check;
/// use pathgraph::{ExperimentGraph, Limits};
/// let verdict = tutte_check(&ExperimentGraph::complete(4), &Limits::default()).unwrap();
/// assert!(verdict.has_matching());
/// ```
pub fn tutte_check(g: &ExperimentGraph, limits: &Limits) -> Result<Feasibility<TutteWitness>> {
    no_measured(g)?;
    let n = g.vertex_count();
    if n > limits.max_tutte_vertices {
        return Err(Error::ScaleLimit {
            what: "vertex count",
            actual: n,
            limit: limits.max_tutte_vertices,
        });
    }
    if let Some(w) = tutte_violation(g, &BTreeSet::new()) {
        return Ok(Feasibility::Violation { witness: w });
    }
    if let Some(matching) = find_pm(g) {
        return Ok(Feasibility::Matching { matching });
    }
    for size in 1..=n {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let u: BTreeSet<VertexId> = pick.iter().map(|&i| VertexId(i)).collect();
            if let Some(w) = tutte_violation(g, &u) {
                return Ok(Feasibility::Violation { witness: w });
            }
            if !next_combination(&mut pick, n) {
                break;
            }
        }
    }
    unreachable!("Tutte's theorem guarantees a violating set when no matching exists")
}

fn tutte_violation(g: &ExperimentGraph, u: &BTreeSet<VertexId>) -> Option<TutteWitness> {
    let odd: Vec<Vec<VertexId>> = g
        .components_without(u)
        .into_iter()
        .filter(|c| c.len() % 2 == 1)
        .collect();
    (odd.len() > u.len()).then(|| TutteWitness {
        subset: names(g, u.iter().copied()),
        odd_components: odd.into_iter().map(|c| names(g, c)).collect(),
    })
}

/// Advance to the next k-subset of `0..n` in lexicographic order.
fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
