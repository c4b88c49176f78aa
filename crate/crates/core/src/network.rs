//! Random quantum networks: Erdős–Rényi ensembles and coincidence amplitudes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::ExperimentGraph;
use crate::matching::{count_pm, Limits};
use crate::state::{state_from_graph, QuantumState};

/// G(n, p) with unit-amplitude, mode-0 crystals; see [`ExperimentGraph::random`].
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<ExperimentGraph> {
    ExperimentGraph::random(n, p, seed)
}

/// Perfect-matching statistics of one G(n, p) ensemble.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub n: usize,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    /// Fraction of sampled graphs with at least one perfect matching.
    pub pm_exists_fraction: f64,
    /// Perfect-matching count mapped to the number of graphs with that count.
    pub pm_count_histogram: BTreeMap<u64, u64>,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of trial `index` under the ensemble seed `seed`.
///
/// Every probability in a scan reuses the same trial seeds, so trial `i`
/// draws the same uniform numbers at each `p` and its graphs grow
/// monotonically with `p`.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

/// Sample `trials` graphs for each probability and report matching
/// statistics. Trials run in parallel; results do not depend on scheduling.
pub fn ensemble_scan(
    n: usize,
    p_values: &[f64],
    trials: u64,
    seed: u64,
    limits: &Limits,
) -> Result<Vec<EnsembleReport>> {
    if trials == 0 {
        return Err(Error::domain("at least one trial is required"));
    }
    if n > limits.max_vertices {
        return Err(Error::ScaleLimit {
            what: "vertex count",
            actual: n,
            limit: limits.max_vertices,
        });
    }
    let unbounded = Limits {
        max_edges: usize::MAX,
        ..*limits
    };
    p_values
        .iter()
        .map(|&p| {
            let counts: Vec<u64> = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let g = ExperimentGraph::random(n, p, trial_seed(seed, t))?;
                    count_pm(&g, &unbounded)
                })
                .collect::<Result<_>>()?;
            let mut histogram = BTreeMap::new();
            for &c in &counts {
                *histogram.entry(c).or_insert(0) += 1;
            }
            let hits = counts.iter().filter(|&&c| c > 0).count();
            Ok(EnsembleReport {
                n,
                p,
                trials,
                seed,
                pm_exists_fraction: hits as f64 / trials as f64,
                pm_count_histogram: histogram,
            })
        })
        .collect()
}

/// CSV with columns `p,fraction,count,frequency`, one row per histogram bin.
pub fn ensemble_csv(reports: &[EnsembleReport]) -> String {
    let mut out = String::from("p,fraction,count,frequency\n");
    for r in reports {
        for (count, freq) in &r.pm_count_histogram {
            let _ = writeln!(out, "{},{},{},{}", r.p, r.pm_exists_fraction, count, freq);
        }
    }
    out
}

/// Lowest-order coincidence amplitudes for pair-creation probability `p`.
///
/// Every crystal of a matching contributes one pair at order `p`, so each
/// term of the unnormalized state is multiplied by `p^m`, `m` the number of
/// crystals per coincidence (half the vertex count without measured paths).
pub fn network_amplitude(g: &ExperimentGraph, p: f64, limits: &Limits) -> Result<QuantumState> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::domain(format!("probability must lie in (0, 1], got {p}")));
    }
    let photons = g.vertex_count() + g.measured().count();
    if photons % 2 == 1 {
        return Err(Error::domain(format!(
            "odd number of paths ({}) has no coincidence",
            g.vertex_count()
        )));
    }
    let order = (photons / 2) as i32;
    Ok(state_from_graph(g, false, limits)?.scaled(Complex64::new(p.powi(order), 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeSpec, GraphBuilder};
    use crate::state::Ket;

    #[test]
    fn endpoints_are_exact() {
        let l = Limits::default();
        let r = ensemble_scan(6, &[0.0, 1.0], 20, 3, &l).unwrap();
        assert_eq!(r[0].pm_exists_fraction, 0.0);
        assert_eq!(r[0].pm_count_histogram, BTreeMap::from([(0, 20)]));
        assert_eq!(r[1].pm_exists_fraction, 1.0);
        assert_eq!(r[1].pm_count_histogram, BTreeMap::from([(15, 20)]));
    }

    #[test]
    fn deterministic_reports() {
        let l = Limits::default();
        let a = ensemble_scan(6, &[0.3, 0.6], 200, 11, &l).unwrap();
        let b = ensemble_scan(6, &[0.3, 0.6], 200, 11, &l).unwrap();
        assert_eq!(ensemble_csv(&a), ensemble_csv(&b));
        assert_eq!(a, b);
        // Coupled sampling: a denser ensemble never loses matchable graphs.
        assert!(a[1].pm_exists_fraction >= a[0].pm_exists_fraction);
    }

    #[test]
    fn zero_trials_is_an_error() {
        assert!(ensemble_scan(4, &[0.5], 0, 0, &Limits::default()).is_err());
    }

    #[test]
    fn single_edge_amplitude_is_p() {
        let g = ExperimentGraph::complete(2);
        let s = network_amplitude(&g, 0.1, &Limits::default()).unwrap();
        assert!((s.amplitude(&Ket::from([0, 0])) - Complex64::new(0.1, 0.0)).norm() < 1e-12);
        assert!(network_amplitude(&ExperimentGraph::complete(3), 0.1, &Limits::default()).is_err());
        assert!(network_amplitude(&g, 0.0, &Limits::default()).is_err());
    }

    #[test]
    fn frustrated_pair_vanishes() {
        let g = GraphBuilder::new(["a", "b"])
            .edge(EdgeSpec::new("a", "b"))
            .edge(EdgeSpec::new("a", "b").phase(std::f64::consts::PI))
            .build()
            .unwrap();
        for p in [0.01, 0.5, 1.0] {
            assert!(network_amplitude(&g, p, &Limits::default()).unwrap().is_empty());
        }
    }
}
