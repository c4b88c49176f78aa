//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime.
//!
//! Runs as a plain binary (`harness = false`) so the report is printed in
//! order; the process exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use pathgraph::compiler::{plan_to_graph, synthesize_setup};
use pathgraph::counters::{hafnian, permanent, SquareMatrix};
use pathgraph::feasibility::{hall_check, tutte_check};
use pathgraph::matching::{
    classify_layers, count_pm_formula, enumerate_factorizations, ghz_dimension,
    scan_ghz_dimension,
};
use pathgraph::network::ensemble_scan;
use pathgraph::state::frustration_scan;
use pathgraph::{
    enumerate_pm, parse_graph, serialize_graph, state_from_graph, ExperimentGraph, Ket, Limits,
    QuantumState,
};
use rand::Rng;

use common::*;

/// Per-amplitude tolerance for state comparisons.
const AMPLITUDE_TOL: f64 = 1e-9;
/// Intensity tolerance for the frustration sweep.
const INTENSITY_TOL: f64 = 1e-9;
/// Width of the statistical band, in standard deviations.
const SIGMA_BAND: f64 = 3.0;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn amplitudes_match(got: &QuantumState, want: &QuantumState) -> Result<(), String> {
    ensure(got.len() == want.len(), || {
        format!("{} terms, expected {}", got.len(), want.len())
    })?;
    for (ket, w) in want.terms() {
        let g = got.amplitude(ket);
        ensure((g - w).norm() <= AMPLITUDE_TOL, || {
            format!("amplitude of {ket} is {g}, expected {w}")
        })?;
    }
    Ok(())
}

fn uniform(kets: &[&[u32]]) -> QuantumState {
    QuantumState::uniform(kets.iter().map(|k| Ket(k.to_vec()))).unwrap()
}

fn k4_ghz() -> Check {
    let g = fixture("k4_ghz.json");
    let pms = enumerate_pm(&g, &Limits::default()).map_err(|e| e.to_string())?;
    ensure(pms.len() == 3, || format!("{} matchings", pms.len()))?;
    let s = state_from_graph(&g, true, &Limits::default()).map_err(|e| e.to_string())?;
    amplitudes_match(&s, &uniform(&[&[0, 0, 0, 0], &[1, 1, 1, 1], &[2, 2, 2, 2]]))?;
    Ok("3 matchings, (|0000⟩+|1111⟩+|2222⟩)/√3".into())
}

fn three_layers_with_maverick() -> Check {
    let g = fixture("six_three_layers.json");
    ensure(g.vertex_count() == 6 && g.edge_count() == 9, || "fixture shape".into())?;
    let pms = enumerate_pm(&g, &Limits::default()).map_err(|e| e.to_string())?;
    ensure(pms.len() == 4, || format!("{} matchings", pms.len()))?;
    let s = state_from_graph(&g, true, &Limits::default()).map_err(|e| e.to_string())?;
    let want = uniform(&[
        &[0, 0, 0, 0, 0, 0],
        &[1, 1, 1, 1, 1, 1],
        &[2, 2, 2, 2, 2, 2],
        &[1, 2, 1, 2, 0, 0],
    ]);
    amplitudes_match(&s, &want)?;
    let r = classify_layers(&g, &Limits::default()).map_err(|e| e.to_string())?;
    ensure(
        r.layer_matchings.len() == 3 && r.maverick_matchings.len() == 1,
        || format!("{} + {}", r.layer_matchings.len(), r.maverick_matchings.len()),
    )?;
    Ok("4 matchings, Maverick |1,2,1,2,0,0⟩, 3 layer + 1 maverick".into())
}

fn complete_graphs() -> Check {
    let limits = Limits::unlimited();
    let mut counts = Vec::new();
    for n in 1..=6u32 {
        let g = ExperimentGraph::complete(2 * n as usize);
        let got = enumerate_pm(&g, &limits).map_err(|e| e.to_string())?.len();
        let formula = count_pm_formula(n);
        ensure(BigUint::from(got) == formula, || {
            format!("K{}: {got} matchings, formula {formula}", 2 * n)
        })?;
        counts.push(got);
    }
    ensure(counts == [1, 3, 15, 105, 945, 10395], || format!("{counts:?}"))?;
    let r = classify_layers(&fixture("k6_five_layers.json"), &Limits::default())
        .map_err(|e| e.to_string())?;
    ensure(
        r.layer_matchings.len() == 5 && r.maverick_matchings.len() == 10,
        || format!("K6 split {} + {}", r.layer_matchings.len(), r.maverick_matchings.len()),
    )?;
    Ok(format!("K2..K12 counts {counts:?}; K6 5 layer + 10 maverick"))
}

fn four_layers() -> Check {
    let g = fixture("six_four_layers.json");
    let r = classify_layers(&g, &Limits::default()).map_err(|e| e.to_string())?;
    let total = r.layer_matchings.len() + r.maverick_matchings.len();
    ensure(
        total == 8 && r.layer_matchings.len() == 4 && r.maverick_matchings.len() == 4,
        || format!("{} + {}", r.layer_matchings.len(), r.maverick_matchings.len()),
    )?;
    Ok("8 matchings, 4 layer + 4 maverick".into())
}

fn ghz_theorem() -> Check {
    // Run the scan on one thread, as the criterion's budget is stated for.
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?;
    let scan = pool
        .install(|| scan_ghz_dimension(6, &Limits::default()))
        .map_err(|e| e.to_string())?;
    ensure(scan.graphs_scanned == 1 << 15, || "wrong scan size".into())?;
    ensure(scan.max_dimension == 2, || {
        format!("max GHZ dimension on 6 vertices is {}", scan.max_dimension)
    })?;
    let k4 = ghz_dimension(&ExperimentGraph::complete(4), &Limits::default())
        .map_err(|e| e.to_string())?;
    ensure(k4 == Some(3), || format!("K4 dimension {k4:?}"))?;
    Ok(format!(
        "{} subgraphs of K6, max dimension 2 (first at mask {:#x}); K4 attains 3",
        scan.graphs_scanned, scan.witness_mask
    ))
}

fn counting_oracles() -> Check {
    let mut rng = rng(6);
    for trial in 0..200 {
        let n = 2 * rng.gen_range(1..=6);
        let g = ExperimentGraph::random(n, rng.gen_range(0.2..0.9), rng.gen()).unwrap();
        let count = enumerate_pm(&g, &Limits::unlimited()).map_err(|e| e.to_string())?.len();
        let haf = hafnian(&SquareMatrix::from_adjacency(&g)).map_err(|e| e.to_string())?;
        ensure(haf == BigInt::from(count), || {
            format!("graph {trial}: hafnian {haf}, enumeration {count}")
        })?;
    }
    for trial in 0..200 {
        let k = rng.gen_range(1..=7);
        let p = rng.gen_range(0.2..0.9);
        let names = pathgraph::graph::default_vertex_names(2 * k);
        let mut b = pathgraph::GraphBuilder::new(names.clone());
        let mut rows = vec![vec![0i64; k]; k];
        for (r, row) in rows.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                if rng.gen_bool(p) {
                    *cell = 1;
                    b = b.edge(pathgraph::EdgeSpec::new(names[r].clone(), names[k + c].clone()));
                }
            }
        }
        let g = b.build().unwrap();
        let count = enumerate_pm(&g, &Limits::unlimited()).map_err(|e| e.to_string())?.len();
        let m = SquareMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
        .map_err(|e| e.to_string())?;
        let per = permanent(&m).map_err(|e| e.to_string())?;
        ensure(per == BigInt::from(count), || {
            format!("bipartite graph {trial}: permanent {per}, enumeration {count}")
        })?;
    }
    Ok("200 hafnians and 200 permanents equal enumeration counts".into())
}

fn matchability() -> Check {
    let limits = Limits::default();
    let mut checked = 0usize;
    for n in 1..=6usize {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            let g = ExperimentGraph::from_pair_mask(n, mask);
            let exists = oracle_pm_count_mask(n, mask) > 0;
            let t = tutte_check(&g, &limits).map_err(|e| e.to_string())?;
            ensure(t.has_matching() == exists, || format!("n={n} mask={mask:#x}"))?;
            checked += 1;
        }
    }
    let mut rng = rng(7);
    for trial in 0..500 {
        let n = rng.gen_range(2..=14);
        let g = ExperimentGraph::random(n, rng.gen_range(0.05..0.5), rng.gen()).unwrap();
        let exists = !enumerate_pm(&g, &Limits::unlimited()).map_err(|e| e.to_string())?.is_empty();
        let t = tutte_check(&g, &limits).map_err(|e| e.to_string())?;
        ensure(t.has_matching() == exists, || format!("random graph {trial}"))?;
        if let Ok(h) = hall_check(&g, None) {
            ensure(h.has_matching() == exists, || format!("random graph {trial} (Hall)"))?;
        }
    }
    let hub = tutte_check(&fixture("triangles_hub.json"), &limits).map_err(|e| e.to_string())?;
    let w = hub.witness().ok_or("hub fixture has a matching")?;
    ensure(w.subset == ["d"] && w.odd_components.len() == 3, || format!("{w:?}"))?;
    Ok(format!(
        "{checked} small graphs + 500 random agree; hub witness U={{d}} with 3 odd components"
    ))
}

fn frustration() -> Check {
    let g = fixture("double_edge.json");
    let phases = [0.0, PI / 2.0, PI];
    let pts = frustration_scan(&g, "II", &phases, &Limits::default()).map_err(|e| e.to_string())?;
    for (pt, want) in pts.iter().zip([4.0, 2.0, 0.0]) {
        let oracle = (Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0, pt.phase)).norm_sqr();
        ensure(
            (pt.intensity - want).abs() <= INTENSITY_TOL && (oracle - want).abs() <= INTENSITY_TOL,
            || format!("phase {}: intensity {}, expected {want}", pt.phase, pt.intensity),
        )?;
    }
    Ok("intensities 4, 2, 0 at phases 0, π/2, π".into())
}

fn entanglement_swapping() -> Check {
    let left = fixture("k4_ghz.json");
    let right = fixture("k4_ghz_efgh.json");
    let merged = left.merge(&right, &[("d", "e")]).map_err(|e| e.to_string())?;
    let s = state_from_graph(&merged, true, &Limits::default()).map_err(|e| e.to_string())?;
    amplitudes_match(
        &s,
        &uniform(&[&[0, 0, 0, 0, 0, 0], &[1, 1, 1, 1, 1, 1], &[2, 2, 2, 2, 2, 2]]),
    )?;
    Ok("6-photon 3-dimensional GHZ after Bell projection on d~e".into())
}

fn factorizations() -> Check {
    let l = Limits::default();
    let k4 = enumerate_factorizations(&ExperimentGraph::complete(4), &l).map_err(|e| e.to_string())?;
    let k6 = enumerate_factorizations(&ExperimentGraph::complete(6), &l).map_err(|e| e.to_string())?;
    ensure(k4.len() == 1 && k6.len() == 6, || format!("K4 {}, K6 {}", k4.len(), k6.len()))?;
    // Independent check: each factorization partitions the edge set.
    for f in &k6 {
        let mut seen = BTreeSet::new();
        for pm in &f.factors {
            for id in pm.edge_ids() {
                ensure(seen.insert(id.clone()), || format!("edge {id} repeated"))?;
            }
        }
        ensure(seen.len() == 15, || "factorization misses edges".into())?;
    }
    Ok("K4 → 1, K6 → 6".into())
}

fn round_trips() -> Check {
    let mut rng = rng(11);
    for trial in 0..1000 {
        let g = random_rich_graph(&mut rng, 12, 20);
        let text = serialize_graph(&g);
        let back = parse_graph(&text).map_err(|e| format!("graph {trial}: {e}"))?;
        ensure(back == g && serialize_graph(&back) == text, || {
            format!("graph {trial} changed on round trip")
        })?;
    }
    for trial in 0..200 {
        let g = random_simple_graph(&mut rng, 10);
        let plan = synthesize_setup(&g).map_err(|e| e.to_string())?;
        for layer in &plan.layers {
            let mut paths = BTreeSet::new();
            for c in &layer.crystals {
                ensure(paths.insert(&c.u) && paths.insert(&c.v), || {
                    format!("graph {trial}: layer {} is not a matching", layer.index)
                })?;
            }
        }
        let back = plan_to_graph(&plan).map_err(|e| e.to_string())?;
        ensure(back.without_layers() == g, || format!("graph {trial} plan round trip"))?;
    }
    Ok("1000 document and 200 plan round trips".into())
}

fn random_networks() -> Check {
    let trials = 10_000u64;
    // Exact probability that G(6, 1/2) has a perfect matching: every one of
    // the 2^15 subgraphs is equally likely.
    let matchable = (0..1u64 << 15).filter(|&m| oracle_pm_count_mask(6, m) > 0).count();
    let exact = matchable as f64 / 32768.0;
    let reports = ensemble_scan(6, &[0.0, 0.5, 1.0], trials, 2024, &Limits::default())
        .map_err(|e| e.to_string())?;
    let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
    let got = reports[1].pm_exists_fraction;
    ensure((got - exact).abs() <= SIGMA_BAND * sigma, || {
        format!("fraction {got}, exact {exact:.5}, σ {sigma:.5}")
    })?;
    ensure(reports[0].pm_exists_fraction == 0.0, || "p=0 fraction".into())?;
    ensure(reports[2].pm_exists_fraction == 1.0, || "p=1 fraction".into())?;
    ensure(
        reports[2].pm_count_histogram.keys().copied().collect::<Vec<_>>() == [15],
        || "p=1 histogram".into(),
    )?;
    Ok(format!(
        "fraction {got:.4} vs exact {exact:.5} (|Δ| = {:.2}σ); endpoints exact",
        (got - exact).abs() / sigma
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 12] = [
        ("K4 GHZ state", k4_ghz, Duration::from_secs(1)),
        ("six paths, three layers", three_layers_with_maverick, Duration::from_secs(1)),
        ("complete graphs", complete_graphs, Duration::from_secs(30)),
        ("six paths, four layers", four_layers, Duration::from_secs(1)),
        ("GHZ dimension bound", ghz_theorem, Duration::from_secs(300)),
        ("hafnian/permanent oracles", counting_oracles, Duration::from_secs(120)),
        ("Hall/Tutte", matchability, Duration::from_secs(180)),
        ("frustration", frustration, Duration::from_secs(1)),
        ("merge and swap", entanglement_swapping, Duration::from_secs(1)),
        ("1-factorizations", factorizations, Duration::from_secs(60)),
        ("round trips", round_trips, Duration::from_secs(60)),
        ("random networks", random_networks, Duration::from_secs(60)),
    ];

    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!(
                "{detail}; over budget ({:.2?} > {budget:.0?})",
                elapsed
            )),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
