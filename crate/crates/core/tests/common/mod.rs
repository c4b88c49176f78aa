#![allow(dead_code)]

use std::f64::consts::PI;

use pathgraph::{parse_graph, Amplitude, EdgeSpec, ExperimentGraph, GraphBuilder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> ExperimentGraph {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    parse_graph(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture_text(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Perfect matchings of a simple graph on `n` vertices given as a pair
/// bitmask over (i, j), i < j, in lexicographic order. Pairs the lowest
/// free vertex with every other free vertex; no shared code with the
/// library.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    // pairs (0,1),(0,2),...,(0,n-1),(1,2),...
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

pub fn oracle_pm_count_mask(n: usize, mask: u64) -> u64 {
    fn rec(n: usize, mask: u64, free: u32) -> u64 {
        if free == 0 {
            return 1;
        }
        let i = free.trailing_zeros() as usize;
        let mut total = 0;
        for j in i + 1..n {
            if free >> j & 1 == 1 && mask >> pair_index(n, i, j) & 1 == 1 {
                total += rec(n, mask, free & !(1 << i) & !(1 << j));
            }
        }
        total
    }
    if n % 2 == 1 {
        return 0;
    }
    rec(n, mask, (1u32 << n) - 1)
}

/// Perfect matchings of a multigraph from its adjacency counts, by the same
/// first-free-vertex expansion. Parallel edges multiply.
pub fn oracle_pm_count_adjacency(adj: &[Vec<u32>]) -> u128 {
    fn rec(adj: &[Vec<u32>], free: &mut Vec<bool>) -> u128 {
        let Some(i) = free.iter().position(|&f| f) else {
            return 1;
        };
        free[i] = false;
        let mut total = 0;
        for j in i + 1..adj.len() {
            if free[j] && adj[i][j] > 0 {
                free[j] = false;
                total += adj[i][j] as u128 * rec(adj, free);
                free[j] = true;
            }
        }
        free[i] = true;
        total
    }
    if adj.len() % 2 == 1 {
        return 0;
    }
    rec(adj, &mut vec![true; adj.len()])
}

/// Permanent by the defining sum over permutations.
pub fn oracle_permanent(m: &[Vec<i64>]) -> i128 {
    fn rec(m: &[Vec<i64>], row: usize, used: &mut Vec<bool>) -> i128 {
        if row == m.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..m.len() {
            if !used[c] && m[row][c] != 0 {
                used[c] = true;
                total += m[row][c] as i128 * rec(m, row + 1, used);
                used[c] = false;
            }
        }
        total
    }
    rec(m, 0, &mut vec![false; m.len()])
}

/// Random multigraph with random modes, amplitudes and optional layers.
pub fn random_rich_graph(rng: &mut ChaCha8Rng, max_vertices: usize, max_edges: usize) -> ExperimentGraph {
    let n = rng.gen_range(2..=max_vertices);
    let names = pathgraph::graph::default_vertex_names(n);
    let m = rng.gen_range(0..=max_edges);
    let tagged = rng.gen_bool(0.5);
    let specs: Vec<EdgeSpec> = (0..m)
        .map(|k| {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            let mut spec = EdgeSpec::new(names[u].clone(), names[v].clone())
                .id(format!("x{k}"))
                .modes(rng.gen_range(0..4), rng.gen_range(0..4))
                .amplitude(Amplitude::new(rng.gen_range(0.1..2.0), rng.gen_range(-PI..PI)));
            if tagged {
                spec = spec.layer(rng.gen_range(0..5));
            }
            spec
        })
        .collect();
    let measured: Vec<String> = names
        .iter()
        .filter(|_| rng.gen_bool(0.15))
        .cloned()
        .collect();
    GraphBuilder::new(names)
        .edges(specs)
        .measured(measured)
        .build()
        .unwrap()
}

/// Random simple graph with untagged unit crystals and random modes.
pub fn random_simple_graph(rng: &mut ChaCha8Rng, max_vertices: usize) -> ExperimentGraph {
    let n = rng.gen_range(1..=max_vertices);
    let p = rng.gen_range(0.1..0.9);
    let names = pathgraph::graph::default_vertex_names(n);
    let mut specs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                specs.push(
                    EdgeSpec::new(names[i].clone(), names[j].clone())
                        .modes(rng.gen_range(0..3), rng.gen_range(0..3)),
                );
            }
        }
    }
    GraphBuilder::new(names).edges(specs).build().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
