mod common;

use num_bigint::BigInt;
use num_complex::Complex64;
use pathgraph::counters::{count_pm_via_matrix, hafnian, parse_matrix, permanent, MatrixInput, SquareMatrix};
use pathgraph::{count_pm, EdgeSpec, ExperimentGraph, GraphBuilder, Limits};
use rand::Rng;

use common::*;

fn int_matrix(rows: &[Vec<i64>]) -> SquareMatrix<BigInt> {
    SquareMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
        .unwrap()
}

#[test]
fn hafnian_equals_oracle_on_multigraphs() {
    let mut rng = rng(3);
    for _ in 0..100 {
        let n = 2 * rng.gen_range(1..=5);
        let names = pathgraph::graph::default_vertex_names(n);
        let mut b = GraphBuilder::new(names.clone());
        for _ in 0..rng.gen_range(0..3 * n) {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            b = b.edge(EdgeSpec::new(names[i].clone(), names[j].clone()));
        }
        let g = b.build().unwrap();
        let adj = g.adjacency().rows();
        let want = oracle_pm_count_adjacency(&adj);
        let haf = hafnian(&SquareMatrix::from_adjacency(&g)).unwrap();
        assert_eq!(haf, BigInt::from(want));
        assert_eq!(count_pm(&g, &Limits::default()).unwrap() as u128, want);
    }
}

#[test]
fn block_diagonal_hafnian_factorizes() {
    // haf(A ⊕ B) = haf(A) haf(B)
    let k4 = SquareMatrix::from_adjacency(&ExperimentGraph::complete(4));
    let k6 = SquareMatrix::from_adjacency(&ExperimentGraph::complete(6));
    let block = SquareMatrix::from_fn(10, |i, j| match (i < 4, j < 4) {
        (true, true) => k4.get(i, j).clone(),
        (false, false) => k6.get(i - 4, j - 4).clone(),
        _ => BigInt::from(0),
    });
    assert_eq!(hafnian(&block).unwrap(), BigInt::from(3 * 15));
}

#[test]
fn permanent_equals_permutation_sum() {
    let mut rng = rng(4);
    for _ in 0..100 {
        let k = rng.gen_range(1..=6);
        let rows: Vec<Vec<i64>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        assert_eq!(permanent(&int_matrix(&rows)).unwrap(), BigInt::from(oracle_permanent(&rows)));
    }
}

#[test]
fn small_known_values() {
    assert_eq!(hafnian(&int_matrix(&[vec![0, 1], vec![1, 0]])).unwrap(), BigInt::from(1));
    assert_eq!(hafnian(&int_matrix(&[vec![0, 2], vec![2, 0]])).unwrap(), BigInt::from(2));
    let id: Vec<Vec<i64>> = (0..3).map(|i| (0..3).map(|j| (i == j) as i64).collect()).collect();
    assert_eq!(permanent(&int_matrix(&id)).unwrap(), BigInt::from(1));
    assert_eq!(permanent(&int_matrix(&vec![vec![1; 4]; 4])).unwrap(), BigInt::from(24));
    let k6 = SquareMatrix::from_adjacency(&ExperimentGraph::complete(6));
    assert_eq!(hafnian(&k6).unwrap(), BigInt::from(15));
}

#[test]
fn complex_hafnian_sums_pairings() {
    let m = SquareMatrix::from_fn(4, |i, j| {
        if i == j { Complex64::new(0.0, 0.0) } else { Complex64::new((i + j) as f64, 1.0) }
    });
    // Three pairings of four indices.
    let p = |a: usize, b: usize| *m.get(a, b);
    let want = p(0, 1) * p(2, 3) + p(0, 2) * p(1, 3) + p(0, 3) * p(1, 2);
    assert!((hafnian(&m).unwrap() - want).norm() < 1e-12);
}

#[test]
fn invalid_inputs() {
    assert!(hafnian(&int_matrix(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]])).is_err());
    assert!(hafnian(&int_matrix(&[vec![0, 1], vec![2, 0]])).is_err());
    assert!(hafnian(&int_matrix(&[vec![1, 1], vec![1, 0]])).is_err());
    assert!(SquareMatrix::from_rows(vec![vec![BigInt::from(1)], vec![]]).is_err());
}

#[test]
fn matrix_counts_agree_with_enumeration() {
    let c = count_pm_via_matrix(&ExperimentGraph::complete(6), &Limits::default()).unwrap();
    assert_eq!(c.hafnian, BigInt::from(15));
    assert_eq!(c.permanent, None);
    let c = count_pm_via_matrix(&fixture("hall_violator.json"), &Limits::default()).unwrap();
    assert_eq!(c.hafnian, BigInt::from(0));
    assert_eq!(c.permanent, Some(BigInt::from(0)));
}

#[test]
fn parse_matrix_forms() {
    assert!(matches!(parse_matrix("[[0,1],[1,0]]").unwrap(), MatrixInput::Integer(_)));
    assert!(matches!(parse_matrix("[[0,0.5],[0.5,0]]").unwrap(), MatrixInput::Complex(_)));
    assert!(matches!(parse_matrix("[[[0,0],[1,2]],[[1,2],[0,0]]]").unwrap(), MatrixInput::Complex(_)));
    assert!(parse_matrix("[[0,1]]").is_err());
}
