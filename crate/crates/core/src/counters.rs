//! Exact hafnian and permanent kernels.
//!
//! The hafnian of a symmetric zero-diagonal matrix sums, over all perfect
//! pairings of its rows, the product of the paired entries; for an adjacency
//! matrix that is exactly the number of perfect matchings, parallel edges
//! included. The permanent of a bipartite graph's biadjacency matrix counts
//! the same thing for bipartite graphs.
//!
//! Integer matrices are evaluated with [`BigInt`] so counts never overflow.
//! Complex matrices use `f64` and are compared with [`COMPLEX_TOLERANCE`].

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::ExperimentGraph;
use crate::io::json_error;
use crate::matching::Limits;

/// Comparison tolerance for complex-valued kernels.
pub const COMPLEX_TOLERANCE: f64 = 1e-9;

/// Largest order accepted by [`hafnian`].
pub const MAX_HAFNIAN_ORDER: usize = 24;
/// Largest order accepted by [`permanent`].
pub const MAX_PERMANENT_ORDER: usize = 20;

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    order: usize,
    entries: Vec<T>,
}

impl<T: Clone> SquareMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let order = rows.len();
        if let Some(i) = rows.iter().position(|r| r.len() != order) {
            return Err(Error::domain(format!(
                "matrix is not square: row {i} has {} entries, expected {order}",
                rows[i].len()
            )));
        }
        Ok(SquareMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.order + j]
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            order: self.order,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.order)
            .map(|i| self.entries[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }
}

impl SquareMatrix<BigInt> {
    pub fn from_adjacency(g: &ExperimentGraph) -> Self {
        let a = g.adjacency();
        SquareMatrix::from_fn(a.order(), |i, j| BigInt::from(a.get(i, j)))
    }
}

/// Ring operations the kernels need.
pub trait Scalar:
    Clone + Zero + One + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + Zero
        + One
        + PartialEq
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Hafnian by expansion along the first remaining row: pair row `i` with
/// each `j`, recurse on the rest. Zero entries prune their branch.
///
/// ```
/// use pathgraph::counters::{hafnian, SquareMatrix};
/// use num_bigint::BigInt;
/// let k4 = SquareMatrix::from_fn(4, |i, j| BigInt::from((i != j) as u8));
/// assert_eq!(hafnian(&k4).unwrap(), BigInt::from(3));
/// ```
pub fn hafnian<T: Scalar>(m: &SquareMatrix<T>) -> Result<T> {
    let n = m.order();
    if n % 2 == 1 {
        return Err(Error::domain(format!("hafnian needs even order, got {n}")));
    }
    if n > MAX_HAFNIAN_ORDER {
        return Err(Error::ScaleLimit {
            what: "hafnian order",
            actual: n,
            limit: MAX_HAFNIAN_ORDER,
        });
    }
    for i in 0..n {
        if !m.get(i, i).is_zero() {
            return Err(Error::domain(format!("diagonal entry ({i},{i}) is nonzero")));
        }
        for j in i + 1..n {
            if m.get(i, j) != m.get(j, i) {
                return Err(Error::domain(format!(
                    "matrix is not symmetric at ({i},{j})"
                )));
            }
        }
    }
    let remaining: Vec<usize> = (0..n).collect();
    Ok(hafnian_rec(m, &remaining))
}

fn hafnian_rec<T: Scalar>(m: &SquareMatrix<T>, remaining: &[usize]) -> T {
    if remaining.is_empty() {
        return T::one();
    }
    let i = remaining[0];
    let mut total = T::zero();
    for pos in 1..remaining.len() {
        let j = remaining[pos];
        let w = m.get(i, j);
        if w.is_zero() {
            continue;
        }
        let mut rest: Vec<usize> = remaining[1..].to_vec();
        rest.remove(pos - 1);
        total = total + w.clone() * hafnian_rec(m, &rest);
    }
    total
}

/// Permanent by Ryser's inclusion-exclusion formula, visiting column
/// subsets in Gray-code order so each step adds or removes one column from
/// the running row sums.
///
/// `perm(A) = (-1)^n Σ_S (-1)^|S| Π_i Σ_{j∈S} a_ij`
pub fn permanent<T: Scalar>(m: &SquareMatrix<T>) -> Result<T> {
    let n = m.order();
    if n > MAX_PERMANENT_ORDER {
        return Err(Error::ScaleLimit {
            what: "permanent order",
            actual: n,
            limit: MAX_PERMANENT_ORDER,
        });
    }
    if n == 0 {
        return Ok(T::one());
    }
    let mut row_sums = vec![T::zero(); n];
    let mut in_set = vec![false; n];
    let mut total = T::zero();
    let mut size = 0usize;
    for step in 1u64..(1u64 << n) {
        let j = step.trailing_zeros() as usize;
        in_set[j] = !in_set[j];
        if in_set[j] {
            size += 1;
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s = s.clone() + m.get(i, j).clone();
            }
        } else {
            size -= 1;
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s = s.clone() - m.get(i, j).clone();
            }
        }
        let prod = row_sums
            .iter()
            .fold(T::one(), |acc, s| acc * s.clone());
        if (n - size) % 2 == 0 {
            total = total + prod;
        } else {
            total = total - prod;
        }
    }
    Ok(total)
}

/// Perfect-matching count by the matrix route.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixCount {
    /// Hafnian of the adjacency matrix.
    #[serde(serialize_with = "decimal")]
    pub hafnian: BigInt,
    /// Permanent of the biadjacency matrix, when the graph is bipartite with
    /// equal parts.
    #[serde(serialize_with = "optional_decimal")]
    pub permanent: Option<BigInt>,
}

// Counts can exceed 64 bits; JSON carries them as decimal strings.
fn decimal<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn optional_decimal<S: serde::Serializer>(
    x: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

/// Count perfect matchings through the hafnian of the adjacency matrix and,
/// for bipartite graphs with equal parts, the permanent of the biadjacency
/// matrix. The two routes must agree.
pub fn count_pm_via_matrix(g: &ExperimentGraph, limits: &Limits) -> Result<MatrixCount> {
    if g.has_measured() {
        return Err(Error::domain(
            "matrix counting covers perfect matchings only; graph has measured vertices",
        ));
    }
    limits.check(g)?;
    let n = g.vertex_count();
    let hafnian = if n % 2 == 1 {
        BigInt::zero()
    } else {
        hafnian(&SquareMatrix::from_adjacency(g))?
    };
    let permanent = match g.biadjacency() {
        Ok(b) if b.is_square() => {
            let m = SquareMatrix::from_rows(
                b.to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect(),
            )?;
            Some(permanent(&m)?)
        }
        _ => None,
    };
    if let Some(p) = &permanent {
        if *p != hafnian {
            return Err(Error::domain(format!(
                "hafnian {hafnian} and permanent {p} disagree"
            )));
        }
    }
    Ok(MatrixCount { hafnian, permanent })
}

/// A matrix read from a file: exact integers, or complex entries.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixInput {
    Integer(SquareMatrix<BigInt>),
    Complex(SquareMatrix<Complex64>),
}

/// Parse a matrix document: a JSON list of rows. Entries are integers
/// (evaluated exactly), or real numbers and `[re, im]` pairs (evaluated in
/// complex floating point).
pub fn parse_matrix(text: &str) -> Result<MatrixInput> {
    let value: Value = serde_json::from_str(text).map_err(|e| json_error(&e))?;
    let rows = value
        .as_array()
        .ok_or_else(|| Error::parse("$", "matrix must be a list of rows"))?;
    let mut cells: Vec<Vec<&Value>> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| Error::parse(format!("[{i}]"), "row must be a list"))?;
        cells.push(row.iter().collect());
    }
    let all_int = cells.iter().flatten().all(|v| v.is_i64() || v.is_u64());
    if all_int {
        let rows = cells
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| match v.as_i64() {
                        Some(x) => BigInt::from(x),
                        None => BigInt::from(v.as_u64().unwrap()),
                    })
                    .collect()
            })
            .collect();
        return SquareMatrix::from_rows(rows).map(MatrixInput::Integer);
    }
    let mut out = Vec::with_capacity(cells.len());
    for (i, r) in cells.iter().enumerate() {
        let mut row = Vec::with_capacity(r.len());
        for (j, v) in r.iter().enumerate() {
            let z = match v {
                Value::Number(x) => Complex64::new(x.as_f64().unwrap(), 0.0),
                Value::Array(pair) if pair.len() == 2 && pair.iter().all(Value::is_number) => {
                    Complex64::new(pair[0].as_f64().unwrap(), pair[1].as_f64().unwrap())
                }
                _ => {
                    return Err(Error::parse(
                        format!("[{i}][{j}]"),
                        "entry must be a number or an [re, im] pair",
                    ))
                }
            };
            row.push(z);
        }
        out.push(row);
    }
    SquareMatrix::from_rows(out).map(MatrixInput::Complex)
}
