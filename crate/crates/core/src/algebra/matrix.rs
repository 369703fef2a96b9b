use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Matrices with at least this many entries and density below
/// `SPARSE_DENSITY` are stored as triplets.
pub const SPARSE_MIN_ENTRIES: usize = 10_000;
pub const SPARSE_DENSITY: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Storage {
    Dense(Vec<i64>),
    /// Sorted by (row, col), no zeros, no duplicates.
    Sparse(Vec<(usize, usize, i64)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Storage,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    triplets: Vec<(usize, usize, i64)>,
}

fn prefers_sparse(rows: usize, cols: usize, nnz: usize) -> bool {
    let n = rows.saturating_mul(cols);
    n >= SPARSE_MIN_ENTRIES && (nnz as f64) < SPARSE_DENSITY * n as f64
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let data = if prefers_sparse(rows, cols, 0) {
            Storage::Sparse(Vec::new())
        } else {
            Storage::Dense(vec![0; rows * cols])
        };
        IntMatrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, 1))).unwrap()
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let trip = rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, v)));
        Self::from_triplets(r, c, trip)
    }

    /// Builds a matrix from (row, col, value) triplets; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut t: Vec<(usize, usize, i64)> = Vec::new();
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::DimensionMismatch(format!(
                    "entry ({i},{j}) outside {rows}x{cols}"
                )));
            }
            if v != 0 {
                t.push((i, j, v));
            }
        }
        t.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut merged: Vec<(usize, usize, i64)> = Vec::with_capacity(t.len());
        for (i, j, v) in t {
            match merged.last_mut() {
                Some(last) if last.0 == i && last.1 == j => {
                    last.2 = last.2.checked_add(v).ok_or(Error::Overflow)?;
                }
                _ => merged.push((i, j, v)),
            }
        }
        merged.retain(|e| e.2 != 0);
        let data = if prefers_sparse(rows, cols, merged.len()) {
            Storage::Sparse(merged)
        } else {
            let mut d = vec![0; rows * cols];
            for (i, j, v) in merged {
                d[i * cols + j] = v;
            }
            Storage::Dense(d)
        };
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_sparse(&self) -> bool {
        matches!(self.data, Storage::Sparse(_))
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        assert!(i < self.rows && j < self.cols, "index out of range");
        match &self.data {
            Storage::Dense(d) => d[i * self.cols + j],
            Storage::Sparse(t) => t
                .binary_search_by_key(&(i, j), |&(a, b, _)| (a, b))
                .map_or(0, |k| t[k].2),
        }
    }

    /// Nonzero entries in (row, col) order.
    pub fn triplets(&self) -> Vec<(usize, usize, i64)> {
        match &self.data {
            Storage::Sparse(t) => t.clone(),
            Storage::Dense(d) => d
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(k, &v)| (k / self.cols, k % self.cols, v))
                .collect(),
        }
    }

    pub fn nnz(&self) -> usize {
        match &self.data {
            Storage::Sparse(t) => t.len(),
            Storage::Dense(d) => d.iter().filter(|&&v| v != 0).count(),
        }
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().into_iter().map(|(i, j, v)| (j, i, v)))
            .expect("transpose keeps entries in range")
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); other.rows];
        for (i, j, v) in other.triplets() {
            by_row[i].push((j, v));
        }
        let mut acc: std::collections::BTreeMap<(usize, usize), i128> = Default::default();
        for (i, k, a) in self.triplets() {
            for &(j, b) in &by_row[k] {
                *acc.entry((i, j)).or_insert(0) += a as i128 * b as i128;
            }
        }
        let mut trip = Vec::with_capacity(acc.len());
        for ((i, j), v) in acc {
            trip.push((i, j, i64::try_from(v).map_err(|_| Error::Overflow)?));
        }
        Self::from_triplets(self.rows, other.cols, trip)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length".into()));
        }
        let mut out = vec![0i128; self.rows];
        for (i, j, a) in self.triplets() {
            out[i] += a as i128 * v[j] as i128;
        }
        out.into_iter()
            .map(|x| i64::try_from(x).map_err(|_| Error::Overflow))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson { rows: self.rows, cols: self.cols, triplets: self.triplets() })
            .expect("matrix serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let m: MatrixJson = serde_json::from_value(v.clone())?;
        Self::from_triplets(m.rows, m.cols, m.triplets)
    }
}
