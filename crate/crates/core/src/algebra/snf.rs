//! Smith normal form over the integers.
//!
//! Dense elimination runs in checked `i128` and is repeated in `BigInt` when
//! an intermediate value overflows. The invariant-factor-only path first
//! eliminates unit pivots on a sparse row representation and hands the
//! residual block to the dense routine.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `s = u * m * v` with `s` diagonal, diagonal entries nonnegative and each
/// dividing the next.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i)).collect()
    }
}

pub(crate) trait Ring:
    Clone + Debug + PartialEq + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + From<i64>
{
    fn to_i64(&self) -> Option<i64>;
}

impl Ring for i128 {
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
}

impl Ring for BigInt {
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
}

#[derive(Clone, Copy, Default)]
pub(crate) struct Track {
    pub left: bool,
    pub right: bool,
    pub right_inv: bool,
}

/// Dense elimination state: `a = left * original * right`, `right_inv = right^{-1}`.
pub(crate) struct DenseSnf<T> {
    pub r: usize,
    pub c: usize,
    pub a: Vec<T>,
    pub left: Option<Vec<T>>,
    pub right: Option<Vec<T>>,
    pub right_inv: Option<Vec<T>>,
}

fn ck<T>(x: Option<T>) -> Result<T> {
    x.ok_or(Error::Overflow)
}

fn eye<T: Ring>(n: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    v
}

impl<T: Ring> DenseSnf<T> {
    pub fn new(rows: &[Vec<i64>], cols: usize, track: Track) -> Self {
        let r = rows.len();
        let mut a = Vec::with_capacity(r * cols);
        for row in rows {
            a.extend(row.iter().map(|&x| T::from(x)));
        }
        DenseSnf {
            r,
            c: cols,
            a,
            left: track.left.then(|| eye(r)),
            right: track.right.then(|| eye(cols)),
            right_inv: track.right_inv.then(|| eye(cols)),
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.c + j]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.c {
            self.a.swap(i * self.c + k, j * self.c + k);
        }
        if let Some(l) = &mut self.left {
            for k in 0..self.r {
                l.swap(i * self.r + k, j * self.r + k);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.r {
            self.a.swap(k * self.c + i, k * self.c + j);
        }
        let n = self.c;
        if let Some(v) = &mut self.right {
            for k in 0..n {
                v.swap(k * n + i, k * n + j);
            }
        }
        if let Some(w) = &mut self.right_inv {
            for k in 0..n {
                w.swap(i * n + k, j * n + k);
            }
        }
    }

    /// row_dst += q * row_src, touching matrix columns from `from` on.
    fn add_row(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Result<()> {
        for k in from..self.c {
            let s = self.a[src * self.c + k].clone();
            if s.is_zero() {
                continue;
            }
            let d = &self.a[dst * self.c + k];
            self.a[dst * self.c + k] = ck(d.checked_add(&ck(q.checked_mul(&s))?))?;
        }
        if let Some(l) = &mut self.left {
            let n = self.r;
            for k in 0..n {
                let s = l[src * n + k].clone();
                if s.is_zero() {
                    continue;
                }
                l[dst * n + k] = ck(l[dst * n + k].checked_add(&ck(q.checked_mul(&s))?))?;
            }
        }
        Ok(())
    }

    /// col_dst += q * col_src, touching matrix rows from `from` on.
    fn add_col(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Result<()> {
        for k in from..self.r {
            let s = self.a[k * self.c + src].clone();
            if s.is_zero() {
                continue;
            }
            let d = &self.a[k * self.c + dst];
            self.a[k * self.c + dst] = ck(d.checked_add(&ck(q.checked_mul(&s))?))?;
        }
        let n = self.c;
        if let Some(v) = &mut self.right {
            for k in 0..n {
                let s = v[k * n + src].clone();
                if s.is_zero() {
                    continue;
                }
                v[k * n + dst] = ck(v[k * n + dst].checked_add(&ck(q.checked_mul(&s))?))?;
            }
        }
        if let Some(w) = &mut self.right_inv {
            // inverse of the elementary column operation: row_src -= q * row_dst
            for k in 0..n {
                let s = w[dst * n + k].clone();
                if s.is_zero() {
                    continue;
                }
                w[src * n + k] = ck(w[src * n + k].checked_sub(&ck(q.checked_mul(&s))?))?;
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.c {
            let x = -self.a[i * self.c + k].clone();
            self.a[i * self.c + k] = x;
        }
        if let Some(l) = &mut self.left {
            for k in 0..self.r {
                let x = -l[i * self.r + k].clone();
                l[i * self.r + k] = x;
            }
        }
    }

    /// Minimal |entry| in the trailing block, then minimal fill, then (row, col).
    fn choose_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut row_nnz = vec![0usize; self.r];
        let mut col_nnz = vec![0usize; self.c];
        let mut best_abs: Option<T> = None;
        for i in t..self.r {
            for j in t..self.c {
                let x = self.at(i, j);
                if !x.is_zero() {
                    row_nnz[i] += 1;
                    col_nnz[j] += 1;
                    let ax = x.abs();
                    if best_abs.as_ref().map_or(true, |b| ax < *b) {
                        best_abs = Some(ax);
                    }
                }
            }
        }
        let best_abs = best_abs?;
        let mut best: Option<(usize, usize, usize)> = None;
        for i in t..self.r {
            for j in t..self.c {
                let x = self.at(i, j);
                if !x.is_zero() && x.abs() == best_abs {
                    let fill = row_nnz[i] + col_nnz[j];
                    if best.map_or(true, |(f, _, _)| fill < f) {
                        best = Some((fill, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    pub fn run(&mut self) -> Result<()> {
        let n = self.r.min(self.c);
        for t in 0..n {
            let Some((pi, pj)) = self.choose_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.r {
                    if !self.at(i, t).is_zero() {
                        let q = -self.at(i, t).div_floor(self.at(t, t));
                        self.add_row(i, t, &q, t)?;
                        if !self.at(i, t).is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    let i = (t..self.r)
                        .filter(|&i| !self.at(i, t).is_zero())
                        .min_by(|&x, &y| self.at(x, t).abs().cmp(&self.at(y, t).abs()).then(x.cmp(&y)))
                        .unwrap();
                    self.swap_rows(t, i);
                    continue;
                }
                for j in t + 1..self.c {
                    if !self.at(t, j).is_zero() {
                        let q = -self.at(t, j).div_floor(self.at(t, t));
                        self.add_col(j, t, &q, t)?;
                        if !self.at(t, j).is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    let j = (t..self.c)
                        .filter(|&j| !self.at(t, j).is_zero())
                        .min_by(|&x, &y| self.at(t, x).abs().cmp(&self.at(t, y).abs()).then(x.cmp(&y)))
                        .unwrap();
                    self.swap_cols(t, j);
                    continue;
                }
                let p = self.at(t, t).clone();
                let bad = (t + 1..self.r).find(|&i| (t + 1..self.c).any(|j| !self.at(i, j).is_multiple_of(&p)));
                match bad {
                    Some(i) => self.add_row(t, i, &T::one(), t)?,
                    None => break,
                }
            }
            if self.at(t, t).is_negative() {
                self.negate_row(t);
            }
        }
        Ok(())
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.r.min(self.c)).map(|i| self.at(i, i).clone()).collect()
    }
}

pub(crate) fn to_i64_vec<T: Ring>(v: &[T]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect()
}

/// Runs the dense elimination in i128 and falls back to BigInt on overflow.
/// The closure receives the finished state and converts what it needs.
pub(crate) fn dense_with_promotion<R>(
    rows: &[Vec<i64>],
    cols: usize,
    track: Track,
    finish_small: impl Fn(&DenseSnf<i128>) -> Result<R>,
    finish_big: impl Fn(&DenseSnf<BigInt>) -> Result<R>,
) -> Result<R> {
    let mut small = DenseSnf::<i128>::new(rows, cols, track);
    match small.run() {
        Ok(()) => match finish_small(&small) {
            Err(Error::Overflow) => {}
            other => return other,
        },
        Err(Error::Overflow) => {}
        Err(e) => return Err(e),
    }
    let mut big = DenseSnf::<BigInt>::new(rows, cols, track);
    big.run()?;
    finish_big(&big)
}

fn square_from<T: Ring>(v: &[T], n: usize) -> Result<IntMatrix> {
    let vals = to_i64_vec(v)?;
    IntMatrix::from_triplets(n, n, vals.into_iter().enumerate().map(|(k, x)| (k / n, k % n, x)))
}

fn smith_finish<T: Ring>(st: &DenseSnf<T>) -> Result<SmithForm> {
    let d = to_i64_vec(&st.diagonal())?;
    let s = IntMatrix::from_triplets(st.r, st.c, d.into_iter().enumerate().map(|(i, x)| (i, i, x)))?;
    Ok(SmithForm {
        s,
        u: square_from(st.left.as_ref().unwrap(), st.r)?,
        v: square_from(st.right.as_ref().unwrap(), st.c)?,
    })
}

/// Full Smith normal form with transforms.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithForm> {
    let rows = m.to_dense_rows();
    let track = Track { left: true, right: true, right_inv: false };
    dense_with_promotion(&rows, m.cols(), track, smith_finish, smith_finish)
}

/// Rank and invariant factors (each > 1, divisibility chain) of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

fn dense_invariants(rows: &[Vec<i64>], cols: usize) -> Result<Invariants> {
    fn fin<T: Ring>(st: &DenseSnf<T>) -> Result<Invariants> {
        let mut rank = 0;
        let mut torsion = Vec::new();
        for x in st.diagonal() {
            if x.is_zero() {
                continue;
            }
            rank += 1;
            let v = x.to_i64().ok_or(Error::Overflow)? as u64;
            if v > 1 {
                torsion.push(v);
            }
        }
        Ok(Invariants { rank, torsion })
    }
    dense_with_promotion(rows, cols, Track::default(), fin, fin)
}

/// Rank and nontrivial invariant factors. Unit pivots are eliminated on a
/// sparse representation first; whatever is left is finished densely.
pub fn invariant_factors(m: &IntMatrix) -> Result<Invariants> {
    if !m.is_sparse() && m.rows() * m.cols() <= 250_000 {
        return dense_invariants(&m.to_dense_rows(), m.cols());
    }
    let mut el = SparseElim::new(m);
    let units = el.eliminate_units()?;
    let (rows, cols) = el.residual()?;
    let mut inv = dense_invariants(&rows, cols)?;
    inv.rank += units;
    Ok(inv)
}

/// Sparse row over the original row indices.
pub(crate) type SparseRow = Vec<(u32, i128)>;

/// `dst -= f * src` on sorted sparse rows.
fn sub_scaled(dst: &mut SparseRow, src: &SparseRow, f: i128) -> Result<()> {
    let old = std::mem::take(dst);
    let (mut i, mut j) = (0, 0);
    while i < old.len() || j < src.len() {
        if j >= src.len() || (i < old.len() && old[i].0 < src[j].0) {
            dst.push(old[i]);
            i += 1;
        } else if i >= old.len() || src[j].0 < old[i].0 {
            dst.push((src[j].0, ck(ck(f.checked_mul(src[j].1))?.checked_neg())?));
            j += 1;
        } else {
            let v = ck(old[i].1.checked_sub(ck(f.checked_mul(src[j].1))?))?;
            if v != 0 {
                dst.push((old[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(())
}

/// What is left of a matrix after unit elimination, with the row operations
/// that produced each surviving row.
pub(crate) struct ReducedRows {
    pub rows: Vec<Vec<i64>>,
    pub cols: usize,
    pub transform: Vec<SparseRow>,
}

/// Eliminates unit pivots and returns every surviving row, zero rows
/// included, so that the cokernel of `m` is the cokernel of the residual
/// block read through `transform`.
pub(crate) fn reduce_rows(m: &IntMatrix) -> Result<ReducedRows> {
    let mut el = SparseElim::new(m);
    el.left = Some((0..m.rows()).map(|r| vec![(r as u32, 1)]).collect());
    el.eliminate_units()?;
    let (live_cols, index) = el.live_columns();
    let left = el.left.take().unwrap();
    let mut rows = Vec::new();
    let mut transform = Vec::new();
    for (r, (row, t)) in el.rows.iter().zip(left).enumerate() {
        if !el.row_alive[r] {
            continue;
        }
        let mut dense = vec![0i64; live_cols];
        for &(c, v) in row {
            dense[index[c as usize]] = v.try_into().map_err(|_| Error::Overflow)?;
        }
        rows.push(dense);
        transform.push(t);
    }
    Ok(ReducedRows { rows, cols: live_cols, transform })
}

struct SparseElim {
    rows: Vec<Vec<(u32, i128)>>,
    left: Option<Vec<SparseRow>>,
    row_alive: Vec<bool>,
    col_rows: Vec<Vec<u32>>,
    col_count: Vec<usize>,
    col_alive: Vec<bool>,
}

impl SparseElim {
    fn new(m: &IntMatrix) -> Self {
        let mut rows: Vec<Vec<(u32, i128)>> = vec![Vec::new(); m.rows()];
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); m.cols()];
        let mut col_count = vec![0; m.cols()];
        for (i, j, v) in m.triplets() {
            rows[i].push((j as u32, v as i128));
            col_rows[j].push(i as u32);
            col_count[j] += 1;
        }
        SparseElim {
            left: None,
            row_alive: vec![true; m.rows()],
            col_alive: vec![true; m.cols()],
            rows,
            col_rows,
            col_count,
        }
    }

    fn entry(&self, r: usize, c: u32) -> Option<i128> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|k| row[k].1)
    }

    /// Eliminates pivots of absolute value one, columns with few entries
    /// first and the shortest row within a column. Returns the number of
    /// pivots taken.
    fn eliminate_units(&mut self) -> Result<usize> {
        let ncols = self.col_count.len();
        let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
            (0..ncols).filter(|&c| self.col_count[c] > 0).map(|c| Reverse((self.col_count[c], c as u32))).collect();
        let mut pivots = 0;
        while let Some(Reverse((cnt, c))) = heap.pop() {
            let cu = c as usize;
            if !self.col_alive[cu] || self.col_count[cu] != cnt || cnt == 0 {
                continue;
            }
            let mut best: Option<(usize, usize)> = None;
            let mut live_rows: Vec<u32> = Vec::with_capacity(cnt);
            let mut seen = std::collections::HashSet::new();
            for &r in &self.col_rows[cu] {
                let ru = r as usize;
                if !self.row_alive[ru] || !seen.insert(r) {
                    continue;
                }
                if let Some(v) = self.entry(ru, c) {
                    live_rows.push(r);
                    if v.abs() == 1 {
                        let len = self.rows[ru].len();
                        if best.map_or(true, |(l, br)| (len, ru) < (l, br)) {
                            best = Some((len, ru));
                        }
                    }
                }
            }
            live_rows.sort_unstable();
            self.col_rows[cu] = live_rows.clone();
            let Some((_, pr)) = best else { continue };
            let pv = self.entry(pr, c).unwrap();
            let prow = std::mem::take(&mut self.rows[pr]);
            self.row_alive[pr] = false;
            for &(cc, _) in &prow {
                self.col_count[cc as usize] -= 1;
            }
            let mut touched: Vec<u32> = Vec::new();
            for &r in &live_rows {
                let ru = r as usize;
                if ru == pr {
                    continue;
                }
                let f = self.entry(ru, c).unwrap() * pv;
                let old = std::mem::take(&mut self.rows[ru]);
                let mut merged = Vec::with_capacity(old.len() + prow.len());
                let (mut i, mut j) = (0, 0);
                while i < old.len() || j < prow.len() {
                    let take_old = j >= prow.len() || (i < old.len() && old[i].0 < prow[j].0);
                    let take_new = i >= old.len() || (j < prow.len() && prow[j].0 < old[i].0);
                    if take_old {
                        merged.push(old[i]);
                        i += 1;
                    } else if take_new {
                        let (cc, pvv) = prow[j];
                        let val = ck(f.checked_mul(pvv))?.checked_neg().ok_or(Error::Overflow)?;
                        merged.push((cc, val));
                        self.col_count[cc as usize] += 1;
                        self.col_rows[cc as usize].push(r);
                        touched.push(cc);
                        j += 1;
                    } else {
                        let (cc, ov) = old[i];
                        let val = ck(ov.checked_sub(ck(f.checked_mul(prow[j].1))?))?;
                        if val != 0 {
                            merged.push((cc, val));
                        } else {
                            self.col_count[cc as usize] -= 1;
                        }
                        touched.push(cc);
                        i += 1;
                        j += 1;
                    }
                }
                self.rows[ru] = merged;
                if let Some(left) = &mut self.left {
                    let src = left[pr].clone();
                    sub_scaled(&mut left[ru], &src, f)?;
                }
            }
            self.col_alive[cu] = false;
            self.col_count[cu] = 0;
            for &(cc, _) in &prow {
                touched.push(cc);
            }
            touched.sort_unstable();
            touched.dedup();
            for cc in touched {
                let ccu = cc as usize;
                if self.col_alive[ccu] && self.col_count[ccu] > 0 {
                    heap.push(Reverse((self.col_count[ccu], cc)));
                }
            }
            pivots += 1;
        }
        Ok(pivots)
    }

    /// Number of surviving columns and the index of each in the residual.
    fn live_columns(&self) -> (usize, Vec<usize>) {
        let mut index = vec![usize::MAX; self.col_alive.len()];
        let mut k = 0;
        for c in 0..self.col_alive.len() {
            if self.col_alive[c] && self.col_count[c] > 0 {
                index[c] = k;
                k += 1;
            }
        }
        (k, index)
    }

    fn residual(&self) -> Result<(Vec<Vec<i64>>, usize)> {
        let (live_cols, index) = self.live_columns();
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            if !self.row_alive[r] || row.is_empty() {
                continue;
            }
            let mut dense = vec![0i64; live_cols];
            for &(c, v) in row {
                dense[index[c as usize]] = v.try_into().map_err(|_| Error::Overflow)?;
            }
            out.push(dense);
        }
        Ok((out, live_cols))
    }
}
