//! Exact integer matrix algebra.
//!
//! Hermite and Smith normal forms with unimodular transforms, integer kernel
//! bases, integer linear solves and the lattice index `s(A, b)`. Everything is
//! generic over [`IntScalar`]; [`IntegerMatrix`] is the arbitrary precision
//! instance used by the rest of the crate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::IntScalar;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type IntegerMatrix = IntMatrix<BigInt>;

impl<T: IntScalar> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = T::one();
        }
        m
    }

    /// Builds a matrix from its rows. `cols` disambiguates the zero-row case.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(IntMatrix { rows: nrows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Matrix product, `None` on a shape mismatch.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        if self.cols != other.rows {
            return None;
        }
        Some(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc = acc + a.clone() * other.get(k, j).clone();
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, x)| acc + a.clone() * x.clone())
            })
            .collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Option<T> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(T::one());
        }
        let mut m = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Some(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j).clone() * m.get(k, k).clone()
                        - m.get(i, k).clone() * m.get(k, j).clone())
                        / prev.clone();
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        Some(sign * m.get(n - 1, n - 1).clone())
    }

    pub fn rank(&self) -> usize {
        hnf(self).rank
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= factor * row[source]
    pub(crate) fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(source, j).clone();
            if !s.is_zero() {
                let v = self.get(target, j).clone() - factor.clone() * s;
                self.set(target, j, v);
            }
        }
    }

    /// col[target] -= factor * col[source]
    pub(crate) fn sub_col_multiple(&mut self, target: usize, source: usize, factor: &T) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, source).clone();
            if !s.is_zero() {
                let v = self.get(i, target).clone() - factor.clone() * s;
                self.set(i, target, v);
            }
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for IntMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.entries[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Converts a natural-number matrix given by rows into an [`IntegerMatrix`].
pub fn integer_matrix_from_rows(rows: &[Vec<u64>], cols: usize) -> IntegerMatrix {
    IntMatrix::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
}

fn floor_div<T: IntScalar>(a: &T, b: &T) -> T {
    a.div_floor(b)
}

/// Row-style Hermite normal form `U · M = H`.
#[derive(Clone, Debug)]
pub struct HermiteDecomposition<T> {
    pub h: IntMatrix<T>,
    pub u: IntMatrix<T>,
    pub rank: usize,
    /// Column of the pivot in each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

/// Row Hermite normal form with a unimodular transform.
///
/// Pivots are positive, entries above a pivot lie in `0..pivot`, and all
/// rows below `rank` are zero. The pivot row is always the one with smallest
/// absolute value in the current column (lowest index on ties), so the
/// transform is reproducible.
pub fn hnf<T: IntScalar>(m: &IntMatrix<T>) -> HermiteDecomposition<T> {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..m.cols {
        if prow == m.rows {
            break;
        }
        let mut found = false;
        loop {
            let best = (prow..m.rows)
                .filter(|&r| !h.get(r, col).is_zero())
                .min_by(|&a, &b| h.get(a, col).abs().cmp(&h.get(b, col).abs()).then(a.cmp(&b)));
            let Some(best) = best else { break };
            found = true;
            h.swap_rows(prow, best);
            u.swap_rows(prow, best);
            let mut clean = true;
            for r in prow + 1..m.rows {
                if h.get(r, col).is_zero() {
                    continue;
                }
                let q = floor_div(h.get(r, col), h.get(prow, col));
                h.sub_row_multiple(r, prow, &q);
                u.sub_row_multiple(r, prow, &q);
                if !h.get(r, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h.get(prow, col).is_negative() {
            h.negate_row(prow);
            u.negate_row(prow);
        }
        for r in 0..prow {
            let q = floor_div(h.get(r, col), h.get(prow, col));
            h.sub_row_multiple(r, prow, &q);
            u.sub_row_multiple(r, prow, &q);
        }
        pivots.push(col);
        prow += 1;
    }
    HermiteDecomposition { h, u, rank: prow, pivots }
}

/// Smith normal form `U · M · V = S`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<T> {
    pub u: IntMatrix<T>,
    pub s: IntMatrix<T>,
    pub v: IntMatrix<T>,
    pub rank: usize,
}

impl<T: IntScalar> SmithDecomposition<T> {
    /// The nonzero invariant factors `d_1 | d_2 | ... | d_rank`.
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Smith normal form with unimodular transforms on both sides.
///
/// The pivot is the nonzero entry of least absolute value in the active
/// submatrix, scanning columns left to right and rows top to bottom.
pub fn snf<T: IntScalar>(m: &IntMatrix<T>) -> SmithDecomposition<T> {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for j in t..cols {
            for i in t..rows {
                let e = s.get(i, j);
                if e.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| e.abs() < s.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if s.get(r, t).is_zero() {
                    continue;
                }
                let q = floor_div(s.get(r, t), s.get(t, t));
                s.sub_row_multiple(r, t, &q);
                u.sub_row_multiple(r, t, &q);
                dirty |= !s.get(r, t).is_zero();
            }
            for c in t + 1..cols {
                if s.get(t, c).is_zero() {
                    continue;
                }
                let q = floor_div(s.get(t, c), s.get(t, t));
                s.sub_col_multiple(c, t, &q);
                v.sub_col_multiple(c, t, &q);
                dirty |= !s.get(t, c).is_zero();
            }
            if dirty {
                // A smaller remainder appeared in row or column t: make it the pivot.
                let mut best = (t, t);
                for r in t + 1..rows {
                    let e = s.get(r, t);
                    if !e.is_zero() && e.abs() < s.get(best.0, best.1).abs() {
                        best = (r, t);
                    }
                }
                for c in t + 1..cols {
                    let e = s.get(t, c);
                    if !e.is_zero() && e.abs() < s.get(best.0, best.1).abs() {
                        best = (t, c);
                    }
                }
                s.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                s.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let pivot = s.get(t, t).clone();
            let offender = (t + 1..rows)
                .find(|&r| (t + 1..cols).any(|c| !s.get(r, c).mod_floor(&pivot).is_zero()));
            match offender {
                Some(r) => {
                    let minus_one = -T::one();
                    s.sub_row_multiple(t, r, &minus_one);
                    u.sub_row_multiple(t, r, &minus_one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition { u, s, v, rank: t }
}

/// A Z-basis of the integer kernel of a matrix, one vector per entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeBasis<T> {
    pub vectors: Vec<Vec<T>>,
}

impl<T> LatticeBasis<T> {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Z-basis of `{v : M v = 0}`, returned in Hermite normal form.
pub fn kernel_basis<T: IntScalar>(m: &IntMatrix<T>) -> LatticeBasis<T> {
    let dec = hnf(&m.transpose());
    let n = m.cols;
    let rows: Vec<Vec<T>> = (dec.rank..n).map(|r| dec.u.row(r).to_vec()).collect();
    if rows.is_empty() {
        return LatticeBasis { vectors: Vec::new() };
    }
    let count = rows.len();
    let k = IntMatrix::from_rows(rows, n).expect("rows of U have the right length");
    let reduced = hnf(&k);
    debug_assert_eq!(reduced.rank, count);
    LatticeBasis { vectors: (0..reduced.rank).map(|r| reduced.h.row(r).to_vec()).collect() }
}

/// Some integer solution of `M X = v`, or `None` when none exists over Z.
pub fn solve_integer<T: IntScalar>(m: &IntMatrix<T>, v: &[T]) -> Result<Option<Vec<T>>> {
    if v.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            v.len(),
            m.rows
        )));
    }
    let dec = snf(m);
    let c = dec.u.mul_vec(v)?;
    let mut y = vec![T::zero(); m.cols];
    for i in 0..m.rows {
        if i < dec.rank {
            let d = dec.s.get(i, i);
            if !c[i].mod_floor(d).is_zero() {
                return Ok(None);
            }
            y[i] = c[i].clone() / d.clone();
        } else if !c[i].is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(dec.v.mul_vec(&y)?))
}

/// The smallest `s > 0` such that `M X = s b` has an integer solution.
///
/// Every other such `s` is a multiple of the returned value. For `b = 0`
/// this is 1.
pub fn lattice_index<T: IntScalar>(m: &IntMatrix<T>, b: &[T]) -> Result<T> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against {} rows",
            b.len(),
            m.rows
        )));
    }
    let dec = snf(m);
    let c = dec.u.mul_vec(b)?;
    if c[dec.rank..].iter().any(|x| !x.is_zero()) {
        return Err(Error::NotInRationalSpan);
    }
    let mut s = T::one();
    for (i, ci) in c.iter().enumerate().take(dec.rank) {
        let d = dec.s.get(i, i);
        let need = d.clone() / d.gcd(ci);
        s = s.lcm(&need);
    }
    Ok(s)
}

/// `s(A, b)` for a natural-number generator matrix given by its columns.
pub fn s_value(columns: &[Vec<u64>], dim: usize, b: &[u64]) -> Result<u64> {
    if b.len() != dim {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} in ambient dimension {dim}",
            b.len()
        )));
    }
    let m = IntMatrix::from_fn(dim, columns.len(), |i, j| BigInt::from(columns[j][i]));
    let rhs: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
    let s = lattice_index(&m, &rhs)?;
    s.to_u64().ok_or_else(|| Error::Overflow(format!("s-value {s} does not fit in u64")))
}

/// Converts a small signed vector to arbitrary precision.
pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Converts an arbitrary precision vector back to `i64`.
pub fn from_big(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Overflow(format!("{x} does not fit in i64"))))
        .collect()
}
