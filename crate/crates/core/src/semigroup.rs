//! Affine semigroups given by generator sets.
//!
//! Rank and degeneracy, membership with witnesses, cone membership, the
//! invariant `d(A, b)`, line detection and fiber enumeration.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, IntegerMatrix};

/// Generators `a_1, ..., a_p` of a subsemigroup of `ℕⁿ`, stored as columns.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GeneratorSet {
    dim: usize,
    columns: Vec<Vec<u64>>,
}

impl GeneratorSet {
    /// Builds a generator set from its columns.
    pub fn new(dim: usize, columns: Vec<Vec<u64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidGenerators("ambient dimension must be positive".into()));
        }
        if columns.is_empty() {
            return Err(Error::InvalidGenerators("at least one generator is required".into()));
        }
        for (j, c) in columns.iter().enumerate() {
            if c.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator {} has {} coordinates, expected {dim}",
                    j + 1,
                    c.len()
                )));
            }
            if c.iter().all(|&x| x == 0) {
                return Err(Error::InvalidGenerators(format!("generator {} is zero", j + 1)));
            }
        }
        Ok(GeneratorSet { dim, columns })
    }

    /// Builds a generator set from the rows of the matrix `A`.
    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let dim = rows.len();
        let p = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != p) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {p}",
                i + 1,
                rows[i].len()
            )));
        }
        let columns = (0..p).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        Self::new(dim, columns)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators `p`.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[Vec<u64>] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[u64] {
        &self.columns[j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.dim).map(|i| self.columns.iter().map(|c| c[i]).collect()).collect()
    }

    pub fn matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_fn(self.dim, self.len(), |i, j| BigInt::from(self.columns[j][i]))
    }

    /// Coordinate sums of the generators; a positive grading of `k[A]`.
    pub fn column_sums(&self) -> Vec<u64> {
        self.columns.iter().map(|c| c.iter().sum()).collect()
    }

    /// `A · x` for `x ∈ ℕ^p`.
    pub fn degree(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "exponent vector of length {} for {} generators",
                x.len(),
                self.len()
            )));
        }
        let mut out = vec![0u64; self.dim];
        for (c, &e) in self.columns.iter().zip(x) {
            if e == 0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(c) {
                *o = a
                    .checked_mul(e)
                    .and_then(|v| o.checked_add(v))
                    .ok_or_else(|| Error::Overflow("semigroup degree".into()))?;
            }
        }
        Ok(out)
    }

    /// `k · A`.
    pub fn scaled(&self, k: u64) -> Result<Self> {
        let columns = self
            .columns
            .iter()
            .map(|c| scale_vector(c, k))
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::new(self.dim, columns)
    }

    /// The generator set `k1·A ∪ k2·B`, generators of `A` first.
    pub fn union_scaled(a: &GeneratorSet, k1: u64, b: &GeneratorSet, k2: u64) -> Result<Self> {
        if a.dim != b.dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {} differ",
                a.dim, b.dim
            )));
        }
        let mut columns = a.scaled(k1)?.columns;
        columns.extend(b.scaled(k2)?.columns);
        GeneratorSet::new(a.dim, columns)
    }

    /// Rank of `A`, which is the Krull dimension of `k[A]`.
    pub fn rank_dim(&self) -> usize {
        self.matrix().rank()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank_dim() == self.dim
    }

    /// Drops dependent coordinates until the set has full rank.
    ///
    /// A coordinate that is a rational combination of the others carries no
    /// information about the semigroup, so dropping it gives an isomorphic
    /// semigroup. The highest-index dependent coordinate goes first. After
    /// each drop the common content of all entries is divided out.
    pub fn reduce_degenerate(&self) -> Result<Self> {
        let rank = self.rank_dim();
        if rank == self.dim {
            return Err(Error::NotDegenerate(rank));
        }
        let mut rows = self.rows();
        while rows.len() > rank {
            let drop = (0..rows.len())
                .rev()
                .find(|&i| {
                    let rest: Vec<Vec<u64>> = rows
                        .iter()
                        .enumerate()
                        .filter(|&(k, _)| k != i)
                        .map(|(_, r)| r.clone())
                        .collect();
                    lattice::integer_matrix_from_rows(&rest, self.len()).rank() == rank
                })
                .ok_or_else(|| Error::Inconsistent("no dependent row in a degenerate matrix".into()))?;
            rows.remove(drop);
            let content = rows.iter().flatten().fold(0u64, |g, &x| g.gcd(&x));
            if content > 1 {
                for x in rows.iter_mut().flatten() {
                    *x /= content;
                }
            }
        }
        GeneratorSet::from_rows(&rows)
    }

    /// A witness `x ∈ ℕ^p` with `A·x = m`, or `None` if `m ∉ ⟨A⟩`.
    ///
    /// Exhaustive depth-first search. Generators are tried in order of
    /// decreasing coordinate sum and residuals already known to fail are
    /// memoized.
    pub fn membership(&self, m: &[u64]) -> Result<Option<Vec<u64>>> {
        if m.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                m.len(),
                self.dim
            )));
        }
        let order = self.search_order();
        let mut counts = vec![0u64; self.len()];
        let mut dead = HashSet::new();
        let found = member_dfs(&self.columns, &order, 0, m.to_vec(), &mut counts, &mut dead);
        Ok(found.then_some(counts))
    }

    pub fn contains(&self, m: &[u64]) -> Result<bool> {
        Ok(self.membership(m)?.is_some())
    }

    /// Generator indices sorted by decreasing coordinate sum, stable on ties.
    fn search_order(&self) -> Vec<usize> {
        let sums = self.column_sums();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| sums[b].cmp(&sums[a]));
        order
    }

    /// Nonnegative rational `r` with `A·r = b`, or `None` if `b ∉ cone(A)`.
    pub fn cone_membership(&self, b: &[u64]) -> Result<Option<Vec<BigRational>>> {
        if b.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                b.len(),
                self.dim
            )));
        }
        Ok(feasible_nonnegative(&self.columns, b))
    }

    /// `d(A, b)`: the least `d > 0` with `d·b ∈ ⟨A⟩`, with its witness.
    ///
    /// Only multiples of `s(A, b)` can work, and if `r` is a rational cone
    /// witness then `D·b ∈ ⟨A⟩` for `D` the lcm of the denominators of `r`,
    /// so the search over `s, 2s, ..., D` terminates.
    pub fn d_value(&self, b: &[u64]) -> Result<DValue> {
        let cone = self.cone_membership(b)?.ok_or(Error::NotInCone)?;
        let bound = cone
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
            .to_u64()
            .ok_or_else(|| Error::Overflow("cone witness denominator".into()))?;
        let s = lattice::s_value(&self.columns, self.dim, b)?;
        let mut d = s;
        while d <= bound {
            let target = scale_vector(b, d)?;
            if let Some(witness) = self.membership(&target)? {
                return Ok(DValue { d, s, witness });
            }
            d += s;
        }
        Err(Error::Inconsistent(format!(
            "no multiple of b up to the cone bound {bound} lies in the semigroup"
        )))
    }

    /// Recognises `B = g · b · [u_1 ... u_q]` with rank 1 and `q ≥ 2`.
    pub fn detect_line(&self) -> Option<LineForm> {
        if self.len() < 2 || self.rank_dim() != 1 {
            return None;
        }
        Some(LineForm::from_rank_one(&self.columns))
    }

    /// Indices `j` with `a_j ∈ ⟨A ∖ {a_j}⟩`.
    ///
    /// Such generators are allowed but make any gluing involving them
    /// trivial in a sense, so callers surface them as warnings.
    pub fn redundant_generators(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| {
                let others: Vec<Vec<u64>> = self
                    .columns
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, c)| c.clone())
                    .collect();
                if others.is_empty() {
                    return false;
                }
                let rest = GeneratorSet { dim: self.dim, columns: others };
                matches!(rest.membership(&self.columns[j]), Ok(Some(_)))
            })
            .collect()
    }

    /// All `x ∈ ℕ^p` with `A·x = m`, in lexicographically decreasing order.
    ///
    /// Fails with `ResourceLimit` once more than `limit` points are found.
    pub fn fiber(&self, m: &[u64], limit: usize) -> Result<Vec<Vec<u64>>> {
        if m.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                m.len(),
                self.dim
            )));
        }
        let p = self.len();
        // support_after[j][i]: some generator with index >= j is positive in coordinate i
        let mut support_after = vec![vec![false; self.dim]; p + 1];
        for j in (0..p).rev() {
            for i in 0..self.dim {
                support_after[j][i] = support_after[j + 1][i] || self.columns[j][i] > 0;
            }
        }
        let mut out = Vec::new();
        let mut current = vec![0u64; p];
        let mut dead = HashSet::new();
        let mut search = FiberSearch {
            columns: &self.columns,
            support_after: &support_after,
            out: &mut out,
            dead: &mut dead,
            limit,
        };
        search.run(0, m.to_vec(), &mut current)?;
        Ok(out)
    }
}

/// Repeated membership queries against one semigroup.
///
/// Uses a dense table over a bounding box when it is small enough and a
/// memoized search otherwise.
pub struct MembershipOracle<'a> {
    set: &'a GeneratorSet,
    bound: Vec<u64>,
    table: Option<Vec<u64>>,
    memo: HashMap<Vec<u64>, bool>,
}

impl<'a> MembershipOracle<'a> {
    /// Largest box tabulated densely, in points.
    const DENSE_LIMIT: u64 = 1 << 26;

    /// An oracle expected to be queried inside the box `0 ≤ m ≤ bound`.
    pub fn new(set: &'a GeneratorSet, bound: &[u64]) -> Self {
        let size = bound
            .iter()
            .try_fold(1u64, |acc, &x| acc.checked_mul(x + 1))
            .filter(|&s| s <= Self::DENSE_LIMIT);
        let table = size.map(|size| {
            let mut bits = vec![0u64; (size as usize).div_ceil(64)];
            let strides: Vec<u64> = (0..bound.len())
                .map(|i| bound[i + 1..].iter().map(|&x| x + 1).product())
                .collect();
            let offsets: Vec<u64> = set
                .columns
                .iter()
                .map(|c| c.iter().zip(&strides).map(|(&a, &s)| a * s).sum())
                .collect();
            let mut point = vec![0u64; bound.len()];
            for idx in 0..size {
                let member = idx == 0
                    || set.columns.iter().zip(&offsets).any(|(c, &off)| {
                        c.iter().zip(&point).all(|(&a, &x)| a <= x)
                            && bits[((idx - off) / 64) as usize] >> ((idx - off) % 64) & 1 == 1
                    });
                if member {
                    bits[(idx / 64) as usize] |= 1 << (idx % 64);
                }
                // advance the mixed-radix counter
                for i in (0..point.len()).rev() {
                    if point[i] < bound[i] {
                        point[i] += 1;
                        break;
                    }
                    point[i] = 0;
                }
            }
            bits
        });
        MembershipOracle { set, bound: bound.to_vec(), table, memo: HashMap::new() }
    }

    pub fn contains(&mut self, m: &[u64]) -> Result<bool> {
        if let Some(bits) = &self.table {
            if m.len() == self.bound.len() && m.iter().zip(&self.bound).all(|(x, b)| x <= b) {
                let idx = m.iter().zip(&self.bound).fold(0u64, |acc, (&x, &b)| acc * (b + 1) + x);
                return Ok(bits[(idx / 64) as usize] >> (idx % 64) & 1 == 1);
            }
        }
        if let Some(&known) = self.memo.get(m) {
            return Ok(known);
        }
        let known = self.set.contains(m)?;
        self.memo.insert(m.to_vec(), known);
        Ok(known)
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

pub(crate) fn scale_vector(v: &[u64], k: u64) -> Result<Vec<u64>> {
    v.iter()
        .map(|&x| x.checked_mul(k).ok_or_else(|| Error::Overflow(format!("{x} * {k}"))))
        .collect()
}

fn member_dfs(
    columns: &[Vec<u64>],
    order: &[usize],
    pos: usize,
    residual: Vec<u64>,
    counts: &mut [u64],
    dead: &mut HashSet<(usize, Vec<u64>)>,
) -> bool {
    if residual.iter().all(|&x| x == 0) {
        return true;
    }
    if pos == order.len() || dead.contains(&(pos, residual.clone())) {
        return false;
    }
    for (k, &j) in order.iter().enumerate().skip(pos) {
        let g = &columns[j];
        if g.iter().zip(&residual).all(|(a, r)| a <= r) {
            let next: Vec<u64> = residual.iter().zip(g).map(|(r, a)| r - a).collect();
            counts[j] += 1;
            if member_dfs(columns, order, k, next, counts, dead) {
                return true;
            }
            counts[j] -= 1;
        }
    }
    dead.insert((pos, residual));
    false
}

struct FiberSearch<'a> {
    columns: &'a [Vec<u64>],
    support_after: &'a [Vec<bool>],
    out: &'a mut Vec<Vec<u64>>,
    dead: &'a mut HashSet<(usize, Vec<u64>)>,
    limit: usize,
}

impl FiberSearch<'_> {
    /// Returns whether at least one point was found below this state.
    fn run(&mut self, j: usize, residual: Vec<u64>, current: &mut Vec<u64>) -> Result<bool> {
        if residual
            .iter()
            .enumerate()
            .any(|(i, &r)| r > 0 && !self.support_after[j][i])
        {
            return Ok(false);
        }
        if j == self.columns.len() {
            // residual is zero here by the support check
            if self.out.len() == self.limit {
                return Err(Error::ResourceLimit(format!(
                    "fiber has more than {} points",
                    self.limit
                )));
            }
            self.out.push(current.clone());
            return Ok(true);
        }
        if self.dead.contains(&(j, residual.clone())) {
            return Ok(false);
        }
        let g = &self.columns[j];
        let max = g
            .iter()
            .zip(&residual)
            .filter(|(&a, _)| a > 0)
            .map(|(&a, &r)| r / a)
            .min()
            .unwrap_or(0);
        let mut any = false;
        for e in (0..=max).rev() {
            let next: Vec<u64> = residual.iter().zip(g).map(|(&r, &a)| r - a * e).collect();
            current[j] = e;
            any |= self.run(j + 1, next, current)?;
        }
        current[j] = 0;
        if !any {
            self.dead.insert((j, residual));
        }
        Ok(any)
    }
}

/// Result of [`GeneratorSet::d_value`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DValue {
    pub d: u64,
    /// `s(A, b)`, which always divides `d`.
    pub s: u64,
    /// `x ∈ ℕ^p` with `A·x = d·b`.
    pub witness: Vec<u64>,
}

/// A rank-one generator set written as `scale · direction · [u_1 ... u_q]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineForm {
    /// Primitive direction vector (entries with gcd 1).
    pub direction: Vec<u64>,
    /// Multipliers with gcd 1.
    pub multipliers: Vec<u64>,
    /// Common factor extracted from the multipliers.
    pub scale: u64,
}

impl LineForm {
    fn from_rank_one(columns: &[Vec<u64>]) -> Self {
        let content = |c: &[u64]| c.iter().fold(0u64, |g, &x| g.gcd(&x));
        let first = &columns[0];
        let c0 = content(first);
        let direction: Vec<u64> = first.iter().map(|&x| x / c0).collect();
        let raw: Vec<u64> = columns.iter().map(|c| content(c)).collect();
        let scale = raw.iter().fold(0u64, |g, &x| g.gcd(&x));
        LineForm { direction, multipliers: raw.iter().map(|&u| u / scale).collect(), scale }
    }

    /// The generators `scale · u_j · direction`.
    pub fn reconstruct(&self) -> Vec<Vec<u64>> {
        self.multipliers
            .iter()
            .map(|&u| self.direction.iter().map(|&b| self.scale * u * b).collect())
            .collect()
    }
}

/// Exact phase-one simplex for `A r = b, r >= 0` (Bland's rule).
///
/// `b` is nonnegative, so the artificial basis is feasible from the start.
pub(crate) fn feasible_nonnegative(columns: &[Vec<u64>], b: &[u64]) -> Option<Vec<BigRational>> {
    let n = b.len();
    let p = columns.len();
    let width = p + n + 1;
    let q = |x: u64| BigRational::from_integer(BigInt::from(x));
    // tableau rows: [A | I | b]
    let mut t: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            row.extend(columns.iter().map(|c| q(c[i])));
            row.extend((0..n).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
            row.push(q(b[i]));
            row
        })
        .collect();
    let mut basis: Vec<usize> = (p..p + n).collect();
    // reduced costs of the objective "minimize the sum of artificials"
    let mut cost: Vec<BigRational> = (0..width)
        .map(|j| {
            if (p..p + n).contains(&j) {
                BigRational::zero()
            } else {
                -t.iter().fold(BigRational::zero(), |acc, row| acc + &row[j])
            }
        })
        .collect();
    while let Some(enter) = (0..p + n).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // The phase-one objective is bounded below by zero.
        let (r, _) = leave?;
        let pivot = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &pivot;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, y) in cost.iter_mut().zip(&pivot_row) {
                *x = &*x - &f * y;
            }
        }
        basis[r] = enter;
    }
    if !cost[width - 1].is_zero() {
        // objective value is -cost[last]; positive means infeasible
        return None;
    }
    let mut r = vec![BigRational::zero(); p];
    for (i, &v) in basis.iter().enumerate() {
        if v < p {
            r[v] = t[i][width - 1].clone();
        }
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(cols: &[&[u64]]) -> GeneratorSet {
        GeneratorSet::new(cols[0].len(), cols.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    fn ex_cm() -> GeneratorSet {
        gens(&[&[5, 0], &[3, 2], &[2, 3], &[0, 5]])
    }

    fn ex_d6() -> GeneratorSet {
        gens(&[&[7, 0], &[6, 2], &[3, 8], &[0, 9]])
    }

    /// All x with sum(x) <= bound, by plain enumeration.
    fn brute_points(p: usize, bound: u64) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for _ in 0..p {
            let mut next = Vec::new();
            for v in &out {
                let used: u64 = v.iter().sum();
                for e in 0..=bound - used {
                    let mut w = v.clone();
                    w.push(e);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(GeneratorSet::new(2, vec![vec![0, 0]]).is_err());
        assert!(GeneratorSet::new(2, vec![]).is_err());
        assert!(GeneratorSet::new(2, vec![vec![1]]).is_err());
        assert!(GeneratorSet::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn ranks() {
        let cubic = gens(&[&[3, 0], &[2, 1], &[1, 2], &[0, 3]]);
        assert_eq!(cubic.rank_dim(), 2);
        let line = gens(&[&[11, 11], &[17, 17], &[25, 25], &[19, 19]]);
        assert_eq!(line.rank_dim(), 1);
        assert_eq!(gens(&[&[3, 4]]).rank_dim(), 1);
    }

    #[test]
    fn reduce_degenerate_examples() {
        let line = gens(&[&[11, 11], &[17, 17], &[25, 25], &[19, 19]]);
        let r = line.reduce_degenerate().unwrap();
        assert_eq!(r.rows(), vec![vec![11, 17, 25, 19]]);

        let a3 = gens(&[&[4, 0, 0], &[3, 1, 0], &[2, 2, 0], &[1, 3, 0]]);
        let r = a3.reduce_degenerate().unwrap();
        assert_eq!(r.columns(), &[vec![4, 0], vec![3, 1], vec![2, 2], vec![1, 3]]);

        assert_eq!(ex_cm().reduce_degenerate(), Err(Error::NotDegenerate(2)));

        let scaled = gens(&[&[4, 6], &[6, 9]]);
        assert_eq!(scaled.reduce_degenerate().unwrap().rows(), vec![vec![2, 3]]);
    }

    #[test]
    fn membership_examples() {
        let a = ex_cm();
        let w = a.membership(&[5, 5]).unwrap().unwrap();
        assert_eq!(a.degree(&w).unwrap(), vec![5, 5]);
        assert_eq!(a.membership(&[0, 0]).unwrap(), Some(vec![0, 0, 0, 0]));
        assert_eq!(a.membership(&[1, 1]).unwrap(), None);
        assert!(a.membership(&[1]).is_err());
    }

    #[test]
    fn membership_matches_brute_force() {
        let a = ex_d6();
        // coordinate sums are at least 7, so 40 / 7 < 6 generators suffice
        let points = brute_points(4, 6);
        for m0 in 0..=20u64 {
            for m1 in 0..=20u64 {
                let brute = points.iter().any(|x| a.degree(x).unwrap() == vec![m0, m1]);
                assert_eq!(a.contains(&[m0, m1]).unwrap(), brute, "({m0},{m1})");
            }
        }
    }

    #[test]
    fn cone_examples() {
        let a = gens(&[&[1, 2], &[2, 1]]);
        assert_eq!(a.cone_membership(&[3, 0]).unwrap(), None);
        let a = ex_cm();
        let r = a.cone_membership(&[1, 1]).unwrap().unwrap();
        let lhs: Vec<BigRational> = (0..2)
            .map(|i| {
                a.columns()
                    .iter()
                    .zip(&r)
                    .fold(BigRational::zero(), |acc, (c, x)| acc + x * BigInt::from(c[i]))
            })
            .collect();
        assert_eq!(lhs, vec![BigRational::one(), BigRational::one()]);
        assert!(r.iter().all(|x| !x.is_negative()));
        let e = a.cone_membership(&[5, 0]).unwrap().unwrap();
        let expected = a.columns()[0].clone();
        assert_eq!(a.d_value(&expected).unwrap().d, 1);
        assert!(e.iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn d_values() {
        let v = ex_d6().d_value(&[3, 4]).unwrap();
        assert_eq!((v.d, v.s), (6, 1));
        assert_eq!(ex_d6().degree(&v.witness).unwrap(), vec![18, 24]);
        let v = ex_cm().d_value(&[1, 1]).unwrap();
        assert_eq!((v.d, v.s), (5, 5));
        assert_eq!(gens(&[&[1, 2], &[2, 1]]).d_value(&[3, 0]), Err(Error::NotInCone));
    }

    #[test]
    fn d_value_is_minimal() {
        let a = ex_d6();
        for b in [[3u64, 4], [1, 1], [2, 5], [7, 1]] {
            let v = a.d_value(&b).unwrap();
            assert_eq!(v.d % v.s, 0);
            for d in (v.s..v.d).step_by(v.s as usize) {
                assert!(!a.contains(&scale_vector(&b, d).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn lines() {
        let line = gens(&[&[11, 11], &[17, 17], &[25, 25], &[19, 19]]);
        let l = line.detect_line().unwrap();
        assert_eq!(l.direction, vec![1, 1]);
        assert_eq!(l.multipliers, vec![11, 17, 25, 19]);
        assert_eq!(l.scale, 1);
        assert_eq!(gens(&[&[2, 0], &[0, 2]]).detect_line(), None);
        let l = gens(&[&[2, 4], &[3, 6]]).detect_line().unwrap();
        assert_eq!((l.direction, l.multipliers), (vec![1, 2], vec![2, 3]));
        let l = gens(&[&[4, 8], &[6, 12]]).detect_line().unwrap();
        assert_eq!((l.scale, l.reconstruct()), (2, vec![vec![4, 8], vec![6, 12]]));
        assert_eq!(gens(&[&[3, 4]]).detect_line(), None);
    }

    #[test]
    fn redundant() {
        let a = gens(&[&[2], &[3], &[5]]);
        assert_eq!(a.redundant_generators(), vec![2]);
        assert!(ex_cm().redundant_generators().is_empty());
    }

    #[test]
    fn fibers_match_brute_force() {
        let a = ex_cm();
        let points = brute_points(4, 4);
        for m in [[10u64, 10], [5, 5], [6, 9], [1, 1], [15, 5]] {
            let mut brute: Vec<Vec<u64>> = points
                .iter()
                .filter(|x| a.degree(x).unwrap() == m.to_vec())
                .cloned()
                .collect();
            brute.sort_unstable_by(|x, y| y.cmp(x));
            assert_eq!(a.fiber(&m, 1000).unwrap(), brute);
        }
        assert!(matches!(a.fiber(&[10, 10], 1), Err(Error::ResourceLimit(_))));
    }
}
