//! Depth from Koszul homology on a monomial system of parameters.
//!
//! When the cone of `A` is simplicial, the monomials `t^{e_1}, ..., t^{e_d}`
//! of one generator on each extremal ray form a system of parameters of
//! `k[A]`, and `depth k[A] = d - max{i : H_i(θ; k[A]) ≠ 0}`. As a module
//! over `P = k[t^{e_1}, ..., t^{e_d}]` the ring splits along the cosets of
//! `ℤE`, each summand a monomial module generated by the Apéry elements in
//! that coset, so the nonzero Koszul degrees lie in the lcm lattices of
//! those elements.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::IntegerMatrix;
use crate::scalar::Field;
use crate::semigroup::{feasible_nonnegative, GeneratorSet};

use super::betti::reduced_homology;
use super::ResolutionOptions;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulDepth {
    /// Indices of the generators used as parameters.
    pub parameters: Vec<usize>,
    /// Number of Apéry elements with respect to the parameters.
    pub apery: usize,
    /// `dim_k H_i(θ; k[A])` for `i = 0, 1, ...`.
    pub koszul: Vec<usize>,
    pub depth: usize,
}

fn primitive(v: &[u64]) -> Vec<u64> {
    let g = v.iter().fold(0u64, |g, &x| g.gcd(&x));
    v.iter().map(|&x| x / g).collect()
}

/// One generator on each extremal ray, if there are exactly `rank(A)` rays.
pub fn simplicial_parameters(a: &GeneratorSet) -> Result<Option<Vec<usize>>> {
    let d = a.rank_dim();
    let mut rays: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for j in 0..a.len() {
        let dir = primitive(a.column(j));
        let others: Vec<Vec<u64>> = a
            .columns()
            .iter()
            .filter(|c| primitive(c) != dir)
            .cloned()
            .collect();
        let extremal = others.is_empty() || feasible_nonnegative(&others, a.column(j)).is_none();
        if extremal {
            let sum = |k: usize| a.column(k).iter().sum::<u64>();
            rays.entry(dir)
                .and_modify(|best| {
                    if sum(j) < sum(*best) {
                        *best = j
                    }
                })
                .or_insert(j);
        }
    }
    if rays.len() != d {
        return Ok(None);
    }
    let mut params: Vec<usize> = rays.into_values().collect();
    params.sort_unstable();
    Ok(Some(params))
}

/// Rational coordinates `λ = N / den` of vectors in the basis `E`.
struct Coordinates {
    rows: Vec<usize>,
    adj: Vec<Vec<BigInt>>,
    den: BigInt,
}

impl Coordinates {
    fn new(e: &[Vec<u64>], dim: usize) -> Result<Self> {
        let d = e.len();
        // greedily pick d independent coordinates
        let mut rows: Vec<usize> = Vec::new();
        for i in 0..dim {
            let mut trial = rows.clone();
            trial.push(i);
            let m = IntegerMatrix::from_fn(trial.len(), d, |r, c| BigInt::from(e[c][trial[r]]));
            if m.rank() == trial.len() {
                rows = trial;
            }
            if rows.len() == d {
                break;
            }
        }
        let sq = IntegerMatrix::from_fn(d, d, |r, c| BigInt::from(e[c][rows[r]]));
        let mut den = sq.determinant().expect("square");
        if den.is_zero() {
            return Err(Error::Inconsistent("parameters are linearly dependent".into()));
        }
        let mut adj = vec![vec![BigInt::zero(); d]; d];
        for i in 0..d {
            for j in 0..d {
                // adj[i][j] = (-1)^{i+j} det(minor without row j, column i)
                let minor = IntegerMatrix::from_fn(d - 1, d - 1, |r, c| {
                    let rr = if r < j { r } else { r + 1 };
                    let cc = if c < i { c } else { c + 1 };
                    sq.get(rr, cc).clone()
                });
                let m = minor.determinant().expect("square");
                adj[i][j] = if (i + j) % 2 == 0 { m } else { -m };
            }
        }
        if den.is_negative() {
            den = -den;
            for row in adj.iter_mut() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        Ok(Coordinates { rows, adj, den })
    }

    fn numerators(&self, w: &[u64]) -> Vec<BigInt> {
        self.adj
            .iter()
            .map(|row| row.iter().zip(&self.rows).map(|(a, &r)| a * BigInt::from(w[r])).sum())
            .collect()
    }
}

/// Depth of `k[A]` from Koszul homology, or `None` when the cone of `A` is
/// not simplicial.
pub fn koszul_depth<F: Field>(a: &GeneratorSet, opts: &ResolutionOptions) -> Result<Option<KoszulDepth>> {
    let Some(params) = simplicial_parameters(a)? else {
        return Ok(None);
    };
    let d = params.len();
    let e: Vec<Vec<u64>> = params.iter().map(|&j| a.column(j).to_vec()).collect();
    let rest: Vec<Vec<u64>> = (0..a.len()).filter(|j| !params.contains(j)).map(|j| a.column(j).to_vec()).collect();

    let mut member: HashMap<Vec<u64>, bool> = HashMap::new();
    let mut contains = |v: Vec<u64>| -> Result<bool> {
        if let Some(&m) = member.get(&v) {
            return Ok(m);
        }
        let m = a.contains(&v)?;
        member.insert(v, m);
        Ok(m)
    };
    let minus = |w: &[u64], v: &[u64]| -> Option<Vec<u64>> { w.iter().zip(v).map(|(&x, &y)| x.checked_sub(y)).collect() };

    // Apéry elements: no parameter can be subtracted inside the semigroup.
    let mut apery: Vec<Vec<u64>> = Vec::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut queue = VecDeque::from([vec![0u64; a.dim()]]);
    while let Some(w) = queue.pop_front() {
        if !seen.insert(w.clone()) {
            continue;
        }
        let mut is_apery = true;
        for ei in &e {
            if let Some(r) = minus(&w, ei) {
                if contains(r)? {
                    is_apery = false;
                    break;
                }
            }
        }
        if !is_apery {
            continue;
        }
        apery.push(w.clone());
        if apery.len() > opts.max_degrees {
            return Err(Error::ResourceLimit(format!("more than {} Apéry elements", opts.max_degrees)));
        }
        for g in &rest {
            queue.push_back(w.iter().zip(g).map(|(x, y)| x + y).collect());
        }
    }

    let coords = Coordinates::new(&e, a.dim())?;
    let mut cosets: BTreeMap<Vec<BigInt>, Vec<Vec<BigInt>>> = BTreeMap::new();
    for w in &apery {
        let n = coords.numerators(w);
        let key: Vec<BigInt> = n.iter().map(|x| x.mod_floor(&coords.den)).collect();
        cosets.entry(key).or_default().push(n);
    }
    let mut degrees: HashSet<Vec<u64>> = HashSet::new();
    for gens in cosets.values() {
        let mut lattice: Vec<Vec<BigInt>> = Vec::new();
        let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
        for g in gens {
            let snapshot = lattice.len();
            let mut add = vec![g.clone()];
            for l in &lattice[..snapshot] {
                add.push(l.iter().zip(g).map(|(x, y)| x.max(y).clone()).collect());
            }
            for v in add {
                if seen.insert(v.clone()) {
                    lattice.push(v);
                }
            }
            if lattice.len() > opts.max_degrees {
                return Err(Error::ResourceLimit(format!("Koszul lcm lattice exceeds {} elements", opts.max_degrees)));
            }
        }
        for n in lattice {
            let mut b = Vec::with_capacity(a.dim());
            for i in 0..a.dim() {
                let num: BigInt = e.iter().zip(&n).map(|(ej, x)| BigInt::from(ej[i]) * x).sum();
                let (q, r) = num.div_rem(&coords.den);
                if !r.is_zero() {
                    return Err(Error::Inconsistent("Koszul degree outside the lattice".into()));
                }
                b.push(q.to_u64().ok_or_else(|| Error::Overflow("Koszul degree".into()))?);
            }
            degrees.insert(b);
        }
    }

    let mut koszul = vec![0usize; d + 1];
    for b in degrees {
        let mut faces = Vec::new();
        for mask in 0u64..(1 << d) {
            let mut v = Some(b.clone());
            for (i, ei) in e.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    v = v.and_then(|v| minus(&v, ei));
                }
            }
            if let Some(v) = v {
                if contains(v)? {
                    faces.push(mask);
                }
            }
        }
        for (s, h) in reduced_homology::<F>(d, &faces).into_iter().enumerate() {
            koszul[s] += h;
        }
    }
    while koszul.len() > 1 && koszul.last() == Some(&0) {
        koszul.pop();
    }
    let top = koszul.len() - 1;
    Ok(Some(KoszulDepth { parameters: params, apery: apery.len(), koszul, depth: d - top }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;

    fn gens(rows: &[&[u64]]) -> GeneratorSet {
        GeneratorSet::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn parameters() {
        assert_eq!(simplicial_parameters(&gens(&[&[5, 3, 2, 0], &[0, 2, 3, 5]])).unwrap(), Some(vec![0, 3]));
        // a square cone in three dimensions has four rays
        let square = gens(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[1, 1, 0, 0]]);
        assert_eq!(square.rank_dim(), 3);
        assert_eq!(simplicial_parameters(&square).unwrap(), None);
    }

    #[test]
    fn depth_of_examples() {
        let opts = ResolutionOptions::default();
        let cm = koszul_depth::<Fp<32003>>(&gens(&[&[5, 3, 2, 0], &[0, 2, 3, 5]]), &opts).unwrap().unwrap();
        assert_eq!(cm.depth, 2);
        // a free module over the parameters of rank equal to the index 25 / 1
        assert_eq!(cm.koszul, vec![cm.apery]);
        let ncm = koszul_depth::<Fp<32003>>(&gens(&[&[5, 4, 1, 0], &[0, 1, 4, 5]]), &opts).unwrap().unwrap();
        assert_eq!(ncm.depth, 1);
        let numerical = koszul_depth::<Fp<32003>>(&gens(&[&[11, 17, 25, 19]]), &opts).unwrap().unwrap();
        assert_eq!((numerical.depth, numerical.apery), (1, 11));
    }
}
