//! Betti numbers from squarefree divisor complexes.
//!
//! For `b ∈ ⟨A⟩` let `Δ_b` be the simplicial complex of subsets `F` of the
//! generators with `b - Σ_{j∈F} a_j ∈ ⟨A⟩`. Then
//! `β_{i,b}(k[A]) = dim H̃_{i-1}(Δ_b; k)`. The faces of `Δ_b` are exactly the
//! subsets of supports of points in the fiber of `b`.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::groebner::{Monomial, ReducedGB};
use crate::scalar::Field;
use crate::semigroup::{GeneratorSet, MembershipOracle};

use super::linalg::rank;
use super::{BettiTable, ResolutionOptions};

/// Multidegrees that can carry Betti numbers: images under `A` of the lcm
/// lattice of the leading monomials of a Gröbner basis, sorted by total
/// degree.
pub fn candidate_degrees(a: &GeneratorSet, gb: &ReducedGB, opts: &ResolutionOptions) -> Result<Vec<Vec<u64>>> {
    let p = a.len();
    let leads = gb.leading_monomials();
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut lattice = vec![Monomial::one(p)];
    seen.insert(Monomial::one(p));
    for g in &leads {
        let snapshot = lattice.len();
        for i in 0..snapshot {
            let l = lattice[i].lcm(g);
            if seen.insert(l.clone()) {
                lattice.push(l);
                if lattice.len() > opts.max_degrees {
                    return Err(Error::ResourceLimit(format!(
                        "lcm lattice has more than {} elements",
                        opts.max_degrees
                    )));
                }
            }
        }
    }
    let mut degrees: Vec<Vec<u64>> = lattice
        .iter()
        .map(|m| a.degree(&m.0.iter().map(|&e| e as u64).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    degrees.sort_by(|x, y| {
        let sx: u64 = x.iter().sum();
        let sy: u64 = y.iter().sum();
        sx.cmp(&sy).then_with(|| x.cmp(y))
    });
    degrees.dedup();
    Ok(degrees)
}

/// `out[s] = dim H̃_{s-1}` of the complex generated by the given facets
/// (bit masks over `p` vertices).
pub fn reduced_homology<F: Field>(p: usize, facets: &[u64]) -> Vec<usize> {
    let mut out = vec![0; p + 1];
    if facets.iter().all(|&f| f == 0) {
        out[0] = 1;
        return out;
    }
    if facets.iter().fold(u64::MAX, |acc, &f| acc & f) != 0 {
        return out; // a cone
    }
    let mut is_face = vec![false; 1 << p];
    for &f in facets {
        let mut sub = f;
        loop {
            is_face[sub as usize] = true;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & f;
        }
    }
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); p + 1];
    for (mask, &face) in is_face.iter().enumerate() {
        if face {
            by_size[(mask as u64).count_ones() as usize].push(mask as u64);
        }
    }
    // ranks[s] = rank of the boundary from faces of size s to size s - 1
    let mut ranks = vec![0usize; p + 2];
    for s in 1..=p {
        if by_size[s].is_empty() {
            continue;
        }
        let lower = &by_size[s - 1];
        let index = |m: u64| lower.binary_search(&m).expect("faces are closed under subsets");
        let mut rows = vec![vec![F::zero(); by_size[s].len()]; lower.len()];
        for (c, &face) in by_size[s].iter().enumerate() {
            let mut sign = F::one();
            for v in 0..p {
                if face & (1 << v) != 0 {
                    rows[index(face & !(1 << v))][c] = sign.clone();
                    sign = -sign;
                }
            }
        }
        ranks[s] = rank(rows, by_size[s].len());
    }
    for s in 0..=p {
        out[s] = by_size[s].len() - ranks[s] - ranks[s + 1];
    }
    out
}

/// Maximal faces of `Δ_b = {F : b - Σ_{j∈F} a_j ∈ ⟨A⟩}`.
pub(crate) fn divisor_complex(a: &GeneratorSet, b: &[u64], oracle: &mut MembershipOracle) -> Result<Vec<u64>> {
    let p = a.len();
    let mut is_face = vec![false; 1 << p];
    let mut faces = Vec::new();
    // subsets in order of increasing size, so all facets of F are decided first
    let mut masks: Vec<u64> = (0..1u64 << p).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let closed = (0..p).all(|v| mask & (1 << v) == 0 || is_face[(mask & !(1 << v)) as usize]);
        if !closed {
            continue;
        }
        let mut rest = b.to_vec();
        let mut fits = true;
        for j in (0..p).filter(|&j| mask & (1 << j) != 0) {
            for (r, &x) in rest.iter_mut().zip(a.column(j)) {
                match r.checked_sub(x) {
                    Some(v) => *r = v,
                    None => fits = false,
                }
            }
        }
        if fits && oracle.contains(&rest)? {
            is_face[mask as usize] = true;
            faces.push(mask);
        }
    }
    Ok(faces
        .into_iter()
        .filter(|&f| (0..p).all(|v| f & (1 << v) != 0 || !is_face[(f | 1 << v) as usize]))
        .collect())
}

/// Graded Betti numbers of `k[A]` over `F`.
pub fn betti_from_complexes<F: Field>(
    a: &GeneratorSet,
    gb: &ReducedGB,
    opts: &ResolutionOptions,
) -> Result<BettiTable> {
    super::check_size(a.len(), opts)?;
    let degrees = candidate_degrees(a, gb, opts)?;
    let bound = componentwise_max(&degrees, a.dim());
    let mut oracle = MembershipOracle::new(a, &bound);
    Ok(complexes_over::<F>(a, &degrees, &mut oracle)?.betti)
}

pub(crate) struct ComplexData {
    pub betti: BettiTable,
    /// `Σ_{F ∈ Δ_b} (-1)^{|F|}` for every candidate degree `b`.
    pub euler: Vec<(Vec<u64>, i64)>,
}

pub(crate) fn complexes_over<F: Field>(
    a: &GeneratorSet,
    degrees: &[Vec<u64>],
    oracle: &mut MembershipOracle,
) -> Result<ComplexData> {
    let p = a.len();
    let mut graded: Vec<BTreeMap<Vec<u64>, usize>> = vec![BTreeMap::new(); p + 1];
    let mut euler = Vec::with_capacity(degrees.len());
    for b in degrees {
        let facets = divisor_complex(a, b, oracle)?;
        euler.push((b.clone(), euler_characteristic(p, &facets)));
        for (i, h) in reduced_homology::<F>(p, &facets).into_iter().enumerate() {
            if h > 0 {
                *graded[i].entry(b.clone()).or_default() += h;
            }
        }
    }
    Ok(ComplexData { betti: BettiTable::from_graded(graded), euler })
}

/// `Σ (-1)^{|F|}` over all faces of the complex generated by `facets`.
pub(crate) fn euler_characteristic(p: usize, facets: &[u64]) -> i64 {
    let mut is_face = vec![false; 1 << p];
    for &f in facets {
        let mut sub = f;
        loop {
            is_face[sub as usize] = true;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & f;
        }
    }
    is_face
        .iter()
        .enumerate()
        .filter(|(_, &x)| x)
        .map(|(m, _)| if (m as u64).count_ones().is_multiple_of(2) { 1 } else { -1 })
        .sum()
}

pub(crate) fn componentwise_max(degrees: &[Vec<u64>], dim: usize) -> Vec<u64> {
    let mut bound = vec![0u64; dim];
    for d in degrees {
        for (x, &y) in bound.iter_mut().zip(d) {
            *x = (*x).max(y);
        }
    }
    bound
}
