use serde::Serialize;

use super::buchberger::{buchberger, buchberger_with, Mode, ReducedGB};
use super::monomial::{Binomial, Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::lattice::{from_big, kernel_basis};
use crate::semigroup::GeneratorSet;

/// Counters from [`saturate_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SaturationStats {
    pub passes: usize,
    pub groebner_runs: usize,
}

/// Generators of `I : (x_1 ⋯ x_v)^∞`.
pub fn saturate(gens: &[Binomial]) -> Vec<Binomial> {
    saturate_with(gens, None, Mode::Plain).0
}

/// Saturation at all variables.
///
/// For ideals homogeneous under `weights` (or under the standard grading
/// when no weights are given) each variable `x_i` is handled by a weighted
/// grevlex basis with `x_i` last, dividing every element by its largest
/// `x_i` power. Passes over all variables repeat until one pass changes
/// nothing. Other ideals fall back to eliminating `t` from `I + ⟨t·x_i - 1⟩`.
pub fn saturate_with(
    gens: &[Binomial],
    weights: Option<&[u64]>,
    mode: Mode,
) -> (Vec<Binomial>, SaturationStats) {
    let mut stats = SaturationStats::default();
    let Some(n) = gens.first().map(Binomial::nvars) else {
        return (Vec::new(), stats);
    };
    let unit = vec![1u64; n];
    let w = weights.unwrap_or(&unit);
    if w.len() != n || w.contains(&0) || !gens.iter().all(|g| g.is_homogeneous(w)) {
        return (saturate_by_elimination(gens, n, &mut stats), stats);
    }
    let base = MonomialOrder::grevlex(n).with_weights(w.to_vec()).expect("weights checked above");
    let mut current: Vec<Binomial> = gens.to_vec();
    // Prime-mode divisions may recur even on a saturated ideal, so stability
    // is only trusted once an exact pass divides nothing.
    let mut pass_mode = mode;
    loop {
        stats.passes += 1;
        let mut changed = false;
        for i in 0..n {
            let (gb, _) = buchberger_with(&current, &base.with_last(i), pass_mode);
            stats.groebner_runs += 1;
            current = gb
                .into_elements()
                .into_iter()
                .map(|b| {
                    let e = b.plus.0[i].min(b.minus.0[i]);
                    if e == 0 {
                        return b;
                    }
                    changed = true;
                    let mut f = Monomial::one(n);
                    f.0[i] = e;
                    Binomial { plus: b.plus.div(&f), minus: b.minus.div(&f) }
                })
                .collect();
        }
        if !changed {
            if pass_mode == Mode::Plain {
                return (current, stats);
            }
            pass_mode = Mode::Plain;
        }
    }
}

fn saturate_by_elimination(gens: &[Binomial], n: usize, stats: &mut SaturationStats) -> Vec<Binomial> {
    let mut current: Vec<Binomial> = gens.to_vec();
    stats.passes = 1;
    for i in 0..n {
        let mut ext: Vec<Binomial> = current.iter().map(|b| b.embed(0, n + 1)).collect();
        let mut tx = Monomial::one(n + 1);
        tx.0[i] = 1;
        tx.0[n] = 1;
        ext.push(Binomial { plus: tx, minus: Monomial::one(n + 1) });
        let mut mask = vec![false; n + 1];
        mask[n] = true;
        let order = MonomialOrder::grevlex(n + 1).with_elimination(mask).expect("mask length matches");
        let gb = buchberger(&ext, &order);
        stats.groebner_runs += 1;
        current = gb
            .elements()
            .iter()
            .filter(|b| b.plus.0[n] == 0 && b.minus.0[n] == 0)
            .map(|b| b.restrict(0..n))
            .collect();
    }
    current
}

/// The reduced Gröbner basis of the toric ideal `I_A = ker φ_A`.
///
/// Starts from the binomials of a lattice basis of `ker_ℤ A` and saturates,
/// using the coordinate sums of the generators as a positive grading.
pub fn toric_ideal(a: &GeneratorSet, order: &MonomialOrder) -> Result<ReducedGB> {
    if order.nvars() != a.len() {
        return Err(Error::DimensionMismatch(format!(
            "order on {} variables for {} generators",
            order.nvars(),
            a.len()
        )));
    }
    let kernel = kernel_basis(&a.matrix());
    if kernel.is_empty() {
        return Ok(ReducedGB::zero(order.clone()));
    }
    let mut gens = Vec::with_capacity(kernel.len());
    for v in &kernel.vectors {
        if let Some(b) = Binomial::from_exponent_vector(&from_big(v)?)? {
            gens.push(b.cancel_common_factor());
        }
    }
    let weights = a.column_sums();
    let (sat, _) = saturate_with(&gens, Some(&weights), Mode::Prime);
    Ok(buchberger(&sat, order))
}

/// Whether two binomial lists generate the same ideal.
pub fn ideal_equal(i: &[Binomial], j: &[Binomial], order: &MonomialOrder) -> bool {
    buchberger(i, order) == buchberger(j, order)
}

/// Generators of `⟨gens⟩ ∩ k[x_i : keep[i]]`, via an elimination order.
pub fn eliminate(gens: &[Binomial], keep: &[bool], base: &MonomialOrder) -> Result<Vec<Binomial>> {
    let mask: Vec<bool> = keep.iter().map(|&k| !k).collect();
    let order = base.clone().with_elimination(mask)?;
    let gb = buchberger(gens, &order);
    Ok(gb.into_elements().into_iter().filter(|b| b.uses_only(keep)).collect())
}

/// A minimal generating set of a homogeneous binomial ideal.
///
/// Candidates are scanned by increasing weighted degree and kept when they
/// do not already lie in the ideal of the kept ones. `weights` must grade
/// the ideal positively.
pub fn minimal_generators(gens: &[Binomial], weights: &[u64]) -> Result<Vec<Binomial>> {
    let Some(n) = gens.first().map(Binomial::nvars) else {
        return Ok(Vec::new());
    };
    if weights.len() != n || weights.contains(&0) {
        return Err(Error::InvalidGenerators("weights must be positive".into()));
    }
    if let Some(g) = gens.iter().find(|g| !g.is_homogeneous(weights)) {
        return Err(Error::Inconsistent(format!("{g:?} is not homogeneous")));
    }
    let order = MonomialOrder::grevlex(n).with_weights(weights.to_vec())?;
    let mut sorted: Vec<Binomial> = gens.to_vec();
    sorted.sort_by_key(|b| b.plus.weighted_degree(weights));
    let mut kept: Vec<Binomial> = Vec::new();
    let mut gb = ReducedGB::zero(order.clone());
    for g in sorted {
        if !gb.contains(&g) {
            kept.push(g);
            gb = buchberger(&kept, &order);
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(p: &[u32], m: &[u32]) -> Binomial {
        Binomial::from_exponents(p, m).unwrap()
    }

    fn cubic() -> GeneratorSet {
        GeneratorSet::from_rows(&[vec![3, 2, 1, 0], vec![0, 1, 2, 3]]).unwrap()
    }

    fn cubic_quadrics() -> Vec<Binomial> {
        vec![b(&[1, 0, 1, 0], &[0, 2, 0, 0]), b(&[0, 1, 0, 1], &[0, 0, 2, 0]), b(&[1, 0, 0, 1], &[0, 1, 1, 0])]
    }

    #[test]
    fn toric_examples() {
        let order = MonomialOrder::grevlex(2);
        let gb = toric_ideal(&GeneratorSet::from_rows(&[vec![2, 3]]).unwrap(), &order).unwrap();
        assert_eq!(gb.elements(), &[b(&[3, 0], &[0, 2])]);

        let single = GeneratorSet::from_rows(&[vec![3], vec![4]]).unwrap();
        assert!(toric_ideal(&single, &MonomialOrder::grevlex(1)).unwrap().is_empty());

        let order = MonomialOrder::grevlex(4);
        let gb = toric_ideal(&cubic(), &order).unwrap();
        assert_eq!(gb, buchberger(&cubic_quadrics(), &order));
        assert_eq!(gb.len(), 3);
        assert!(toric_ideal(&cubic(), &MonomialOrder::grevlex(3)).is_err());
    }

    #[test]
    fn toric_elements_lie_in_the_kernel() {
        let a = GeneratorSet::from_rows(&[vec![7, 6, 3, 0], vec![0, 2, 8, 9]]).unwrap();
        let gb = toric_ideal(&a, &MonomialOrder::grevlex(4)).unwrap();
        for e in gb.elements() {
            let v = e.exponent_vector();
            for row in a.rows() {
                assert_eq!(row.iter().zip(&v).map(|(&r, &x)| r as i64 * x).sum::<i64>(), 0);
            }
            assert!(e.common_factor().is_one());
        }
    }

    #[test]
    fn toric_is_complete_on_small_fibers() {
        // every binomial x^u - x^v with A u = A v and small u, v reduces to zero
        let a = GeneratorSet::from_rows(&[vec![5, 3, 2, 0], vec![0, 2, 3, 5]]).unwrap();
        let gb = toric_ideal(&a, &MonomialOrder::grevlex(4)).unwrap();
        for m0 in (0..=20).step_by(1) {
            for m1 in 0..=20 {
                let fiber = a.fiber(&[m0, m1], 10_000).unwrap();
                for x in &fiber {
                    for y in &fiber {
                        let u: Vec<u32> = x.iter().map(|&e| e as u32).collect();
                        let v: Vec<u32> = y.iter().map(|&e| e as u32).collect();
                        if let Some(w) = Binomial::from_exponents(&u, &v) {
                            assert!(gb.contains(&w), "{w:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn saturation_examples() {
        let order = MonomialOrder::grevlex(4);
        let sat = saturate(&cubic_quadrics());
        assert!(ideal_equal(&sat, &cubic_quadrics(), &order));

        let sat = saturate(&[b(&[2, 0], &[1, 1])]);
        assert!(ideal_equal(&sat, &[b(&[1, 0], &[0, 1])], &MonomialOrder::grevlex(2)));

        assert!(saturate(&[]).is_empty());

        // x^3 - y is not homogeneous: elimination fallback
        let sat = saturate(&[b(&[3, 1], &[0, 2])]);
        assert!(ideal_equal(&sat, &[b(&[3, 0], &[0, 1])], &MonomialOrder::grevlex(2)));
    }

    #[test]
    fn ideal_equality() {
        let order = MonomialOrder::grevlex(4);
        let mut more = cubic_quadrics();
        more.push(b(&[2, 0, 1, 0], &[1, 2, 0, 0]));
        assert!(ideal_equal(&cubic_quadrics(), &more, &order));
        let o2 = MonomialOrder::grevlex(2);
        assert!(!ideal_equal(&[b(&[3, 0], &[0, 2])], &[b(&[1, 0], &[0, 1])], &o2));
    }

    #[test]
    fn scaling_does_not_change_the_ideal() {
        let order = MonomialOrder::grevlex(4);
        let base = toric_ideal(&cubic(), &order).unwrap();
        for k in 2..5 {
            assert_eq!(toric_ideal(&cubic().scaled(k).unwrap(), &order).unwrap(), base);
        }
    }

    #[test]
    fn elimination_and_minimal_generators() {
        let order = MonomialOrder::grevlex(4);
        let gb = toric_ideal(&cubic(), &order).unwrap();
        // (3,0) and (0,3) are independent, so nothing survives in k[x1, x4]
        let keep = vec![true, false, false, true];
        assert!(eliminate(gb.elements(), &keep, &order).unwrap().is_empty());
        let keep = vec![true, true, true, false];
        let sub = GeneratorSet::from_rows(&[vec![3, 2, 1], vec![0, 1, 2]]).unwrap();
        let expect = toric_ideal(&sub, &MonomialOrder::grevlex(3)).unwrap();
        let got: Vec<Binomial> =
            eliminate(gb.elements(), &keep, &order).unwrap().iter().map(|e| e.restrict(0..3)).collect();
        assert!(ideal_equal(&got, expect.elements(), &MonomialOrder::grevlex(3)));

        let mut gens = cubic_quadrics();
        gens.push(b(&[2, 0, 1, 0], &[1, 2, 0, 0]));
        let min = minimal_generators(&gens, &cubic().column_sums()).unwrap();
        assert_eq!(min.len(), 3);
    }
}
