use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::Serialize;

use super::monomial::{Binomial, Monomial, MonomialOrder, OrderKind};

/// What Buchberger's algorithm may assume about the ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Ordinary Buchberger: the result generates exactly the input ideal.
    Plain,
    /// New basis elements are divided by the gcd of their two monomials.
    ///
    /// Only sound for ideals contained in a prime binomial ideal without
    /// monomials (a toric ideal), and then the result generates an ideal
    /// between the input ideal and that prime.
    Prime,
}

/// Counters reported by [`buchberger_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub pairs_skipped: usize,
    /// Some element was divided by a common monomial factor (prime mode).
    pub divided: bool,
}

/// The reduced Gröbner basis of a binomial ideal under a fixed order.
///
/// Elements are oriented with the leading monomial as `plus`, have fully
/// reduced tails, and are sorted by increasing leading monomial, so two
/// bases of the same ideal under the same order compare equal.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct ReducedGB {
    order: MonomialOrder,
    elements: Vec<Binomial>,
}

impl ReducedGB {
    /// The basis of the zero ideal.
    pub fn zero(order: MonomialOrder) -> Self {
        ReducedGB { order, elements: Vec::new() }
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Binomial> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.order.nvars()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|b| b.plus.clone()).collect()
    }

    /// Normal form of a monomial: the unique standard monomial congruent to it.
    pub fn reduce_monomial(&self, m: &Monomial) -> Monomial {
        let masks: Vec<u64> = self.elements.iter().map(|b| b.plus.support_mask()).collect();
        reduce_monomial(&self.elements, &masks, m.clone())
    }

    /// Remainder of `w` modulo the basis; `None` means `w` lies in the ideal.
    pub fn normal_form(&self, w: &Binomial) -> Option<Binomial> {
        let masks: Vec<u64> = self.elements.iter().map(|b| b.plus.support_mask()).collect();
        let p = reduce_monomial(&self.elements, &masks, w.plus.clone());
        let q = reduce_monomial(&self.elements, &masks, w.minus.clone());
        Binomial::new(p, q).map(|b| b.oriented(&self.order))
    }

    pub fn contains(&self, w: &Binomial) -> bool {
        self.normal_form(w).is_none()
    }
}

impl std::fmt::Debug for ReducedGB {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReducedGB")
            .field("order", &self.order)
            .field("elements", &self.elements)
            .finish()
    }
}

/// Rewrites `m` with the basis until no leading monomial divides it.
///
/// Each step replaces `m` by a strictly smaller monomial, so this stops.
fn reduce_monomial(basis: &[Binomial], masks: &[u64], mut m: Monomial) -> Monomial {
    'outer: loop {
        let mm = m.support_mask();
        for (g, &mask) in basis.iter().zip(masks) {
            if mask & !mm == 0 && g.plus.divides(&m) {
                m = m.div(&g.plus).mul(&g.minus);
                continue 'outer;
            }
        }
        return m;
    }
}

/// A key whose lexicographic order agrees with `order` on monomials.
pub(crate) fn sort_key(order: &MonomialOrder, m: &Monomial) -> Vec<i64> {
    let mut key = Vec::with_capacity(m.nvars() + 2);
    if let Some(mask) = &order.elimination {
        key.push(m.0.iter().zip(mask).filter(|(_, &e)| e).map(|(&x, _)| x as i64).sum());
    }
    let graded = || match &order.weights {
        Some(w) => m.weighted_degree(w) as i64,
        None => m.degree() as i64,
    };
    match order.kind {
        OrderKind::Lex => key.extend(order.perm.iter().map(|&i| m.0[i] as i64)),
        OrderKind::Grlex => {
            key.push(graded());
            key.extend(order.perm.iter().map(|&i| m.0[i] as i64));
        }
        OrderKind::Grevlex => {
            key.push(graded());
            key.extend(order.perm.iter().rev().map(|&i| -(m.0[i] as i64)));
        }
    }
    key
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Binomial], order: &MonomialOrder) -> ReducedGB {
    buchberger_with(gens, order, Mode::Plain).0
}

/// Buchberger's algorithm for pure-difference binomials.
///
/// S-pairs are processed by increasing lcm (normal strategy, ties broken by
/// index). Pairs with coprime leading monomials are skipped, as are pairs
/// `(i, j)` for which some `k` has a leading monomial dividing the lcm while
/// both `lcm(i, k)` and `lcm(j, k)` are proper divisors of it.
pub fn buchberger_with(gens: &[Binomial], order: &MonomialOrder, mode: Mode) -> (ReducedGB, GbStats) {
    let mut stats = GbStats::default();
    let mut input: Vec<Binomial> = gens.to_vec();
    loop {
        let mut state = State { order, mode, basis: Vec::new(), masks: Vec::new(), pairs: BinaryHeap::new() };
        for g in &input {
            state.insert_reduced(g.clone(), &mut stats);
        }
        while let Some(Reverse((_, i, j))) = state.pairs.pop() {
            if state.chain_criterion(i, j) {
                stats.pairs_skipped += 1;
                continue;
            }
            stats.pairs_reduced += 1;
            let s = state.s_binomial(i, j);
            if let Some(s) = s {
                state.insert_reduced(s, &mut stats);
            }
        }
        let (elements, redo) = state.interreduce(&mut stats);
        if !redo {
            return (ReducedGB { order: order.clone(), elements }, stats);
        }
        input = elements;
    }
}

struct State<'a> {
    order: &'a MonomialOrder,
    mode: Mode,
    basis: Vec<Binomial>,
    masks: Vec<u64>,
    pairs: BinaryHeap<Reverse<(Vec<i64>, usize, usize)>>,
}

impl State<'_> {
    /// Reduces `w` by the current basis and adds the remainder, if any.
    fn insert_reduced(&mut self, w: Binomial, stats: &mut GbStats) {
        let p = reduce_monomial(&self.basis, &self.masks, w.plus);
        let q = reduce_monomial(&self.basis, &self.masks, w.minus);
        let Some(mut b) = Binomial::new(p, q) else { return };
        if self.mode == Mode::Prime {
            let g = b.common_factor();
            if !g.is_one() {
                stats.divided = true;
                b = b.cancel_common_factor();
                // the quotient may now be reducible again
                let p = reduce_monomial(&self.basis, &self.masks, b.plus);
                let q = reduce_monomial(&self.basis, &self.masks, b.minus);
                match Binomial::new(p, q) {
                    Some(c) => return self.insert_reduced(c, stats),
                    None => return,
                }
            }
        }
        let b = b.oriented(self.order);
        let k = self.basis.len();
        for i in 0..k {
            if self.basis[i].plus.is_coprime(&b.plus) {
                continue;
            }
            let l = self.basis[i].plus.lcm(&b.plus);
            self.pairs.push(Reverse((sort_key(self.order, &l), i, k)));
        }
        self.masks.push(b.plus.support_mask());
        self.basis.push(b);
    }

    fn chain_criterion(&self, i: usize, j: usize) -> bool {
        let li = &self.basis[i].plus;
        let lj = &self.basis[j].plus;
        let l = li.lcm(lj);
        let lm = l.support_mask();
        self.basis.iter().enumerate().any(|(k, g)| {
            k != i
                && k != j
                && self.masks[k] & !lm == 0
                && g.plus.divides(&l)
                && li.lcm(&g.plus) != l
                && lj.lcm(&g.plus) != l
        })
    }

    fn s_binomial(&self, i: usize, j: usize) -> Option<Binomial> {
        let (f, g) = (&self.basis[i], &self.basis[j]);
        let l = f.plus.lcm(&g.plus);
        let a = l.div(&f.plus).mul(&f.minus);
        let b = l.div(&g.plus).mul(&g.minus);
        Binomial::new(a, b)
    }

    /// Minimal, tail-reduced, sorted basis. The flag asks for another round
    /// because prime mode divided a reduced element.
    fn interreduce(self, stats: &mut GbStats) -> (Vec<Binomial>, bool) {
        let order = self.order;
        let mut idx: Vec<usize> = (0..self.basis.len()).collect();
        idx.sort_by(|&a, &b| order.cmp(&self.basis[a].plus, &self.basis[b].plus).then(a.cmp(&b)));
        let mut kept: Vec<Binomial> = Vec::new();
        for i in idx {
            let b = &self.basis[i];
            if kept.iter().all(|k| !k.plus.divides(&b.plus)) {
                kept.push(b.clone());
            }
        }
        let masks: Vec<u64> = kept.iter().map(|b| b.plus.support_mask()).collect();
        let mut redo = false;
        let mut out = Vec::with_capacity(kept.len());
        for b in &kept {
            let tail = reduce_monomial(&kept, &masks, b.minus.clone());
            let mut r = Binomial { plus: b.plus.clone(), minus: tail };
            if self.mode == Mode::Prime && !r.common_factor().is_one() {
                r = r.cancel_common_factor();
                stats.divided = true;
                redo = true;
            }
            debug_assert!(redo || order.cmp(&r.plus, &r.minus) == Ordering::Greater);
            out.push(r);
        }
        if redo {
            return (out, true);
        }
        (out, false)
    }
}
