//! Minimal free resolutions of semigroup rings and the invariants read off
//! them.
//!
//! Betti numbers are computed along two independent routes: an explicit
//! minimal free resolution built degree by degree ([`free_resolution`]), and
//! the reduced homology of squarefree divisor complexes
//! ([`betti_from_complexes`]). Depth is computed from the resolution through
//! the Auslander–Buchsbaum formula and, for simplicial semigroups, also
//! directly from Koszul homology on a monomial system of parameters.

mod betti;
mod complex;
mod depth;
pub mod linalg;

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::gluing::{GluingCertificate, GluingProblem, SplitKind, Verdict};
use crate::groebner::{toric_ideal, MonomialOrder, OrderKind, ReducedGB};
use crate::scalar::{Field, Fp};
use crate::semigroup::GeneratorSet;

pub use betti::{betti_from_complexes, candidate_degrees, reduced_homology};
pub use complex::{free_resolution, verify_steps, FreeResolution, ResolutionStep, Term};
pub use depth::{koszul_depth, simplicial_parameters, KoszulDepth};

/// Coefficient field for homological computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum FieldChoice {
    #[default]
    Fp32003,
    Rational,
}

impl FieldChoice {
    pub fn name(self) -> String {
        match self {
            FieldChoice::Fp32003 => Fp::<32003>::name(),
            FieldChoice::Rational => BigRational::name(),
        }
    }
}

impl FromStr for FieldChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "32003" | "fp" | "gf32003" | "fp32003" | "gf(32003)" => Ok(FieldChoice::Fp32003),
            "qq" | "q" | "rational" | "rationals" => Ok(FieldChoice::Rational),
            _ => Err(format!("unknown field '{s}' (expected 32003 or QQ)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ResolutionOptions {
    pub field: FieldChoice,
    pub order: OrderKind,
    /// Largest number of variables accepted.
    pub max_vars: usize,
    /// Largest number of generators in one homological degree.
    pub max_columns: usize,
    /// Largest number of candidate multidegrees.
    pub max_degrees: usize,
    /// Largest fiber enumerated in one multidegree.
    pub max_fiber: usize,
}

impl Default for ResolutionOptions {
    fn default() -> Self {
        ResolutionOptions {
            field: FieldChoice::Fp32003,
            order: OrderKind::Grevlex,
            max_vars: 12,
            max_columns: 2000,
            max_degrees: 200_000,
            max_fiber: 100_000,
        }
    }
}

pub(crate) fn check_size(p: usize, opts: &ResolutionOptions) -> Result<()> {
    if p > opts.max_vars || p > 63 {
        return Err(Error::ResourceLimit(format!(
            "{p} variables exceed the limit of {}",
            opts.max_vars.min(63)
        )));
    }
    Ok(())
}

/// Total Betti numbers `β_0, ..., β_pd` with their multigraded refinement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub betti: Vec<usize>,
    /// `graded[i]` lists `(degree, β_{i,degree})` by increasing degree.
    pub graded: Vec<Vec<(Vec<u64>, usize)>>,
}

impl BettiTable {
    /// A table with totals only. Trailing zeros are dropped.
    pub fn from_totals(betti: &[usize]) -> Self {
        let mut betti = betti.to_vec();
        while betti.len() > 1 && betti.last() == Some(&0) {
            betti.pop();
        }
        if betti.is_empty() {
            betti.push(0);
        }
        BettiTable { betti, graded: Vec::new() }
    }

    pub fn from_graded(graded: Vec<BTreeMap<Vec<u64>, usize>>) -> Self {
        let mut graded: Vec<Vec<(Vec<u64>, usize)>> =
            graded.into_iter().map(|m| m.into_iter().filter(|(_, c)| *c > 0).collect()).collect();
        while graded.len() > 1 && graded.last().is_some_and(Vec::is_empty) {
            graded.pop();
        }
        let betti = graded.iter().map(|g| g.iter().map(|(_, c)| c).sum()).collect();
        BettiTable { betti, graded }
    }

    pub fn pd(&self) -> usize {
        self.betti.len() - 1
    }

    pub fn get(&self, i: usize) -> usize {
        self.betti.get(i).copied().unwrap_or(0)
    }

    /// The last nonzero Betti number.
    pub fn last(&self) -> usize {
        *self.betti.last().unwrap_or(&0)
    }
}

/// The two summation forms of the Betti numbers of a gluing:
/// `Σ_{i'} βA_{i'} (βB_{i-i'} + βB_{i-i'-1})` and the same with `A` and `B`
/// exchanged.
pub fn betti_gluing_forms(a: &[usize], b: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let form = |x: &[usize], y: &[usize]| -> Vec<usize> {
        let len = x.len() + y.len();
        (0..len)
            .map(|i| {
                (0..=i.min(x.len().saturating_sub(1)))
                    .map(|ip| {
                        let at = |k: isize| if k >= 0 { y.get(k as usize).copied().unwrap_or(0) } else { 0 };
                        let j = i as isize - ip as isize;
                        x[ip] * (at(j) + at(j - 1))
                    })
                    .sum()
            })
            .collect()
    };
    (form(a, b), form(b, a))
}

/// Predicted Betti numbers of a gluing of `k[A]` and `k[B]`.
pub fn betti_gluing_formula(a: &BettiTable, b: &BettiTable) -> BettiTable {
    let (first, second) = betti_gluing_forms(&a.betti, &b.betti);
    assert_eq!(first, second, "the two summation forms must agree");
    BettiTable::from_totals(&first)
}

/// Dimension, depth and Cohen–Macaulayness of `k[A]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologicalInvariants {
    pub nvars: usize,
    pub dim: usize,
    pub pd: usize,
    /// `nvars - pd`.
    pub depth: usize,
    /// Depth from Koszul homology, when the semigroup is simplicial.
    pub koszul_depth: Option<usize>,
    pub is_cm: bool,
    pub cm_type: usize,
    pub betti: BettiTable,
    pub field: String,
}

impl HomologicalInvariants {
    /// `depth + pd = nvars`, with the Koszul depth when available.
    pub fn auslander_buchsbaum(&self) -> bool {
        self.koszul_depth.unwrap_or(self.depth) + self.pd == self.nvars
    }
}

/// A minimal free resolution summarized with both Betti routes.
#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub betti: BettiTable,
    /// Betti numbers from squarefree divisor complexes.
    pub betti_complexes: BettiTable,
    /// `(rank source, rank target)` of each differential.
    pub shapes: Vec<(usize, usize)>,
    pub checks: Vec<Check>,
    pub field: String,
    pub order: String,
}

fn toric(a: &GeneratorSet, opts: &ResolutionOptions) -> Result<ReducedGB> {
    check_size(a.len(), opts)?;
    toric_ideal(a, &MonomialOrder::new(opts.order, a.len()))
}

fn resolution_over<F: Field>(a: &GeneratorSet, gb: &ReducedGB, opts: &ResolutionOptions) -> Result<ResolutionReport> {
    let res = free_resolution::<F>(gb, a, opts)?;
    Ok(ResolutionReport {
        shapes: res.steps.iter().map(|s| (s.rank_source(), s.rank_target())).collect(),
        betti: res.betti,
        betti_complexes: res.betti_complexes,
        checks: res.checks,
        field: res.field,
        order: gb.order().describe(),
    })
}

/// Resolves `k[A]` and cross-checks the Betti numbers along both routes.
pub fn resolve(a: &GeneratorSet, opts: &ResolutionOptions) -> Result<ResolutionReport> {
    let gb = toric(a, opts)?;
    match opts.field {
        FieldChoice::Fp32003 => resolution_over::<Fp<32003>>(a, &gb, opts),
        FieldChoice::Rational => resolution_over::<BigRational>(a, &gb, opts),
    }
}

/// Betti numbers of `k[A]` from its minimal free resolution.
pub fn betti_numbers(a: &GeneratorSet, opts: &ResolutionOptions) -> Result<BettiTable> {
    let report = resolve(a, opts)?;
    match report.checks.iter().find(|c| !c.passed) {
        Some(c) => Err(Error::Inconsistent(format!("{}: {}", c.name, c.detail))),
        None => Ok(report.betti),
    }
}

pub fn invariants(a: &GeneratorSet, opts: &ResolutionOptions) -> Result<HomologicalInvariants> {
    let betti = betti_numbers(a, opts)?;
    let koszul_depth = match opts.field {
        FieldChoice::Fp32003 => koszul_depth::<Fp<32003>>(a, opts)?,
        FieldChoice::Rational => koszul_depth::<BigRational>(a, opts)?,
    };
    let nvars = a.len();
    let pd = betti.pd();
    let depth = nvars.checked_sub(pd).ok_or_else(|| Error::Inconsistent("pd exceeds the number of variables".into()))?;
    let dim = a.rank_dim();
    Ok(HomologicalInvariants {
        nvars,
        dim,
        pd,
        depth,
        koszul_depth: koszul_depth.map(|k| k.depth),
        is_cm: depth == dim,
        cm_type: betti.last(),
        betti,
        field: opts.field.name(),
    })
}

/// Homological comparison of a gluing with its parts.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub a: HomologicalInvariants,
    pub b: HomologicalInvariants,
    pub c: HomologicalInvariants,
    pub predicted: BettiTable,
    pub checks: Vec<Check>,
}

/// Compares `β(k[C])` computed directly with the gluing formula, and checks
/// the projective dimension, depth and Cohen–Macaulay relations.
pub fn verify_gluing_homology(
    problem: &GluingProblem,
    cert: &GluingCertificate,
    opts: &ResolutionOptions,
) -> Result<HomologyReport> {
    if cert.verdict != Verdict::Gluing {
        return Err(Error::NotApplicable("the certificate is not a verified gluing".into()));
    }
    let ia = invariants(&problem.a, opts)?;
    let ib = invariants(&problem.b, opts)?;
    let ic = invariants(&problem.c()?, opts)?;
    let predicted = betti_gluing_formula(&ia.betti, &ib.betti);
    let mut checks = vec![
        Check::new(
            "beta(C) matches the gluing formula",
            ic.betti.betti == predicted.betti,
            format!("computed {:?}, predicted {:?}", ic.betti.betti, predicted.betti),
        ),
        Check::new(
            "pd(C) = pd(A) + pd(B) + 1",
            ic.pd == ia.pd + ib.pd + 1,
            format!("{} = {} + {} + 1", ic.pd, ia.pd, ib.pd),
        ),
    ];
    for (name, inv) in [("A", &ia), ("B", &ib), ("C", &ic)] {
        checks.push(Check::new(
            format!("Auslander-Buchsbaum for k[{name}]"),
            inv.auslander_buchsbaum(),
            format!("depth {:?} + pd {} vs {} variables", inv.koszul_depth.unwrap_or(inv.depth), inv.pd, inv.nvars),
        ));
    }
    if !matches!(SplitKind::of(&problem.b), SplitKind::General) {
        checks.push(Check::new("dim k[C] = dim k[A]", ic.dim == ia.dim, format!("{} vs {}", ic.dim, ia.dim)));
        checks.push(Check::new("depth k[C] = depth k[A]", ic.depth == ia.depth, format!("{} vs {}", ic.depth, ia.depth)));
        checks.push(Check::new(
            "k[C] Cohen-Macaulay iff k[A] is",
            ic.is_cm == ia.is_cm,
            format!("C: {}, A: {}", ic.is_cm, ia.is_cm),
        ));
    }
    Ok(HomologyReport { a: ia, b: ib, c: ic, predicted, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(rows: &[&[u64]]) -> GeneratorSet {
        GeneratorSet::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn formula_examples() {
        let a = BettiTable::from_totals(&[1, 3, 2]);
        let b = BettiTable::from_totals(&[1, 5, 5, 1]);
        assert_eq!(betti_gluing_formula(&a, &b).betti, vec![1, 9, 30, 48, 39, 15, 2]);
        let one = BettiTable::from_totals(&[1]);
        assert_eq!(betti_gluing_formula(&BettiTable::from_totals(&[1, 5, 6, 2]), &one).betti, vec![1, 6, 11, 8, 2]);
        assert_eq!(betti_gluing_formula(&one, &one).betti, vec![1, 1]);
    }

    #[test]
    fn small_resolutions() {
        let opts = ResolutionOptions::default();
        let r = resolve(&gens(&[&[5, 3, 2, 0], &[0, 2, 3, 5]]), &opts).unwrap();
        assert_eq!(r.betti.betti, vec![1, 3, 2]);
        assert!(r.checks.iter().all(|c| c.passed), "{:?}", r.checks);
        let r = resolve(&gens(&[&[11, 17, 25, 19]]), &opts).unwrap();
        assert_eq!(r.betti.betti, vec![1, 5, 5, 1]);
        assert!(r.checks.iter().all(|c| c.passed), "{:?}", r.checks);
        let r = resolve(&gens(&[&[3], &[4]]), &opts).unwrap();
        assert_eq!(r.betti.betti, vec![1]);
    }

    #[test]
    fn invariants_examples() {
        let opts = ResolutionOptions::default();
        let cm = invariants(&gens(&[&[5, 3, 2, 0], &[0, 2, 3, 5]]), &opts).unwrap();
        assert_eq!((cm.dim, cm.pd, cm.depth, cm.is_cm, cm.cm_type), (2, 2, 2, true, 2));
        assert_eq!(cm.koszul_depth, Some(2));
        let ncm = invariants(&gens(&[&[5, 4, 1, 0], &[0, 1, 4, 5]]), &opts).unwrap();
        assert_eq!(ncm.betti.betti, vec![1, 5, 6, 2]);
        assert_eq!((ncm.dim, ncm.pd, ncm.depth, ncm.is_cm), (2, 3, 1, false));
        assert_eq!(ncm.koszul_depth, Some(1));
        let single = invariants(&gens(&[&[3], &[4]]), &opts).unwrap();
        assert_eq!((single.dim, single.depth, single.is_cm), (1, 1, true));
    }

    #[test]
    fn field_parsing() {
        assert_eq!("QQ".parse::<FieldChoice>().unwrap(), FieldChoice::Rational);
        assert_eq!("32003".parse::<FieldChoice>().unwrap(), FieldChoice::Fp32003);
        assert!("7".parse::<FieldChoice>().is_err());
    }
}
