//! Gluing of affine semigroups.
//!
//! `⟨C⟩` with `C = k1·A ∪ k2·B` is a gluing of `⟨A⟩` and `⟨B⟩` when
//! `I_C = I_A + I_B + ⟨ρ⟩` for a single binomial `ρ` mixing the two blocks of
//! variables. This module decides gluability when `B` is a single point or
//! lies on a line, constructs `k1`, `k2` and `ρ` in those cases, and verifies
//! any proposed `ρ` against an exact computation of `I_C`.

use num_integer::Integer;
use serde::Serialize;

use crate::check::{all_passed, Check};
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, eliminate, ideal_equal, split_names, toric_ideal, Binomial, Monomial,
    MonomialOrder, OrderKind, ReducedGB,
};
use crate::lattice::s_value;
use crate::resolution::{invariants, ResolutionOptions};
use crate::semigroup::{scale_vector, GeneratorSet, LineForm};

/// `(A, B, k1, k2)` with the scaling factors made coprime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingProblem {
    pub a: GeneratorSet,
    pub b: GeneratorSet,
    pub k1: u64,
    pub k2: u64,
    /// The factors as given, before dividing out their gcd.
    pub original_k: (u64, u64),
}

impl GluingProblem {
    pub fn new(a: GeneratorSet, b: GeneratorSet, k1: u64, k2: u64) -> Result<Self> {
        if k1 == 0 || k2 == 0 {
            return Err(Error::InvalidScaling { k1, k2 });
        }
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch(format!(
                "A lives in dimension {} but B in dimension {}",
                a.dim(),
                b.dim()
            )));
        }
        let g = k1.gcd(&k2);
        Ok(GluingProblem { a, b, k1: k1 / g, k2: k2 / g, original_k: (k1, k2) })
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    /// `C = k1·A ∪ k2·B`, generators of `A` first.
    pub fn c(&self) -> Result<GeneratorSet> {
        GeneratorSet::union_scaled(&self.a, self.k1, &self.b, self.k2)
    }

    /// Variable names `x1..xp, y1..yq`.
    pub fn names(&self) -> Vec<String> {
        split_names(self.p(), self.q())
    }

    /// The binomial `y^β - x^α` in the variables of `C`.
    pub fn binomial(&self, x: &[u64], y: &[u64]) -> Result<Binomial> {
        if x.len() != self.p() || y.len() != self.q() {
            return Err(Error::DimensionMismatch(format!(
                "binomial with {} x-exponents and {} y-exponents for p = {}, q = {}",
                x.len(),
                y.len(),
                self.p(),
                self.q()
            )));
        }
        let conv = |v: u64| u32::try_from(v).map_err(|_| Error::Overflow(format!("exponent {v}")));
        let mut plus = vec![0u32; self.p() + self.q()];
        let mut minus = vec![0u32; self.p() + self.q()];
        for (i, &e) in y.iter().enumerate() {
            plus[self.p() + i] = conv(e)?;
        }
        for (i, &e) in x.iter().enumerate() {
            minus[i] = conv(e)?;
        }
        Binomial::new(Monomial(plus), Monomial(minus))
            .ok_or_else(|| Error::InvalidGenerators("the binomial is zero".into()))
    }
}

/// Shape of `B` relevant to the gluing criteria.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplitKind {
    /// `q = 1`.
    SimpleSplit { point: Vec<u64> },
    /// `q ≥ 2` and rank 1.
    Line(LineForm),
    General,
}

impl SplitKind {
    pub fn of(b: &GeneratorSet) -> Self {
        if b.len() == 1 {
            return SplitKind::SimpleSplit { point: b.column(0).to_vec() };
        }
        match b.detect_line() {
            Some(l) => SplitKind::Line(l),
            None => SplitKind::General,
        }
    }

    /// The vector whose multiples must meet the other semigroup.
    pub fn direction(&self) -> Option<&[u64]> {
        match self {
            SplitKind::SimpleSplit { point } => Some(point),
            SplitKind::Line(l) => Some(&l.direction),
            SplitKind::General => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SplitKind::SimpleSplit { .. } => "simple split",
            SplitKind::Line(_) => "line",
            SplitKind::General => "general",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Gluing,
    NotGluing,
    Unknown,
}

/// Answer of [`can_glue`] and [`decide_n2`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", content = "reason", rename_all = "snake_case")]
pub enum Gluability {
    Yes(String),
    No(String),
    Unknown(String),
}

impl Gluability {
    pub fn is_yes(&self) -> bool {
        matches!(self, Gluability::Yes(_))
    }
}

/// Numbers behind a constructed `ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub split: String,
    /// `d(A, b)` for the point or line direction `b`.
    pub d: u64,
    /// `s(A, b)`.
    pub s: u64,
    /// `d / gcd(d, k2)` (simple split).
    pub delta: Option<u64>,
    /// `s(A, k2·b)` (simple split).
    pub r: Option<u64>,
    /// `x ∈ ℕ^p` with `A·x = d·b`.
    pub d_coefficients: Vec<u64>,
    /// `v ∈ ℕ^q` with `Σ v_j u_j = k1` (line).
    pub v_coefficients: Option<Vec<u64>>,
    /// Level of `ρ` (line).
    pub level: Option<i64>,
    /// Common factor of `k1` and the point divided out before computing
    /// (simple split), or the gcd of `k1` and `k2·scale` (line).
    pub folded: u64,
}

/// Outcome of building and/or verifying a gluing.
#[derive(Clone, Debug, Serialize)]
pub struct GluingCertificate {
    pub k1: u64,
    pub k2: u64,
    pub original_k: (u64, u64),
    pub split: String,
    pub rho: Binomial,
    pub rho_text: String,
    pub verdict: Verdict,
    pub witnesses: Option<Witnesses>,
    pub order: String,
    /// Reduced Gröbner basis of `I_C` (only after verification).
    pub gb_c: Option<ReducedGB>,
    /// Elements completing `I_A + I_B + ⟨ρ⟩` to a generating set of `I_C`.
    pub extra_generators: Vec<Binomial>,
    pub extra_generators_text: Vec<String>,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl GluingCertificate {
    pub fn is_gluing(&self) -> bool {
        self.verdict == Verdict::Gluing
    }
}

/// Decides whether some `k1, k2` make `k1·A ∪ k2·B` a gluing.
///
/// Known answers: always in dimension 1; when one side is a point or a line
/// exactly when that side's direction lies in the cone of the other; never
/// when both sides are nondegenerate and Cohen–Macaulay in dimension at least
/// 2. Everything else is `Unknown`.
pub fn can_glue(a: &GeneratorSet, b: &GeneratorSet) -> Result<Gluability> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "A lives in dimension {} but B in dimension {}",
            a.dim(),
            b.dim()
        )));
    }
    if a.dim() == 1 {
        return Ok(Gluability::Yes(
            "in dimension 1 take k1 in <B> and k2 in <A>".into(),
        ));
    }
    let mut degenerate_sides = Vec::new();
    for (name, side, other) in [("B", b, a), ("A", a, b)] {
        let kind = SplitKind::of(side);
        if let Some(dir) = kind.direction() {
            degenerate_sides.push(name);
            if other.cone_membership(dir)?.is_some() {
                return Ok(Gluability::Yes(format!(
                    "{name} is a {} with direction {dir:?} and a multiple of it lies in the other semigroup",
                    kind.name()
                )));
            }
        }
    }
    if !degenerate_sides.is_empty() {
        return Ok(Gluability::No(format!(
            "{} is a point or a line but no multiple of its direction lies in the other semigroup",
            degenerate_sides.join(" and ")
        )));
    }
    if a.is_nondegenerate() && b.is_nondegenerate() {
        let opts = ResolutionOptions::default();
        let (ia, ib) = match (invariants(a, &opts), invariants(b, &opts)) {
            (Ok(ia), Ok(ib)) => (ia, ib),
            (Err(Error::ResourceLimit(m)), _) | (_, Err(Error::ResourceLimit(m))) => {
                return Ok(Gluability::Unknown(format!("Cohen-Macaulay test too large: {m}")))
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        if ia.is_cm && ib.is_cm {
            return Ok(Gluability::No(
                "both semigroups are nondegenerate with Cohen-Macaulay rings in dimension >= 2".into(),
            ));
        }
    }
    Ok(Gluability::Unknown("no criterion applies to this shape".into()))
}

/// Divides `k1` and `b` by their common factor until `gcd(k1, gcd(b)) = 1`.
fn fold_point(k1: u64, b: &[u64]) -> (u64, Vec<u64>, u64) {
    let mut k1 = k1;
    let mut b = b.to_vec();
    let mut folded = 1;
    loop {
        let g = b.iter().fold(k1, |g, &x| g.gcd(&x));
        if g <= 1 {
            return (k1, b, folded);
        }
        k1 /= g;
        folded *= g;
        for x in &mut b {
            *x /= g;
        }
    }
}

/// `δ = d / gcd(d, k2)` and `r = s(A, k2·b)` for a simple split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleSplitCriterion {
    pub d: u64,
    pub s: u64,
    pub delta: u64,
    pub r: u64,
    pub holds: bool,
}

/// Evaluates `δ = r` for `C = k1·A ∪ {k2·b}`.
///
/// `r` always divides `δ`, and equality holds exactly when the binomial from
/// [`build_rho`] glues.
pub fn simple_split_criterion(a: &GeneratorSet, b: &[u64], k1: u64, k2: u64) -> Result<SimpleSplitCriterion> {
    if k1 == 0 || k2 == 0 {
        return Err(Error::InvalidScaling { k1, k2 });
    }
    let g = k1.gcd(&k2);
    let (k1, k2) = (k1 / g, k2 / g);
    let (_, b, _) = fold_point(k1, b);
    let dv = a.d_value(&b)?;
    let delta = dv.d / dv.d.gcd(&k2);
    let r = s_value(a.columns(), a.dim(), &scale_vector(&b, k2)?)?;
    Ok(SimpleSplitCriterion { d: dv.d, s: dv.s, delta, r, holds: delta == r })
}

/// Whether `C = k1·A ∪ {k2·b}` is a gluing, by the `δ = r` criterion.
pub fn check_simple_split(a: &GeneratorSet, b: &[u64], k1: u64, k2: u64) -> Result<bool> {
    Ok(simple_split_criterion(a, b, k1, k2)?.holds)
}

/// Builds the candidate binomial `ρ` for a point or a line `B`.
///
/// Point `b`: `ρ = y^{k1 δ} - ∏ x_j^{(k2/g) d_j}` with `A·d = d(A,b)·b`,
/// `g = gcd(d(A,b), k2)` and `δ = d(A,b)/g`. Line `B = scale·b·[u]`:
/// `ρ = ∏ y_j^{v_j} - ∏ x_j^{e_j}` with `Σ v_j u_j = k1` and `A·e = k2·scale·b`.
pub fn build_rho(problem: &GluingProblem) -> Result<GluingCertificate> {
    let kind = SplitKind::of(&problem.b);
    let (rho, witnesses) = match &kind {
        SplitKind::SimpleSplit { point } => build_simple(problem, point)?,
        SplitKind::Line(line) => build_line(problem, line)?,
        SplitKind::General => {
            return Err(Error::UnsupportedShape(
                "B is neither a single point nor contained in a line".into(),
            ))
        }
    };
    let names = problem.names();
    Ok(GluingCertificate {
        k1: problem.k1,
        k2: problem.k2,
        original_k: problem.original_k,
        split: kind.name().to_string(),
        rho_text: rho.format(&names),
        rho,
        verdict: Verdict::Unknown,
        witnesses: Some(witnesses),
        order: String::new(),
        gb_c: None,
        extra_generators: Vec::new(),
        extra_generators_text: Vec::new(),
        checks: Vec::new(),
        warnings: redundancy_warnings(problem),
    })
}

fn build_simple(problem: &GluingProblem, point: &[u64]) -> Result<(Binomial, Witnesses)> {
    let (k1, b, folded) = fold_point(problem.k1, point);
    let k2 = problem.k2;
    let dv = problem.a.d_value(&b)?;
    let g = dv.d.gcd(&k2);
    let delta = dv.d / g;
    let r = s_value(problem.a.columns(), problem.a.dim(), &scale_vector(&b, k2)?)?;
    let x: Vec<u64> = scale_vector(&dv.witness, k2 / g)?;
    let y = k1
        .checked_mul(delta)
        .ok_or_else(|| Error::Overflow("exponent of y".into()))?;
    let rho = problem.binomial(&x, &[y])?;
    Ok((
        rho,
        Witnesses {
            split: "simple split".into(),
            d: dv.d,
            s: dv.s,
            delta: Some(delta),
            r: Some(r),
            d_coefficients: dv.witness,
            v_coefficients: None,
            level: None,
            folded,
        },
    ))
}

fn build_line(problem: &GluingProblem, line: &LineForm) -> Result<(Binomial, Witnesses)> {
    let k2e = problem
        .k2
        .checked_mul(line.scale)
        .ok_or_else(|| Error::Overflow("k2 times the line scale".into()))?;
    let h = problem.k1.gcd(&k2e);
    let (k1, k2) = (problem.k1 / h, k2e / h);
    let u = GeneratorSet::new(1, line.multipliers.iter().map(|&x| vec![x]).collect())?;
    let v = u.membership(&[k1])?.ok_or_else(|| Error::K1NotInU {
        k1,
        multipliers: line.multipliers.clone(),
    })?;
    let dv = problem.a.d_value(&line.direction)?;
    let x = if k2 % dv.d == 0 {
        scale_vector(&dv.witness, k2 / dv.d)?
    } else {
        problem
            .a
            .membership(&scale_vector(&line.direction, k2)?)?
            .ok_or(Error::K2MultipleNotInA { multiple: k2 })?
    };
    let rho = problem.binomial(&x, &v)?;
    let lvl = level(
        &v.iter().map(|&e| e as i64).collect::<Vec<_>>(),
        line,
        k1,
    )?;
    Ok((
        rho,
        Witnesses {
            split: "line".into(),
            d: dv.d,
            s: dv.s,
            delta: None,
            r: None,
            d_coefficients: dv.witness,
            v_coefficients: Some(v),
            level: Some(lvl),
            folded: h,
        },
    ))
}

/// The level `(Σ α_j u_j) / k1` of a binomial with `y`-exponent vector `α`.
///
/// A binomial whose `y`-part has exponent vector `α` and `x`-part `β` lies in
/// `I_C` exactly when this is an integer `s` and `A·β = k2·s·b`.
pub fn level(alpha: &[i64], line: &LineForm, k1: u64) -> Result<i64> {
    if alpha.len() != line.multipliers.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} exponents for {} multipliers",
            alpha.len(),
            line.multipliers.len()
        )));
    }
    if k1 == 0 {
        return Err(Error::InvalidScaling { k1, k2: 1 });
    }
    let sum: i128 = alpha.iter().zip(&line.multipliers).map(|(&a, &u)| a as i128 * u as i128).sum();
    if sum % k1 as i128 != 0 {
        return Err(Error::NotDivisible(k1));
    }
    i64::try_from(sum / k1 as i128).map_err(|_| Error::Overflow("level".into()))
}

/// `ρ0 = y^γ - x^α` with `γ` the least `y`-exponent of any binomial of that
/// shape in `I_C` (simple split).
///
/// Unlike [`build_rho`] this exists for every gluable point, and `I_C` is a
/// gluing for some `ρ` exactly when it is one for `ρ0`.
pub fn canonical_rho(problem: &GluingProblem) -> Result<Binomial> {
    let SplitKind::SimpleSplit { point } = SplitKind::of(&problem.b) else {
        return Err(Error::UnsupportedShape("canonical binomial needs a single point".into()));
    };
    let (k1, b, _) = fold_point(problem.k1, &point);
    let dv = problem.a.d_value(&scale_vector(&b, problem.k2)?)?;
    let y = k1.checked_mul(dv.d).ok_or_else(|| Error::Overflow("exponent of y".into()))?;
    problem.binomial(&dv.witness, &[y])
}

fn redundancy_warnings(problem: &GluingProblem) -> Vec<String> {
    let mut out = Vec::new();
    for (name, side) in [("A", &problem.a), ("B", &problem.b)] {
        let red = side.redundant_generators();
        if !red.is_empty() {
            out.push(format!(
                "{name} is not minimally generated (generators {:?} are redundant); gluings involving it are trivial",
                red.iter().map(|j| j + 1).collect::<Vec<_>>()
            ));
        }
    }
    out
}

/// Options for [`verify_gluing_with`].
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub order: OrderKind,
    /// Run the elimination checks `I_C ∩ k[x] = I_A` and `I_C ∩ k[y] = I_B`.
    pub elimination_checks: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { order: OrderKind::Grevlex, elimination_checks: true }
    }
}

/// Decides `I_C = I_A + I_B + ⟨ρ⟩` by comparing reduced Gröbner bases.
pub fn verify_gluing(problem: &GluingProblem, rho: &Binomial) -> Result<GluingCertificate> {
    verify_gluing_with(problem, rho, &VerifyOptions::default())
}

pub fn verify_gluing_with(
    problem: &GluingProblem,
    rho: &Binomial,
    opts: &VerifyOptions,
) -> Result<GluingCertificate> {
    let (p, q) = (problem.p(), problem.q());
    let n = p + q;
    if rho.nvars() != n {
        return Err(Error::DimensionMismatch(format!(
            "rho has {} variables, expected {n}",
            rho.nvars()
        )));
    }
    let names = problem.names();
    let c = problem.c()?;
    let order = MonomialOrder::new(opts.order, n);
    let gb_c = toric_ideal(&c, &order)?;
    let ia = toric_ideal(&problem.a, &MonomialOrder::new(opts.order, p))?;
    let ib = toric_ideal(&problem.b, &MonomialOrder::new(opts.order, q))?;
    let mut sum: Vec<Binomial> = ia.elements().iter().map(|e| e.embed(0, n)).collect();
    sum.extend(ib.elements().iter().map(|e| e.embed(p, n)));
    sum.push(rho.clone());
    let gb_sum = buchberger(&sum, &order);
    let verdict = if gb_sum == gb_c { Verdict::Gluing } else { Verdict::NotGluing };

    let mut checks = Vec::new();
    let weights = c.column_sums();
    let balanced = c.degree(&to_u64(&rho.plus)).ok() == c.degree(&to_u64(&rho.minus)).ok();
    checks.push(Check::new("rho weight balance", balanced, format!("deg_C of both monomials of {}", rho.format(&names))));
    checks.push(Check::new("rho in I_C", gb_c.contains(rho), rho.format(&names)));
    let x_part = rho.plus.0[..p].iter().chain(&rho.minus.0[..p]).any(|&e| e > 0);
    let y_part = rho.plus.0[p..].iter().chain(&rho.minus.0[p..]).any(|&e| e > 0);
    checks.push(Check::new("rho mixes both blocks", x_part && y_part, "rho involves x and y variables"));
    checks.push(Check::new("I_C contains I_A + I_B + <rho>", sum.iter().all(|s| gb_c.contains(s)), "every summand generator reduces to zero modulo I_C"));

    // Complete a generating set of the sum to one of I_C, by increasing degree.
    let mut extra = Vec::new();
    let mut cur = gb_sum.clone();
    let mut candidates: Vec<&Binomial> = gb_c.elements().iter().collect();
    candidates.sort_by_key(|e| e.plus.weighted_degree(&weights));
    let mut gens = sum.clone();
    for e in candidates {
        if !cur.contains(e) {
            extra.push(e.clone());
            gens.push(e.clone());
            cur = buchberger(&gens, &order);
        }
    }
    if opts.elimination_checks {
        let keep_x: Vec<bool> = (0..n).map(|i| i < p).collect();
        let keep_y: Vec<bool> = (0..n).map(|i| i >= p).collect();
        let ex: Vec<Binomial> = eliminate(gb_c.elements(), &keep_x, &order)?.iter().map(|e| e.restrict(0..p)).collect();
        let ey: Vec<Binomial> = eliminate(gb_c.elements(), &keep_y, &order)?.iter().map(|e| e.restrict(p..n)).collect();
        checks.push(Check::new("I_C ∩ k[x] = I_A", ideal_equal(&ex, ia.elements(), ia.order()), format!("{} elimination generators", ex.len())));
        checks.push(Check::new("I_C ∩ k[y] = I_B", ideal_equal(&ey, ib.elements(), ib.order()), format!("{} elimination generators", ey.len())));
    }

    let kind = SplitKind::of(&problem.b);
    let witnesses = match &kind {
        SplitKind::General => None,
        _ => build_rho(problem).ok().and_then(|c| c.witnesses),
    };
    if let (Some(w), SplitKind::SimpleSplit { .. }) = (&witnesses, &kind) {
        if let (Some(delta), Some(r)) = (w.delta, w.r) {
            checks.push(Check::new("r divides delta", delta % r == 0, format!("delta = {delta}, r = {r}")));
            let constructed = build_rho(problem).map(|c| c.rho).ok();
            if constructed.as_ref().is_some_and(|c| ideal_equal(std::slice::from_ref(c), std::slice::from_ref(rho), &order)) {
                checks.push(Check::new(
                    "gluing iff delta = r",
                    (verdict == Verdict::Gluing) == (delta == r),
                    format!("delta = {delta}, r = {r}, verdict {verdict:?}"),
                ));
            }
        }
    }

    Ok(GluingCertificate {
        k1: problem.k1,
        k2: problem.k2,
        original_k: problem.original_k,
        split: kind.name().to_string(),
        rho_text: rho.format(&names),
        rho: rho.clone(),
        verdict,
        witnesses,
        order: order.describe(),
        extra_generators_text: extra.iter().map(|e| e.format(&names)).collect(),
        extra_generators: extra,
        gb_c: Some(gb_c),
        checks,
        warnings: redundancy_warnings(problem),
    })
}

fn to_u64(m: &Monomial) -> Vec<u64> {
    m.0.iter().map(|&e| e as u64).collect()
}

/// One verified choice of scaling factors.
#[derive(Clone, Debug, Serialize)]
pub struct Suggestion {
    pub k1: u64,
    pub k2: u64,
    pub rho: Binomial,
    pub rho_text: String,
    pub verdict: Verdict,
}

/// Result of [`suggest_gluing`].
#[derive(Clone, Debug, Serialize)]
pub struct Suggestions {
    /// The roles of `A` and `B` were exchanged so that `B` is the point or line.
    pub swapped: bool,
    pub split: String,
    pub suggestions: Vec<Suggestion>,
    /// For squarefree `d`: every multiple of `t = d / s` works as `k2`.
    pub squarefree_t: Option<u64>,
}

/// Lists valid `(k1, k2, ρ)`, lexicographically smallest first, each checked
/// with [`verify_gluing`].
///
/// For a point `b` the candidates are `k2 ∈ 1..=d(A,b)` passing the `δ = r`
/// test with `k1` coprime to `k2` and to `gcd(b)`. For a line the candidates
/// are `k2 = d(A,b)` and `k1 ∈ ⟨u⟩` coprime to it.
pub fn suggest_gluing(a: &GeneratorSet, b: &GeneratorSet, limit: usize) -> Result<Suggestions> {
    let verdict = can_glue(a, b)?;
    if !verdict.is_yes() {
        let reason = match verdict {
            Gluability::No(r) | Gluability::Unknown(r) | Gluability::Yes(r) => r,
        };
        return Err(Error::CannotGlue(reason));
    }
    let b_works = match SplitKind::of(b).direction() {
        Some(dir) => a.cone_membership(dir)?.is_some(),
        None => false,
    };
    let swapped = !b_works && a.dim() > 1;
    let (a, b) = if swapped { (b, a) } else { (a, b) };
    let kind = SplitKind::of(b);
    let mut candidates: Vec<(u64, u64)> = Vec::new();
    let mut squarefree_t = None;
    match &kind {
        SplitKind::SimpleSplit { point } => {
            let dv = a.d_value(point)?;
            if is_squarefree(dv.d) {
                squarefree_t = Some(dv.d / dv.s);
            }
            let content = point.iter().fold(0u64, |g, &x| g.gcd(&x));
            let mut k1 = 1u64;
            while candidates.len() < limit {
                if k1.gcd(&content) == 1 {
                    for k2 in 1..=dv.d {
                        if k1.gcd(&k2) == 1 && check_simple_split(a, point, k1, k2)? {
                            candidates.push((k1, k2));
                        }
                    }
                }
                k1 += 1;
            }
        }
        SplitKind::Line(line) => {
            let dv = a.d_value(&line.direction)?;
            let k2 = dv.d;
            let u = GeneratorSet::new(1, line.multipliers.iter().map(|&x| vec![x]).collect())?;
            let mut k1 = 1u64;
            while candidates.len() < limit {
                if k1.gcd(&(k2 * line.scale)) == 1 && u.contains(&[k1])? {
                    candidates.push((k1, k2));
                }
                k1 += 1;
            }
        }
        SplitKind::General => {
            // Only reachable in dimension 1: k1 ∈ <B>, k2 ∈ <A>.
            let smallest = |s: &GeneratorSet| s.columns().iter().map(|c| c[0]).min().unwrap_or(1);
            candidates.push((smallest(b), smallest(a)));
        }
    }
    candidates.truncate(limit);
    let mut suggestions = Vec::new();
    for (k1, k2) in candidates {
        let problem = GluingProblem::new(a.clone(), b.clone(), k1, k2)?;
        let rho = match &kind {
            SplitKind::General => dimension_one_rho(&problem)?,
            _ => build_rho(&problem)?.rho,
        };
        let cert = verify_gluing_with(&problem, &rho, &VerifyOptions { elimination_checks: false, ..Default::default() })?;
        suggestions.push(Suggestion {
            k1,
            k2,
            rho_text: rho.format(&problem.names()),
            rho,
            verdict: cert.verdict,
        });
    }
    Ok(Suggestions { swapped, split: kind.name().to_string(), suggestions, squarefree_t })
}

/// In dimension 1 with `k1 = b_j` and `k2 = a_i`, `y_j - x_i` glues.
fn dimension_one_rho(problem: &GluingProblem) -> Result<Binomial> {
    let ja = (0..problem.p()).min_by_key(|&j| problem.a.column(j)[0]).unwrap_or(0);
    let jb = (0..problem.q()).min_by_key(|&j| problem.b.column(j)[0]).unwrap_or(0);
    let mut x = vec![0; problem.p()];
    let mut y = vec![0; problem.q()];
    x[ja] = 1;
    y[jb] = 1;
    problem.binomial(&x, &y)
}

fn is_squarefree(d: u64) -> bool {
    let mut n = d;
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f * f) {
            return false;
        }
        if n.is_multiple_of(f) {
            n /= f;
        }
        f += 1;
    }
    true
}

/// The decision procedure for `n = 2` when both rings are Cohen–Macaulay.
#[derive(Clone, Debug, Serialize)]
pub struct N2Decision {
    pub answer: Gluability,
    /// Every gluing of the pair has a Cohen–Macaulay ring (when `Yes`).
    pub gluing_is_cm: bool,
}

/// In `ℕ²` with `k[A]` and `k[B]` Cohen–Macaulay, a gluing exists exactly
/// when one side is a point or a line whose direction has a multiple in the
/// other semigroup.
pub fn decide_n2(a: &GeneratorSet, b: &GeneratorSet) -> Result<N2Decision> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(Error::NotApplicable(format!(
            "the decision procedure is for n = 2, got n = {}",
            a.dim()
        )));
    }
    let opts = ResolutionOptions::default();
    for (name, side) in [("A", a), ("B", b)] {
        if !invariants(side, &opts)?.is_cm {
            return Err(Error::NotApplicable(format!("k[{name}] is not Cohen-Macaulay")));
        }
    }
    for (name, side, other) in [("B", b, a), ("A", a, b)] {
        let kind = SplitKind::of(side);
        if let Some(dir) = kind.direction() {
            if other.d_value(dir).is_ok() {
                return Ok(N2Decision {
                    answer: Gluability::Yes(format!(
                        "{name} is a {} and a multiple of {dir:?} lies in the other semigroup",
                        kind.name()
                    )),
                    gluing_is_cm: true,
                });
            }
        }
    }
    Ok(N2Decision {
        answer: Gluability::No(
            "neither side is a point or a line with a multiple in the other semigroup".into(),
        ),
        gluing_is_cm: false,
    })
}

/// All checks of a certificate passed and the verdict is `Gluing`.
pub fn certificate_ok(cert: &GluingCertificate) -> bool {
    cert.is_gluing() && all_passed(&cert.checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(rows: &[&[u64]]) -> GeneratorSet {
        GeneratorSet::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn ex_cm() -> GeneratorSet {
        gens(&[&[5, 3, 2, 0], &[0, 2, 3, 5]])
    }

    fn ex_d6() -> GeneratorSet {
        gens(&[&[7, 6, 3, 0], &[0, 2, 8, 9]])
    }

    fn point(b: &[u64]) -> GeneratorSet {
        GeneratorSet::new(b.len(), vec![b.to_vec()]).unwrap()
    }

    fn line() -> GeneratorSet {
        gens(&[&[11, 17, 25, 19], &[11, 17, 25, 19]])
    }

    #[test]
    fn problem_normalizes_scaling() {
        let p = GluingProblem::new(ex_cm(), point(&[1, 1]), 4, 6).unwrap();
        assert_eq!((p.k1, p.k2, p.original_k), (2, 3, (4, 6)));
        assert!(GluingProblem::new(ex_cm(), point(&[1, 1]), 0, 1).is_err());
        assert!(GluingProblem::new(ex_cm(), point(&[1, 1, 1]), 1, 1).is_err());
    }

    #[test]
    fn can_glue_examples() {
        let a = gens(&[&[1, 2], &[2, 1]]);
        assert!(matches!(can_glue(&a, &point(&[3, 0])).unwrap(), Gluability::No(_)));
        let cubic = gens(&[&[3, 2, 1, 0], &[0, 1, 2, 3]]);
        assert!(matches!(can_glue(&cubic, &cubic).unwrap(), Gluability::No(_)));
        assert!(can_glue(&ex_cm(), &line()).unwrap().is_yes());
        // symmetric: the point may be on the A side
        assert!(can_glue(&point(&[1, 1]), &ex_cm()).unwrap().is_yes());
        assert!(can_glue(&gens(&[&[2, 3]]), &gens(&[&[5, 7]])).unwrap().is_yes());
        assert!(can_glue(&ex_cm(), &point(&[1, 1, 1])).is_err());
    }

    #[test]
    fn simple_split_criterion_examples() {
        assert!(!check_simple_split(&ex_d6(), &[3, 4], 1, 1).unwrap());
        let c = simple_split_criterion(&ex_d6(), &[3, 4], 1, 1).unwrap();
        assert_eq!((c.delta, c.r), (6, 1));
        let c = simple_split_criterion(&ex_d6(), &[3, 4], 1, 6).unwrap();
        assert_eq!((c.delta, c.r, c.holds), (1, 1, true));
        let c = simple_split_criterion(&ex_cm(), &[1, 1], 1, 1).unwrap();
        assert_eq!((c.d, c.s, c.delta, c.r, c.holds), (5, 5, 5, 5, true));
    }

    #[test]
    fn build_rho_examples() {
        let p = GluingProblem::new(ex_cm(), point(&[1, 1]), 1, 1).unwrap();
        let cert = build_rho(&p).unwrap();
        assert_eq!(cert.rho_text, "y1^5 - x1*x4");
        let p = GluingProblem::new(ex_cm(), point(&[5, 0]), 1, 1).unwrap();
        assert_eq!(build_rho(&p).unwrap().rho_text, "y1 - x1");
        let p = GluingProblem::new(ex_cm(), line(), 28, 5).unwrap();
        let cert = build_rho(&p).unwrap();
        assert_eq!(cert.rho_text, "y1*y2 - x1*x4");
        assert_eq!(cert.witnesses.unwrap().level, Some(1));
        let p = GluingProblem::new(ex_cm(), line(), 12, 5).unwrap();
        assert!(matches!(build_rho(&p), Err(Error::K1NotInU { k1: 12, .. })));
        let p = GluingProblem::new(gens(&[&[1, 2], &[2, 1]]), point(&[3, 0]), 1, 1).unwrap();
        assert_eq!(build_rho(&p).unwrap_err(), Error::NotInCone);
    }

    #[test]
    fn level_examples() {
        let l = line().detect_line().unwrap();
        assert_eq!(level(&[1, 1, 0, 0], &l, 28).unwrap(), 1);
        assert_eq!(level(&[0, 0, 0, 0], &l, 28).unwrap(), 0);
        assert_eq!(level(&[2, 2, 0, 0], &l, 28).unwrap(), 2);
        assert_eq!(level(&[1, 0, 0, 0], &l, 28), Err(Error::NotDivisible(28)));
        assert_eq!(level(&[-1, 0, 0, 0], &l, 11).unwrap(), -1);
    }

    #[test]
    fn verify_simple_splits() {
        let p = GluingProblem::new(ex_cm(), point(&[1, 1]), 1, 1).unwrap();
        let rho = build_rho(&p).unwrap().rho;
        let cert = verify_gluing(&p, &rho).unwrap();
        assert_eq!(cert.verdict, Verdict::Gluing);
        assert!(certificate_ok(&cert), "{:?}", cert.checks);
        assert!(cert.extra_generators.is_empty());

        let p = GluingProblem::new(ex_d6(), point(&[3, 4]), 1, 1).unwrap();
        let rho = build_rho(&p).unwrap().rho;
        assert_eq!(rho.format(&p.names()), "y1^6 - x2^3*x4^2");
        let cert = verify_gluing(&p, &rho).unwrap();
        assert_eq!(cert.verdict, Verdict::NotGluing);
        assert!(all_passed(&cert.checks), "{:?}", cert.checks);
        assert!(!cert.extra_generators.is_empty());
    }

    #[test]
    fn criterion_is_about_the_constructed_binomial() {
        // d = 5 and k2 = 7 give delta = 5 > r = 1, so the constructed
        // y^5 - x1^7 does not glue. Yet 7b is itself a generator of A, and
        // the minimal binomial y - x2 does.
        let a = gens(&[&[5, 7, 1], &[5, 7, 0]]);
        let p = GluingProblem::new(a.clone(), point(&[1, 1]), 1, 7).unwrap();
        assert!(!check_simple_split(&a, &[1, 1], 1, 7).unwrap());
        let built = build_rho(&p).unwrap().rho;
        assert_eq!(verify_gluing(&p, &built).unwrap().verdict, Verdict::NotGluing);
        let rho0 = canonical_rho(&p).unwrap();
        assert_eq!(rho0.format(&p.names()), "y1 - x2");
        assert_eq!(verify_gluing(&p, &rho0).unwrap().verdict, Verdict::Gluing);
    }

    #[test]
    fn suggestions() {
        let s = suggest_gluing(&ex_cm(), &point(&[1, 1]), 3).unwrap();
        assert!(!s.swapped);
        assert_eq!((s.suggestions[0].k1, s.suggestions[0].k2), (1, 1));
        assert_eq!(s.suggestions[0].rho_text, "y1^5 - x1*x4");
        assert!(s.suggestions.iter().all(|x| x.verdict == Verdict::Gluing));
        assert_eq!(s.squarefree_t, Some(1));

        let s = suggest_gluing(&point(&[5, 0]), &ex_cm(), 1).unwrap();
        assert!(s.swapped);
        assert_eq!(s.suggestions[0].rho_text, "y1 - x1");

        let err = suggest_gluing(&gens(&[&[1, 2], &[2, 1]]), &point(&[3, 0]), 1).unwrap_err();
        assert!(matches!(err, Error::CannotGlue(_)));
    }

    #[test]
    fn n2_decisions() {
        let cubic = gens(&[&[3, 2, 1, 0], &[0, 1, 2, 3]]);
        assert!(matches!(decide_n2(&cubic, &cubic).unwrap().answer, Gluability::No(_)));
        let d = decide_n2(&ex_cm(), &point(&[1, 1])).unwrap();
        assert!(d.answer.is_yes() && d.gluing_is_cm);
        let a = gens(&[&[1, 2], &[2, 1]]);
        assert!(matches!(decide_n2(&a, &point(&[3, 0])).unwrap().answer, Gluability::No(_)));
        assert!(matches!(decide_n2(&point(&[1, 1, 1]), &point(&[1, 1, 1])), Err(Error::NotApplicable(_))));
        let not_cm = gens(&[&[5, 4, 1, 0], &[0, 1, 4, 5]]);
        assert!(matches!(decide_n2(&not_cm, &point(&[1, 1])), Err(Error::NotApplicable(_))));
    }
}
