//! Built-in corpus of worked examples with their known outcomes.
//!
//! Each entry recomputes an example from scratch and compares against the
//! expected values recorded here. Entries are independent and run in
//! parallel.

use std::time::Instant;

use semiglue::check::Check;
use semiglue::gluing::{
    build_rho, can_glue, decide_n2, verify_gluing_with, Gluability, GluingCertificate, GluingProblem, Verdict,
    VerifyOptions,
};
use semiglue::groebner::{buchberger, ideal_equal, minimal_generators, toric_ideal, Binomial, MonomialOrder};
use semiglue::lattice::s_value;
use semiglue::resolution::{invariants, verify_gluing_homology, HomologicalInvariants};
use semiglue::{Error, GeneratorSet};
use serde::Serialize;
use serde_json::json;

use crate::commands::{CliError, Options};
use crate::report::Report;

/// A verified gluing together with the shape and invariants of its parts.
#[derive(Clone, Debug, Serialize)]
pub struct GluingRecord {
    pub n: usize,
    pub rank_a: usize,
    pub rank_b: usize,
    pub a_cm: bool,
    pub b_cm: bool,
}

/// Everything one corpus entry produced.
#[derive(Clone, Debug, Serialize)]
pub struct EntryResult {
    pub id: &'static str,
    pub title: &'static str,
    pub checks: Vec<Check>,
    /// Set when the entry aborted with an error.
    pub error: Option<String>,
    #[serde(skip)]
    pub certificates: Vec<GluingCertificate>,
    #[serde(skip)]
    pub gluings: Vec<GluingRecord>,
    #[serde(skip)]
    pub invariants: Vec<HomologicalInvariants>,
    #[serde(skip)]
    pub millis: f64,
}

impl EntryResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<String> {
        if let Some(e) = &self.error {
            return Some(format!("error: {e}"));
        }
        self.checks.iter().find(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail))
    }
}

type Runner = fn(&mut Ctx) -> Result<(), Error>;

pub struct Entry {
    pub id: &'static str,
    pub title: &'static str,
    run: Runner,
}

pub fn entries() -> Vec<Entry> {
    vec![
        Entry { id: "ex-twisted-cubic-n3", title: "two degenerate copies of the twisted cubic in N^3", run: twisted_cubic_n3 },
        Entry { id: "ex-twisted-cubic-self", title: "the twisted cubic cannot be glued with itself in N^2", run: twisted_cubic_self },
        Entry { id: "ex-no-cone", title: "no multiple of b lies in <A>", run: no_cone },
        Entry { id: "ex-simple-d6-s1", title: "simple split with d = 6 > s = 1", run: simple_d6 },
        Entry { id: "ex-simple-cm", title: "simple split with d = s = 5, Cohen-Macaulay", run: simple_cm },
        Entry { id: "ex-simple-not-cm", title: "simple split, not Cohen-Macaulay", run: simple_not_cm },
        Entry { id: "ex-line-cm", title: "line with k1 = 28, k2 = 5, Cohen-Macaulay", run: line_cm },
        Entry { id: "ex-line-not-cm", title: "line with k1 = 28, k2 = 5, not Cohen-Macaulay", run: line_not_cm },
        Entry { id: "ex-line-k2", title: "line with k1 = 2: an iteration of simple splits", run: line_k2 },
        Entry { id: "ex-line-k26", title: "line with k1 = 26: neither a gluing nor iterated splits", run: line_k26 },
        Entry { id: "ex-n2-decisions", title: "the decision procedure in N^2", run: n2_decisions },
    ]
}

pub fn ids() -> Vec<&'static str> {
    entries().iter().map(|e| e.id).collect()
}

/// Runs the corpus (or the entries named in `only`) in parallel.
///
/// With `perturb`, the first expected value of every entry is replaced by one
/// that cannot match, so every entry must report a failure.
pub fn run_corpus(opts: &Options, only: &[String], perturb: bool) -> Result<Vec<EntryResult>, CliError> {
    let all = entries();
    for id in only {
        if !all.iter().any(|e| e.id == id) {
            return Err(CliError::Input(format!("unknown corpus entry '{id}' (known: {})", ids().join(", "))));
        }
    }
    let selected: Vec<&Entry> = all.iter().filter(|e| only.is_empty() || only.iter().any(|o| o == e.id)).collect();
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = selected.iter().map(|e| scope.spawn(move || run_entry(e, opts, perturb))).collect();
        handles.into_iter().map(|h| h.join().expect("corpus entry panicked")).collect()
    });
    Ok(results)
}

fn run_entry(entry: &Entry, opts: &Options, perturb: bool) -> EntryResult {
    let start = Instant::now();
    let mut ctx = Ctx { opts, perturb, perturbed: false, checks: Vec::new(), certificates: Vec::new(), gluings: Vec::new(), invariants: Vec::new() };
    let error = (entry.run)(&mut ctx).err().map(|e| e.to_string());
    EntryResult {
        id: entry.id,
        title: entry.title,
        checks: ctx.checks,
        error,
        certificates: ctx.certificates,
        gluings: ctx.gluings,
        invariants: ctx.invariants,
        millis: start.elapsed().as_secs_f64() * 1000.0,
    }
}

/// Builds the report of the `paper` subcommand.
pub fn corpus_report(results: &[EntryResult], timing: bool) -> Report {
    let mut report = Report::new("paper", None);
    report.failures_only = true;
    let mut rows = Vec::new();
    for r in results {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("[{status}] {} ({}): {} checks", r.id, r.title, r.checks.len());
        if timing {
            line.push_str(&format!(", {:.0} ms", r.millis));
        }
        report.line(line);
        if let Some(f) = r.first_failure() {
            report.line(format!("    first diverging check: {f}"));
        }
        report.checks.extend(r.checks.iter().map(|c| Check::new(format!("{}: {}", r.id, c.name), c.passed, c.detail.clone())));
        if let Some(e) = &r.error {
            report.checks.push(Check::new(format!("{}: completed", r.id), false, e.clone()));
        }
        rows.push(json!({"id": r.id, "title": r.title, "passed": r.passed(), "first_failure": r.first_failure()}));
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    report.line(format!("{passed} of {} examples passed", results.len()));
    report.result = json!({"examples": rows, "passed": passed, "total": results.len()});
    report
}

struct Ctx<'a> {
    opts: &'a Options,
    perturb: bool,
    perturbed: bool,
    checks: Vec<Check>,
    certificates: Vec<GluingCertificate>,
    gluings: Vec<GluingRecord>,
    invariants: Vec<HomologicalInvariants>,
}

impl Ctx<'_> {
    fn expect<T: Serialize>(&mut self, name: &str, expected: T, actual: T) {
        let mut e = json!(expected);
        let a = json!(actual);
        if self.perturb && !self.perturbed {
            e = json!({ "perturbed": e });
            self.perturbed = true;
        }
        self.checks.push(Check::new(name, e == a, format!("expected {e}, got {a}")));
    }

    fn require(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, passed, detail));
    }

    fn absorb(&mut self, prefix: &str, checks: &[Check]) {
        for c in checks {
            self.checks.push(Check::new(format!("{prefix}{}", c.name), c.passed, c.detail.clone()));
        }
    }

    fn verify(&mut self, p: &GluingProblem, rho: &Binomial) -> Result<GluingCertificate, Error> {
        let cert = verify_gluing_with(p, rho, &VerifyOptions { order: self.opts.order, elimination_checks: true })?;
        self.absorb("certificate: ", &cert.checks);
        self.certificates.push(cert.clone());
        Ok(cert)
    }

    fn invariants(&mut self, a: &GeneratorSet) -> Result<HomologicalInvariants, Error> {
        let inv = invariants(a, &self.opts.resolution())?;
        self.invariants.push(inv.clone());
        Ok(inv)
    }

    /// Homology of a verified gluing: records invariants of A, B, C.
    fn gluing_homology(&mut self, p: &GluingProblem, cert: &GluingCertificate) -> Result<[HomologicalInvariants; 3], Error> {
        let h = verify_gluing_homology(p, cert, &self.opts.resolution())?;
        self.absorb("homology: ", &h.checks);
        self.invariants.extend([h.a.clone(), h.b.clone(), h.c.clone()]);
        self.gluings.push(GluingRecord {
            n: p.a.dim(),
            rank_a: p.a.rank_dim(),
            rank_b: p.b.rank_dim(),
            a_cm: h.a.is_cm,
            b_cm: h.b.is_cm,
        });
        Ok([h.a, h.b, h.c])
    }
}

fn gens(rows: &[&[u64]]) -> GeneratorSet {
    GeneratorSet::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).expect("corpus data is valid")
}

fn point(b: &[u64]) -> GeneratorSet {
    GeneratorSet::new(b.len(), vec![b.to_vec()]).expect("corpus data is valid")
}

fn ex_cm() -> GeneratorSet {
    gens(&[&[5, 3, 2, 0], &[0, 2, 3, 5]])
}

fn ex_not_cm() -> GeneratorSet {
    gens(&[&[5, 4, 1, 0], &[0, 1, 4, 5]])
}

fn ex_d6() -> GeneratorSet {
    gens(&[&[7, 6, 3, 0], &[0, 2, 8, 9]])
}

fn line() -> GeneratorSet {
    gens(&[&[11, 17, 25, 19], &[11, 17, 25, 19]])
}

fn cubic() -> GeneratorSet {
    gens(&[&[3, 2, 1, 0], &[0, 1, 2, 3]])
}

fn verdict_name(v: Verdict) -> String {
    format!("{v:?}")
}

fn twisted_cubic_n3(ctx: &mut Ctx) -> Result<(), Error> {
    let a = gens(&[&[4, 3, 2, 1], &[0, 1, 2, 3], &[0, 0, 0, 0]]);
    let b = gens(&[&[3, 3, 3, 3], &[3, 2, 1, 0], &[0, 1, 2, 3]]);
    let p = GluingProblem::new(a.clone(), b.clone(), 1, 1)?;
    let rho = p.binomial(&[1, 0, 0, 2], &[2, 0, 0, 0])?;
    let cert = ctx.verify(&p, &rho)?;
    ctx.expect("verdict for rho = y1^2 - x1*x4^2", verdict_name(Verdict::Gluing), verdict_name(cert.verdict));
    let order = MonomialOrder::new(ctx.opts.order, 4);
    let twisted = toric_ideal(&cubic(), &order)?;
    ctx.expect("generators of the twisted cubic ideal", 3, twisted.len());
    for (name, side) in [("A", &a), ("B", &b)] {
        let ideal = toric_ideal(side, &order)?;
        ctx.require(&format!("I_{name} is the twisted cubic ideal"), ideal == twisted, format!("{} elements", ideal.len()));
        ctx.expect(&format!("rank of {name}"), 2, side.rank_dim());
    }
    if cert.is_gluing() {
        let [ia, ib, _] = ctx.gluing_homology(&p, &cert)?;
        ctx.expect("k[A] and k[B] Cohen-Macaulay", (true, true), (ia.is_cm, ib.is_cm));
    }
    Ok(())
}

fn twisted_cubic_self(ctx: &mut Ctx) -> Result<(), Error> {
    let s = cubic();
    let inv = ctx.invariants(&s)?;
    ctx.expect("k[S] Cohen-Macaulay", true, inv.is_cm);
    ctx.expect("S nondegenerate in N^2", true, s.is_nondegenerate());
    let g = can_glue(&s, &s)?;
    ctx.expect("S can be glued with itself", false, g.is_yes());
    ctx.require("answer is a definite no", matches!(g, Gluability::No(_)), format!("{g:?}"));
    Ok(())
}

fn no_cone(ctx: &mut Ctx) -> Result<(), Error> {
    let a = gens(&[&[1, 2], &[2, 1]]);
    let b = [3, 0];
    let d = a.d_value(&b);
    ctx.expect("d(A, b) exists", false, d.is_ok());
    ctx.require("d(A, b) fails with NotInCone", matches!(d, Err(Error::NotInCone)), format!("{d:?}"));
    let g = can_glue(&a, &point(&b))?;
    ctx.require("A and b cannot be glued", matches!(g, Gluability::No(_)), format!("{g:?}"));
    Ok(())
}

fn simple_d6(ctx: &mut Ctx) -> Result<(), Error> {
    let a = ex_d6();
    let b = [3, 4];
    let dv = a.d_value(&b)?;
    ctx.expect("s(A, b)", 1, s_value(a.columns(), 2, &b)?);
    ctx.expect("d(A, b)", 6, dv.d);
    let p = GluingProblem::new(a.clone(), point(&b), 1, 1)?;
    let rho = p.binomial(&[0, 3, 0, 2], &[6])?;
    let cert = ctx.verify(&p, &rho)?;
    ctx.expect("verdict for k1 = k2 = 1", verdict_name(Verdict::NotGluing), verdict_name(cert.verdict));
    let names = p.names();
    let gb = cert.gb_c.as_ref().expect("verification stores the basis");
    // x2 x4^2 y - x3^3, x1^3 x4^2 y - x2^3 x3^2, x3^2 y^5 - x1^3 x4^4
    let extra = [
        Binomial::from_exponents(&[0, 1, 0, 2, 1], &[0, 0, 3, 0, 0]),
        Binomial::from_exponents(&[3, 0, 0, 2, 1], &[0, 3, 2, 0, 0]),
        Binomial::from_exponents(&[0, 0, 2, 0, 5], &[3, 0, 0, 4, 0]),
    ]
    .into_iter()
    .flatten()
    .collect::<Vec<_>>();
    let ia = toric_ideal(&a, &MonomialOrder::new(ctx.opts.order, 4))?;
    let mut sum: Vec<Binomial> = ia.elements().iter().map(|e| e.embed(0, 5)).collect();
    sum.push(rho);
    let sum_gb = buchberger(&sum, gb.order());
    for e in &extra {
        let text = e.format(&names);
        ctx.require(&format!("{text} lies in I_C"), gb.contains(e), "");
        ctx.require(&format!("{text} is missing from I_A + <rho>"), !sum_gb.contains(e), "");
    }
    let mut all = sum;
    all.extend(extra.iter().cloned());
    ctx.require("I_A + <rho> + extra generators = I_C", ideal_equal(&all, gb.elements(), gb.order()), "");
    let listed = cert.extra_generators.iter().any(|e| e == &extra[0] || e.normalized_sign() == extra[0].normalized_sign());
    ctx.require("x2*x4^2*y1 - x3^3 reported as an extra generator", listed, cert.extra_generators_text.join(", "));

    let p6 = GluingProblem::new(a, point(&b), 1, 6)?;
    let built = build_rho(&p6)?;
    let cert6 = ctx.verify(&p6, &built.rho)?;
    ctx.expect("verdict for k2 = 6", verdict_name(Verdict::Gluing), verdict_name(cert6.verdict));
    if cert6.is_gluing() {
        ctx.gluing_homology(&p6, &cert6)?;
    }
    Ok(())
}

fn simple_split_gluing(ctx: &mut Ctx, a: GeneratorSet) -> Result<Option<[HomologicalInvariants; 3]>, Error> {
    let p = GluingProblem::new(a, point(&[1, 1]), 1, 1)?;
    let built = build_rho(&p)?;
    let cert = ctx.verify(&p, &built.rho)?;
    ctx.expect("verdict for k1 = k2 = 1", verdict_name(Verdict::Gluing), verdict_name(cert.verdict));
    if !cert.is_gluing() {
        return Ok(None);
    }
    ctx.gluing_homology(&p, &cert).map(Some)
}

fn simple_cm(ctx: &mut Ctx) -> Result<(), Error> {
    let a = ex_cm();
    let dv = a.d_value(&[1, 1])?;
    ctx.expect("(d, s)", (5, 5), (dv.d, dv.s));
    if let Some([ia, _, ic]) = simple_split_gluing(ctx, a)? {
        ctx.expect("k[A] and k[C] Cohen-Macaulay", (true, true), (ia.is_cm, ic.is_cm));
        ctx.expect("Cohen-Macaulay types of k[A] and k[C]", (2, 2), (ia.cm_type, ic.cm_type));
    }
    Ok(())
}

fn simple_not_cm(ctx: &mut Ctx) -> Result<(), Error> {
    if let Some([ia, ib, ic]) = simple_split_gluing(ctx, ex_not_cm())? {
        ctx.expect("betti numbers of k[A]", vec![1, 5, 6, 2], ia.betti.betti.clone());
        ctx.expect("betti numbers of k[C]", vec![1, 6, 11, 8, 2], ic.betti.betti.clone());
        ctx.expect("k[A] and k[C] Cohen-Macaulay", (false, false), (ia.is_cm, ic.is_cm));
        ctx.expect("(pd C, pd A, pd B)", (4, 3, 0), (ic.pd, ia.pd, ib.pd));
    }
    Ok(())
}

fn line_gluing(ctx: &mut Ctx, a: GeneratorSet) -> Result<Option<[HomologicalInvariants; 3]>, Error> {
    let p = GluingProblem::new(a, line(), 28, 5)?;
    let built = build_rho(&p)?;
    let expected = p.binomial(&[1, 0, 0, 1], &[1, 1, 0, 0])?;
    ctx.require(
        "constructed rho is y1*y2 - x1*x4 up to sign",
        built.rho.normalized_sign() == expected.normalized_sign(),
        built.rho_text.clone(),
    );
    let cert = ctx.verify(&p, &built.rho)?;
    ctx.expect("verdict", verdict_name(Verdict::Gluing), verdict_name(cert.verdict));
    if !cert.is_gluing() {
        return Ok(None);
    }
    ctx.gluing_homology(&p, &cert).map(Some)
}

fn line_cm(ctx: &mut Ctx) -> Result<(), Error> {
    if let Some([ia, ib, ic]) = line_gluing(ctx, ex_cm())? {
        ctx.expect("betti numbers of k[A]", vec![1, 3, 2], ia.betti.betti.clone());
        ctx.expect("betti numbers of k[B]", vec![1, 5, 5, 1], ib.betti.betti.clone());
        ctx.expect("betti numbers of k[C]", vec![1, 9, 30, 48, 39, 15, 2], ic.betti.betti.clone());
        ctx.expect("k[A], k[B], k[C] Cohen-Macaulay", (true, true, true), (ia.is_cm, ib.is_cm, ic.is_cm));
    }
    Ok(())
}

fn line_not_cm(ctx: &mut Ctx) -> Result<(), Error> {
    if let Some([ia, _, ic]) = line_gluing(ctx, ex_not_cm())? {
        ctx.expect("k[A] and k[C] Cohen-Macaulay", (false, false), (ia.is_cm, ic.is_cm));
    }
    Ok(())
}

fn line_k2(ctx: &mut Ctx) -> Result<(), Error> {
    let a = ex_cm();
    let p = GluingProblem::new(a.clone(), line(), 2, 5)?;
    let built = build_rho(&p);
    ctx.require(
        "2 is not in <11, 17, 25, 19>",
        matches!(built, Err(Error::K1NotInU { .. })),
        format!("{:?}", built.map(|c| c.rho_text)),
    );
    let rho1 = p.binomial(&[11, 0, 0, 11], &[2, 0, 0, 0])?;
    let cert = ctx.verify(&p, &rho1)?;
    ctx.expect("verdict for rho1", verdict_name(Verdict::NotGluing), verdict_name(cert.verdict));
    ctx.require("I_C differs from I_A + I_B + <rho1>", !cert.extra_generators.is_empty(), cert.extra_generators_text.join(", "));
    let gb = cert.gb_c.as_ref().expect("verification stores the basis");
    let names = p.names();
    // rho2 = y2 - y1 x1^3 x4^3, rho3 = y3 - y2 x1^4 x4^4, rho4 = y4 - y2 x1 x4
    let rhos: Vec<Binomial> = [
        Some(rho1.clone()),
        Binomial::from_exponents(&[0, 0, 0, 0, 0, 1, 0, 0], &[3, 0, 0, 3, 1, 0, 0, 0]),
        Binomial::from_exponents(&[0, 0, 0, 0, 0, 0, 1, 0], &[4, 0, 0, 4, 0, 1, 0, 0]),
        Binomial::from_exponents(&[0, 0, 0, 0, 0, 0, 0, 1], &[1, 0, 0, 1, 0, 1, 0, 0]),
    ]
    .into_iter()
    .flatten()
    .collect();
    for r in &rhos {
        ctx.require(&format!("{} lies in I_C", r.format(&names)), gb.contains(r), "");
    }
    let ia = toric_ideal(&a, &MonomialOrder::new(ctx.opts.order, 4))?;
    let mut all: Vec<Binomial> = ia.elements().iter().map(|e| e.embed(0, 8)).collect();
    all.extend(rhos);
    ctx.require("I_C = I_A + <rho1, rho2, rho3, rho4>", ideal_equal(&all, gb.elements(), gb.order()), "");
    Ok(())
}

fn line_k26(ctx: &mut Ctx) -> Result<(), Error> {
    let p = GluingProblem::new(ex_cm(), line(), 26, 5)?;
    let rho = p.binomial(&[2, 0, 0, 2], &[3, 0, 0, 1])?;
    let cert = ctx.verify(&p, &rho)?;
    ctx.expect("verdict for y1^3*y4 - x1^2*x4^2", verdict_name(Verdict::NotGluing), verdict_name(cert.verdict));
    let gb = cert.gb_c.as_ref().expect("verification stores the basis");
    let weights = p.c()?.column_sums();
    let mins = minimal_generators(gb.elements(), &weights)?;
    ctx.expect("minimal generators of I_C", 13, mins.len());
    ctx.require("rho lies in I_C", gb.contains(&rho), "");
    let deg = rho.plus.weighted_degree(&weights);
    let lower: Vec<Binomial> = gb.elements().iter().filter(|e| e.plus.weighted_degree(&weights) < deg).cloned().collect();
    ctx.require("rho is a minimal generator", !buchberger(&lower, gb.order()).contains(&rho), format!("degree {deg}"));
    Ok(())
}

fn n2_decisions(ctx: &mut Ctx) -> Result<(), Error> {
    let cases: [(&str, GeneratorSet, GeneratorSet, bool); 4] = [
        ("point (1,1) against the type-2 example", ex_cm(), point(&[1, 1]), true),
        ("line (1,1)*[11 17 25 19] against the type-2 example", ex_cm(), line(), true),
        ("point (3,0) against {(1,2),(2,1)}", gens(&[&[1, 2], &[2, 1]]), point(&[3, 0]), false),
        ("twisted cubic against itself", cubic(), cubic(), false),
    ];
    for (name, a, b, expected) in cases {
        let d = decide_n2(&a, &b)?;
        ctx.expect(&format!("{name}: can be glued"), expected, d.answer.is_yes());
        ctx.expect(&format!("{name}: any gluing is Cohen-Macaulay"), expected, d.gluing_is_cm);
    }
    Ok(())
}
