//! Subcommand implementations.

use semiglue::check::Check;
use semiglue::gluing::{
    build_rho, can_glue, decide_n2, simple_split_criterion, suggest_gluing, verify_gluing_with, Gluability,
    GluingProblem, SplitKind, VerifyOptions,
};
use semiglue::groebner::{default_names, minimal_generators, toric_ideal, MonomialOrder, OrderKind};
use semiglue::lattice::s_value;
use semiglue::resolution::{invariants, resolve, verify_gluing_homology, FieldChoice, HomologicalInvariants, ResolutionOptions};
use semiglue::{Error, GeneratorSet};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::problem::{ParseError, ProblemFile};
use crate::report::{tuple, vector, Report};

pub const SUBCOMMANDS: [&str; 12] = [
    "rank", "toric", "member", "cone", "dval", "sval", "glue-check", "glue-build", "glue-verify", "resolve", "invariants",
    "paper",
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    /// 1 for input errors, 2 for exceeded resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::ResourceLimit(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub order: OrderKind,
    pub field: FieldChoice,
    pub limit_vars: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { order: OrderKind::Grevlex, field: FieldChoice::Fp32003, limit_vars: 12 }
    }
}

impl Options {
    pub fn resolution(&self) -> ResolutionOptions {
        ResolutionOptions { field: self.field, order: self.order, max_vars: self.limit_vars, ..Default::default() }
    }

    fn check_vars(&self, count: usize) -> Result<(), CliError> {
        if count > self.limit_vars {
            return Err(Error::ResourceLimit(format!("{count} variables exceed --limit-vars {}", self.limit_vars)).into());
        }
        Ok(())
    }
}

/// Dispatches a subcommand other than `paper`.
pub fn run(subcommand: &str, problem: &ProblemFile, opts: &Options) -> Result<Report, CliError> {
    let mut report = Report::new(subcommand, Some(problem.clone()));
    match subcommand {
        "rank" => rank(problem, &mut report),
        "toric" => toric(problem, opts, &mut report)?,
        "member" => member(problem, &mut report)?,
        "cone" => cone(problem, &mut report)?,
        "dval" => dval(problem, &mut report)?,
        "sval" => sval(problem, &mut report)?,
        "glue-check" => glue_check(problem, &mut report)?,
        "glue-build" => glue_build(problem, &mut report)?,
        "glue-verify" => glue_verify(problem, opts, &mut report)?,
        "resolve" => resolve_cmd(problem, opts, &mut report)?,
        "invariants" => invariants_cmd(problem, opts, &mut report)?,
        other => return Err(CliError::Input(format!("unknown subcommand '{other}'"))),
    }
    Ok(report)
}

fn need_b(problem: &ProblemFile) -> Result<GeneratorSet, CliError> {
    problem.b_set().ok_or_else(|| CliError::Input("this subcommand needs B".into()))
}

fn need_k(problem: &ProblemFile) -> Result<(u64, u64), CliError> {
    match (problem.k1, problem.k2) {
        (Some(k1), Some(k2)) => Ok((k1, k2)),
        _ => Err(CliError::Input("this subcommand needs k1 and k2".into())),
    }
}

fn gluing_problem(problem: &ProblemFile) -> Result<GluingProblem, CliError> {
    let (k1, k2) = need_k(problem)?;
    Ok(GluingProblem::new(problem.a_set(), need_b(problem)?, k1, k2)?)
}

fn sets(problem: &ProblemFile) -> Vec<(&'static str, GeneratorSet)> {
    let mut out = vec![("A", problem.a_set())];
    if let Some(b) = problem.b_set() {
        out.push(("B", b));
    }
    out
}

fn shape(set: &GeneratorSet) -> Value {
    match SplitKind::of(set) {
        SplitKind::SimpleSplit { point } => json!({"kind": "point", "point": point}),
        SplitKind::Line(l) => json!({"kind": "line", "direction": l.direction, "multipliers": l.multipliers, "scale": l.scale}),
        SplitKind::General => json!({"kind": "general"}),
    }
}

fn rank(problem: &ProblemFile, report: &mut Report) {
    let mut result = Map::new();
    for (name, set) in sets(problem) {
        let rank = set.rank_dim();
        let redundant: Vec<usize> = set.redundant_generators().iter().map(|j| j + 1).collect();
        let sh = shape(&set);
        report.line(format!(
            "{name}: {} generators, rank {rank} in dimension {} ({})",
            set.len(),
            set.dim(),
            if set.is_nondegenerate() { "nondegenerate" } else { "degenerate" }
        ));
        report.line(format!("  shape: {}", sh["kind"].as_str().unwrap_or_default()));
        if let Some(dir) = sh.get("direction") {
            report.line(format!("  direction {dir}, multipliers {}, scale {}", sh["multipliers"], sh["scale"]));
        }
        if !redundant.is_empty() {
            report.line(format!("  redundant generators: {}", vector(&redundant)));
        }
        result.insert(
            name.into(),
            json!({"rank": rank, "dim": set.dim(), "nondegenerate": set.is_nondegenerate(), "shape": sh, "redundant": redundant}),
        );
    }
    report.result = Value::Object(result);
}

fn toric(problem: &ProblemFile, opts: &Options, report: &mut Report) -> Result<(), CliError> {
    let mut result = Map::new();
    let mut all: Vec<(String, GeneratorSet, Vec<String>)> =
        sets(problem).into_iter().map(|(n, s)| (n.to_string(), s.clone(), default_names(s.len()))).collect();
    if let (Some(k1), Some(k2), Some(b)) = (problem.k1, problem.k2, problem.b_set()) {
        let p = GluingProblem::new(problem.a_set(), b, k1, k2)?;
        all.push(("C".into(), p.c()?, p.names()));
    }
    for (name, set, names) in all {
        opts.check_vars(set.len())?;
        let order = MonomialOrder::new(opts.order, set.len());
        let gb = toric_ideal(&set, &order)?;
        let mins = minimal_generators(gb.elements(), &set.column_sums())?;
        report.line(format!("I_{name}: reduced Groebner basis with respect to {} ({} elements)", order.describe(), gb.len()));
        let elems: Vec<String> = gb.elements().iter().map(|e| e.format(&names)).collect();
        for e in &elems {
            report.line(format!("  {e}"));
        }
        report.line(format!("  minimal generators: {}", mins.len()));
        result.insert(
            name,
            json!({
                "order": order.describe(),
                "groebner_basis": elems,
                "minimal_generators": mins.iter().map(|e| e.format(&names)).collect::<Vec<_>>(),
            }),
        );
    }
    report.result = Value::Object(result);
    Ok(())
}

fn queries(problem: &ProblemFile) -> Result<Vec<Vec<u64>>, CliError> {
    Ok(need_b(problem)?.columns().to_vec())
}

fn member(problem: &ProblemFile, report: &mut Report) -> Result<(), CliError> {
    let a = problem.a_set();
    let mut out = Vec::new();
    for b in queries(problem)? {
        let w = a.membership(&b)?;
        match &w {
            Some(x) => report.line(format!("{} in <A>: A*{} = {}", vector(&b), vector(x), vector(&b))),
            None => report.line(format!("{} not in <A>", vector(&b))),
        }
        out.push(json!({"vector": b, "member": w.is_some(), "witness": w}));
    }
    report.result = Value::Array(out);
    Ok(())
}

fn cone(problem: &ProblemFile, report: &mut Report) -> Result<(), CliError> {
    let a = problem.a_set();
    let mut out = Vec::new();
    for b in queries(problem)? {
        let w = a.cone_membership(&b)?;
        let coeffs: Option<Vec<String>> = w.map(|r| r.iter().map(|x| x.to_string()).collect());
        match &coeffs {
            Some(c) => report.line(format!("{} in cone(A) with coefficients {}", vector(&b), vector(c))),
            None => report.line(format!("{} not in cone(A)", vector(&b))),
        }
        out.push(json!({"vector": b, "in_cone": coeffs.is_some(), "coefficients": coeffs}));
    }
    report.result = Value::Array(out);
    Ok(())
}

fn dval(problem: &ProblemFile, report: &mut Report) -> Result<(), CliError> {
    let a = problem.a_set();
    let mut out = Vec::new();
    for b in queries(problem)? {
        let dv = a.d_value(&b)?;
        report.line(format!("b = {}: d(A,b) = {}, s(A,b) = {}, A*{} = {}*b", vector(&b), dv.d, dv.s, vector(&dv.witness), dv.d));
        out.push(json!({"vector": b, "d": dv.d, "s": dv.s, "witness": dv.witness}));
    }
    report.result = Value::Array(out);
    Ok(())
}

fn sval(problem: &ProblemFile, report: &mut Report) -> Result<(), CliError> {
    let a = problem.a_set();
    let mut out = Vec::new();
    for b in queries(problem)? {
        let s = s_value(a.columns(), a.dim(), &b)?;
        report.line(format!("b = {}: s(A,b) = {s}", vector(&b)));
        out.push(json!({"vector": b, "s": s}));
    }
    report.result = Value::Array(out);
    Ok(())
}

fn gluability_json(g: &Gluability) -> Value {
    serde_json::to_value(g).expect("serializable")
}

fn describe(g: &Gluability) -> String {
    match g {
        Gluability::Yes(r) => format!("yes ({r})"),
        Gluability::No(r) => format!("no ({r})"),
        Gluability::Unknown(r) => format!("unknown ({r})"),
    }
}

fn glue_check(problem: &ProblemFile, report: &mut Report) -> Result<(), CliError> {
    let a = problem.a_set();
    let b = need_b(problem)?;
    let g = can_glue(&a, &b)?;
    report.line(format!("can glue: {}", describe(&g)));
    report.line(format!("shape of B: {}", SplitKind::of(&b).name()));
    let mut result = json!({"can_glue": gluability_json(&g), "shape_b": shape(&b)});
    if let (SplitKind::SimpleSplit { point }, Ok((k1, k2))) = (SplitKind::of(&b), need_k(problem)) {
        match simple_split_criterion(&a, &point, k1, k2) {
            Ok(c) => {
                report.line(format!(
                    "k1 = {k1}, k2 = {k2}: d = {}, s = {}, delta = {}, r = {} -> {}",
                    c.d,
                    c.s,
                    c.delta,
                    c.r,
                    if c.holds { "gluing" } else { "not a gluing" }
                ));
                result["criterion"] = serde_json::to_value(&c).expect("serializable");
            }
            Err(Error::NotInCone) => report.line("no multiple of b lies in <A>"),
            Err(e) => return Err(e.into()),
        }
    }
    if a.dim() == 2 {
        match decide_n2(&a, &b) {
            Ok(d) => {
                report.line(format!("n = 2 decision over {}: {}", FieldChoice::default().name(), describe(&d.answer)));
                if d.answer.is_yes() {
                    report.line("  every such gluing has a Cohen-Macaulay ring");
                }
                result["n2"] = json!({"answer": gluability_json(&d.answer), "gluing_is_cm": d.gluing_is_cm, "field": FieldChoice::default().name()});
            }
            Err(Error::NotApplicable(why)) => {
                report.line(format!("n = 2 decision not applicable: {why}"));
                result["n2"] = json!({"not_applicable": why});
            }
            Err(e) => return Err(e.into()),
        }
    }
    report.result = result;
    Ok(())
}

fn glue_build(problem: &ProblemFile, report: &mut Report) -> Result<(), CliError> {
    let b = need_b(problem)?;
    if problem.k1.is_none() || problem.k2.is_none() {
        let s = suggest_gluing(&problem.a_set(), &b, 6)?;
        report.line(format!("suggestions ({}{}):", s.split, if s.swapped { ", roles of A and B exchanged" } else { "" }));
        for x in &s.suggestions {
            report.line(format!("  k1 = {}, k2 = {}: rho = {} [{:?}]", x.k1, x.k2, x.rho_text, x.verdict));
        }
        if let Some(t) = s.squarefree_t {
            report.line(format!("d is squarefree: any k2 divisible by t = {t} works"));
        }
        report.result = json!({
            "swapped": s.swapped,
            "split": s.split,
            "suggestions": s.suggestions.iter().map(|x| json!({"k1": x.k1, "k2": x.k2, "rho": x.rho_text, "verdict": x.verdict})).collect::<Vec<_>>(),
            "squarefree_t": s.squarefree_t,
        });
        return Ok(());
    }
    let p = gluing_problem(problem)?;
    let cert = build_rho(&p)?;
    report.line(format!("{} with k1 = {}, k2 = {}", cert.split, cert.k1, cert.k2));
    report.line(format!("rho = {}", cert.rho_text));
    if let Some(w) = &cert.witnesses {
        report.line(format!("d = {}, s = {}, A*{} = d*b", w.d, w.s, vector(&w.d_coefficients)));
        if let (Some(delta), Some(r)) = (w.delta, w.r) {
            report.line(format!("delta = {delta}, r = {r}"));
        }
        if let Some(v) = &w.v_coefficients {
            report.line(format!("v = {} (level {})", vector(v), w.level.unwrap_or_default()));
        }
    }
    for warn in &cert.warnings {
        report.line(format!("warning: {warn}"));
    }
    report.result = json!({
        "split": cert.split, "k1": cert.k1, "k2": cert.k2, "original_k": [cert.original_k.0, cert.original_k.1],
        "rho": cert.rho_text, "witnesses": cert.witnesses, "warnings": cert.warnings,
    });
    Ok(())
}

fn glue_verify(problem: &ProblemFile, opts: &Options, report: &mut Report) -> Result<(), CliError> {
    let p = gluing_problem(problem)?;
    opts.check_vars(p.p() + p.q())?;
    let rho = match problem.rho_binomial() {
        Some(r) => r,
        None => build_rho(&p)?.rho,
    };
    let cert = verify_gluing_with(&p, &rho, &VerifyOptions { order: opts.order, elimination_checks: true })?;
    let names = p.names();
    let gb = cert.gb_c.as_ref().expect("verification stores the basis");
    report.line(format!("C = {}*A u {}*B, order {}", cert.k1, cert.k2, cert.order));
    report.line(format!("rho = {}", cert.rho_text));
    report.line(format!("verdict: {:?}", cert.verdict));
    report.line(format!("I_C has a reduced Groebner basis of {} elements", gb.len()));
    if !cert.extra_generators.is_empty() {
        report.line("generators of I_C missing from I_A + I_B + <rho>:");
        for e in &cert.extra_generators_text {
            report.line(format!("  {e}"));
        }
    }
    for warn in &cert.warnings {
        report.line(format!("warning: {warn}"));
    }
    report.checks = cert.checks.clone();
    report.result = json!({
        "verdict": cert.verdict, "k1": cert.k1, "k2": cert.k2, "rho": cert.rho_text, "order": cert.order,
        "split": cert.split, "witnesses": cert.witnesses,
        "extra_generators": cert.extra_generators_text,
        "groebner_basis_c": gb.elements().iter().map(|e| e.format(&names)).collect::<Vec<_>>(),
        "warnings": cert.warnings,
    });
    Ok(())
}

fn with_c(problem: &ProblemFile) -> Result<Vec<(&'static str, GeneratorSet)>, CliError> {
    let mut all = sets(problem);
    if problem.k1.is_some() && problem.k2.is_some() && problem.b.is_some() {
        all.push(("C", gluing_problem(problem)?.c()?));
    }
    Ok(all)
}

fn resolve_cmd(problem: &ProblemFile, opts: &Options, report: &mut Report) -> Result<(), CliError> {
    let ropts = opts.resolution();
    let mut result = Map::new();
    for (name, set) in with_c(problem)? {
        let r = resolve(&set, &ropts)?;
        report.line(format!("k[{name}] over {} (toric ideal by {}):", r.field, r.order));
        report.line(format!("  betti numbers {}", tuple(&r.betti.betti)));
        for (i, g) in r.betti.graded.iter().enumerate() {
            let parts: Vec<String> = g.iter().map(|(d, c)| format!("{c}x{}", vector(d))).collect();
            report.line(format!("  beta_{i}: {}", parts.join(" ")));
        }
        report.checks.extend(r.checks.iter().map(|c| Check::new(format!("{name}: {}", c.name), c.passed, c.detail.clone())));
        result.insert(
            name.into(),
            json!({"field": r.field, "order": r.order, "betti": r.betti, "shapes": r.shapes}),
        );
    }
    report.result = Value::Object(result);
    Ok(())
}

fn inv_line(name: &str, inv: &HomologicalInvariants) -> String {
    format!(
        "k[{name}]: betti {}, dim {}, pd {}, depth {}, {}, type {}",
        tuple(&inv.betti.betti),
        inv.dim,
        inv.pd,
        inv.depth,
        if inv.is_cm { "Cohen-Macaulay" } else { "not Cohen-Macaulay" },
        inv.cm_type
    )
}

fn invariants_cmd(problem: &ProblemFile, opts: &Options, report: &mut Report) -> Result<(), CliError> {
    let ropts = opts.resolution();
    report.line(format!("field {}, toric ideals by {}", ropts.field.name(), MonomialOrder::new(opts.order, 1).describe()));
    let mut result = Map::new();
    result.insert("field".into(), json!(ropts.field.name()));
    for (name, set) in with_c(problem)? {
        let inv = invariants(&set, &ropts)?;
        report.line(inv_line(name, &inv));
        report.checks.push(Check::new(
            format!("Auslander-Buchsbaum for k[{name}]"),
            inv.auslander_buchsbaum(),
            format!("depth {} + pd {} = {} variables", inv.koszul_depth.unwrap_or(inv.depth), inv.pd, inv.nvars),
        ));
        result.insert(name.into(), serde_json::to_value(&inv).expect("serializable"));
    }
    if problem.k1.is_some() && problem.k2.is_some() && problem.b.is_some() {
        let p = gluing_problem(problem)?;
        let rho = match problem.rho_binomial() {
            Some(r) => Some(r),
            None => build_rho(&p).ok().map(|c| c.rho),
        };
        if let Some(rho) = rho {
            let cert = verify_gluing_with(&p, &rho, &VerifyOptions { order: opts.order, elimination_checks: false })?;
            report.line(format!("gluing with rho = {}: {:?}", cert.rho_text, cert.verdict));
            if cert.is_gluing() {
                let h = verify_gluing_homology(&p, &cert, &ropts)?;
                report.line(format!("predicted betti numbers of k[C]: {}", tuple(&h.predicted.betti)));
                let known: Vec<String> = report.checks.iter().map(|c| c.name.clone()).collect();
                report.checks.extend(h.checks.iter().filter(|c| !known.contains(&c.name)).cloned());
                result.insert("predicted_c".into(), json!(h.predicted.betti));
            }
            result.insert("verdict".into(), json!(cert.verdict));
        }
    }
    report.result = Value::Object(result);
    Ok(())
}
