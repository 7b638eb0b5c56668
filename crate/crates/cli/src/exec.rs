//! Runs a parsed script against an engine and collects a report.

use std::collections::HashMap;
use std::sync::Arc;

use linkage_core::algebra::Vector;
use linkage_core::error::Error;
use linkage_core::harness::{
    self, generate_corpus, CorpusSize, HypothesisStatus, Instance, TheoremId, TheoremReport,
    Verdict,
};
use linkage_core::ring::{Budget, Ring};
use linkage_core::{
    BoundedIndex, BoundedVerdict, Config, Engine, GcDimVerdict, IsoVerdict, Module, ResolutionCache,
};
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::ast::*;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub bound: Option<usize>,
    pub max_probe_height: Option<usize>,
    pub seed: u64,
    pub budget: Budget,
    pub fail_fast: bool,
    pub strict: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let c = Config::default();
        RunConfig {
            bound: c.bound,
            max_probe_height: c.max_probe_height,
            seed: c.seed,
            // the built-in corpus rings need the larger rank cap
            budget: Budget {
                max_rank: 2048,
                ..c.budget
            },
            fail_fast: false,
            strict: false,
        }
    }
}

impl RunConfig {
    pub fn engine_config(&self) -> Config {
        Config {
            bound: self.bound,
            budget: self.budget,
            seed: self.seed,
            max_probe_height: self.max_probe_height,
            ..Config::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Partial,
    Inapplicable,
    Unknown,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigView {
    pub bound: Option<usize>,
    pub max_probe_height: Option<usize>,
    pub seed: u64,
    pub max_degree: i32,
    pub max_rank: usize,
    pub strict: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Declaration {
    pub kind: &'static str,
    pub name: String,
    pub line: usize,
    /// Description of the value, or the error that prevented building it.
    pub value: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub kind: &'static str,
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Json>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Json>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub status: Status,
    pub line: usize,
    /// Plain-text rendering; not part of the JSON.
    #[serde(skip)]
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub config: ConfigView,
    pub declarations: Vec<Declaration>,
    pub results: Vec<Entry>,
    pub exit_code: i32,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_INAPPLICABLE: i32 = 4;

impl RunReport {
    fn compute_exit(&self, strict: bool) -> i32 {
        let has = |s: Status| self.results.iter().any(|r| r.status == s);
        if has(Status::Fail) || self.declarations.iter().any(|d| !d.ok) {
            EXIT_FAIL
        } else if has(Status::Unknown) {
            EXIT_UNKNOWN
        } else if strict && has(Status::Inapplicable) {
            EXIT_INAPPLICABLE
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.declarations {
            let mark = if d.ok { "" } else { "error: " };
            out.push_str(&format!("{} {} = {mark}{}\n", d.kind, d.name, d.value));
        }
        for r in &self.results {
            out.push_str(&r.text);
            if !r.text.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Clone)]
enum Value {
    Ring(Ring),
    Module(Module),
}

enum Count {
    Finite(i64),
    Infinite(String),
    Unknown(String),
}

/// A computed expression that is not a module.
enum Answer {
    Module(Module),
    Bool {
        holds: Option<bool>,
        exact: bool,
        detail: String,
    },
    Count(Count),
    Table {
        json: Json,
        text: String,
    },
}

struct Runner<'a> {
    e: &'a Engine,
    env: HashMap<String, Option<Value>>,
}

fn err_status(e: &Error) -> Status {
    match e {
        Error::Budget(_) => Status::Unknown,
        Error::Inapplicable(_) => Status::Inapplicable,
        Error::Structural(_) => Status::Fail,
    }
}

fn idx(i: i64) -> Result<usize, Error> {
    usize::try_from(i).map_err(|_| Error::Structural(format!("index {i} must be non-negative")))
}

fn bounded_bool(v: BoundedVerdict) -> Answer {
    Answer::Bool {
        holds: Some(v.holds()),
        exact: v.is_exact(),
        detail: v.label(),
    }
}

fn iso_bool(v: IsoVerdict) -> Answer {
    let holds = v.is_resolved().then(|| v.is_isomorphic());
    Answer::Bool {
        holds,
        exact: v.is_resolved(),
        detail: format!("{}: {}", v.kind(), v.detail()),
    }
}

fn exact_bool(b: bool) -> Answer {
    Answer::Bool {
        holds: Some(b),
        exact: true,
        detail: b.to_string(),
    }
}

impl Runner<'_> {
    fn ring(&self, name: &str) -> Result<Ring, Error> {
        match self.env.get(name) {
            Some(Some(Value::Ring(r))) => Ok(r.clone()),
            Some(Some(Value::Module(m))) => Ok(m.ring().clone()),
            _ => Err(Error::Structural(format!("'{name}' was not built"))),
        }
    }

    fn polys(&self, ring: &Ring, ps: &[PolyText]) -> Result<Vec<Vector>, Error> {
        ps.iter().map(|p| ring.poly(&p.text)).collect()
    }

    fn build_ring(&self, def: &RingDef, budget: Budget) -> Result<Ring, Error> {
        match def {
            RingDef::Poly { field, vars } => Ring::quotient_raw(*field, vars.clone(), &[], budget),
            RingDef::Quotient { base, relations } => {
                let base = self.ring(base)?;
                let rels = self.polys(&base, relations)?;
                base.quotient(&rels)
            }
        }
    }

    fn module(&self, e: &Expr) -> Result<Module, Error> {
        if let Expr::Name(n) = e {
            if let Some(Some(Value::Ring(r))) = self.env.get(n) {
                return Ok(Module::free(r, &[0]));
            }
        }
        match self.eval(e)? {
            Answer::Module(m) => Ok(m),
            _ => Err(Error::Structural(format!("'{e}' is not a module"))),
        }
    }

    fn bound(&self, m: &Module) -> usize {
        self.e.bound_for(m.ring().nvars())
    }

    fn eval(&self, expr: &Expr) -> Result<Answer, Error> {
        let (name, args) = match expr {
            Expr::Name(n) => {
                return match self.env.get(n) {
                    Some(Some(Value::Module(m))) => Ok(Answer::Module(m.clone())),
                    Some(Some(Value::Ring(r))) => {
                        let inv = r.invariants()?;
                        Ok(Answer::Table {
                            json: json!({
                                "ring": r.describe(),
                                "dim": inv.dim,
                                "depth": inv.depth,
                                "codim": inv.codim,
                                "cohen_macaulay": inv.is_cm,
                                "gorenstein": inv.is_gorenstein,
                            }),
                            text: format!(
                                "{} (dim {}, depth {}, codim {}, CM {}, Gorenstein {})",
                                r.describe(),
                                inv.dim,
                                inv.depth,
                                inv.codim,
                                inv.is_cm,
                                inv.is_gorenstein
                            ),
                        })
                    }
                    _ => Err(Error::Structural(format!(
                        "'{n}' depends on a declaration that failed"
                    ))),
                };
            }
            Expr::Call(name, args) => (name.as_str(), args),
        };
        let m = |i: usize| match &args[i] {
            Arg::Expr(e) => self.module(e),
            Arg::Int(_) => unreachable!("checked by the parser"),
        };
        let int = |i: usize| match &args[i] {
            Arg::Int(v) => idx(*v),
            Arg::Expr(_) => unreachable!("checked by the parser"),
        };
        let e = self.e;
        let module = |r: Result<Module, Error>| r.map(Answer::Module);
        match name {
            "lambda" => module(e.lambda(&m(0)?)),
            "transpose" => module(e.transpose(&m(0)?)),
            "transpose_wrt" => module(e.transpose_wrt(&m(0)?, &m(1)?)),
            "syzygy" => module(e.syzygy(&m(0)?, int(1)?)),
            "ext" => module(e.ext(&m(0)?, &m(1)?, int(2)?)),
            "tor" => module(e.tor(&m(0)?, &m(1)?, int(2)?)),
            "tensor" => module(e.tensor(&m(0)?, &m(1)?)),
            "hom" => module(e.hom(&m(0)?, &m(1)?)),
            "dual" => module(e.dual(&m(0)?)),
            "pushforward" => module(e.universal_pushforward(&m(0)?, &m(1)?).map(|p| p.cokernel)),
            "stable_part" => module(e.stable_part(&m(0)?)),
            "canonical" => {
                let Arg::Expr(Expr::Name(r)) = &args[0] else {
                    unreachable!("checked by the parser")
                };
                module(e.canonical_module(&self.ring(r)?))
            }
            "is_horizontally_linked" => Ok(exact_bool(e.is_horizontally_linked(&m(0)?)?.verdict)),
            "is_stable" => Ok(exact_bool(e.is_stable(&m(0)?)?.0)),
            "serre_tilde" => Ok(bounded_bool(e.serre_tilde(&m(0)?, int(1)?)?)),
            "is_cm" => Ok(exact_bool(e.is_cm(&m(0)?)?)),
            "is_mcm" => Ok(exact_bool(e.is_mcm(&m(0)?)?)),
            "is_zero" => Ok(exact_bool(m(0)?.is_zero()?)),
            "in_auslander_class" => {
                let mm = m(0)?;
                Ok(bounded_bool(e.in_auslander_class(
                    &mm,
                    &m(1)?,
                    self.bound(&mm),
                )?))
            }
            "is_semidualizing" => {
                let c = m(0)?;
                let cert = e.is_semidualizing(&c, self.bound(&c))?;
                let resolved = cert.homothety.is_resolved();
                Ok(Answer::Bool {
                    holds: (resolved || !cert.ext_vanishing.holds()).then(|| cert.is_valid()),
                    exact: resolved && cert.ext_vanishing.is_exact(),
                    detail: format!(
                        "homothety {}, Ext vanishing {}",
                        cert.homothety.kind(),
                        cert.ext_vanishing.label()
                    ),
                })
            }
            "iso" => Ok(iso_bool(
                e.is_isomorphic(&m(0)?.minimal()?, &m(1)?.minimal()?)?,
            )),
            "is_self_linked" => Ok(iso_bool(e.is_self_linked(&m(0)?)?)),
            "depth" => Ok(Answer::Count(match e.depth(&m(0)?)? {
                Some(d) => Count::Finite(d as i64),
                None => Count::Infinite("zero module".into()),
            })),
            "dim" => Ok(Answer::Count(match e.krull_dim(&m(0)?)? {
                Some(d) => Count::Finite(d as i64),
                None => Count::Finite(-1),
            })),
            "rgr" => {
                let mm = m(0)?;
                Ok(Answer::Count(
                    match e.reduced_grade(&mm, &m(1)?, self.bound(&mm))? {
                        BoundedIndex::Exact(v) => Count::Finite(v as i64),
                        BoundedIndex::InfinityUpTo(b) => {
                            Count::Infinite(format!("no nonvanishing Ext through {b}"))
                        }
                    },
                ))
            }
            "gc_dim" => {
                let mm = m(0)?;
                Ok(Answer::Count(
                    match e.gc_dim(&mm, &m(1)?, self.bound(&mm))? {
                        GcDimVerdict::Zero { .. } => Count::Finite(0),
                        GcDimVerdict::Finite { value, .. } => Count::Finite(value as i64),
                        GcDimVerdict::PositiveUnknown { note, .. } => Count::Unknown(note),
                        GcDimVerdict::Infinite { witness } => Count::Infinite(witness),
                    },
                ))
            }
            "betti" => {
                let mm = m(0)?;
                let res = e.resolution(&mm, self.bound(&mm))?;
                let table = res.betti();
                let text = table
                    .iter()
                    .map(|(i, j, c)| format!("β_{i},{j}={c}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                Ok(Answer::Table {
                    json: json!({ "entries": table, "complete": res.complete }),
                    text: if res.complete {
                        text
                    } else {
                        format!("{text} (through {})", res.length())
                    },
                })
            }
            "hilbert" => {
                let h = m(0)?.hilbert_series()?;
                let (num, n) = h.reduced();
                Ok(Answer::Table {
                    json: json!({ "low": num.low, "numerator": num.coeffs, "denominator_exponent": n }),
                    text: format!("({num}) / (1-t)^{n}"),
                })
            }
            other => Err(Error::Structural(format!("unknown function '{other}'"))),
        }
    }
}

fn count_json(c: &Count) -> Json {
    match c {
        Count::Finite(v) => json!(v),
        Count::Infinite(_) => json!("inf"),
        Count::Unknown(_) => Json::Null,
    }
}

fn count_text(c: &Count) -> String {
    match c {
        Count::Finite(v) => v.to_string(),
        Count::Infinite(why) => format!("inf ({why})"),
        Count::Unknown(why) => format!("unknown ({why})"),
    }
}

fn entry(kind: &'static str, name: String, line: usize, status: Status) -> Entry {
    Entry {
        kind,
        name,
        line,
        status,
        value: None,
        report: None,
        detail: None,
        text: String::new(),
    }
}

fn error_entry(name: String, line: usize, err: &Error) -> Entry {
    let mut en = entry("error", name.clone(), line, err_status(err));
    en.detail = Some(err.to_string());
    en.text = format!("ERROR {name}: {err}");
    en
}

fn report_status(r: &TheoremReport) -> Status {
    match &r.verdict {
        Verdict::Verified => Status::Pass,
        Verdict::Refuted { .. } => Status::Fail,
        Verdict::PartiallyVerified { .. } => Status::Partial,
        Verdict::Inapplicable { reason } if reason.starts_with("budget exceeded") => {
            Status::Unknown
        }
        Verdict::Inapplicable { .. } => Status::Inapplicable,
    }
}

fn worst(a: Status, b: Status) -> Status {
    let rank = |s| match s {
        Status::Pass => 0,
        Status::Partial => 1,
        Status::Inapplicable => 2,
        Status::Unknown => 3,
        Status::Fail => 4,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn report_text(r: &TheoremReport) -> String {
    let mut s = format!("{} on {}: {}", r.id, r.instance, r.verdict.label());
    match &r.verdict {
        Verdict::Refuted { witness } => s.push_str(&format!(" ({witness})")),
        Verdict::Inapplicable { reason } => s.push_str(&format!(" ({reason})")),
        Verdict::PartiallyVerified { detail } => s.push_str(&format!(" ({detail})")),
        Verdict::Verified => {}
    }
    if r.suspected_counterexample {
        s.push_str(" [suspected counterexample]");
    }
    s
}

/// Executes every statement in order.
pub fn run(script: &Script, cfg: &RunConfig, cache: Option<Arc<dyn ResolutionCache>>) -> RunReport {
    let config = cfg.engine_config();
    let engine = match cache {
        Some(c) => Engine::with_cache(config, c),
        None => Engine::new(config),
    };
    let mut r = Runner {
        e: &engine,
        env: HashMap::new(),
    };
    let mut report = RunReport {
        version: env!("CARGO_PKG_VERSION"),
        config: ConfigView {
            bound: cfg.bound,
            max_probe_height: cfg.max_probe_height,
            seed: cfg.seed,
            max_degree: cfg.budget.max_degree,
            max_rank: cfg.budget.max_rank,
            strict: cfg.strict,
        },
        declarations: Vec::new(),
        results: Vec::new(),
        exit_code: 0,
    };
    for (k, stmt) in script.stmts.iter().enumerate() {
        let line = script.positions.get(k).map_or(0, |p| p.line);
        let stop = match stmt {
            Stmt::Ring { name, def } => {
                let built = r.build_ring(def, cfg.budget);
                declare(
                    &mut r,
                    &mut report,
                    "ring",
                    name,
                    line,
                    built.map(Value::Ring),
                    cfg.fail_fast,
                )
            }
            Stmt::Module {
                name,
                ring,
                twists,
                rows,
            } => {
                let built = r.ring(ring).and_then(|ring| {
                    if rows.is_empty() {
                        return Ok(Module::free(&ring, twists));
                    }
                    let rows: Vec<Vec<Vector>> = rows
                        .iter()
                        .map(|row| r.polys(&ring, row))
                        .collect::<Result<_, _>>()?;
                    Module::from_rows(&ring, twists.clone(), &rows)
                });
                declare(
                    &mut r,
                    &mut report,
                    "module",
                    name,
                    line,
                    built.map(Value::Module),
                    cfg.fail_fast,
                )
            }
            Stmt::Let { name, expr } => {
                let built = r.module(expr);
                declare(
                    &mut r,
                    &mut report,
                    "let",
                    name,
                    line,
                    built.map(Value::Module),
                    cfg.fail_fast,
                )
            }
            Stmt::Print { expr } => push(&mut report, cfg, print_entry(&r, expr, line)),
            Stmt::Assert { expr, cmp } => {
                push(&mut report, cfg, assert_entry(&r, expr, *cmp, line))
            }
            Stmt::Check { id, bindings } => {
                push(&mut report, cfg, check_entry(&r, *id, bindings, line))
            }
            Stmt::Suite { ids, ring, size } => {
                push(&mut report, cfg, suite_entry(&r, ids, ring, *size, line))
            }
        };
        if stop {
            break;
        }
    }
    report.exit_code = report.compute_exit(cfg.strict);
    report
}

/// Records a declaration; returns whether to stop.
fn declare(
    r: &mut Runner,
    report: &mut RunReport,
    kind: &'static str,
    name: &str,
    line: usize,
    built: Result<Value, Error>,
    fail_fast: bool,
) -> bool {
    let (value, ok, stored) = match built {
        Ok(Value::Ring(ring)) => (ring.describe(), true, Some(Value::Ring(ring))),
        Ok(Value::Module(m)) => (m.describe(), true, Some(Value::Module(m))),
        Err(e) => (e.to_string(), false, None),
    };
    r.env.insert(name.to_string(), stored);
    report.declarations.push(Declaration {
        kind,
        name: name.to_string(),
        line,
        value,
        ok,
    });
    !ok && fail_fast
}

fn push(report: &mut RunReport, cfg: &RunConfig, en: Entry) -> bool {
    let stop = cfg.fail_fast && matches!(en.status, Status::Fail | Status::Unknown);
    report.results.push(en);
    stop
}

fn print_entry(r: &Runner, expr: &Expr, line: usize) -> Entry {
    let name = expr.to_string();
    let answer = match r.eval(expr) {
        Ok(a) => a,
        Err(err) => return error_entry(name, line, &err),
    };
    match answer {
        Answer::Module(m) => {
            let desc = m.describe();
            let mut en = entry("module", name.clone(), line, Status::Pass);
            en.text = format!("{name} = {desc}");
            en.value = Some(json!(desc));
            en
        }
        Answer::Bool {
            holds,
            exact,
            detail,
        } => {
            let status = match holds {
                None => Status::Unknown,
                Some(_) if exact => Status::Pass,
                Some(_) => Status::Partial,
            };
            let mut en = entry("invariant", name.clone(), line, status);
            en.value = Some(json!(holds));
            en.text = match holds {
                Some(b) => format!("{name} = {b} ({detail})"),
                None => format!("{name} = unknown ({detail})"),
            };
            en.detail = Some(detail);
            en
        }
        Answer::Count(c) => {
            let status = if matches!(c, Count::Unknown(_)) {
                Status::Unknown
            } else {
                Status::Pass
            };
            let mut en = entry("invariant", name.clone(), line, status);
            en.value = Some(count_json(&c));
            en.text = format!("{name} = {}", count_text(&c));
            if let Count::Infinite(why) | Count::Unknown(why) = &c {
                en.detail = Some(why.clone());
            }
            en
        }
        Answer::Table { json, text } => {
            let mut en = entry("invariant", name.clone(), line, Status::Pass);
            en.value = Some(json);
            en.text = format!("{name} = {text}");
            en
        }
    }
}

fn assert_entry(r: &Runner, expr: &Expr, cmp: Option<(CmpOp, i64)>, line: usize) -> Entry {
    let name = match cmp {
        Some((op, v)) => format!("{expr} {} {v}", op.symbol()),
        None => expr.to_string(),
    };
    let answer = match r.eval(expr) {
        Ok(a) => a,
        Err(err @ Error::Inapplicable(_)) => {
            let mut en = error_entry(name, line, &err);
            en.status = Status::Fail;
            return en;
        }
        Err(err) => return error_entry(name, line, &err),
    };
    let (passed, detail) = match (answer, cmp) {
        (Answer::Bool { holds, detail, .. }, None) => (holds, format!("{expr} is {detail}")),
        (Answer::Count(c), Some((op, v))) => {
            let lhs = match &c {
                Count::Finite(x) => Some(Some(*x)),
                Count::Infinite(_) => Some(None),
                Count::Unknown(_) => None,
            };
            let f = match expr {
                Expr::Call(f, _) => f.as_str(),
                Expr::Name(n) => n.as_str(),
            };
            (
                lhs.map(|l| op.eval(l, v)),
                format!("{f} = {}", count_text(&c)),
            )
        }
        _ => (None, "expression cannot be asserted".to_string()),
    };
    let status = match passed {
        Some(true) => Status::Pass,
        Some(false) => Status::Fail,
        None => Status::Unknown,
    };
    let mut en = entry("assert", name.clone(), line, status);
    en.value = Some(json!(passed));
    en.text = match passed {
        Some(true) => format!("PASS assert {name} ({detail})"),
        Some(false) => format!("FAIL assert {name} ({detail})"),
        None => format!("UNKNOWN assert {name} ({detail})"),
    };
    en.detail = Some(detail);
    en
}

fn build_instance(r: &Runner, label: String, bindings: &[Binding]) -> Result<Instance, Error> {
    let get = |k: &str| bindings.iter().find(|b| b.key == k).map(|b| &b.value);
    let Some(BindValue::Expr(me)) = get("M") else {
        return Err(Error::Structural("a module binding M is required".into()));
    };
    let m = r.module(me)?;
    let mut inst = Instance::new(label, m.clone());
    if let Some(BindValue::Expr(ce)) = get("C") {
        inst = inst.with_c(r.module(ce)?);
    }
    if let Some(BindValue::Int(n)) = get("n") {
        inst = inst.with_n(idx(*n)?);
    }
    for key in ["I", "a", "c1", "c2"] {
        if let Some(BindValue::Ideal(ps)) = get(key) {
            inst = inst.with_ideal(r.polys(m.ring(), ps)?);
        }
    }
    Ok(inst)
}

fn check_entry(r: &Runner, id: TheoremId, bindings: &[Binding], line: usize) -> Entry {
    let args: Vec<String> = bindings
        .iter()
        .map(|b| format!("{}={}", b.key, b.value))
        .collect();
    let name = format!("{id}({})", args.join(", "));
    let rep = build_instance(r, args.join(", "), bindings)
        .and_then(|inst| harness::check(r.e, id, &inst));
    let rep = match rep {
        Ok(rep) => rep,
        Err(err) => return error_entry(name, line, &err),
    };
    let mut en = entry("check", name, line, report_status(&rep));
    let mut text = report_text(&rep);
    for h in &rep.hypothesis_status {
        let status = match &h.status {
            HypothesisStatus::Exact => "holds".to_string(),
            HypothesisStatus::BoundedTrue { bound } => format!("holds through {bound}"),
            HypothesisStatus::ProbeVerified { probes } => {
                format!("holds at {} probe primes", probes.len())
            }
            HypothesisStatus::Failed { detail } => format!("fails ({detail})"),
        };
        text.push_str(&format!("\n  hypothesis {}: {status}", h.hypothesis));
    }
    for n in &rep.notes {
        text.push_str(&format!("\n  note: {n}"));
    }
    en.text = text;
    en.report = Some(serde_json::to_value(&rep).expect("report serializes"));
    en
}

fn suite_entry(r: &Runner, ids: &[TheoremId], ring: &str, size: CorpusSize, line: usize) -> Entry {
    let ids: Vec<TheoremId> = if ids.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        ids.to_vec()
    };
    let name = format!(
        "suite [{}] on corpus({ring}, {})",
        ids.iter().map(|i| i.name()).collect::<Vec<_>>().join(" "),
        size_name(size)
    );
    let instances = r
        .ring(ring)
        .and_then(|ring| corpus_instances(r.e, &ring, size));
    let instances = match instances {
        Ok(i) => i,
        Err(err) => return error_entry(name, line, &err),
    };
    let res = harness::run_suite(r.e, &instances, &ids);
    let status = res
        .reports
        .iter()
        .map(report_status)
        .fold(Status::Pass, worst);
    let s = res.summary;
    let mut text = format!(
        "{name}: {} checks, {} verified, {} partial, {} inapplicable, {} refuted ({} exact)",
        s.total, s.verified, s.partial, s.inapplicable, s.refuted, s.refuted_exact
    );
    for rep in &res.reports {
        if matches!(rep.verdict, Verdict::Refuted { .. }) || report_status(rep) == Status::Unknown {
            text.push_str(&format!("\n  {}", report_text(rep)));
        }
    }
    let mut en = entry("suite", name, line, status);
    en.text = text;
    en.report = Some(serde_json::to_value(&res).expect("report serializes"));
    en
}

/// The corpus over `ring` with `C = R`, and with `C = ω` as well on non-Gorenstein CM rings.
pub fn corpus_instances(e: &Engine, ring: &Ring, size: CorpusSize) -> Result<Vec<Instance>, Error> {
    if ring.nvars() < 2 {
        return Err(Error::Inapplicable(
            "the corpus needs at least two variables".into(),
        ));
    }
    let entries = generate_corpus(e, ring, size)?;
    let inv = ring.invariants()?;
    let mut out: Vec<Instance> = entries
        .iter()
        .map(|en| Instance::new(en.label.clone(), en.module.clone()))
        .collect();
    if inv.is_cm && !inv.is_gorenstein {
        let w = e.canonical_module(ring)?;
        out.extend(entries.iter().map(|en| {
            Instance::new(format!("{} [C=ω]", en.label), en.module.clone()).with_c(w.clone())
        }));
    }
    Ok(out)
}
