//! Task execution and reports.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use fgring_core::abelfun::functor_eval;
use fgring_core::abelhom::homology;
use fgring_core::idealeng::{decide_word, identity_report, Config, Context, Verdict, Witness};
use fgring_core::quotlab::{
    build_cocycle, cocycle_identity_check, commutator_product_check, commutator_product_word, hall_witt_tuples,
    inverse_symmetry_check, square_membership_suite, CosetTable,
};
use fgring_core::words::Word;
use fgring_core::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus;
use crate::scenario::{perms_of, Expect, QuotSpec, Scenario, Task, TaskDecl, Tuples};

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub jobs: usize,
    /// Only changes the order in which workers pick up tasks and the
    /// randomized transversals of cocycle tasks.
    pub seed: u64,
    pub degree: Option<usize>,
    pub radius: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { jobs: 1, seed: 0, degree: None, radius: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Unknown,
    Skip,
    /// Ran without an expectation to compare against.
    Done,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unknown => "unknown",
            Status::Skip => "skip",
            Status::Done => "done",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TaskReport {
    pub index: usize,
    pub kind: &'static str,
    pub subject: String,
    pub status: Status,
    pub fields: Vec<(&'static str, String)>,
    pub elapsed: Duration,
}

impl TaskReport {
    pub fn field(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub name: String,
    pub tasks: Vec<TaskReport>,
    pub elapsed: Duration,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.tasks.iter().any(|t| t.status == Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.tasks.iter().filter(|t| t.status == s).count()
    }
}

fn quote(v: &str) -> String {
    if !v.is_empty() && v.chars().all(|c| c.is_ascii_graphic() && c != '"' && c != '=') {
        v.into()
    } else {
        format!("\"{}\"", v.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// One `key=value` line per task, keys in a fixed order.
pub fn render_machine(reports: &[Report], timings: bool) -> String {
    let mut out = String::new();
    for r in reports {
        for t in &r.tasks {
            write!(
                out,
                "scenario={} task={} kind={} status={} subject={}",
                quote(&r.name),
                t.index + 1,
                t.kind,
                t.status.as_str(),
                quote(&t.subject)
            )
            .unwrap();
            for (k, v) in &t.fields {
                write!(out, " {}={}", k, quote(v)).unwrap();
            }
            if timings {
                write!(out, " ms={}", t.elapsed.as_millis()).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

pub fn render_text(reports: &[Report], timings: bool) -> String {
    let mut out = String::new();
    let (mut n, mut pass, mut fail, mut unknown) = (0, 0, 0, 0);
    for r in reports {
        writeln!(out, "== {} ({} tasks)", r.name, r.tasks.len()).unwrap();
        for t in &r.tasks {
            write!(out, "[{:>2}] {:<8} {:<7} {}", t.index + 1, t.kind, t.status.as_str(), t.subject).unwrap();
            if timings {
                write!(out, "  ({} ms)", t.elapsed.as_millis()).unwrap();
            }
            out.push('\n');
            for (k, v) in &t.fields {
                writeln!(out, "       {}: {}", k, v).unwrap();
            }
        }
        n += r.tasks.len();
        pass += r.count(Status::Pass);
        fail += r.count(Status::Fail);
        unknown += r.count(Status::Unknown);
    }
    write!(out, "summary: {} tasks, {} pass, {} fail, {} unknown", n, pass, fail, unknown).unwrap();
    if timings {
        let total: Duration = reports.iter().map(|r| r.elapsed).sum();
        write!(out, ", {:.2} s", total.as_secs_f64()).unwrap();
    }
    out.push('\n');
    out
}

struct Env<'a> {
    scenario: &'a Scenario,
    ctx: &'a Context,
    opts: RunOptions,
    depth: usize,
}

/// Fields and status of one task.
type Outcome = (Status, Vec<(&'static str, String)>);

fn verdict_fields(v: &Verdict, ctx: &Context, fields: &mut Vec<(&'static str, String)>) {
    fields.push(("verdict", v.label().into()));
    match v {
        Verdict::Member(c) => {
            fields.push(("terms", c.terms.len().to_string()));
            fields.push(("digest", format!("{:016x}", c.digest())));
        }
        Verdict::NonMember(Witness::Shadow { degree, residual }) => {
            fields.push(("witness", format!("shadow at degree {}", degree)));
            fields.push(("residual_terms", residual.len().to_string()));
        }
        Verdict::NonMember(Witness::Quotient { level, residue, .. }) => {
            fields.push(("witness", format!("quotient at level {}", level)));
            fields.push(("residue", residue.display(ctx.names()).to_string()));
        }
        Verdict::Unknown(b) => {
            fields.push(("bounds", format!("d<={} radius {}", b.d_max, b.radius)));
            if !b.note.is_empty() {
                fields.push(("note", b.note.clone()));
            }
        }
    }
}

/// Pass/fail of a verdict against an optional expectation. `NonMember`
/// where membership is expected fails; `Unknown` never does.
fn judge(v: &Verdict, expect: Option<&Expect>) -> Status {
    match (expect, v) {
        (None, _) => Status::Done,
        (_, Verdict::Unknown(_)) => Status::Unknown,
        (Some(Expect::Member), Verdict::Member(_)) | (Some(Expect::NonMember), Verdict::NonMember(_)) => Status::Pass,
        _ => Status::Fail,
    }
}

impl Env<'_> {
    fn config(&self, degree: Option<usize>, radius: Option<usize>) -> Config {
        let mut cfg = Config::default();
        if let Some(d) = degree.or(self.opts.degree) {
            cfg.d_max = d;
        }
        if let Some(r) = radius.or(self.opts.radius) {
            cfg.radius = r;
        }
        cfg
    }

    fn run(&self, t: &TaskDecl) -> Result<Outcome> {
        let expect = t.expect.as_ref();
        let ctx = self.ctx;
        let mut fields = Vec::new();
        let status = match &t.task {
            Task::Member { word, ideal, degree, radius } => {
                let cfg = self.config(*degree, *radius);
                let v = decide_word(&word.expr, ideal, ctx, &cfg)?;
                fields.push(("degree", cfg.d_max.to_string()));
                fields.push(("radius", cfg.radius.to_string()));
                verdict_fields(&v, ctx, &mut fields);
                if let Verdict::Member(c) = &v {
                    let ok = c.verify(&fgring_core::RingElement::delta(&word.expr.eval()), ctx)?;
                    fields.push(("verified", ok.to_string()));
                    if !ok {
                        return Ok((Status::Fail, fields));
                    }
                }
                judge(&v, expect)
            }
            Task::Identity { a, b, rhs, degree } => {
                let cfg = self.config(None, None);
                let r = identity_report(a, b, rhs, *degree, &[], ctx, &cfg)?;
                fields.push(("samples", r.samples.len().to_string()));
                fields.push(("certified", r.all_certified.to_string()));
                fields.push(("shadow_equal", r.shadow_equal.to_string()));
                fields.push(("lhs_rank", r.lhs_rank.to_string()));
                fields.push(("rhs_rank", r.rhs_rank.to_string()));
                match expect {
                    Some(_) if r.all_certified && r.shadow_equal => Status::Pass,
                    Some(_) => Status::Fail,
                    None => Status::Done,
                }
            }
            Task::Functor { kind, group } => {
                let v = functor_eval(*kind, &group.to_group()?)?.group;
                fields.push(("value", v.to_string()));
                self.compare(&v, expect)?
            }
            Task::Homology { group, degree } => {
                let v = homology(&group.to_group()?, *degree).value;
                fields.push(("value", v.to_string()));
                self.compare(&v, expect)?
            }
            Task::Cocycle { quotient } => self.cocycle(quotient, &mut fields)?,
            Task::Suite { name } => self.suite(name, &mut fields)?,
            Task::Square { word, r, s, t } => {
                let cfg = self.config(None, None);
                let rep = square_membership_suite(ctx, r, s, t, &word.expr, &cfg)?;
                let established = rep.hypothesis_established();
                fields.push(("hypothesis", if established { "established" } else { "unverified" }.into()));
                fields.push(("hypothesis_ideal", rep.hypothesis_ideal.to_string()));
                fields.push(("conclusion_ideal", rep.conclusion_ideal.to_string()));
                verdict_fields(&rep.conclusion, ctx, &mut fields);
                if let Some(m) = rep.mirror_verified {
                    fields.push(("mirror_verified", m.to_string()));
                    if !m {
                        return Ok((Status::Fail, fields));
                    }
                }
                match judge(&rep.conclusion, expect) {
                    Status::Fail if !established => Status::Unknown,
                    s => s,
                }
            }
            Task::Product { tuples, d, e, r, s } => {
                let pairs: Vec<(Word, Word)> = match tuples {
                    Tuples::None => Vec::new(),
                    Tuples::HallWitt(a, b, c) => hall_witt_tuples(&a.expr.eval(), &b.expr.eval(), &c.expr.eval()),
                    Tuples::Pairs(ps) => ps.iter().map(|(x, y)| (x.expr.eval(), y.expr.eval())).collect(),
                };
                let w = match commutator_product_word(ctx, r, s, &pairs, &d.expr.eval(), &e.expr.eval()) {
                    Ok(w) => w,
                    Err(Error::Hypothesis(m)) => {
                        fields.push(("rejected", m));
                        return Ok((Status::Fail, fields));
                    }
                    Err(e) => return Err(e),
                };
                fields.push(("tuples", pairs.len().to_string()));
                fields.push(("length", w.eval().len().to_string()));
                let cfg = self.config(None, None);
                let v = commutator_product_check(ctx, r, s, &w, &cfg)?;
                verdict_fields(&v, ctx, &mut fields);
                if v.is_non_member() {
                    Status::Fail
                } else {
                    judge(&v, expect)
                }
            }
        };
        Ok((status, fields))
    }

    fn compare(&self, v: &fgring_core::abelfun::FgAbGroup, expect: Option<&Expect>) -> Result<Status> {
        Ok(match expect {
            Some(Expect::Group(g)) => {
                if g.to_group()? == *v {
                    Status::Pass
                } else {
                    Status::Fail
                }
            }
            _ => Status::Done,
        })
    }

    fn cocycle(&self, q: &QuotSpec, fields: &mut Vec<(&'static str, String)>) -> Result<Status> {
        let QuotSpec::FinitePerm { degree, images } = q else {
            return Err(Error::Hypothesis("cocycle tasks need a finite_perm quotient".into()));
        };
        let perms = perms_of(self.ctx.names(), *degree, images)?;
        let ct = CosetTable::new(*degree, perms.clone())?;
        let w = build_cocycle(&ct)?;
        let c = cocycle_identity_check(&w);
        let s = inverse_symmetry_check(&w)?;
        let mut agree = true;
        for k in 0..5u64 {
            let rt = CosetTable::randomized(*degree, perms.clone(), self.opts.seed.wrapping_mul(31).wrapping_add(k))?;
            let rw = build_cocycle(&rt)?;
            agree &= cocycle_identity_check(&rw).holds() == c.holds();
            agree &= inverse_symmetry_check(&rw)?.holds() == s.holds();
        }
        fields.push(("order", ct.order().to_string()));
        fields.push(("triples", c.triples.to_string()));
        fields.push(("cocycle_violations", c.violations.len().to_string()));
        fields.push(("symmetry_nonzero", format!("{}/{}", s.nonzero.len(), s.pairs)));
        fields.push(("doubling_consistent", s.doubling_consistent.to_string()));
        fields.push(("randomized_agree", agree.to_string()));
        Ok(if c.holds() && agree && s.doubling_consistent { Status::Pass } else { Status::Fail })
    }

    fn suite(&self, name: &str, fields: &mut Vec<(&'static str, String)>) -> Result<Status> {
        if self.depth >= 3 {
            return Err(Error::Hypothesis("suites nest too deeply".into()));
        }
        let text = corpus::bundled(name).ok_or_else(|| Error::UnresolvedName(name.into()))?;
        let sc = crate::scenario::parse_scenario(text)?;
        let opts = RunOptions { jobs: 1, ..self.opts };
        let r = run_at(&sc, name, opts, self.depth + 1)?;
        fields.push(("tasks", r.tasks.len().to_string()));
        fields.push(("pass", r.count(Status::Pass).to_string()));
        fields.push(("fail", r.count(Status::Fail).to_string()));
        fields.push(("unknown", r.count(Status::Unknown).to_string()));
        Ok(if r.failed() { Status::Fail } else { Status::Pass })
    }
}

/// Runs every task. Resource caps become `skip`; other errors fail the
/// task without stopping the run.
pub fn run(scenario: &Scenario, name: &str, opts: RunOptions) -> Result<Report> {
    run_at(scenario, name, opts, 0)
}

fn run_at(scenario: &Scenario, name: &str, opts: RunOptions, depth: usize) -> Result<Report> {
    let start = Instant::now();
    let ctx = scenario.context()?;
    let env = Env { scenario, ctx: &ctx, opts, depth };
    let n = scenario.tasks.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(opts.seed));
    let slots: Mutex<Vec<Option<TaskReport>>> = Mutex::new(vec![None; n]);
    let next = AtomicUsize::new(0);
    let work = || loop {
        let k = next.fetch_add(1, Ordering::Relaxed);
        if k >= n {
            break;
        }
        let i = order[k];
        let t0 = Instant::now();
        let t = &env.scenario.tasks[i];
        let (status, fields) = match env.run(t) {
            Ok(o) => o,
            Err(e @ Error::CapExceeded { .. }) => (Status::Skip, vec![("error", e.to_string())]),
            Err(e) => (Status::Fail, vec![("error", e.to_string())]),
        };
        let mut subject = t.task.to_string();
        if let Some(e) = &t.expect {
            subject = format!("{} expect {}", subject, e);
        }
        let rep = TaskReport { index: i, kind: t.task.kind(), subject, status, fields, elapsed: t0.elapsed() };
        slots.lock().expect("no worker panicked")[i] = Some(rep);
    };
    let jobs = opts.jobs.clamp(1, n.max(1));
    if jobs == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(work);
            }
        });
    }
    let tasks = slots.into_inner().expect("no worker panicked").into_iter().map(|t| t.expect("every task ran")).collect();
    Ok(Report { name: name.into(), tasks, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fgring_core::idealeng::Bounds;

    #[test]
    fn unknown_never_fails() {
        let u = Verdict::Unknown(Bounds { d_max: 1, radius: 0, term_cap: 1, note: String::new() });
        assert_eq!(judge(&u, Some(&Expect::Member)), Status::Unknown);
        assert_eq!(judge(&u, Some(&Expect::NonMember)), Status::Unknown);
        assert_eq!(judge(&u, None), Status::Done);
        let n = Verdict::NonMember(Witness::Shadow { degree: 1, residual: Vec::new() });
        assert_eq!(judge(&n, Some(&Expect::Member)), Status::Fail);
        assert_eq!(judge(&n, Some(&Expect::NonMember)), Status::Pass);
    }

    #[test]
    fn machine_values_are_quoted_only_when_needed() {
        assert_eq!(quote("member"), "member");
        assert_eq!(quote("a b"), "\"a b\"");
        assert_eq!(quote("k=v"), "\"k=v\"");
        assert_eq!(quote(""), "\"\"");
    }
}
