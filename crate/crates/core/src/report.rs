//! Verification tables and randomized property sweeps behind the `verify`
//! and `sweep` subcommands.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Duration;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{
    bound_value, complete_graph_construction, cycle_construction, path_construction,
    perfect_code_knt, roman_graph_bound, theorem_upper_bound_construction,
};
use crate::error::{input_err, Error, Result};
use crate::formulas::{self, KntLowerBound, ValueOrBounds};
use crate::graph::{families, Graph, Vertex};
use crate::random;
use crate::roman::RomanFunction;
use crate::sierpinski::SierpinskiGraph;
use crate::solver::{gamma_exact_with, gamma_r_exact_with, SolverOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Paths,
    Cycles,
    Complete,
    Universal,
    Theorem,
    All,
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "paths" => Scope::Paths,
            "cycles" => Scope::Cycles,
            "complete" => Scope::Complete,
            "universal" => Scope::Universal,
            "theorem" => Scope::Theorem,
            "all" => Scope::All,
            other => return Err(input_err!("unknown scope `{other}`")),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Limits {
    pub n_min: Option<usize>,
    pub n_max: usize,
    pub t_max: usize,
    /// Per-row solver timeout.
    pub timeout: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            n_min: None,
            n_max: 6,
            t_max: 2,
            timeout: Some(Duration::from_secs(60)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Timeout,
    Skipped,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Timeout => "timeout",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub theorem: String,
    pub instance: String,
    pub expected: ValueOrBounds,
    pub solver: Option<u64>,
    pub construction: Option<u64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub rows: Vec<Row>,
}

impl Table {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    /// 0 when every row passed or was skipped, 1 on any failure, 3 when
    /// the only problems are timeouts.
    pub fn exit_code(&self) -> i32 {
        if !self.passed() {
            1
        } else if self.rows.iter().any(|r| r.status == Status::Timeout) {
            3
        } else {
            0
        }
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&serde_json::to_string(r).expect("rows serialize"));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let cell = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        let body: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.theorem.clone(),
                    r.instance.clone(),
                    r.expected.to_string(),
                    cell(r.solver),
                    cell(r.construction),
                    r.status.as_str().to_string(),
                ]
            })
            .collect();
        let head = [
            "theorem",
            "instance",
            "expected",
            "solver",
            "construction",
            "status",
        ]
        .map(String::from);
        let mut width = head.clone().map(|h| h.len());
        for row in &body {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&head).chain(&body) {
            let line: Vec<String> = row
                .iter()
                .zip(width)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}

#[derive(Clone, Debug)]
enum Case {
    Path(usize, usize),
    Cycle(usize, usize),
    CompleteGamma(usize, usize),
    CompleteRoman(usize, usize),
    Universal(String, Graph, usize),
    MinDegree(String, Graph, usize),
    Theorem(String, Graph, Option<RomanFunction>, usize),
    RomanGraph(String, Graph, usize),
}

fn star_plus_edge(n: usize) -> Result<Graph> {
    let mut edges: Vec<(Vertex, Vertex)> = (1..n).map(|v| (0, v)).collect();
    edges.push((1, 2));
    Graph::from_edge_list(n, &edges)
}

fn cases(scope: Scope, lim: &Limits) -> Result<Vec<Case>> {
    let all = scope == Scope::All;
    let lo = |min: usize| lim.n_min.unwrap_or(min).max(min);
    let depths = || 2..=lim.t_max.max(2);
    let mut out = Vec::new();
    if all || scope == Scope::Paths {
        for n in lo(3)..=lim.n_max {
            out.extend(depths().map(|t| Case::Path(n, t)));
        }
    }
    if all || scope == Scope::Cycles {
        for n in lo(4)..=lim.n_max {
            out.extend(depths().map(|t| Case::Cycle(n, t)));
        }
    }
    if all || scope == Scope::Complete {
        for n in lo(2)..=lim.n_max {
            for t in depths() {
                out.push(Case::CompleteGamma(n, t));
                out.push(Case::CompleteRoman(n, t));
            }
        }
    }
    if all || scope == Scope::Universal {
        for n in lo(4)..=lim.n_max {
            for t in depths() {
                out.push(Case::Universal(
                    format!("K1,{}", n - 1),
                    families::star(n)?,
                    t,
                ));
                out.push(Case::Universal(
                    format!("K1,{}+e", n - 1),
                    star_plus_edge(n)?,
                    t,
                ));
            }
        }
        for n in lo(5)..=lim.n_max {
            for t in depths() {
                out.push(Case::MinDegree(format!("P{n}"), families::path(n)?, t));
                out.push(Case::MinDegree(format!("C{n}"), families::cycle(n)?, t));
            }
        }
    }
    if all || scope == Scope::Theorem {
        for t in depths() {
            out.push(Case::Theorem(
                "P2 f=(1,1)".into(),
                families::path(2)?,
                Some(RomanFunction::new(vec![1, 1])?),
                t,
            ));
            out.push(Case::Theorem(
                "P7 f=(0,2,0,0,2,0,1)".into(),
                families::path(7)?,
                Some(RomanFunction::from_parts(7, &[6], &[1, 4])?),
                t,
            ));
        }
        for n in lo(2)..=lim.n_max {
            let mut graphs = vec![
                (format!("P{n}"), families::path(n)?),
                (format!("K{n}"), families::complete(n)?),
            ];
            if n >= 3 {
                graphs.push((format!("C{n}"), families::cycle(n)?));
                graphs.push((format!("K1,{}", n - 1), families::star(n)?));
            }
            for (name, g) in graphs {
                for t in depths() {
                    out.push(Case::Theorem(name.clone(), g.clone(), None, t));
                    out.push(Case::RomanGraph(name.clone(), g.clone(), t));
                }
            }
        }
    }
    Ok(out)
}

struct Outcome {
    solver: Option<u64>,
    construction: Option<u64>,
    failures: Vec<String>,
    timed_out: bool,
    skipped: Option<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            solver: None,
            construction: None,
            failures: Vec::new(),
            timed_out: false,
            skipped: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn solver_opts(lim: &Limits) -> SolverOptions {
    SolverOptions::default().with_timeout(lim.timeout)
}

/// Runs an exact solve on `S(G, t)`, recording timeouts and size refusals.
fn solve_on(
    out: &mut Outcome,
    g: &Graph,
    roman: bool,
    opts: &SolverOptions,
) -> Result<Option<crate::solver::Certificate>> {
    let r = if roman {
        gamma_r_exact_with(g, opts)
    } else {
        gamma_exact_with(g, opts)
    };
    match r {
        Ok(c) => {
            out.solver = Some(c.value);
            Ok(Some(c))
        }
        Err(Error::Timeout(_)) => {
            out.timed_out = true;
            Ok(None)
        }
        Err(Error::Resource(msg)) => {
            out.skipped.get_or_insert(msg);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn optimal_base_function(
    g: &Graph,
    lim: &Limits,
) -> Result<(RomanFunction, crate::solver::Certificate)> {
    let cert = gamma_r_exact_with(g, &solver_opts(lim))?;
    Ok((cert.roman_function(), cert))
}

fn big(v: &BigUint) -> u64 {
    v.to_u64().unwrap_or(u64::MAX)
}

fn evaluate(case: &Case, lim: &Limits) -> Result<(ValueOrBounds, Outcome)> {
    let opts = solver_opts(lim);
    let mut out = Outcome::new();
    let expected = match case {
        Case::Path(n, t) => {
            let expected = formulas::gamma_r_sierpinski_path(*n as u64, *t)?;
            let s = SierpinskiGraph::build(&families::path(*n)?, *t)?;
            solve_on(&mut out, s.graph(), true, &opts)?;
            let report = if n % 3 == 2 {
                path_construction(*n, *t)?
            } else {
                let (f, cert) = optimal_base_function(s.base(), lim)?;
                theorem_upper_bound_construction(&s, &f, &cert)?
            };
            out.construction = Some(report.actual_weight);
            let p = big(&expected);
            if let Some(v) = out.solver {
                out.check(v == p, || format!("solver {v} != {p}"));
            }
            out.check(report.valid, || "construction invalid".into());
            out.check(report.actual_weight == p, || {
                format!("construction weight {} != {p}", report.actual_weight)
            });
            ValueOrBounds::exact(expected)
        }
        Case::Cycle(n, t) => {
            let expected = formulas::gamma_r_sierpinski_cycle(*n as u64, *t)?;
            let s = SierpinskiGraph::build(&families::cycle(*n)?, *t)?;
            solve_on(&mut out, s.graph(), true, &opts)?;
            let report = cycle_construction(*n, *t)?;
            out.construction = Some(report.actual_weight);
            if let Some(v) = out.solver {
                out.check(expected.admits(v), || {
                    format!("solver {v} outside {expected}")
                });
            }
            out.check(report.valid, || "construction invalid".into());
            let target = expected.exact.as_ref().or(expected.upper.as_ref()).map(big);
            out.check(Some(report.actual_weight) == target, || {
                format!("construction weight {} != {target:?}", report.actual_weight)
            });
            expected
        }
        Case::CompleteGamma(n, t) => {
            let expected = formulas::gamma_knt(*n as u64, *t)?;
            let s = SierpinskiGraph::build(&families::complete(*n)?, *t)?;
            solve_on(&mut out, s.graph(), false, &opts)?;
            let code = perfect_code_knt(*n, *t)?;
            out.construction = Some(code.len() as u64);
            let p = big(&expected);
            if let Some(v) = out.solver {
                out.check(v == p, || format!("solver {v} != {p}"));
            }
            out.check(code.len() as u64 == p, || {
                format!("perfect code has {} vertices", code.len())
            });
            ValueOrBounds::exact(expected)
        }
        Case::CompleteRoman(n, t) => {
            let expected = formulas::gamma_r_knt_upper(*n as u64, *t)?;
            let s = SierpinskiGraph::build(&families::complete(*n)?, *t)?;
            solve_on(&mut out, s.graph(), true, &opts)?;
            let report = complete_graph_construction(*n, *t)?;
            out.construction = Some(report.actual_weight);
            let p = big(&expected);
            if let Some(v) = out.solver {
                out.check(v <= p, || format!("solver {v} > {p}"));
            }
            out.check(report.valid && report.exact, || {
                format!(
                    "construction weight {} valid {}",
                    report.actual_weight, report.valid
                )
            });
            ValueOrBounds::upper_only(expected)
        }
        Case::Universal(_, g, t) => {
            let expected = formulas::universal_vertex_value(g.order() as u64, *t)?;
            let s = SierpinskiGraph::build(g, *t)?;
            solve_on(&mut out, s.graph(), true, &opts)?;
            let (f, cert) = optimal_base_function(g, lim)?;
            let report = theorem_upper_bound_construction(&s, &f, &cert)?;
            out.construction = Some(report.actual_weight);
            let p = big(&expected);
            if let Some(v) = out.solver {
                out.check(v == p, || format!("solver {v} != {p}"));
            }
            out.check(report.valid && report.actual_weight <= p, || {
                format!(
                    "construction weight {} valid {}",
                    report.actual_weight, report.valid
                )
            });
            ValueOrBounds::exact(expected)
        }
        Case::MinDegree(_, g, t) => {
            let expected = formulas::min_degree_lower_bound(g.order() as u64, *t)?;
            let s = SierpinskiGraph::build(g, *t)?;
            solve_on(&mut out, s.graph(), true, &opts)?;
            let p = big(&expected);
            if let Some(v) = out.solver {
                out.check(v >= p, || format!("solver {v} < {p}"));
            }
            ValueOrBounds::lower_only(expected)
        }
        Case::Theorem(_, g, f, t) => {
            let s = SierpinskiGraph::build(g, *t)?;
            let cert = gamma_r_exact_with(g, &opts)?;
            let f = f.clone().unwrap_or_else(|| cert.roman_function());
            let expected = bound_value(g, &f, *t)?;
            solve_on(&mut out, s.graph(), true, &opts)?;
            let report = theorem_upper_bound_construction(&s, &f, &cert)?;
            out.construction = Some(report.actual_weight);
            let p = big(&expected);
            if let Some(v) = out.solver {
                out.check(v <= p, || format!("solver {v} > bound {p}"));
            }
            out.check(
                report.valid && report.actual_weight <= report.predicted_weight,
                || {
                    format!(
                        "construction weight {} valid {}",
                        report.actual_weight, report.valid
                    )
                },
            );
            out.check(report.notes.is_empty(), || report.notes.join("; "));
            ValueOrBounds::upper_only(expected)
        }
        Case::RomanGraph(_, g, t) => match roman_graph_bound(g, *t) {
            Err(Error::Contract(_)) => {
                out.skipped = Some("base graph is not Roman".into());
                ValueOrBounds::unknown()
            }
            Err(e) => return Err(e),
            Ok(expected) => {
                let s = SierpinskiGraph::build(g, *t)?;
                solve_on(&mut out, s.graph(), true, &opts)?;
                let p = big(&expected);
                if let Some(v) = out.solver {
                    out.check(v <= p, || format!("solver {v} > {p}"));
                }
                ValueOrBounds::upper_only(expected)
            }
        },
    };
    Ok((expected, out))
}

fn case_label(case: &Case) -> (String, String) {
    match case {
        Case::Path(n, t) => ("paths".into(), format!("S(P{n},{t})")),
        Case::Cycle(n, t) => ("cycles".into(), format!("S(C{n},{t})")),
        Case::CompleteGamma(n, t) => ("complete-gamma".into(), format!("S(K{n},{t})")),
        Case::CompleteRoman(n, t) => ("complete-roman".into(), format!("S(K{n},{t})")),
        Case::Universal(name, _, t) => ("universal".into(), format!("S({name},{t})")),
        Case::MinDegree(name, _, t) => ("min-degree".into(), format!("S({name},{t})")),
        Case::Theorem(name, _, _, t) => ("upper-bound".into(), format!("S({name},{t})")),
        Case::RomanGraph(name, _, t) => ("roman-graph".into(), format!("S({name},{t})")),
    }
}

fn run_case(case: &Case, lim: &Limits) -> Row {
    let (theorem, instance) = case_label(case);
    match evaluate(case, lim) {
        Ok((expected, out)) => {
            let (status, note) = if !out.failures.is_empty() {
                (Status::Fail, Some(out.failures.join("; ")))
            } else if out.timed_out {
                (Status::Timeout, None)
            } else if let Some(why) = out.skipped.filter(|_| out.construction.is_none()) {
                (Status::Skipped, Some(why))
            } else {
                (Status::Pass, None)
            };
            Row {
                theorem,
                instance,
                expected,
                solver: out.solver,
                construction: out.construction,
                status,
                note,
            }
        }
        Err(e) => {
            let status = match e {
                Error::Timeout(_) => Status::Timeout,
                Error::Resource(_) => Status::Skipped,
                _ => Status::Fail,
            };
            Row {
                theorem,
                instance,
                expected: ValueOrBounds::unknown(),
                solver: None,
                construction: None,
                status,
                note: Some(e.to_string()),
            }
        }
    }
}

/// One row per (theorem, instance) in `scope`, computed in parallel and
/// returned in a fixed order.
pub fn verify(scope: Scope, lim: &Limits) -> Result<Table> {
    let cases = cases(scope, lim)?;
    let rows = cases.par_iter().map(|s| run_case(s, lim)).collect();
    Ok(Table { rows })
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub count: usize,
    pub n_max: usize,
    pub t: usize,
    pub seed: u64,
    pub timeout: Option<Duration>,
}

/// Largest base order a sweep accepts.
pub const SWEEP_N_MAX: usize = 7;

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub n: usize,
    pub edges: Vec<(Vertex, Vertex)>,
    pub gamma: u64,
    pub gamma_r: u64,
    /// Edge removed to form the spanning subgraph `H`.
    pub removed_edge: Option<(Vertex, Vertex)>,
    pub gamma_r_h: Option<u64>,
    pub bound: u64,
    pub sierpinski_gamma_r: Option<u64>,
    pub construction: u64,
    pub knt_lower: u64,
    pub checks: BTreeMap<&'static str, bool>,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub count: usize,
    pub n_max: usize,
    pub t: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if !self.passed() {
            1
        } else if self.rows.iter().any(|r| r.status == Status::Timeout) {
            3
        } else {
            0
        }
    }

    pub fn to_json_lines(&self) -> String {
        let header = serde_json::json!({
            "seed": self.seed,
            "count": self.count,
            "n_max": self.n_max,
            "t": self.t,
        });
        let mut out = header.to_string();
        out.push('\n');
        for r in &self.rows {
            out.push_str(&serde_json::to_string(r).expect("rows serialize"));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "sweep seed={} count={} n_max={} t={}\n",
            self.seed, self.count, self.n_max, self.t
        );
        for r in &self.rows {
            let failed: Vec<&str> = r
                .checks
                .iter()
                .filter(|(_, &ok)| !ok)
                .map(|(k, _)| *k)
                .collect();
            let _ = writeln!(
                out,
                "#{:<4} n={} m={:<2} gamma={} gamma_R={} bound={} S={} knt>={} {}{}",
                r.index,
                r.n,
                r.edges.len(),
                r.gamma,
                r.gamma_r,
                r.bound,
                r.sierpinski_gamma_r.map_or("-".into(), |v| v.to_string()),
                r.knt_lower,
                r.status.as_str(),
                if failed.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", failed.join(", "))
                }
            );
        }
        out
    }
}

struct Instance {
    g: Graph,
    h: Option<(Graph, (Vertex, Vertex))>,
}

/// Random connected base graphs checked against the sandwich inequality,
/// spanning-subgraph monotonicity, the general upper bound on `S(G, t)`
/// and the complete-graph lower bound.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    if !(2..=SWEEP_N_MAX).contains(&cfg.n_max) {
        return Err(input_err!("sweep needs 2 <= n_max <= {SWEEP_N_MAX}"));
    }
    if !(2..=3).contains(&cfg.t) {
        return Err(input_err!("sweep needs t in 2..=3"));
    }
    let mut rng = random::rng(cfg.seed);
    let mut instances = Vec::with_capacity(cfg.count);
    for _ in 0..cfg.count {
        let n = rng.gen_range(2..=cfg.n_max);
        let p = rng.gen_range(0.0..0.6);
        let g = random::random_connected(n, p, &mut rng)?;
        let h = random::delete_random_edge(&g, &mut rng)?;
        instances.push(Instance { g, h });
    }
    let mut knt: BTreeMap<usize, KntLowerBound> = BTreeMap::new();
    for inst in &instances {
        let n = inst.g.order();
        if let std::collections::btree_map::Entry::Vacant(e) = knt.entry(n) {
            e.insert(formulas::knt_lower_bound_with(
                n as u64,
                cfg.t,
                cfg.timeout,
            )?);
        }
    }
    let opts = SolverOptions::default().with_timeout(cfg.timeout);
    let rows: Result<Vec<SweepRow>> = instances
        .par_iter()
        .enumerate()
        .map(|(index, inst)| sweep_row(index, inst, cfg.t, &knt[&inst.g.order()], &opts))
        .collect();
    Ok(SweepReport {
        seed: cfg.seed,
        count: cfg.count,
        n_max: cfg.n_max,
        t: cfg.t,
        rows: rows?,
    })
}

fn sweep_row(
    index: usize,
    inst: &Instance,
    t: usize,
    knt: &KntLowerBound,
    opts: &SolverOptions,
) -> Result<SweepRow> {
    let g = &inst.g;
    let gamma = gamma_exact_with(g, opts)?.value;
    let cert = gamma_r_exact_with(g, opts)?;
    let gamma_r = cert.value;
    let gamma_r_h = match &inst.h {
        Some((h, _)) => Some(gamma_r_exact_with(h, opts)?.value),
        None => None,
    };
    let f = cert.roman_function();
    let bound = big(&bound_value(g, &f, t)?);
    let s = SierpinskiGraph::build(g, t)?;
    let construction = theorem_upper_bound_construction(&s, &f, &cert)?;
    let (sier, timed_out) = match gamma_r_exact_with(s.graph(), opts) {
        Ok(c) => (Some(c.value), false),
        Err(Error::Timeout(_)) => (None, true),
        Err(e) => return Err(e),
    };
    let knt_lower = big(&knt.value);

    let mut checks = BTreeMap::new();
    checks.insert("sandwich", gamma <= gamma_r && gamma_r <= 2 * gamma);
    checks.insert("monotone", gamma_r_h.is_none_or(|h| gamma_r <= h));
    checks.insert(
        "construction",
        construction.valid && construction.actual_weight <= bound,
    );
    if let Some(v) = sier {
        checks.insert("upper_bound", v <= bound);
        checks.insert("knt_lower_bound", knt_lower <= v);
    }
    let status = if checks.values().any(|ok| !ok) {
        Status::Fail
    } else if timed_out {
        Status::Timeout
    } else {
        Status::Pass
    };
    Ok(SweepRow {
        index,
        n: g.order(),
        edges: g.edges().to_vec(),
        gamma,
        gamma_r,
        removed_edge: inst.h.as_ref().map(|(_, e)| *e),
        gamma_r_h,
        bound,
        sierpinski_gamma_r: sier,
        construction: construction.actual_weight,
        knt_lower,
        checks,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim(n_min: usize, n_max: usize, t_max: usize) -> Limits {
        Limits {
            n_min: Some(n_min),
            n_max,
            t_max,
            timeout: Some(Duration::from_secs(60)),
        }
    }

    #[test]
    fn verify_paths() {
        let t = verify(Scope::Paths, &lim(3, 6, 2)).unwrap();
        assert_eq!(t.rows.len(), 4);
        let values: Vec<u64> = t.rows.iter().map(|r| r.solver.unwrap()).collect();
        assert_eq!(values, vec![5, 10, 17, 22]);
        assert!(
            t.rows.iter().all(|r| r.status == Status::Pass),
            "{}",
            t.to_text()
        );
        assert_eq!(t.exit_code(), 0);
    }

    #[test]
    fn verify_cycles() {
        let t = verify(Scope::Cycles, &lim(4, 6, 2)).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert!(t.rows[0].expected.exact.is_some() && t.rows[1].expected.exact.is_some());
        assert!(t.rows[2].expected.exact.is_none());
        assert!(t.passed(), "{}", t.to_text());
    }

    #[test]
    fn verify_complete() {
        let t = verify(Scope::Complete, &lim(3, 3, 3)).unwrap();
        let gam: Vec<u64> = t
            .rows
            .iter()
            .filter(|r| r.theorem == "complete-gamma")
            .map(|r| r.solver.unwrap())
            .collect();
        assert_eq!(gam, vec![3, 7]);
        let up: Vec<u64> = t
            .rows
            .iter()
            .filter(|r| r.theorem == "complete-roman")
            .map(|r| r.construction.unwrap())
            .collect();
        assert_eq!(up, vec![5, 14]);
        assert!(t.passed(), "{}", t.to_text());
    }

    #[test]
    fn verify_universal_and_theorem() {
        for scope in [Scope::Universal, Scope::Theorem] {
            let t = verify(scope, &lim(2, 5, 2)).unwrap();
            assert!(t.passed(), "{}", t.to_text());
        }
    }

    #[test]
    fn scope_parsing() {
        assert_eq!("cycles".parse::<Scope>().unwrap(), Scope::Cycles);
        assert!("trees".parse::<Scope>().is_err());
    }

    #[test]
    fn sweep_is_deterministic() {
        let cfg = SweepConfig {
            count: 12,
            n_max: 5,
            t: 2,
            seed: 9,
            timeout: None,
        };
        let a = sweep(&cfg).unwrap();
        let b = sweep(&cfg).unwrap();
        assert!(a.passed(), "{}", a.to_text());
        assert_eq!(a.to_json_lines(), b.to_json_lines());
    }

    #[test]
    fn sweep_on_p2() {
        let cfg = SweepConfig {
            count: 1,
            n_max: 2,
            t: 2,
            seed: 0,
            timeout: None,
        };
        let r = sweep(&cfg).unwrap();
        assert_eq!(r.rows[0].edges, vec![(0, 1)]);
        assert_eq!(r.rows[0].bound, 3);
        assert_eq!(r.rows[0].sierpinski_gamma_r, Some(3));
    }

    #[test]
    fn sweep_rejects_large_bases() {
        let cfg = SweepConfig {
            count: 1,
            n_max: 9,
            t: 2,
            seed: 0,
            timeout: None,
        };
        assert!(sweep(&cfg).is_err());
    }
}
