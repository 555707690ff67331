//! Exact domination and Roman domination numbers with certificates.
//!
//! Both numbers are computed by the same branch-and-bound engine over the
//! set `S` of "expensive" vertices (the dominating set, or `B₂`). For a
//! fixed `B₂ = S` the cheapest Roman completion labels `N[S] \ S` with 0 and
//! everything outside `N[S]` with 1, so
//!
//! ```text
//! γ_R(G) = min_S 2|S| + |V \ N[S]|.
//! ```
//!
//! The engine branches on an undecided vertex `v` with the fewest remaining
//! candidate dominators: child `i` puts the `i`-th candidate of `N[v]` into
//! `S` and forbids the earlier ones; in Roman mode a final child leaves `v`
//! undominated (label 1) and forbids all of `N[v]`. The children partition
//! the remaining search space, so the search is exhaustive.
//!
//! Lower bound: every undecided vertex `v` is charged
//! `min(c₁, c₂ / m(v))`, where `m(v)` is the largest number of undecided
//! vertices any admissible candidate in `N[v]` would newly dominate. Any
//! completion pays at least the sum of charges, since a chosen vertex
//! covering `k ≤ m` undecided vertices costs `c₂ ≥ k·c₂/m`.
//!
//! Roman witnesses are optimal for the lexicographic key
//! `(weight, |B₁|, B₂)`; `B₂` is compared as a sorted vertex list.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{contract_err, internal_err, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::roman::RomanFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Domination,
    Roman,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    /// A minimum dominating set.
    Set(Vec<Vertex>),
    /// Labels `0/1/2` indexed by vertex id.
    Function(Vec<u8>),
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    /// Wall-clock time. Not serialized so that JSON output is reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

/// An optimality record: value, witness and search statistics.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// Fingerprint of the graph the certificate refers to.
    pub graph: String,
    pub value: u64,
    pub witness: Witness,
    pub stats: SolveStats,
}

impl Certificate {
    /// The witness as a Roman function (a dominating set is labelled 2).
    pub fn roman_function(&self) -> RomanFunction {
        match &self.witness {
            Witness::Function(l) => RomanFunction::from_labels_unchecked(l.clone()),
            Witness::Set(_) => unreachable!("domination certificates carry a set"),
        }
    }

    pub fn dominating_set(&self) -> Option<&[Vertex]> {
        match &self.witness {
            Witness::Set(s) => Some(s),
            Witness::Function(_) => None,
        }
    }

    /// Checks that the witness is valid for `g` and realises `value`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.graph != g.fingerprint() {
            return Err(contract_err!("certificate belongs to a different graph"));
        }
        match (&self.kind, &self.witness) {
            (CertificateKind::Domination, Witness::Set(s)) => {
                if !g.is_dominating_set(s) || s.len() as u64 != self.value {
                    return Err(internal_err!("domination witness does not validate"));
                }
            }
            (CertificateKind::Roman, Witness::Function(_)) => {
                let f = self.roman_function();
                if !f.is_roman_dominating(g)? || f.weight() != self.value {
                    return Err(internal_err!("Roman witness does not validate"));
                }
            }
            _ => return Err(internal_err!("certificate kind and witness disagree")),
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Largest graph order the exact solvers accept.
    pub vertex_budget: usize,
    pub timeout: Option<Duration>,
    /// Canonicalise the witness to the lexicographically smallest optimal
    /// set. Off only for benchmarking.
    pub canonical: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            vertex_budget: 1024,
            timeout: None,
            canonical: true,
        }
    }
}

impl SolverOptions {
    pub fn with_timeout(mut self, timeout: Option<Duration>) -> Self {
        self.timeout = timeout;
        self
    }
}

#[derive(Clone)]
struct State {
    chosen: VertexSet,
    dominated: VertexSet,
    ones: VertexSet,
    excluded: VertexSet,
    cost: u64,
}

struct Engine<'a> {
    g: &'a Graph,
    n: usize,
    cost_two: u64,
    /// `None` in domination mode: every vertex must be dominated.
    cost_one: Option<u64>,
    /// Solutions must cost strictly less than this.
    bound: u64,
    best: Option<VertexSet>,
    /// Stop at the first solution found (feasibility mode).
    first_only: bool,
    nodes: u64,
    deadline: Option<Instant>,
    started: Instant,
    timed_out: bool,
}

const EPS: f64 = 1e-7;

impl<'a> Engine<'a> {
    fn new(g: &'a Graph, cost_two: u64, cost_one: Option<u64>, opts: &SolverOptions) -> Self {
        let started = Instant::now();
        Self {
            g,
            n: g.order(),
            cost_two,
            cost_one,
            bound: u64::MAX,
            best: None,
            first_only: false,
            nodes: 0,
            deadline: opts.timeout.map(|t| started + t),
            started,
            timed_out: false,
        }
    }

    fn initial_state(&self, forced_in: &VertexSet, excluded: &VertexSet) -> State {
        let mut dominated = VertexSet::new(self.n);
        for v in forced_in.iter() {
            dominated.union_with(self.g.closed_neighborhood_set(v));
        }
        State {
            chosen: forced_in.clone(),
            dominated,
            ones: VertexSet::new(self.n),
            excluded: excluded.clone(),
            cost: self.cost_two * forced_in.len() as u64,
        }
    }

    fn done(&self) -> bool {
        self.timed_out || (self.first_only && self.best.is_some())
    }

    fn search(&mut self, st: &State) {
        self.nodes += 1;
        if self.nodes & 1023 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        if self.done() {
            return;
        }

        let mut undecided = st.dominated.clone();
        undecided.union_with(&st.ones);
        let undecided = undecided.complement();
        if undecided.is_empty() {
            if st.cost < self.bound {
                self.bound = st.cost;
                self.best = Some(st.chosen.clone());
            }
            return;
        }
        if st.cost >= self.bound {
            return;
        }

        // Coverage of every admissible candidate.
        let mut cov = vec![0usize; self.n];
        for u in 0..self.n {
            if !st.excluded.contains(u) && !st.chosen.contains(u) {
                cov[u] = self
                    .g
                    .closed_neighborhood_set(u)
                    .intersection_len(&undecided);
            }
        }

        let mut lb = 0.0f64;
        let mut branch: Option<(Vertex, usize, usize)> = None;
        for v in undecided.iter() {
            let mut best_cov = 0;
            let mut options = 0;
            for u in self.g.closed_neighborhood_set(v).iter() {
                if cov[u] > 0 {
                    options += 1;
                    best_cov = best_cov.max(cov[u]);
                }
            }
            let price = match (best_cov, self.cost_one) {
                (0, None) => return,
                (0, Some(c1)) => c1 as f64,
                (m, None) => self.cost_two as f64 / m as f64,
                (m, Some(c1)) => (c1 as f64).min(self.cost_two as f64 / m as f64),
            };
            lb += price;
            let deg = self.g.degree(v);
            let better = match branch {
                None => true,
                Some((_, o, d)) => options < o || (options == o && deg > d),
            };
            if better {
                branch = Some((v, options, deg));
            }
        }
        let lb = (lb - EPS).ceil().max(0.0) as u64;
        if st.cost + lb >= self.bound {
            return;
        }

        let (v, _, _) = branch.expect("undecided set is non-empty");
        let mut candidates: Vec<Vertex> = self
            .g
            .closed_neighborhood_set(v)
            .iter()
            .filter(|&u| cov[u] > 0)
            .collect();
        candidates.sort_by(|&a, &b| cov[b].cmp(&cov[a]).then(a.cmp(&b)));

        let mut excluded = st.excluded.clone();
        for &u in &candidates {
            if st.cost + lb >= self.bound || self.done() {
                return;
            }
            let mut child = State {
                chosen: st.chosen.clone(),
                dominated: st.dominated.clone(),
                ones: st.ones.clone(),
                excluded: excluded.clone(),
                cost: st.cost + self.cost_two,
            };
            child.chosen.insert(u);
            child
                .dominated
                .union_with(self.g.closed_neighborhood_set(u));
            self.search(&child);
            excluded.insert(u);
        }
        if let Some(c1) = self.cost_one {
            if st.cost + lb >= self.bound || self.done() {
                return;
            }
            let mut child = st.clone();
            child.excluded = excluded;
            child.ones.insert(v);
            child.cost += c1;
            self.search(&child);
        }
    }

    fn check_timeout(&self) -> Result<()> {
        if self.timed_out {
            Err(Error::Timeout(self.started.elapsed().as_secs_f64()))
        } else {
            Ok(())
        }
    }

    /// Minimum-cost `S` (with the given forced/forbidden vertices) of cost
    /// strictly below `bound`, if any.
    fn optimise(
        &mut self,
        forced_in: &VertexSet,
        excluded: &VertexSet,
        bound: u64,
        first_only: bool,
    ) -> Result<Option<(u64, VertexSet)>> {
        self.bound = bound;
        self.best = None;
        self.first_only = first_only;
        let st = self.initial_state(forced_in, excluded);
        self.search(&st);
        self.check_timeout()?;
        Ok(self.best.take().map(|s| (self.bound, s)))
    }

    fn cost_of(&self, set: &VertexSet) -> Option<u64> {
        let mut dom = VertexSet::new(self.n);
        for v in set.iter() {
            dom.union_with(self.g.closed_neighborhood_set(v));
        }
        let missing = (self.n - dom.len()) as u64;
        match self.cost_one {
            None if missing > 0 => None,
            None => Some(self.cost_two * set.len() as u64),
            Some(c1) => Some(self.cost_two * set.len() as u64 + c1 * missing),
        }
    }

    /// Greedy start: repeatedly take the vertex newly dominating the most
    /// vertices while that is cheaper than leaving them undominated.
    fn greedy(&self) -> VertexSet {
        let mut set = VertexSet::new(self.n);
        let mut dom = VertexSet::new(self.n);
        loop {
            let mut best: Option<(usize, Vertex)> = None;
            for u in 0..self.n {
                let c = self.g.closed_neighborhood_set(u).len()
                    - self.g.closed_neighborhood_set(u).intersection_len(&dom);
                if c > 0 && best.is_none_or(|(bc, _)| c > bc) {
                    best = Some((c, u));
                }
            }
            match (best, self.cost_one) {
                (None, _) => break,
                (Some((c, _)), Some(c1)) if self.cost_two >= c1 * c as u64 => break,
                (Some((_, u)), _) => {
                    set.insert(u);
                    dom.union_with(self.g.closed_neighborhood_set(u));
                }
            }
        }
        set
    }

    /// Optimal cost and the lexicographically smallest optimal set.
    fn solve(&mut self, canonical: bool) -> Result<(u64, VertexSet)> {
        let empty = VertexSet::new(self.n);
        let start = self.greedy();
        let start_cost = self
            .cost_of(&start)
            .ok_or_else(|| internal_err!("greedy start is infeasible"))?;
        let (opt, mut witness) = match self.optimise(&empty, &empty, start_cost, false)? {
            Some(better) => better,
            None => (start_cost, start),
        };
        if !canonical {
            return Ok((opt, witness));
        }
        let target = witness.len();
        let mut forced = VertexSet::new(self.n);
        let mut excluded = VertexSet::new(self.n);
        for v in 0..self.n {
            if forced.len() == target {
                break;
            }
            if witness.contains(v) {
                forced.insert(v);
                continue;
            }
            let mut trial = forced.clone();
            trial.insert(v);
            match self.optimise(&trial, &excluded, opt + 1, true)? {
                Some((_, found)) => {
                    witness = found;
                    forced.insert(v);
                }
                None => excluded.insert(v),
            }
        }
        if forced != witness || self.cost_of(&witness) != Some(opt) {
            return Err(internal_err!("canonical witness search lost optimality"));
        }
        Ok((opt, witness))
    }
}

fn check_budget(g: &Graph, opts: &SolverOptions) -> Result<()> {
    if g.order() > opts.vertex_budget {
        return Err(Error::Resource(format!(
            "graph has {} vertices, above the solver budget of {}",
            g.order(),
            opts.vertex_budget
        )));
    }
    Ok(())
}

/// `B₂ = S`, `B₁ = V \ N[S]`, `B₀ = N[S] \ S`.
pub fn completion(g: &Graph, twos: &[Vertex]) -> RomanFunction {
    let dom = g.closed_neighborhood_of(twos);
    let mut labels = vec![1u8; g.order()];
    for v in dom.iter() {
        labels[v] = 0;
    }
    for &v in twos {
        labels[v] = 2;
    }
    RomanFunction::from_labels_unchecked(labels)
}

pub fn gamma_exact(g: &Graph) -> Result<Certificate> {
    gamma_exact_with(g, &SolverOptions::default())
}

/// Minimum dominating set by branch and bound.
pub fn gamma_exact_with(g: &Graph, opts: &SolverOptions) -> Result<Certificate> {
    check_budget(g, opts)?;
    let mut engine = Engine::new(g, 1, None, opts);
    let (value, set) = engine.solve(opts.canonical)?;
    let cert = Certificate {
        kind: CertificateKind::Domination,
        graph: g.fingerprint(),
        value,
        witness: Witness::Set(set.to_vec()),
        stats: SolveStats {
            nodes: engine.nodes,
            elapsed: engine.started.elapsed(),
        },
    };
    cert.validate(g)?;
    Ok(cert)
}

pub fn gamma_r_exact(g: &Graph) -> Result<Certificate> {
    gamma_r_exact_with(g, &SolverOptions::default())
}

/// Roman domination number by branch and bound. The witness minimises
/// `|B₁|` among optimal functions, then `B₂` lexicographically.
pub fn gamma_r_exact_with(g: &Graph, opts: &SolverOptions) -> Result<Certificate> {
    check_budget(g, opts)?;
    let scale = g.order() as u64 + 1;
    // Key = weight·(n+1) + |B₁|, with |B₁| ≤ n.
    let mut engine = Engine::new(g, 2 * scale, Some(scale + 1), opts);
    let (key, set) = engine.solve(opts.canonical)?;
    let f = completion(g, &set.to_vec());
    if f.weight() != key / scale || f.b1().len() as u64 != key % scale {
        return Err(internal_err!("Roman key does not match its witness"));
    }
    let cert = Certificate {
        kind: CertificateKind::Roman,
        graph: g.fingerprint(),
        value: f.weight(),
        witness: Witness::Function(f.labels().to_vec()),
        stats: SolveStats {
            nodes: engine.nodes,
            elapsed: engine.started.elapsed(),
        },
    };
    cert.validate(g)?;
    Ok(cert)
}

/// Largest order accepted by the subset-enumeration oracles.
pub const BRUTE_FORCE_LIMIT: usize = 22;

fn closed_masks(g: &Graph) -> Result<Vec<u32>> {
    if g.order() > BRUTE_FORCE_LIMIT {
        return Err(Error::Resource(format!(
            "brute force is limited to {BRUTE_FORCE_LIMIT} vertices, graph has {}",
            g.order()
        )));
    }
    Ok((0..g.order())
        .map(|v| {
            g.closed_neighborhood_set(v)
                .iter()
                .fold(0u32, |m, u| m | (1 << u))
        })
        .collect())
}

fn mask_vertices(mask: u32) -> Vec<Vertex> {
    (0..32).filter(|&v| mask & (1 << v) != 0).collect()
}

/// Ranks equal-size vertex sets: a larger value is a lexicographically
/// smaller sorted list.
fn lex_rank(mask: u32, n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        mask.reverse_bits() >> (32 - n)
    }
}

fn dominated_mask(closed: &[u32], mask: u32) -> u32 {
    let mut dom = 0;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        dom |= closed[v];
        m &= m - 1;
    }
    dom
}

/// Oracle: enumerates every `B₂ ⊆ V`. Same contract as [`gamma_r_exact`].
pub fn brute_force_gamma_r(g: &Graph) -> Result<Certificate> {
    let closed = closed_masks(g)?;
    let n = g.order();
    let started = Instant::now();
    let mut best: Option<((u64, u32, std::cmp::Reverse<u32>), u32)> = None;
    for mask in 0..(1u32 << n) {
        let dom = dominated_mask(&closed, mask);
        let ones = n as u32 - dom.count_ones();
        let weight = 2 * u64::from(mask.count_ones()) + u64::from(ones);
        let key = (weight, ones, std::cmp::Reverse(lex_rank(mask, n)));
        if best.is_none_or(|(k, _)| key < k) {
            best = Some((key, mask));
        }
    }
    let (_, mask) = best.expect("at least the empty set is enumerated");
    let f = completion(g, &mask_vertices(mask));
    Ok(Certificate {
        kind: CertificateKind::Roman,
        graph: g.fingerprint(),
        value: f.weight(),
        witness: Witness::Function(f.labels().to_vec()),
        stats: SolveStats {
            nodes: 1 << n,
            elapsed: started.elapsed(),
        },
    })
}

/// Oracle for γ: smallest, then lexicographically smallest, dominating set.
pub fn brute_force_gamma(g: &Graph) -> Result<Certificate> {
    let closed = closed_masks(g)?;
    let n = g.order();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let started = Instant::now();
    let mut best: Option<((u32, std::cmp::Reverse<u32>), u32)> = None;
    for mask in 0..(1u32 << n) {
        if dominated_mask(&closed, mask) != full {
            continue;
        }
        let key = (mask.count_ones(), std::cmp::Reverse(lex_rank(mask, n)));
        if best.is_none_or(|(k, _)| key < k) {
            best = Some((key, mask));
        }
    }
    let (_, mask) = best.expect("V itself dominates");
    let set = mask_vertices(mask);
    Ok(Certificate {
        kind: CertificateKind::Domination,
        graph: g.fingerprint(),
        value: set.len() as u64,
        witness: Witness::Set(set),
        stats: SolveStats {
            nodes: 1 << n,
            elapsed: started.elapsed(),
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RomanGraphReport {
    pub is_roman: bool,
    pub gamma: u64,
    pub gamma_r: u64,
    /// A γ_R-function with `B₁ = ∅`, present exactly when the graph is Roman.
    pub witness: Option<Vec<u8>>,
}

/// `γ_R(G) = 2γ(G)`? When it is, labelling a minimum dominating set with 2
/// is a γ_R-function without 1s.
pub fn is_roman_graph(g: &Graph) -> Result<RomanGraphReport> {
    is_roman_graph_with(g, &SolverOptions::default())
}

pub fn is_roman_graph_with(g: &Graph, opts: &SolverOptions) -> Result<RomanGraphReport> {
    let dom = gamma_exact_with(g, opts)?;
    let rom = gamma_r_exact_with(g, opts)?;
    let is_roman = rom.value == 2 * dom.value;
    let witness = is_roman.then(|| {
        completion(g, dom.dominating_set().expect("domination witness"))
            .labels()
            .to_vec()
    });
    Ok(RomanGraphReport {
        is_roman,
        gamma: dom.value,
        gamma_r: rom.value,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_exact(&complete(6).unwrap()).unwrap().value, 1);
        assert_eq!(gamma_exact(&path(5).unwrap()).unwrap().value, 2);
        assert_eq!(brute_force_gamma(&path(5).unwrap()).unwrap().value, 2);
    }

    #[test]
    fn gamma_r_examples() {
        assert_eq!(gamma_r_exact(&path(4).unwrap()).unwrap().value, 3);
        assert_eq!(gamma_r_exact(&cycle(5).unwrap()).unwrap().value, 4);
        let k1 = empty(1).unwrap();
        assert_eq!(brute_force_gamma_r(&k1).unwrap().value, 1);
        assert_eq!(gamma_r_exact(&k1).unwrap().value, 1);
        assert_eq!(brute_force_gamma_r(&path(2).unwrap()).unwrap().value, 2);
    }

    #[test]
    fn witness_prefers_fewer_ones_then_lexicographic_twos() {
        // P₂: (2,0) beats (1,1) and (0,2).
        let c = gamma_r_exact(&path(2).unwrap()).unwrap();
        assert_eq!(c.witness, Witness::Function(vec![2, 0]));
        let b = brute_force_gamma_r(&path(2).unwrap()).unwrap();
        assert_eq!(b.witness, c.witness);
        // P₄: weight 3 needs one 2 and one 1; smallest B₂ is {1}.
        let c = gamma_r_exact(&path(4).unwrap()).unwrap();
        assert_eq!(c.witness, Witness::Function(vec![0, 2, 0, 1]));
    }

    #[test]
    fn roman_graph_examples() {
        let p3 = is_roman_graph(&path(3).unwrap()).unwrap();
        assert!(p3.is_roman);
        assert_eq!((p3.gamma, p3.gamma_r), (1, 2));
        assert_eq!(p3.witness, Some(vec![0, 2, 0]));

        let p2 = is_roman_graph(&path(2).unwrap()).unwrap();
        assert!(p2.is_roman);
        assert_eq!(p2.witness, Some(vec![2, 0]));

        let c4 = is_roman_graph(&cycle(4).unwrap()).unwrap();
        assert!(!c4.is_roman);
        assert_eq!((c4.gamma, c4.gamma_r), (2, 3));
        assert!(c4.witness.is_none());
    }

    #[test]
    fn budget_and_oracle_limits() {
        let opts = SolverOptions {
            vertex_budget: 4,
            ..SolverOptions::default()
        };
        assert!(matches!(
            gamma_r_exact_with(&path(5).unwrap(), &opts),
            Err(Error::Resource(_))
        ));
        assert!(matches!(
            brute_force_gamma_r(&path(23).unwrap()),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn timeout_is_reported() {
        let g = crate::sierpinski::SierpinskiGraph::build(&complete(4).unwrap(), 4).unwrap();
        let opts = SolverOptions::default().with_timeout(Some(Duration::from_millis(1)));
        assert!(matches!(
            gamma_r_exact_with(g.graph(), &opts),
            Err(Error::Timeout(_))
        ));
    }

    #[test]
    fn certificate_validation_detects_foreign_graph() {
        let c = gamma_r_exact(&path(4).unwrap()).unwrap();
        assert!(c.validate(&path(4).unwrap()).is_ok());
        assert!(c.validate(&cycle(4).unwrap()).is_err());
    }
}
