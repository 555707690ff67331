//! Generalized Sierpiński graphs `S(G, t)`.
//!
//! Vertices are the words of length `t` over the base vertex set. A word
//! `u_1 u_2 .. u_t` is numbered by reading it as a base-`n` integer with
//! `u_1` most significant, so vertex ids follow lexicographic word order and
//! every copy `V_w = {wx : x ∈ V}` occupies the id range `[w·n, w·n + n)`.
//!
//! Edges are generated from the compact rule: for every base edge `{a, b}`,
//! every `r ∈ 1..=t` and every prefix `w` of length `t - r`, the words
//! `w a b^{r-1}` and `w b a^{r-1}` are adjacent.

use std::fmt;

use serde::Serialize;

use crate::error::{input_err, internal_err, Error, Result};
use crate::graph::{Graph, Vertex};

/// Environment variable overriding [`DEFAULT_VERTEX_BUDGET`].
pub const VERTEX_BUDGET_ENV: &str = "SIERPINSKI_VERTEX_BUDGET";
pub const DEFAULT_VERTEX_BUDGET: usize = 200_000;

/// The vertex budget in effect: the environment override if it parses,
/// otherwise the default.
pub fn vertex_budget() -> usize {
    std::env::var(VERTEX_BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_VERTEX_BUDGET)
}

/// A word over the base vertex set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    /// The constant word `x x .. x` of length `len`.
    pub fn constant(x: usize, len: usize) -> Self {
        Word(vec![x; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&self, x: usize) -> Word {
        let mut v = self.0.clone();
        v.push(x);
        Word(v)
    }

    /// Display form for an alphabet of size `n`: letters joined directly
    /// when `n <= 10`, dot-separated otherwise.
    pub fn to_label(&self, n: usize) -> String {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        if n <= 10 {
            parts.concat()
        } else {
            parts.join(".")
        }
    }

    /// Inverse of [`Word::to_label`].
    pub fn parse(s: &str, n: usize) -> Result<Word> {
        let letters: Result<Vec<usize>> = if n <= 10 {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| input_err!("bad letter `{c}` in word `{s}`"))
                })
                .collect()
        } else {
            s.split('.')
                .map(|p| {
                    p.parse::<usize>()
                        .map_err(|_| input_err!("bad letter `{p}` in word `{s}`"))
                })
                .collect()
        };
        let letters = letters?;
        if let Some(&x) = letters.iter().find(|&&x| x >= n) {
            return Err(input_err!("letter {x} outside 0..{n} in word `{s}`"));
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.iter().max().map_or(0, |m| m + 1);
        f.write_str(&self.to_label(n))
    }
}

/// Metadata emitted next to generated graphs.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SierpinskiMeta {
    pub base_order: usize,
    pub base_edges: usize,
    pub depth: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub extreme_vertices: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SierpinskiGraph {
    base: Graph,
    depth: usize,
    graph: Graph,
    /// `powers[i] = n^i` for `i in 0..=depth`.
    powers: Vec<usize>,
}

/// `x x .. x` (`len` letters) read as a base-`n` number.
fn repdigit(x: usize, len: usize, n: usize) -> usize {
    (0..len).fold(0, |acc, _| acc * n + x)
}

/// `n^t` if it fits within `budget`, otherwise a resource error naming the
/// requested size.
pub fn checked_vertex_count(n: usize, t: usize, budget: usize) -> Result<usize> {
    let count = u32::try_from(t).ok().and_then(|t| n.checked_pow(t));
    match count {
        Some(c) if c <= budget => Ok(c),
        Some(c) => Err(Error::Resource(format!(
            "S(G,{t}) with n={n} has {c} vertices, above the vertex budget of {budget}"
        ))),
        None => Err(Error::Resource(format!(
            "S(G,{t}) with n={n} has n^t vertices (overflows), above the vertex budget of {budget}"
        ))),
    }
}

impl SierpinskiGraph {
    /// Builds `S(base, t)` under the default vertex budget.
    pub fn build(base: &Graph, t: usize) -> Result<Self> {
        Self::build_with_budget(base, t, vertex_budget())
    }

    pub fn build_with_budget(base: &Graph, t: usize, budget: usize) -> Result<Self> {
        let n = base.order();
        if n < 2 {
            return Err(input_err!("base graph must have order at least 2, got {n}"));
        }
        if t == 0 {
            return Err(input_err!("depth t must be at least 1"));
        }
        let total = checked_vertex_count(n, t, budget)?;
        let powers: Vec<usize> = (0..=t).map(|i| n.pow(i as u32)).collect();

        let mut edges = Vec::with_capacity(base.size() * (total - 1) / (n - 1));
        for &(a, b) in base.edges() {
            for r in 1..=t {
                let tail = powers[r - 1];
                let u_suffix = a * tail + repdigit(b, r - 1, n);
                let v_suffix = b * tail + repdigit(a, r - 1, n);
                let block = powers[r];
                for w in 0..powers[t - r] {
                    let u = w * block + u_suffix;
                    let v = w * block + v_suffix;
                    edges.push((u.min(v), u.max(v)));
                }
            }
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        if edges.len() != before {
            return Err(internal_err!("edge rule produced duplicate edges"));
        }
        let labels = (0..total)
            .map(|v| Self::word_of(v, n, t).to_label(n))
            .collect();
        let graph = Graph::from_sorted_unique(total, edges).with_labels(labels)?;
        Ok(Self {
            base: base.clone(),
            depth: t,
            graph,
            powers,
        })
    }

    fn word_of(mut v: usize, n: usize, t: usize) -> Word {
        let mut letters = vec![0; t];
        for slot in letters.iter_mut().rev() {
            *slot = v % n;
            v /= n;
        }
        Word(letters)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base_order(&self) -> usize {
        self.base.order()
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// `n^i`.
    pub fn power(&self, i: usize) -> usize {
        self.powers[i]
    }

    pub fn word(&self, v: Vertex) -> Word {
        Self::word_of(v, self.base.order(), self.depth)
    }

    pub fn word_label(&self, v: Vertex) -> String {
        self.graph.label(v)
    }

    /// Dense id of a prefix word read as a base-`n` number.
    fn prefix_index(&self, w: &Word) -> Result<usize> {
        let n = self.base.order();
        if let Some(&x) = w.0.iter().find(|&&x| x >= n) {
            return Err(input_err!("letter {x} outside 0..{n}"));
        }
        Ok(w.0.iter().fold(0, |acc, &x| acc * n + x))
    }

    /// Vertex id of a full-length word.
    pub fn vertex(&self, w: &Word) -> Result<Vertex> {
        if w.len() != self.depth {
            return Err(input_err!(
                "word `{}` has length {}, expected {}",
                w.to_label(self.base.order()),
                w.len(),
                self.depth
            ));
        }
        self.prefix_index(w)
    }

    pub fn vertex_by_label(&self, label: &str) -> Result<Vertex> {
        self.vertex(&Word::parse(label, self.base.order())?)
    }

    /// The `n` constant words, in letter order.
    pub fn extreme_vertices(&self) -> Vec<Word> {
        (0..self.base.order())
            .map(|x| Word::constant(x, self.depth))
            .collect()
    }

    pub fn extreme_vertex_ids(&self) -> Vec<Vertex> {
        let n = self.base.order();
        (0..n).map(|x| repdigit(x, self.depth, n)).collect()
    }

    /// Number of copies `⟨V_w⟩` of the base graph (`n^{t-1}`).
    pub fn copy_count(&self) -> usize {
        self.powers[self.depth - 1]
    }

    /// Vertices `wx` of copy number `c` (the prefix `w` read as a number).
    pub fn copy_range(&self, c: usize) -> std::ops::Range<Vertex> {
        let n = self.base.order();
        c * n..c * n + n
    }

    /// `V_w` for a prefix `w` of length `t-1`, ordered by last letter. The
    /// induced subgraph is checked to coincide with the base graph under
    /// `x ↦ wx`.
    pub fn copy_vertices(&self, w: &Word) -> Result<Vec<Vertex>> {
        if self.depth < 2 {
            return Err(input_err!("copies need depth at least 2"));
        }
        if w.len() + 1 != self.depth {
            return Err(input_err!(
                "copy prefix must have length {}, got {}",
                self.depth - 1,
                w.len()
            ));
        }
        let c = self.prefix_index(w)?;
        let verts: Vec<Vertex> = self.copy_range(c).collect();
        if self.graph.induced_edges(&verts) != self.base.edges() {
            return Err(internal_err!(
                "copy {} is not an isomorphic image of the base graph",
                w.to_label(self.base.order())
            ));
        }
        Ok(verts)
    }

    /// All vertices whose word starts with `prefix` (any length up to `t`).
    pub fn block_vertices(&self, prefix: &Word) -> Result<std::ops::Range<Vertex>> {
        if prefix.len() > self.depth {
            return Err(input_err!("prefix longer than depth {}", self.depth));
        }
        let p = self.prefix_index(prefix)?;
        let span = self.powers[self.depth - prefix.len()];
        Ok(p * span..(p + 1) * span)
    }

    /// The extreme vertex of `⟨V_w⟩`: the unique member whose constant
    /// suffix runs through the last letter of `w`, i.e. `w` followed by its
    /// own last letter.
    pub fn copy_extreme_vertex(&self, w: &Word) -> Result<Word> {
        if self.depth < 2 || w.len() + 1 != self.depth {
            return Err(input_err!(
                "copy prefix must have length {} (depth >= 2)",
                self.depth.saturating_sub(1)
            ));
        }
        self.prefix_index(w)?;
        Ok(w.push(w.last().expect("non-empty prefix")))
    }

    fn copy_extreme_id(&self, c: usize) -> Vertex {
        let n = self.base.order();
        c * n + c % n
    }

    /// For every copy `⟨V_w⟩` and every edge leaving it, the endpoint inside
    /// the copy is the copy's extreme vertex or adjacent to it. Depth 1 has
    /// no copies and is vacuously true.
    pub fn check_boundary_adjacency(&self) -> bool {
        if self.depth < 2 {
            return true;
        }
        let n = self.base.order();
        for &(u, v) in self.graph.edges() {
            let (cu, cv) = (u / n, v / n);
            if cu == cv {
                continue;
            }
            for (x, c) in [(u, cu), (v, cv)] {
                let e = self.copy_extreme_id(c);
                if x != e && !self.graph.has_edge(x, e) {
                    return false;
                }
            }
        }
        true
    }

    /// `|E(G)| (n^t - 1) / (n - 1)`.
    pub fn expected_edge_count(&self) -> usize {
        let n = self.base.order();
        self.base.size() * (self.powers[self.depth] - 1) / (n - 1)
    }

    pub fn metadata(&self) -> SierpinskiMeta {
        SierpinskiMeta {
            base_order: self.base.order(),
            base_edges: self.base.size(),
            depth: self.depth,
            vertex_count: self.order(),
            edge_count: self.graph.size(),
            extreme_vertices: self
                .extreme_vertices()
                .iter()
                .map(|w| w.to_label(self.base.order()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn depth_one_is_the_base_graph() {
        for g in [path(4).unwrap(), complete(3).unwrap(), star(5).unwrap()] {
            let s = SierpinskiGraph::build(&g, 1).unwrap();
            assert_eq!(s.graph(), &g);
        }
    }

    #[test]
    fn p2_depth_two_is_p4_in_word_order() {
        let s = SierpinskiGraph::build(&path(2).unwrap(), 2).unwrap();
        // 00 - 01 - 10 - 11
        assert_eq!(s.graph().edges(), &[(0, 1), (1, 2), (2, 3)]);
        let labels: Vec<String> = (0..4).map(|v| s.word_label(v)).collect();
        assert_eq!(labels, ["00", "01", "10", "11"]);
    }

    #[test]
    fn k3_depth_two_counts() {
        let s = SierpinskiGraph::build(&complete(3).unwrap(), 2).unwrap();
        assert_eq!(s.order(), 9);
        assert_eq!(s.graph().size(), 12);
        assert_eq!(s.expected_edge_count(), 12);
    }

    #[test]
    fn build_errors() {
        let p3 = path(3).unwrap();
        assert!(matches!(
            SierpinskiGraph::build(&p3, 0),
            Err(Error::Input(_))
        ));
        let single = empty(1).unwrap();
        assert!(matches!(
            SierpinskiGraph::build(&single, 2),
            Err(Error::Input(_))
        ));
        match SierpinskiGraph::build_with_budget(&p3, 5, 100) {
            Err(Error::Resource(msg)) => assert!(msg.contains("243")),
            other => panic!("expected resource error, got {other:?}"),
        }
        assert!(matches!(
            SierpinskiGraph::build_with_budget(&p3, 200, usize::MAX),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn extreme_vertices_and_degrees() {
        let base = star(4).unwrap();
        let s = SierpinskiGraph::build(&base, 3).unwrap();
        let ext = s.extreme_vertices();
        assert_eq!(ext.len(), 4);
        for (x, v) in s.extreme_vertex_ids().into_iter().enumerate() {
            assert_eq!(s.word(v), Word::constant(x, 3));
            assert_eq!(s.graph().degree(v), base.degree(x));
        }
        let k3 = SierpinskiGraph::build(&complete(3).unwrap(), 2).unwrap();
        let labels: Vec<String> = k3
            .extreme_vertices()
            .iter()
            .map(|w| w.to_label(3))
            .collect();
        assert_eq!(labels, ["00", "11", "22"]);
        let one = SierpinskiGraph::build(&complete(3).unwrap(), 1).unwrap();
        assert_eq!(one.extreme_vertices().len(), 3);
    }

    #[test]
    fn copies() {
        let s = SierpinskiGraph::build(&complete(3).unwrap(), 2).unwrap();
        let verts = s.copy_vertices(&Word::new(vec![1])).unwrap();
        let labels: Vec<String> = verts.iter().map(|&v| s.word_label(v)).collect();
        assert_eq!(labels, ["10", "11", "12"]);
        assert_eq!(s.copy_count(), 3);
        assert!(s.copy_vertices(&Word::new(vec![1, 1])).is_err());

        let p = SierpinskiGraph::build(&path(2).unwrap(), 2).unwrap();
        assert_eq!(p.copy_vertices(&Word::new(vec![0])).unwrap(), vec![0, 1]);
    }

    #[test]
    fn copy_extreme_vertex_examples() {
        let s2 = SierpinskiGraph::build(&complete(3).unwrap(), 2).unwrap();
        assert_eq!(
            s2.copy_extreme_vertex(&Word::new(vec![1]))
                .unwrap()
                .to_label(3),
            "11"
        );
        let s3 = SierpinskiGraph::build(&complete(3).unwrap(), 3).unwrap();
        assert_eq!(
            s3.copy_extreme_vertex(&Word::new(vec![1, 2]))
                .unwrap()
                .to_label(3),
            "122"
        );
        assert_eq!(
            s3.copy_extreme_vertex(&Word::new(vec![1, 1]))
                .unwrap()
                .to_label(3),
            "111"
        );
    }

    #[test]
    fn boundary_adjacency_on_fixed_bases() {
        for g in [complete(3).unwrap(), path(5).unwrap()] {
            let s = SierpinskiGraph::build(&g, 2).unwrap();
            assert!(s.check_boundary_adjacency());
        }
    }

    #[test]
    fn block_vertices_cover_prefix() {
        let s = SierpinskiGraph::build(&path(3).unwrap(), 3).unwrap();
        let r = s.block_vertices(&Word::new(vec![2])).unwrap();
        assert_eq!(r, 18..27);
        for v in r {
            assert_eq!(s.word(v).letters()[0], 2);
        }
        assert_eq!(s.block_vertices(&Word::new(vec![])).unwrap(), 0..27);
    }

    #[test]
    fn word_labels_round_trip() {
        let w = Word::new(vec![1, 0, 2]);
        assert_eq!(w.to_label(3), "102");
        assert_eq!(Word::parse("102", 3).unwrap(), w);
        let big = Word::new(vec![11, 0]);
        assert_eq!(big.to_label(12), "11.0");
        assert_eq!(Word::parse("11.0", 12).unwrap(), big);
        assert!(Word::parse("13", 3).is_err());
    }
}
