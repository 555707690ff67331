//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;

use crate::bitset::VertexSet;
use crate::error::{input_err, Result};

pub type Vertex = usize;

/// Immutable simple undirected graph.
///
/// Adjacency is kept twice: sorted neighbour lists for iteration and closed
/// neighbourhood bit sets for the solvers. Display labels are optional and
/// do not take part in equality.
#[derive(Clone, Debug)]
pub struct Graph {
    order: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
    closed: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) are merged.
    pub fn from_edge_list(order: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if order == 0 {
            return Err(input_err!("graph order must be positive"));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(input_err!(
                    "edge ({u}, {v}) has an endpoint outside 0..{order}"
                ));
            }
            if u == v {
                return Err(input_err!("self-loop at vertex {u}"));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(Self::from_sorted_unique(order, norm))
    }

    /// Caller guarantees `edges` is sorted, deduplicated, loop-free and
    /// normalised to `u < v`.
    pub(crate) fn from_sorted_unique(order: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut adj = vec![Vec::new(); order];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut closed = Vec::with_capacity(order);
        for (v, nb) in adj.iter_mut().enumerate() {
            nb.sort_unstable();
            let mut set = VertexSet::new(order);
            set.insert(v);
            for &u in nb.iter() {
                set.insert(u);
            }
            closed.push(set);
        }
        Self {
            order,
            edges,
            adj,
            closed,
            labels: None,
        }
    }

    /// Attaches display labels (one per vertex).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(input_err!(
                "expected {} labels, got {}",
                self.order,
                labels.len()
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn closed_neighborhood_set(&self, v: Vertex) -> &VertexSet {
        &self.closed[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.order && v < self.order && u != v && self.closed[u].contains(v)
    }

    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v >= self.order {
            Err(input_err!("vertex {v} outside 0..{}", self.order))
        } else {
            Ok(())
        }
    }

    /// `N(v)` when `closed` is false, `N[v]` otherwise, in increasing order.
    pub fn neighborhood(&self, v: Vertex, closed: bool) -> Result<Vec<Vertex>> {
        self.check_vertex(v)?;
        if closed {
            Ok(self.closed[v].to_vec())
        } else {
            Ok(self.adj[v].clone())
        }
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: Vertex) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap() + 1;
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path distance, `Ok(None)` when `v` is unreachable from `u`.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs_distances(u)[v])
    }

    /// All-pairs distance matrix by repeated BFS.
    pub fn distance_matrix(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.order).map(|v| self.bfs_distances(v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// `N[S]` as a bit set.
    pub fn closed_neighborhood_of(&self, set: &[Vertex]) -> VertexSet {
        let mut dom = VertexSet::new(self.order);
        for &v in set {
            if v < self.order {
                dom.union_with(&self.closed[v]);
            }
        }
        dom
    }

    /// True iff `N[S] = V`. Vertices outside `0..n` are ignored.
    pub fn is_dominating_set(&self, set: &[Vertex]) -> bool {
        self.closed_neighborhood_of(set).len() == self.order
    }

    /// Vertices of degree `n - 1`.
    pub fn universal_vertices(&self) -> Vec<Vertex> {
        (0..self.order)
            .filter(|&v| self.adj[v].len() + 1 == self.order)
            .collect()
    }

    /// True iff `self` and `other` share the vertex set and every edge of
    /// `self` is an edge of `other`.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.order == other.order && self.edges.iter().all(|&(u, v)| other.has_edge(u, v))
    }

    /// Graph with one edge removed.
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Result<Graph> {
        let key = (u.min(v), u.max(v));
        if !self.edges.contains(&key) {
            return Err(input_err!("edge ({u}, {v}) not present"));
        }
        let edges = self.edges.iter().copied().filter(|&e| e != key).collect();
        Ok(Graph::from_sorted_unique(self.order, edges))
    }

    /// Edges of the subgraph induced by `vertices`, renumbered by position.
    pub fn induced_edges(&self, vertices: &[Vertex]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// True iff every edge is `{i, i+1}` and all such edges are present.
    pub fn is_labelled_path(&self) -> bool {
        self.edges.len() + 1 == self.order
            && self.edges.iter().enumerate().all(|(i, &e)| e == (i, i + 1))
    }

    /// 64-bit FNV-1a hash of the canonical edge-list text, used to tie
    /// functions and certificates to the graph they were computed on.
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in crate::io::write_edge_list(self).bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        format!("fnv1a64:{h:016x}")
    }
}

/// Standard families with vertices `0..n` in natural order.
pub mod families {
    use super::*;

    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges)
    }

    /// `C_n` with edges `{i, i+1 mod n}`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(input_err!("cycle needs at least 3 vertices, got {n}"));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edge_list(n, &edges)
    }

    /// `K_{1,n-1}` with centre 0.
    pub fn star(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::from_edge_list(n, &edges)
    }

    pub fn empty(n: usize) -> Result<Graph> {
        Graph::from_edge_list(n, &[])
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn from_edge_list_examples() {
        let k2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.size(), 1);
        let p5 = Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(p5, path(5).unwrap());
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(k3, complete(3).unwrap());
        assert_eq!(k3, cycle(3).unwrap());
    }

    #[test]
    fn from_edge_list_dedups_and_rejects_bad_input() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        assert!(matches!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(crate::Error::Input(_))
        ));
        assert!(matches!(
            Graph::from_edge_list(3, &[(1, 1)]),
            Err(crate::Error::Input(_))
        ));
        assert!(Graph::from_edge_list(0, &[]).is_err());
    }

    #[test]
    fn neighborhoods() {
        let p3 = path(3).unwrap();
        assert_eq!(p3.neighborhood(1, false).unwrap(), vec![0, 2]);
        let k4 = complete(4).unwrap();
        assert_eq!(k4.neighborhood(2, true).unwrap(), vec![0, 1, 2, 3]);
        let c5 = cycle(5).unwrap();
        assert_eq!(c5.neighborhood(0, false).unwrap(), vec![1, 4]);
        assert!(c5.neighborhood(5, false).is_err());
    }

    #[test]
    fn distances() {
        let p5 = path(5).unwrap();
        assert_eq!(p5.distance(3, 3).unwrap(), Some(0));
        assert_eq!(p5.distance(0, 4).unwrap(), Some(4));
        let c6 = cycle(6).unwrap();
        assert_eq!(c6.distance(0, 3).unwrap(), Some(3));
        let two = Graph::from_edge_list(3, &[(0, 1)]).unwrap();
        assert_eq!(two.distance(0, 2).unwrap(), None);
        assert!(two.distance(0, 7).is_err());
    }

    #[test]
    fn domination_examples() {
        let k5 = complete(5).unwrap();
        assert!(k5.is_dominating_set(&[3]));
        let p5 = path(5).unwrap();
        assert!(p5.is_dominating_set(&[1, 3]));
        assert!(!p5.is_dominating_set(&[0]));
        assert!(p5.is_dominating_set(&[0, 1, 2, 3, 4]));
        assert!(!p5.is_dominating_set(&[]));
    }

    #[test]
    fn spanning_subgraph_examples() {
        let p5 = path(5).unwrap();
        let c5 = cycle(5).unwrap();
        assert!(p5.is_spanning_subgraph_of(&c5));
        assert!(c5.is_spanning_subgraph_of(&c5));
        assert!(!c5.is_spanning_subgraph_of(&p5));
        assert!(!path(4).unwrap().is_spanning_subgraph_of(&c5));
    }

    #[test]
    fn universal_vertex_examples() {
        assert_eq!(star(4).unwrap().universal_vertices(), vec![0]);
        assert_eq!(complete(4).unwrap().universal_vertices(), vec![0, 1, 2, 3]);
        assert!(path(4).unwrap().universal_vertices().is_empty());
    }

    #[test]
    fn without_edge_and_path_check() {
        let c5 = cycle(5).unwrap();
        let p = c5.without_edge(4, 0).unwrap();
        assert!(p.is_labelled_path());
        assert!(!c5.is_labelled_path());
        assert!(c5.without_edge(0, 2).is_err());
    }
}
