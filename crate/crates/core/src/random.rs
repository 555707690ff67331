//! Seeded random connected graphs: a uniform labelled spanning tree plus
//! independent extra edges.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input_err, Result};
use crate::graph::{Graph, Vertex};

pub type GraphRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GraphRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Tree with the given Prüfer sequence on `seq.len() + 2` vertices.
fn prufer_tree(seq: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BTreeSet<Vertex> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    for &x in seq {
        let leaf = leaves.pop_first().expect("a tree always has a leaf");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let last: Vec<Vertex> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    edges
}

/// Uniformly random labelled tree on `n` vertices.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Result<Graph> {
    match n {
        0 => Err(input_err!("graph order must be positive")),
        1 => Graph::from_edge_list(1, &[]),
        2 => Graph::from_edge_list(2, &[(0, 1)]),
        _ => {
            let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            Graph::from_edge_list(n, &prufer_tree(&seq))
        }
    }
}

/// Random spanning tree, then each remaining pair joined with probability `p`.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(input_err!("edge probability {p} outside [0, 1]"));
    }
    let tree = random_tree(n, rng)?;
    let mut edges = tree.edges().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// `g` with one uniformly chosen edge removed, or `None` if `g` has no edges.
pub fn delete_random_edge<R: Rng>(
    g: &Graph,
    rng: &mut R,
) -> Result<Option<(Graph, (Vertex, Vertex))>> {
    let Some(&(u, v)) = g.edges().choose(rng) else {
        return Ok(None);
    };
    Ok(Some((g.without_edge(u, v)?, (u, v))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prufer_decoding() {
        // Sequence [3, 3, 3] on 5 vertices is the star centred at 3.
        let mut e = prufer_tree(&[3, 3, 3]);
        e.sort_unstable();
        assert_eq!(e, vec![(0, 3), (1, 3), (2, 3), (3, 4)]);
    }

    #[test]
    fn trees_and_connected_graphs() {
        let mut r = rng(7);
        for n in 1..12 {
            let t = random_tree(n, &mut r).unwrap();
            assert_eq!(t.size(), n - 1);
            assert!(t.is_connected());
            let g = random_connected(n, 0.3, &mut r).unwrap();
            assert!(g.is_connected());
            assert!(t.size() <= g.size());
        }
        assert!(random_connected(4, 1.5, &mut r).is_err());
        let k = random_connected(5, 1.0, &mut r).unwrap();
        assert_eq!(k.size(), 10);
    }

    #[test]
    fn seeds_reproduce() {
        let a = random_connected(9, 0.4, &mut rng(42)).unwrap();
        let b = random_connected(9, 0.4, &mut rng(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn edge_deletion() {
        let g = random_connected(6, 0.5, &mut rng(1)).unwrap();
        let (h, (u, v)) = delete_random_edge(&g, &mut rng(2)).unwrap().unwrap();
        assert!(h.is_spanning_subgraph_of(&g));
        assert!(!h.has_edge(u, v) && g.has_edge(u, v));
        assert!(
            delete_random_edge(&Graph::from_edge_list(1, &[]).unwrap(), &mut rng(0))
                .unwrap()
                .is_none()
        );
    }
}
