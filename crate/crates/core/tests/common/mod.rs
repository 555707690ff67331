//! Oracles written against raw edge lists, sharing no code with the solver.

#![allow(dead_code)]

use sierpinski_roman::Graph;

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    let mut closed: Vec<u32> = (0..n).map(|v| 1 << v).collect();
    for &(u, v) in edges {
        closed[u] |= 1 << v;
        closed[v] |= 1 << u;
    }
    closed
}

/// Every labelling in `{0,1,2}^V` that is Roman dominating and of minimum
/// weight, plus that weight. Labels are read as base-3 digits, vertex 0
/// least significant.
pub fn roman_oracle(g: &Graph) -> (u64, Vec<Vec<u8>>) {
    let n = g.order();
    assert!(n <= 12, "oracle is exponential");
    let closed = adjacency(n, g.edges());
    let mut best = u64::MAX;
    let mut optimal = Vec::new();
    let mut labels = vec![0u8; n];
    for _ in 0..3u64.pow(n as u32) {
        let mut twos = 0u32;
        let mut weight = 0u64;
        for (v, &l) in labels.iter().enumerate() {
            weight += u64::from(l);
            if l == 2 {
                twos |= 1 << v;
            }
        }
        if weight <= best {
            let defended = (0..n).all(|v| labels[v] != 0 || closed[v] & twos != 0);
            if defended {
                if weight < best {
                    best = weight;
                    optimal.clear();
                }
                optimal.push(labels.clone());
            }
        }
        for l in labels.iter_mut() {
            *l += 1;
            if *l < 3 {
                break;
            }
            *l = 0;
        }
    }
    (best, optimal)
}

/// Size of a minimum dominating set, by subset enumeration.
pub fn domination_oracle(g: &Graph) -> u64 {
    let n = g.order();
    assert!(n <= 20);
    let closed = adjacency(n, g.edges());
    let full = (1u32 << n) - 1;
    (0..=full)
        .filter(|&s| {
            (0..n)
                .filter(|&v| s >> v & 1 == 1)
                .fold(0u32, |acc, v| acc | closed[v])
                == full
        })
        .map(|s| u64::from(s.count_ones()))
        .min()
        .unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// One representative per isomorphism class of graphs on `n` vertices:
/// the edge masks that are smallest in their orbit.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let pairs = pairs(n);
    let index = |u: usize, v: usize| {
        let (a, b) = (u.min(v), u.max(v));
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let maps: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let m = pairs.len();
    let mut out = Vec::new();
    'mask: for mask in 0u32..1 << m {
        for map in &maps {
            let mut image = 0u32;
            for (i, &j) in map.iter().enumerate() {
                image |= (mask >> i & 1) << j;
            }
            if image < mask {
                continue 'mask;
            }
        }
        let edges: Vec<(usize, usize)> = (0..m)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        out.push(Graph::from_edge_list(n, &edges).unwrap());
    }
    out
}
