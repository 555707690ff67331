//! Roman dominating functions, their derived sets, and per-copy weight
//! profiles on Sierpiński graphs over paths.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{contract_err, input_err, internal_err, Result};
use crate::graph::{Graph, Vertex};
use crate::sierpinski::SierpinskiGraph;

/// A total labelling `V → {0, 1, 2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RomanFunction {
    labels: Vec<u8>,
}

impl RomanFunction {
    pub fn new(labels: Vec<u8>) -> Result<Self> {
        if let Some((v, l)) = labels.iter().enumerate().find(|(_, &l)| l > 2) {
            return Err(input_err!("label {l} at vertex {v} is not in {{0,1,2}}"));
        }
        Ok(Self { labels })
    }

    /// All vertices labelled `value`.
    pub fn constant(order: usize, value: u8) -> Result<Self> {
        Self::new(vec![value; order])
    }

    /// Label 2 on `twos`, 1 on `ones`, 0 elsewhere. Overlaps are rejected.
    pub fn from_parts(order: usize, ones: &[Vertex], twos: &[Vertex]) -> Result<Self> {
        let mut labels = vec![0u8; order];
        for (set, value) in [(ones, 1u8), (twos, 2u8)] {
            for &v in set {
                if v >= order {
                    return Err(input_err!("vertex {v} outside 0..{order}"));
                }
                if labels[v] != 0 {
                    return Err(input_err!("vertex {v} assigned twice"));
                }
                labels[v] = value;
            }
        }
        Ok(Self { labels })
    }

    pub(crate) fn from_labels_unchecked(labels: Vec<u8>) -> Self {
        debug_assert!(labels.iter().all(|&l| l <= 2));
        Self { labels }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> u8 {
        self.labels[v]
    }

    /// Preimage of `value`, increasing.
    pub fn class(&self, value: u8) -> Vec<Vertex> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == value)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn b0(&self) -> Vec<Vertex> {
        self.class(0)
    }

    pub fn b1(&self) -> Vec<Vertex> {
        self.class(1)
    }

    pub fn b2(&self) -> Vec<Vertex> {
        self.class(2)
    }

    fn class_set(&self, value: u8) -> VertexSet {
        VertexSet::from_iter_with_capacity(self.order(), self.class(value))
    }

    /// `Σ f(v) = |B₁| + 2|B₂|`.
    pub fn weight(&self) -> u64 {
        self.labels.iter().map(|&l| u64::from(l)).sum()
    }

    fn check_domain(&self, g: &Graph) -> Result<()> {
        if self.order() != g.order() {
            return Err(input_err!(
                "labelling covers {} vertices but the graph has {}",
                self.order(),
                g.order()
            ));
        }
        Ok(())
    }

    /// Every 0-labelled vertex has a 2-labelled neighbour.
    pub fn is_roman_dominating(&self, g: &Graph) -> Result<bool> {
        self.check_domain(g)?;
        Ok(self.first_undefended(g).is_none())
    }

    /// First 0-labelled vertex lacking a 2-labelled neighbour.
    pub fn first_undefended(&self, g: &Graph) -> Option<Vertex> {
        (0..g.order())
            .find(|&v| self.labels[v] == 0 && !g.neighbors(v).iter().any(|&u| self.labels[u] == 2))
    }

    pub fn to_json(&self, g: &Graph) -> RomanFunctionJson {
        RomanFunctionJson {
            graph: g.fingerprint(),
            labels: self.labels.clone(),
            weight: self.weight(),
        }
    }

    /// Word-keyed JSON for functions on a Sierpiński graph.
    pub fn to_word_json(&self, s: &SierpinskiGraph) -> WordRomanFunctionJson {
        WordRomanFunctionJson {
            graph: s.graph().fingerprint(),
            labels: (0..s.order())
                .map(|v| (s.word_label(v), self.labels[v]))
                .collect(),
            weight: self.weight(),
        }
    }

    /// Parses the index-keyed JSON form and checks it against `g`.
    pub fn from_json(text: &str, g: &Graph) -> Result<Self> {
        let parsed: RomanFunctionJson = serde_json::from_str(text)
            .map_err(|e| input_err!("invalid Roman function JSON: {e}"))?;
        if parsed.graph.starts_with("fnv1a64:") && parsed.graph != g.fingerprint() {
            return Err(input_err!(
                "function was recorded for graph {} but the given graph is {}",
                parsed.graph,
                g.fingerprint()
            ));
        }
        let f = Self::new(parsed.labels)?;
        f.check_domain(g)?;
        if f.weight() != parsed.weight {
            return Err(input_err!(
                "declared weight {} differs from label sum {}",
                parsed.weight,
                f.weight()
            ));
        }
        Ok(f)
    }
}

/// `{"graph": .., "labels": [..], "weight": w}`. `graph` is a fingerprint
/// (see [`Graph::fingerprint`]) or a free-form name.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RomanFunctionJson {
    pub graph: String,
    pub labels: Vec<u8>,
    pub weight: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WordRomanFunctionJson {
    pub graph: String,
    pub labels: BTreeMap<String, u8>,
    pub weight: u64,
}

/// Sets derived from a Roman dominating function that feed the upper-bound
/// construction on `S(G, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedSets {
    /// Non-isolated vertices of `⟨B₁⟩`.
    pub d1: Vec<Vertex>,
    /// Non-isolated vertices of `⟨B₂⟩`.
    pub d2: Vec<Vertex>,
    /// Non-isolated vertices of `⟨B₁ ∪ B₂⟩`.
    pub d12: Vec<Vertex>,
    /// Number of `u ∈ B₁ \ D₁` at distance 2 from some `v ∈ B₂` with
    /// exactly two neighbours in `B₀`.
    pub theta: usize,
    /// `v ∈ B₂` with exactly two neighbours in `B₀` and some `u ∈ B₁ \ D₁`
    /// at distance 2.
    pub b2_prime: Vec<Vertex>,
}

fn non_isolated_in(g: &Graph, set: &VertexSet) -> Vec<Vertex> {
    set.iter()
        .filter(|&v| g.neighbors(v).iter().any(|&u| set.contains(u)))
        .collect()
}

/// `d(u, v) = 2`: distinct, non-adjacent, with a common neighbour.
pub(crate) fn at_distance_two(g: &Graph, u: Vertex, v: Vertex) -> bool {
    u != v && !g.has_edge(u, v) && g.neighbors(u).iter().any(|&w| g.has_edge(w, v))
}

/// Computes D₁, D₂, D₁₂, θ and B₂′ straight from their definitions.
/// Requires only that `f` be Roman dominating on `g`.
pub fn derived_sets(f: &RomanFunction, g: &Graph) -> Result<DerivedSets> {
    if !f.is_roman_dominating(g)? {
        return Err(contract_err!(
            "derived sets need a Roman dominating function (vertex {} is undefended)",
            f.first_undefended(g).unwrap()
        ));
    }
    let b0 = f.class_set(0);
    let b1 = f.class_set(1);
    let b2 = f.class_set(2);
    let mut b12 = b1.clone();
    b12.union_with(&b2);

    let d1 = non_isolated_in(g, &b1);
    let d2 = non_isolated_in(g, &b2);
    let d12 = non_isolated_in(g, &b12);

    let mut lonely_ones = b1.clone();
    for &v in &d1 {
        lonely_ones.remove(v);
    }
    let two_b0: Vec<Vertex> = b2
        .iter()
        .filter(|&v| g.closed_neighborhood_set(v).intersection_len(&b0) == 2)
        .collect();

    let theta = lonely_ones
        .iter()
        .filter(|&u| two_b0.iter().any(|&v| at_distance_two(g, u, v)))
        .count();
    let b2_prime = two_b0
        .iter()
        .copied()
        .filter(|&v| lonely_ones.iter().any(|u| at_distance_two(g, v, u)))
        .collect();

    Ok(DerivedSets {
        d1,
        d2,
        d12,
        theta,
        b2_prime,
    })
}

/// Class of a copy by its excess over the path lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CopyClass {
    /// Excess below zero: impossible for a γ_R-function.
    Below,
    D0,
    D1,
    /// Excess of two or more.
    D2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopyProfile {
    /// Prefix `wu` of length `t - 1`, as a word label.
    pub prefix: String,
    /// Last letter `u` of the prefix (0-based path position).
    pub u: usize,
    pub a_len: usize,
    pub b_len: usize,
    pub weight: u64,
    /// `ω(V_wu) - ⌈2|A_wu|/3⌉ - ⌈2|B_wu|/3⌉`.
    pub class_index: i64,
    pub class: CopyClass,
    /// `deg(wuu) ≠ deg(u)`.
    pub in_lambda: bool,
}

fn ceil_two_thirds(x: usize) -> i64 {
    (2 * x as i64 + 2) / 3
}

/// Per-copy profile of `f` on `S(P_n, t)`.
///
/// With path vertices `0..n` (position `p` here is `p + 1` in 1-based
/// numbering) `A_wu` holds the copy vertices strictly left of `u - 1` and
/// `B_wu` those strictly right of `u + 1`.
pub fn copy_weight_profile(f: &RomanFunction, s: &SierpinskiGraph) -> Result<Vec<CopyProfile>> {
    let base = s.base();
    let n = base.order();
    if !base.is_labelled_path() || n < 3 {
        return Err(input_err!(
            "copy profiles need a base path 0-1-..-(n-1) with n >= 3"
        ));
    }
    if s.depth() < 2 {
        return Err(input_err!("copy profiles need depth at least 2"));
    }
    if !f.is_roman_dominating(s.graph())? {
        return Err(contract_err!(
            "copy profiles need a Roman dominating function"
        ));
    }
    let g = s.graph();
    let mut out = Vec::with_capacity(s.copy_count());
    for c in 0..s.copy_count() {
        let u = c % n;
        let range = s.copy_range(c);
        let weight: u64 = range.clone().map(|v| u64::from(f.label(v))).sum();
        let a_len = u.saturating_sub(1);
        let b_len = (n - 1).saturating_sub(u + 1);
        let class_index = weight as i64 - ceil_two_thirds(a_len) - ceil_two_thirds(b_len);
        let class = match class_index {
            i if i < 0 => CopyClass::Below,
            0 => CopyClass::D0,
            1 => CopyClass::D1,
            _ => CopyClass::D2,
        };
        let extreme = c * n + u;
        let prefix = s.word(range.start).0[..s.depth() - 1].to_vec();
        out.push(CopyProfile {
            prefix: crate::sierpinski::Word(prefix).to_label(n),
            u,
            a_len,
            b_len,
            weight,
            class_index,
            class,
            in_lambda: g.degree(extreme) != base.degree(u),
        });
    }
    if out.len() != s.copy_count() {
        return Err(internal_err!("profile count mismatch"));
    }
    Ok(out)
}

/// Every D₀ copy with last letter `u` has some D₂ copy whose last letter is
/// a base neighbour of `u`.
pub fn d0_copies_have_d2_neighbor(profiles: &[CopyProfile], base: &Graph) -> bool {
    profiles
        .iter()
        .filter(|p| p.class == CopyClass::D0)
        .all(|p| {
            profiles
                .iter()
                .any(|q| q.class == CopyClass::D2 && base.has_edge(p.u, q.u))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn roman_domination_examples() {
        let p3 = path(3).unwrap();
        assert!(RomanFunction::constant(3, 1)
            .unwrap()
            .is_roman_dominating(&p3)
            .unwrap());
        let f = RomanFunction::new(vec![0, 2, 0]).unwrap();
        assert!(f.is_roman_dominating(&p3).unwrap());
        assert_eq!(f.weight(), 2);
        let bad = RomanFunction::new(vec![0, 1, 0]).unwrap();
        assert!(!bad.is_roman_dominating(&p3).unwrap());
        assert!(f.is_roman_dominating(&path(4).unwrap()).is_err());
        assert!(RomanFunction::new(vec![0, 3]).is_err());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(RomanFunction::constant(5, 0).unwrap().weight(), 0);
        assert_eq!(RomanFunction::constant(4, 2).unwrap().weight(), 8);
        let f = RomanFunction::new(vec![0, 2, 0, 1]).unwrap();
        assert_eq!(f.weight(), 3);
        assert!(f.is_roman_dominating(&path(4).unwrap()).unwrap());
        assert_eq!(f.b0(), vec![0, 2]);
        assert_eq!(f.b1(), vec![3]);
        assert_eq!(f.b2(), vec![1]);
    }

    #[test]
    fn derived_sets_examples() {
        let p3 = path(3).unwrap();
        let d = derived_sets(&RomanFunction::new(vec![0, 2, 0]).unwrap(), &p3).unwrap();
        assert!(d.d1.is_empty() && d.d2.is_empty() && d.d12.is_empty());
        assert_eq!(d.theta, 0);
        assert!(d.b2_prime.is_empty());

        let p2 = path(2).unwrap();
        let d = derived_sets(&RomanFunction::new(vec![1, 1]).unwrap(), &p2).unwrap();
        assert_eq!(d.d1, vec![0, 1]);
        assert!(d.d2.is_empty());
        assert_eq!(d.d12, vec![0, 1]);
        assert_eq!(d.theta, 0);

        let p7 = path(7).unwrap();
        let f = RomanFunction::from_parts(7, &[6], &[1, 4]).unwrap();
        let d = derived_sets(&f, &p7).unwrap();
        assert!(d.d1.is_empty() && d.d2.is_empty() && d.d12.is_empty());
        assert_eq!(d.theta, 1);
        assert_eq!(d.b2_prime, vec![4]);
    }

    #[test]
    fn derived_sets_reject_non_rdf() {
        let p3 = path(3).unwrap();
        let f = RomanFunction::new(vec![0, 1, 0]).unwrap();
        assert!(matches!(
            derived_sets(&f, &p3),
            Err(crate::Error::Contract(_))
        ));
    }

    #[test]
    fn json_round_trip_and_checks() {
        let p3 = path(3).unwrap();
        let f = RomanFunction::new(vec![0, 2, 0]).unwrap();
        let text = serde_json::to_string(&f.to_json(&p3)).unwrap();
        assert_eq!(RomanFunction::from_json(&text, &p3).unwrap(), f);
        assert!(RomanFunction::from_json(&text, &path(4).unwrap()).is_err());
        let named = r#"{"graph":"p3","labels":[0,2,0],"weight":3}"#;
        assert!(RomanFunction::from_json(named, &p3).is_err());
    }

    #[test]
    fn copy_profile_rejects_non_path() {
        let s = SierpinskiGraph::build(&cycle(4).unwrap(), 2).unwrap();
        let f = RomanFunction::constant(16, 1).unwrap();
        assert!(copy_weight_profile(&f, &s).is_err());
    }

    #[test]
    fn copy_profile_set_sizes() {
        let s = SierpinskiGraph::build(&path(5).unwrap(), 2).unwrap();
        let f = RomanFunction::constant(25, 1).unwrap();
        let prof = copy_weight_profile(&f, &s).unwrap();
        let sizes: Vec<(usize, usize)> = prof.iter().take(5).map(|p| (p.a_len, p.b_len)).collect();
        // 1-based u = 1..5: A empty for u <= 2, B empty for u >= 4.
        assert_eq!(sizes, vec![(0, 3), (0, 2), (1, 1), (2, 0), (3, 0)]);
        assert!(prof
            .iter()
            .all(|p| p.weight == 5 && p.class == CopyClass::D2));
        // At depth 2 every copy extreme vertex `uu` keeps its base degree.
        assert!(prof.iter().all(|p| !p.in_lambda));

        let s3 = SierpinskiGraph::build(&path(5).unwrap(), 3).unwrap();
        let f3 = RomanFunction::constant(125, 1).unwrap();
        let prof3 = copy_weight_profile(&f3, &s3).unwrap();
        let lambda = |prefix: &str| prof3.iter().find(|p| p.prefix == prefix).unwrap().in_lambda;
        // 011 ~ 100 and 122 ~ 211; 000 and 111 are extreme; 133 has no cross edge.
        assert!(lambda("01") && lambda("12"));
        assert!(!lambda("00") && !lambda("11") && !lambda("13"));
    }
}
