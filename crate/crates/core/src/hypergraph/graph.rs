use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::tree::RootedTree;
use super::HypergraphError;

/// Vertices `0..n` and a list of edges. Edges form a multiset and are
/// compared as sets; each edge is kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypergraph {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
    /// Distinguished vertex used when building `F_i(m)`.
    pub star: Option<usize>,
}

fn normalize(edge: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = edge.iter().copied().collect();
    set.into_iter().collect()
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        let h = Hypergraph { n, edges: edges.iter().map(|e| normalize(e)).collect(), star: None };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<(), HypergraphError> {
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_empty() {
                return Err(HypergraphError::InvalidHypergraph(format!("edge {i} is empty")));
            }
            if e.iter().any(|&v| v >= self.n) {
                return Err(HypergraphError::InvalidHypergraph(format!("edge {i} has a vertex out of range")));
            }
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(HypergraphError::InvalidHypergraph(format!("edge {i} is not sorted")));
            }
        }
        if self.star.is_some_and(|s| s >= self.n) {
            return Err(HypergraphError::InvalidHypergraph("star out of range".into()));
        }
        Ok(())
    }

    /// `Some(m)` when every edge has exactly `m` vertices.
    pub fn uniformity(&self) -> Option<usize> {
        let m = self.edges.first()?.len();
        self.edges.iter().all(|e| e.len() == m).then_some(m)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count()
    }

    pub fn find_edge(&self, edge: &[usize]) -> Option<usize> {
        let e = normalize(edge);
        self.edges.iter().position(|x| *x == e)
    }

    /// Edge lists agree as multisets of sets.
    pub fn same_edges(&self, other: &Hypergraph) -> bool {
        let mut a = self.edges.clone();
        let mut b = other.edges.clone();
        a.sort();
        b.sort();
        self.n == other.n && a == b
    }

    /// Extension of `self` by `b` through `f`. See [`Hypergraph::extend_at`].
    pub fn extend(&self, b: &Hypergraph, f: &[usize]) -> Result<Hypergraph, HypergraphError> {
        let idx = self.find_edge(f).ok_or(HypergraphError::EdgeNotFound)?;
        Ok(self.extend_at(b, idx))
    }

    /// Remove edge `idx`, add one copy of it per vertex of `b` (copy `j`
    /// gains the new vertex `n + j`), then add `b`'s edges on the new
    /// vertices. Edge order: untouched edges, copies, `b`'s edges.
    pub fn extend_at(&self, b: &Hypergraph, idx: usize) -> Hypergraph {
        let f = self.edges[idx].clone();
        let mut edges: Vec<Vec<usize>> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, e)| e.clone())
            .collect();
        for j in 0..b.n {
            let mut e = f.clone();
            e.push(self.n + j);
            edges.push(e);
        }
        for e in &b.edges {
            edges.push(e.iter().map(|v| v + self.n).collect());
        }
        Hypergraph { n: self.n + b.n, edges, star: self.star }
    }
}

/// `G_i`: `i` vertices in one edge.
pub fn single_edge_hypergraph(i: usize) -> Hypergraph {
    assert!(i >= 1, "i must be positive");
    Hypergraph { n: i, edges: vec![(0..i).collect()], star: None }
}

/// Sibling edges `S(v)` for internal vertices (by id), then root paths
/// `Q(v)` for leaves, or for every vertex when `extended` (by id).
pub fn tree_hypergraph(t: &RootedTree, extended: bool) -> Hypergraph {
    let n = t.len();
    let mut edges = vec![];
    for v in 0..n {
        if !t.is_leaf(v) {
            edges.push(normalize(t.children(v)));
        }
    }
    for v in 0..n {
        if extended || t.is_leaf(v) {
            edges.push(normalize(&t.path_from_root(v)));
        }
    }
    Hypergraph { n, edges, star: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete_mary_tree;

    #[test]
    fn triangle_from_m2_tree() {
        let h = tree_hypergraph(&complete_mary_tree(2), false);
        assert_eq!(h.n, 3);
        assert_eq!(h.edges, vec![vec![1, 2], vec![0, 1], vec![0, 2]]);
        let single = tree_hypergraph(&complete_mary_tree(1), false);
        assert_eq!(single.edges, vec![vec![0]]);
    }

    #[test]
    fn m3_tree_counts() {
        let h = tree_hypergraph(&complete_mary_tree(3), false);
        assert_eq!(h.n, 13);
        assert_eq!(h.edges.len(), 13);
        assert_eq!(h.uniformity(), Some(3));
        let ext = tree_hypergraph(&complete_mary_tree(3), true);
        assert_eq!(ext.edges.len(), 4 + 13);
    }

    #[test]
    fn extension_examples() {
        let g1 = single_edge_hypergraph(1);
        let tri = tree_hypergraph(&complete_mary_tree(2), false);
        let k4 = g1.extend(&tri, &[0]).unwrap();
        assert_eq!(k4.n, 4);
        assert_eq!(k4.edges.len(), 6);
        let mut all_pairs = vec![];
        for i in 0..4 {
            for j in i + 1..4 {
                all_pairs.push(vec![i, j]);
            }
        }
        let k4_oracle = Hypergraph::new(4, all_pairs).unwrap();
        assert!(k4.same_edges(&k4_oracle));

        let g2 = single_edge_hypergraph(2);
        let e = g2.extend(&g1, &[1, 0]).unwrap();
        assert_eq!(e.n, 3);
        assert_eq!(e.edges, vec![vec![0, 1, 2], vec![2]]);

        assert_eq!(g2.extend(&g1, &[0]), Err(HypergraphError::EdgeNotFound));
    }

    #[test]
    fn extension_keeps_other_edges() {
        let h = tree_hypergraph(&complete_mary_tree(3), false);
        let b = single_edge_hypergraph(2);
        for idx in 0..h.edges.len() {
            let e = h.extend_at(&b, idx);
            let kept: BTreeSet<_> = e.edges.iter().filter(|x| x.iter().all(|&v| v < h.n)).cloned().collect();
            let want: BTreeSet<_> =
                h.edges.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, x)| x.clone()).collect();
            assert_eq!(kept, want);
        }
    }

    #[test]
    fn json_shape() {
        let h = single_edge_hypergraph(2);
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"n":2,"edges":[[0,1]],"star":null}"#);
        let back: Hypergraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Hypergraph::new(2, vec![vec![]]).is_err());
        assert!(Hypergraph::new(2, vec![vec![2]]).is_err());
    }
}
