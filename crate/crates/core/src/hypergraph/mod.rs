//! Rooted trees, the tree hypergraphs built on them, the extension
//! operation and complete colorability search.

mod coloring;
mod graph;
mod tree;

pub use coloring::{find_coloring, find_monochromatic_edge, Coloring, ColoringOutcome};
pub use graph::{single_edge_hypergraph, tree_hypergraph, Hypergraph};
pub use tree::{complete_mary_tree, is_siblings_first_order, siblings_first_order, RootedTree};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypergraphError {
    #[error("edge not found in hypergraph")]
    EdgeNotFound,
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
}

/// Tree hypergraph of the complete `m`-ary tree with root paths of `m` vertices.
pub fn build_h2(m: usize) -> Hypergraph {
    tree_hypergraph(&complete_mary_tree(m), false)
}

/// `F_1(m)` is a single vertex in a single edge; `F_i(m)` extends every
/// edge of `F_{i-1}(m)` containing the star vertex by `build_h2(m)`, in
/// edge order.
pub fn build_f(i: usize, m: usize) -> Hypergraph {
    assert!(i >= 1 && m >= 1, "i and m must be positive");
    let mut h = single_edge_hypergraph(1);
    h.star = Some(0);
    let h2 = build_h2(m);
    for _ in 1..i {
        let star = h.star.expect("star is set");
        let targets: Vec<Vec<usize>> =
            h.edges.iter().filter(|e| e.contains(&star)).cloned().collect();
        for f in targets {
            h = h.extend(&h2, &f).expect("edge was taken from the hypergraph");
        }
    }
    h
}

pub fn build_h3(m: usize) -> Hypergraph {
    build_f(m, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h2_uniform() {
        for m in 1..=4 {
            assert_eq!(build_h2(m).uniformity(), Some(m));
        }
    }

    #[test]
    fn h3_small_cases() {
        let k4 = build_h3(2);
        assert_eq!(k4.n, 4);
        assert_eq!(k4.edges.len(), 6);
        assert_eq!(k4.uniformity(), Some(2));

        // unrolling F_2(3): {v} replaced by 13 pairs {v, t}, then H2(3) on the t's
        let f = build_f(2, 3);
        assert_eq!(f.n, 14);
        let h2 = build_h2(3);
        let mut want: Vec<Vec<usize>> = (1..14).map(|t| vec![0, t]).collect();
        want.extend(h2.edges.iter().map(|e| e.iter().map(|v| v + 1).collect()));
        assert_eq!(f.edges, want);

        // F_3(3): 13 more copies of H2(3), one per pair {v, t}
        let h3 = build_h3(3);
        assert_eq!(h3.n, 1 + 13 + 13 * 13);
        assert_eq!(h3.edges.len(), 13 * 13 + 13 + 13 * 13);
        assert_eq!(h3.uniformity(), Some(3));
    }

    #[test]
    fn f_not_three_colorable() {
        for i in 1..=2 {
            assert!(!find_coloring(&build_f(i, 2), 3).is_colorable());
        }
    }
}
