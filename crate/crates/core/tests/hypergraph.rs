use std::collections::HashSet;

use diskhyper_core::hypergraph::{
    build_h3, find_coloring, is_siblings_first_order, siblings_first_order, tree_hypergraph,
    RootedTree,
};

// Canonical string of the subtree at v: sorted child encodings in parentheses.
fn encode(children: &[Vec<usize>], v: usize) -> String {
    let mut parts: Vec<String> = children[v].iter().map(|&c| encode(children, c)).collect();
    parts.sort();
    format!("({})", parts.concat())
}

fn decode(s: &str) -> Vec<Option<usize>> {
    let mut parent = vec![];
    let mut stack: Vec<usize> = vec![];
    for ch in s.chars() {
        if ch == '(' {
            parent.push(stack.last().copied());
            stack.push(parent.len() - 1);
        } else {
            stack.pop();
        }
    }
    parent
}

/// All unlabeled rooted trees with `n` vertices, grown leaf by leaf and
/// deduplicated by canonical encoding.
fn rooted_trees_up_to(n: usize) -> Vec<Vec<String>> {
    let mut levels = vec![vec![], vec!["()".to_string()]];
    for size in 2..=n {
        let mut seen = HashSet::new();
        for enc in &levels[size - 1] {
            let parent = decode(enc);
            for v in 0..parent.len() {
                let mut p = parent.clone();
                p.push(Some(v));
                let mut children = vec![vec![]; p.len()];
                for (u, q) in p.iter().enumerate() {
                    if let Some(q) = q {
                        children[*q].push(u);
                    }
                }
                seen.insert(encode(&children, 0));
            }
        }
        let mut list: Vec<String> = seen.into_iter().collect();
        list.sort();
        levels.push(list);
    }
    levels
}

#[test]
fn tree_counts_match_known_sequence() {
    let known = [0usize, 1, 1, 2, 4, 9, 20, 48, 115, 286, 719, 1842, 4766, 12486];
    let levels = rooted_trees_up_to(13);
    for n in 1..=13 {
        assert_eq!(levels[n].len(), known[n], "n = {n}");
    }
}

#[test]
fn tree_hypergraphs_never_two_colorable() {
    let levels = rooted_trees_up_to(13);
    for (n, level) in levels.iter().enumerate().skip(1) {
        for enc in level {
            let t = RootedTree::from_parents(decode(enc)).unwrap();
            assert_eq!(t.len(), n);
            assert!(is_siblings_first_order(&t, &siblings_first_order(&t)));
            let h = tree_hypergraph(&t, false);
            assert!(!find_coloring(&h, 2).is_colorable(), "tree {enc}");
        }
    }
}

#[test]
fn h3_of_3_not_three_colorable() {
    let h = build_h3(3);
    assert!(!find_coloring(&h, 3).is_colorable());
}
