use serde::{Deserialize, Serialize};

use super::graph::Hypergraph;

/// Vertex colors in `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub k: usize,
    pub colors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringOutcome {
    Colorable(Coloring),
    /// The search space was exhausted; `nodes` is the number of search nodes.
    NotColorable { nodes: u64 },
}

impl ColoringOutcome {
    pub fn is_colorable(&self) -> bool {
        matches!(self, ColoringOutcome::Colorable(_))
    }
}

struct Search<'a> {
    h: &'a Hypergraph,
    c: usize,
    incident: Vec<Vec<usize>>,
    color: Vec<Option<usize>>,
    // per edge, number of colored vertices of each color
    count: Vec<Vec<usize>>,
    max_used: Option<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn allowed(&self, v: usize) -> Vec<usize> {
        let limit = self.max_used.map_or(1, |m| m + 2).min(self.c);
        (0..limit)
            .filter(|&col| {
                self.incident[v]
                    .iter()
                    .all(|&e| self.count[e][col] + 1 < self.h.edges[e].len())
            })
            .collect()
    }

    fn assign(&mut self, v: usize, col: usize) {
        self.color[v] = Some(col);
        for &e in &self.incident[v] {
            self.count[e][col] += 1;
        }
    }

    fn unassign(&mut self, v: usize, col: usize) {
        self.color[v] = None;
        for &e in &self.incident[v] {
            self.count[e][col] -= 1;
        }
    }

    // Most constrained vertex first; a vertex with one option is a forced move.
    fn pick(&self) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for v in 0..self.h.n {
            if self.color[v].is_some() {
                continue;
            }
            let opts = self.allowed(v);
            let better = match &best {
                None => true,
                Some((b, bo)) => {
                    opts.len() < bo.len()
                        || (opts.len() == bo.len() && self.incident[v].len() > self.incident[*b].len())
                }
            };
            if better {
                let done = opts.len() <= 1;
                best = Some((v, opts));
                if done {
                    break;
                }
            }
        }
        best
    }

    fn run(&mut self) -> bool {
        self.nodes += 1;
        let Some((v, opts)) = self.pick() else {
            return true;
        };
        for col in opts {
            let prev = self.max_used;
            self.max_used = Some(prev.map_or(col, |m| m.max(col)));
            self.assign(v, col);
            if self.run() {
                return true;
            }
            self.unassign(v, col);
            self.max_used = prev;
        }
        false
    }
}

/// Complete backtracking search for a proper `c`-coloring (no
/// monochromatic edge). `NotColorable` is a proof of non-colorability.
pub fn find_coloring(h: &Hypergraph, c: usize) -> ColoringOutcome {
    if h.edges.iter().any(|e| e.len() == 1) || (c == 0 && h.n > 0) {
        return ColoringOutcome::NotColorable { nodes: 0 };
    }
    let mut incident = vec![vec![]; h.n];
    for (i, e) in h.edges.iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut s = Search {
        h,
        c,
        incident,
        color: vec![None; h.n],
        count: vec![vec![0; c]; h.edges.len()],
        max_used: None,
        nodes: 0,
    };
    if s.run() {
        let colors = s.color.iter().map(|x| x.expect("complete assignment")).collect();
        ColoringOutcome::Colorable(Coloring { k: c, colors })
    } else {
        ColoringOutcome::NotColorable { nodes: s.nodes }
    }
}

/// Index of some edge whose vertices all share one color.
pub fn find_monochromatic_edge(h: &Hypergraph, col: &Coloring) -> Option<usize> {
    h.edges.iter().position(|e| {
        e.first().is_some_and(|&f| e.iter().all(|&v| col.colors[v] == col.colors[f]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{build_h2, build_h3, single_edge_hypergraph};

    fn every_coloring(n: usize, c: usize) -> impl Iterator<Item = Coloring> {
        (0..c.pow(n as u32)).map(move |mut x| {
            let mut colors = vec![0; n];
            for slot in colors.iter_mut() {
                *slot = x % c;
                x /= c;
            }
            Coloring { k: c, colors }
        })
    }

    #[test]
    fn triangle_and_k4() {
        let tri = build_h2(2);
        assert!(!find_coloring(&tri, 2).is_colorable());
        assert!(find_coloring(&tri, 3).is_colorable());
        let k4 = build_h3(2);
        assert!(!find_coloring(&k4, 3).is_colorable());
        assert!(every_coloring(4, 3).all(|c| find_monochromatic_edge(&k4, &c).is_some()));
    }

    #[test]
    fn h2_of_3_matches_exhaustive() {
        let h = build_h2(3);
        assert!(!find_coloring(&h, 2).is_colorable());
        assert!(every_coloring(13, 2).all(|c| find_monochromatic_edge(&h, &c).is_some()));
    }

    #[test]
    fn found_colorings_are_proper() {
        let h = build_h2(3);
        match find_coloring(&h, 3) {
            ColoringOutcome::Colorable(c) => {
                assert!(find_monochromatic_edge(&h, &c).is_none());
                assert!(c.colors.iter().all(|&x| x < 3));
            }
            _ => panic!("three colors suffice"),
        }
    }

    #[test]
    fn single_edges() {
        let g1 = single_edge_hypergraph(1);
        for c in 1..5 {
            assert!(!find_coloring(&g1, c).is_colorable());
        }
        let g2 = single_edge_hypergraph(2);
        let proper = Coloring { k: 2, colors: vec![0, 1] };
        assert_eq!(find_monochromatic_edge(&g2, &proper), None);
        let tri = build_h2(2);
        let bad = Coloring { k: 2, colors: vec![0, 0, 1] };
        let e = find_monochromatic_edge(&tri, &bad).unwrap();
        assert_eq!(tri.edges[e], vec![0, 1]);
    }
}
