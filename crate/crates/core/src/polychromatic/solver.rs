use crate::hypergraph::Coloring;

use super::PolychromaticError;

/// Finds a `k`-coloring of `ground` in which every set of `system` with at
/// least `threshold` elements sees all `k` colors. Returned colors are
/// aligned with `ground`.
pub trait PolychromaticSolver {
    fn solve(&self, ground: &[usize], system: &[Vec<usize>], k: usize, threshold: usize) -> Option<Vec<usize>>;
}

/// Complete backtracking with forward checking and color-symmetry breaking.
#[derive(Clone, Copy, Debug, Default)]
pub struct BacktrackingSolver;

struct Search {
    k: usize,
    member_of: Vec<Vec<usize>>,
    order: Vec<usize>,
    color: Vec<Option<usize>>,
    cnt: Vec<Vec<usize>>,
    free: Vec<usize>,
    missing: Vec<usize>,
}

impl Search {
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = Some(c);
        let mut ok = true;
        for &s in &self.member_of[v] {
            self.free[s] -= 1;
            if self.cnt[s][c] == 0 {
                self.missing[s] -= 1;
            }
            self.cnt[s][c] += 1;
            ok &= self.missing[s] <= self.free[s];
        }
        ok
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = None;
        for &s in &self.member_of[v] {
            self.free[s] += 1;
            self.cnt[s][c] -= 1;
            if self.cnt[s][c] == 0 {
                self.missing[s] += 1;
            }
        }
    }

    fn run(&mut self, depth: usize, used: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let limit = (used + 1).min(self.k);
        let mut cands: Vec<(usize, usize)> = (0..limit)
            .map(|c| (self.member_of[v].iter().filter(|&&s| self.cnt[s][c] == 0).count(), c))
            .collect();
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, c) in cands {
            if self.assign(v, c) && self.run(depth + 1, used.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }
}

impl PolychromaticSolver for BacktrackingSolver {
    fn solve(&self, ground: &[usize], system: &[Vec<usize>], k: usize, threshold: usize) -> Option<Vec<usize>> {
        let n = ground.len();
        let local: std::collections::HashMap<usize, usize> = ground.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut sets: Vec<Vec<usize>> = system
            .iter()
            .filter(|s| s.len() >= threshold.max(1))
            .map(|s| {
                let mut l: Vec<usize> = s.iter().map(|g| *local.get(g).expect("set element outside the ground set")).collect();
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        sets.sort();
        sets.dedup();
        if sets.iter().any(|s| s.len() < k) {
            return None;
        }
        let mut member_of = vec![vec![]; n];
        for (i, s) in sets.iter().enumerate() {
            for &v in s {
                member_of[v].push(i);
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| member_of[b].len().cmp(&member_of[a].len()).then(a.cmp(&b)));
        let m = sets.len();
        let mut search = Search {
            k,
            free: sets.iter().map(|s| s.len()).collect(),
            missing: vec![k; m],
            cnt: vec![vec![0; k]; m],
            member_of,
            order,
            color: vec![None; n],
        };
        if !search.run(0, 0) {
            return None;
        }
        Some(search.color.into_iter().map(|c| c.expect("all assigned")).collect())
    }
}

pub fn polychromatic_color(
    ground: &[usize],
    system: &[Vec<usize>],
    k: usize,
    threshold: usize,
) -> Result<Coloring, PolychromaticError> {
    if k == 0 {
        return Err(PolychromaticError::InvalidK);
    }
    BacktrackingSolver
        .solve(ground, system, k, threshold)
        .map(|colors| Coloring { k, colors })
        .ok_or(PolychromaticError::NoColoringFound)
}
