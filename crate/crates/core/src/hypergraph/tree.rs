use super::HypergraphError;

/// Rooted tree with ordered children. Vertices are `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl RootedTree {
    /// Build from a parent map; children keep increasing id order.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self, HypergraphError> {
        let n = parent.len();
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(HypergraphError::InvalidTree(format!("expected one root, found {}", roots.len())));
        }
        let mut children = vec![vec![]; n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n || p == v {
                    return Err(HypergraphError::InvalidTree(format!("bad parent {p} for vertex {v}")));
                }
                children[p].push(v);
            }
        }
        let t = RootedTree { parent, children, root: roots[0] };
        if t.preorder().len() != n {
            return Err(HypergraphError::InvalidTree("parent map has a cycle".into()));
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// `Q(v)`: the path from the root down to `v`, root first.
    pub fn path_from_root(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// All proper descendants of `v`.
    pub fn descendants(&self, v: usize) -> Vec<usize> {
        let mut out = vec![];
        let mut stack: Vec<usize> = self.children[v].iter().rev().copied().collect();
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u].iter().rev());
        }
        out
    }

    pub fn depth(&self, v: usize) -> usize {
        self.path_from_root(v).len() - 1
    }

    fn preorder(&self) -> Vec<usize> {
        let mut out = vec![];
        let mut stack = vec![self.root];
        let mut seen = vec![false; self.len()];
        while let Some(u) = stack.pop() {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            out.push(u);
            stack.extend(self.children[u].iter().rev());
        }
        out
    }
}

/// Complete `m`-ary tree whose root-to-leaf paths have exactly `m`
/// vertices. Vertex ids follow breadth-first order.
pub fn complete_mary_tree(m: usize) -> RootedTree {
    assert!(m >= 1, "m must be positive");
    let mut parent = vec![None];
    let mut level = vec![0usize];
    for _ in 1..m {
        let mut next = vec![];
        for &p in &level {
            for _ in 0..m {
                next.push(parent.len());
                parent.push(Some(p));
            }
        }
        level = next;
    }
    RootedTree::from_parents(parent).expect("complete tree is well formed")
}

/// Order where every sibling group is consecutive and directly followed
/// by the descendant blocks of those siblings, last sibling's block first.
/// Each block is laid out by the same rule.
pub fn siblings_first_order(t: &RootedTree) -> Vec<usize> {
    fn rest(t: &RootedTree, v: usize, out: &mut Vec<usize>) {
        out.extend_from_slice(t.children(v));
        for &c in t.children(v).iter().rev() {
            rest(t, c, out);
        }
    }
    let mut out = vec![t.root()];
    rest(t, t.root(), &mut out);
    out
}

/// Checks the two defining properties of a siblings-first order.
pub fn is_siblings_first_order(t: &RootedTree, order: &[usize]) -> bool {
    let n = t.len();
    if order.len() != n || order.first() != Some(&t.root()) {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    for v in 0..n {
        let kids = t.children(v);
        if kids.is_empty() {
            continue;
        }
        let start = pos[kids[0]];
        if start <= pos[v] {
            return false;
        }
        // r_1..r_k consecutive, then Des(r_k), ..., Des(r_1), each as one block
        let mut i = start;
        for &r in kids {
            if pos[r] != i {
                return false;
            }
            i += 1;
        }
        for &r in kids.iter().rev() {
            let des = t.descendants(r);
            let mut ps: Vec<usize> = des.iter().map(|&d| pos[d]).collect();
            ps.sort_unstable();
            for (j, p) in ps.iter().enumerate() {
                if *p != i + j {
                    return false;
                }
            }
            i += ps.len();
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_tree_sizes() {
        // geometric series oracle
        for m in 1..=4usize {
            let t = complete_mary_tree(m);
            let want: usize = (0..m as u32).map(|i| m.pow(i)).sum();
            assert_eq!(t.len(), want);
            for v in 0..t.len() {
                if t.is_leaf(v) {
                    assert_eq!(t.path_from_root(v).len(), m);
                } else {
                    assert_eq!(t.children(v).len(), m);
                }
            }
        }
        assert_eq!(complete_mary_tree(3).len(), 13);
        assert_eq!(complete_mary_tree(2).len(), 3);
    }

    #[test]
    fn order_examples() {
        let path = RootedTree::from_parents(vec![None, Some(0), Some(1)]).unwrap();
        assert_eq!(siblings_first_order(&path), vec![0, 1, 2]);

        // root 0 with children x=1, y=2; z=3 under x
        let t = RootedTree::from_parents(vec![None, Some(0), Some(0), Some(1)]).unwrap();
        assert_eq!(siblings_first_order(&t), vec![0, 1, 2, 3]);
        // exhaustive oracle: the validator accepts exactly the orders with both properties
        let perms = permutations(4);
        let valid: Vec<_> = perms.iter().filter(|p| is_siblings_first_order(&t, p)).collect();
        assert_eq!(valid, vec![&vec![0, 1, 2, 3]]);

        let bin = complete_mary_tree(3);
        assert!(is_siblings_first_order(&bin, &siblings_first_order(&bin)));
        let t7 = RootedTree::from_parents(vec![None, Some(0), Some(0), Some(1), Some(1), Some(2), Some(2)]).unwrap();
        let o = siblings_first_order(&t7);
        assert!(is_siblings_first_order(&t7, &o));
        assert_eq!(o, vec![0, 1, 2, 5, 6, 3, 4]);
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn rejects_bad_parents() {
        assert!(RootedTree::from_parents(vec![None, None]).is_err());
        assert!(RootedTree::from_parents(vec![None, Some(2), Some(1)]).is_err());
    }
}
