use log::{debug, info};
use num_traits::{One, Signed};

use crate::hypergraph::{siblings_first_order, tree_hypergraph, RootedTree};
use crate::kernel::{
    arc_order, certify_lemma, circles_close, gap_lower_bound, lemma_step, perturbation_radius,
    point_on_arc_between, side_of_circle, ArcOrder, Side,
};
use crate::scalar::{floor_pow2, int, Rational};
use crate::{Circle, Point};

use super::realization::{DiskRole, Realization, RealizationKind, RealizedDisk};
use super::state::{AuditOp, ConstructionState};
use super::{BuildOptions, ConstructionError};

/// Smallest gap over all (point, disk) pairs, skipping points on the disk.
fn min_gap_off_boundary(points: &[Point], disks: &[&Circle]) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    for d in disks {
        for p in points {
            if side_of_circle(p, d) == Side::On {
                continue;
            }
            let g = gap_lower_bound(p, &d.center, &d.radius_sq);
            if best.as_ref().is_none_or(|b| g < *b) {
                best = Some(g);
            }
        }
    }
    best
}

// Move `p` toward `center` by a dyadic fraction `t` of the way with
// |t (center - p)| < bound.
fn step_toward(p: &Point, center: &Point, bound: &Rational) -> Point {
    let d = center - p;
    let dd = d.norm_sq();
    let mut t = Rational::one();
    while &t * &t * &dd >= bound * bound {
        t /= int(2);
    }
    p + &d.scale(&t)
}

/// Rational points `a`, `c` on `host` flanking the run `group` (vertices
/// whose points lie on `host`), both outside every other built disk.
pub fn choose_arc_anchors(
    state: &ConstructionState,
    host: &Circle,
    group: &[usize],
) -> Result<(Point, Point), ConstructionError> {
    let first = &state.pos[group[0]];
    let last = &state.pos[group[group.len() - 1]];
    let others: Vec<&Circle> = state.built_disks().map(|(_, d)| d).filter(|d| !d.same_disk(host)).collect();
    let mut on_host: Vec<usize> = (0..state.tree.len())
        .filter(|&v| !state.fixed[v] && host.is_on(&state.pos[v]))
        .collect();
    on_host.sort_by(|&u, &v| {
        match arc_order(host, first, &state.pos[u], &state.pos[v]).expect("points lie on the host") {
            ArcOrder::PBeforeQ => std::cmp::Ordering::Less,
            ArcOrder::QBeforeP => std::cmp::Ordering::Greater,
            ArcOrder::Equal => std::cmp::Ordering::Equal,
        }
    });
    if on_host.len() < group.len() || on_host[..group.len()] != *group {
        return Err(ConstructionError::InvariantViolation {
            step: None,
            detail: "group is not a contiguous run on its host".into(),
        });
    }
    let free = |x: &Point| others.iter().all(|d| side_of_circle(x, d) == Side::Outside);
    let prev = if on_host.len() > group.len() { state.pos[*on_host.last().unwrap()].clone() } else { last.clone() };

    let mut a = point_on_arc_between(host, &prev, first)?;
    let mut tries = 0;
    while !free(&a) {
        tries += 1;
        if tries > 256 {
            return Err(ConstructionError::NoFreeArc);
        }
        a = point_on_arc_between(host, &a, first)?;
    }
    let next = if on_host.len() > group.len() { state.pos[on_host[group.len()]].clone() } else { a.clone() };
    let mut c = point_on_arc_between(host, last, &next)?;
    tries = 0;
    while !free(&c) {
        tries += 1;
        if tries > 256 {
            return Err(ConstructionError::NoFreeArc);
        }
        c = point_on_arc_between(host, last, &c)?;
    }
    Ok((a, c))
}

fn check_inputs(c: &Circle, qs: &[Point], gamma: &Rational, n: usize) -> Result<(), ConstructionError> {
    if qs.len() != n {
        return Err(ConstructionError::InvalidInput(format!("expected {n} points, got {}", qs.len())));
    }
    if !gamma.is_positive() || int(16) * gamma * gamma >= c.radius_sq {
        return Err(ConstructionError::InvalidInput("gamma must satisfy 0 < gamma < radius/4".into()));
    }
    if qs.iter().any(|q| !c.is_on(q)) {
        return Err(ConstructionError::InvalidInput("prescribed points must lie on the anchor circle".into()));
    }
    for i in 1..n {
        if qs[i] == qs[0] {
            return Err(ConstructionError::InvalidOrder("prescribed points must be distinct".into()));
        }
        if i + 1 < n && arc_order(c, &qs[0], &qs[i], &qs[i + 1])? != ArcOrder::PBeforeQ {
            return Err(ConstructionError::InvalidOrder(
                "prescribed points must be counterclockwise in siblings-first order".into(),
            ));
        }
    }
    Ok(())
}

fn budget_check(state: &ConstructionState, opts: &BuildOptions, step: usize) -> Result<(), ConstructionError> {
    let bits = state.max_bits();
    info!("step {step}: max coordinate bit size {bits}, delta 2^{}", crate::scalar::log2_floor(&state.delta));
    if bits > opts.budget_bits {
        return Err(ConstructionError::PrecisionBudgetExceeded { bits, budget: opts.budget_bits });
    }
    Ok(())
}

/// Realize the tree hypergraph of `t` with points `gamma`-close to `qs`
/// and disks `gamma`-close to `c`, all containing the center of `c`.
///
/// `qs[i]` is the prescribed point of the `i`-th vertex in
/// [`siblings_first_order`]; the points must lie on `c` in
/// counterclockwise order.
pub fn realize_tree(
    t: &RootedTree,
    c: &Circle,
    qs: &[Point],
    gamma: &Rational,
    extended: bool,
    opts: &BuildOptions,
) -> Result<Realization, ConstructionError> {
    realize_tree_logged(t, c, qs, gamma, extended, opts).map(|(r, _)| r)
}

/// [`realize_tree`] that also returns the audit log of the run.
pub fn realize_tree_logged(
    t: &RootedTree,
    c: &Circle,
    qs: &[Point],
    gamma: &Rational,
    extended: bool,
    opts: &BuildOptions,
) -> Result<(Realization, Vec<AuditOp>), ConstructionError> {
    let n = t.len();
    check_inputs(c, qs, gamma, n)?;
    let order = siblings_first_order(t);
    let mut pos_in_order = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos_in_order[v] = i;
    }
    let mut by_vertex = vec![qs[0].clone(); n];
    for (i, &v) in order.iter().enumerate() {
        by_vertex[v] = qs[i].clone();
    }

    // sibling disks straight from the anchor circle
    let half_gamma = gamma / int(2);
    let mut sibling = vec![None; n];
    for v in (0..n).filter(|&v| !t.is_leaf(v)) {
        let kids = t.children(v);
        let start = pos_in_order[kids[0]];
        let end = start + kids.len();
        let prev = &qs[start - 1];
        let next = &qs[end % n];
        let a = point_on_arc_between(c, prev, &qs[start])?;
        let cc = point_on_arc_between(c, &qs[end - 1], next)?;
        let step = lemma_step(c, &a, &qs[start..end], &cc, &half_gamma)?;
        let inside: Vec<usize> = (0..n).filter(|&u| step.circle.contains(&by_vertex[u])).collect();
        let mut want = kids.to_vec();
        want.sort_unstable();
        if inside != want || qs.iter().any(|q| step.circle.is_on(q)) {
            return Err(ConstructionError::InvariantViolation {
                step: None,
                detail: format!("sibling disk of vertex {v} does not isolate its children"),
            });
        }
        sibling[v] = Some(step.circle);
    }
    let sib_circles: Vec<Circle> = sibling.iter().flatten().cloned().collect();
    let eps_sib = perturbation_radius(qs, &sib_circles)?;
    let nn = int((n * n) as i64);
    let delta0 = floor_pow2(&(gamma.min(&eps_sib).clone() / nn));
    debug!("sibling disks built, eps_sib {eps_sib}, delta0 {delta0}");

    let mut state = ConstructionState::new(t.clone(), by_vertex.clone(), delta0);
    let root = t.root();
    state.add_disk(root, c.clone(), c)?;
    let delta = state.delta.clone();
    let moved = step_toward(&state.pos[root], &c.center, &delta);
    state.move_point(root, moved)?;
    state.fixed[root] = true;
    state.assert_state(0)?;
    budget_check(&state, opts, 0)?;

    for (k, &v) in order.iter().enumerate() {
        if t.is_leaf(v) {
            continue;
        }
        let kids = t.children(v).to_vec();
        let des_sizes: Vec<usize> = kids.iter().map(|&r| t.descendants(r).len()).collect();
        let block_start = pos_in_order[kids[0]];
        for i in 0..kids.len() {
            let end = block_start + kids.len() + des_sizes[i..].iter().sum::<usize>();
            let group: Vec<usize> = order[pos_in_order[kids[i]]..end].to_vec();
            let host = if i == 0 { state.disks[v].clone() } else { state.disks[kids[i - 1]].clone() }
                .expect("host disk exists");

            let disks: Vec<&Circle> = state.built_disks().map(|(_, d)| d).collect();
            if let Some(g) = min_gap_off_boundary(&state.pos, &disks) {
                let cand = floor_pow2(&(g / int(4)));
                if cand < state.delta {
                    state.decrease_delta(cand);
                }
            }
            let (a, cc) = choose_arc_anchors(&state, &host, &group)?;
            let bs: Vec<Point> = group.iter().map(|&u| state.pos[u].clone()).collect();
            let expected_inside: Vec<usize> = t.path_from_root(v);

            let mut attempts = 0;
            let (circle, new_pos) = loop {
                attempts += 1;
                if attempts > 64 {
                    return Err(ConstructionError::InvariantViolation {
                        step: Some(k),
                        detail: format!("could not certify disk for vertex {}", kids[i]),
                    });
                }
                let step = lemma_step(&host, &a, &bs, &cc, &state.delta)?;
                certify_lemma(&host, &a, &bs, &cc, &state.delta, &step).map_err(|detail| {
                    ConstructionError::InvariantViolation { step: Some(k), detail }
                })?;
                if certify_new_disk(&state, &step.circle, &group, &step.moved, &expected_inside) {
                    break (step.circle, step.moved);
                }
                let smaller = &state.delta / int(2);
                state.decrease_delta(smaller);
            };
            state.add_disk(kids[i], circle, &host)?;
            for (u, p) in group.iter().zip(new_pos) {
                state.move_point(*u, p)?;
            }
        }
        for &r in &kids {
            let d = state.disks[r].clone().expect("disk was just built");
            let others: Vec<Circle> =
                state.built_disks().filter(|&(w, _)| w != r).map(|(_, c)| c.clone()).collect();
            let bound = perturbation_radius(std::slice::from_ref(&state.pos[r]), &others)?;
            let bound = bound.min(state.delta.clone());
            let to = step_toward(&state.pos[r], &d.center, &bound);
            state.move_point(r, to)?;
            state.fixed[r] = true;
        }
        state.assert_state(k)?;
        budget_check(&state, opts, k)?;
    }

    let realization = assemble(t, c, qs, gamma, extended, &state, &sibling)?;
    Ok((realization, state.log))
}

/// The new disk must contain exactly the fixed vertices of `expected`,
/// touch exactly the moved run, and leave each moved point outside every
/// other disk.
fn certify_new_disk(
    state: &ConstructionState,
    disk: &Circle,
    group: &[usize],
    moved: &[Point],
    expected: &[usize],
) -> bool {
    for u in 0..state.tree.len() {
        let p = match group.iter().position(|&g| g == u) {
            Some(i) => &moved[i],
            None => &state.pos[u],
        };
        let side = side_of_circle(p, disk);
        let want = if group.contains(&u) {
            Side::On
        } else if state.fixed[u] && expected.contains(&u) {
            Side::Inside
        } else {
            Side::Outside
        };
        if side != want {
            return false;
        }
    }
    moved.iter().all(|p| state.built_disks().all(|(_, d)| side_of_circle(p, d) == Side::Outside))
}

fn assemble(
    t: &RootedTree,
    c: &Circle,
    qs: &[Point],
    gamma: &Rational,
    extended: bool,
    state: &ConstructionState,
    sibling: &[Option<Circle>],
) -> Result<Realization, ConstructionError> {
    let n = t.len();
    let target = tree_hypergraph(t, extended);
    let mut disks = vec![];
    for v in (0..n).filter(|&v| !t.is_leaf(v)) {
        let circle = sibling[v].clone().expect("internal vertices have sibling disks");
        let mut edge = t.children(v).to_vec();
        edge.sort_unstable();
        disks.push(RealizedDisk { circle, edge, role: DiskRole::Sibling, exposed: None });
    }
    for v in (0..n).filter(|&v| extended || t.is_leaf(v)) {
        let circle = state.disks[v].clone().expect("every vertex has its disk");
        let mut edge = t.path_from_root(v);
        edge.sort_unstable();
        disks.push(RealizedDisk { circle, edge, role: DiskRole::Descendent, exposed: None });
    }
    let order = siblings_first_order(t);
    let mut prescribed = vec![qs[0].clone(); n];
    for (i, &v) in order.iter().enumerate() {
        prescribed[v] = qs[i].clone();
    }
    let r = Realization {
        kind: RealizationKind::Tree,
        points: state.pos.clone(),
        prescribed,
        disks,
        anchor: c.clone(),
        gamma: gamma.clone(),
        target,
    };
    certify_tree_realization(&r)?;
    Ok(r)
}

/// Induced hypergraph, closeness to the prescribed points and the anchor
/// circle, and stabbedness by the anchor center.
pub fn certify_tree_realization(r: &Realization) -> Result<(), ConstructionError> {
    let report = crate::ranges::verify_realization(r);
    if !report.is_ok() {
        return Err(ConstructionError::VerificationFailed(format!("{report:?}")));
    }
    for (i, (p, q)) in r.points.iter().zip(&r.prescribed).enumerate() {
        if !p.within(q, &r.gamma) {
            return Err(ConstructionError::VerificationFailed(format!("point {i} is not gamma-close")));
        }
    }
    for (j, d) in r.disks.iter().enumerate() {
        if !circles_close(&d.circle, &r.anchor, &r.gamma) {
            return Err(ConstructionError::VerificationFailed(format!("disk {j} is not gamma-close")));
        }
        if !d.circle.contains(&r.anchor.center) {
            return Err(ConstructionError::VerificationFailed(format!("disk {j} misses the anchor center")));
        }
    }
    Ok(())
}
