use std::collections::BTreeSet;
use std::time::Instant;

use diskhyper_core::ranges::{
    delaunay_graph, disk_ranges, grid_oracle_ranges, monochromatic_disk_witness, stabbed_unit_disk_ranges,
    RangeError, RangeFamily,
};
use diskhyper_core::scalar::{int, rat, Rational};
use diskhyper_core::Point;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(x: i64, y: i64) -> Point {
    Point::new(int(x), int(y))
}

fn all_subsets(n: usize) -> BTreeSet<Vec<usize>> {
    (0u32..1 << n).map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect()).collect()
}

// Ranges seen from disks centered on a grid: for each center every strict
// prefix of the points sorted by distance is a disk range.
fn grid_disk_oracle(points: &[Point], lo: i64, hi: i64, steps_per_unit: i64) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    out.insert(vec![]);
    for i in lo * steps_per_unit..=hi * steps_per_unit {
        for j in lo * steps_per_unit..=hi * steps_per_unit {
            let c = Point::new(rat(i, steps_per_unit), rat(j, steps_per_unit));
            let mut d: Vec<(Rational, usize)> = points.iter().enumerate().map(|(k, q)| (q.dist_sq(&c), k)).collect();
            d.sort();
            for k in 1..=d.len() {
                if k == d.len() || d[k - 1].0 < d[k].0 {
                    let mut r: Vec<usize> = d[..k].iter().map(|x| x.1).collect();
                    r.sort_unstable();
                    out.insert(r);
                }
            }
        }
    }
    out
}

fn assert_witnesses(f: &RangeFamily) {
    assert_eq!(f.check_witnesses(), None, "a witness does not reproduce its range");
}

#[test]
fn two_points_give_four_ranges() {
    let f = disk_ranges(&[p(0, 0), p(3, 1)]).unwrap();
    assert_eq!(f.range_set(), all_subsets(2));
    assert_witnesses(&f);
}

#[test]
fn three_points_give_all_subsets() {
    let pts = [p(0, 0), p(4, 0), p(1, 3)];
    let f = disk_ranges(&pts).unwrap();
    assert_eq!(f.range_set(), all_subsets(3));
    assert_eq!(grid_disk_oracle(&pts, -4, 8, 4), all_subsets(3));
    assert_witnesses(&f);
}

#[test]
fn square_excludes_diagonals() {
    // opposite corners have equal power sums, so no disk separates a diagonal
    let pts = [p(0, 0), p(1, 0), p(1, 1), p(0, 1)];
    let f = disk_ranges(&pts).unwrap();
    let mut want = all_subsets(4);
    want.remove(&vec![0, 2]);
    want.remove(&vec![1, 3]);
    assert_eq!(f.range_set(), want);
    assert_witnesses(&f);
    let oracle = grid_disk_oracle(&pts, -3, 4, 8);
    assert!(oracle.is_subset(&f.range_set()));
}

#[test]
fn collinear_ranges_are_intervals() {
    let pts = [p(0, 0), p(2, 0), p(1, 0), p(5, 0)];
    let f = disk_ranges(&pts).unwrap();
    // sorted order along the line: 0, 2, 1, 3
    let order = [0usize, 2, 1, 3];
    let mut want = BTreeSet::new();
    want.insert(vec![]);
    for i in 0..4 {
        for j in i..4 {
            let mut r = order[i..=j].to_vec();
            r.sort_unstable();
            want.insert(r);
        }
    }
    assert_eq!(f.range_set(), want);
    assert_witnesses(&f);
}

#[test]
fn random_disk_ranges_agree_with_grid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..6 {
        let mut pts: Vec<Point> = vec![];
        while pts.len() < 5 {
            let q = p(rng.gen_range(0..6), rng.gen_range(0..6));
            if !pts.contains(&q) {
                pts.push(q);
            }
        }
        let f = disk_ranges(&pts).unwrap();
        assert_witnesses(&f);
        let oracle = grid_disk_oracle(&pts, -6, 12, 4);
        assert!(oracle.is_subset(&f.range_set()), "oracle found a range the enumeration missed");
    }
}

#[test]
fn duplicate_points_are_rejected() {
    assert!(matches!(disk_ranges(&[p(1, 1), p(1, 1)]), Err(RangeError::DegenerateInput(_))));
}

#[test]
fn delaunay_examples() {
    assert_eq!(delaunay_graph(&[p(0, 0), p(4, 0), p(1, 3)]).unwrap().len(), 3);
    assert_eq!(delaunay_graph(&[p(0, 0), p(8, 0), p(0, 8), p(2, 2)]).unwrap().len(), 6);
    assert_eq!(delaunay_graph(&[p(0, 0), p(5, 0), p(6, 4), p(0, 3)]).unwrap().len(), 5);
    assert!(matches!(
        delaunay_graph(&[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]),
        Err(RangeError::DegeneratePosition(_))
    ));
}

#[test]
fn monochromatic_witness_examples() {
    let pts = [p(0, 0), p(8, 0), p(0, 8), p(2, 2)];
    // every pair is a Delaunay edge here, so any repeated color is caught
    let (r, w) = monochromatic_disk_witness(&pts, &[0, 1, 2, 0], 2).unwrap().unwrap();
    assert_eq!(r, vec![0, 3]);
    assert_eq!(w.range_of(&pts), r);
    assert_eq!(monochromatic_disk_witness(&pts, &[0, 1, 2, 3], 2).unwrap(), None);
    assert_eq!(monochromatic_disk_witness(&pts, &[0, 0, 0, 0], 5).unwrap(), None);
}

#[test]
fn stabbed_trivial_instances() {
    let o = Point::origin();
    let far = stabbed_unit_disk_ranges(&[p(3, 0)], &o).unwrap();
    assert_eq!(far.ranges, vec![Vec::<usize>::new()]);
    let near = stabbed_unit_disk_ranges(&[Point::new(rat(1, 2), int(0))], &o).unwrap();
    assert_eq!(near.ranges, vec![vec![], vec![0]]);
    assert_eq!(grid_oracle_ranges(&[], &o, &rat(1, 8)).ranges, vec![Vec::<usize>::new()]);
    assert!(stabbed_unit_disk_ranges(&[o.clone()], &o).is_err());
}

fn random_box_points(rng: &mut ChaCha8Rng, n: usize, half_width: f64) -> Vec<Point> {
    let mut pts: Vec<Point> = vec![];
    let k = (half_width * 1024.0) as i64;
    while pts.len() < n {
        let q = Point::new(rat(rng.gen_range(-k..=k), 1024), rat(rng.gen_range(-k..=k), 1024));
        if !pts.contains(&q) && q != Point::origin() {
            pts.push(q);
        }
    }
    pts
}

#[test]
fn stabbed_matches_grid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let o = Point::origin();
    for round in 0..4 {
        let pts = random_box_points(&mut rng, 8, 1.0);
        let exact = stabbed_unit_disk_ranges(&pts, &o).unwrap();
        assert_witnesses(&exact);
        assert!(exact.witnesses.iter().all(|w| w.contains(&o)), "witness not stabbed");
        let grid = grid_oracle_ranges(&pts, &o, &rat(1, 512));
        assert_witnesses(&grid);
        let (e, g) = (exact.range_set(), grid.range_set());
        assert!(g.is_subset(&e), "round {round}: grid range missing from exact family");
        assert_eq!(e, g, "round {round}: exact family has ranges the grid misses");
    }
}

#[test]
fn coarse_grid_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let o = Point::origin();
    let pts = random_box_points(&mut rng, 10, 1.5);
    let exact = stabbed_unit_disk_ranges(&pts, &o).unwrap().range_set();
    let coarse = grid_oracle_ranges(&pts, &o, &rat(1, 16)).range_set();
    assert!(coarse.is_subset(&exact));
}

#[test]
fn stabbed_hundred_points_timing() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pts = random_box_points(&mut rng, 100, 2.0);
    let t = Instant::now();
    let f = stabbed_unit_disk_ranges(&pts, &Point::origin()).unwrap();
    eprintln!("n=100: {} ranges in {:?}", f.len(), t.elapsed());
    assert_witnesses(&f);
}
