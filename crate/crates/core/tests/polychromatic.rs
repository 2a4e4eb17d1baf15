use std::time::Instant;

use diskhyper_core::hypergraph::Coloring;
use diskhyper_core::polychromatic::{
    color_stabbed_unit_disks, color_with_family, disk_threshold, polychromatic_color, quarter_crossing_count,
    quarter_partition, quarter_traces, standard_axis, verify_polychromatic, verify_with_family, PolychromaticError,
};
use diskhyper_core::ranges::{stabbed_unit_disk_ranges, RangeFamily};
use diskhyper_core::scalar::{int, rat};
use diskhyper_core::{Circle, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pt(x: i64, y: i64) -> Point {
    Point::new(int(x), int(y))
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, half_width: i64) -> Vec<Point> {
    let k = half_width * 256;
    let mut pts: Vec<Point> = vec![];
    while pts.len() < n {
        let q = Point::new(rat(rng.gen_range(-k..=k), 256), rat(rng.gen_range(-k..=k), 256));
        if !pts.contains(&q) && q != Point::origin() {
            pts.push(q);
        }
    }
    pts
}

#[test]
fn one_point_per_open_quadrant() {
    let pts = [pt(1, 1), pt(-1, 1), pt(-1, -1), pt(1, -1)];
    let d = quarter_partition(&pts, &Point::origin(), &standard_axis()).unwrap();
    assert_eq!(d.parts, [vec![0], vec![1], vec![2], vec![3]]);
}

#[test]
fn boundary_points_go_to_the_quarter_starting_there() {
    let pts = [pt(2, 0), pt(0, 2), pt(-2, 0), pt(0, -2)];
    let d = quarter_partition(&pts, &Point::origin(), &standard_axis()).unwrap();
    assert_eq!(d.quarter_of, vec![0, 1, 2, 3]);
    // a rotated axis moves the boundary rays with it
    let d = quarter_partition(&[pt(1, 1)], &Point::origin(), &pt(1, 1)).unwrap();
    assert_eq!(d.quarter_of, vec![0]);
    assert!(matches!(
        quarter_partition(&[pt(0, 0)], &Point::origin(), &standard_axis()),
        Err(PolychromaticError::OriginInPointSet(0))
    ));
}

#[test]
fn random_partition_matches_angles() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pts = random_points(&mut rng, 100, 2);
    let o = Point::new(rat(1, 3), rat(-1, 7));
    let d = quarter_partition(&pts, &o, &standard_axis()).unwrap();
    let mut all: Vec<usize> = d.parts.iter().flatten().copied().collect();
    all.sort_unstable();
    assert_eq!(all, (0..100).collect::<Vec<_>>());
    for (i, p) in pts.iter().enumerate() {
        let dx = diskhyper_core::scalar::rational_to_f64(&(&p.x - &o.x));
        let dy = diskhyper_core::scalar::rational_to_f64(&(&p.y - &o.y));
        let ang = dy.atan2(dx).rem_euclid(std::f64::consts::TAU);
        let q = (ang / std::f64::consts::FRAC_PI_2).floor() as usize;
        assert_eq!(d.quarter_of[i], q.min(3), "point {i}");
    }
}

#[test]
fn traces_of_the_empty_family() {
    let pts = [pt(1, 1), pt(-1, -1)];
    let d = quarter_partition(&pts, &Point::origin(), &standard_axis()).unwrap();
    let fam = RangeFamily { points: pts.to_vec(), ranges: vec![vec![]], witnesses: vec![] };
    let t = quarter_traces(&d, &fam);
    for q in &t {
        assert_eq!(q, &vec![Vec::<usize>::new()]);
    }
    let fam = RangeFamily { points: pts.to_vec(), ranges: vec![vec![0, 1]], witnesses: vec![] };
    let t = quarter_traces(&d, &fam);
    assert_eq!(t[0], vec![vec![0]]);
    assert_eq!(t[2], vec![vec![1]]);
}

#[test]
fn small_colorings() {
    let c = polychromatic_color(&[3, 5, 9], &[vec![3, 5, 9]], 1, 1).unwrap();
    assert_eq!(c.colors, vec![0, 0, 0]);
    let c = polychromatic_color(&[3, 5, 9], &[vec![3, 5, 9]], 2, 3).unwrap();
    assert!(c.colors.contains(&0) && c.colors.contains(&1));
    assert_eq!(
        polychromatic_color(&[0, 1], &[vec![0, 1]], 3, 2),
        Err(PolychromaticError::NoColoringFound)
    );
}

#[test]
fn random_quarter_trace_is_colored() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pts = random_points(&mut rng, 80, 2);
    let o = Point::origin();
    let fam = stabbed_unit_disk_ranges(&pts, &o).unwrap();
    let d = quarter_partition(&pts, &o, &standard_axis()).unwrap();
    let traces = quarter_traces(&d, &fam);
    let (q, part) = d.parts.iter().enumerate().max_by_key(|(_, p)| p.len()).unwrap();
    let c = polychromatic_color(part, &traces[q], 3, 5).unwrap();
    assert!(c.colors.iter().all(|&x| x < 3));
    let color_of = |g: usize| c.colors[part.iter().position(|&x| x == g).unwrap()];
    for s in traces[q].iter().filter(|s| s.len() >= 5) {
        let mut seen = [false; 3];
        for &g in s {
            seen[color_of(g)] = true;
        }
        assert!(seen.iter().all(|&b| b), "trace {s:?} misses a color");
    }
}

#[test]
fn end_to_end_k2_on_hundred_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pts = random_points(&mut rng, 100, 2);
    let o = Point::origin();
    let t = Instant::now();
    let c = color_stabbed_unit_disks(&pts, &o, 2).unwrap();
    let v = verify_polychromatic(&pts, &o, 2, &c, disk_threshold(2)).unwrap();
    eprintln!("k=2 color+verify in {:?}", t.elapsed());
    assert!(v.is_empty());
    assert_eq!(disk_threshold(2), 9);
}

#[test]
fn monochromatic_coloring_is_reported() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pts = random_points(&mut rng, 40, 1);
    let o = Point::origin();
    let fam = stabbed_unit_disk_ranges(&pts, &o).unwrap();
    let c = Coloring { k: 2, colors: vec![0; 40] };
    let v = verify_with_family(&fam, &o, 2, &c, 9).unwrap();
    assert!(!v.is_empty());
    assert!(v.iter().all(|x| x.range.len() >= 9 && x.missing_colors == vec![1]));
    assert!(verify_with_family(&fam, &o, 2, &c, 41).unwrap().is_empty());
    let good = color_with_family(&pts, &o, &standard_axis(), 2, &fam).unwrap();
    assert!(verify_with_family(&fam, &o, 2, &good, 9).unwrap().is_empty());
}

fn unit_circle_at(c: Point) -> Circle {
    let b = Point::new(&c.x + &int(1), c.y.clone());
    Circle::new(c, int(1), b).unwrap()
}

#[test]
fn crossing_counts() {
    let d = quarter_partition(&[], &Point::origin(), &standard_axis()).unwrap();
    let a = unit_circle_at(Point::new(rat(1, 2), int(0)));
    let b = unit_circle_at(Point::new(rat(-1, 2), rat(1, 4)));
    let counts = quarter_crossing_count(&a, &b, &d).unwrap();
    assert_eq!(counts.iter().sum::<usize>(), 2);
    assert!(counts.iter().all(|&c| c <= 1));
    let big = Circle::new(Point::origin(), int(1), pt(1, 0)).unwrap();
    let small = Circle::new(Point::new(rat(1, 2), int(0)), rat(1, 4), pt(1, 0)).unwrap();
    assert_eq!(quarter_crossing_count(&big, &small, &d).unwrap(), [1, 0, 0, 0]);
    assert_eq!(quarter_crossing_count(&a, &a, &d), Err(PolychromaticError::IdenticalCircles));
}
