use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use diskhyper_core::clustering::cluster_demo;
use diskhyper_core::construction::{
    certify_tree_realization, realize_h2, realize_h3, BuildOptions, ConstructionError, Realization,
    RealizationKind, DEFAULT_BUDGET_BITS,
};
use diskhyper_core::hypergraph::{build_h2, build_h3, Coloring};
use diskhyper_core::io;
use diskhyper_core::polychromatic::{color_with_family, disk_threshold, verify_with_family};
use diskhyper_core::ranges::{disk_ranges, grid_oracle_ranges, stabbed_unit_disk_ranges, verify_realization, RangeFamily};
use diskhyper_core::scalar::{floor_pow2, format_rational, parse_rational, rat, Rational};
use diskhyper_core::{svg, Circle, Point};

#[derive(Parser)]
#[command(name = "diskhyper", version, about = "Exact disk realizations of hypergraphs and polychromatic colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Tree,
    H2,
    H3,
}

#[derive(Clone, Copy, ValueEnum)]
enum RangeKind {
    Disk,
    Stabbed,
    Grid,
}

#[derive(Subcommand)]
enum Command {
    /// Build a realization, verify it and write it as JSON.
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Closeness parameter, a power of two such as 1/16.
        #[arg(long, default_value = "1/16")]
        gamma: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET_BITS)]
        budget_bits: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recheck a realization file. Exit 0 if it holds, 1 if not, 2 on bad input.
    Verify { file: PathBuf },
    /// Color points so every stabbed unit disk with at least 8k-7 points sees all k colors.
    Color {
        /// Points file; omit and pass --random to generate points instead.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Number of random points in [-2, 2]^2 (dyadic coordinates).
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value = "0,0")]
        origin: String,
        #[arg(long, default_value = "1,0")]
        axis: String,
        /// Also verify against the grid oracle at this resolution.
        #[arg(long)]
        grid_resolution: Option<String>,
        #[arg(long)]
        out: PathBuf,
        /// Where to write the generated points when --random is used.
        #[arg(long)]
        save_points: Option<PathBuf>,
    },
    /// Enumerate the ranges of a point set.
    Ranges {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, value_enum, default_value = "stabbed")]
        kind: RangeKind,
        #[arg(long, default_value = "0,0")]
        origin: String,
        #[arg(long, default_value = "1/512")]
        grid_resolution: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Every 3-coloring of a perturbed realization has a monochromatic Delaunay component.
    ClusterDemo {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value = "1/16")]
        gamma: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET_BITS)]
        budget_bits: u64,
    },
    /// Draw a realization or a point set as SVG.
    Render {
        input: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        origin: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Verification(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, s: &str) -> anyhow::Result<()> {
    fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

fn parse_rat(s: &str) -> anyhow::Result<Rational> {
    parse_rational(s).ok_or_else(|| anyhow!("not a rational number: {s:?}"))
}

fn parse_point(s: &str) -> anyhow::Result<Point> {
    let (x, y) = s.split_once(',').ok_or_else(|| anyhow!("expected x,y but got {s:?}"))?;
    Ok(Point::new(parse_rat(x)?, parse_rat(y)?))
}

fn parse_gamma(s: &str) -> anyhow::Result<Rational> {
    let g = parse_rat(s)?;
    if g <= rat(0, 1) || floor_pow2(&g) != g {
        return Err(anyhow!("gamma must be a power of two at most 1, got {s}"));
    }
    Ok(g)
}

fn construction_failure(e: ConstructionError) -> Failure {
    match e {
        ConstructionError::InvalidInput(_) | ConstructionError::InvalidOrder(_) => Failure::Input(e.into()),
        other => Failure::Verification(other.to_string()),
    }
}

fn stabbed_certificate(r: &Realization) -> Option<bool> {
    matches!(r.kind, RealizationKind::Tree | RealizationKind::H2)
        .then(|| r.disks.iter().all(|d| d.circle.contains(&r.anchor.center)))
}

fn check_realization(r: &Realization) -> Result<(), String> {
    let report = verify_realization(r);
    if !report.is_ok() {
        return Err(format!("{report:?}"));
    }
    if matches!(r.kind, RealizationKind::Tree | RealizationKind::H2) {
        certify_tree_realization(r).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn generate(kind: Kind, m: usize, gamma: &str, budget_bits: u64, out: &Path) -> CmdResult {
    if m == 0 {
        return Err(anyhow!("m must be at least 1").into());
    }
    let gamma = parse_gamma(gamma)?;
    let opts = BuildOptions { budget_bits };
    let r = match kind {
        Kind::Tree => {
            let mut r = realize_h2(m, &gamma, &opts).map_err(construction_failure)?;
            r.kind = RealizationKind::Tree;
            r
        }
        Kind::H2 => realize_h2(m, &gamma, &opts).map_err(construction_failure)?,
        Kind::H3 => realize_h3(m, &gamma, &opts).map_err(construction_failure)?,
    };
    let expected = match kind {
        Kind::Tree => None,
        Kind::H2 => Some(build_h2(m)),
        Kind::H3 => Some(build_h3(m)),
    };
    if let Some(h) = expected {
        if !r.target.same_edges(&h) {
            return Err(Failure::Verification("target differs from the combinatorial construction".into()));
        }
    }
    check_realization(&r).map_err(Failure::Verification)?;
    write(out, &io::realization_to_json(&r))?;
    println!("kind: {:?}", r.kind);
    println!("points: {}", r.points.len());
    println!("disks: {}", r.disks.len());
    println!("max coordinate bits: {} (budget {budget_bits})", r.max_bits());
    match stabbed_certificate(&r) {
        Some(true) => println!("stabbed: anchor center inside every disk"),
        Some(false) => println!("stabbed: NO"),
        None => println!("stabbed: not applicable"),
    }
    println!("verify: Ok");
    Ok(())
}

fn verify(file: &Path) -> CmdResult {
    let text = read(file)?;
    let r = io::realization_from_json(&text).map_err(|e| Failure::Input(e.into()))?;
    match check_realization(&r) {
        Ok(()) => {
            println!("verify: Ok ({} points, {} disks)", r.points.len(), r.disks.len());
            if let Some(s) = stabbed_certificate(&r) {
                println!("stabbed: {s}");
            }
            Ok(())
        }
        Err(msg) => Err(Failure::Verification(msg)),
    }
}

fn random_points(n: usize, seed: u64, o: &Point) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let q = Point::new(rat(rng.gen_range(-512..=512), 256), rat(rng.gen_range(-512..=512), 256));
        if q != *o && !pts.contains(&q) {
            pts.push(q);
        }
    }
    pts
}

fn family_json(f: &RangeFamily, k: usize, c: &Coloring, o: &Point, threshold: usize) -> Result<serde_json::Value, Failure> {
    let v = verify_with_family(f, o, k, c, threshold).map_err(|e| Failure::Input(e.into()))?;
    let checked = f.ranges.iter().filter(|r| r.len() >= threshold).count();
    Ok(json!({
        "threshold": threshold,
        "ranges": f.len(),
        "ranges_checked": checked,
        "violations": v.iter().map(|x| json!({"range": x.range, "missing_colors": x.missing_colors})).collect::<Vec<_>>(),
    }))
}

#[allow(clippy::too_many_arguments)]
fn color(
    points: Option<&Path>,
    random: Option<usize>,
    seed: u64,
    k: usize,
    origin: &str,
    axis: &str,
    grid: Option<&str>,
    out: &Path,
    save_points: Option<&Path>,
) -> CmdResult {
    let o = parse_point(origin)?;
    let axis = parse_point(axis)?;
    let pts = match (points, random) {
        (Some(p), None) => io::points_from_json(&read(p)?).map_err(|e| Failure::Input(e.into()))?,
        (None, Some(n)) => random_points(n, seed, &o),
        _ => return Err(anyhow!("give exactly one of --points and --random").into()),
    };
    if let Some(p) = save_points {
        write(p, &io::points_to_json(&pts))?;
    }
    let family = stabbed_unit_disk_ranges(&pts, &o).map_err(|e| Failure::Input(e.into()))?;
    let c = color_with_family(&pts, &o, &axis, k, &family).map_err(|e| Failure::Input(e.into()))?;
    let threshold = disk_threshold(k);
    let cert = family_json(&family, k, &c, &o, threshold)?;
    let clean = cert["violations"].as_array().is_some_and(|v| v.is_empty());
    let mut doc = json!({"k": c.k, "colors": c.colors, "certificate": cert});
    let mut agree = true;
    if let Some(res) = grid {
        let res = parse_rat(res)?;
        let gf = grid_oracle_ranges(&pts, &o, &res);
        let gcert = family_json(&gf, k, &c, &o, threshold)?;
        let gclean = gcert["violations"].as_array().is_some_and(|v| v.is_empty());
        agree = gclean == clean;
        println!("grid oracle at {}: {} ranges, verdict {}", format_rational(&res), gf.len(), if gclean { "clean" } else { "violations" });
        doc["grid_certificate"] = gcert;
    }
    write(out, &serde_json::to_string_pretty(&doc).expect("serializable"))?;
    println!("points: {}, k: {k}, threshold: {threshold}, ranges: {}", pts.len(), family.len());
    if !clean {
        return Err(Failure::Verification("coloring has violations".into()));
    }
    if !agree {
        return Err(Failure::Verification("grid oracle verdict differs".into()));
    }
    println!("certificate: no violations");
    Ok(())
}

fn ranges(points: &Path, kind: RangeKind, origin: &str, grid: &str, out: &Path) -> CmdResult {
    let pts = io::points_from_json(&read(points)?).map_err(|e| Failure::Input(e.into()))?;
    let o = parse_point(origin)?;
    let fam = match kind {
        RangeKind::Disk => disk_ranges(&pts).map_err(|e| Failure::Input(e.into()))?,
        RangeKind::Stabbed => stabbed_unit_disk_ranges(&pts, &o).map_err(|e| Failure::Input(e.into()))?,
        RangeKind::Grid => grid_oracle_ranges(&pts, &o, &parse_rat(grid)?),
    };
    if let Some(i) = fam.check_witnesses() {
        return Err(Failure::Verification(format!("witness {i} does not reproduce its range")));
    }
    write(out, &io::range_family_to_json(&fam))?;
    println!("ranges: {}", fam.len());
    Ok(())
}

fn cluster(m: usize, gamma: &str, seed: u64, budget_bits: u64) -> CmdResult {
    let gamma = parse_gamma(gamma)?;
    let rep = cluster_demo(m, &gamma, seed, &BuildOptions { budget_bits }).map_err(|e| Failure::Verification(e.to_string()))?;
    println!("points: {}", rep.points.len());
    for (i, p) in rep.points.iter().enumerate() {
        println!("  p{i} = ({}, {})", format_rational(&p.x), format_rational(&p.y));
    }
    println!("delaunay edges: {:?}", rep.edges);
    println!("planar edge count: {}", if rep.planar_edge_count { "ok" } else { "VIOLATED" });
    let found = rep.checks.iter().filter(|c| c.component.is_some()).count();
    println!("colorings with a monochromatic component of size >= {m}: {found}/{}", rep.checks.len());
    for c in rep.checks.iter().filter(|c| c.component.is_none()) {
        println!("  none for coloring {:?}", c.colors);
    }
    if rep.all_colorings_have_component() && rep.planar_edge_count {
        Ok(())
    } else {
        Err(Failure::Verification("some coloring has no monochromatic component".into()))
    }
}

fn render(input: &Path, coloring: Option<&Path>, origin: Option<&str>, out: &Path) -> CmdResult {
    let text = read(input)?;
    let mut scene = match io::realization_from_json(&text) {
        Ok(r) => svg::Scene {
            circles: r.disks.iter().map(|d| d.circle.clone()).collect::<Vec<Circle>>(),
            anchor: Some(r.anchor.clone()),
            points: r.points,
            ..Default::default()
        },
        Err(_) => {
            let pts = io::points_from_json(&text).map_err(|e| Failure::Input(anyhow!("{}: {e}", input.display())))?;
            svg::Scene { points: pts, ..Default::default() }
        }
    };
    if let Some(c) = coloring {
        let v: serde_json::Value = serde_json::from_str(&read(c)?).map_err(|e| Failure::Input(e.into()))?;
        let colors: Vec<usize> = serde_json::from_value(v["colors"].clone()).map_err(|e| Failure::Input(e.into()))?;
        if colors.len() != scene.points.len() {
            return Err(anyhow!("coloring has {} entries for {} points", colors.len(), scene.points.len()).into());
        }
        scene.colors = Some(colors);
    }
    if let Some(o) = origin {
        scene.origin = Some(parse_point(o)?);
    }
    write(out, &svg::render(&scene))?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Generate { kind, m, gamma, budget_bits, out } => generate(kind, m, &gamma, budget_bits, &out),
        Command::Verify { file } => verify(&file),
        Command::Color { points, random, seed, k, origin, axis, grid_resolution, out, save_points } => color(
            points.as_deref(),
            random,
            seed,
            k,
            &origin,
            &axis,
            grid_resolution.as_deref(),
            &out,
            save_points.as_deref(),
        ),
        Command::Ranges { points, kind, origin, grid_resolution, out } => {
            ranges(&points, kind, &origin, &grid_resolution, &out)
        }
        Command::ClusterDemo { m, gamma, seed, budget_bits } => cluster(m, &gamma, seed, budget_bits),
        Command::Render { input, coloring, origin, out } => render(&input, coloring.as_deref(), origin.as_deref(), &out),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
