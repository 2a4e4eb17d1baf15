//! Deterministic SVG 1.1 figures. Exact coordinates are rounded to twelve
//! significant digits for display only.

use std::fmt::Write;

use crate::scalar::rational_to_f64;
use crate::{Circle, Point};

#[derive(Clone, Debug, Default)]
pub struct Scene {
    pub points: Vec<Point>,
    /// Color class per point, if the points are colored.
    pub colors: Option<Vec<usize>>,
    pub circles: Vec<Circle>,
    pub anchor: Option<Circle>,
    pub origin: Option<Point>,
}

const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

/// `v` with at most twelve significant digits, without exponent notation.
pub fn fmt12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{v:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn pf(p: &Point) -> (f64, f64) {
    (rational_to_f64(&p.x), rational_to_f64(&p.y))
}

pub fn render(scene: &Scene) -> String {
    let mut xs = vec![];
    let mut ys = vec![];
    let mut circle_f = |c: &Circle| {
        let (x, y) = pf(&c.center);
        let r = rational_to_f64(&c.radius_sq).sqrt();
        xs.extend([x - r, x + r]);
        ys.extend([y - r, y + r]);
        (x, y, r)
    };
    let circles: Vec<(f64, f64, f64)> = scene.circles.iter().map(&mut circle_f).collect();
    let anchor = scene.anchor.as_ref().map(&mut circle_f);
    let pts: Vec<(f64, f64)> = scene.points.iter().chain(scene.origin.iter()).map(pf).collect();
    for &(x, y) in &pts {
        xs.push(x);
        ys.push(y);
    }
    let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
    let (mut x0, mut x1) = (fold(&xs, f64::min, f64::INFINITY), fold(&xs, f64::max, f64::NEG_INFINITY));
    let (mut y0, mut y1) = (fold(&ys, f64::min, f64::INFINITY), fold(&ys, f64::max, f64::NEG_INFINITY));
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let margin = 0.05 * span;
    let (w, h) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let stroke = span / 400.0;
    let dot = span / 120.0;

    let mut s = String::new();
    writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="{}" viewBox="{} {} {} {}">"#,
        fmt12((800.0 * h / w).round()),
        fmt12(x0 - margin),
        fmt12(-(y1 + margin)),
        fmt12(w),
        fmt12(h)
    )
    .unwrap();
    let k = scene.colors.as_ref().map(|c| c.iter().max().map_or(0, |m| m + 1)).unwrap_or(0);
    writeln!(s, "<style>").unwrap();
    writeln!(s, ".disk {{ fill: none; stroke: #555555; stroke-width: {}; }}", fmt12(stroke)).unwrap();
    writeln!(s, ".anchor {{ fill: none; stroke: #000000; stroke-width: {}; stroke-dasharray: {}; }}", fmt12(stroke * 1.5), fmt12(stroke * 6.0)).unwrap();
    writeln!(s, ".point {{ fill: #000000; }}").unwrap();
    writeln!(s, ".origin {{ fill: none; stroke: #000000; stroke-width: {}; }}", fmt12(stroke * 2.0)).unwrap();
    for c in 0..k {
        writeln!(s, ".c{c} {{ fill: {}; }}", PALETTE[c % PALETTE.len()]).unwrap();
    }
    writeln!(s, "</style>").unwrap();
    // y axis points up
    writeln!(s, r#"<g transform="scale(1,-1)">"#).unwrap();
    if let Some((x, y, r)) = anchor {
        writeln!(s, r#"<circle class="anchor" cx="{}" cy="{}" r="{}"/>"#, fmt12(x), fmt12(y), fmt12(r)).unwrap();
    }
    for (x, y, r) in circles {
        writeln!(s, r#"<circle class="disk" cx="{}" cy="{}" r="{}"/>"#, fmt12(x), fmt12(y), fmt12(r)).unwrap();
    }
    for (i, p) in scene.points.iter().enumerate() {
        let (x, y) = pf(p);
        let class = match &scene.colors {
            Some(c) => format!("c{}", c[i]),
            None => "point".into(),
        };
        writeln!(s, r#"<circle class="{class}" cx="{}" cy="{}" r="{}"/>"#, fmt12(x), fmt12(y), fmt12(dot)).unwrap();
    }
    if let Some(o) = &scene.origin {
        let (x, y) = pf(o);
        writeln!(s, r#"<circle class="origin" cx="{}" cy="{}" r="{}"/>"#, fmt12(x), fmt12(y), fmt12(dot * 1.5)).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "</svg>").unwrap();
    s
}
