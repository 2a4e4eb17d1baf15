//! JSON documents for points, realizations, range families and colorings.
//! Rationals are written as `"p/q"` strings so files round-trip exactly.

use serde::{Deserialize, Serialize};

use crate::construction::{DiskRole, Realization, RealizationKind, RealizedDisk};
use crate::hypergraph::Hypergraph;
use crate::kernel::{QuadPoint, Quadratic};
use crate::ranges::{RangeFamily, WitnessDisk};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::{Circle, Point};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("not a rational number: {0:?}")]
    BadRational(String),
    #[error("invalid document: {0}")]
    Invalid(String),
}

type PointDoc = [String; 2];

fn rat_doc(x: &Rational) -> String {
    format_rational(x)
}

fn rat_from(s: &str) -> Result<Rational, IoError> {
    parse_rational(s).ok_or_else(|| IoError::BadRational(s.to_string()))
}

fn point_doc(p: &Point) -> PointDoc {
    [rat_doc(&p.x), rat_doc(&p.y)]
}

fn point_from(d: &PointDoc) -> Result<Point, IoError> {
    Ok(Point::new(rat_from(&d[0])?, rat_from(&d[1])?))
}

#[derive(Serialize, Deserialize)]
pub struct PointsDoc {
    pub points: Vec<PointDoc>,
}

pub fn points_to_json(points: &[Point]) -> String {
    serde_json::to_string_pretty(&PointsDoc { points: points.iter().map(point_doc).collect() }).expect("serializable")
}

pub fn points_from_json(s: &str) -> Result<Vec<Point>, IoError> {
    let doc: PointsDoc = serde_json::from_str(s)?;
    doc.points.iter().map(point_from).collect()
}

#[derive(Serialize, Deserialize)]
struct CircleDoc {
    center: PointDoc,
    radius_sq: String,
    base_point: PointDoc,
}

fn circle_doc(c: &Circle) -> CircleDoc {
    CircleDoc { center: point_doc(&c.center), radius_sq: rat_doc(&c.radius_sq), base_point: point_doc(&c.base_point) }
}

fn circle_from(d: &CircleDoc) -> Result<Circle, IoError> {
    Circle::new(point_from(&d.center)?, rat_from(&d.radius_sq)?, point_from(&d.base_point)?)
        .map_err(|e| IoError::Invalid(e.to_string()))
}

#[derive(Serialize, Deserialize)]
struct DiskDoc {
    #[serde(flatten)]
    circle: CircleDoc,
    edge: Vec<usize>,
    role: DiskRole,
    exposed: Option<PointDoc>,
}

#[derive(Serialize, Deserialize)]
struct RealizationDoc {
    kind: RealizationKind,
    points: Vec<PointDoc>,
    prescribed: Vec<PointDoc>,
    disks: Vec<DiskDoc>,
    anchor: CircleDoc,
    gamma: String,
    target: Hypergraph,
}

pub fn realization_to_json(r: &Realization) -> String {
    let doc = RealizationDoc {
        kind: r.kind,
        points: r.points.iter().map(point_doc).collect(),
        prescribed: r.prescribed.iter().map(point_doc).collect(),
        disks: r
            .disks
            .iter()
            .map(|d| DiskDoc {
                circle: circle_doc(&d.circle),
                edge: d.edge.clone(),
                role: d.role,
                exposed: d.exposed.as_ref().map(point_doc),
            })
            .collect(),
        anchor: circle_doc(&r.anchor),
        gamma: rat_doc(&r.gamma),
        target: r.target.clone(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn realization_from_json(s: &str) -> Result<Realization, IoError> {
    let doc: RealizationDoc = serde_json::from_str(s)?;
    let disks = doc
        .disks
        .iter()
        .map(|d| {
            Ok(RealizedDisk {
                circle: circle_from(&d.circle)?,
                edge: d.edge.clone(),
                role: d.role,
                exposed: d.exposed.as_ref().map(point_from).transpose()?,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    doc.target.validate().map_err(|e| IoError::Invalid(e.to_string()))?;
    Ok(Realization {
        kind: doc.kind,
        points: doc.points.iter().map(point_from).collect::<Result<_, _>>()?,
        prescribed: doc.prescribed.iter().map(point_from).collect::<Result<_, _>>()?,
        disks,
        anchor: circle_from(&doc.anchor)?,
        gamma: rat_from(&doc.gamma)?,
        target: doc.target,
    })
}

/// `a + b sqrt(d)`; rational values have `b = d = "0"`.
#[derive(Serialize, Deserialize)]
struct QuadDoc {
    a: String,
    b: String,
    d: String,
}

fn quad_doc(q: &Quadratic<Rational>) -> QuadDoc {
    QuadDoc { a: rat_doc(&q.a), b: rat_doc(&q.b), d: rat_doc(&q.d) }
}

fn quad_from(d: &QuadDoc) -> Result<Quadratic<Rational>, IoError> {
    let radicand = rat_from(&d.d)?;
    if radicand < Rational::from_integer(0.into()) {
        return Err(IoError::Invalid("negative radicand".into()));
    }
    Ok(Quadratic::new(rat_from(&d.a)?, rat_from(&d.b)?, radicand))
}

#[derive(Serialize, Deserialize)]
struct WitnessDoc {
    center: [QuadDoc; 2],
    radius_sq: String,
}

#[derive(Serialize, Deserialize)]
struct RangeFamilyDoc {
    points: Vec<PointDoc>,
    ranges: Vec<Vec<usize>>,
    witnesses: Vec<WitnessDoc>,
}

pub fn range_family_to_json(f: &RangeFamily) -> String {
    let doc = RangeFamilyDoc {
        points: f.points.iter().map(point_doc).collect(),
        ranges: f.ranges.clone(),
        witnesses: f
            .witnesses
            .iter()
            .map(|w| WitnessDoc { center: [quad_doc(&w.center.x), quad_doc(&w.center.y)], radius_sq: rat_doc(&w.radius_sq) })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn range_family_from_json(s: &str) -> Result<RangeFamily, IoError> {
    let doc: RangeFamilyDoc = serde_json::from_str(s)?;
    if doc.ranges.len() != doc.witnesses.len() {
        return Err(IoError::Invalid("one witness per range expected".into()));
    }
    let witnesses = doc
        .witnesses
        .iter()
        .map(|w| {
            let (x, y) = (quad_from(&w.center[0])?, quad_from(&w.center[1])?);
            if !x.is_rational() && !y.is_rational() && x.d != y.d {
                return Err(IoError::Invalid("witness coordinates use different radicands".into()));
            }
            Ok(WitnessDisk { center: QuadPoint { x, y }, radius_sq: rat_from(&w.radius_sq)? })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok(RangeFamily { points: doc.points.iter().map(point_from).collect::<Result<_, _>>()?, ranges: doc.ranges, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::trivial_realization;
    use crate::scalar::{int, rat};

    #[test]
    fn points_round_trip() {
        let pts = vec![Point::new(rat(3, 5), rat(-4, 5)), Point::new(int(7), int(0))];
        let s = points_to_json(&pts);
        assert!(s.contains("\"3/5\""));
        assert_eq!(points_from_json(&s).unwrap(), pts);
        assert!(points_from_json("{\"points\": [[\"1/0\", \"1\"]]}").is_err());
        assert!(points_from_json("{\"points\": [[\"1\",").is_err());
    }

    #[test]
    fn realization_round_trip() {
        let r = trivial_realization();
        let s = realization_to_json(&r);
        assert_eq!(realization_from_json(&s).unwrap(), r);
        assert_eq!(realization_to_json(&realization_from_json(&s).unwrap()), s);
    }

    #[test]
    fn range_family_round_trip() {
        let pts = vec![Point::new(rat(1, 2), int(0)), Point::new(rat(-1, 2), rat(1, 4))];
        let f = crate::ranges::stabbed_unit_disk_ranges(&pts, &Point::origin()).unwrap();
        let s = range_family_to_json(&f);
        assert_eq!(range_family_from_json(&s).unwrap(), f);
    }
}
