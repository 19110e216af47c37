//! JSON formats for polygons and reduction certificates.
//!
//! A polygon is `{"vertices": [[x, y], ...]}`. Plain numbers select float
//! mode; strings such as `"3/4"` or `"-2"` select exact rational mode.
//! Mixing the two in one file is rejected.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::polygon::{LinMap2, SymPolygon};
use crate::reduction::{ReductionCertificate, ReductionStep, StepKind};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::vec2::Vec2;

/// A polygon in whichever number mode its file used.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPolygon {
    Float(SymPolygon<f64>),
    Exact(SymPolygon<Rational>),
}

impl AnyPolygon {
    pub fn to_f64(&self) -> SymPolygon<f64> {
        match self {
            AnyPolygon::Float(p) => p.clone(),
            AnyPolygon::Exact(p) => p.to_f64(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, AnyPolygon::Exact(_))
    }
}

#[derive(Deserialize)]
struct RawPolygon {
    vertices: Vec<[Value; 2]>,
}

enum Coord {
    Float(f64),
    Exact(Rational),
}

fn coord(v: &Value) -> Result<Coord> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .filter(|x| x.is_finite())
            .map(Coord::Float)
            .ok_or_else(|| Error::Parse(format!("coordinate {n} is not a finite number"))),
        Value::String(s) => parse_rational(s)
            .map(Coord::Exact)
            .ok_or_else(|| Error::Parse(format!("'{s}' is not a rational p/q"))),
        other => Err(Error::Parse(format!("unexpected coordinate {other}"))),
    }
}

/// Parses and validates a polygon document.
pub fn parse_polygon(text: &str) -> Result<AnyPolygon> {
    let raw: RawPolygon = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let coords: Vec<[Coord; 2]> = raw
        .vertices
        .iter()
        .map(|[x, y]| Ok([coord(x)?, coord(y)?]))
        .collect::<Result<_>>()?;
    let all_float = coords
        .iter()
        .flatten()
        .all(|c| matches!(c, Coord::Float(_)));
    let all_exact = coords
        .iter()
        .flatten()
        .all(|c| matches!(c, Coord::Exact(_)));
    if all_float {
        let pts = coords
            .into_iter()
            .map(|[x, y]| match (x, y) {
                (Coord::Float(x), Coord::Float(y)) => Vec2::new(x, y),
                _ => unreachable!(),
            })
            .collect();
        Ok(AnyPolygon::Float(SymPolygon::new(pts)?))
    } else if all_exact {
        let pts = coords
            .into_iter()
            .map(|[x, y]| match (x, y) {
                (Coord::Exact(x), Coord::Exact(y)) => Vec2::new(x, y),
                _ => unreachable!(),
            })
            .collect();
        Ok(AnyPolygon::Exact(SymPolygon::new(pts)?))
    } else {
        Err(Error::Parse("mixed float and rational coordinates".into()))
    }
}

pub fn polygon_to_json(p: &SymPolygon<f64>) -> Value {
    let vs: Vec<[f64; 2]> = p.vertices().iter().map(|v| [v.x, v.y]).collect();
    serde_json::json!({ "vertices": vs })
}

pub fn exact_polygon_to_json(p: &SymPolygon<Rational>) -> Value {
    let vs: Vec<[String; 2]> = p
        .vertices()
        .iter()
        .map(|v| [format_rational(&v.x), format_rational(&v.y)])
        .collect();
    serde_json::json!({ "vertices": vs })
}

pub fn any_polygon_to_json(p: &AnyPolygon) -> Value {
    match p {
        AnyPolygon::Float(p) => polygon_to_json(p),
        AnyPolygon::Exact(p) => exact_polygon_to_json(p),
    }
}

#[derive(Serialize, Deserialize)]
struct PolygonDoc {
    vertices: Vec<[f64; 2]>,
}

impl PolygonDoc {
    fn from_polygon(p: &SymPolygon<f64>) -> Self {
        Self {
            vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
        }
    }

    fn into_polygon(self) -> Result<SymPolygon<f64>> {
        SymPolygon::new(
            self.vertices
                .into_iter()
                .map(|[x, y]| Vec2::new(x, y))
                .collect(),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct StepDoc {
    kind: String,
    matrix: Option<[[f64; 2]; 2]>,
    deleted: Option<[f64; 2]>,
    product_before: f64,
    product_after: f64,
}

#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    input: PolygonDoc,
    steps: Vec<StepDoc>,
    final_polygon: PolygonDoc,
    final_product: f64,
}

pub fn certificate_to_json(cert: &ReductionCertificate) -> Value {
    let doc = CertificateDoc {
        input: PolygonDoc::from_polygon(&cert.input),
        steps: cert
            .steps
            .iter()
            .map(|s| StepDoc {
                kind: s.kind.as_str().to_string(),
                matrix: s.matrix.as_ref().map(LinMap2::rows),
                deleted: s.deleted.map(|v| [v.x, v.y]),
                product_before: s.product_before,
                product_after: s.product_after,
            })
            .collect(),
        final_polygon: PolygonDoc::from_polygon(&cert.final_polygon),
        final_product: cert.final_product,
    };
    serde_json::to_value(doc).expect("certificate serializes")
}

pub fn parse_certificate(text: &str) -> Result<ReductionCertificate> {
    let doc: CertificateDoc =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let steps = doc
        .steps
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            let kind = StepKind::parse(&s.kind)
                .ok_or_else(|| Error::Parse(format!("step {i}: unknown kind '{}'", s.kind)))?;
            Ok(ReductionStep {
                kind,
                matrix: s
                    .matrix
                    .map(|[[a11, a12], [a21, a22]]| LinMap2::new(a11, a12, a21, a22)),
                deleted: s.deleted.map(|[x, y]| Vec2::new(x, y)),
                product_before: s.product_before,
                product_after: s.product_after,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ReductionCertificate {
        input: doc.input.into_polygon()?,
        steps,
        final_polygon: doc.final_polygon.into_polygon()?,
        final_product: doc.final_product,
    })
}
