//! Closed forms behind the deletion step and their independent checks.
//!
//! Setting: `P''` inside the unit disk with adjacent vertices
//! `A = (-x0, y0)` and `B = (x0, y0)` on the circle. Adding the pair
//! `±C`, `C = (cos θ, sin θ)` on the arc above `AB`, gives `P'`. With
//! `t = sin θ`, the area grows by `2 x0 (t - y0)` and the polar loses two
//! copies of the triangle cut off by the tangent at `C`. The product is then
//! `f(θ)`, which is non-increasing in θ on `[π/2, π - atan(y0/x0)]`.
//! `C` sits in the second quadrant, between the top of the circle and `A`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::duality::{polar, volume_product};
use crate::error::{Error, Result};
use crate::hull::strict_convex_hull;
use crate::polygon::SymPolygon;
use crate::scalar::EPS_GEOM;
use crate::vec2::Vec2;

use super::{inside_unit_disk, ChordFrame, EPS_CIRCLE};

/// Admissible θ for the apex `C`: `[π/2, π - atan(y0/x0)]`.
pub fn theta_range(x0: f64, y0: f64) -> (f64, f64) {
    (FRAC_PI_2, PI - (y0 / x0).atan())
}

/// Area of the unit-circle segment cut off by the vertical chord `x = x0`.
pub fn circular_segment_area(x0: f64) -> f64 {
    x0.acos() - x0 * (1.0 - x0 * x0).max(0.0).sqrt()
}

/// Every displayed quantity at one θ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Lemma33Record {
    pub x0: f64,
    pub y0: f64,
    pub theta: f64,
    /// Area of `P''`.
    pub v: f64,
    /// Area of the polar of `P''`.
    pub v0: f64,
    pub f: f64,
    pub f_prime: f64,
    pub g_of_t: f64,
    pub s_mhl: f64,
    /// Abscissa of `H`, where the tangent at `C` meets the tangent at `A`.
    pub x1: f64,
    /// Abscissa of `L`, where the tangent at `C` meets the tangent at `B`.
    pub x2: f64,
    pub segment_d: f64,
}

const THETA_SLACK: f64 = 1e-12;

pub fn lemma33_formulas(x0: f64, y0: f64, v: f64, v0: f64, theta: f64) -> Result<Lemma33Record> {
    if x0 <= 0.0 || y0 <= 0.0 || ((x0 * x0 + y0 * y0).sqrt() - 1.0).abs() > EPS_CIRCLE {
        return Err(Error::DomainError(format!(
            "(x0, y0) = ({x0}, {y0}) is not a point of the open first-quadrant arc"
        )));
    }
    let (lo, hi) = theta_range(x0, y0);
    if !(theta >= lo - THETA_SLACK && theta <= hi + THETA_SLACK) {
        return Err(Error::DomainError(format!(
            "theta = {theta} outside [{lo}, {hi}]"
        )));
    }
    let (t, c) = theta.sin_cos();
    // At θ = π - atan(y0/x0) the tangents at C and A coincide; H tends to A.
    let d1 = y0 * c + x0 * t;
    let x1 = if d1.abs() < 1e-12 { -x0 } else { (y0 - t) / d1 };
    let x2 = (y0 - t) / (y0 * c - x0 * t);
    let ratio = (t - y0) / (t + y0);
    let s_mhl = x0 / y0 * ratio;
    let f = (v + 2.0 * x0 * (t - y0)) * (v0 - 2.0 * x0 / y0 * ratio);
    let g_of_t = g(x0, y0, v, v0, t);
    let f_prime = 2.0 * x0 * c * g_of_t / (y0 * (t + y0) * (t + y0));
    Ok(Lemma33Record {
        x0,
        y0,
        theta,
        v,
        v0,
        f,
        f_prime,
        g_of_t,
        s_mhl,
        x1,
        x2,
        segment_d: circular_segment_area(x0),
    })
}

fn g(x0: f64, y0: f64, v: f64, v0: f64, t: f64) -> f64 {
    (v0 * y0 - 2.0 * x0) * (t + y0) * (t + y0) + 2.0 * y0 * (4.0 * x0 * y0 - v)
}

/// Tolerance for [`f_geometric_crosscheck`].
pub const CROSSCHECK_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrosscheckReport {
    pub theta: f64,
    /// Volume product of `conv(P'' ∪ {±C})` computed from the polygon.
    pub geometric: f64,
    /// `f(θ)` from the closed form.
    pub formula: f64,
    pub discrepancy: f64,
}

fn check_lemma_setting(p2: &SymPolygon<f64>, frame: &ChordFrame) -> Result<()> {
    let m = p2.len();
    if (frame.w_index + 1) % m != frame.u_index {
        return Err(Error::PreconditionViolated(
            "A and B are not adjacent vertices".into(),
        ));
    }
    if !inside_unit_disk(p2, EPS_CIRCLE) {
        return Err(Error::PreconditionViolated(
            "P'' is not inside the unit disk".into(),
        ));
    }
    Ok(())
}

/// Rebuilds `P' = conv(P'' ∪ {±C(θ)})` and compares its volume product
/// with the closed form `f(θ)`.
pub fn f_geometric_crosscheck(
    p2: &SymPolygon<f64>,
    frame: &ChordFrame,
    theta: f64,
) -> Result<CrosscheckReport> {
    check_lemma_setting(p2, frame)?;
    let (x0, y0) = (frame.x0, frame.y0);
    let base = volume_product(p2)?;
    let rec = lemma33_formulas(x0, y0, base.v, base.v_star, theta)?;
    let apex = Vec2::from_angle(theta);
    let mut pts: Vec<Vec2<f64>> = p2.vertices().to_vec();
    pts.push(apex);
    pts.push(-apex);
    let p1 = SymPolygon::new(strict_convex_hull(&pts, EPS_GEOM))?;
    let geometric = volume_product(&p1)?.product;
    let discrepancy = (geometric - rec.f).abs();
    if discrepancy > CROSSCHECK_TOL {
        return Err(Error::CheckFailed(format!(
            "θ = {theta}: geometric product {geometric} vs f(θ) = {} (Δ = {discrepancy:e})",
            rec.f
        )));
    }
    Ok(CrosscheckReport {
        theta,
        geometric,
        formula: rec.f,
        discrepancy,
    })
}

/// One inequality of the chain, as `lhs - rhs` (non-negative when it holds).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainMargin {
    pub name: &'static str,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub x0: f64,
    pub y0: f64,
    pub v: f64,
    pub v0: f64,
    pub segment_d: f64,
    pub margins: Vec<ChainMargin>,
}

impl ChainReport {
    pub fn worst(&self) -> f64 {
        self.margins
            .iter()
            .map(|m| m.margin)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Margins must not drop below `-CHAIN_TOL`.
pub const CHAIN_TOL: f64 = 1e-12;

/// `x0³ - 2x0² + 1`, non-negative on `[0, 1]` and zero at `x0 = 1`.
pub fn cubic_margin(x0: f64) -> f64 {
    x0 * x0 * x0 - 2.0 * x0 * x0 + 1.0
}

/// `2 y0 (1 - x0) - D`: the segment fits in its bounding rectangle.
pub fn segment_bound_margin(x0: f64, y0: f64) -> f64 {
    2.0 * y0 * (1.0 - x0) - circular_segment_area(x0)
}

/// Evaluates every inequality used to show `g(t) >= 0` on `[y0, 1]`.
pub fn lemma33_chain_check(x0: f64, y0: f64, p2: &SymPolygon<f64>) -> Result<ChainReport> {
    let frame = ChordFrame::locate(p2, x0, y0, EPS_CIRCLE)?;
    check_lemma_setting(p2, &frame)?;
    let v = p2.area();
    let v0 = polar(p2)?.area();
    let d = circular_segment_area(x0);
    let hexagon = 4.0 * x0 * y0 + 2.0 * x0 * (1.0 / y0 - y0);
    let y2 = y0 * y0;
    let margins = vec![
        ChainMargin {
            name: "V0*y0 - 2*x0 >= 2*x0*y0^2",
            margin: v0 * y0 - 2.0 * x0 - 2.0 * x0 * y2,
        },
        ChainMargin {
            name: "2*x0*y0^2 > 0",
            margin: 2.0 * x0 * y2,
        },
        ChainMargin {
            name: "g(y0) = 2*y0*(2*V0*y0^2 - V) >= 0",
            margin: 2.0 * y0 * (2.0 * v0 * y2 - v),
        },
        ChainMargin {
            name: "g(1) >= g(y0)",
            margin: g(x0, y0, v, v0, 1.0) - g(x0, y0, v, v0, y0),
        },
        ChainMargin {
            name: "V0 >= 4*x0*y0 + 2*x0*(1/y0 - y0) + 2*D",
            margin: v0 - hexagon - 2.0 * d,
        },
        ChainMargin {
            name: "V <= 4*x0*y0 + 2*D",
            margin: 4.0 * x0 * y0 + 2.0 * d - v,
        },
        ChainMargin {
            name: "2*x0*y0^3 >= D*(1 - 2*y0^2)",
            margin: 2.0 * x0 * y0 * y2 - d * (1.0 - 2.0 * y2),
        },
        ChainMargin {
            name: "D <= 2*y0*(1 - x0)",
            margin: segment_bound_margin(x0, y0),
        },
        ChainMargin {
            name: "x0^3 - 2*x0^2 + 1 >= 0",
            margin: cubic_margin(x0),
        },
    ];
    let violated: Vec<String> = margins
        .iter()
        .filter(|m| m.margin < -CHAIN_TOL)
        .map(|m| format!("{} (margin {:e})", m.name, m.margin))
        .collect();
    if !violated.is_empty() {
        return Err(Error::CheckFailed(violated.join("; ")));
    }
    Ok(ChainReport {
        x0,
        y0,
        v,
        v0,
        segment_d: d,
        margins,
    })
}
