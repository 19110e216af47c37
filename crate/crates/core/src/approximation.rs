//! Inscribed polygonal approximations of smooth symmetric bodies and the
//! convergence of radial functions and volume products along them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::duality::{polar, volume_product};
use crate::error::{Error, Result};
use crate::polygon::SymPolygon;
use crate::scalar::EPS_GEOM;
use crate::support::{hausdorff_support_metric, radial, radial_bounds, DEFAULT_HAUSDORFF_GRID};
use crate::vec2::{Direction, Vec2};

/// Origin-symmetric convex body known through its radial function.
#[derive(Clone, Debug, PartialEq)]
pub enum SampledBody {
    Disk,
    /// Semi-axes `a` along x and `b` along y.
    Ellipse {
        a: f64,
        b: f64,
    },
    /// Unit ball of the `p`-norm; `p = ∞` allowed.
    PBall {
        p: f64,
    },
    Polygon(SymPolygon<f64>),
}

impl SampledBody {
    pub fn radial(&self, u: &Vec2<f64>) -> f64 {
        match self {
            SampledBody::Disk => 1.0 / u.norm(),
            SampledBody::Ellipse { a, b } => 1.0 / ((u.x / a).powi(2) + (u.y / b).powi(2)).sqrt(),
            SampledBody::PBall { p } => {
                let norm = if p.is_infinite() {
                    u.x.abs().max(u.y.abs())
                } else {
                    (u.x.abs().powf(*p) + u.y.abs().powf(*p)).powf(1.0 / p)
                };
                1.0 / norm
            }
            SampledBody::Polygon(poly) => radial(poly, u),
        }
    }

    /// `(r0, r1)` supplied per body rather than estimated.
    pub fn bounds(&self) -> (f64, f64) {
        match self {
            SampledBody::Disk => (1.0, 1.0),
            SampledBody::Ellipse { a, b } => (a.min(*b), a.max(*b)),
            SampledBody::PBall { p } => {
                let e = if p.is_infinite() { 0.5 } else { 0.5 - 1.0 / p };
                let r = 2f64.powf(e);
                (r.min(1.0), r.max(1.0))
            }
            SampledBody::Polygon(poly) => {
                let b = radial_bounds(poly);
                (b.r0, b.r1)
            }
        }
    }

    /// Directions that must be sampled for the inscribed polygons to reach
    /// the body exactly (the corners of a polygonal body).
    pub fn corner_directions(&self) -> Vec<f64> {
        match self {
            SampledBody::Polygon(poly) => poly.vertices().iter().map(Vec2::angle).collect(),
            SampledBody::PBall { p } if *p == 1.0 || p.is_infinite() => {
                let offset = if *p == 1.0 {
                    0.0
                } else {
                    std::f64::consts::FRAC_PI_4
                };
                (0..4)
                    .map(|k| offset + k as f64 * std::f64::consts::FRAC_PI_2)
                    .collect()
            }
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for SampledBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampledBody::Disk => write!(f, "disk"),
            SampledBody::Ellipse { a, b } => write!(f, "ellipse:{a}:{b}"),
            SampledBody::PBall { p } if p.is_infinite() => write!(f, "pball:inf"),
            SampledBody::PBall { p } => write!(f, "pball:{p}"),
            SampledBody::Polygon(_) => write!(f, "polygon"),
        }
    }
}

/// Parses `disk`, `square`, `ellipse:A:B` and `pball:P` (`P` may be `inf`).
impl FromStr for SampledBody {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown body '{s}'"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| -> Result<f64> {
            let v = if t.eq_ignore_ascii_case("inf") {
                f64::INFINITY
            } else {
                t.parse::<f64>().map_err(|_| bad())?
            };
            if v > 0.0 {
                Ok(v)
            } else {
                Err(bad())
            }
        };
        match parts.as_slice() {
            ["disk"] => Ok(SampledBody::Disk),
            ["square"] => Ok(SampledBody::Polygon(SymPolygon::new(vec![
                Vec2::new(1.0, 1.0),
                Vec2::new(-1.0, 1.0),
                Vec2::new(-1.0, -1.0),
                Vec2::new(1.0, -1.0),
            ])?)),
            ["ellipse", a, b] => Ok(SampledBody::Ellipse {
                a: num(a)?,
                b: num(b)?,
            }),
            ["pball", p] => {
                let p = num(p)?;
                if p < 1.0 {
                    return Err(bad());
                }
                Ok(SampledBody::PBall { p })
            }
            _ => Err(bad()),
        }
    }
}

/// Polygon with vertices `ρ(u_j) u_j` at `m` equally spaced angles
/// `2πj/m`; validation rejects non-convex oracles.
pub fn inscribe_polygon(body: &SampledBody, m: usize) -> Result<SymPolygon<f64>> {
    inscribe_polygon_with(body, m, &[])
}

/// As [`inscribe_polygon`], with extra angles merged into the grid.
/// Sample points that fall on a straight piece of the boundary are dropped.
pub fn inscribe_polygon_with(
    body: &SampledBody,
    m: usize,
    extra_angles: &[f64],
) -> Result<SymPolygon<f64>> {
    if m < 4 || m % 2 == 1 {
        return Err(Error::DomainError(format!(
            "sample count {m} must be even and at least 4"
        )));
    }
    let half = std::f64::consts::PI;
    let mut angles: Vec<f64> = (0..m / 2)
        .map(|j| std::f64::consts::TAU * j as f64 / m as f64)
        .chain(extra_angles.iter().map(|a| a.rem_euclid(half)))
        .collect();
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    if angles.len() > 1 && (angles[0] + half - angles[angles.len() - 1]).abs() < 1e-12 {
        angles.pop();
    }
    let mut pts: Vec<Vec2<f64>> = angles
        .iter()
        .map(|&a| {
            let u = Vec2::from_angle(a);
            u * body.radial(&u)
        })
        .collect();
    let anti: Vec<Vec2<f64>> = pts.iter().map(|p| -*p).collect();
    pts.extend(anti);
    SymPolygon::new(drop_straight_samples(pts)?)
}

/// Removes samples lying on the segment between their neighbours.
/// `pts` is a half-turn of samples followed by their antipodes, so the
/// partner of sample `i < n` sits at `i + n`. Reflex turns are left for
/// validation to reject.
fn drop_straight_samples(mut pts: Vec<Vec2<f64>>) -> Result<Vec<Vec2<f64>>> {
    loop {
        let m = pts.len();
        if m < 4 {
            return Err(Error::TooFewVertices(m));
        }
        let n = m / 2;
        let straight = (0..n).find(|&i| {
            let a = pts[(i + m - 1) % m];
            let b = pts[i];
            let c = pts[i + 1];
            ((b - a).cross(&(c - b))).abs() <= EPS_GEOM
        });
        match straight {
            Some(i) => {
                pts.remove(i + n);
                pts.remove(i);
            }
            None => return Ok(pts),
        }
    }
}

/// One row of [`continuity_experiment`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContinuityRow {
    pub m: usize,
    /// `d(P_m, P_proxy)`, standing in for `d(P_m, K)`.
    pub hausdorff_proxy: f64,
    pub product: f64,
    /// `sup_u |ρ(P_m, u) - ρ(K, u)|` over the direction grid.
    pub radial_gap: f64,
    /// `(4 r1 / r0) · hausdorff_proxy`.
    pub bound_rhs: f64,
    /// `d(P_m*, P_proxy*)`.
    pub polar_distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuityTable {
    pub body: String,
    pub proxy_m: usize,
    pub proxy_product: f64,
    pub r0: f64,
    pub r1: f64,
    pub rows: Vec<ContinuityRow>,
}

impl ContinuityTable {
    /// CSV with header `m,hausdorff_proxy,product,radial_gap,bound_rhs`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,hausdorff_proxy,product,radial_gap,bound_rhs\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.m,
                crate::scalar::format_sig12(r.hausdorff_proxy),
                crate::scalar::format_sig12(r.product),
                crate::scalar::format_sig12(r.radial_gap),
                crate::scalar::format_sig12(r.bound_rhs),
            ));
        }
        out
    }
}

/// Directions used for the radial-gap supremum.
pub const RADIAL_GAP_GRID: usize = 4096;

/// Tabulates, for each `m`, the Hausdorff distance to a fine proxy
/// (`4 · max m` samples), the volume product and the radial gap, and checks:
/// the radial-gap bound whenever `d_m < r0/2`; that `|product_m - product_proxy|`
/// decreases; and that the polar distances decrease too.
pub fn continuity_experiment(body: &SampledBody, m_list: &[usize]) -> Result<ContinuityTable> {
    if m_list.is_empty() || m_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::DomainError(
            "m_list must be nonempty and strictly increasing".into(),
        ));
    }
    let corners = body.corner_directions();
    let proxy_m = 4 * m_list[m_list.len() - 1];
    let proxy = inscribe_polygon_with(body, proxy_m, &corners)?;
    let proxy_polar = polar(&proxy)?;
    let proxy_product = volume_product(&proxy)?.product;
    let (r0, r1) = body.bounds();
    let mut rows = Vec::with_capacity(m_list.len());
    for &m in m_list {
        let pm = inscribe_polygon_with(body, m, &corners)?;
        let d = hausdorff_support_metric(&pm, &proxy, DEFAULT_HAUSDORFF_GRID)?;
        let polar_distance =
            hausdorff_support_metric(&polar(&pm)?, &proxy_polar, DEFAULT_HAUSDORFF_GRID)?;
        let (radial_gap, worst_angle) = Direction::uniform_grid(RADIAL_GAP_GRID)
            .map(|u| {
                let gap = (radial(&pm, u.vec()) - body.radial(u.vec())).abs();
                (gap, u.vec().angle())
            })
            .fold((0.0, 0.0), |a, b| if b.0 > a.0 { b } else { a });
        let bound_rhs = 4.0 * r1 / r0 * d;
        if d < r0 / 2.0 && radial_gap > bound_rhs + 1e-12 {
            return Err(Error::BoundViolated {
                m,
                detail: format!(
                    "radial gap {radial_gap} at angle {worst_angle} exceeds (4 r1/r0) d = {bound_rhs}"
                ),
            });
        }
        rows.push(ContinuityRow {
            m,
            hausdorff_proxy: d,
            product: volume_product(&pm)?.product,
            radial_gap,
            bound_rhs,
            polar_distance,
        });
    }
    for w in rows.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let (ea, eb) = (
            (a.product - proxy_product).abs(),
            (b.product - proxy_product).abs(),
        );
        if eb > ea + 1e-12 {
            return Err(Error::BoundViolated {
                m: b.m,
                detail: format!("product error grew from {ea:e} to {eb:e}"),
            });
        }
        if b.polar_distance > a.polar_distance + 1e-12 {
            return Err(Error::BoundViolated {
                m: b.m,
                detail: format!(
                    "polar distance grew from {:e} to {:e}",
                    a.polar_distance, b.polar_distance
                ),
            });
        }
    }
    Ok(ContinuityTable {
        body: body.to_string(),
        proxy_m,
        proxy_product,
        r0,
        r1,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular_product(m: usize) -> f64 {
        let m = m as f64;
        (m * (std::f64::consts::PI / m).sin()).powi(2)
    }

    #[test]
    fn inscribed_disk_polygons_match_closed_form() {
        for m in [4, 6, 8, 16, 64] {
            let p = inscribe_polygon(&SampledBody::Disk, m).unwrap();
            assert_eq!(p.len(), m);
            let got = volume_product(&p).unwrap().product;
            assert!((got - regular_product(m)).abs() < 1e-12, "m = {m}: {got}");
        }
    }

    #[test]
    fn odd_or_small_sample_counts_are_rejected() {
        assert!(inscribe_polygon(&SampledBody::Disk, 2).is_err());
        assert!(inscribe_polygon(&SampledBody::Disk, 7).is_err());
    }

    #[test]
    fn straight_samples_on_the_square_are_dropped() {
        let body: SampledBody = "pball:inf".parse().unwrap();
        let p = inscribe_polygon_with(&body, 16, &body.corner_directions()).unwrap();
        assert_eq!(p.len(), 4);
        assert!((volume_product(&p).unwrap().product - 8.0).abs() < 1e-12);
    }

    #[test]
    fn pball_bounds() {
        let (r0, r1) = SampledBody::PBall { p: 1.0 }.bounds();
        assert!((r0 - 0.5f64.sqrt()).abs() < 1e-15 && r1 == 1.0);
        let (r0, r1) = SampledBody::PBall { p: f64::INFINITY }.bounds();
        assert!(r0 == 1.0 && (r1 - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn body_parsing() {
        assert_eq!("disk".parse::<SampledBody>().unwrap(), SampledBody::Disk);
        assert_eq!(
            "ellipse:2:1".parse::<SampledBody>().unwrap(),
            SampledBody::Ellipse { a: 2.0, b: 1.0 }
        );
        assert!("pball:0.5".parse::<SampledBody>().is_err());
        assert!("blob".parse::<SampledBody>().is_err());
    }

    #[test]
    fn disk_continuity_increases_towards_pi_squared() {
        let table = continuity_experiment(&SampledBody::Disk, &[8, 16, 32, 64]).unwrap();
        let products: Vec<f64> = table.rows.iter().map(|r| r.product).collect();
        assert!(products.windows(2).all(|w| w[0] < w[1]));
        for r in &table.rows {
            assert!(r.radial_gap <= r.bound_rhs + 1e-12);
        }
        assert!(table
            .to_csv()
            .starts_with("m,hausdorff_proxy,product,radial_gap,bound_rhs\n"));
    }

    #[test]
    fn ellipse_products_match_disk() {
        // Santaló: never above the disk value
        let e = SampledBody::Ellipse { a: 2.0, b: 0.5 };
        let table = continuity_experiment(&e, &[8, 16, 32]).unwrap();
        assert!(table
            .rows
            .iter()
            .all(|r| r.product <= std::f64::consts::PI.powi(2)));
    }

    #[test]
    fn ellipse_at_64_is_close_to_pi_squared() {
        let p = inscribe_polygon(&SampledBody::Ellipse { a: 2.0, b: 1.0 }, 64).unwrap();
        let pi2 = std::f64::consts::PI.powi(2);
        let got = volume_product(&p).unwrap().product;
        assert!(got <= pi2 && (pi2 - got) / pi2 < 0.005, "{got}");
    }

    #[test]
    fn square_body_recovers_the_square() {
        let body: SampledBody = "square".parse().unwrap();
        for m in [8, 12, 32] {
            let p = inscribe_polygon_with(&body, m, &body.corner_directions()).unwrap();
            assert_eq!(p.len(), 4);
            assert!((volume_product(&p).unwrap().product - 8.0).abs() < 1e-12);
        }
    }

    #[test]
    fn inscribed_vertices_lie_on_the_body() {
        for body in [
            "disk",
            "ellipse:2:1",
            "pball:1",
            "pball:1.5",
            "pball:3",
            "pball:inf",
        ] {
            let body: SampledBody = body.parse().unwrap();
            let p = inscribe_polygon_with(&body, 32, &body.corner_directions()).unwrap();
            for v in p.vertices() {
                let u = *v * (1.0 / v.norm());
                assert!((body.radial(&u) - v.norm()).abs() < 1e-12);
            }
        }
    }
}
