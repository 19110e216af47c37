//! Support and radial functions, radial bounds, the support-function
//! Hausdorff metric and the disk-offset radial estimate.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polygon::SymPolygon;
use crate::scalar::Scalar;
use crate::vec2::{Direction, Vec2};

/// Support function `h(P, u) = max_v <u, v>`.
///
/// `u` need not be a unit vector: the value scales linearly with `|u|`,
/// which keeps the exact-mode reciprocity `h(P*, u) ρ(P, u) = 1` testable.
pub fn support<S: Scalar>(p: &SymPolygon<S>, u: &Vec2<S>) -> S {
    let mut it = p.vertices().iter().map(|v| u.dot(v));
    let first = it.next().expect("validated polygon is nonempty");
    it.fold(first, |best, d| if d > best { d } else { best })
}

/// Radial function `ρ(P, u) = max{λ >= 0 : λu ∈ P}`.
///
/// The ray leaves `P` through the edge whose outward crossing comes first;
/// for a non-unit `u` the value scales with `1 / |u|`.
pub fn radial<S: Scalar>(p: &SymPolygon<S>, u: &Vec2<S>) -> S {
    let zero = S::zero();
    let mut best: Option<S> = None;
    for (a, b) in p.edges() {
        let d = b.clone() - a.clone();
        let denom = u.cross(&d);
        if denom > zero {
            let lambda = a.cross(b) / denom;
            best = match best {
                Some(cur) if cur <= lambda => Some(cur),
                _ => Some(lambda),
            };
        }
    }
    best.expect("origin is interior so every ray exits")
}

/// Inner and outer radii: `r0 = min ρ = min h`, `r1 = max ρ = max h`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadialBounds {
    pub r0: f64,
    pub r1: f64,
}

impl RadialBounds {
    pub fn ratio(&self) -> f64 {
        self.r1 / self.r0
    }
}

/// `r1` is the largest vertex norm, `r0` the smallest distance from the
/// origin to an edge's supporting line.
pub fn radial_bounds(p: &SymPolygon<f64>) -> RadialBounds {
    let r1 = p.vertices().iter().map(Vec2::norm).fold(0.0, f64::max);
    let r0 = p
        .edges()
        .map(|(a, b)| a.cross(b) / a.dist(b))
        .fold(f64::INFINITY, f64::min);
    RadialBounds { r0, r1 }
}

/// Default angular resolution of [`hausdorff_support_metric`].
pub const DEFAULT_HAUSDORFF_GRID: usize = 4096;

/// `d(P, Q) = max_u |h(P, u) - h(Q, u)|` on a uniform grid of `grid_size`
/// directions, refined once by resampling the bracket around the best
/// sample with another `grid_size` points.
///
/// The support functions are Lipschitz with constant `max(r1(P), r1(Q))`,
/// so the result undershoots the true maximum by at most that constant
/// times half the refined spacing.
pub fn hausdorff_support_metric(
    p: &SymPolygon<f64>,
    q: &SymPolygon<f64>,
    grid_size: usize,
) -> Result<f64> {
    if grid_size < 64 {
        return Err(Error::DomainError(format!(
            "grid_size {grid_size} below the minimum of 64"
        )));
    }
    let gap = |theta: f64| {
        let u = Vec2::from_angle(theta);
        (support(p, &u) - support(q, &u)).abs()
    };
    let step = std::f64::consts::TAU / grid_size as f64;
    let (mut best_theta, mut best) = (0.0, f64::NEG_INFINITY);
    for j in 0..grid_size {
        let theta = step * j as f64;
        let g = gap(theta);
        if g > best {
            best = g;
            best_theta = theta;
        }
    }
    let fine = 2.0 * step / grid_size as f64;
    for k in 0..=grid_size {
        let g = gap(best_theta - step + fine * k as f64);
        if g > best {
            best = g;
        }
    }
    Ok(best)
}

/// Sup over a uniform direction grid of `|ρ(P, u) - ρ(Q, u)|`.
pub fn radial_gap(p: &SymPolygon<f64>, q: &SymPolygon<f64>, grid_size: usize) -> f64 {
    Direction::uniform_grid(grid_size)
        .map(|u| (radial(p, u.vec()) - radial(q, u.vec())).abs())
        .fold(0.0, f64::max)
}

/// Bisection tolerance on λ for [`offset_radial`].
pub const OFFSET_RADIAL_TOL: f64 = 1e-12;

/// `ρ(P + tB², u)`: the largest λ with `dist(λu, P) <= t`.
///
/// Distance to a convex set is nondecreasing along a ray leaving an interior
/// point, so bisection on λ against the point-to-polygon distance converges.
pub fn offset_radial(p: &SymPolygon<f64>, t: f64, u: &Direction) -> Result<f64> {
    if t.is_nan() || t <= 0.0 {
        return Err(Error::DomainError(format!(
            "offset t = {t} must be positive"
        )));
    }
    let u = *u.vec();
    let mut lo = radial(p, &u);
    let mut hi = lo + t;
    while p.distance_to_point(&(u * hi)) <= t {
        hi = hi * 2.0 + t;
    }
    while hi - lo > OFFSET_RADIAL_TOL * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if p.distance_to_point(&(u * mid)) <= t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Outward unit normals of the edges through the boundary point hit by the
/// ray in direction `u`. At a vertex both adjacent normals are returned.
pub fn boundary_normals(p: &SymPolygon<f64>, u: &Vec2<f64>) -> Vec<Vec2<f64>> {
    let rho = radial(p, u);
    let x = *u * rho;
    let scale = rho.max(1.0);
    let m = p.len();
    let mut normals = Vec::with_capacity(2);
    for i in 0..m {
        let a = *p.vertex(i);
        let b = *p.vertex(i + 1);
        let d = b - a;
        let len = d.norm();
        let normal = Vec2::new(d.y / len, -d.x / len);
        let offset = normal.dot(&a);
        if (normal.dot(&x) - offset).abs() <= 1e-9 * scale
            && crate::polygon::point_segment_distance(&x, &a, &b) <= 1e-9 * scale
        {
            normals.push(normal);
        }
    }
    normals
}

/// Worst margins found by [`lemma21_check`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Lemma21Report {
    pub t: f64,
    pub bounds: RadialBounds,
    /// `min_u [ρ(P,u) + (r1/r0) t - ρ(P + tB², u)]`.
    pub offset_margin: f64,
    /// `min_u [max_ν |<u, ν>| - r0/r1]` over the normals at the hit point.
    pub normal_margin: f64,
    pub directions: usize,
}

/// Slack allowed for the bisection and edge-location round-off.
pub const LEMMA21_TOL: f64 = 1e-9;

/// Checks the offset-radial inequality and the normal-angle bound on a
/// uniform direction grid.
///
/// At a vertex the normal is not unique; the check passes if either adjacent
/// edge normal satisfies the bound.
pub fn lemma21_check(p: &SymPolygon<f64>, t: f64, grid_size: usize) -> Result<Lemma21Report> {
    if grid_size == 0 {
        return Err(Error::DomainError("empty direction grid".into()));
    }
    let bounds = radial_bounds(p);
    let ratio = bounds.ratio();
    let mut offset_margin = f64::INFINITY;
    let mut normal_margin = f64::INFINITY;
    for (j, u) in Direction::uniform_grid(grid_size).enumerate() {
        let rho = radial(p, u.vec());
        let off = offset_radial(p, t, &u)?;
        let margin_a = rho + ratio * t - off;
        let margin_b = boundary_normals(p, u.vec())
            .iter()
            .map(|nu| nu.dot(u.vec()).abs())
            .fold(f64::NEG_INFINITY, f64::max)
            - 1.0 / ratio;
        if margin_a < -LEMMA21_TOL || margin_b < -LEMMA21_TOL {
            return Err(Error::CheckFailed(format!(
                "direction #{j} (angle {:.6}): offset margin {margin_a:e}, normal margin {margin_b:e}",
                u.vec().angle()
            )));
        }
        offset_margin = offset_margin.min(margin_a);
        normal_margin = normal_margin.min(margin_b);
    }
    Ok(Lemma21Report {
        t,
        bounds,
        offset_margin,
        normal_margin,
        directions: grid_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn square() -> SymPolygon<f64> {
        SymPolygon::new(vec![
            Vec2::new(1., 1.),
            Vec2::new(-1., 1.),
            Vec2::new(-1., -1.),
            Vec2::new(1., -1.),
        ])
        .unwrap()
    }

    fn diamond() -> SymPolygon<f64> {
        SymPolygon::new(vec![
            Vec2::new(1., 0.),
            Vec2::new(0., 1.),
            Vec2::new(-1., 0.),
            Vec2::new(0., -1.),
        ])
        .unwrap()
    }

    #[test]
    fn support_values() {
        let diag = Vec2::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        assert_eq!(support(&square(), &Vec2::new(1., 0.)), 1.0);
        assert!((support(&square(), &diag) - SQRT_2).abs() < 1e-15);
        // Oracle: the four dot products with the diamond vertices.
        let dots = [diag.x, diag.y, -diag.x, -diag.y];
        let oracle = dots.iter().cloned().fold(f64::MIN, f64::max);
        assert!((support(&diamond(), &diag) - oracle).abs() < 1e-15);
        assert!((oracle - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn radial_values() {
        let diag = Vec2::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
        assert!((radial(&square(), &Vec2::new(1., 0.)) - 1.0).abs() < 1e-15);
        assert!((radial(&square(), &diag) - SQRT_2).abs() < 1e-15);
        assert!((radial(&diamond(), &diag) - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn exact_radial_is_homogeneous() {
        let r = |x: i64, y: i64| Vec2::new(Rational::from_i64(x), Rational::from_i64(y));
        let sq = SymPolygon::new(vec![r(1, 1), r(-1, 1), r(-1, -1), r(1, -1)]).unwrap();
        assert_eq!(radial(&sq, &r(2, 0)), crate::scalar::ratio(1, 2));
        assert_eq!(support(&sq, &r(2, 1)), Rational::from_i64(3));
    }

    #[test]
    fn bounds() {
        let b = radial_bounds(&square());
        assert!((b.r0 - 1.0).abs() < 1e-15 && (b.r1 - SQRT_2).abs() < 1e-15);
        let b = radial_bounds(&diamond());
        assert!((b.r0 - FRAC_1_SQRT_2).abs() < 1e-15 && (b.r1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hausdorff_examples() {
        let sq = square();
        assert_eq!(hausdorff_support_metric(&sq, &sq, 4096).unwrap(), 0.0);
        let big = sq.scaled(2.0).unwrap();
        let d = hausdorff_support_metric(&sq, &big, 4096).unwrap();
        assert!((d - SQRT_2).abs() < 1e-12, "{d}");
        assert!(hausdorff_support_metric(&sq, &big, 16).is_err());
    }

    #[test]
    fn offset_radial_examples() {
        let sq = square();
        let e = Direction::from_angle(0.0);
        assert!((offset_radial(&sq, 1.0, &e).unwrap() - 2.0).abs() < 1e-11);
        let d = Direction::from_angle(std::f64::consts::FRAC_PI_4);
        assert!((offset_radial(&sq, 1.0, &d).unwrap() - (SQRT_2 + 1.0)).abs() < 1e-11);
        let tiny = offset_radial(&sq, 1e-10, &d).unwrap();
        assert!((tiny - radial(&sq, d.vec())).abs() < 1e-9);
        assert!(offset_radial(&sq, 0.0, &d).is_err());
    }

    #[test]
    fn offset_radial_matches_closed_form_on_square_faces() {
        // Off the corners the offset boundary is the translated face x = 1 + t,
        // so λ = (1 + t)/cos θ while the hit point stays on that face.
        let sq = square();
        for k in 0..20 {
            let theta = -0.3 + 0.03 * k as f64;
            let t = 0.5;
            let expect = (1.0 + t) / theta.cos();
            if (expect * theta.sin()).abs() <= 1.0 {
                let got = offset_radial(&sq, t, &Direction::from_angle(theta)).unwrap();
                assert!((got - expect).abs() < 1e-10, "θ={theta}: {got} vs {expect}");
            }
        }
    }

    #[test]
    fn vertex_hits_report_both_normals() {
        let n = boundary_normals(&square(), &Vec2::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2));
        assert_eq!(n.len(), 2);
        let n = boundary_normals(&square(), &Vec2::new(1.0, 0.0));
        assert_eq!(n.len(), 1);
    }

    #[test]
    fn lemma21_square_and_disk_like() {
        let r = lemma21_check(&square(), 0.5, 256).unwrap();
        assert!(r.offset_margin >= 0.0 && r.normal_margin >= 0.0, "{r:?}");
        let disk = SymPolygon::new(
            (0..64)
                .map(|k| Vec2::from_angle(std::f64::consts::TAU * k as f64 / 64.0))
                .collect(),
        )
        .unwrap();
        let r = lemma21_check(&disk, 0.1, 256).unwrap();
        assert!(r.offset_margin >= 0.0 && r.normal_margin >= 0.0, "{r:?}");
        assert!(r.bounds.r0 < r.bounds.r1);
    }
}
