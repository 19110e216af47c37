//! Seeded random polygons and corpus-wide checks.
//!
//! Polygon `i` of a corpus is drawn from its own ChaCha stream
//! (`seed`, stream `i`), so results do not depend on thread scheduling or
//! on how many polygons were drawn before it.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::duality::volume_product;
use crate::error::{Error, Result};
use crate::hull::strict_convex_hull;
use crate::polygon::SymPolygon;
use crate::reduction::{ChordFrame, Reducer, Tolerances};
use crate::scalar::{ratio, Rational, EPS_GEOM};
use crate::vec2::Vec2;

/// Draws that fail validation are retried this many times.
pub const MAX_RETRIES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorpusConfig {
    pub count: usize,
    /// Inclusive range of vertex pairs, so `2 * min ..= 2 * max` vertices.
    pub min_pairs: usize,
    pub max_pairs: usize,
    pub seed: u64,
    /// Radii are drawn from `[1 - radius_jitter, 1]`.
    pub radius_jitter: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self {
            count: 10_000,
            min_pairs: 3,
            max_pairs: 20,
            seed: 0x6d61_686c,
            radius_jitter: 0.1,
        }
    }
}

impl CorpusConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_pairs < 2 || self.min_pairs > self.max_pairs {
            return Err(Error::DomainError(format!(
                "pair range {}..={} is invalid",
                self.min_pairs, self.max_pairs
            )));
        }
        if !(0.0..1.0).contains(&self.radius_jitter) {
            return Err(Error::DomainError(format!(
                "radius jitter {} outside [0, 1)",
                self.radius_jitter
            )));
        }
        Ok(())
    }

    fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

/// `n` sorted angles in `[0, π)` at least `π / (8n)` apart.
fn separated_angles(rng: &mut ChaCha8Rng, n: usize) -> Option<Vec<f64>> {
    let min_gap = PI / (8.0 * n as f64);
    let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..PI)).collect();
    angles.sort_by(f64::total_cmp);
    let ok = angles.windows(2).all(|w| w[1] - w[0] >= min_gap)
        && angles[0] + PI - angles[n - 1] >= min_gap;
    ok.then_some(angles)
}

fn draw(config: &CorpusConfig, rng: &mut ChaCha8Rng) -> Option<SymPolygon<f64>> {
    let n = rng.random_range(config.min_pairs..=config.max_pairs);
    let angles = separated_angles(rng, n)?;
    let lo = 1.0 - config.radius_jitter;
    let mut pts: Vec<Vec2<f64>> = angles
        .iter()
        .map(|&a| {
            let r = if config.radius_jitter > 0.0 {
                rng.random_range(lo..=1.0)
            } else {
                1.0
            };
            Vec2::from_angle(a) * r
        })
        .collect();
    let anti: Vec<Vec2<f64>> = pts.iter().map(|p| -*p).collect();
    pts.extend(anti);
    let hull = strict_convex_hull(&pts, EPS_GEOM);
    if hull.len() < 2 * config.min_pairs {
        return None;
    }
    SymPolygon::new(hull).ok()
}

/// Polygon `index` of the corpus: `n` angles, jittered radii, antipodes,
/// convex hull. Vertices swallowed by the hull are dropped, so the result
/// may have fewer than `2n` vertices but never fewer than `2 * min_pairs`.
pub fn generate_random_polygon(config: &CorpusConfig, index: usize) -> Result<SymPolygon<f64>> {
    config.validate()?;
    let mut rng = config.rng(index);
    (0..MAX_RETRIES)
        .find_map(|_| draw(config, &mut rng))
        .ok_or(Error::DegenerateDraw(index))
}

/// Random polygon with coordinates `k / denominator`, validated in exact
/// arithmetic.
pub fn generate_rational_polygon(
    config: &CorpusConfig,
    index: usize,
    denominator: i64,
) -> Result<SymPolygon<Rational>> {
    config.validate()?;
    let mut rng = config.rng(index);
    let round = |v: f64| ratio((v * denominator as f64).round() as i64, denominator);
    for _ in 0..MAX_RETRIES {
        let Some(p) = draw(config, &mut rng) else {
            continue;
        };
        let half = &p.vertices()[..p.pairs()];
        let mut pts: Vec<Vec2<Rational>> = half
            .iter()
            .map(|v| Vec2::new(round(v.x), round(v.y)))
            .collect();
        let anti: Vec<Vec2<Rational>> = pts.iter().map(|v| -v.clone()).collect();
        pts.extend(anti);
        if let Ok(q) = SymPolygon::new(pts) {
            if q.len() >= 2 * config.min_pairs {
                return Ok(q);
            }
        }
    }
    Err(Error::DegenerateDraw(index))
}

/// A polygon inside the unit disk whose top edge is the chord from
/// `(x0, y0)` to `(-x0, y0)`, together with its frame.
#[derive(Clone, Debug, PartialEq)]
pub struct ChordConfiguration {
    pub polygon: SymPolygon<f64>,
    pub frame: ChordFrame,
}

/// Chord configuration `index`: `x0` uniform in `[0.05, 0.98]` and up to
/// `extra` further vertex pairs on the arc from `A` to `-B`, with radii in
/// `[1 - radius_jitter, 1]`.
pub fn generate_chord_configuration(
    config: &CorpusConfig,
    index: usize,
    extra: usize,
) -> Result<ChordConfiguration> {
    let mut rng = config.rng(index);
    for _ in 0..MAX_RETRIES {
        let x0: f64 = rng.random_range(0.05..=0.98);
        let y0 = (1.0 - x0 * x0).sqrt();
        let a_angle = PI - (y0 / x0).atan();
        let span = 2.0 * (y0 / x0).atan();
        let b = Vec2::new(x0, y0);
        let a = Vec2::new(-x0, y0);
        let mut pts = vec![b, a];
        for _ in 0..extra {
            let t: f64 = rng.random_range(0.02..0.98);
            let r = rng.random_range((1.0 - config.radius_jitter)..=1.0);
            pts.push(Vec2::from_angle(a_angle + t * span) * r);
        }
        let anti: Vec<Vec2<f64>> = pts.iter().map(|p| -*p).collect();
        pts.extend(anti);
        let hull = strict_convex_hull(&pts, EPS_GEOM);
        let Ok(polygon) = SymPolygon::new(hull) else {
            continue;
        };
        if let Ok(frame) = ChordFrame::locate(&polygon, x0, y0, 1e-9) {
            if (frame.w_index + 1) % polygon.len() == frame.u_index {
                return Ok(ChordConfiguration { polygon, frame });
            }
        }
    }
    Err(Error::DegenerateDraw(index))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusFailure {
    pub index: usize,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub count: usize,
    pub min_product: f64,
    pub argmin: usize,
    pub max_product: f64,
    pub mean_product: f64,
    pub min_vertices: usize,
    pub max_vertices: usize,
    /// Largest `after - before` over all certified deletions, when the
    /// reduction was run.
    pub worst_monotonicity_margin: Option<f64>,
    pub failures: Vec<CorpusFailure>,
}

struct Sample {
    vertices: usize,
    product: f64,
    margin: Option<f64>,
}

fn check_one(config: &CorpusConfig, index: usize, certify: Option<&Reducer>) -> Result<Sample> {
    let p = generate_random_polygon(config, index)?;
    let product = volume_product(&p)?.product;
    let margin = match certify {
        Some(reducer) => {
            let cert = reducer.reduce_to_parallelogram(&p)?;
            Some(cert.verify(&reducer.tol)?.worst_monotonicity_margin)
        }
        None => None,
    };
    Ok(Sample {
        vertices: p.len(),
        product,
        margin,
    })
}

/// Draws the corpus in parallel and summarizes the volume products.
/// With `certify`, every polygon is also reduced under those tolerances and
/// its certificate verified; any error is recorded as a failure rather than
/// aborting. Results are gathered in index order.
pub fn corpus_verify(config: &CorpusConfig, certify: Option<Tolerances>) -> CorpusSummary {
    let reducer = certify.map(Reducer::new);
    let results: Vec<Result<Sample>> = (0..config.count)
        .into_par_iter()
        .map(|i| check_one(config, i, reducer.as_ref()))
        .collect();
    let mut summary = CorpusSummary {
        count: config.count,
        min_product: f64::INFINITY,
        argmin: 0,
        max_product: f64::NEG_INFINITY,
        mean_product: 0.0,
        min_vertices: usize::MAX,
        max_vertices: 0,
        worst_monotonicity_margin: None,
        failures: Vec::new(),
    };
    let mut sum = 0.0;
    let mut ok = 0usize;
    for (index, r) in results.into_iter().enumerate() {
        match r {
            Ok(s) => {
                ok += 1;
                sum += s.product;
                if s.product < summary.min_product {
                    summary.min_product = s.product;
                    summary.argmin = index;
                }
                summary.max_product = summary.max_product.max(s.product);
                summary.min_vertices = summary.min_vertices.min(s.vertices);
                summary.max_vertices = summary.max_vertices.max(s.vertices);
                if let Some(m) = s.margin {
                    let worst = summary.worst_monotonicity_margin.get_or_insert(m);
                    *worst = worst.max(m);
                }
            }
            Err(e) => summary.failures.push(CorpusFailure {
                index,
                error: e.to_string(),
            }),
        }
    }
    if ok > 0 {
        summary.mean_product = sum / ok as f64;
    }
    summary
}
