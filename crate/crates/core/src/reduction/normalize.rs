use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use crate::duality::volume_product;
use crate::error::{Error, Result};
use crate::polygon::{LinMap2, SymPolygon};
use crate::vec2::Vec2;

use super::{
    inside_unit_disk, ChordFrame, ChordScaleInterval, CircleFlags, ReductionCertificate,
    ReductionStep, StepKind, Tolerances,
};

/// Linear map sending vertex `i` to `(√2/2, √2/2)` and vertex `i + 1` to
/// `(-√2/2, √2/2)`, so that `±v_i, ±v_{i+1}` become the inscribed square.
///
/// Both pairs are counterclockwise, so the map preserves orientation.
pub fn inscribe_base(p: &SymPolygon<f64>, i: usize) -> Result<(SymPolygon<f64>, LinMap2<f64>)> {
    let a = *p.vertex(i);
    let b = *p.vertex(i + 1);
    let src = LinMap2::new(a.x, b.x, a.y, b.y);
    let h = FRAC_1_SQRT_2;
    let dst = LinMap2::new(h, -h, h, h);
    let map = dst.compose(&src.inverse()?);
    Ok((p.apply_linear(&map)?, map))
}

/// Feasible interval of `u = s²` keeping every vertex inside the disk while
/// `±U, ±W` stay on the circle.
///
/// Under `diag(s, t)` the squared norm of `v` is affine in `u`:
/// `σ u + β` with `σ = vx² - x0² vy² / y0²` and `β = vy² / y0²`.
pub fn chord_scale_interval(p: &SymPolygon<f64>, frame: &ChordFrame) -> Result<ChordScaleInterval> {
    let (x0, y0) = (frame.x0, frame.y0);
    if x0 <= f64::EPSILON || y0 <= f64::EPSILON {
        return Err(Error::DegenerateChord { x0, y0 });
    }
    let chord = frame.chord_vertices(p.len());
    let mut iv = ChordScaleInterval {
        u_lo: 0.0,
        u_hi: 1.0 / (x0 * x0),
        lo_binding: None,
        hi_binding: None,
    };
    let ratio = x0 * x0 / (y0 * y0);
    for (i, v) in p.vertices().iter().enumerate() {
        if chord.contains(&i) {
            continue;
        }
        let sigma = v.x * v.x - ratio * v.y * v.y;
        let beta = v.y * v.y / (y0 * y0);
        if sigma.abs() <= 1e-15 {
            if beta > 1.0 + 1e-12 {
                return Err(Error::EmptyInterval(format!(
                    "vertex {i} lies on the chord's cone outside the circle"
                )));
            }
            continue;
        }
        let bound = (1.0 - beta) / sigma;
        if sigma > 0.0 {
            if bound < iv.u_hi {
                iv.u_hi = bound;
                iv.hi_binding = Some(i);
            }
        } else if bound > iv.u_lo {
            iv.u_lo = bound;
            iv.lo_binding = Some(i);
        }
    }
    if iv.u_hi <= 0.0 || iv.u_lo > iv.u_hi {
        log::warn!("empty chord-scale interval for polygon {p}");
        return Err(Error::EmptyInterval(format!(
            "[{}, {}] for x0 = {x0}, y0 = {y0}",
            iv.u_lo, iv.u_hi
        )));
    }
    Ok(iv)
}

fn chord_scale_map(frame: &ChordFrame, u: f64) -> LinMap2<f64> {
    let s = u.sqrt();
    let t = ((1.0 - u * frame.x0 * frame.x0) / (frame.y0 * frame.y0)).sqrt();
    LinMap2::diag(s, t)
}

/// Applies `diag(√u, t)` after checking `u` against the feasible interval.
pub fn apply_chord_scale(
    p: &SymPolygon<f64>,
    frame: &ChordFrame,
    u: f64,
) -> Result<(SymPolygon<f64>, LinMap2<f64>)> {
    let iv = chord_scale_interval(p, frame)?;
    if !iv.contains(u, 1e-12) || u <= 0.0 {
        return Err(Error::OutOfInterval {
            u,
            lo: iv.u_lo,
            hi: iv.u_hi,
        });
    }
    let map = chord_scale_map(frame, u);
    Ok((p.apply_linear(&map)?, map))
}

/// Runs the normalization with default tolerances.
pub fn normalize_three_on_circle(
    p: &SymPolygon<f64>,
) -> Result<(SymPolygon<f64>, [usize; 3], Vec<ReductionStep>)> {
    Reducer::default().normalize_three_on_circle(p)
}

/// Deletes vertex `c` and its antipode with default tolerances.
pub fn delete_vertex_pair(p: &SymPolygon<f64>, c: usize) -> Result<SymPolygon<f64>> {
    Reducer::default()
        .delete_vertex_pair(p, c)
        .map(|(q, _, _)| q)
}

/// Full reduction with default tolerances.
pub fn reduce_to_parallelogram(p: &SymPolygon<f64>) -> Result<ReductionCertificate> {
    Reducer::default().reduce_to_parallelogram(p)
}

/// Float-mode reduction engine parameterized by its tolerances.
#[derive(Clone, Copy, Debug, Default)]
pub struct Reducer {
    pub tol: Tolerances,
}

/// Polygon being normalized, with its cached product and recorded steps.
struct Run<'a> {
    tol: &'a Tolerances,
    poly: SymPolygon<f64>,
    product: f64,
    steps: Vec<ReductionStep>,
}

impl<'a> Run<'a> {
    fn new(tol: &'a Tolerances, poly: SymPolygon<f64>) -> Result<Self> {
        let product = volume_product(&poly)?.product;
        Ok(Self {
            tol,
            poly,
            product,
            steps: Vec::new(),
        })
    }

    fn push_linear(&mut self, kind: StepKind, map: LinMap2<f64>) -> Result<()> {
        let next = self.poly.apply_linear(&map)?;
        let after = volume_product(&next)?.product;
        if (after - self.product).abs() > self.tol.prod {
            return Err(Error::CheckFailed(format!(
                "{kind} step changed the volume product from {} to {after}",
                self.product
            )));
        }
        self.steps
            .push(ReductionStep::linear(kind, map, self.product, after));
        self.poly = next;
        self.product = after;
        Ok(())
    }

    fn finished(&self) -> Option<[usize; 3]> {
        if !inside_unit_disk(&self.poly, self.tol.circle) {
            return None;
        }
        CircleFlags::of(&self.poly, self.tol.circle).consecutive_triple()
    }

    /// Rotates so the chord from `w` to `u` (counterclockwise) is horizontal
    /// with its midpoint on the positive y-axis.
    fn rotate_to_frame(&mut self, w: usize, u: usize) -> Result<ChordFrame> {
        let (pw, pu) = (*self.poly.vertex(w), *self.poly.vertex(u));
        let mid = (pw + pu) * 0.5;
        let angle = FRAC_PI_2 - mid.angle();
        let rot = LinMap2::rotation(angle);
        let (pw, pu) = (rot.apply(&pw), rot.apply(&pu));
        if !rot.is_identity(1e-15) {
            self.push_linear(StepKind::Rotate, rot)?;
        }
        let w = self.poly.nearest_vertex(&pw);
        let u = self.poly.nearest_vertex(&pu);
        ChordFrame::from_vertices(&self.poly, w, u, self.tol.circle)
    }

    fn chord_scale(&mut self, frame: &ChordFrame, u: f64) -> Result<()> {
        let (pu, pw) = (
            *self.poly.vertex(frame.u_index),
            *self.poly.vertex(frame.w_index),
        );
        let map = chord_scale_map(frame, u);
        self.push_linear(StepKind::ChordScale, map.clone())?;
        let eps = self.tol.circle;
        for v in [map.apply(&pu), map.apply(&pw)] {
            if (v.norm() - 1.0).abs() > eps {
                return Err(Error::CheckFailed(format!(
                    "chord endpoint {v:?} left the unit circle"
                )));
            }
        }
        if !inside_unit_disk(&self.poly, eps) {
            return Err(Error::CheckFailed(
                "chord scaling pushed a vertex outside the unit disk".into(),
            ));
        }
        Ok(())
    }

    /// Second step: from an on-circle pair `w, w + 1`, scale along the chord
    /// until another vertex touches the circle (or, if some vertex is
    /// outside, until the last one comes inside).
    fn first_contact(&mut self, w: usize) -> Result<()> {
        let frame = self.rotate_to_frame(w, w + 1)?;
        let iv = chord_scale_interval(&self.poly, &frame)?;
        let inside = inside_unit_disk(&self.poly, self.tol.circle);
        let target = if inside {
            if iv.lo_binding.is_some() {
                iv.u_lo
            } else if iv.hi_binding.is_some() {
                iv.u_hi
            } else {
                return Err(Error::NoProgress(
                    "no vertex can be brought onto the circle".into(),
                ));
            }
        } else if 1.0 > iv.u_hi {
            iv.u_hi
        } else {
            iv.u_lo
        };
        self.chord_scale(&frame, target)
    }

    /// Third step, repeated: close the smallest gap between on-circle
    /// vertices until three consecutive vertices are on the circle.
    fn close_gaps(&mut self) -> Result<[usize; 3]> {
        let m = self.poly.len();
        let mut last_gap: Option<usize> = None;
        for _ in 0..4 * m {
            if let Some(triple) = self.finished() {
                return Ok(triple);
            }
            let flags = CircleFlags::of(&self.poly, self.tol.circle);
            let on = flags.on_indices();
            if on.len() < 4 {
                return Err(Error::NoProgress(format!(
                    "only {} vertices on the circle",
                    on.len()
                )));
            }
            let mut best: Option<(usize, usize, usize)> = None;
            for (k, &a) in on.iter().enumerate() {
                let b = on[(k + 1) % on.len()];
                let gap = (b + m - a - 1) % m;
                if gap >= 1 && best.is_none_or(|(g, _, _)| gap < g) {
                    best = Some((gap, a, b));
                }
            }
            let (gap, w, u) = best.ok_or_else(|| {
                Error::NoProgress("every on-circle pair is adjacent but no triple found".into())
            })?;
            if let Some(prev) = last_gap {
                if gap >= prev {
                    return Err(Error::NoProgress(format!(
                        "gap did not shrink ({prev} -> {gap})"
                    )));
                }
            }
            last_gap = Some(gap);

            let before: Vec<Vec2<f64>> = on.iter().map(|&i| *self.poly.vertex(i)).collect();
            let frame = self.rotate_to_frame(w, u)?;
            let iv = chord_scale_interval(&self.poly, &frame)?;
            if iv.lo_binding.is_none() {
                return Err(Error::NoProgress(
                    "gap vertices impose no lower bound on the scale".into(),
                ));
            }
            // Track previous contacts through the rotation just applied.
            let rot = self
                .steps
                .last()
                .filter(|s| s.kind == StepKind::Rotate)
                .and_then(|s| s.matrix.clone())
                .unwrap_or_else(LinMap2::identity);
            self.chord_scale(&frame, iv.u_lo)?;
            self.warn_on_lingering_contacts(&before, &rot, &frame);
        }
        Err(Error::NoProgress(format!(
            "iteration cap {} exceeded",
            4 * m
        )))
    }

    /// Contacts outside the active arc are expected to move strictly inside.
    fn warn_on_lingering_contacts(
        &self,
        before: &[Vec2<f64>],
        rot: &LinMap2<f64>,
        frame: &ChordFrame,
    ) {
        let Some(scale) = self.steps.last().and_then(|s| s.matrix.clone()) else {
            return;
        };
        for v in before {
            let r = rot.apply(v);
            if r.y.abs() >= frame.y0 - self.tol.circle {
                continue;
            }
            if (scale.apply(&r).norm() - 1.0).abs() <= self.tol.circle {
                log::warn!("previous contact {v:?} is still on the circle after chord scaling");
            }
        }
    }
}

impl Reducer {
    pub fn new(tol: Tolerances) -> Self {
        Self { tol }
    }

    /// Linear image inside the unit disk with three consecutive vertices on
    /// the circle. Returns the image, the indices of that triple and the
    /// recorded steps; an input that already qualifies yields no steps.
    pub fn normalize_three_on_circle(
        &self,
        p: &SymPolygon<f64>,
    ) -> Result<(SymPolygon<f64>, [usize; 3], Vec<ReductionStep>)> {
        if p.len() < 6 {
            return Err(Error::PreconditionViolated(format!(
                "normalization needs at least 6 vertices, got {}",
                p.len()
            )));
        }
        let mut run = Run::new(&self.tol, p.clone())?;
        if let Some(triple) = run.finished() {
            return Ok((run.poly, triple, run.steps));
        }
        let (_, map) = inscribe_base(&run.poly, 0)?;
        run.push_linear(StepKind::InscribeBase, map)?;
        let w = run
            .poly
            .nearest_vertex(&Vec2::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2));
        self.continue_from_pair(run, w)
    }

    /// Normalization from an adjacent on-circle pair `w, w + 1` of a polygon
    /// already inside the disk, skipping the inscribing step.
    fn continue_from_pair(
        &self,
        mut run: Run<'_>,
        w: usize,
    ) -> Result<(SymPolygon<f64>, [usize; 3], Vec<ReductionStep>)> {
        if let Some(triple) = run.finished() {
            return Ok((run.poly, triple, run.steps));
        }
        run.first_contact(w)?;
        let triple = run.close_gaps()?;
        Ok((run.poly, triple, run.steps))
    }

    /// Removes vertex `c` and its antipode. Returns the smaller polygon and
    /// the products before and after.
    pub fn delete_vertex_pair(
        &self,
        p: &SymPolygon<f64>,
        c: usize,
    ) -> Result<(SymPolygon<f64>, f64, f64)> {
        let eps = self.tol.circle;
        if p.len() <= 4 {
            return Err(Error::PreconditionViolated(
                "a parallelogram has no removable vertex pair".into(),
            ));
        }
        let flags = CircleFlags::of(p, eps);
        let m = p.len();
        if ![c + m - 1, c, c + 1].iter().all(|&i| flags.is_on(i)) {
            return Err(Error::PreconditionViolated(format!(
                "vertex {c} and its neighbours are not all on the unit circle"
            )));
        }
        if !inside_unit_disk(p, eps) {
            return Err(Error::PreconditionViolated(
                "polygon is not inside the unit disk".into(),
            ));
        }
        let before = volume_product(p)?.product;
        let q = p.without_pair(c)?;
        let after = volume_product(&q)?.product;
        if after > before + self.tol.prod {
            return Err(Error::MonotonicityViolated { before, after });
        }
        Ok((q, before, after))
    }

    /// Alternates normalization and deletion until a parallelogram remains.
    pub fn reduce_to_parallelogram(&self, p: &SymPolygon<f64>) -> Result<ReductionCertificate> {
        let mut steps = Vec::new();
        let mut poly = p.clone();
        if poly.len() > 4 {
            let (mut cur, mut triple, first) = self.normalize_three_on_circle(p)?;
            steps.extend(first);
            loop {
                let deleted = *cur.vertex(triple[1]);
                let left = *cur.vertex(triple[0]);
                let (next, before, after) = self.delete_vertex_pair(&cur, triple[1])?;
                steps.push(ReductionStep::deletion(deleted, before, after));
                if next.len() == 4 {
                    poly = next;
                    break;
                }
                let w = next.nearest_vertex(&left);
                let run = Run::new(&self.tol, next)?;
                let (np, nt, more) = self.continue_from_pair(run, w)?;
                steps.extend(more);
                cur = np;
                triple = nt;
            }
        }
        let final_product = volume_product(&poly)?.product;
        Ok(ReductionCertificate {
            input: p.clone(),
            steps,
            final_polygon: poly,
            final_product,
        })
    }
}
