//! Certified reduction of a symmetric polygon to a parallelogram.
//!
//! The polygon is first moved by linear maps into the unit disk until three
//! consecutive vertices lie on the circle; then the middle vertex and its
//! antipode are deleted, which cannot increase the volume product. Repeating
//! this until four vertices remain yields a [`ReductionCertificate`]: a
//! sequence of product-preserving maps and product-non-increasing deletions
//! ending at a parallelogram (product 8).

mod certificate;
mod lemma33;
mod normalize;

pub use certificate::{CertificateCheck, ReductionCertificate, ReductionStep, StepKind};
pub use lemma33::{
    circular_segment_area, cubic_margin, f_geometric_crosscheck, lemma33_chain_check,
    lemma33_formulas, segment_bound_margin, theta_range, ChainMargin, ChainReport,
    CrosscheckReport, Lemma33Record, CHAIN_TOL, CROSSCHECK_TOL,
};
pub use normalize::{
    apply_chord_scale, chord_scale_interval, delete_vertex_pair, inscribe_base,
    normalize_three_on_circle, reduce_to_parallelogram, Reducer,
};

use crate::error::{Error, Result};
use crate::polygon::SymPolygon;
use crate::vec2::Vec2;

/// Default on-circle classification tolerance.
pub const EPS_CIRCLE: f64 = 1e-9;
/// Default tolerance for volume-product comparisons along a pipeline.
pub const EPS_PROD: f64 = 1e-7;

/// Tolerances used by the float-mode reduction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub circle: f64,
    pub prod: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            circle: EPS_CIRCLE,
            prod: EPS_PROD,
        }
    }
}

impl Tolerances {
    /// Defaults, with `MAHLER_EPS` overriding the circle tolerance.
    /// Intended for tests that probe misclassification.
    pub fn from_env() -> Self {
        let mut tol = Self::default();
        if let Some(eps) = std::env::var("MAHLER_EPS")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|e| e.is_finite() && *e > 0.0)
        {
            tol.circle = eps;
        }
        tol
    }
}

/// Per-vertex `| |v| - 1 | <= eps` flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleFlags(Vec<bool>);

impl CircleFlags {
    pub fn of(p: &SymPolygon<f64>, eps: f64) -> Self {
        Self(
            p.vertices()
                .iter()
                .map(|v| (v.norm() - 1.0).abs() <= eps)
                .collect(),
        )
    }

    pub fn is_on(&self, i: usize) -> bool {
        self.0[i % self.0.len()]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn on_indices(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i]).collect()
    }

    /// First `(j-1, j, j+1)` with all three flagged, scanning `j` upward.
    pub fn consecutive_triple(&self) -> Option<[usize; 3]> {
        let m = self.0.len();
        (0..m)
            .map(|j| [(j + m - 1) % m, j, (j + 1) % m])
            .find(|t| t.iter().all(|&i| self.0[i]))
    }
}

/// All vertex norms at most `1 + eps`.
pub fn inside_unit_disk(p: &SymPolygon<f64>, eps: f64) -> bool {
    p.vertices().iter().all(|v| v.norm() <= 1.0 + eps)
}

/// Horizontal chord `U = (-x0, y0)`, `W = (x0, y0)` of the unit circle
/// spanned by two polygon vertices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChordFrame {
    pub x0: f64,
    pub y0: f64,
    /// Index of `U = (-x0, y0)`.
    pub u_index: usize,
    /// Index of `W = (x0, y0)`.
    pub w_index: usize,
}

impl ChordFrame {
    /// Reads the frame off vertices `w_index` (right) and `u_index` (left)
    /// of an already rotated polygon.
    pub fn from_vertices(
        p: &SymPolygon<f64>,
        w_index: usize,
        u_index: usize,
        eps: f64,
    ) -> Result<Self> {
        let w = p.vertex(w_index);
        let u = p.vertex(u_index);
        let x0 = 0.5 * (w.x - u.x);
        let y0 = 0.5 * (w.y + u.y);
        if x0 <= eps || y0 <= eps {
            return Err(Error::DegenerateChord { x0, y0 });
        }
        let slack = 1e3 * eps.max(f64::EPSILON);
        if (w.y - u.y).abs() > slack || (w.x + u.x).abs() > slack {
            return Err(Error::PreconditionViolated(format!(
                "chord {u:?} -> {w:?} is not horizontal and centred"
            )));
        }
        if ((x0 * x0 + y0 * y0).sqrt() - 1.0).abs() > eps {
            return Err(Error::PreconditionViolated(format!(
                "chord endpoints off the unit circle (x0 = {x0}, y0 = {y0})"
            )));
        }
        Ok(Self {
            x0,
            y0,
            u_index: u_index % p.len(),
            w_index: w_index % p.len(),
        })
    }

    /// Locates `A = (-x0, y0)` and `B = (x0, y0)` among the vertices of `p`.
    pub fn locate(p: &SymPolygon<f64>, x0: f64, y0: f64, eps: f64) -> Result<Self> {
        let w = p.nearest_vertex(&Vec2::new(x0, y0));
        let u = p.nearest_vertex(&Vec2::new(-x0, y0));
        let frame = Self::from_vertices(p, w, u, eps)?;
        if (frame.x0 - x0).abs() > 1e3 * eps || (frame.y0 - y0).abs() > 1e3 * eps {
            return Err(Error::PreconditionViolated(format!(
                "no vertices at (±{x0}, {y0})"
            )));
        }
        Ok(frame)
    }

    /// `u` and `w` together with their antipodes.
    pub(crate) fn chord_vertices(&self, m: usize) -> [usize; 4] {
        let n = m / 2;
        [
            self.u_index,
            self.w_index,
            (self.u_index + n) % m,
            (self.w_index + n) % m,
        ]
    }
}

/// Admissible values of `u = s²` for the chord-preserving map
/// `diag(s, t)`, `t² = (1 - u x0²) / y0²`.
///
/// A missing binding index marks an open end: `u_lo = 0` when no vertex
/// bounds `u` from below, `u_hi = 1/x0²` when none bounds it from above.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChordScaleInterval {
    pub u_lo: f64,
    pub u_hi: f64,
    pub lo_binding: Option<usize>,
    pub hi_binding: Option<usize>,
}

impl ChordScaleInterval {
    pub fn contains(&self, u: f64, slack: f64) -> bool {
        u >= self.u_lo - slack && u <= self.u_hi + slack
    }
}
