use std::fmt;

use serde::Serialize;

use crate::duality::volume_product;
use crate::error::{Error, Result};
use crate::polygon::{LinMap2, SymPolygon};
use crate::vec2::Vec2;

use super::Tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    InscribeBase,
    Rotate,
    ChordScale,
    DeletePair,
}

impl StepKind {
    pub fn is_linear(self) -> bool {
        !matches!(self, StepKind::DeletePair)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::InscribeBase => "inscribe_base",
            StepKind::Rotate => "rotate",
            StepKind::ChordScale => "chord_scale",
            StepKind::DeletePair => "delete_pair",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "inscribe_base" => StepKind::InscribeBase,
            "rotate" => StepKind::Rotate,
            "chord_scale" => StepKind::ChordScale,
            "delete_pair" => StepKind::DeletePair,
            _ => return None,
        })
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One transformation of the reduction together with the volume product of
/// the polygon before and after it.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStep {
    pub kind: StepKind,
    /// Linear steps only.
    pub matrix: Option<LinMap2<f64>>,
    /// `DeletePair` only: the removed vertex (its antipode goes with it).
    pub deleted: Option<Vec2<f64>>,
    pub product_before: f64,
    pub product_after: f64,
}

impl ReductionStep {
    pub fn linear(kind: StepKind, matrix: LinMap2<f64>, before: f64, after: f64) -> Self {
        Self {
            kind,
            matrix: Some(matrix),
            deleted: None,
            product_before: before,
            product_after: after,
        }
    }

    pub fn deletion(vertex: Vec2<f64>, before: f64, after: f64) -> Self {
        Self {
            kind: StepKind::DeletePair,
            matrix: None,
            deleted: Some(vertex),
            product_before: before,
            product_after: after,
        }
    }
}

/// Trace of a complete reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionCertificate {
    pub input: SymPolygon<f64>,
    pub steps: Vec<ReductionStep>,
    pub final_polygon: SymPolygon<f64>,
    pub final_product: f64,
}

/// Summary returned by [`ReductionCertificate::verify`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CertificateCheck {
    pub input_product: f64,
    pub final_product: f64,
    pub deletions: usize,
    pub linear_steps: usize,
    /// Largest `|after - before|` over linear steps.
    pub worst_linear_drift: f64,
    /// Largest `after - before` over deletions (non-positive when monotone).
    pub worst_monotonicity_margin: f64,
}

/// Tolerance on the final parallelogram's product.
pub const FINAL_PRODUCT_TOL: f64 = 1e-6;

impl ReductionCertificate {
    pub fn deletion_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.kind == StepKind::DeletePair)
            .count()
    }

    /// Volume products along the deletions: the input value followed by the
    /// value after each deletion.
    pub fn product_sequence(&self) -> Vec<f64> {
        let mut seq = Vec::with_capacity(self.deletion_count() + 1);
        seq.push(
            self.steps
                .first()
                .map(|s| s.product_before)
                .unwrap_or(self.final_product),
        );
        seq.extend(
            self.steps
                .iter()
                .filter(|s| s.kind == StepKind::DeletePair)
                .map(|s| s.product_after),
        );
        seq
    }

    /// Checks every certificate invariant: linear steps keep the product,
    /// deletions do not increase it, steps chain, the count of deletions is
    /// `n - 2` and the final product is 8.
    pub fn verify(&self, tol: &Tolerances) -> Result<CertificateCheck> {
        let input_product = volume_product(&self.input)?.product;
        let mut current = input_product;
        let mut worst_linear_drift: f64 = 0.0;
        let mut worst_monotonicity_margin = f64::NEG_INFINITY;
        let mut linear_steps = 0;
        for (i, step) in self.steps.iter().enumerate() {
            if (step.product_before - current).abs() > tol.prod {
                return Err(Error::CheckFailed(format!(
                    "step {i} starts at product {} but the previous step ended at {current}",
                    step.product_before
                )));
            }
            let delta = step.product_after - step.product_before;
            if step.kind.is_linear() {
                linear_steps += 1;
                worst_linear_drift = worst_linear_drift.max(delta.abs());
                if delta.abs() > tol.prod {
                    return Err(Error::CheckFailed(format!(
                        "linear step {i} ({}) changed the product by {delta:e}",
                        step.kind
                    )));
                }
            } else {
                worst_monotonicity_margin = worst_monotonicity_margin.max(delta);
                if delta > tol.prod {
                    return Err(Error::MonotonicityViolated {
                        before: step.product_before,
                        after: step.product_after,
                    });
                }
            }
            current = step.product_after;
        }
        let deletions = self.deletion_count();
        let expected = self.input.pairs() - 2;
        if deletions != expected {
            return Err(Error::CheckFailed(format!(
                "{deletions} deletions recorded, expected {expected}"
            )));
        }
        if self.final_polygon.len() != 4 {
            return Err(Error::CheckFailed(format!(
                "final polygon has {} vertices",
                self.final_polygon.len()
            )));
        }
        if (self.final_product - current).abs() > tol.prod {
            return Err(Error::CheckFailed(format!(
                "final product {} does not match the last step ({current})",
                self.final_product
            )));
        }
        if (self.final_product - 8.0).abs() > FINAL_PRODUCT_TOL {
            return Err(Error::CheckFailed(format!(
                "final product {} is not 8",
                self.final_product
            )));
        }
        Ok(CertificateCheck {
            input_product,
            final_product: self.final_product,
            deletions,
            linear_steps,
            worst_linear_drift,
            worst_monotonicity_margin: if deletions == 0 {
                0.0
            } else {
                worst_monotonicity_margin
            },
        })
    }

    /// Re-executes the steps from the input and returns the polygon before
    /// the first step and after every step.
    pub fn replay(&self) -> Result<Vec<SymPolygon<f64>>> {
        let mut frames = Vec::with_capacity(self.steps.len() + 1);
        let mut cur = self.input.clone();
        frames.push(cur.clone());
        for (i, step) in self.steps.iter().enumerate() {
            cur = match (&step.matrix, &step.deleted) {
                (Some(m), _) if step.kind.is_linear() => cur.apply_linear(m)?,
                (_, Some(v)) if step.kind == StepKind::DeletePair => {
                    let idx = cur.nearest_vertex(v);
                    cur.without_pair(idx)?
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "step {i} ({}) lacks its payload",
                        step.kind
                    )))
                }
            };
            frames.push(cur.clone());
        }
        Ok(frames)
    }
}
