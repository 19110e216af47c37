//! Origin-symmetric convex polygons and planar linear maps.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// Strictly convex polygon with `vertices[i + n] == -vertices[i]`.
///
/// Vertices are stored counterclockwise in canonical order: the list starts
/// at the vertex with maximal polar angle in `[0, 2π)`. Two polygons with the
/// same vertex set therefore compare equal element by element.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPolygon<S> {
    vertices: Vec<Vec2<S>>,
}

impl<S: Scalar> SymPolygon<S> {
    /// Validates a raw vertex list (any starting vertex, either orientation,
    /// or even unordered points in convex position) and canonicalizes it.
    pub fn new(raw: Vec<Vec2<S>>) -> Result<Self> {
        let m = raw.len();
        if m == 0 {
            return Err(Error::TooFewVertices(0));
        }
        if m % 2 == 1 {
            return Err(Error::NotSymmetric(format!("odd vertex count {m}")));
        }
        if m < 4 {
            return Err(Error::TooFewVertices(m));
        }
        if let Some(i) = raw.iter().position(Vec2::is_zero) {
            return Err(Error::NotConvex(i));
        }
        let mut v = raw;
        v.sort_by(|a, b| a.angle_cmp(b));
        let n = m / 2;
        for i in 0..n {
            let anti = -v[i].clone();
            if !v[i + n].approx_eq(&anti) {
                return Err(Error::NotSymmetric(format!(
                    "vertex {:?} has no antipode",
                    v[i].to_f64()
                )));
            }
        }
        // Float inputs are symmetrized so later stages see exact antipodes.
        for i in 0..n {
            v[i + n] = -v[i].clone();
        }
        check_strict_convexity(&v)?;
        // Rotate so the maximal-angle vertex comes first.
        v.rotate_right(1);
        Ok(Self { vertices: v })
    }

    pub fn vertices(&self) -> &[Vec2<S>] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vec2<S>> {
        self.vertices
    }

    /// Total vertex count `2n`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Number of antipodal vertex pairs `n`.
    pub fn pairs(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex at a cyclic index.
    pub fn vertex(&self, i: usize) -> &Vec2<S> {
        &self.vertices[i % self.vertices.len()]
    }

    /// Edges `(v_i, v_{i+1})` in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (&Vec2<S>, &Vec2<S>)> {
        let m = self.vertices.len();
        (0..m).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % m]))
    }

    /// Shoelace area; exact in exact mode.
    pub fn area(&self) -> S {
        let twice = self.edges().fold(S::zero(), |acc, (a, b)| acc + a.cross(b));
        twice * S::half()
    }

    /// Image under `a`, re-canonicalized (orientation restored when `det < 0`).
    pub fn apply_linear(&self, a: &LinMap2<S>) -> Result<Self> {
        a.ensure_invertible()?;
        Self::new(self.vertices.iter().map(|v| a.apply(v)).collect())
    }

    /// Uniform scaling by `k > 0`.
    pub fn scaled(&self, k: S) -> Result<Self> {
        self.apply_linear(&LinMap2::diag(k.clone(), k))
    }

    /// Removes vertex `i` and its antipode, re-validating the remainder.
    pub fn without_pair(&self, i: usize) -> Result<Self> {
        let m = self.len();
        let n = self.pairs();
        if m <= 4 {
            return Err(Error::PreconditionViolated(
                "removing a vertex pair from a parallelogram leaves a segment".into(),
            ));
        }
        let (i, j) = (i % m, (i + n) % m);
        let rest = self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != j)
            .map(|(_, v)| v.clone())
            .collect();
        Self::new(rest)
    }

    /// Whether `p` satisfies every edge inequality (boundary included).
    pub fn contains_point(&self, p: &Vec2<S>) -> bool {
        self.edges().all(|(a, b)| {
            let c = (b.clone() - a.clone()).cross(&(p.clone() - a.clone()));
            !c.is_negative()
        })
    }

    /// `self ⊆ other`, decided vertex by vertex against the edges of `other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.vertices.iter().all(|v| other.contains_point(v))
    }

    /// Vertex-set equality in the mode's tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self
                .vertices
                .iter()
                .zip(&other.vertices)
                .all(|(a, b)| a.approx_eq(b))
    }

    pub fn to_f64(&self) -> SymPolygon<f64> {
        SymPolygon {
            vertices: self.vertices.iter().map(Vec2::to_f64).collect(),
        }
    }
}

impl SymPolygon<f64> {
    /// Index of the vertex closest to `p`.
    pub fn nearest_vertex(&self, p: &Vec2<f64>) -> usize {
        self.vertices
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.dist(p).total_cmp(&b.dist(p)))
            .map(|(i, _)| i)
            .unwrap_or(0)
    }

    /// Exact rational copy of the float coordinates.
    pub fn to_exact(&self) -> Result<SymPolygon<crate::scalar::Rational>> {
        let verts = self
            .vertices
            .iter()
            .map(|v| {
                let x = crate::scalar::rational_from_f64(v.x);
                let y = crate::scalar::rational_from_f64(v.y);
                match (x, y) {
                    (Some(x), Some(y)) => Ok(Vec2::new(x, y)),
                    _ => Err(Error::Parse("non-finite coordinate".into())),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SymPolygon::new(verts)
    }

    /// Euclidean distance from `p` to the polygon (zero inside).
    pub fn distance_to_point(&self, p: &Vec2<f64>) -> f64 {
        if self.contains_point(p) {
            return 0.0;
        }
        self.edges()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn point_segment_distance(p: &Vec2<f64>, a: &Vec2<f64>, b: &Vec2<f64>) -> f64 {
    let d = *b - *a;
    let len2 = d.norm2();
    let s = if len2 > 0.0 {
        ((*p - *a).dot(&d) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    p.dist(&(*a + d * s))
}

fn check_strict_convexity<S: Scalar>(v: &[Vec2<S>]) -> Result<()> {
    let m = v.len();
    for i in 0..m {
        let a = &v[i];
        let b = &v[(i + 1) % m];
        let c = &v[(i + 2) % m];
        let turn = (b.clone() - a.clone()).cross(&(c.clone() - b.clone()));
        if turn.is_negligible() {
            return Err(Error::CollinearVertices((i + 1) % m));
        }
        if turn < S::zero() {
            return Err(Error::NotConvex((i + 1) % m));
        }
        // Consecutive vertices must also turn counterclockwise around the
        // origin, otherwise the angular sort wrapped around a non-convex set.
        if !a.cross(b).is_positive() {
            return Err(Error::NotConvex(i));
        }
    }
    Ok(())
}

impl<S: Scalar> fmt::Display for SymPolygon<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", v.x, v.y)?;
        }
        write!(f, "]")
    }
}

/// Invertible 2×2 matrix `[[a11, a12], [a21, a22]]` acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct LinMap2<S> {
    pub a11: S,
    pub a12: S,
    pub a21: S,
    pub a22: S,
}

impl<S: Scalar> LinMap2<S> {
    pub fn new(a11: S, a12: S, a21: S, a22: S) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        Self::diag(S::one(), S::one())
    }

    pub fn diag(d1: S, d2: S) -> Self {
        Self::new(d1, S::zero(), S::zero(), d2)
    }

    pub fn det(&self) -> S {
        self.a11.clone() * self.a22.clone() - self.a12.clone() * self.a21.clone()
    }

    pub fn ensure_invertible(&self) -> Result<()> {
        if self.det().is_negligible() {
            Err(Error::SingularMap(self.det().to_f64()))
        } else {
            Ok(())
        }
    }

    pub fn apply(&self, v: &Vec2<S>) -> Vec2<S> {
        Vec2::new(
            self.a11.clone() * v.x.clone() + self.a12.clone() * v.y.clone(),
            self.a21.clone() * v.x.clone() + self.a22.clone() * v.y.clone(),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::new(
            self.a11.clone(),
            self.a21.clone(),
            self.a12.clone(),
            self.a22.clone(),
        )
    }

    pub fn inverse(&self) -> Result<Self> {
        self.ensure_invertible()?;
        let d = self.det();
        Ok(Self::new(
            self.a22.clone() / d.clone(),
            -self.a12.clone() / d.clone(),
            -self.a21.clone() / d.clone(),
            self.a11.clone() / d,
        ))
    }

    /// `A^{-t}`, the map carrying polars along with `A`.
    pub fn inverse_transpose(&self) -> Result<Self> {
        Ok(self.inverse()?.transpose())
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Self) -> Self {
        let (a, b) = (self, rhs);
        Self::new(
            a.a11.clone() * b.a11.clone() + a.a12.clone() * b.a21.clone(),
            a.a11.clone() * b.a12.clone() + a.a12.clone() * b.a22.clone(),
            a.a21.clone() * b.a11.clone() + a.a22.clone() * b.a21.clone(),
            a.a21.clone() * b.a12.clone() + a.a22.clone() * b.a22.clone(),
        )
    }

    pub fn rows(&self) -> [[S; 2]; 2] {
        [
            [self.a11.clone(), self.a12.clone()],
            [self.a21.clone(), self.a22.clone()],
        ]
    }
}

impl LinMap2<f64> {
    /// Counterclockwise rotation by `angle` radians.
    pub fn rotation(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c, -s, s, c)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.a11 - 1.0).abs() <= tol
            && self.a12.abs() <= tol
            && self.a21.abs() <= tol
            && (self.a22 - 1.0).abs() <= tol
    }
}
