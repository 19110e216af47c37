use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Point or vector of the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vec2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Vec2<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero())
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    /// z-component of the 3D cross product; positive when `o` is
    /// counterclockwise from `self`.
    pub fn cross(&self, o: &Self) -> S {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn norm2(&self) -> S {
        self.dot(self)
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    /// Componentwise equality in the mode's tolerance.
    pub fn approx_eq(&self, o: &Self) -> bool {
        self.x.approx_eq(&o.x) && self.y.approx_eq(&o.y)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_negligible() && self.y.is_negligible()
    }

    /// Upper half `[0, π)` gets 0, lower half `[π, 2π)` gets 1.
    pub(crate) fn half_plane(&self) -> u8 {
        let zero = S::zero();
        if self.y > zero || (self.y == zero && self.x > zero) {
            0
        } else {
            1
        }
    }

    /// Total order by polar angle in `[0, 2π)`, ties broken by norm.
    pub fn angle_cmp(&self, o: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let (ha, hb) = (self.half_plane(), o.half_plane());
        if ha != hb {
            return ha.cmp(&hb);
        }
        let c = self.cross(o);
        let zero = S::zero();
        if c > zero {
            Ordering::Less
        } else if c < zero {
            Ordering::Greater
        } else {
            self.norm2()
                .partial_cmp(&o.norm2())
                .unwrap_or(Ordering::Equal)
        }
    }

    pub fn to_f64(&self) -> Vec2<f64> {
        Vec2::new(self.x.to_f64(), self.y.to_f64())
    }
}

impl Vec2<f64> {
    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn from_angle(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin())
    }

    pub fn angle(&self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn dist(&self, o: &Self) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }
}

impl<S: Scalar> Add for Vec2<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<S: Scalar> Sub for Vec2<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<S: Scalar> Neg for Vec2<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl<S: Scalar> Mul<S> for Vec2<S> {
    type Output = Self;
    fn mul(self, k: S) -> Self {
        Self::new(self.x * k.clone(), self.y * k)
    }
}

/// Unit direction on the circle (float mode).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction(Vec2<f64>);

impl Direction {
    pub fn from_angle(theta: f64) -> Self {
        Self(Vec2::from_angle(theta))
    }

    /// Normalizes a nonzero vector.
    pub fn normalize(v: Vec2<f64>) -> Option<Self> {
        let n = v.norm();
        if n <= crate::scalar::EPS_GEOM || !n.is_finite() {
            return None;
        }
        Some(Self(Vec2::new(v.x / n, v.y / n)))
    }

    pub fn vec(&self) -> &Vec2<f64> {
        &self.0
    }

    /// `count` directions spaced `2π / count` apart, starting at angle 0.
    pub fn uniform_grid(count: usize) -> impl Iterator<Item = Direction> {
        (0..count)
            .map(move |j| Direction::from_angle(std::f64::consts::TAU * j as f64 / count as f64))
    }
}

impl Copy for Vec2<f64> {}
