//! Polar polygons, volume products and the linear-invariance identity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polygon::{LinMap2, SymPolygon};
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// Polar polygon `P* = ∩ {x : <x, p_i> <= 1}`.
///
/// The vertex dual to edge `(p_i, p_{i+1})` solves `<q, p_i> = <q, p_{i+1}> = 1`.
pub fn polar<S: Scalar>(p: &SymPolygon<S>) -> Result<SymPolygon<S>> {
    let m = p.len();
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let a = p.vertex(i);
        let b = p.vertex(i + 1);
        let det = a.cross(b);
        if det.is_negligible() {
            return Err(Error::NearParallelConstraints(i, (i + 1) % m));
        }
        out.push(Vec2::new(
            (b.y.clone() - a.y.clone()) / det.clone(),
            (a.x.clone() - b.x.clone()) / det,
        ));
    }
    SymPolygon::new(out)
}

/// Areas of a polygon and of its polar, and their product.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeProductReport<S> {
    pub v: S,
    pub v_star: S,
    pub product: S,
}

pub fn volume_product<S: Scalar>(p: &SymPolygon<S>) -> Result<VolumeProductReport<S>> {
    let v = p.area();
    let v_star = polar(p)?.area();
    let product = v.clone() * v_star.clone();
    Ok(VolumeProductReport { v, v_star, product })
}

/// Outcome of [`polar_transform_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct PolarTransformReport<S> {
    /// `(AP)*`.
    pub polar_of_image: SymPolygon<S>,
    /// `A^{-t} P*`.
    pub image_of_polar: SymPolygon<S>,
    pub product_before: S,
    pub product_after: S,
}

/// Verifies `(AP)* = A^{-t} P*` as canonical vertex sets and that the
/// volume product is unchanged by `A`.
pub fn polar_transform_check<S: Scalar>(
    p: &SymPolygon<S>,
    a: &LinMap2<S>,
) -> Result<PolarTransformReport<S>> {
    let image = p.apply_linear(a)?;
    let polar_of_image = polar(&image)?;
    let image_of_polar = polar(p)?.apply_linear(&a.inverse_transpose()?)?;
    if !polar_of_image.approx_eq(&image_of_polar) {
        return Err(Error::CheckFailed(format!(
            "(AP)* = {polar_of_image} differs from A^-t P* = {image_of_polar}"
        )));
    }
    let product_before = volume_product(p)?.product;
    let product_after = volume_product(&image)?.product;
    if !product_equal(&product_before, &product_after) {
        return Err(Error::CheckFailed(format!(
            "volume product changed from {product_before} to {product_after}"
        )));
    }
    Ok(PolarTransformReport {
        polar_of_image,
        image_of_polar,
        product_before,
        product_after,
    })
}

/// Exact equality, or relative agreement to 1e-9 in float mode.
fn product_equal<S: Scalar>(a: &S, b: &S) -> bool {
    if S::EXACT {
        a == b
    } else {
        let (a, b) = (a.to_f64(), b.to_f64());
        (a - b).abs() <= 1e-9 * a.abs().max(1.0)
    }
}
