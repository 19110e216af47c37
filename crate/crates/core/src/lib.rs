//! Polar duality and volume products of origin-symmetric convex polygons,
//! with a certified reduction of any such polygon to a parallelogram.
//!
//! Every polygon type is generic over [`Scalar`]: `f64` for speed, or
//! [`Rational`] where results must be exact.
//!
//! ```
//! use mahler_core::{volume_product, SymPolygon, Vec2};
//!
//! let square = SymPolygon::new(vec![
//!     Vec2::new(1.0, 1.0),
//!     Vec2::new(-1.0, 1.0),
//!     Vec2::new(-1.0, -1.0),
//!     Vec2::new(1.0, -1.0),
//! ])?;
//! assert_eq!(volume_product(&square)?.product, 8.0);
//! # Ok::<(), mahler_core::Error>(())
//! ```

pub mod approximation;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod hull;
pub mod io;
pub mod polygon;
pub mod reduction;
pub mod scalar;
pub mod support;
pub mod vec2;

pub use approximation::{continuity_experiment, inscribe_polygon, SampledBody};
pub use duality::{polar, polar_transform_check, volume_product, VolumeProductReport};
pub use error::{Error, Result};
pub use io::AnyPolygon;
pub use polygon::{LinMap2, SymPolygon};
pub use reduction::{reduce_to_parallelogram, ReductionCertificate, Tolerances};
pub use scalar::{Rational, Scalar};
pub use support::{hausdorff_support_metric, radial, support};
pub use vec2::{Direction, Vec2};
