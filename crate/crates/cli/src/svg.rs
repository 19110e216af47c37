//! Deterministic SVG scenes: unit circle, polygon, optional polar, and
//! vertex markers coloured by whether they sit on the circle.

use std::fmt::Write;

use mahler_core::reduction::{CircleFlags, EPS_CIRCLE};
use mahler_core::{polar, SymPolygon};

/// Half-width of the square view box.
pub const VIEW: f64 = 1.6;
const MARKER: f64 = 0.04;
const ON_CIRCLE: &str = "#d62728";
const OFF_CIRCLE: &str = "#1f77b4";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SvgOptions {
    pub show_polar: bool,
    /// On-circle classification tolerance for the markers.
    pub eps_circle: f64,
    /// Pixel width and height.
    pub size: u32,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            show_polar: false,
            eps_circle: EPS_CIRCLE,
            size: 480,
        }
    }
}

fn path(p: &SymPolygon<f64>, stroke: &str, fill: &str) -> String {
    let mut d = String::new();
    for (i, v) in p.vertices().iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        write!(d, "{cmd}{:.6} {:.6} ", v.x, -v.y).unwrap();
    }
    d.push('Z');
    format!(
        r#"<path d="{d}" fill="{fill}" stroke="{stroke}" stroke-width="0.012" stroke-linejoin="round"/>"#
    )
}

/// Renders `p` with the y axis pointing up. A polar larger than the view
/// box is clipped.
pub fn render_svg(p: &SymPolygon<f64>, options: &SvgOptions) -> String {
    let mut out = String::new();
    let side = 2.0 * VIEW;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="{o} {o} {side} {side}">"#,
        s = options.size,
        o = -VIEW,
    )
    .unwrap();
    writeln!(
        out,
        r##"<rect x="{o}" y="{o}" width="{side}" height="{side}" fill="#ffffff"/>"##,
        o = -VIEW
    )
    .unwrap();
    writeln!(
        out,
        r##"<circle cx="0" cy="0" r="1" fill="none" stroke="#999999" stroke-width="0.008"/>"##
    )
    .unwrap();
    writeln!(out, "{}", path(p, "#222222", "#c7d7e8")).unwrap();
    if options.show_polar {
        if let Ok(dual) = polar(p) {
            writeln!(out, "{}", path(&dual, "#2ca02c", "none")).unwrap();
        }
    }
    let flags = CircleFlags::of(p, options.eps_circle);
    for (i, v) in p.vertices().iter().enumerate() {
        let colour = if flags.is_on(i) {
            ON_CIRCLE
        } else {
            OFF_CIRCLE
        };
        writeln!(
            out,
            r#"<rect x="{:.6}" y="{:.6}" width="{MARKER}" height="{MARKER}" fill="{colour}"/>"#,
            v.x - MARKER / 2.0,
            -v.y - MARKER / 2.0,
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mahler_core::Vec2;

    fn square() -> SymPolygon<f64> {
        SymPolygon::new(vec![
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
        ])
        .unwrap()
    }

    #[test]
    fn element_counts() {
        let plain = render_svg(&square(), &SvgOptions::default());
        assert_eq!(plain.matches("<circle").count(), 1);
        assert_eq!(plain.matches("<path").count(), 1);
        let with_polar = render_svg(
            &square(),
            &SvgOptions {
                show_polar: true,
                ..SvgOptions::default()
            },
        );
        assert_eq!(with_polar.matches("<circle").count(), 1);
        assert_eq!(with_polar.matches("<path").count(), 2);
        assert!(plain.contains(r#"viewBox="-1.6 -1.6 3.2 3.2""#));
    }

    #[test]
    fn markers_follow_the_circle_flag() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = SymPolygon::new(vec![
            Vec2::new(h, h),
            Vec2::new(0.0, 0.9),
            Vec2::new(-h, h),
            Vec2::new(-h, -h),
            Vec2::new(0.0, -0.9),
            Vec2::new(h, -h),
        ])
        .unwrap();
        let svg = render_svg(&p, &SvgOptions::default());
        assert_eq!(svg.matches(ON_CIRCLE).count(), 4);
        assert_eq!(svg.matches(OFF_CIRCLE).count(), 2);
    }

    #[test]
    fn output_is_deterministic() {
        let a = render_svg(&square(), &SvgOptions::default());
        let b = render_svg(&square(), &SvgOptions::default());
        assert_eq!(a, b);
    }
}
