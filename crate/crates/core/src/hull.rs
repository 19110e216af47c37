use crate::vec2::Vec2;

/// Convex hull (Andrew's monotone chain) in counterclockwise order.
///
/// Points closer than `eps` are merged and vertices whose turn is within
/// `eps` of zero are dropped, so every returned vertex is strictly extreme.
pub fn strict_convex_hull(points: &[Vec2<f64>], eps: f64) -> Vec<Vec2<f64>> {
    let mut pts: Vec<Vec2<f64>> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.dist(b) <= eps);
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &Vec2<f64>, a: &Vec2<f64>, b: &Vec2<f64>| (*a - *o).cross(&(*b - *o));
    let mut lower: Vec<Vec2<f64>> = Vec::with_capacity(pts.len());
    for p in &pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= eps {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<Vec2<f64>> = Vec::with_capacity(pts.len());
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= eps {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // The chain's endpoints can still coincide within eps.
    if lower.len() > 1 && lower[0].dist(&lower[lower.len() - 1]) <= eps {
        lower.pop();
    }
    lower
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drops_interior_and_collinear_points() {
        let pts = vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(2.0, 2.0),
            Vec2::new(0.0, 2.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(2.0, 2.0 + 1e-12),
        ];
        let h = strict_convex_hull(&pts, 1e-9);
        assert_eq!(h.len(), 4);
        for w in 0..4 {
            let (a, b, c) = (h[w], h[(w + 1) % 4], h[(w + 2) % 4]);
            assert!((b - a).cross(&(c - b)) > 0.0);
        }
    }
}
