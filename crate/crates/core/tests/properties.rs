use std::f64::consts::PI;

use mahler_core::corpus::{generate_random_polygon, generate_rational_polygon, CorpusConfig};
use mahler_core::io::{any_polygon_to_json, parse_polygon, polygon_to_json, AnyPolygon};
use mahler_core::reduction::Tolerances;
use mahler_core::scalar::ratio;
use mahler_core::support::{radial_gap, DEFAULT_HAUSDORFF_GRID};
use mahler_core::{
    hausdorff_support_metric, polar, radial, reduce_to_parallelogram, support, volume_product,
    Direction, LinMap2, SymPolygon, Vec2,
};
use num_traits::Signed;
use proptest::prelude::*;

fn config(seed: u64, jitter: f64) -> CorpusConfig {
    CorpusConfig {
        count: 1,
        min_pairs: 2,
        max_pairs: 12,
        seed,
        radius_jitter: jitter,
    }
}

fn float_polygon() -> impl Strategy<Value = SymPolygon<f64>> {
    (any::<u64>(), 0.0..0.5f64, 0usize..1000)
        .prop_map(|(seed, jitter, i)| generate_random_polygon(&config(seed, jitter), i).unwrap())
}

fn exact_polygon() -> impl Strategy<Value = SymPolygon<mahler_core::Rational>> {
    (any::<u64>(), 0usize..1000)
        .prop_map(|(seed, i)| generate_rational_polygon(&config(seed, 0.3), i, 64).unwrap())
}

fn float_map() -> impl Strategy<Value = LinMap2<f64>> {
    [-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64]
        .prop_map(|[a, b, c, d]| LinMap2::new(a, b, c, d))
        .prop_filter("well conditioned", |m| {
            let norm = [m.a11, m.a12, m.a21, m.a22]
                .iter()
                .map(|x| x * x)
                .sum::<f64>();
            m.det().abs() > 0.05 * norm
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polar_is_an_involution_exactly(p in exact_polygon()) {
        prop_assert_eq!(polar(&polar(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn polar_is_an_involution_in_float(p in float_polygon()) {
        prop_assert!(polar(&polar(&p).unwrap()).unwrap().approx_eq(&p));
    }

    #[test]
    fn support_and_radial_are_reciprocal(p in exact_polygon(), k in 0usize..64) {
        // h(P*, u) = 1 / ρ(P, u) for every u
        let u = Vec2::new(ratio(k as i64 - 32, 7), ratio(11 - (k % 23) as i64, 5));
        prop_assume!(!(u.x == ratio(0, 1) && u.y == ratio(0, 1)));
        let dual = polar(&p).unwrap();
        prop_assert_eq!(support(&dual, &u) * radial(&p, &u), ratio(1, 1));
    }

    #[test]
    fn radial_never_exceeds_support(p in float_polygon(), theta in 0.0..(2.0 * PI)) {
        let u = Direction::from_angle(theta);
        prop_assert!(radial(&p, u.vec()) <= support(&p, u.vec()) + 1e-12);
    }

    #[test]
    fn area_scales_with_determinant(p in exact_polygon(), e in prop::array::uniform4(-6i64..=6)) {
        let a = LinMap2::new(ratio(e[0], 2), ratio(e[1], 3), ratio(e[2], 1), ratio(e[3], 5));
        prop_assume!(a.det() != ratio(0, 1));
        let image = p.apply_linear(&a).unwrap();
        prop_assert_eq!(image.area(), p.area() * a.det().abs());
    }

    #[test]
    fn product_is_linear_invariant(p in float_polygon(), a in float_map()) {
        let before = volume_product(&p).unwrap().product;
        let after = volume_product(&p.apply_linear(&a).unwrap()).unwrap().product;
        prop_assert!((before - after).abs() <= 1e-9 * before);
    }

    #[test]
    fn product_lies_between_eight_and_pi_squared(p in float_polygon()) {
        let vp = volume_product(&p).unwrap().product;
        prop_assert!((8.0 - 1e-9..=PI * PI + 1e-9).contains(&vp));
    }

    #[test]
    fn radial_gap_is_bounded_by_hausdorff_distance(
        p in float_polygon(),
        q in float_polygon(),
    ) {
        // sup |ρ_P - ρ_Q| <= (4 r1 / r0) d(P, Q) once d < r0 / 2
        let d = hausdorff_support_metric(&p, &q, DEFAULT_HAUSDORFF_GRID).unwrap();
        let b = mahler_core::support::radial_bounds(&q);
        prop_assume!(d < b.r0 / 2.0);
        let gap = radial_gap(&p, &q, DEFAULT_HAUSDORFF_GRID);
        prop_assert!(gap <= 4.0 * b.r1 / b.r0 * d + 1e-9, "gap {} d {}", gap, d);
    }

    #[test]
    fn float_json_round_trip(p in float_polygon()) {
        let back = parse_polygon(&polygon_to_json(&p).to_string()).unwrap();
        prop_assert!(back.to_f64().approx_eq(&p));
    }

    #[test]
    fn exact_json_round_trip(p in exact_polygon()) {
        let any = AnyPolygon::Exact(p);
        let back = parse_polygon(&any_polygon_to_json(&any).to_string()).unwrap();
        prop_assert_eq!(back, any);
    }

    #[test]
    fn reduction_certificates_verify_and_replay(p in float_polygon()) {
        let cert = reduce_to_parallelogram(&p).unwrap();
        let check = cert.verify(&Tolerances::default()).unwrap();
        prop_assert_eq!(check.deletions, p.pairs() - 2);
        let frames = cert.replay().unwrap();
        prop_assert!(frames.last().unwrap().approx_eq(&cert.final_polygon));
        let seq = cert.product_sequence();
        prop_assert!(seq.windows(2).all(|w| w[1] <= w[0] + 1e-7));
    }
}
