//! Fixtures shared by the benchmarks.

use mahler_core::corpus::{generate_random_polygon, CorpusConfig};
use mahler_core::SymPolygon;

/// Random polygons with exactly `pairs` vertex pairs requested.
pub fn fixtures(pairs: usize, count: usize) -> Vec<SymPolygon<f64>> {
    let config = CorpusConfig {
        count,
        min_pairs: pairs,
        max_pairs: pairs,
        seed: 17,
        radius_jitter: 0.0,
    };
    (0..count)
        .map(|i| generate_random_polygon(&config, i).expect("fixture draws"))
        .collect()
}
