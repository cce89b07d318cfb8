//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use lamplight_core::{RingSpec, SeriesParams};

/// The parameter sets used throughout the benchmarks, labelled by ring.
pub fn fixtures() -> Vec<(&'static str, SeriesParams)> {
    [
        ("zmod:3", "2", "2", "1"),
        ("zmod:6", "1", "3", "2"),
        ("zmod:9", "2", "1", "2"),
        ("gr:2:2:2", "1", "1", "2+z"),
    ]
    .into_iter()
    .map(|(ring, r, a, b)| {
        let spec: RingSpec = ring.parse().expect("valid ring");
        let params = SeriesParams::parse(Arc::new(spec), r, a, b).expect("valid parameters");
        (ring, params)
    })
    .collect()
}
