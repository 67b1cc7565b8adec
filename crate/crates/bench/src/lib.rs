//! Benchmarks for the evaluation routes live in `benches/`.
//!
//! This crate exposes the angle sets they share.

use malmsten_core::Angle;

/// Angles used by every route benchmark.
pub fn bench_angles() -> Vec<Angle> {
    [0.3, 1.2, std::f64::consts::FRAC_PI_2, 2.5]
        .into_iter()
        .map(|p| Angle::new(p).expect("bench angles are regular"))
        .collect()
}
