//! Grid comparisons between evaluation routes.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{Angle, Evaluation, Method};
use crate::{evaluate, RouteConfig};

/// |value_a − value_b| at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairDelta {
    pub a: Method,
    pub b: Method,
    pub delta: f64,
}

/// All requested routes at one φ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub phi: Angle,
    /// Sorted by method name.
    pub evaluations: Vec<Evaluation>,
    pub deltas: Vec<PairDelta>,
}

impl ComparisonRow {
    fn new(phi: Angle, mut evaluations: Vec<Evaluation>) -> Self {
        evaluations.sort_by_key(|e| e.method.name());
        let mut deltas = Vec::new();
        for (i, a) in evaluations.iter().enumerate() {
            for b in &evaluations[i + 1..] {
                deltas.push(PairDelta {
                    a: a.method,
                    b: b.method,
                    delta: (a.value - b.value).abs(),
                });
            }
        }
        Self {
            phi,
            evaluations,
            deltas,
        }
    }

    pub fn max_delta(&self) -> f64 {
        self.deltas.iter().map(|d| d.delta).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub grid: Vec<Angle>,
    pub rows: Vec<ComparisonRow>,
    pub max_delta: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ComparisonReport {
    /// Evaluates every method at every grid point (grid points in parallel).
    ///
    /// The first failure in grid order is returned as the error.
    pub fn build(
        grid: &[Angle],
        methods: &[Method],
        cfg: &RouteConfig,
        tolerance: f64,
    ) -> Result<Self> {
        let mut methods = methods.to_vec();
        methods.sort_by_key(|m| m.name());
        methods.dedup();
        if methods.is_empty() {
            return Err(Error::domain("no methods requested"));
        }
        let rows = grid
            .par_iter()
            .map(|&phi| {
                let evs = methods
                    .iter()
                    .map(|&m| evaluate(phi, m, cfg))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ComparisonRow::new(phi, evs))
            })
            .collect::<Result<Vec<_>>>()?;
        let max_delta = rows
            .iter()
            .map(ComparisonRow::max_delta)
            .fold(0.0, f64::max);
        Ok(Self {
            grid: grid.to_vec(),
            rows,
            max_delta,
            tolerance,
            pass: max_delta <= tolerance,
        })
    }
}

/// from, from + step, … up to `to` (inclusive, with a little slack for
/// rounding). Points within rounding of zero are snapped to exactly 0.
pub fn sweep_grid(from: f64, to: f64, step: f64) -> Result<Vec<Angle>> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::domain(format!("step must be positive, got {step}")));
    }
    if from.is_nan() || to.is_nan() || from >= to {
        return Err(Error::domain(format!("need from < to, got {from} .. {to}")));
    }
    Angle::new(from)?;
    Angle::new(to)?;
    let count = ((to - from) / step + 1e-9).floor() as usize + 1;
    (0..count)
        .map(|i| {
            let mut p = from + i as f64 * step;
            if p.abs() < step * 1e-9 {
                p = 0.0;
            }
            Angle::new(p)
        })
        .collect()
}
