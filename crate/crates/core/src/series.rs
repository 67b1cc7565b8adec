//! The power-series route to I(φ).
//!
//! Expanding 1/(1 + 2x cos φ + x²) as Σ (−1)^n a_n x^n and integrating term by
//! term against ln ln(1/x) gives
//!
//! ```text
//! I(φ) = (1 / sin φ) · [ −γφ/2 + Σ_{n≥2} (−1)^n ln n · sin nφ / n ].
//! ```
//!
//! The remaining sum is only conditionally convergent; it is summed in
//! increasing n and accelerated (see `accel`).

use std::f64::consts::PI;

use serde::Serialize;

use crate::accel::{accelerate, PartialSums};
use crate::error::{Error, Result};
use crate::special::EULER_GAMMA;
use crate::types::{Angle, Evaluation, Method};

/// Beyond this |φ| the series route widens its error estimate instead of failing.
pub const SERIES_BAND: f64 = 2.9;
/// Factor applied to the error estimate outside [`SERIES_BAND`].
const WIDENING: f64 = 10.0;

/// Truncation and acceleration policy for the conditionally convergent sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesConfig {
    pub max_terms: usize,
    /// Number of averaging passes.
    pub accel_depth: usize,
    pub tail_tol: f64,
}

impl SeriesConfig {
    pub fn new(max_terms: usize, accel_depth: usize, tail_tol: f64) -> Result<Self> {
        if accel_depth > 30 {
            return Err(Error::domain(format!(
                "accel_depth {accel_depth} exceeds 30"
            )));
        }
        if max_terms < accel_depth + 2 {
            return Err(Error::domain(format!(
                "max_terms {max_terms} must be at least accel_depth + 2"
            )));
        }
        if tail_tol.is_nan() || tail_tol <= 0.0 {
            return Err(Error::domain(format!(
                "tail_tol must be positive, got {tail_tol}"
            )));
        }
        Ok(Self {
            max_terms,
            accel_depth,
            tail_tol,
        })
    }

    /// Same policy with a different term budget.
    pub fn with_max_terms(self, max_terms: usize) -> Result<Self> {
        Self::new(max_terms, self.accel_depth, self.tail_tol)
    }
}

impl Default for SeriesConfig {
    fn default() -> Self {
        Self {
            max_terms: 1 << 14,
            accel_depth: 6,
            tail_tol: 1e-11,
        }
    }
}

/// A summed series together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    pub est_error: f64,
    pub terms: usize,
}

/// a_n computed two ways: sin((n+1)φ)/sin φ and the raw Cauchy-product sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientWitness {
    pub n: usize,
    pub closed: f64,
    /// Σ_{k=0}^{n} cos((n − 2k)φ), the real part of Σ e^{(n−2k)iφ}.
    pub brute: f64,
}

impl CoefficientWitness {
    pub fn residual(&self) -> f64 {
        (self.closed - self.brute).abs()
    }
}

/// The n-th coefficient (sign removed) of 1/(1 + 2x cos φ + x²).
pub fn coeff_a(n: usize, phi: Angle) -> Result<CoefficientWitness> {
    phi.require_regular()?;
    let p = phi.radians();
    let closed = ((n + 1) as f64 * p).sin() / p.sin();
    let brute = (0..=n)
        .map(|k| ((n as f64 - 2.0 * k as f64) * p).cos())
        .sum();
    Ok(CoefficientWitness { n, closed, brute })
}

/// J_n = ∫₀¹ xⁿ ln ln(1/x) dx = −(γ + ln(n+1)) / (n+1).
pub fn j_n(n: usize) -> f64 {
    let m = (n + 1) as f64;
    -(EULER_GAMMA + m.ln()) / m
}

/// Frequency of (−1)^n sin nφ, folded into (0, π].
fn alternating_frequency(phi: f64) -> f64 {
    PI - phi.abs()
}

fn sawtooth_term(phi: f64) -> impl Fn(usize) -> f64 {
    move |n| {
        let s = (n as f64 * phi).sin() / n as f64;
        if n % 2 == 1 {
            s
        } else {
            -s
        }
    }
}

fn log_sine_term(phi: f64) -> impl Fn(usize) -> f64 {
    move |n| {
        let nf = n as f64;
        let s = nf.ln() * (nf * phi).sin() / nf;
        if n % 2 == 0 {
            s
        } else {
            -s
        }
    }
}

/// Σ_{n=1}^{N} (−1)^{n+1} sin nφ / n, unaccelerated.
pub fn sawtooth_partial(phi: Angle, terms: usize) -> f64 {
    PartialSums::new(sawtooth_term(phi.radians())).get(terms)
}

/// Accelerated Σ_{n≥1} (−1)^{n+1} sin nφ / n (which equals φ/2).
pub fn sawtooth_accelerated(phi: Angle, cfg: &SeriesConfig) -> Result<SeriesValue> {
    let p = phi.radians();
    if p == 0.0 {
        return Ok(SeriesValue {
            value: 0.0,
            est_error: 0.0,
            terms: 1,
        });
    }
    finish(accelerate(sawtooth_term(p), alternating_frequency(p), cfg))
}

/// Σ_{n=2}^{N} (−1)^n ln n · sin nφ / n, unaccelerated.
pub fn log_sine_partial(phi: Angle, terms: usize) -> f64 {
    PartialSums::new(log_sine_term(phi.radians())).get(terms)
}

/// Accelerated Σ_{n≥2} (−1)^n ln n · sin nφ / n.
///
/// Every term vanishes at φ = 0, so zero-band angles are accepted here.
pub fn log_sine_sum(phi: Angle, cfg: &SeriesConfig) -> Result<SeriesValue> {
    let p = phi.radians();
    if p == 0.0 {
        return Ok(SeriesValue {
            value: 0.0,
            est_error: 0.0,
            terms: 1,
        });
    }
    finish(accelerate(log_sine_term(p), alternating_frequency(p), cfg))
}

fn finish(acc: crate::accel::Accelerated) -> Result<SeriesValue> {
    if acc.converged {
        Ok(SeriesValue {
            value: acc.value,
            est_error: acc.est_error,
            terms: acc.terms,
        })
    } else {
        Err(Error::NonConvergence {
            best: acc.value,
            est_error: acc.est_error,
            work: acc.terms as u64,
        })
    }
}

/// I(φ) assembled from the sawtooth constant −γφ/2 and [`log_sine_sum`].
pub fn series_eval(phi: Angle, cfg: &SeriesConfig) -> Result<Evaluation> {
    phi.require_regular()?;
    let p = phi.radians();
    let inside = p.abs() <= SERIES_BAND;
    let sum = match log_sine_sum(phi, cfg) {
        Ok(s) => s,
        Err(Error::NonConvergence {
            best,
            est_error,
            work,
        }) if !inside => SeriesValue {
            value: best,
            est_error,
            terms: work as usize,
        },
        Err(e) => return Err(e),
    };
    let sin = p.sin();
    let value = (-EULER_GAMMA * p / 2.0 + sum.value) / sin;
    let mut est_error = sum.est_error / sin.abs() + 4.0 * f64::EPSILON * value.abs();
    if !inside {
        est_error *= WIDENING;
    }
    Evaluation::new(phi, value, Method::Series, est_error, sum.terms as u64)
}
