//! Real-argument log-gamma, digamma and the constants every route needs.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// ln(2π)
pub const LN_TWO_PI: f64 = 1.837_877_066_409_345_6;
/// ln(π)
pub const LN_PI: f64 = 1.144_729_885_849_400_2;

/// The constants bundled as a value, for reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub euler_gamma: f64,
    pub pi: f64,
    pub ln_two_pi: f64,
}

pub const CONSTANTS: Constants = Constants {
    euler_gamma: EULER_GAMMA,
    pi: PI,
    ln_two_pi: LN_TWO_PI,
};

// Lanczos coefficients (Pugh 2004, n = 10, r = 10.900511).
const LANCZOS_R: f64 = 10.900511;
const LANCZOS_D: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];
/// ln(2·sqrt(e/π))
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;

/// sin(πx), exact at integers and half-integers.
pub fn sin_pi(x: f64) -> f64 {
    if x < 0.0 {
        return -sin_pi(-x);
    }
    let r = x % 2.0;
    if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (0.5 - r)).cos()
    } else if r <= 1.25 {
        (PI * (1.0 - r)).sin()
    } else if r <= 1.75 {
        -(PI * (r - 1.5)).cos()
    } else {
        (PI * (r - 2.0)).sin()
    }
}

/// cos(πx), exact at integers and half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x.abs() + 0.5)
}

fn lanczos_ln_gamma(x: f64) -> f64 {
    let s = LANCZOS_D
        .iter()
        .enumerate()
        .skip(1)
        .fold(LANCZOS_D[0], |s, (k, d)| s + d / (x + k as f64 - 1.0));
    s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + LANCZOS_R) / std::f64::consts::E).ln()
}

/// ln Γ(x) for x > 0.
///
/// Lanczos approximation for x ≥ 1/2, Euler reflection below that.
pub fn log_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(format!("log_gamma requires x > 0, got {x}")));
    }
    if x.is_infinite() {
        return Err(Error::Overflow(format!("log_gamma({x})")));
    }
    let v = if x < 0.5 {
        LN_PI - sin_pi(x).ln() - lanczos_ln_gamma(1.0 - x)
    } else {
        lanczos_ln_gamma(x)
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("log_gamma({x})")))
    }
}

// B_{2k} / (2k) for k = 1..=8
const DIGAMMA_ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// ψ(x) = d/dx ln Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(format!("digamma requires x > 0, got {x}")));
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let mut x = x;
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Horner in 1/x² from the highest order down.
    let series = DIGAMMA_ASYMPTOTIC
        .iter()
        .rev()
        .fold(0.0, |acc, c| (acc + c) * inv2);
    Ok(shift + x.ln() - 0.5 / x - series)
}

/// Both sides of Γ(1/2 − t)·Γ(1/2 + t) = π / cos(πt).
///
/// Returns `(lhs, rhs)` so callers can look at the residual themselves.
pub fn reflection_product(t: f64) -> Result<(f64, f64)> {
    if t.is_nan() || t.abs() >= 0.5 {
        return Err(Error::domain(format!(
            "reflection_product requires |t| < 1/2, got {t}"
        )));
    }
    let lhs = (log_gamma(0.5 - t)? + log_gamma(0.5 + t)?).exp();
    let rhs = PI / cos_pi(t);
    Ok((lhs, rhs))
}
