//! Double-exponential quadrature of every integral representation of I(φ).
//!
//! Nodes are produced together with their distance to both interval ends so
//! that the logarithmic endpoint singularities are evaluated without
//! cancellation. Levels halve the step; refinement stops when two successive
//! levels agree to within tolerance, and that difference is the error estimate.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{Angle, Evaluation, Method};

/// Quadrature refuses |φ| beyond π minus this band.
pub const GUARD_BAND: f64 = 1e-3;
/// Hard cap on the refinement depth.
pub const MAX_LEVEL_CAP: u32 = 14;
/// Levels always computed before the stopping rule is consulted.
const MIN_LEVEL: u32 = 3;
/// Truncation of the transformed variable for tanh-sinh.
const TANH_SINH_TMAX: f64 = 4.5;
/// Truncation of the transformed variable for exp-sinh, (lower, upper).
const EXP_SINH_TRANGE: (f64, f64) = (-4.5, 3.5);

/// Which integral representation is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Transform {
    /// ∫₀¹ ln ln(1/x) / (1 + 2x cos φ + x²) dx
    UnitDirect,
    /// x = e^{−u}: ∫₀^∞ e^{−u} ln u / (1 + 2e^{−u} cos φ + e^{−2u}) du
    ExpSubstitution,
    /// ∫_{π/4}^{π/2} ln ln tan y dy, valid only at φ = π/2
    TanForm,
}

impl Transform {
    pub fn method(self) -> Method {
        match self {
            Transform::UnitDirect => Method::QuadUnit,
            Transform::ExpSubstitution => Method::QuadExp,
            Transform::TanForm => Method::QuadTan,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_level: u32,
    pub transform: Transform,
}

impl QuadConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_level: u32, transform: Transform) -> Result<Self> {
        if !(abs_tol > 0.0 && rel_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if max_level == 0 || max_level > MAX_LEVEL_CAP {
            return Err(Error::domain(format!(
                "max_level must be in 1..={MAX_LEVEL_CAP}, got {max_level}"
            )));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_level,
            transform,
        })
    }

    pub fn with_transform(self, transform: Transform) -> Self {
        Self { transform, ..self }
    }

    fn halved(self) -> Self {
        Self {
            abs_tol: self.abs_tol / 2.0,
            rel_tol: self.rel_tol / 2.0,
            ..self
        }
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-13,
            max_level: 10,
            transform: Transform::ExpSubstitution,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub est_error: f64,
    pub nodes: u64,
    pub converged: bool,
    /// Finest level evaluated.
    pub level: u32,
}

impl QuadResult {
    fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            est_error: self.est_error + other.est_error,
            nodes: self.nodes + other.nodes,
            converged: self.converged && other.converged,
            level: self.level.max(other.level),
        }
    }

    fn scaled(self, k: f64) -> QuadResult {
        QuadResult {
            value: self.value * k,
            est_error: self.est_error * k.abs(),
            ..self
        }
    }

    pub fn into_evaluation(self, phi: Angle, method: Method) -> Result<Evaluation> {
        if !self.converged {
            return Err(Error::NonConvergence {
                best: self.value,
                est_error: self.est_error,
                work: self.nodes,
            });
        }
        Evaluation::new(phi, self.value, method, self.est_error, self.nodes)
    }
}

/// Level-by-level driver shared by both node families.
///
/// `level_sum(level)` returns (Σ w·f, Σ |w·f|, node count) over the nodes new at
/// that level, without the step factor.
fn refine<S>(mut level_sum: S, cfg: &QuadConfig, fixed_level: Option<u32>) -> QuadResult
where
    S: FnMut(u32) -> (f64, f64, u64),
{
    let (max_level, min_level) = match fixed_level {
        Some(l) => (l, l),
        None => (cfg.max_level, MIN_LEVEL.min(cfg.max_level)),
    };
    let (s0, a0, n0) = level_sum(0);
    let mut sum = s0;
    let mut abs_sum = a0;
    let mut nodes = n0;
    let mut value = sum;
    let mut est_error = f64::INFINITY;
    let mut level = 0;
    while level < max_level {
        level += 1;
        let (s, a, n) = level_sum(level);
        sum += s;
        abs_sum += a;
        nodes += n;
        let h = 0.5f64.powi(level as i32);
        let next = sum * h;
        let floor = 16.0 * f64::EPSILON * abs_sum * h;
        est_error = (next - value).abs().max(floor);
        value = next;
        if fixed_level.is_none() && level >= min_level && est_error <= cfg.tolerance(value) {
            return QuadResult {
                value,
                est_error,
                nodes,
                converged: true,
                level,
            };
        }
    }
    QuadResult {
        value,
        est_error,
        nodes,
        converged: fixed_level.is_some(),
        level,
    }
}

/// Nodes at a given level, as step indices j with t = j·2^{−level}.
fn level_indices(level: u32, tmax: f64) -> impl Iterator<Item = i64> {
    let h = 0.5f64.powi(level as i32);
    let jmax = (tmax / h).floor() as i64;
    let step = if level == 0 { 1 } else { 2 };
    let start = if level == 0 { 0 } else { 1 };
    (start..=jmax).step_by(step)
}

/// tanh-sinh on (0, 1). `f(x, 1 − x)` receives both distances.
fn tanh_sinh<F: Fn(f64, f64) -> f64>(
    f: F,
    cfg: &QuadConfig,
    fixed_level: Option<u32>,
) -> QuadResult {
    refine(
        |level| {
            let h = 0.5f64.powi(level as i32);
            let mut s = 0.0;
            let mut a = 0.0;
            let mut n = 0;
            for j in level_indices(level, TANH_SINH_TMAX) {
                let t = j as f64 * h;
                let e = (-PI * t.sinh()).exp();
                // distance of the node to the nearer end
                let near = e / (1.0 + e);
                let far = 1.0 / (1.0 + e);
                if near == 0.0 {
                    break;
                }
                let w = PI * t.cosh() * near * far;
                let right = w * f(far, near);
                s += right;
                a += right.abs();
                n += 1;
                if j != 0 {
                    let left = w * f(near, far);
                    s += left;
                    a += left.abs();
                    n += 1;
                }
            }
            (s, a, n)
        },
        cfg,
        fixed_level,
    )
}

/// exp-sinh on (a, ∞). `f(u − a)` receives the offset from the lower limit.
fn exp_sinh<F: Fn(f64) -> f64>(f: F, cfg: &QuadConfig, fixed_level: Option<u32>) -> QuadResult {
    let (tlo, thi) = EXP_SINH_TRANGE;
    refine(
        |level| {
            let h = 0.5f64.powi(level as i32);
            let mut s = 0.0;
            let mut a = 0.0;
            let mut n = 0;
            let jlo = (tlo / h).ceil() as i64;
            let jhi = (thi / h).floor() as i64;
            for j in jlo..=jhi {
                if level > 0 && j.rem_euclid(2) == 0 {
                    continue;
                }
                let t = j as f64 * h;
                let offset = (FRAC_PI_2 * t.sinh()).exp();
                let w = FRAC_PI_2 * t.cosh() * offset;
                if offset == 0.0 || !w.is_finite() {
                    continue;
                }
                let v = f(offset);
                if v == 0.0 {
                    continue;
                }
                let c = w * v;
                s += c;
                a += c.abs();
                n += 1;
            }
            (s, a, n)
        },
        cfg,
        fixed_level,
    )
}

fn check_guard(phi: Angle) -> Result<()> {
    if phi.radians().abs() > PI - GUARD_BAND {
        return Err(Error::domain(format!(
            "|phi| = {} is inside the guard band at pi",
            phi.radians().abs()
        )));
    }
    Ok(())
}

/// 1 + 2x cos φ + x² written as (1 − x)² + 4x cos²(φ/2), given x and 1 − x.
fn denominator(x: f64, one_minus_x: f64, half_cos_sq: f64) -> f64 {
    let d = one_minus_x * one_minus_x + 4.0 * x * half_cos_sq;
    debug_assert!(d > 0.0, "denominator vanished at x = {x}");
    d
}

/// ln ln(1/x) with 1 − x supplied separately for accuracy near x = 1.
fn ln_ln_recip(x: f64, one_minus_x: f64) -> f64 {
    let ln_recip = if x < 0.5 {
        -x.ln()
    } else {
        -(-one_minus_x).ln_1p()
    };
    ln_recip.ln()
}

/// ln ln(1/x) / (1 + 2x cos φ + x²).
pub fn integrand_unit(x: f64, phi: Angle) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!(
            "integrand_unit needs 0 < x < 1, got {x}"
        )));
    }
    let p = phi.radians();
    let d = (x + p.cos()).powi(2) + p.sin().powi(2);
    debug_assert!(d > 0.0);
    Ok(ln_ln_recip(x, 1.0 - x) / d)
}

/// e^{−u} ln u / (1 + 2e^{−u} cos φ + e^{−2u}).
pub fn integrand_exp(u: f64, phi: Angle) -> Result<f64> {
    if u.is_nan() || u <= 0.0 {
        return Err(Error::domain(format!("integrand_exp needs u > 0, got {u}")));
    }
    let half = (0.5 * phi.radians()).cos().powi(2);
    Ok(exp_form(u, half))
}

fn exp_form(u: f64, half_cos_sq: f64) -> f64 {
    let x = (-u).exp();
    if x == 0.0 {
        return 0.0;
    }
    x * u.ln() / denominator(x, -(-u).exp_m1(), half_cos_sq)
}

/// ln ln tan y on (π/4, π/2).
pub fn integrand_tan(y: f64) -> Result<f64> {
    if !(y > FRAC_PI_4 && y < FRAC_PI_2) {
        return Err(Error::domain(format!(
            "integrand_tan needs pi/4 < y < pi/2, got {y}"
        )));
    }
    Ok(tan_form(y - FRAC_PI_4, FRAC_PI_2 - y))
}

/// ln ln tan y from the distances to π/4 and π/2.
fn tan_form(from_quarter: f64, from_half: f64) -> f64 {
    let ln_tan = if from_quarter <= from_half {
        2.0 * from_quarter.tan().atanh()
    } else {
        -from_half.tan().ln()
    };
    ln_tan.ln()
}

fn unit_direct(phi: Angle, cfg: &QuadConfig, fixed_level: Option<u32>) -> QuadResult {
    let half = (0.5 * phi.radians()).cos().powi(2);
    tanh_sinh(
        |x, xc| ln_ln_recip(x, xc) / denominator(x, xc, half),
        cfg,
        fixed_level,
    )
}

fn exp_substitution(phi: Angle, cfg: &QuadConfig, fixed_level: Option<u32>) -> QuadResult {
    let half = (0.5 * phi.radians()).cos().powi(2);
    let cfg = cfg.halved();
    let head = tanh_sinh(|u, _| exp_form(u, half), &cfg, fixed_level);
    let tail = exp_sinh(|off| exp_form(1.0 + off, half), &cfg, fixed_level);
    head.combine(tail)
}

fn tan_integral(cfg: &QuadConfig, fixed_level: Option<u32>) -> QuadResult {
    tanh_sinh(
        |v, vc| tan_form(FRAC_PI_4 * v, FRAC_PI_4 * vc),
        cfg,
        fixed_level,
    )
    .scaled(FRAC_PI_4)
}

/// I(φ) by quadrature of the representation selected in `cfg`.
///
/// A non-converged result is returned with `converged = false` and the best
/// estimate in `value`.
pub fn quad_eval(phi: Angle, cfg: &QuadConfig) -> Result<QuadResult> {
    check_guard(phi)?;
    Ok(match cfg.transform {
        Transform::UnitDirect => unit_direct(phi, cfg, None),
        Transform::ExpSubstitution => exp_substitution(phi, cfg, None),
        Transform::TanForm => {
            if !phi.is_half_pi() {
                return Err(Error::domain(
                    "the tangent form is only defined for phi = pi/2",
                ));
            }
            tan_integral(cfg, None)
        }
    })
}

/// The same integral evaluated at a fixed refinement level, without a stopping rule.
pub fn quad_eval_at_level(phi: Angle, transform: Transform, level: u32) -> Result<f64> {
    check_guard(phi)?;
    if level > MAX_LEVEL_CAP + 2 {
        return Err(Error::domain(format!("level {level} is too deep")));
    }
    let cfg = QuadConfig::default();
    Ok(match transform {
        Transform::UnitDirect => unit_direct(phi, &cfg, Some(level)),
        Transform::ExpSubstitution => exp_substitution(phi, &cfg, Some(level)),
        Transform::TanForm => {
            if !phi.is_half_pi() {
                return Err(Error::domain(
                    "the tangent form is only defined for phi = pi/2",
                ));
            }
            tan_integral(&cfg, Some(level))
        }
    }
    .value)
}

/// ∫_{π/4}^{π/2} ln ln tan y dy, which equals I(π/2).
pub fn quad_tan_form(cfg: &QuadConfig) -> QuadResult {
    tan_integral(cfg, None)
}

/// J_n = ∫₀¹ xⁿ ln ln(1/x) dx by quadrature.
///
/// `UnitDirect` integrates on (0, 1); `ExpSubstitution` integrates
/// ∫₀^∞ e^{−(n+1)u} ln u du split at u = 1.
pub fn quad_jn(n: usize, cfg: &QuadConfig) -> Result<QuadResult> {
    let k = n as i32;
    let m = (n + 1) as f64;
    match cfg.transform {
        Transform::UnitDirect => Ok(tanh_sinh(|x, xc| x.powi(k) * ln_ln_recip(x, xc), cfg, None)),
        Transform::ExpSubstitution => {
            let cfg = cfg.halved();
            let head = tanh_sinh(|u, _| (-m * u).exp() * u.ln(), &cfg, None);
            let tail = exp_sinh(
                |off| {
                    let u = 1.0 + off;
                    (-m * u).exp() * u.ln()
                },
                &cfg,
                None,
            );
            Ok(head.combine(tail))
        }
        Transform::TanForm => Err(Error::domain("J_n has no tangent representation")),
    }
}

/// Quadrature as an [`Evaluation`] for the given method.
pub fn quad_evaluation(phi: Angle, method: Method, base: &QuadConfig) -> Result<Evaluation> {
    let transform = match method {
        Method::QuadUnit => Transform::UnitDirect,
        Method::QuadExp => Transform::ExpSubstitution,
        Method::QuadTan => Transform::TanForm,
        other => return Err(Error::domain(format!("{other} is not a quadrature method"))),
    };
    quad_eval(phi, &base.with_transform(transform))?.into_evaluation(phi, method)
}
