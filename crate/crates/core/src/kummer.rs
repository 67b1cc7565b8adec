//! Kummer's Fourier expansion of ln Γ on (0, 1) and the log-sine sum identity
//! that closes the series route.
//!
//! ```text
//! ln Γ(x) = (1/2 − x)(γ + ln 2) + (1 − x) ln π − ½ ln sin πx
//!           + (1/π) Σ_{n≥1} ln n · sin 2πnx / n,     0 < x < 1.
//! ```

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::accel::{accelerate, PartialSums};
use crate::error::{Error, Result};
use crate::series::{log_sine_sum, SeriesConfig, SeriesValue};
use crate::special::{log_gamma, sin_pi, EULER_GAMMA, LN_PI, LN_TWO_PI};
use crate::types::{Angle, Evaluation, Method};

/// kummer_partial refuses points closer than this to 0 or 1.
pub const ENDPOINT_GUARD: f64 = 1e-6;

/// A point strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct KummerPoint {
    x: f64,
}

impl KummerPoint {
    pub fn new(x: f64) -> Result<Self> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::domain(format!(
                "Kummer point must lie in (0, 1), got {x}"
            )));
        }
        Ok(Self { x })
    }

    pub fn value(self) -> f64 {
        self.x
    }

    fn guarded(self) -> Result<f64> {
        if self.x <= ENDPOINT_GUARD || self.x >= 1.0 - ENDPOINT_GUARD {
            return Err(Error::domain(format!(
                "x = {} is too close to an endpoint for the Kummer series",
                self.x
            )));
        }
        Ok(self.x)
    }
}

/// sin(2πnx) with the argument reduced modulo one period before scaling by π.
fn sin_two_pi_nx(n: usize, x: f64) -> f64 {
    let nf = n as f64;
    let p = nf * x;
    let err = nf.mul_add(x, -p);
    let frac = (p - p.floor()) + err;
    sin_pi(2.0 * frac)
}

fn kummer_term(x: f64) -> impl Fn(usize) -> f64 {
    move |n| {
        let nf = n as f64;
        nf.ln() * sin_two_pi_nx(n, x) / nf
    }
}

/// Folded frequency of sin(2πnx) in (0, π].
fn kummer_frequency(x: f64) -> f64 {
    2.0 * PI * x.min(1.0 - x)
}

/// The elementary part of the expansion (everything except the series).
fn kummer_elementary(x: f64) -> f64 {
    (0.5 - x) * (EULER_GAMMA + LN_2) + (1.0 - x) * LN_PI - 0.5 * sin_pi(x).ln()
}

/// Σ_{n≥1} ln n · sin 2πnx / n, accelerated.
pub fn kummer_sum(x: KummerPoint, cfg: &SeriesConfig) -> Result<SeriesValue> {
    let x = x.guarded()?;
    let acc = accelerate(kummer_term(x), kummer_frequency(x), cfg);
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

/// Default policy for the Kummer series.
pub fn kummer_config(max_terms: usize) -> Result<SeriesConfig> {
    SeriesConfig::new(max_terms, 6, 1e-10)
}

/// Right-hand side of Kummer's expansion with the series cut at `terms`.
///
/// With `accel` the partial sums up to `terms` are averaged (see `accel`);
/// without it this is the plain truncated sum.
pub fn kummer_partial(x: KummerPoint, terms: usize, accel: bool) -> Result<f64> {
    let xv = x.guarded()?;
    let series = if accel {
        kummer_sum(x, &kummer_config(terms.max(8))?)?.value
    } else {
        PartialSums::new(kummer_term(xv)).get(terms)
    };
    Ok(kummer_elementary(xv) + series / PI)
}

/// Both sides of
///
/// ```text
/// Σ_{n≥2} ln n · sin n(π−φ) / n
///   = π ln Γ(1/2 − φ/2π) − (φ/2)(γ + ln 2π) − (π/2) ln π + (π/2) ln cos(φ/2).
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumIdentity {
    pub phi: Angle,
    /// Accelerated series, summed in its alternating form.
    pub series_side: f64,
    pub closed_side: f64,
    pub series_error: f64,
    pub terms: usize,
}

impl SumIdentity {
    pub fn residual(&self) -> f64 {
        (self.series_side - self.closed_side).abs()
    }

    /// I(φ) = −(1/sin φ)·[γφ/2 + Σ ln n sin n(π−φ)/n], using the series side.
    pub fn assemble(&self) -> Result<f64> {
        self.phi.require_regular()?;
        let p = self.phi.radians();
        Ok(-(EULER_GAMMA * p / 2.0 + self.series_side) / p.sin())
    }
}

/// Closed side of the log-sine sum identity.
pub fn sum_identity_closed(phi: Angle) -> Result<f64> {
    let p = phi.radians();
    Ok(PI * log_gamma(0.5 - p / (2.0 * PI))?
        - 0.5 * p * (EULER_GAMMA + LN_TWO_PI)
        - 0.5 * PI * LN_PI
        + 0.5 * PI * (0.5 * p).cos().ln())
}

/// Evaluates both sides. The series side uses (−1)ⁿ sin nφ = −sin n(π−φ) to
/// reduce to −Σ (−1)ⁿ ln n · sin nφ / n.
pub fn derived_sum_identity(phi: Angle, cfg: &SeriesConfig) -> Result<SumIdentity> {
    let closed_side = sum_identity_closed(phi)?;
    let s = log_sine_sum(phi, cfg)?;
    Ok(SumIdentity {
        phi,
        series_side: -s.value,
        closed_side,
        series_error: s.est_error,
        terms: s.terms,
    })
}

/// I(φ) from I(φ) = −(1/sin φ)·[γφ/2 + Σ ln n sin n(π−φ)/n], with the sum read
/// as the series of Kummer's expansion at x = 1/2 − φ/2π.
pub fn kummer_eval(phi: Angle, cfg: &SeriesConfig) -> Result<Evaluation> {
    phi.require_regular()?;
    let p = phi.radians();
    let x = KummerPoint::new(0.5 - p / (2.0 * PI))?;
    let sum = kummer_sum(x, cfg)?;
    let sin = p.sin();
    let value = -(EULER_GAMMA * p / 2.0 + sum.value) / sin;
    let est_error = sum.est_error / sin.abs() + 4.0 * f64::EPSILON * value.abs();
    Evaluation::new(phi, value, Method::Kummer, est_error, sum.terms as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::malmsten_closed;

    fn pt(x: f64) -> KummerPoint {
        KummerPoint::new(x).unwrap()
    }

    #[test]
    fn midpoint_is_exact() {
        for n in [1, 2, 3, 10, 1000, 12345] {
            assert_eq!(kummer_partial(pt(0.5), n, false).unwrap(), 0.5 * LN_PI);
            assert_eq!(
                kummer_partial(pt(0.5), n.max(8), true).unwrap(),
                0.5 * LN_PI
            );
        }
    }

    #[test]
    fn matches_log_gamma() {
        for x in [0.25, 0.9, 0.05, 0.5 + 1e-3] {
            let k = kummer_partial(pt(x), 100_000, true).unwrap();
            let l = log_gamma(x).unwrap();
            assert!((k - l).abs() <= 1e-7, "x={x}: {k} vs {l}");
        }
    }

    #[test]
    fn raw_partial_is_slow() {
        let k = kummer_partial(pt(0.25), 1000, false).unwrap();
        let l = log_gamma(0.25).unwrap();
        assert!((k - l).abs() > 1e-5);
    }

    #[test]
    fn guards() {
        assert!(KummerPoint::new(0.0).is_err());
        assert!(KummerPoint::new(1.0).is_err());
        assert!(kummer_partial(pt(1e-7), 100, true).is_err());
        assert!(kummer_partial(pt(1.0 - 1e-7), 100, true).is_err());
    }

    #[test]
    fn identity_examples() {
        let cfg = SeriesConfig::default();
        let z = derived_sum_identity(Angle::new(0.0).unwrap(), &cfg).unwrap();
        assert!(z.closed_side.abs() < 1e-15);
        assert_eq!(z.series_side, 0.0);
        for p in [std::f64::consts::FRAC_PI_2, -1.5] {
            let id = derived_sum_identity(Angle::new(p).unwrap(), &cfg).unwrap();
            assert!(id.residual() <= 1e-7, "phi={p}");
            let i = malmsten_closed(Angle::new(p).unwrap()).unwrap().value;
            assert!((id.assemble().unwrap() - i).abs() <= 1e-7);
        }
    }

    #[test]
    fn kummer_route_matches_closed_form() {
        let cfg = SeriesConfig::default();
        for p in [0.4, -1.2, 2.5] {
            let a = Angle::new(p).unwrap();
            let k = kummer_eval(a, &cfg).unwrap();
            let c = malmsten_closed(a).unwrap();
            assert!((k.value - c.value).abs() <= 1e-8, "phi={p}");
        }
    }
}
