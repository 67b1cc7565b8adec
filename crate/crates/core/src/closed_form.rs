//! The Γ-based closed form of I(φ), its φ → 0 limit, and the tabulated special values.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{digamma, log_gamma, EULER_GAMMA, LN_PI, LN_TWO_PI};
use crate::types::{Angle, Evaluation, Method};

/// Relative accuracy assumed for a single `log_gamma` call when propagating errors.
const LOG_GAMMA_REL: f64 = 4.0 * f64::EPSILON;

/// Agreement required between the two printed forms of the 2π/3 value.
pub const TWO_FORM_TOL: f64 = 1e-12;

/// I(φ) = (π / 2 sin φ) · [ (φ/π) ln 2π + ln Γ(1/2 + φ/2π) − ln Γ(1/2 − φ/2π) ].
///
/// Evaluated in log space. Angles in the zero band are refused with
/// [`Error::ZeroRedirect`]; see [`zero_limit`].
pub fn malmsten_closed(phi: Angle) -> Result<Evaluation> {
    phi.require_regular()?;
    let p = phi.radians();
    let shift = p / (2.0 * PI);
    let lg_plus = log_gamma(0.5 + shift)?;
    let lg_minus = log_gamma(0.5 - shift)?;
    let linear = (p / PI) * LN_TWO_PI;
    let bracket = linear + lg_plus - lg_minus;
    let scale = PI / (2.0 * p.sin());
    let value = scale * bracket;

    let bracket_err =
        LOG_GAMMA_REL * (lg_plus.abs() + lg_minus.abs() + 0.5) + f64::EPSILON * linear.abs();
    let est_error = scale.abs() * bracket_err + 2.0 * f64::EPSILON * value.abs();
    Evaluation::new(phi, value, Method::Closed, est_error, 1)
}

/// lim_{φ→0} I(φ) = (ln 2π + ψ(1/2)) / 2.
pub fn zero_limit() -> Evaluation {
    let psi_half = digamma(0.5).expect("0.5 is inside the digamma domain");
    let value = 0.5 * (LN_TWO_PI + psi_half);
    Evaluation::new(
        Angle::new(0.0).expect("0 is a valid angle"),
        value,
        Method::Closed,
        4.0 * f64::EPSILON,
        1,
    )
    .expect("constant evaluation is well formed")
}

/// Closed form with the zero band routed to [`zero_limit`].
pub fn closed(phi: Angle) -> Result<Evaluation> {
    if phi.is_zero() {
        let mut ev = zero_limit();
        ev.phi = phi;
        Ok(ev)
    } else {
        malmsten_closed(phi)
    }
}

/// The pre-reflection form of the result:
/// (π / sin φ) · [ (φ/2π) ln 2π + ½ ln π − ln Γ(1/2 − φ/2π) − ½ ln cos(φ/2) ].
pub fn reflected_closed(phi: Angle) -> Result<f64> {
    phi.require_regular()?;
    let p = phi.radians();
    let lg_minus = log_gamma(0.5 - p / (2.0 * PI))?;
    let bracket =
        (p / (2.0 * PI)) * LN_TWO_PI + 0.5 * LN_PI - lg_minus - 0.5 * (0.5 * p).cos().ln();
    Ok(PI / p.sin() * bracket)
}

/// The three tabulated angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SpecialAngle {
    PiOver2,
    PiOver3,
    TwoPiOver3,
}

impl SpecialAngle {
    pub const ALL: [SpecialAngle; 3] = [
        SpecialAngle::PiOver3,
        SpecialAngle::PiOver2,
        SpecialAngle::TwoPiOver3,
    ];

    pub fn radians(self) -> f64 {
        match self {
            SpecialAngle::PiOver2 => FRAC_PI_2,
            SpecialAngle::PiOver3 => PI / 3.0,
            SpecialAngle::TwoPiOver3 => 2.0 * PI / 3.0,
        }
    }

    pub fn angle(self) -> Angle {
        Angle::new(self.radians()).expect("special angles lie inside (-pi, pi)")
    }

    pub fn label(self) -> &'static str {
        match self {
            SpecialAngle::PiOver2 => "pi/2",
            SpecialAngle::PiOver3 => "pi/3",
            SpecialAngle::TwoPiOver3 => "2*pi/3",
        }
    }

    /// The printed right-hand side, as a human-readable formula.
    pub fn formula(self) -> &'static str {
        match self {
            SpecialAngle::PiOver2 => "(pi/2) ln( G(3/4) sqrt(2pi) / G(1/4) )",
            SpecialAngle::PiOver3 => "(pi/sqrt3) ln( G(2/3) (2pi)^(1/3) / G(1/3) )",
            SpecialAngle::TwoPiOver3 => "(2pi/sqrt3) [ (5/6) ln(2pi) - ln G(1/6) ]",
        }
    }
}

/// Both printed forms of the 2π/3 value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoPiOver3Forms {
    /// (2π/√3)·[ (5/6) ln 2π − ln Γ(1/6) ]
    pub bracket_form: f64,
    /// (π/√3)·ln( Γ(5/6)·(2π)^{2/3} / Γ(1/6) )
    pub ratio_form: f64,
}

impl TwoPiOver3Forms {
    pub fn compute() -> Result<Self> {
        let sqrt3 = 3f64.sqrt();
        let lg_sixth = log_gamma(1.0 / 6.0)?;
        let bracket_form = (2.0 * PI / sqrt3) * (5.0 / 6.0 * LN_TWO_PI - lg_sixth);
        let ratio_form = (PI / sqrt3) * (log_gamma(5.0 / 6.0)? + 2.0 / 3.0 * LN_TWO_PI - lg_sixth);
        Ok(Self {
            bracket_form,
            ratio_form,
        })
    }

    pub fn residual(&self) -> f64 {
        (self.bracket_form - self.ratio_form).abs()
    }
}

/// The printed closed-form value at one of the tabulated angles.
pub fn special_value(which: SpecialAngle) -> Result<Evaluation> {
    let sqrt3 = 3f64.sqrt();
    let (value, magnitude) = match which {
        SpecialAngle::PiOver2 => {
            let a = log_gamma(0.75)?;
            let b = log_gamma(0.25)?;
            (
                FRAC_PI_2 * (a + 0.5 * LN_TWO_PI - b),
                FRAC_PI_2 * (a.abs() + b.abs() + 1.0),
            )
        }
        SpecialAngle::PiOver3 => {
            let a = log_gamma(2.0 / 3.0)?;
            let b = log_gamma(1.0 / 3.0)?;
            (
                PI / sqrt3 * (a + LN_TWO_PI / 3.0 - b),
                PI / sqrt3 * (a.abs() + b.abs() + 1.0),
            )
        }
        SpecialAngle::TwoPiOver3 => {
            let forms = TwoPiOver3Forms::compute()?;
            let residual = forms.residual();
            if residual.is_nan() || residual > TWO_FORM_TOL {
                return Err(Error::Inconsistent {
                    what: "the two forms of I(2pi/3) disagree".into(),
                    residual,
                });
            }
            (
                0.5 * (forms.bracket_form + forms.ratio_form),
                forms.bracket_form.abs() + residual,
            )
        }
    };
    Evaluation::new(
        which.angle(),
        value,
        Method::Closed,
        LOG_GAMMA_REL * magnitude,
        1,
    )
}

/// Shorthand used by reports: (ln(π/2) − γ) / 2 written out directly.
pub fn zero_limit_reference() -> f64 {
    0.5 * (FRAC_PI_2.ln() - EULER_GAMMA)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn at(phi: f64) -> f64 {
        malmsten_closed(Angle::new(phi).unwrap()).unwrap().value
    }

    // 40-digit values of the integral itself (adaptive quadrature, independent of Γ).
    #[allow(clippy::excessive_precision)]
    const I_PI_2: f64 = -0.260_442_806_300_988_45;
    #[allow(clippy::excessive_precision)]
    const I_PI_3: f64 = -0.126_321_481_706_209_04;
    #[allow(clippy::excessive_precision)]
    const I_2PI_3: f64 = -0.671_719_601_885_874_5;
    #[allow(clippy::excessive_precision)]
    const I_1_234: f64 = -0.159_887_573_813_038_3;
    #[allow(clippy::excessive_precision)]
    const I_ZERO: f64 = -0.062_816_479_806_038_998;

    #[test]
    fn printed_special_values() {
        assert!((special_value(SpecialAngle::PiOver2).unwrap().value - I_PI_2).abs() < 1e-14);
        assert!((special_value(SpecialAngle::PiOver3).unwrap().value - I_PI_3).abs() < 1e-14);
        assert!((special_value(SpecialAngle::TwoPiOver3).unwrap().value - I_2PI_3).abs() < 1e-14);
        assert!(TwoPiOver3Forms::compute().unwrap().residual() <= TWO_FORM_TOL);
    }

    #[test]
    fn closed_matches_reference_integrals() {
        assert!((at(FRAC_PI_2) - I_PI_2).abs() < 1e-14);
        assert!((at(PI / 3.0) - I_PI_3).abs() < 1e-14);
        assert!((at(2.0 * PI / 3.0) - I_2PI_3).abs() < 1e-14);
        assert!((at(1.234) - I_1_234).abs() < 1e-10);
    }

    #[test]
    fn specialization_agrees() {
        for which in SpecialAngle::ALL {
            let sv = special_value(which).unwrap().value;
            let cf = malmsten_closed(which.angle()).unwrap().value;
            assert!((sv - cf).abs() <= 1e-12, "{which:?}: {sv} vs {cf}");
        }
    }

    #[test]
    fn zero_limit_value() {
        let z = zero_limit();
        assert!((z.value - I_ZERO).abs() < 1e-15);
        assert!((z.value - zero_limit_reference()).abs() < 1e-15);
        assert_eq!(z.method, Method::Closed);
    }

    #[test]
    fn zero_band_redirects() {
        let tiny = Angle::new(5e-7).unwrap();
        assert!(matches!(
            malmsten_closed(tiny),
            Err(Error::ZeroRedirect { .. })
        ));
        assert_eq!(closed(tiny).unwrap().value, zero_limit().value);
    }

    #[test]
    fn continuity_at_zero() {
        let z = zero_limit().value;
        assert!((at(1e-4) - z).abs() <= 1e-8);
        // I is even, so the symmetric average is just I(1e-4) again.
        let avg = 0.5 * (at(1e-4) + at(-1e-4));
        assert!((avg - at(1e-4)).abs() <= 1e-12);
        // quadratic approach: (I(φ) − I(0)) / φ² settles to a constant
        let c2 = (at(1e-2) - z) / 1e-4;
        let c3 = (at(1e-3) - z) / 1e-6;
        assert!(c2.abs() < 1.0 && c3.abs() < 1.0);
        assert!((c2 - c3).abs() < 1e-3, "{c2} vs {c3}");
    }

    #[test]
    fn evenness_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = rng.gen_range(0.01..PI - 0.01);
            assert!((at(p) - at(-p)).abs() <= 1e-12, "phi={p}");
        }
    }

    #[test]
    fn reflection_variant_agrees() {
        for k in 1..40 {
            let p = -3.0 + 0.15 * k as f64;
            if p.abs() < 1e-3 {
                continue;
            }
            let a = Angle::new(p).unwrap();
            let r = reflected_closed(a).unwrap();
            assert!((r - at(p)).abs() <= 1e-12, "phi={p}");
        }
    }

    #[test]
    fn error_estimate_is_small_and_nonnegative() {
        let ev = malmsten_closed(Angle::new(2.9).unwrap()).unwrap();
        assert!(ev.est_error > 0.0 && ev.est_error < 1e-13);
        assert_eq!(ev.work, 1);
    }
}
