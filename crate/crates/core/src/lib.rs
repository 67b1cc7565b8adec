//! Numerical workbench for Malmstén's integral
//!
//! ```text
//! I(φ) = ∫₀¹ ln ln(1/x) / (1 + 2x cos φ + x²) dx,    −π < φ < π.
//! ```
//!
//! Four independent routes are provided: the Γ closed form
//! ([`closed_form`]), the power-series route ([`series`]), Kummer's expansion
//! of ln Γ ([`kummer`]) and double-exponential quadrature ([`quadrature`]).
//! [`verify`] cross-checks all of them.

mod accel;
pub mod closed_form;
pub mod error;
pub mod kummer;
pub mod quadrature;
pub mod report;
pub mod series;
pub mod special;
pub mod types;
pub mod verify;

pub use closed_form::{malmsten_closed, special_value, zero_limit, SpecialAngle};
pub use error::{Error, Result};
pub use kummer::{derived_sum_identity, kummer_partial, KummerPoint};
pub use quadrature::{quad_eval, quad_jn, quad_tan_form, QuadConfig, QuadResult, Transform};
pub use report::ComparisonReport;
pub use series::{series_eval, CoefficientWitness, SeriesConfig};
pub use special::{digamma, log_gamma, Constants};
pub use types::{Angle, AngleClass, Evaluation, Method};

/// Settings shared by [`evaluate`] across routes.
#[derive(Debug, Clone, Copy, Default)]
pub struct RouteConfig {
    pub series: SeriesConfig,
    pub quad: QuadConfig,
}

impl RouteConfig {
    /// Uses `tol` as the series tail tolerance and both quadrature tolerances.
    pub fn with_tolerance(tol: f64) -> Result<Self> {
        let series = SeriesConfig::default();
        let quad = QuadConfig::default();
        Ok(Self {
            series: SeriesConfig::new(series.max_terms, series.accel_depth, tol)?,
            quad: QuadConfig::new(tol, tol, quad.max_level, quad.transform)?,
        })
    }
}

/// I(φ) by the requested route.
///
/// The closed form falls back to the φ → 0 limit inside the zero band; the
/// series and Kummer routes have no such limit and refuse it.
pub fn evaluate(phi: Angle, method: Method, cfg: &RouteConfig) -> Result<Evaluation> {
    match method {
        Method::Closed => closed_form::closed(phi),
        Method::Series => series_eval(phi, &cfg.series),
        Method::Kummer => kummer::kummer_eval(phi, &cfg.series),
        Method::QuadUnit | Method::QuadExp | Method::QuadTan => {
            quadrature::quad_evaluation(phi, method, &cfg.quad)
        }
    }
}
