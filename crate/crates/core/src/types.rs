use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Below this |φ| the generic closed form is routed to the φ → 0 limit.
pub const ZERO_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AngleClass {
    Zero,
    Regular,
}

/// An evaluation point φ in the open interval (−π, π).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Angle {
    phi: f64,
}

impl Angle {
    pub fn new(phi: f64) -> Result<Self> {
        if !phi.is_finite() || phi.abs() >= PI {
            return Err(Error::domain(format!(
                "phi = {phi} is outside the open interval (-pi, pi)"
            )));
        }
        Ok(Self { phi })
    }

    pub fn radians(self) -> f64 {
        self.phi
    }

    pub fn class(self) -> AngleClass {
        if self.phi.abs() < ZERO_THRESHOLD {
            AngleClass::Zero
        } else {
            AngleClass::Regular
        }
    }

    pub fn is_zero(self) -> bool {
        self.class() == AngleClass::Zero
    }

    /// True when φ is π/2 up to rounding of the literal.
    pub fn is_half_pi(self) -> bool {
        (self.phi - FRAC_PI_2).abs() <= 4.0 * f64::EPSILON
    }

    pub fn negated(self) -> Self {
        Self { phi: -self.phi }
    }

    pub(crate) fn require_regular(self) -> Result<()> {
        match self.class() {
            AngleClass::Zero => Err(Error::ZeroRedirect { phi: self.phi }),
            AngleClass::Regular => Ok(()),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.phi.fmt(f)
    }
}

/// Which route produced an [`Evaluation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Closed,
    Series,
    QuadUnit,
    QuadExp,
    QuadTan,
    Kummer,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Closed,
        Method::Series,
        Method::QuadUnit,
        Method::QuadExp,
        Method::QuadTan,
        Method::Kummer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Series => "series",
            Method::QuadUnit => "quad_unit",
            Method::QuadExp => "quad_exp",
            Method::QuadTan => "quad_tan",
            Method::Kummer => "kummer",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "closed" => Ok(Method::Closed),
            "series" => Ok(Method::Series),
            // plain `quad` means the primary (exp-substitution) scheme
            "quad" | "quad_exp" => Ok(Method::QuadExp),
            "quad_unit" => Ok(Method::QuadUnit),
            "quad_tan" => Ok(Method::QuadTan),
            "kummer" => Ok(Method::Kummer),
            other => Err(Error::domain(format!("unknown method `{other}`"))),
        }
    }
}

/// One numeric result for I(φ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub phi: Angle,
    pub value: f64,
    pub method: Method,
    pub est_error: f64,
    /// Series terms or quadrature nodes consumed.
    pub work: u64,
}

impl Evaluation {
    pub fn new(phi: Angle, value: f64, method: Method, est_error: f64, work: u64) -> Result<Self> {
        if method == Method::QuadTan && !phi.is_half_pi() {
            return Err(Error::domain("the tangent form only represents phi = pi/2"));
        }
        if est_error.is_nan() || est_error < 0.0 {
            return Err(Error::domain(format!(
                "negative error estimate {est_error}"
            )));
        }
        Ok(Self {
            phi,
            value,
            method,
            est_error,
            work: work.max(1),
        })
    }
}
