//! Angle expressions accepted on the command line.
//!
//! ```text
//! expr    := ["-"] body
//! body    := decimal | "pi" | "pi/" INT | INT "*pi/" INT
//! ```
//!
//! Whitespace is ignored. Anything else is rejected.

use std::f64::consts::PI;

use malmsten_core::Angle;

/// Parses an expression to radians without checking the angle domain.
pub fn parse_radians(expr: &str) -> Result<f64, String> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let (sign, body) = match compact.strip_prefix('-') {
        Some(rest) => (-1.0, rest),
        None => (1.0, compact.as_str()),
    };
    let bad = || format!("cannot parse angle `{expr}` (expected a decimal, pi, pi/N or K*pi/N)");
    let magnitude = if body == "pi" {
        PI
    } else if let Some(den) = body.strip_prefix("pi/") {
        PI / positive_int(den).ok_or_else(bad)?
    } else if let Some((num, den)) = body.split_once("*pi/") {
        let num = positive_int(num).ok_or_else(bad)?;
        let den = positive_int(den).ok_or_else(bad)?;
        num * PI / den
    } else {
        decimal(body).ok_or_else(bad)?
    };
    Ok(sign * magnitude)
}

/// Parses and validates an angle in (−π, π).
pub fn parse_angle(expr: &str) -> Result<Angle, String> {
    let phi = parse_radians(expr)?;
    Angle::new(phi).map_err(|e| format!("{expr}: {e}"))
}

fn positive_int(s: &str) -> Option<f64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let v: u64 = s.parse().ok()?;
    (v > 0).then_some(v as f64)
}

fn decimal(s: &str) -> Option<f64> {
    let starts_ok = s.starts_with(|c: char| c.is_ascii_digit() || c == '.');
    let chars_ok = s
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'));
    if !starts_ok || !chars_ok {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}
