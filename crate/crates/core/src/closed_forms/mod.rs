//! Closed-form volumes of p(t) and q(t), the apex angle of q, and the range of
//! `t` on which both families exist.

mod existence;
mod series;

pub use existence::{existence_interval, ExistenceInterval};
pub use series::{maclaurin_check, SeriesCoeffs, SeriesFunction, SeriesTerm};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{length_ac, length_ae};
use crate::param::ParamT;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Strict lower bound on `|A′E′|` for q(t) to exist: `12 − 5√3`.
pub const AE_LOWER: f64 = 12.0 - 5.0 * SQRT3;
/// Strict upper bound on `|A′E′|` for q(t) to exist: `12 + 5√3`.
pub const AE_UPPER: f64 = 12.0 + 5.0 * SQRT3;

/// Area of the regular equator triangle `A′B′D′` of side 10.
pub const EQUATOR_AREA_Q: f64 = 25.0 * SQRT3;

/// Angle of triangle `A′C′E′` at `A′`, with its cosine and sine kept exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Alpha {
    pub value: f64,
    pub cos: f64,
    pub sin: f64,
}

/// `vol p(t) = 80 (10 cos t + √(100 cos²t − 75)) sin t`.
pub fn vol_p_closed(t: ParamT) -> f64 {
    80.0 * length_ac(t) * t.value().sin()
}

/// `438 x² − x⁴ − 69²`, which vanishes at both ends of the existence range of `x = |A′E′|`.
pub fn apex_radicand(ae: f64) -> f64 {
    let x2 = ae * ae;
    438.0 * x2 - x2 * x2 - 69.0 * 69.0
}

// Round-off in `apex_radicand` is bounded by a few ulps of its largest term.
fn clamped_apex_radicand(ae: f64) -> Result<f64> {
    let r = apex_radicand(ae);
    let x2 = ae * ae;
    let slack = 8.0 * f64::EPSILON * (438.0 * x2 + x2 * x2 + 69.0 * 69.0);
    if r >= 0.0 {
        Ok(r)
    } else if r >= -slack {
        Ok(0.0)
    } else {
        Err(Error::Domain(format!(
            "|A'E'| = {ae} gives 438x² − x⁴ − 69² = {r} < 0; triangle A'C'E' does not exist"
        )))
    }
}

/// Apex angle from `cos α = (x² − 69)/(10√3 x)`, `sin α = √(438x² − x⁴ − 69²)/(10√3 x)`.
pub fn alpha_of_ae(ae: f64) -> Result<Alpha> {
    if !(ae.is_finite() && ae > 0.0) {
        return Err(Error::Domain(format!("|A'E'| = {ae} must be positive")));
    }
    let r = clamped_apex_radicand(ae)?;
    let denom = 10.0 * SQRT3 * ae;
    let cos = (ae * ae - 69.0) / denom;
    let sin = r.sqrt() / denom;
    Ok(Alpha {
        value: sin.atan2(cos),
        cos,
        sin,
    })
}

/// `vol q = (5/3) √(438 x² − x⁴ − 69²)` with `x = |A′E′|`.
pub fn vol_q_closed_of_ae(ae: f64) -> Result<f64> {
    if !(ae.is_finite() && ae > 0.0) {
        return Err(Error::Domain(format!("|A'E'| = {ae} must be positive")));
    }
    Ok(5.0 / 3.0 * clamped_apex_radicand(ae)?.sqrt())
}

/// `vol q = (2 sin α / 3) |A′E′| area(A′B′D′)`, with `sin α` taken from `cos α`.
///
/// Independent of [`vol_q_closed_of_ae`] apart from the input.
pub fn vol_q_via_alpha(ae: f64) -> Result<f64> {
    if !(ae.is_finite() && ae > 0.0) {
        return Err(Error::Domain(format!("|A'E'| = {ae} must be positive")));
    }
    let cos = (ae * ae - 69.0) / (10.0 * SQRT3 * ae);
    if cos.abs() > 1.0 {
        return Err(Error::Domain(format!("cos α = {cos} for |A'E'| = {ae}")));
    }
    let sin = (1.0 - cos * cos).sqrt();
    Ok(2.0 * sin / 3.0 * ae * EQUATOR_AREA_Q)
}

/// `vol q(t)`: [`vol_q_closed_of_ae`] composed with `|AE|(t)`.
pub fn vol_q_closed(t: ParamT) -> f64 {
    // |AE| stays in [√219, 3√41], well inside the existence range.
    vol_q_closed_of_ae(length_ae(t)).expect("|AE|(t) lies inside the existence range")
}
