use std::f64::consts::FRAC_PI_6;
use std::fmt;

use crate::error::{Error, Result};

/// Upper end of the parameter range. At `t = π/6` the faces `BEF` and `DEF`
/// of p(t) become coplanar.
pub const T_MAX: f64 = FRAC_PI_6;

/// Family parameter `t`: the angle between `AB` and `AC`, in radians.
///
/// Any value in the closed range `[0, π/6]` is accepted. The endpoints are
/// degenerate for the mesh constructors, which reject them unless asked not to;
/// the closed-form functions evaluate them as limits. The value
/// [`T_MAX`] is treated as exactly `π/6`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize)]
#[serde(transparent)]
pub struct ParamT(f64);

impl ParamT {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::NonFiniteParameter(t));
        }
        if t < 0.0 {
            return Err(Error::NegativeParameter(t));
        }
        if t > T_MAX {
            return Err(Error::ParameterAboveDomain(t));
        }
        Ok(Self(t))
    }

    pub fn from_degrees(deg: f64) -> Result<Self> {
        // 30° must land on the endpoint exactly.
        if deg == 30.0 {
            return Ok(Self(T_MAX));
        }
        Self::new(deg.to_radians())
    }

    pub const fn upper_endpoint() -> Self {
        Self(T_MAX)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_lower_endpoint(self) -> bool {
        self.0 == 0.0
    }

    pub fn is_upper_endpoint(self) -> bool {
        self.0 == T_MAX
    }

    pub fn is_interior(self) -> bool {
        !self.is_lower_endpoint() && !self.is_upper_endpoint()
    }

    /// `100 cos²t − 75`, the radicand of `|AC|`; exactly zero at the upper endpoint.
    pub fn ac_radicand(self) -> f64 {
        if self.is_upper_endpoint() {
            0.0
        } else {
            ac_radicand_raw(self.0)
        }
    }
}

impl fmt::Display for ParamT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<f64> for ParamT {
    type Error = Error;

    fn try_from(t: f64) -> Result<Self> {
        Self::new(t)
    }
}

/// `100 cos²t − 75 = 100 (1/2 − sin t)(1/2 + sin t)`, clamped at zero.
///
/// Defined for any real `t` with `|sin t| <= 1/2`; used directly by the series
/// estimators, which need the analytic continuation to negative `t`.
pub(crate) fn ac_radicand_raw(t: f64) -> f64 {
    let s = t.sin();
    (100.0 * (0.5 - s) * (0.5 + s)).max(0.0)
}
