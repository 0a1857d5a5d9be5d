//! Numeric Maclaurin coefficients by central differences with two levels of
//! Richardson extrapolation, compared against published reference values.

use std::fmt;

use serde::Serialize;

use super::{apex_radicand, AE_LOWER};
use crate::error::{Error, Result};
use crate::geometry::length_ae_raw;
use crate::param::ac_radicand_raw;
use crate::tolerance::{SERIES_REL, SERIES_ZERO_ABS};

/// Base step of the difference quotients.
pub const STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesFunction {
    /// `|AE|(t)`
    Ae,
    /// `vol p(t)`
    VolP,
    /// `vol q(t)`
    VolQ,
}

impl SeriesFunction {
    pub const ALL: [SeriesFunction; 3] = [
        SeriesFunction::Ae,
        SeriesFunction::VolP,
        SeriesFunction::VolQ,
    ];

    /// Analytic continuation to small negative `t`, where the closed forms
    /// are even (`|AE|`, `vol q`) or odd (`vol p`).
    fn eval(self, t: f64) -> f64 {
        match self {
            SeriesFunction::Ae => length_ae_raw(t),
            SeriesFunction::VolP => 80.0 * (10.0 * t.cos() + ac_radicand_raw(t).sqrt()) * t.sin(),
            SeriesFunction::VolQ => {
                let ae = length_ae_raw(t);
                debug_assert!(ae > AE_LOWER);
                5.0 / 3.0 * apex_radicand(ae).max(0.0).sqrt()
            }
        }
    }

    /// Published coefficients `c0..c3`; the odd or even halves vanish by parity.
    pub fn reference(self) -> [f64; 4] {
        let sqrt41 = 41f64.sqrt();
        let sqrt23 = 23f64.sqrt();
        match self {
            SeriesFunction::Ae => [3.0 * sqrt41, 0.0, -117.0 / (2.0 * sqrt41), 0.0],
            SeriesFunction::VolP => [0.0, 1200.0, 0.0, -1400.0],
            SeriesFunction::VolQ => [50.0 * sqrt23, 0.0, 3750.0 / sqrt23, 0.0],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SeriesFunction::Ae => "AE",
            SeriesFunction::VolP => "vol_p",
            SeriesFunction::VolQ => "vol_q",
        }
    }
}

impl fmt::Display for SeriesFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SeriesFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ae" => Ok(SeriesFunction::Ae),
            "vol_p" | "volp" | "p" => Ok(SeriesFunction::VolP),
            "vol_q" | "volq" | "q" => Ok(SeriesFunction::VolQ),
            _ => Err(Error::Domain(format!("unknown series function {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesTerm {
    pub order: usize,
    pub numeric: f64,
    pub reference: f64,
}

impl SeriesTerm {
    /// Relative error against a nonzero reference, absolute error against zero.
    pub fn error(&self) -> f64 {
        if self.reference == 0.0 {
            self.numeric.abs()
        } else {
            ((self.numeric - self.reference) / self.reference).abs()
        }
    }

    pub fn agrees(&self) -> bool {
        let tol = if self.reference == 0.0 {
            SERIES_ZERO_ABS
        } else {
            SERIES_REL
        };
        self.error() <= tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesCoeffs {
    pub function: SeriesFunction,
    /// Coefficients `c0` through `c_order`.
    pub terms: Vec<SeriesTerm>,
    pub step: f64,
}

impl SeriesCoeffs {
    pub fn term(&self, order: usize) -> Option<&SeriesTerm> {
        self.terms.get(order)
    }

    pub fn all_agree(&self) -> bool {
        self.terms.iter().all(SeriesTerm::agrees)
    }
}

/// Estimates `c0..=order` of the Maclaurin series of `function` at `t = 0`.
pub fn maclaurin_check(function: SeriesFunction, order: usize) -> Result<SeriesCoeffs> {
    if order > 3 {
        return Err(Error::UnsupportedOrder(order));
    }
    let f = |t: f64| function.eval(t);
    let reference = function.reference();
    let terms = (0..=order)
        .map(|k| SeriesTerm {
            order: k,
            numeric: coefficient(&f, k, STEP),
            reference: reference[k],
        })
        .collect();
    Ok(SeriesCoeffs {
        function,
        terms,
        step: STEP,
    })
}

/// `f^(k)(0) / k!` from a central difference whose error is even in `h`.
fn coefficient(f: &impl Fn(f64) -> f64, k: usize, h: f64) -> f64 {
    let quotient = |h: f64| match k {
        0 => f(0.0),
        1 => (f(h) - f(-h)) / (2.0 * h),
        2 => (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h) / 2.0,
        3 => (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (2.0 * h * h * h) / 6.0,
        _ => unreachable!("order checked by caller"),
    };
    richardson2(quotient, h)
}

/// Two Richardson levels for an estimate `D(h) = D + a h² + b h⁴ + …`.
fn richardson2(d: impl Fn(f64) -> f64, h: f64) -> f64 {
    let (d0, d1, d2) = (d(h), d(h / 2.0), d(h / 4.0));
    let r0 = (4.0 * d1 - d0) / 3.0;
    let r1 = (4.0 * d2 - d1) / 3.0;
    (16.0 * r1 - r0) / 15.0
}
