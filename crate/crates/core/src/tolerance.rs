//! Numerical tolerances shared by construction, verification and the solver.
//!
//! Lengths are in the same abstract unit as the prescribed edges (`|AB| = 10`,
//! `|EF| = 24`), so absolute and relative bands are of the same order here.

/// Realized edge lengths against the prescribed table (relative).
pub const CONSTRUCTION_REL: f64 = 1e-12;

/// Closed-form volume against the mesh oracle (relative).
pub const VOLUME_REL: f64 = 1e-9;

/// A vertex farther than this outside a face plane makes the mesh nonconvex (absolute).
pub const CONVEXITY_ABS: f64 = 1e-9;

/// Maximal side-length discrepancy of a valid isometry certificate (absolute).
pub const ISOMETRY_ABS: f64 = 1e-12;

/// Numeric Maclaurin coefficients against reference values (relative).
pub const SERIES_REL: f64 = 1e-5;

/// Numeric Maclaurin coefficients whose reference value is zero (absolute).
pub const SERIES_ZERO_ABS: f64 = 1e-6;

/// Below this `t` the mesh-volume cross-check is skipped: p(t) is a sliver.
pub const MESH_ORACLE_FLOOR: f64 = 1e-6;

/// Smallest `t*` the solver is willing to return.
pub const T_STAR_FLOOR: f64 = 1e-12;

/// Runtime-adjustable copy of the verification tolerances.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Tolerances {
    pub construction_rel: f64,
    pub volume_rel: f64,
    pub convexity_abs: f64,
    pub isometry_abs: f64,
    pub mesh_oracle_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            construction_rel: CONSTRUCTION_REL,
            volume_rel: VOLUME_REL,
            convexity_abs: CONVEXITY_ABS,
            isometry_abs: ISOMETRY_ABS,
            mesh_oracle_floor: MESH_ORACLE_FLOOR,
        }
    }
}

pub(crate) fn relative_error(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        value.abs()
    } else {
        ((value - reference) / reference).abs()
    }
}
