use serde::Serialize;

use super::{apex_radicand, AE_LOWER, AE_UPPER};
use crate::geometry::length_ae_raw;
use crate::param::ac_radicand_raw;

/// Open range of `t` on which p(t) and q(t) both exist and are non-degenerate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExistenceInterval {
    pub lower: f64,
    pub upper: f64,
    /// Interior grid points at which every constraint was checked.
    pub grid_points: usize,
}

impl ExistenceInterval {
    pub fn contains(&self, t: f64) -> bool {
        self.lower < t && t < self.upper
    }
}

const GRID: usize = 10_000;

/// Every strict inequality needed to build both meshes at `t`.
///
/// Requires `t` inside the domain of `|AC|`.
pub(crate) fn constraints_hold(t: f64) -> bool {
    let s = ac_radicand_raw(t).sqrt();
    let ac = 10.0 * t.cos() + s;
    let ae = length_ae_raw(t);
    let tri = |a: f64, b: f64, c: f64| a + b > c && b + c > a && a + c > b;
    // p: triangle ABC is non-flat, and its faces ABE, BEF.
    let p_ok = tri(10.0, 5.0, ac) && tri(10.0, 13.0, ae) && tri(13.0, 13.0, 24.0);
    // q: faces A′B′E′, B′D′E′, refinement triangle B′C′E′, and A′C′E′.
    let q_ok = tri(10.0, 13.0, ae)
        && tri(10.0, 13.0, 13.0)
        && tri(5.0, 12.0, 13.0)
        && AE_LOWER < ae
        && ae < AE_UPPER
        && apex_radicand(ae) > 0.0;
    p_ok && q_ok
}

/// Locates the range of `t` where both families exist.
///
/// The upper end of the domain of `|AC|` (where `100 cos²t = 75`) is found
/// by bisection; the remaining constraints are then checked on a grid and,
/// if any fails, the first failure is refined by bisection as well.
pub fn existence_interval() -> ExistenceInterval {
    let in_domain = |t: f64| {
        let s = t.sin();
        100.0 * (0.5 - s) * (0.5 + s) >= 0.0
    };
    let mut upper = bisect_boundary(0.0, std::f64::consts::FRAC_PI_2, in_domain);

    let mut lower = 0.0;
    // Constraints fail at t = 0 itself (triangle ABC is flat), so look just inside.
    let step = upper / (GRID + 1) as f64;
    for i in 1..=GRID {
        let t = step * i as f64;
        if !constraints_hold(t) {
            upper = bisect_boundary(step * (i - 1) as f64, t, constraints_hold);
            break;
        }
    }
    if !constraints_hold(step) {
        lower = step;
    }
    ExistenceInterval {
        lower,
        upper,
        grid_points: GRID,
    }
}

/// Last point of `[good, bad]` where `pred` holds, assuming it holds at `good`.
fn bisect_boundary(mut good: f64, mut bad: f64, pred: impl Fn(f64) -> bool) -> f64 {
    while bad - good > f64::EPSILON * bad.abs() {
        let mid = 0.5 * (good + bad);
        if mid <= good || mid >= bad {
            break;
        }
        if pred(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::length_ae;
    use crate::param::{ParamT, T_MAX};

    #[test]
    fn interval_is_zero_to_pi_over_six() {
        let iv = existence_interval();
        assert_eq!(iv.lower, 0.0);
        assert!((iv.upper - T_MAX).abs() < 1e-15, "{}", iv.upper);
        assert!(iv.contains(0.3));
        assert!(!iv.contains(0.0));
        assert!(!iv.contains(0.6));
    }

    #[test]
    fn endpoint_lengths_inside_bounds() {
        let at0 = length_ae(ParamT::new(0.0).unwrap());
        let at_end = length_ae(ParamT::upper_endpoint());
        assert!((at0 - 3.0 * 41f64.sqrt()).abs() < 1e-14);
        assert!((AE_LOWER - 3.3397).abs() < 1e-4 && (AE_UPPER - 20.6603).abs() < 1e-4);
        for ae in [at0, at_end] {
            assert!(AE_LOWER < ae && ae < AE_UPPER);
        }
    }

    #[test]
    fn constraints_on_dense_grid() {
        for i in 1..GRID {
            assert!(constraints_hold(T_MAX * i as f64 / GRID as f64));
        }
        assert!(!constraints_hold(0.0));
    }
}
