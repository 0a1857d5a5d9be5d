//! Finding `t*` with `vol q(t*) > c · vol p(t*)`, and parameter sweeps.

use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{existence_interval, vol_p_closed, vol_q_closed};
use crate::error::{Error, Result};
use crate::geometry::{construct_p, construct_q, Label, Segment};
use crate::param::ParamT;
use crate::tolerance::{relative_error, Tolerances, T_STAR_FLOOR};
use crate::verification::{
    certify_isometry_with, combinatorics_check, convexity_with, mesh_volume, ConvexityReport,
};

/// `vol q(0) = 50√23`, the leading term of the numerator of the ratio.
const VOL_Q_AT_ZERO: f64 = 239.791_576_165_636_02;
/// `vol p(t) ≈ 1200 t` near zero.
const VOL_P_SLOPE: f64 = 1200.0;

/// Requested volume ratio `c` and the safety factor applied to it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioTarget {
    pub c: f64,
    pub margin: f64,
    /// Smallest acceptable `t*`.
    pub floor: f64,
}

impl RatioTarget {
    pub fn new(c: f64) -> Result<Self> {
        Self::with_margin(c, 2.0)
    }

    pub fn with_margin(c: f64, margin: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidTarget(format!(
                "c = {c} must be finite and positive"
            )));
        }
        if !(margin.is_finite() && margin >= 1.0) {
            return Err(Error::InvalidTarget(format!(
                "margin = {margin} must be at least 1"
            )));
        }
        Ok(Self {
            c,
            margin,
            floor: T_STAR_FLOOR,
        })
    }

    pub fn goal(&self) -> f64 {
        self.c * self.margin
    }
}

/// `vol q(t) / vol p(t)` from the closed forms.
pub fn ratio(t: ParamT) -> Result<f64> {
    if t.is_lower_endpoint() {
        return Err(Error::DivisionDegenerate);
    }
    Ok(vol_q_closed(t) / vol_p_closed(t))
}

/// Every check applied to the pair `(p(t), q(t))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParameterReport {
    pub t: ParamT,
    pub vol_p_closed: f64,
    pub vol_q_closed: f64,
    /// `None` below the mesh-oracle floor.
    pub vol_p_mesh: Option<f64>,
    pub vol_q_mesh: Option<f64>,
    pub ratio: f64,
    pub p_convexity: ConvexityReport,
    pub q_convexity: ConvexityReport,
    pub isometry_discrepancy: f64,
    pub isometry_valid: bool,
    pub combinatorics_ok: bool,
    pub tolerances: Tolerances,
}

impl ParameterReport {
    pub fn volumes_agree(&self) -> bool {
        let ok = |mesh: Option<f64>, closed: f64| {
            mesh.is_none_or(|m| relative_error(m, closed) < self.tolerances.volume_rel)
        };
        ok(self.vol_p_mesh, self.vol_p_closed) && ok(self.vol_q_mesh, self.vol_q_closed)
    }

    pub fn q_reflex_along_bd(&self) -> bool {
        self.q_convexity
            .has_reflex_edge(&Segment::new(Label::B, Label::D).name(crate::Family::Q))
    }

    /// Volumes agree, p convex, q nonconvex, isometric, same combinatorics.
    pub fn passes(&self) -> bool {
        self.volumes_agree()
            && self.p_convexity.is_convex
            && !self.q_convexity.is_convex
            && self.isometry_valid
            && self.combinatorics_ok
    }

    /// [`passes`](Self::passes) together with `ratio > c`.
    pub fn proves(&self, c: f64) -> bool {
        self.passes() && self.ratio > c
    }

    /// Names of the checks that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.volumes_agree() {
            out.push("closed-form and mesh volumes disagree");
        }
        if !self.p_convexity.is_convex {
            out.push("p is not convex");
        }
        if self.q_convexity.is_convex {
            out.push("q is convex");
        }
        if !self.isometry_valid {
            out.push("isometry certificate invalid");
        }
        if !self.combinatorics_ok {
            out.push("combinatorics differ from a bipyramid");
        }
        out
    }
}

pub fn check_parameter(t: ParamT, tol: &Tolerances) -> Result<ParameterReport> {
    let p = construct_p(t)?;
    let q = construct_q(t)?;
    let (vp, vq) = (vol_p_closed(t), vol_q_closed(t));
    let oracle = t.value() >= tol.mesh_oracle_floor;
    let vol_p_mesh = if oracle { Some(mesh_volume(&p)?) } else { None };
    let vol_q_mesh = if oracle { Some(mesh_volume(&q)?) } else { None };
    let cert = certify_isometry_with(&p, &q, tol.isometry_abs)?;
    Ok(ParameterReport {
        t,
        vol_p_closed: vp,
        vol_q_closed: vq,
        vol_p_mesh,
        vol_q_mesh,
        ratio: vq / vp,
        p_convexity: convexity_with(&p, tol.convexity_abs)?,
        q_convexity: convexity_with(&q, tol.convexity_abs)?,
        isometry_discrepancy: cert.max_discrepancy,
        isometry_valid: cert.is_valid(),
        combinatorics_ok: combinatorics_check(&p, &q),
        tolerances: *tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    pub target: RatioTarget,
    pub t_star: ParamT,
    pub report: ParameterReport,
}

pub fn find_t_star(target: &RatioTarget) -> Result<Solution> {
    find_t_star_with(target, &Tolerances::default())
}

/// Picks `t*` with `ratio(t*) >= margin · c` and checks the resulting pair.
///
/// The search starts from the leading-order estimate
/// `t ≈ 50√23 / (1200 · margin · c)` clamped into the existence interval.
/// If that point misses the goal, `t` is halved until it meets it, and the
/// last bracket is bisected towards the largest passing `t`. The ratio is
/// only ever evaluated, never assumed monotone.
pub fn find_t_star_with(target: &RatioTarget, tol: &Tolerances) -> Result<Solution> {
    let goal = target.goal();
    let iv = existence_interval();
    let meets = |t: f64| -> Result<bool> { Ok(ratio(ParamT::new(t)?)? >= goal) };

    let ceiling = iv.upper * (1.0 - 1e-9);
    let seed = (VOL_Q_AT_ZERO / (VOL_P_SLOPE * goal)).min(ceiling);
    let mut t = seed;
    if seed < target.floor {
        return Err(Error::Underflow {
            t: seed,
            c: target.c,
            floor: target.floor,
        });
    }
    if !meets(t)? {
        let mut failing = t;
        loop {
            t *= 0.5;
            if t < target.floor {
                return Err(Error::Underflow {
                    t,
                    c: target.c,
                    floor: target.floor,
                });
            }
            if meets(t)? {
                break;
            }
            failing = t;
        }
        let mut passing = t;
        for _ in 0..200 {
            let mid = 0.5 * (passing + failing);
            if mid <= passing || mid >= failing {
                break;
            }
            if meets(mid)? {
                passing = mid;
            } else {
                failing = mid;
            }
        }
        t = passing;
    }

    let t_star = ParamT::new(t)?;
    let report = check_parameter(t_star, tol)?;
    if !report.proves(target.c) {
        let mut why = report.failures();
        if report.ratio <= target.c {
            why.push("ratio does not exceed c");
        }
        return Err(Error::Verification(format!("t* = {t}: {}", why.join(", "))));
    }
    Ok(Solution {
        target: *target,
        t_star,
        report,
    })
}

/// One row of a parameter sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    pub t: f64,
    pub vol_p_closed: f64,
    pub vol_p_mesh: f64,
    pub vol_q_closed: f64,
    pub vol_q_mesh: f64,
    pub ratio: f64,
    pub p_convex: bool,
    pub q_convex: bool,
    pub iso_discrepancy: f64,
}

impl SweepRecord {
    pub fn compute(t: ParamT, tol: &Tolerances) -> Result<Self> {
        let p = construct_p(t)?;
        let q = construct_q(t)?;
        let (vp, vq) = (vol_p_closed(t), vol_q_closed(t));
        Ok(Self {
            t: t.value(),
            vol_p_closed: vp,
            vol_p_mesh: mesh_volume(&p)?,
            vol_q_closed: vq,
            vol_q_mesh: mesh_volume(&q)?,
            ratio: vq / vp,
            p_convex: convexity_with(&p, tol.convexity_abs)?.is_convex,
            q_convex: convexity_with(&q, tol.convexity_abs)?.is_convex,
            iso_discrepancy: certify_isometry_with(&p, &q, tol.isometry_abs)?.max_discrepancy,
        })
    }

    /// Both volume routes agree (above the mesh-oracle floor), p convex,
    /// q nonconvex, and the isometry certificate holds.
    pub fn is_valid(&self, tol: &Tolerances) -> bool {
        let agree = self.t < tol.mesh_oracle_floor
            || (relative_error(self.vol_p_mesh, self.vol_p_closed) < tol.volume_rel
                && relative_error(self.vol_q_mesh, self.vol_q_closed) < tol.volume_rel);
        agree && self.p_convex && !self.q_convex && self.iso_discrepancy < tol.isometry_abs
    }
}

pub fn sweep(t_min: f64, t_max: f64, steps: usize) -> Result<Vec<SweepRecord>> {
    sweep_with(t_min, t_max, steps, &Tolerances::default())
}

/// `steps` uniformly spaced rows from `t_min` to `t_max` inclusive.
pub fn sweep_with(
    t_min: f64,
    t_max: f64,
    steps: usize,
    tol: &Tolerances,
) -> Result<Vec<SweepRecord>> {
    if steps < 2 {
        return Err(Error::Bounds(format!(
            "steps = {steps}; at least 2 are needed"
        )));
    }
    if !(t_min.is_finite() && t_max.is_finite() && 0.0 < t_min && t_min < t_max) {
        return Err(Error::Bounds(format!(
            "need 0 < t_min < t_max < π/6, got t_min = {t_min}, t_max = {t_max}"
        )));
    }
    let hi = ParamT::new(t_max)?;
    if hi.is_upper_endpoint() {
        return Err(Error::Bounds("t_max must be strictly below π/6".into()));
    }
    let step = (t_max - t_min) / (steps - 1) as f64;
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let t = if i + 1 == steps {
                t_max
            } else {
                t_min + step * i as f64
            };
            SweepRecord::compute(ParamT::new(t)?, tol)
        })
        .collect()
}

/// Empirical shape of the ratio column of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub all_valid: bool,
    pub ratio_strictly_decreasing: bool,
    /// Row index of the smallest ratio.
    pub min_ratio_row: usize,
    pub min_ratio: f64,
}

pub fn summarize(rows: &[SweepRecord], tol: &Tolerances) -> SweepSummary {
    let (min_ratio_row, min_ratio) = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (i, r.ratio))
        .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    SweepSummary {
        rows: rows.len(),
        all_valid: rows.iter().all(|r| r.is_valid(tol)),
        ratio_strictly_decreasing: rows.windows(2).all(|w| w[1].ratio < w[0].ratio),
        min_ratio_row,
        min_ratio,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::param::T_MAX;

    fn t(v: f64) -> ParamT {
        ParamT::new(v).unwrap()
    }

    #[test]
    fn ratio_examples() {
        assert!(matches!(ratio(t(0.0)), Err(Error::DivisionDegenerate)));
        assert!((ratio(ParamT::upper_endpoint()).unwrap() - 1.0).abs() < 1e-12);
        // 40-digit reference: 199.8271982085926694...
        assert!((ratio(t(1e-3)).unwrap() - 199.827_198_208_592_67).abs() < 1e-9);
        assert!(ratio(t(1e-6)).unwrap() > 1e5);
    }

    #[test]
    fn leading_constant() {
        assert!((VOL_Q_AT_ZERO - 50.0 * 23f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn target_validation() {
        assert!(RatioTarget::new(0.0).is_err());
        assert!(RatioTarget::new(f64::INFINITY).is_err());
        assert!(RatioTarget::with_margin(1.0, 0.5).is_err());
    }

    #[test]
    fn solves_small_and_large_targets() {
        let s = find_t_star(&RatioTarget::new(1.0).unwrap()).unwrap();
        assert!(s.report.ratio >= 2.0);
        assert!(s.t_star.value() > 0.05);

        let s = find_t_star(&RatioTarget::new(100.0).unwrap()).unwrap();
        assert!(s.report.ratio > 200.0);
        assert!(s.t_star.value() > 1e-4 && s.t_star.value() < 1e-2);
        assert!(s.report.vol_p_mesh.is_some());

        let s = find_t_star(&RatioTarget::new(1e6).unwrap()).unwrap();
        assert!(s.t_star.value() > 1e-8 && s.t_star.value() < 1e-6);
        assert!(s.report.vol_p_mesh.is_none());
        assert!(s.report.ratio > 1e6);
    }

    #[test]
    fn tiny_target_is_clamped_into_interval() {
        let s = find_t_star(&RatioTarget::new(1e-3).unwrap()).unwrap();
        assert!(s.t_star.value() < T_MAX);
    }

    #[test]
    fn huge_target_underflows() {
        assert!(matches!(
            find_t_star(&RatioTarget::new(1e20).unwrap()),
            Err(Error::Underflow { .. })
        ));
    }

    #[test]
    fn sweep_rows_are_consistent() {
        let rows = sweep(0.01, 0.5, 50).unwrap();
        assert_eq!(rows.len(), 50);
        assert_eq!(rows[0].t, 0.01);
        assert_eq!(rows[49].t, 0.5);
        let tol = Tolerances::default();
        for r in &rows {
            assert!(r.is_valid(&tol), "{r:?}");
            assert_eq!(r.ratio, r.vol_q_closed / r.vol_p_closed);
        }
        let s = summarize(&rows, &tol);
        assert!(s.all_valid);
        // The ratio bottoms out near t ≈ 0.427 and climbs back to 1 at π/6.
        assert!(!s.ratio_strictly_decreasing);
        assert!((rows[s.min_ratio_row].t - 0.427).abs() < 0.02);
        let early: Vec<_> = rows.iter().filter(|r| r.t < 0.4).collect();
        assert!(early.windows(2).all(|w| w[1].ratio < w[0].ratio));
    }

    #[test]
    fn sweep_bounds() {
        assert!(matches!(sweep(0.5, 0.01, 10), Err(Error::Bounds(_))));
        assert!(matches!(sweep(0.01, 0.5, 1), Err(Error::Bounds(_))));
        assert!(matches!(sweep(0.0, 0.5, 3), Err(Error::Bounds(_))));
        assert!(sweep(0.01, 0.6, 3).is_err());
        assert!(sweep(0.01, T_MAX, 3).is_err());
    }
}
