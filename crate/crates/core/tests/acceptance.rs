//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line; run with
//! `cargo test -p bipyramid --test acceptance -- --nocapture --test-threads=1`.

use std::time::{Duration, Instant};

use bipyramid::closed_forms::{
    apex_radicand, maclaurin_check, vol_p_closed, vol_q_closed, SeriesFunction, AE_LOWER, AE_UPPER,
};
use bipyramid::geometry::{construct_p, construct_q, length_ae, Label, Vector3};
use bipyramid::param::T_MAX;
use bipyramid::solver::{find_t_star, RatioTarget};
use bipyramid::verification::{certify_isometry, combinatorics, mesh_volume};
use bipyramid::ParamT;

fn t(v: f64) -> ParamT {
    ParamT::new(v).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn report(n: u32, ok: bool, detail: String) {
    println!(
        "[{}] criterion {n}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

fn within(start: Instant, limit: Duration) -> bool {
    start.elapsed() < limit
}

#[test]
fn criterion_1_vol_q_limit() {
    let start = Instant::now();
    let v = vol_q_closed(t(1e-4));
    let err = (v - 50.0 * 23f64.sqrt()).abs();
    report(
        1,
        err < 1e-3 && within(start, Duration::from_secs(1)),
        format!("|vol_q(1e-4) - 50√23| = {err:.3e} < 1e-3 (vol_q = {v})"),
    );
}

#[test]
fn criterion_2_vol_p_slope() {
    let start = Instant::now();
    let h = 1e-4;
    let err = (vol_p_closed(t(h)) / h - 1200.0).abs();
    report(
        2,
        err < 1e-2 && within(start, Duration::from_secs(1)),
        format!("|vol_p(1e-4)/1e-4 - 1200| = {err:.3e} < 1e-2"),
    );
}

#[test]
fn criterion_3_series_coefficients() {
    let start = Instant::now();
    let wanted = [
        (SeriesFunction::Ae, 0),
        (SeriesFunction::Ae, 2),
        (SeriesFunction::VolP, 1),
        (SeriesFunction::VolP, 3),
        (SeriesFunction::VolQ, 0),
        (SeriesFunction::VolQ, 2),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (f, k) in wanted {
        let s = maclaurin_check(f, k).unwrap();
        let term = s.term(k).unwrap();
        let pass = term.reference != 0.0 && term.error() < 1e-5;
        ok &= pass;
        lines.push(format!(
            "{f} c{k}: numeric {:.10} vs {:.10} (rel {:.2e}{})",
            term.numeric,
            term.reference,
            term.error(),
            if pass { "" } else { ", MISMATCH" }
        ));
    }
    ok &= within(start, Duration::from_secs(1));
    report(3, ok, lines.join("; "));
}

#[test]
fn criterion_4_oracle_equivalence() {
    let start = Instant::now();
    let (lo, hi) = (0.01, T_MAX - 0.01);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let v = lo + (hi - lo) * (i as f64 + 0.5) / 100.0;
        let p = mesh_volume(&construct_p(t(v)).unwrap()).unwrap();
        let q = mesh_volume(&construct_q(t(v)).unwrap()).unwrap();
        worst = worst
            .max(rel(p, vol_p_closed(t(v))))
            .max(rel(q, vol_q_closed(t(v))));
    }
    report(
        4,
        worst < 1e-9 && within(start, Duration::from_secs(5)),
        format!("100 values of t: max relative mesh/closed-form difference {worst:.3e} < 1e-9"),
    );
}

#[test]
fn criterion_5_theorem_end_to_end() {
    let start = Instant::now();
    let mut ok = true;
    let mut lines = Vec::new();
    for c in [1.0, 10.0, 100.0, 1e3, 1e4] {
        let s = find_t_star(&RatioTarget::new(c).unwrap()).unwrap();
        let r = &s.report;
        let p = construct_p(s.t_star).unwrap();
        let q = construct_q(s.t_star).unwrap();
        let counts_ok = [combinatorics(&p), combinatorics(&q)]
            .iter()
            .all(|k| (k.vertices, k.edges, k.faces) == (5, 9, 6));
        let pass = r.ratio > c
            && r.p_convexity.is_convex
            && !r.q_convexity.is_convex
            && r.q_reflex_along_bd()
            && r.isometry_valid
            && r.isometry_discrepancy < 1e-12
            && counts_ok
            && r.volumes_agree();
        ok &= pass;
        lines.push(format!(
            "c = {c}: t* = {:.4e}, ratio = {:.4e}, iso = {:.1e}",
            s.t_star.value(),
            r.ratio,
            r.isometry_discrepancy
        ));
    }
    ok &= within(start, Duration::from_secs(10));
    report(5, ok, lines.join("; "));
}

#[test]
fn criterion_6_existence_inequality() {
    let start = Instant::now();
    let bounds_ok = (AE_LOWER - 3.3397).abs() < 5e-5 && (AE_UPPER - 20.6603).abs() < 5e-5;
    let n = 10_000;
    let grid_ok = (0..=n).all(|i| {
        let ae = length_ae(t(T_MAX * i as f64 / n as f64));
        AE_LOWER < ae && ae < AE_UPPER
    });
    let identity = apex_radicand(12.0 - 5.0 * 3f64.sqrt()).abs();
    report(
        6,
        bounds_ok && grid_ok && identity < 1e-9 && within(start, Duration::from_secs(1)),
        format!(
            "bounds ({AE_LOWER:.4}, {AE_UPPER:.4}), |A'E'| inside on {} grid points: {grid_ok}, \
             |438x²-x⁴-69²| at 12-5√3 = {identity:.2e}",
            n + 1
        ),
    );
}

#[test]
fn criterion_7_endpoint_coincidence() {
    let e = ParamT::upper_endpoint();
    let target = 200.0 * 3f64.sqrt();
    let (p, q) = (vol_p_closed(e), vol_q_closed(e));
    report(
        7,
        rel(p, target) < 1e-12 && rel(q, target) < 1e-12,
        format!("vol_p(π/6) = {p}, vol_q(π/6) = {q}, 200√3 = {target}"),
    );
}

#[test]
fn criterion_8_negative_control() {
    let mut weakest = f64::INFINITY;
    let mut all_invalid = true;
    for v in [0.01, 0.1, 0.2, 0.3, 0.45, 0.5] {
        let p = construct_p(t(v)).unwrap();
        let q = construct_q(t(v)).unwrap();
        let c = q.marker(Label::C).unwrap();
        for l in Label::VERTICES {
            let dir: Vector3 = (q.point(l).unwrap() - c).normalize();
            let moved = q.with_vertex_displaced(l, dir * 1e-3).unwrap();
            let cert = certify_isometry(&p, &moved).unwrap();
            all_invalid &= !cert.is_valid();
            weakest = weakest.min(cert.max_discrepancy);
        }
    }
    report(
        8,
        all_invalid && weakest >= 5e-4,
        format!(
            "every q vertex moved 1e-3 away from C': smallest discrepancy {weakest:.6e} >= 5e-4"
        ),
    );
}
