//! Coordinates for p(t) and q(t).
//!
//! p(t) is placed with `C` at the origin, `EF` on the z-axis and `A` on the
//! positive x-axis, so its symmetry planes are `y = 0` (plane `AEF`) and
//! `z = 0` (plane `ABD`). q(t) is placed with `A′` at the origin and `C′` on
//! the positive x-axis, with symmetry planes `z = 0` (plane `A′B′D′`) and
//! `y = 0` (plane `A′E′F′`).

use std::collections::BTreeMap;

use super::edges::{EdgeTable, Segment};
use super::mesh::{Family, Label, LabeledMesh};
use super::Point3;
use crate::closed_forms::{alpha_of_ae, AE_LOWER, AE_UPPER};
use crate::error::{Error, Result};
use crate::param::{ac_radicand_raw, ParamT};
use crate::tolerance::CONSTRUCTION_REL;
use crate::verification::signed_volume;

use Label::{A, B, C, D, E, F};

const HALF_EF: f64 = 12.0;
const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Build the flat limits at `t = 0` and `t = π/6` instead of rejecting them.
    pub allow_degenerate: bool,
}

/// `|AC|`, the larger root of `25 = 100 + |AC|² − 20 |AC| cos t`.
///
/// The smaller root `10 cos t − √(100 cos²t − 75)` places `A` on the same side
/// of `BD` as `C` and gives a nonconvex p(t); it is not used.
pub fn length_ac(t: ParamT) -> f64 {
    10.0 * t.value().cos() + t.ac_radicand().sqrt()
}

/// `|AE| = |AF| = √(69 + 200 cos²t + 20 cos t √(100 cos²t − 75))`.
pub fn length_ae(t: ParamT) -> f64 {
    ae_formula(t.value().cos(), t.ac_radicand())
}

/// Analytic continuation of [`length_ae`] to any `t` with `|t| <= π/6`.
pub(crate) fn length_ae_raw(t: f64) -> f64 {
    ae_formula(t.cos(), ac_radicand_raw(t))
}

fn ae_formula(cos_t: f64, radicand: f64) -> f64 {
    (69.0 + 200.0 * cos_t * cos_t + 20.0 * cos_t * radicand.sqrt()).sqrt()
}

pub fn construct_p(t: ParamT) -> Result<LabeledMesh> {
    construct_p_with(t, BuildOptions::default())
}

/// The convex bipyramid p(t) with equator `AEF` and apexes `B`, `D`.
pub fn construct_p_with(t: ParamT, opts: BuildOptions) -> Result<LabeledMesh> {
    if !t.is_interior() && !opts.allow_degenerate {
        return Err(Error::DegenerateMesh(format!(
            "p(t) is flat at t = {t}; the open range (0, π/6) is required"
        )));
    }
    let ac = length_ac(t);
    // B = A + 10 (−cos t, sin t, 0); its x-coordinate simplifies to √(100 cos²t − 75).
    let xb = t.ac_radicand().sqrt();
    let yb = 10.0 * t.value().sin();
    let mesh = LabeledMesh::new(
        Family::P,
        vec![
            (A, Point3::new(ac, 0.0, 0.0)),
            (B, Point3::new(xb, yb, 0.0)),
            (D, Point3::new(xb, -yb, 0.0)),
            (E, Point3::new(0.0, 0.0, HALF_EF)),
            (F, Point3::new(0.0, 0.0, -HALF_EF)),
        ],
        &[
            [A, B, E],
            [A, F, B],
            [A, E, D],
            [A, D, F],
            [F, E, B],
            [D, E, F],
        ],
        vec![(C, Point3::origin())],
    )?;
    check_realization(&mesh, t)?;
    Ok(mesh)
}

pub fn construct_q(t: ParamT) -> Result<LabeledMesh> {
    construct_q_with(t, BuildOptions::default())
}

/// The nonconvex bipyramid q(t) with equator `A′B′D′` and apexes `E′`, `F′`.
pub fn construct_q_with(t: ParamT, opts: BuildOptions) -> Result<LabeledMesh> {
    let ae = length_ae(t);
    if !(AE_LOWER < ae && ae < AE_UPPER) {
        return Err(Error::Existence {
            ae,
            lower: AE_LOWER,
            upper: AE_UPPER,
        });
    }
    if !t.is_interior() && !opts.allow_degenerate {
        return Err(Error::DegenerateMesh(format!(
            "q(t) is degenerate at t = {t}; the open range (0, π/6) is required"
        )));
    }
    let alpha = alpha_of_ae(ae)?;
    let (ex, ez) = (ae * alpha.cos, ae * alpha.sin);
    let xc = 5.0 * SQRT3;
    let mesh = LabeledMesh::new(
        Family::Q,
        vec![
            (A, Point3::origin()),
            (B, Point3::new(xc, 5.0, 0.0)),
            (D, Point3::new(xc, -5.0, 0.0)),
            (E, Point3::new(ex, 0.0, ez)),
            (F, Point3::new(ex, 0.0, -ez)),
        ],
        &[
            [A, E, B],
            [A, B, F],
            [A, D, E],
            [A, F, D],
            [B, E, D],
            [D, F, B],
        ],
        vec![(C, Point3::new(xc, 0.0, 0.0))],
    )?;
    check_realization(&mesh, t)?;
    Ok(mesh)
}

fn check_realization(mesh: &LabeledMesh, t: ParamT) -> Result<()> {
    let measured = measured_edge_lengths(mesh)?;
    let prescribed = EdgeTable::prescribed(mesh.family(), t);
    for (seg, want) in prescribed.iter() {
        let (a, b) = seg.ends();
        let got = measured
            .get(a, b)
            .ok_or_else(|| Error::ConstructionInconsistency {
                segment: seg.name(mesh.family()),
                measured: f64::NAN,
                prescribed: want,
            })?;
        if ((got - want) / want).abs() > CONSTRUCTION_REL {
            return Err(Error::ConstructionInconsistency {
                segment: seg.name(mesh.family()),
                measured: got,
                prescribed: want,
            });
        }
    }
    // Flat limits have zero volume; anything clearly negative means inward faces.
    let vol = signed_volume(mesh);
    if vol < -CONSTRUCTION_REL * 1e3 {
        return Err(Error::DegenerateMesh(format!(
            "faces are oriented inward (signed volume {vol})"
        )));
    }
    Ok(())
}

/// Euclidean lengths of every edge plus the segments from the marker `C` to
/// the endpoints of its host edge and to the two vertices opposite that edge.
pub fn measured_edge_lengths(mesh: &LabeledMesh) -> Result<EdgeTable> {
    let dist = |i: usize, j: usize| {
        (mesh.point(mesh.label_of(i)).unwrap() - mesh.point(mesh.label_of(j)).unwrap()).norm()
    };
    let mut lengths = BTreeMap::new();
    for (i, j) in mesh.edges() {
        lengths.insert(Segment::new(mesh.label_of(i), mesh.label_of(j)), dist(i, j));
    }

    let c = mesh
        .marker(C)
        .ok_or_else(|| Error::MissingMarker(mesh.name(C)))?;
    let (u, v) = mesh.marker_host_edge(C, CONSTRUCTION_REL)?;
    let mut around = vec![u, v];
    for f in crate::geometry::Polyhedron::faces(mesh) {
        if f.contains(&u) && f.contains(&v) {
            around.extend(f.iter().copied().filter(|&k| k != u && k != v));
        }
    }
    for k in around {
        let l = mesh.label_of(k);
        lengths.insert(Segment::new(C, l), (mesh.point(l).unwrap() - c).norm());
    }
    Ok(EdgeTable::from_lengths(mesh.family(), lengths))
}
