use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::mesh::edge_face_counts;
use crate::geometry::{Polyhedron, Vector3};
use crate::tolerance::CONVEXITY_ABS;

use super::check_closed;

/// Faces smaller than this fraction of the squared bounding diameter are degenerate.
const DEGENERATE_AREA_REL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReflexEdge {
    pub vertices: (usize, usize),
    pub name: String,
    /// Height of the far vertex of one face above the plane of the other.
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityReport {
    pub is_convex: bool,
    /// Largest signed distance of a vertex above a face plane; negative or
    /// zero for a convex surface.
    pub worst_violation: f64,
    /// `(vertex, face)` attaining `worst_violation`.
    pub worst_pair: Option<(String, String)>,
    pub reflex_edges: Vec<ReflexEdge>,
    pub tolerance: f64,
}

impl ConvexityReport {
    pub fn has_reflex_edge(&self, name: &str) -> bool {
        self.reflex_edges.iter().any(|e| e.name == name)
    }
}

pub fn convexity<P: Polyhedron + ?Sized>(mesh: &P) -> Result<ConvexityReport> {
    convexity_with(mesh, CONVEXITY_ABS)
}

/// Tests every vertex against every outward face plane.
///
/// The surface is convex when no vertex lies more than `tol` above any face
/// plane. Edges are reported as reflex when the far vertex of one adjacent
/// face lies above the plane of the other.
pub fn convexity_with<P: Polyhedron + ?Sized>(mesh: &P, tol: f64) -> Result<ConvexityReport> {
    check_closed(mesh)?;
    let pos = mesh.positions();
    let diameter2 = pos
        .iter()
        .flat_map(|a| pos.iter().map(move |b| (a - b).norm_squared()))
        .fold(0.0, f64::max);

    let mut planes = Vec::with_capacity(mesh.faces().len());
    for (fi, &[a, b, c]) in mesh.faces().iter().enumerate() {
        let n: Vector3 = (pos[b] - pos[a]).cross(&(pos[c] - pos[a]));
        let area = 0.5 * n.norm();
        if area.is_nan() || area <= DEGENERATE_AREA_REL * diameter2 {
            return Err(Error::DegenerateFace {
                face: mesh.face_name(fi),
                area,
            });
        }
        planes.push((n / n.norm(), pos[a]));
    }
    let height = |face: usize, v: usize| {
        let (n, origin) = &planes[face];
        n.dot(&(pos[v] - origin))
    };

    let mut worst = f64::NEG_INFINITY;
    let mut worst_pair = None;
    for (fi, face) in mesh.faces().iter().enumerate() {
        for v in (0..pos.len()).filter(|v| !face.contains(v)) {
            let h = height(fi, v);
            if h > worst {
                worst = h;
                worst_pair = Some((v, fi));
            }
        }
    }

    let mut reflex_edges = Vec::new();
    for &(i, j) in edge_face_counts(mesh.faces()).keys() {
        let adjacent: Vec<usize> = mesh
            .faces()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.contains(&i) && f.contains(&j))
            .map(|(k, _)| k)
            .collect();
        let [f0, f1] = adjacent[..] else { continue };
        let far = |f: usize| *mesh.faces()[f].iter().find(|&&k| k != i && k != j).unwrap();
        let excess = height(f0, far(f1)).max(height(f1, far(f0)));
        if excess > tol {
            reflex_edges.push(ReflexEdge {
                vertices: (i, j),
                name: mesh.edge_name((i, j)),
                excess,
            });
        }
    }

    Ok(ConvexityReport {
        is_convex: worst <= tol,
        worst_violation: worst,
        worst_pair: worst_pair.map(|(v, f)| (mesh.vertex_name(v), mesh.face_name(f))),
        reflex_edges,
        tolerance: tol,
    })
}
