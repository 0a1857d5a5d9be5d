use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::geometry::mesh::edge_face_counts;
use crate::geometry::Polyhedron;

/// Every edge shared by exactly two faces, and every directed edge used once.
pub fn check_closed<P: Polyhedron + ?Sized>(mesh: &P) -> Result<()> {
    for (edge, count) in edge_face_counts(mesh.faces()) {
        if count != 2 {
            return Err(Error::OpenMesh {
                edge: mesh.edge_name(edge),
                count,
            });
        }
    }
    let mut seen = HashSet::new();
    for f in mesh.faces() {
        for k in 0..3 {
            let directed = (f[k], f[(k + 1) % 3]);
            if !seen.insert(directed) {
                return Err(Error::InconsistentOrientation(mesh.edge_name(directed)));
            }
        }
    }
    Ok(())
}

/// Enclosed volume as the sum of signed tetrahedra spanned by the origin and
/// each face, `(1/6) Σ p0 · (p1 × p2)`. Positive when faces point outward.
pub fn mesh_volume<P: Polyhedron + ?Sized>(mesh: &P) -> Result<f64> {
    check_closed(mesh)?;
    Ok(signed_volume(mesh))
}

pub(crate) fn signed_volume<P: Polyhedron + ?Sized>(mesh: &P) -> f64 {
    let pos = mesh.positions();
    mesh.faces()
        .iter()
        .map(|&[a, b, c]| pos[a].coords.dot(&pos[b].coords.cross(&pos[c].coords)))
        .sum::<f64>()
        / 6.0
}
