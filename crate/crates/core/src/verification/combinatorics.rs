use serde::Serialize;

use crate::geometry::mesh::edge_face_counts;
use crate::geometry::Polyhedron;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Combinatorics {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    /// Every edge borders exactly two faces.
    pub closed: bool,
    /// Vertex degrees in ascending order.
    pub degrees: Vec<usize>,
}

pub fn combinatorics<P: Polyhedron + ?Sized>(mesh: &P) -> Combinatorics {
    let counts = edge_face_counts(mesh.faces());
    let mut degrees = vec![0; mesh.positions().len()];
    for &(i, j) in counts.keys() {
        degrees[i] += 1;
        degrees[j] += 1;
    }
    degrees.sort_unstable();
    let (v, e, f) = (mesh.positions().len(), counts.len(), mesh.faces().len());
    Combinatorics {
        vertices: v,
        edges: e,
        faces: f,
        euler: v as i64 - e as i64 + f as i64,
        closed: counts.values().all(|&c| c == 2),
        degrees,
    }
}

/// Closed surface with 5 vertices, 9 edges and 6 faces whose two degree-3
/// vertices (the apexes) are not adjacent.
pub fn is_bipyramid<P: Polyhedron + ?Sized>(mesh: &P) -> bool {
    let c = combinatorics(mesh);
    if !(c.closed && c.vertices == 5 && c.edges == 9 && c.faces == 6 && c.euler == 2) {
        return false;
    }
    if c.degrees != [3, 3, 4, 4, 4] {
        return false;
    }
    let counts = edge_face_counts(mesh.faces());
    let degree = |v: usize| counts.keys().filter(|&&(i, j)| i == v || j == v).count();
    let apexes: Vec<usize> = (0..5).filter(|&v| degree(v) == 3).collect();
    !counts.contains_key(&(apexes[0], apexes[1]))
}

/// Both surfaces are bipyramids, hence have equal vertex, edge and face counts.
///
/// Apexes are found by degree, not by label: p has apexes `B`, `D` while q
/// has apexes `E′`, `F′`.
pub fn combinatorics_check<P: Polyhedron + ?Sized, Q: Polyhedron + ?Sized>(
    first: &P,
    second: &Q,
) -> bool {
    is_bipyramid(first) && is_bipyramid(second)
}
