use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{Point3, Vector3};
use crate::error::{Error, Result};

/// Point names shared by both families. `C` is a marker, never a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Label {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Label {
    pub const VERTICES: [Label; 5] = [Label::A, Label::B, Label::D, Label::E, Label::F];

    pub fn letter(self) -> char {
        match self {
            Label::A => 'A',
            Label::B => 'B',
            Label::C => 'C',
            Label::D => 'D',
            Label::E => 'E',
            Label::F => 'F',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c {
            'A' => Label::A,
            'B' => Label::B,
            'C' => Label::C,
            'D' => Label::D,
            'E' => Label::E,
            'F' => Label::F,
            _ => return None,
        })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Which bipyramid family a mesh belongs to. Points of q carry a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// Convex family p(t).
    P,
    /// Nonconvex family q(t).
    Q,
}

impl Family {
    pub fn name(self, label: Label) -> String {
        match self {
            Family::P => label.to_string(),
            Family::Q => format!("{label}'"),
        }
    }

    /// The edge whose midpoint is the marker `C` (`EF` for p, `B′D′` for q).
    pub fn marker_host(self) -> (Label, Label) {
        match self {
            Family::P => (Label::E, Label::F),
            Family::Q => (Label::B, Label::D),
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Family::P => "p",
            Family::Q => "q",
        }
    }
}

/// Read access shared by every closed triangle surface the verifiers accept.
pub trait Polyhedron {
    fn positions(&self) -> &[Point3];
    fn faces(&self) -> &[[usize; 3]];

    fn vertex_name(&self, index: usize) -> String {
        format!("v{index}")
    }

    fn edge_name(&self, (i, j): (usize, usize)) -> String {
        format!("{}{}", self.vertex_name(i), self.vertex_name(j))
    }

    fn face_name(&self, face: usize) -> String {
        let [a, b, c] = self.faces()[face];
        format!(
            "{}{}{}",
            self.vertex_name(a),
            self.vertex_name(b),
            self.vertex_name(c)
        )
    }
}

/// Plain indexed triangle mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    positions: Vec<Point3>,
    faces: Vec<[usize; 3]>,
}

impl TriMesh {
    pub fn new(positions: Vec<Point3>, faces: Vec<[usize; 3]>) -> Result<Self> {
        validate_indices(positions.len(), &faces)?;
        if let Some(p) = positions.iter().find(|p| !p.iter().all(|c| c.is_finite())) {
            return Err(Error::MalformedMesh(format!("non-finite vertex {p}")));
        }
        Ok(Self { positions, faces })
    }

    /// Tetrahedron with vertices at the origin and the three unit points.
    pub fn unit_tetrahedron() -> Self {
        Self {
            positions: vec![
                Point3::origin(),
                Point3::new(1.0, 0.0, 0.0),
                Point3::new(0.0, 1.0, 0.0),
                Point3::new(0.0, 0.0, 1.0),
            ],
            faces: vec![[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]],
        }
    }
}

impl Polyhedron for TriMesh {
    fn positions(&self) -> &[Point3] {
        &self.positions
    }

    fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }
}

fn validate_indices(n: usize, faces: &[[usize; 3]]) -> Result<()> {
    if n < 4 {
        return Err(Error::MalformedMesh(format!(
            "a closed polyhedral surface needs at least 4 vertices, got {n}"
        )));
    }
    if faces.len() < 4 {
        return Err(Error::MalformedMesh(format!(
            "a closed polyhedral surface needs at least 4 faces, got {}",
            faces.len()
        )));
    }
    for f in faces {
        if f.iter().any(|&i| i >= n) {
            return Err(Error::MalformedMesh(format!(
                "face {f:?} has an index >= {n}"
            )));
        }
        if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            return Err(Error::MalformedMesh(format!("face {f:?} repeats a vertex")));
        }
    }
    Ok(())
}

/// Closed triangulated surface with named vertices and marker points.
///
/// Vertices are stored in the order they were given; the constructors use
/// `A, B, D, E, F`. Markers (the point `C`) are not vertices of the surface.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMesh {
    family: Family,
    labels: Vec<Label>,
    positions: Vec<Point3>,
    faces: Vec<[usize; 3]>,
    markers: BTreeMap<Label, Point3>,
}

impl LabeledMesh {
    pub fn new(
        family: Family,
        vertices: Vec<(Label, Point3)>,
        faces: &[[Label; 3]],
        markers: Vec<(Label, Point3)>,
    ) -> Result<Self> {
        let (labels, positions): (Vec<_>, Vec<_>) = vertices.into_iter().unzip();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::MalformedMesh(format!(
                    "duplicate vertex {}",
                    family.name(*l)
                )));
            }
        }
        let index = |l: &Label| {
            labels.iter().position(|x| x == l).ok_or_else(|| {
                Error::MalformedMesh(format!("face refers to unknown vertex {}", family.name(*l)))
            })
        };
        let faces = faces
            .iter()
            .map(|f| Ok([index(&f[0])?, index(&f[1])?, index(&f[2])?]))
            .collect::<Result<Vec<_>>>()?;
        validate_indices(labels.len(), &faces)?;

        let mut marker_map = BTreeMap::new();
        for (l, p) in markers {
            if labels.contains(&l) {
                return Err(Error::MalformedMesh(format!(
                    "marker {} is also a vertex",
                    family.name(l)
                )));
            }
            marker_map.insert(l, p);
        }
        let all_finite = positions
            .iter()
            .chain(marker_map.values())
            .all(|p| p.iter().all(|c| c.is_finite()));
        if !all_finite {
            return Err(Error::MalformedMesh("non-finite coordinate".into()));
        }
        Ok(Self {
            family,
            labels,
            positions,
            faces,
            markers: marker_map,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn name(&self, label: Label) -> String {
        self.family.name(label)
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn label_of(&self, index: usize) -> Label {
        self.labels[index]
    }

    /// Position of a vertex or marker.
    pub fn point(&self, label: Label) -> Option<Point3> {
        self.index_of(label)
            .map(|i| self.positions[i])
            .or_else(|| self.markers.get(&label).copied())
    }

    pub fn marker(&self, label: Label) -> Option<Point3> {
        self.markers.get(&label).copied()
    }

    pub fn markers(&self) -> impl Iterator<Item = (Label, Point3)> + '_ {
        self.markers.iter().map(|(l, p)| (*l, *p))
    }

    pub fn face_labels(&self) -> Vec<[Label; 3]> {
        self.faces
            .iter()
            .map(|f| f.map(|i| self.labels[i]))
            .collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (Label, Point3)> + '_ {
        self.labels
            .iter()
            .copied()
            .zip(self.positions.iter().copied())
    }

    /// Undirected edges as sorted index pairs, in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        edge_face_counts(&self.faces).into_keys().collect()
    }

    /// The mesh edge whose midpoint is the marker `label`.
    pub fn marker_host_edge(&self, label: Label, rel_tol: f64) -> Result<(usize, usize)> {
        let m = self
            .marker(label)
            .ok_or_else(|| Error::MissingMarker(self.name(label)))?;
        let best = self
            .edges()
            .into_iter()
            .map(|(i, j)| {
                let mid = nalgebra::center(&self.positions[i], &self.positions[j]);
                let len = (self.positions[i] - self.positions[j]).norm();
                ((i, j), (mid - m).norm(), len)
            })
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((edge, dist, len)) if dist <= rel_tol * len => Ok(edge),
            Some((_, dist, _)) => Err(Error::Refinement(format!(
                "marker {} is {dist:e} away from the nearest edge midpoint",
                self.name(label)
            ))),
            None => Err(Error::Refinement("mesh has no edges".into())),
        }
    }

    /// Copy with one vertex moved by `offset`. Markers sitting at the midpoint
    /// of an edge incident to that vertex are moved along to stay midpoints.
    pub fn with_vertex_displaced(&self, label: Label, offset: Vector3) -> Result<Self> {
        let idx = self
            .index_of(label)
            .ok_or_else(|| Error::MalformedMesh(format!("no vertex {}", self.name(label))))?;
        let hosts: Vec<(Label, (usize, usize))> = self
            .markers
            .keys()
            .filter_map(|&m| {
                self.marker_host_edge(m, crate::tolerance::CONSTRUCTION_REL)
                    .ok()
                    .map(|e| (m, e))
            })
            .collect();
        let mut out = self.clone();
        out.positions[idx] += offset;
        for (m, (i, j)) in hosts {
            if i == idx || j == idx {
                let mid = nalgebra::center(&out.positions[i], &out.positions[j]);
                out.markers.insert(m, mid);
            }
        }
        Ok(out)
    }

    pub fn translated(&self, offset: Vector3) -> Self {
        let mut out = self.clone();
        out.positions.iter_mut().for_each(|p| *p += offset);
        out.markers.values_mut().for_each(|p| *p += offset);
        out
    }

    /// Same surface with every face orientation flipped.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        out.faces.iter_mut().for_each(|f| f.swap(1, 2));
        out
    }

    /// Copy without the face at `index`; the result is an open surface.
    pub fn without_face(&self, index: usize) -> Self {
        let mut out = self.clone();
        out.faces.remove(index);
        out
    }

    pub fn to_tri_mesh(&self) -> TriMesh {
        TriMesh {
            positions: self.positions.clone(),
            faces: self.faces.clone(),
        }
    }
}

impl Polyhedron for LabeledMesh {
    fn positions(&self) -> &[Point3] {
        &self.positions
    }

    fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    fn vertex_name(&self, index: usize) -> String {
        self.name(self.labels[index])
    }
}

/// Number of faces using each undirected edge, keyed by the sorted index pair.
pub(crate) fn edge_face_counts(faces: &[[usize; 3]]) -> BTreeMap<(usize, usize), usize> {
    let mut counts = BTreeMap::new();
    for f in faces {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    counts
}
