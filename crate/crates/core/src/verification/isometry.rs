//! Certificate that two labeled bipyramids are intrinsically isometric.
//!
//! Both surfaces are refined by splitting the two faces on the marker's host
//! edge at the marker `C`. When the refined triangles carry the same labels,
//! are glued along the same sides, and corresponding sides have equal length,
//! the label correspondence extends affinely over each triangle to a
//! length-preserving map between the surfaces.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Family, Label, LabeledMesh, Point3, Polyhedron, Segment};
use crate::tolerance::{CONSTRUCTION_REL, ISOMETRY_ABS};

type Tri = [Label; 3];

/// One triangle of the common refinement with its side lengths on both
/// surfaces, sides ordered as `(l0 l1, l1 l2, l0 l2)` over sorted labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrianglePair {
    pub labels: Tri,
    pub sides_first: [f64; 3],
    pub sides_second: [f64; 3],
}

/// A side shared by two refined triangles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GluingSide {
    pub segment: Segment,
    pub triangles: [Tri; 2],
    pub length_first: f64,
    pub length_second: f64,
}

impl GluingSide {
    pub fn discrepancy(&self) -> f64 {
        (self.length_first - self.length_second).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsometryCertificate {
    pub families: (Family, Family),
    pub triangles: Vec<TrianglePair>,
    pub gluing: Vec<GluingSide>,
    /// Largest absolute side-length difference over all gluing sides.
    pub max_discrepancy: f64,
    pub tolerance: f64,
    /// Relative difference between refined and original surface area, per surface.
    pub area_defect: (f64, f64),
}

impl IsometryCertificate {
    pub fn is_valid(&self) -> bool {
        self.max_discrepancy < self.tolerance
    }

    /// Sides whose lengths differ by more than the tolerance.
    pub fn offending_segments(&self) -> Vec<Segment> {
        self.gluing
            .iter()
            .filter(|g| g.discrepancy() >= self.tolerance)
            .map(|g| g.segment)
            .collect()
    }
}

pub fn certify_isometry(first: &LabeledMesh, second: &LabeledMesh) -> Result<IsometryCertificate> {
    certify_isometry_with(first, second, ISOMETRY_ABS)
}

pub fn certify_isometry_with(
    first: &LabeledMesh,
    second: &LabeledMesh,
    tol: f64,
) -> Result<IsometryCertificate> {
    let ra = Refinement::of(first)?;
    let rb = Refinement::of(second)?;

    if ra.triangles != rb.triangles {
        return Err(Error::GluingMismatch(format!(
            "refined triangles differ: {:?} vs {:?}",
            ra.triangles, rb.triangles
        )));
    }
    let ga = ra.gluing()?;
    let gb = rb.gluing()?;
    if ga != gb {
        return Err(Error::GluingMismatch(
            "triangles are glued along different sides".into(),
        ));
    }

    let gluing: Vec<GluingSide> = ga
        .into_iter()
        .map(|(segment, tris)| GluingSide {
            segment,
            triangles: [tris[0], tris[1]],
            length_first: ra.length(segment),
            length_second: rb.length(segment),
        })
        .collect();
    let max_discrepancy = gluing
        .iter()
        .map(GluingSide::discrepancy)
        .fold(0.0, f64::max);
    let triangles = ra
        .triangles
        .iter()
        .map(|&labels| TrianglePair {
            labels,
            sides_first: ra.sides(labels),
            sides_second: rb.sides(labels),
        })
        .collect();

    Ok(IsometryCertificate {
        families: (first.family(), second.family()),
        triangles,
        gluing,
        max_discrepancy,
        tolerance: tol,
        area_defect: (ra.area_defect, rb.area_defect),
    })
}

struct Refinement {
    points: BTreeMap<Label, Point3>,
    triangles: BTreeSet<Tri>,
    area_defect: f64,
}

impl Refinement {
    fn of(mesh: &LabeledMesh) -> Result<Self> {
        let c = mesh
            .marker(Label::C)
            .ok_or_else(|| Error::MissingMarker(mesh.name(Label::C)))?;
        let (u, v) = mesh.marker_host_edge(Label::C, CONSTRUCTION_REL)?;
        let mut points: BTreeMap<Label, Point3> = mesh.vertices().collect();
        points.insert(Label::C, c);

        let mut triangles = BTreeSet::new();
        let mut split = 0;
        for face in mesh.faces() {
            let rotated = (0..3)
                .map(|k| [face[k], face[(k + 1) % 3], face[(k + 2) % 3]])
                .find(|r| (r[0] == u && r[1] == v) || (r[0] == v && r[1] == u));
            let pieces: Vec<Tri> = match rotated {
                Some([a, b, w]) => {
                    split += 1;
                    let (a, b, w) = (mesh.label_of(a), mesh.label_of(b), mesh.label_of(w));
                    vec![[a, Label::C, w], [Label::C, b, w]]
                }
                None => vec![face.map(|i| mesh.label_of(i))],
            };
            for mut t in pieces {
                t.sort();
                if !triangles.insert(t) {
                    return Err(Error::Refinement(format!("triangle {t:?} appears twice")));
                }
            }
        }
        if split != 2 {
            return Err(Error::Refinement(format!(
                "host edge of the marker borders {split} faces instead of 2"
            )));
        }

        let area = |t: &[Point3; 3]| 0.5 * (t[1] - t[0]).cross(&(t[2] - t[0])).norm();
        let original: f64 = mesh
            .faces()
            .iter()
            .map(|f| area(&f.map(|i| mesh.positions()[i])))
            .sum();
        let refined: f64 = triangles.iter().map(|t| area(&t.map(|l| points[&l]))).sum();
        let area_defect = ((refined - original) / original).abs();

        Ok(Self {
            points,
            triangles,
            area_defect,
        })
    }

    fn length(&self, s: Segment) -> f64 {
        let (a, b) = s.ends();
        (self.points[&a] - self.points[&b]).norm()
    }

    fn sides(&self, [a, b, c]: Tri) -> [f64; 3] {
        [
            self.length(Segment::new(a, b)),
            self.length(Segment::new(b, c)),
            self.length(Segment::new(a, c)),
        ]
    }

    fn gluing(&self) -> Result<BTreeMap<Segment, Vec<Tri>>> {
        let mut map: BTreeMap<Segment, Vec<Tri>> = BTreeMap::new();
        for &t in &self.triangles {
            let [a, b, c] = t;
            for s in [Segment::new(a, b), Segment::new(b, c), Segment::new(a, c)] {
                map.entry(s).or_default().push(t);
            }
        }
        if let Some((s, ts)) = map.iter().find(|(_, ts)| ts.len() != 2) {
            return Err(Error::GluingMismatch(format!(
                "side {s} borders {} refined triangles",
                ts.len()
            )));
        }
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{construct_p, construct_q, Vector3, TRANSFERRED_SEGMENTS};
    use crate::param::ParamT;

    fn pair(t: f64) -> (LabeledMesh, LabeledMesh) {
        let t = ParamT::new(t).unwrap();
        (construct_p(t).unwrap(), construct_q(t).unwrap())
    }

    #[test]
    fn p_and_q_certified() {
        let (p, q) = pair(0.2);
        let cert = certify_isometry(&p, &q).unwrap();
        assert!(cert.is_valid(), "{}", cert.max_discrepancy);
        assert_eq!(cert.triangles.len(), 8);
        assert_eq!(cert.gluing.len(), 12);
        let sides: BTreeSet<Segment> = cert.gluing.iter().map(|g| g.segment).collect();
        let expected: BTreeSet<Segment> = TRANSFERRED_SEGMENTS
            .iter()
            .map(|&(a, b)| Segment::new(a, b))
            .collect();
        assert_eq!(sides, expected);
        assert!(cert.area_defect.0 < 1e-14 && cert.area_defect.1 < 1e-14);
    }

    #[test]
    fn identity_has_zero_discrepancy() {
        let (p, _) = pair(0.2);
        let cert = certify_isometry(&p, &p).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.max_discrepancy, 0.0);
    }

    #[test]
    fn perturbed_apex_detected_locally() {
        let (p, q) = pair(0.2);
        let e = q.point(Label::E).unwrap();
        let c = q.marker(Label::C).unwrap();
        let dir = (e - c).normalize();
        let moved = q.with_vertex_displaced(Label::E, dir * 1e-3).unwrap();
        let cert = certify_isometry(&p, &moved).unwrap();
        assert!(!cert.is_valid());
        assert!(
            (cert.max_discrepancy - 1e-3).abs() < 1e-6,
            "{}",
            cert.max_discrepancy
        );
        assert!(cert
            .offending_segments()
            .iter()
            .all(|s| s.contains(Label::E)));
    }

    #[test]
    fn missing_marker_and_moved_marker() {
        let (p, q) = pair(0.2);
        let bare =
            LabeledMesh::new(Family::Q, q.vertices().collect(), &q.face_labels(), vec![]).unwrap();
        assert!(matches!(
            certify_isometry(&p, &bare),
            Err(Error::MissingMarker(_))
        ));
        let off = LabeledMesh::new(
            Family::Q,
            q.vertices().collect(),
            &q.face_labels(),
            vec![(
                Label::C,
                q.marker(Label::C).unwrap() + Vector3::new(0.0, 0.1, 0.0),
            )],
        )
        .unwrap();
        assert!(matches!(
            certify_isometry(&p, &off),
            Err(Error::Refinement(_))
        ));
    }

    #[test]
    fn different_combinatorics_rejected() {
        let (p, q) = pair(0.2);
        // Swapping the names of A′ and E′ keeps q a bipyramid with a valid
        // marker but changes which labeled triangles exist.
        let swap = |l: Label| match l {
            Label::A => Label::E,
            Label::E => Label::A,
            other => other,
        };
        let relabeled = LabeledMesh::new(
            Family::Q,
            q.vertices().map(|(l, pt)| (swap(l), pt)).collect(),
            &q.face_labels()
                .iter()
                .map(|f| f.map(swap))
                .collect::<Vec<_>>(),
            q.markers().collect(),
        )
        .unwrap();
        assert!(matches!(
            certify_isometry(&p, &relabeled),
            Err(Error::GluingMismatch(_))
        ));
        let open = q.without_face(5);
        assert!(certify_isometry(&p, &open).is_err());
    }
}
