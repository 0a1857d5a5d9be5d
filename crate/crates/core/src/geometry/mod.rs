//! Labeled triangle meshes and the coordinate realizations of p(t) and q(t).

mod construct;
mod edges;
pub(crate) mod mesh;

pub(crate) use construct::length_ae_raw;
pub use construct::{
    construct_p, construct_p_with, construct_q, construct_q_with, length_ac, length_ae,
    measured_edge_lengths, BuildOptions,
};
pub use edges::{EdgeTable, Segment, TRANSFERRED_SEGMENTS};
pub use mesh::{Family, Label, LabeledMesh, Polyhedron, TriMesh};

pub type Point3 = nalgebra::Point3<f64>;
pub type Vector3 = nalgebra::Vector3<f64>;
