//! Convex and nonconvex oblique triangular bipyramids that are intrinsically
//! isometric to each other while the volume of the nonconvex one exceeds the
//! volume of the convex one by any prescribed factor.
//!
//! The crate realizes two one-parameter families of bipyramids:
//!
//! * `p(t)`, convex, with equator `AEF` and apexes `B`, `D`;
//! * `q(t)`, nonconvex, with equator `A′B′D′` and apexes `E′`, `F′`;
//!
//! built from their edge lengths, and checks them with independent routes:
//! closed-form volumes against a divergence-theorem mesh volume, a half-space
//! convexity test, and a common-refinement isometry certificate. The
//! [`solver`] module turns this into a constructive procedure that, given a
//! ratio `c`, returns a parameter `t*` with `vol q(t*) > c · vol p(t*)`.

pub mod cli;
pub mod closed_forms;
pub mod error;
pub mod geometry;
pub mod io;
pub mod param;
pub mod solver;
pub mod tolerance;
pub mod verification;

pub use error::{Error, Result};
pub use geometry::{
    construct_p, construct_p_with, construct_q, construct_q_with, length_ac, length_ae,
    measured_edge_lengths, BuildOptions, EdgeTable, Family, Label, LabeledMesh, Point3, Polyhedron,
    Segment, TriMesh, Vector3,
};
pub use param::ParamT;
