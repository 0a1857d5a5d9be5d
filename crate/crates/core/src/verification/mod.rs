//! Independent checks: mesh volume, convexity, the isometry certificate, and
//! the combinatorial type.

mod combinatorics;
mod convexity;
mod isometry;
mod volume;

pub use combinatorics::{combinatorics, combinatorics_check, is_bipyramid, Combinatorics};
pub use convexity::{convexity, convexity_with, ConvexityReport, ReflexEdge};
pub use isometry::{
    certify_isometry, certify_isometry_with, GluingSide, IsometryCertificate, TrianglePair,
};
pub(crate) use volume::signed_volume;
pub use volume::{check_closed, mesh_volume};
