//! Exact computations with lattice polyhedra: Minkowski sums, normal fans,
//! lattice-point enumeration, normality and normal location of pairs, fiber
//! polyhedra of lattice projections and their GIT fans.

pub mod arith;
pub mod cone;
mod dd;
pub mod error;
pub mod fan;
pub mod gitfan;
pub mod json;
pub mod lattice;
pub mod polyhedron;

pub use arith::{IMat, IVec, QVec, Rat};
pub use cone::Cone;
pub use error::{Error, Result};
pub use fan::{normal_fan, Fan, Support};
pub use gitfan::{GitFan, GradedProjection, RealizedPair};
pub use lattice::{LatticePointSet, LocationReport, Point, Verdict, Window, WitnessKind};
pub use polyhedron::{HRep, Halfspace, Polyhedron, VRep};
