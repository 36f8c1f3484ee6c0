//! Exact computations for the geometric side of the trace formula: root data
//! and parabolic lattices, (G,Q)-families and weight factors, canonical
//! parabolics of nilpotent elements, induction and inflation of classes, and
//! prehomogeneous vector spaces.

pub mod cli;
pub mod cones;
pub mod error;
pub mod gqfam;
pub mod linalg;
pub mod nilpotent;
pub mod orbitind;
pub mod poly;
pub mod pvspace;
pub mod rat;
pub mod rootspace;
