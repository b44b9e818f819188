//! Exact verification of the lattice, chamber and birational computations
//! around a Jacobian Kummer surface and the blown-up projective threefold.
//!
//! All arithmetic is over `BigRational`; nothing here uses floating point.

pub mod chamber_geometry;
pub mod configuration;
pub mod cremona_engine;
pub mod exec;
pub mod isometry_group;
pub mod linalg;
pub mod rational;
pub mod surface_lattice;
pub mod threefold_lattice;

pub use exec::Execution;
pub use rational::Q;
