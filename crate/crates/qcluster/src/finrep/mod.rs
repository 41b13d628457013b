//! Representations of acyclic quivers over prime fields.

pub mod family;
pub mod field;
pub mod hom;
pub mod iso;
pub mod quiver;
pub mod reflect;
pub mod registry;
pub mod rep;
pub mod subspace;
pub mod tau;

pub use field::{Fp, Mat};
pub use quiver::Quiver;
pub use rep::{Morphism, QuiverRep};
