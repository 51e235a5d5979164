//! p-adic lattices and quasi-lattices, tree vertices, and convergence.

pub mod dot;
pub mod quasi;
pub mod tree;

pub use quasi::{Exp, QuasiLattice, SubspaceRep};
pub use tree::TreeVertex;
