//! The p-adic characteristic map on lattices: from Bruhat-Tits trees to
//! buildings, with arrow-preservation and boundary-limit checks.

pub mod charmap;
pub mod checks;

pub use charmap::{char_lattice, char_lattice_m, vertex_map, CharMapResult, VertexMapError};
pub use checks::{boundary_limit_check, tree_map_check, BoundaryError, TreeMapReport};
