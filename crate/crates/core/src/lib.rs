//! Exact-arithmetic colligation algebra and its p-adic extension.
//!
//! A colligation is a block matrix `(a b; c d)` of size `alpha + m*N` over
//! exact rationals, considered up to conjugation acting on the inner blocks.
//! This crate implements the size-additive product of colligations, their
//! characteristic (transfer) functions as exact rational-function matrices,
//! the exceptional divisor and categorical-quotient invariants, and the
//! p-adic characteristic map that sends lattices in Q^2m (vertices of a
//! Bruhat-Tits tree/building) to quasi-lattices in Q^2alpha.
//!
//! Everything is exact: rationals are arbitrary-precision and in lowest
//! terms, polynomials and rational functions are over Q, and lattices are
//! finitely presented modules over the p-localization of the integers.
//! There is no floating point anywhere.

pub mod arith;
pub mod building;
pub mod colligation;
pub mod io;
pub mod lattice;
pub mod verify;

pub use arith::context::{val_p, PAdicContext, Val};
pub use arith::matrix::Mat;
pub use arith::poly::Poly;
pub use arith::ratfun::RatFun;
pub use arith::ratfunmat::RatFunMat;
pub use arith::Rat;
pub use colligation::{Colligation, Divisor};
pub use lattice::{QuasiLattice, SubspaceRep, TreeVertex};
