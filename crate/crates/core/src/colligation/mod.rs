//! Field-level colligation algebra: products, characteristic functions,
//! divisors, invariants, quotient equality, conjugators, realization.

pub mod charfun;
pub mod collig;
pub mod conjugator;
pub mod divisor;
pub mod invariants;
pub mod quotient;
pub mod realize;

pub use charfun::{char_at, char_boundary, char_fun, det_char_check, graph_at};
pub use collig::Colligation;
pub use conjugator::commutativity_conjugator;
pub use divisor::{divisor, Divisor, DivisorPoint, Mult};
pub use invariants::{invariants, InvariantSignature};
pub use quotient::{quotient_equal, QuotientComparison};
pub use realize::{realize, RealizeError};
