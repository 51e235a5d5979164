//! p-adic valuations on Q and the context fixing the prime.

use super::Rat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Value of a discrete valuation: an integer, or +infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Val {
    // Ord derives: Fin(a) < Fin(b) iff a < b, and every Fin < Inf.
    Fin(i64),
    Inf,
}

impl Val {
    pub fn is_finite(self) -> bool {
        matches!(self, Val::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Fin(v) => Some(v),
            Val::Inf => None,
        }
    }

    /// v(xy) = v(x) + v(y).
    pub fn plus(self, other: Val) -> Val {
        match (self, other) {
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a + b),
            _ => Val::Inf,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Fin(v) => write!(f, "{v}"),
            Val::Inf => write!(f, "inf"),
        }
    }
}

/// Fixes the prime p defining the local ring O = Z_(p) inside Q.
///
/// All lattice arithmetic happens over this O: a rational is integral at p
/// exactly when `val_p` is nonnegative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PAdicContext {
    p: u64,
}

impl PAdicContext {
    /// Errors unless `p` is prime.
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if is_prime(p) {
            Ok(PAdicContext { p })
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn prime_big(&self) -> BigInt {
        BigInt::from(self.p)
    }

    pub fn prime_rat(&self) -> Rat {
        Rat::from(self.prime_big())
    }

    /// p^e as an exact rational, e possibly negative.
    pub fn power(&self, e: i64) -> Rat {
        let p = self.prime_big();
        if e >= 0 {
            Rat::from(p.pow(e as u32))
        } else {
            Rat::new(BigInt::from(1), p.pow((-e) as u32))
        }
    }

    pub fn val(&self, x: &Rat) -> Val {
        val_p(x, *self)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn int_val(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut v = 0i64;
    let mut m = n.abs();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

/// Exponent of p in x; +infinity for x = 0.
pub fn val_p(x: &Rat, ctx: PAdicContext) -> Val {
    if x.is_zero() {
        return Val::Inf;
    }
    let p = ctx.prime_big();
    Val::Fin(int_val(x.numer(), &p) - int_val(x.denom(), &p))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("singular matrix")]
    Singular,
    #[error("pole at evaluation point")]
    PoleAtPoint,
    #[error("shape mismatch: {0}")]
    Shape(String),
}
