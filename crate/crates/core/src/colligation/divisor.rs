//! The exceptional divisor: zeros of det(1 - x d) with multiplicity, plus
//! the point at infinity, with points kept over Q (irreducible nonlinear
//! factors become symbolic points keyed by their minimal polynomial).

use super::charfun::resolvent_det;
use super::collig::Colligation;
use crate::arith::factor::factor;
use crate::arith::poly::Poly;
use crate::arith::Rat;
use std::collections::BTreeMap;
use std::fmt;

/// A point of the projective line over Q, or a conjugate orbit of algebraic
/// points represented by its monic irreducible polynomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DivisorPoint {
    Finite(Rat),
    Irreducible(Poly),
    Infinity,
}

impl fmt::Display for DivisorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorPoint::Finite(r) => write!(f, "{r}"),
            DivisorPoint::Irreducible(p) => write!(f, "root of {p}"),
            DivisorPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Multiplicity in Z+ or infinity (the stabilized point 1 carries infinity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mult {
    Fin(u64),
    Inf,
}

impl Mult {
    pub fn plus(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Fin(a), Mult::Fin(b)) => Mult::Fin(a + b),
            _ => Mult::Inf,
        }
    }
}

/// Finitely many points with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Divisor {
    points: BTreeMap<DivisorPoint, Mult>,
}

impl Divisor {
    pub fn empty() -> Self {
        Divisor::default()
    }

    pub fn insert(&mut self, point: DivisorPoint, mult: Mult) {
        if mult == Mult::Fin(0) {
            return;
        }
        let entry = self.points.entry(point).or_insert(Mult::Fin(0));
        *entry = entry.plus(mult);
    }

    pub fn multiplicity(&self, point: &DivisorPoint) -> Mult {
        self.points.get(point).copied().unwrap_or(Mult::Fin(0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DivisorPoint, &Mult)> {
        self.points.iter()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, m) in other.iter() {
            out.insert(p.clone(), *m);
        }
        out
    }

    /// Sets the multiplicity at the point 1 to infinity: the form every
    /// divisor takes after stabilizing under diagonal padding.
    pub fn stabilize(&self) -> Divisor {
        let mut out = self.clone();
        out.points
            .insert(DivisorPoint::Finite(Rat::from(num_bigint::BigInt::from(1))), Mult::Inf);
        out
    }

    /// First point where the two divisors disagree, if any.
    pub fn first_difference(&self, other: &Divisor) -> Option<DivisorPoint> {
        let mut keys: Vec<&DivisorPoint> =
            self.points.keys().chain(other.points.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .find(|p| self.multiplicity(p) != other.multiplicity(p))
            .cloned()
    }
}

/// The divisor of g: zeros of det(1 - x d) with multiplicity, factored
/// exactly over Q, plus infinity with multiplicity N - deg.
pub fn divisor(g: &Colligation) -> Divisor {
    assert_eq!(g.block_count(), 1, "the divisor is defined for m = 1");
    let p_g = resolvent_det(g);
    let n = g.inner_size();
    let mut out = Divisor::empty();
    let deg = p_g.degree().unwrap_or(0);
    let (_, factors) = factor(&p_g);
    for (irr, mult) in factors {
        let point = if irr.degree() == Some(1) {
            DivisorPoint::Finite(-irr.coeff(0))
        } else {
            DivisorPoint::Irreducible(irr)
        };
        out.insert(point, Mult::Fin(mult as u64));
    }
    if n > deg {
        out.insert(DivisorPoint::Infinity, Mult::Fin((n - deg) as u64));
    }
    out
}
