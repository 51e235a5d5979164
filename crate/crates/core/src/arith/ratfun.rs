//! Scalar rational functions over Q as an exact field.

use super::context::Val;
use super::poly::Poly;
use super::{Field, Rat};
use num_traits::{One, Zero};
use std::fmt;
use std::ops;

/// num/den with gcd(num, den) = 1 and den monic. Zero is 0/1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFun {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        let lead_inv = den.leading().recip();
        num = num.scale(&lead_inv);
        den = den.scale(&lead_inv);
        RatFun { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    /// The coordinate function x.
    pub fn x() -> Self {
        RatFun::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) * d.recip())
        }
    }

    /// Order of vanishing at `point`: root multiplicity in the numerator
    /// minus the denominator; Inf for the zero function.
    pub fn ord_at(&self, point: &Rat) -> Val {
        if self.num.is_zero() {
            return Val::Inf;
        }
        let up = self.num.root_multiplicity(point) as i64;
        let down = self.den.root_multiplicity(point) as i64;
        Val::Fin(up - down)
    }

    /// Substitute x -> 1/x: moves the point at infinity to the origin.
    pub fn reciprocal_substitution(&self) -> RatFun {
        let dn = self.num.degree().map_or(0, |d| d);
        let dd = self.den.degree().unwrap();
        let m = dn.max(dd);
        // f(1/x) * x^m / x^m
        let num = self.num.reverse().shift_up(m - dn);
        let den = self.den.reverse().shift_up(m - dd);
        RatFun::new(num, den)
    }

    /// Substitute x -> x + c.
    pub fn shift(&self, c: &Rat) -> RatFun {
        RatFun::new(self.num.compose_shift(c), self.den.compose_shift(c))
    }
}

impl RatFun {
    pub fn add(&self, other: &Self) -> Self {
        RatFun::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFun::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Field for RatFun {
    fn inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero rational function");
        RatFun::new(self.den.clone(), self.num.clone())
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl ops::Add for RatFun {
    type Output = RatFun;
    fn add(self, other: RatFun) -> RatFun {
        RatFun::add(&self, &other)
    }
}

impl ops::Sub for RatFun {
    type Output = RatFun;
    fn sub(self, other: RatFun) -> RatFun {
        RatFun::sub(&self, &other)
    }
}

impl ops::Mul for RatFun {
    type Output = RatFun;
    fn mul(self, other: RatFun) -> RatFun {
        RatFun::mul(&self, &other)
    }
}

impl ops::Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun::neg(&self)
    }
}
