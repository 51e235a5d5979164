//! Dense univariate polynomials over Q.

use super::{rat_i64, Rat};
use num_traits::{One, Zero};
use std::fmt;

/// Polynomial with exact rational coefficients, ascending degree order.
/// Invariant: no trailing zero coefficient (the zero polynomial is empty).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial x.
    pub fn x() -> Self {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    /// x - r.
    pub fn x_minus(r: &Rat) -> Self {
        Poly::new(vec![-r.clone(), Rat::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Poly { coeffs: out }
    }

    /// Euclidean division: self = q*div + r with deg r < deg div.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead_inv = div.leading().recip();
        let mut rem = self.clone();
        let mut q = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let factor = rem.leading() * &lead_inv;
            let shift = dr - dd;
            q[shift] = factor.clone();
            // rem -= factor * x^shift * div
            let mut new = rem.coeffs.clone();
            for (j, c) in div.coeffs.iter().enumerate() {
                new[shift + j] = &new[shift + j] - &(c * &factor);
            }
            rem = Poly::new(new);
        }
        (Poly::new(q), rem)
    }

    pub fn rem(&self, div: &Poly) -> Poly {
        self.divrem(div).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, div: &Poly) -> Poly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * rat_i64(k as i64 + 1))
                .collect(),
        )
    }

    /// Multiplicity of `point` as a root.
    pub fn root_multiplicity(&self, point: &Rat) -> usize {
        assert!(!self.is_zero());
        let lin = Poly::x_minus(point);
        let mut m = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.divrem(&lin);
            if r.is_zero() {
                m += 1;
                f = q;
                if f.is_zero() {
                    return m;
                }
            } else {
                return m;
            }
        }
    }

    /// Coefficient reversal: x^n * self(1/x), n = deg(self), for substituting
    /// between the two affine charts of the projective line.
    pub fn reverse(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }

    /// self(x + c), for moving a basepoint to the origin.
    pub fn compose_shift(&self, c: &Rat) -> Poly {
        // Horner in the shifted variable.
        let mut acc = Poly::zero();
        let lin = Poly::new(vec![c.clone(), Rat::one()]);
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(a.clone()));
        }
        acc
    }

    /// Squarefree decomposition (Yun): returns [(g_1, 1), (g_2, 2), ...] with
    /// self = lc * prod g_i^i, the g_i monic, squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.degree() == Some(0) {
            return vec![];
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1usize;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a);
            if b.degree() == Some(0) {
                break;
            }
            c = d.div_exact(&a);
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rat::one())
    }
    fn is_one(&self) -> bool {
        self.degree() == Some(0) && self.coeff(0).is_one()
    }
}

impl std::ops::Add for Poly {
    type Output = Poly;
    fn add(self, other: Poly) -> Poly {
        Poly::add(&self, &other)
    }
}

impl std::ops::Sub for Poly {
    type Output = Poly;
    fn sub(self, other: Poly) -> Poly {
        Poly::sub(&self, &other)
    }
}

impl std::ops::Mul for Poly {
    type Output = Poly;
    fn mul(self, other: Poly) -> Poly {
        Poly::mul(&self, &other)
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn divrem_roundtrip() {
        let f = Poly::from_i64(&[2, 0, -3, 1, 4]);
        let g = Poly::from_i64(&[1, 2, 1]);
        let (q, r) = f.divrem(&g);
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(r.degree().unwrap_or(0) < g.degree().unwrap());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let shared = Poly::from_i64(&[-1, 1]); // x - 1
        let f = shared.mul(&Poly::from_i64(&[1, 1]));
        let g = shared.mul(&Poly::from_i64(&[2, 3]));
        assert_eq!(f.gcd(&g), shared.monic());
    }

    #[test]
    fn squarefree_decomposition_of_cube_times_linear() {
        // (x-1)^3 (x+2)
        let f = Poly::x_minus(&rat(1, 1));
        let g = Poly::from_i64(&[2, 1]);
        let prod = f.mul(&f).mul(&f).mul(&g);
        let dec = prod.squarefree_decomposition();
        assert_eq!(dec, vec![(g.monic(), 1), (f.clone(), 3)]);
    }

    #[test]
    fn reverse_substitutes_reciprocal() {
        let f = Poly::from_i64(&[3, 0, 5]); // 3 + 5x^2
        let r = f.reverse(); // 3x^2 + 5
        let x = rat(7, 2);
        let lhs = r.eval(&x);
        let rhs = f.eval(&x.recip()) * x.clone() * x;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_shift_moves_roots() {
        let f = Poly::x_minus(&rat(5, 1));
        let g = f.compose_shift(&rat(5, 1)); // f(x+5) = x
        assert_eq!(g, Poly::x());
    }

    #[test]
    fn root_multiplicity_counts() {
        let f = Poly::x_minus(&rat(2, 3));
        let sq = f.mul(&f).mul(&Poly::from_i64(&[1, 1]));
        assert_eq!(sq.root_multiplicity(&rat(2, 3)), 2);
        assert_eq!(sq.root_multiplicity(&rat(1, 1)), 0);
    }
}
