//! Matrices of rational functions stored as a polynomial-matrix numerator
//! over one common monic denominator.

use super::context::ArithError;
use super::matrix::Mat;
use super::poly::Poly;
use super::ratfun::RatFun;
use super::{Field, Rat};
use num_traits::{One, Zero};

/// num / den entrywise, with den monic and gcd(den, all num entries) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunMat {
    num: Mat<Poly>,
    den: Poly,
}

/// Adjugate and determinant of a polynomial matrix by the trace recurrence
/// (division-free up to integer scalars), so resolvent inverses never churn
/// through rational-function gcds.
pub fn adjugate_det(a: &Mat<Poly>) -> (Mat<Poly>, Poly) {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return (Mat::zeros(0, 0), Poly::one());
    }
    let id = Mat::<Poly>::identity(n);
    let mut m = id.clone(); // M_1
    let mut c = trace(&a.mul(&m)).neg(); // c_1
    for k in 2..=n {
        m = a.mul(&m).add(&id.scale(&c));
        c = trace(&a.mul(&m)).scale(&Rat::from(num_bigint::BigInt::from(k as i64)).recip()).neg();
    }
    let adj = if n % 2 == 1 { m } else { m.neg() };
    let det = if n.is_multiple_of(2) { c } else { c.neg() };
    (adj, det)
}

fn trace(a: &Mat<Poly>) -> Poly {
    let mut tr = Poly::zero();
    for i in 0..a.rows() {
        tr = tr.add(a.at(i, i));
    }
    tr
}

impl RatFunMat {
    /// Canonicalizes: pulls out the joint gcd and makes the denominator monic.
    pub fn new(num: Mat<Poly>, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut g = den.clone();
        for i in 0..num.rows() {
            for j in 0..num.cols() {
                g = g.gcd(num.at(i, j));
                if g.is_one() {
                    break;
                }
            }
        }
        let den2 = den.div_exact(&g);
        let lead = den2.leading();
        let lead_inv = lead.recip();
        let den3 = den2.scale(&lead_inv);
        let num3 = num.map(|p| p.div_exact(&g).scale(&lead_inv));
        RatFunMat {
            num: num3,
            den: den3,
        }
    }

    pub fn from_entries(entries: &Mat<RatFun>) -> Self {
        // common denominator = lcm of the entry denominators
        let mut den = Poly::one();
        for i in 0..entries.rows() {
            for j in 0..entries.cols() {
                let d = entries.at(i, j).den();
                den = den.mul(&d.div_exact(&den.gcd(d)));
            }
        }
        let num = entries.map(|f| f.num().mul(&den.div_exact(f.den())));
        RatFunMat::new(num, den)
    }

    pub fn from_const(m: &Mat<Rat>) -> Self {
        RatFunMat {
            num: m.map(|c| Poly::constant(c.clone())),
            den: Poly::one(),
        }
    }

    pub fn rows(&self) -> usize {
        self.num.rows()
    }

    pub fn cols(&self) -> usize {
        self.num.cols()
    }

    pub fn num(&self) -> &Mat<Poly> {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn entry(&self, i: usize, j: usize) -> RatFun {
        RatFun::new(self.num.at(i, j).clone(), self.den.clone())
    }

    pub fn entries(&self) -> Mat<RatFun> {
        self.num.map(|p| RatFun::new(p.clone(), self.den.clone()))
    }

    /// Entrywise evaluation; pole error if the denominator vanishes.
    pub fn eval(&self, x: &Rat) -> Result<Mat<Rat>, ArithError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ArithError::PoleAtPoint);
        }
        let dinv = d.recip();
        Ok(self.num.map(|p| p.eval(x) * &dinv))
    }

    pub fn mul(&self, other: &RatFunMat) -> RatFunMat {
        RatFunMat::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn det(&self) -> RatFun {
        let d = self.num.map(|p| RatFun::from_poly(p.clone())).det();
        let mut den_pow = RatFun::one();
        for _ in 0..self.rows() {
            den_pow = den_pow.mul(&RatFun::from_poly(self.den.clone()));
        }
        d.mul(&den_pow.inv())
    }

    pub fn is_identity(&self) -> bool {
        self.den.is_one()
            && self.num.is_square()
            && (0..self.rows()).all(|i| {
                (0..self.cols()).all(|j| {
                    if i == j {
                        self.num.at(i, j).is_one()
                    } else {
                        self.num.at(i, j).is_zero()
                    }
                })
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i64};

    #[test]
    fn canonicalization_strips_joint_factor() {
        // [(x-1)x, (x-1)] / (x-1)(x+1) -> [x, 1] / (x+1)
        let shared = Poly::from_i64(&[-1, 1]);
        let num = Mat::from_rows(vec![vec![
            shared.mul(&Poly::x()),
            shared.clone(),
        ]]);
        let den = shared.mul(&Poly::from_i64(&[1, 1]));
        let f = RatFunMat::new(num, den);
        assert_eq!(f.den(), &Poly::from_i64(&[1, 1]));
        assert_eq!(f.num().at(0, 0), &Poly::x());
    }

    #[test]
    fn eval_after_canonicalize_matches_fraction() {
        let shared = Poly::from_i64(&[-1, 1]);
        let raw_num = Mat::from_rows(vec![vec![shared.mul(&Poly::from_i64(&[2, 3]))]]);
        let raw_den = shared.mul(&Poly::from_i64(&[5, 0, 1]));
        let f = RatFunMat::new(raw_num.clone(), raw_den.clone());
        for x in [rat(0, 1), rat(7, 2), rat(-3, 4), rat(11, 5), rat(2, 7)] {
            let direct = raw_num.at(0, 0).eval(&x) * raw_den.eval(&x).recip();
            assert_eq!(f.eval(&x).unwrap().at(0, 0), &direct);
        }
    }

    #[test]
    fn pole_detected() {
        // [1/(1-x)] at x = 1
        let f = RatFunMat::new(
            Mat::from_rows(vec![vec![Poly::one()]]),
            Poly::from_i64(&[1, -1]),
        );
        assert!(matches!(f.eval(&rat_i64(1)), Err(ArithError::PoleAtPoint)));
        assert_eq!(f.eval(&rat_i64(0)).unwrap().at(0, 0), &rat_i64(1));
    }

    #[test]
    fn constant_identity_evaluates_everywhere() {
        let f = RatFunMat::from_const(&Mat::identity(2));
        assert!(f.is_identity());
        assert_eq!(f.eval(&rat(9, 4)).unwrap(), Mat::identity(2));
    }

    #[test]
    fn coordinate_function_evaluates() {
        let f = RatFunMat::new(Mat::from_rows(vec![vec![Poly::x()]]), Poly::one());
        assert_eq!(f.eval(&rat_i64(5)).unwrap().at(0, 0), &rat_i64(5));
    }
}
