//! Realization of scalar rational functions as transfer functions of
//! corner-size-1 colligations, by peeling degree-one factors with rational
//! poles and zeros in the reciprocal coordinate.

use super::collig::Colligation;
use crate::arith::factor::any_rational_root;
use crate::arith::matrix::Mat;
use crate::arith::poly::Poly;
use crate::arith::ratfun::RatFun;
use crate::arith::Rat;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("the function has a pole at 0")]
    PoleAtZero,
    #[error("a factor step needs a rational {0} and none exists")]
    NotRationallyFactorable(&'static str),
}

/// A colligation whose transfer function equals w exactly.
///
/// w is given in the standard coordinate (regular at 0). Construction works
/// in the reciprocal coordinate s: repeatedly split off (s - zero)/(s - pole)
/// or 1/(s - pole), each realized directly as a 1+1 block, and multiply the
/// pieces back together; constants become 1x1 corners. Fails with a
/// dedicated error when a needed pole or zero is not rational.
pub fn realize(w: &RatFun) -> Result<Colligation, RealizeError> {
    if w.den().eval(&Rat::zero()).is_zero() {
        return Err(RealizeError::PoleAtZero);
    }
    let in_s = w.reciprocal_substitution();
    realize_reciprocal(&in_s)
}

fn realize_reciprocal(w: &RatFun) -> Result<Colligation, RealizeError> {
    let num = w.num().clone();
    let den = w.den().clone();
    let dn = num.degree();
    let dd = den.degree().expect("nonzero denominator");
    assert!(
        dn.is_none_or(|d| d <= dd),
        "regular at infinity in the reciprocal coordinate"
    );
    if dd == 0 {
        // a constant c as a bare 1x1 corner
        let c = num.coeff(0);
        let mat = Mat::new(1, 1, vec![c]);
        return Ok(Colligation::new(1, 1, 0, mat).unwrap());
    }
    let pole = any_rational_root(&den)
        .ok_or(RealizeError::NotRationallyFactorable("pole"))?;
    let den_rest = den.div_exact(&Poly::x_minus(&pole));
    let (factor, num_rest) = match dn {
        Some(d) if d == dd => {
            let zero = any_rational_root(&num)
                .ok_or(RealizeError::NotRationallyFactorable("zero"))?;
            // (s - zero)/(s - pole) realized as [[1, 1], [pole - zero, pole]]
            let f = Colligation::new(
                1,
                1,
                1,
                Mat::from_rows(vec![
                    vec![Rat::one(), Rat::one()],
                    vec![&pole - &zero, pole.clone()],
                ]),
            )
            .unwrap();
            (f, num.div_exact(&Poly::x_minus(&zero)))
        }
        _ => {
            // zero at infinity: peel 1/(s - pole) as [[0, 1], [1, pole]]
            let f = Colligation::new(
                1,
                1,
                1,
                Mat::from_rows(vec![
                    vec![Rat::zero(), Rat::one()],
                    vec![Rat::one(), pole.clone()],
                ]),
            )
            .unwrap();
            (f, num)
        }
    };
    let rest = realize_reciprocal(&RatFun::new(num_rest, den_rest))?;
    Ok(factor.circ(&rest).expect("same corner size"))
}
