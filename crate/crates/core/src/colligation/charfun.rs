//! Characteristic (transfer) functions: exact rational-function matrices,
//! determinant identity, graph values with singularities removed, and the
//! boundary form for multi-block colligations.

use super::collig::Colligation;
use crate::arith::context::ArithError;
use crate::arith::matrix::Mat;
use crate::arith::poly::Poly;

use crate::arith::ratfunmat::{adjugate_det, RatFunMat};
use crate::arith::smith::{smith_dvr, LocalRingAt};
use crate::arith::Rat;
use crate::lattice::quasi::SubspaceRep;
use num_traits::{One, Zero};

/// chi(x) = a + x b (1 - x d)^{-1} c as an exact rational-function matrix;
/// regular at 0 with value a, denominator dividing det(1 - x d).
pub fn char_fun(g: &Colligation) -> RatFunMat {
    assert_eq!(g.block_count(), 1, "field-level transfer function needs m = 1");
    let n = g.inner_size();
    let a_poly = g.corner().map(|r| Poly::constant(r.clone()));
    if n == 0 {
        return RatFunMat::new(a_poly, Poly::one());
    }
    let resolvent = resolvent_matrix(&g.d_full());
    let (adj, det) = adjugate_det(&resolvent);
    let b = g.b_full().map(|r| Poly::constant(r.clone()));
    let c = g.c_full().map(|r| Poly::constant(r.clone()));
    // a * det + x * (b adj c)
    let correction = b.mul(&adj).mul(&c).map(|p| p.shift_up(1));
    let num = a_poly.map(|p| p.mul(&det)).add(&correction);
    RatFunMat::new(num, det)
}

/// 1 - x d as a polynomial matrix.
fn resolvent_matrix(d: &Mat<Rat>) -> Mat<Poly> {
    let n = d.rows();
    Mat::from_fn(n, n, |i, j| {
        let lin = Poly::new(vec![Rat::zero(), -d.at(i, j).clone()]);
        if i == j {
            lin.add(&Poly::one())
        } else {
            lin
        }
    })
}

/// Direct evaluation a + x b (1 - x d)^{-1} c at a rational point.
pub fn char_at(g: &Colligation, x: &Rat) -> Result<Mat<Rat>, ArithError> {
    assert_eq!(g.block_count(), 1);
    let n = g.inner_size();
    if n == 0 {
        return Ok(g.corner());
    }
    let resolvent = Mat::<Rat>::identity(n).sub(&g.d_full().scale(x));
    let inv = resolvent.inverse().map_err(|_| ArithError::PoleAtPoint)?;
    Ok(g
        .corner()
        .add(&g.b_full().mul(&inv).mul(&g.c_full()).scale(x)))
}

/// Evaluation in the reciprocal coordinate: a + b (s - d)^{-1} c.
pub fn char_at_reciprocal(g: &Colligation, s: &Rat) -> Result<Mat<Rat>, ArithError> {
    assert_eq!(g.block_count(), 1);
    let n = g.inner_size();
    if n == 0 {
        return Ok(g.corner());
    }
    let shifted = Mat::<Rat>::identity(n).scale(s).sub(&g.d_full());
    let inv = shifted.inverse().map_err(|_| ArithError::PoleAtPoint)?;
    Ok(g.corner().add(&g.b_full().mul(&inv).mul(&g.c_full())))
}

/// det chi(x) * det(1 - x d) = det [[a, -x b], [c, 1 - x d]] as rational
/// functions; used as a self-test of the transfer function construction.
/// Cleared of denominators this is the polynomial identity
/// det(num) * det(1 - x d) = det(block) * den^alpha.
pub fn det_char_check(g: &Colligation) -> bool {
    assert_eq!(g.block_count(), 1);
    let alpha = g.alpha();
    let n = g.inner_size();
    let chi = char_fun(g);
    let resolvent = resolvent_matrix(&g.d_full());
    let (_, resolvent_det) = adjugate_det(&resolvent);
    let (_, chi_num_det) = adjugate_det(chi.num());
    let lhs = chi_num_det.mul(&resolvent_det);
    // block matrix [[a, -x b], [c, 1 - x d]]
    let size = alpha + n;
    let d = g.d_full();
    let block: Mat<Poly> = Mat::from_fn(size, size, |i, j| {
        if i < alpha && j < alpha {
            Poly::constant(g.corner().at(i, j).clone())
        } else if i < alpha {
            Poly::new(vec![Rat::zero(), -g.b_full().at(i, j - alpha).clone()])
        } else if j < alpha {
            Poly::constant(g.c_full().at(i - alpha, j).clone())
        } else {
            let lin = Poly::new(vec![Rat::zero(), -d.at(i - alpha, j - alpha).clone()]);
            if i == j {
                lin.add(&Poly::one())
            } else {
                lin
            }
        }
    });
    let (_, block_det) = adjugate_det(&block);
    let mut den_pow = Poly::one();
    for _ in 0..alpha {
        den_pow = den_pow.mul(chi.den());
    }
    lhs == block_det.mul(&den_pow)
}

/// The polynomial det(1 - x d), whose zeros carry the exceptional divisor.
pub fn resolvent_det(g: &Colligation) -> Poly {
    adjugate_det(&resolvent_matrix(&g.d_full())).1
}

/// Graph value of the transfer function at a point of the projective line
/// (None = the point at infinity), singularities removed: the subspace of
/// (output, input) pairs obtained as the limit of graphs.
///
/// Computed by factoring chi through the local ring at the basepoint:
/// chi = U * diag((x - x0)^(e_i)) * V with U, V invertible at x0, then
/// transporting the diagonal graph limit by U(x0) on outputs and V(x0)^{-1}
/// on inputs: pole directions contribute pure outputs, zero directions pure
/// inputs, unit directions honest graph vectors.
pub fn graph_at(g: &Colligation, point: Option<&Rat>) -> SubspaceRep {
    assert_eq!(g.block_count(), 1);
    let alpha = g.alpha();
    let chi = char_fun(g).entries();
    let (entries, x0) = match point {
        Some(x0) => (chi, x0.clone()),
        None => (chi.map(|f| f.reciprocal_substitution()), Rat::zero()),
    };
    let dvr = LocalRingAt(x0.clone());
    let dec = smith_dvr(&dvr, &entries);
    let u0 = dec.u.map(|f| f.eval(&x0).expect("unit at basepoint"));
    let v0 = dec.v.map(|f| f.eval(&x0).expect("unit at basepoint"));
    let v0_inv = v0.inverse().expect("valuation-zero determinant");
    let mut cols = Vec::with_capacity(alpha);
    for j in 0..alpha {
        let e = dec.exponents[j];
        let mut col = vec![Rat::zero(); 2 * alpha];
        let pole = matches!(e, crate::arith::context::Val::Fin(v) if v < 0);
        let unit = matches!(e, crate::arith::context::Val::Fin(0));
        if pole || unit {
            for i in 0..alpha {
                col[i] = u0.at(i, j).clone();
            }
        }
        if !pole {
            for i in 0..alpha {
                col[alpha + i] = v0_inv.at(i, j).clone();
            }
        }
        cols.push(col);
    }
    SubspaceRep::new(2 * alpha, cols)
}

/// Boundary value of the multi-block characteristic map at an m x m matrix:
/// a + b (S tensor 1_N) (1 - d (S tensor 1_N))^{-1} c.
pub fn char_boundary(g: &Colligation, s: &Mat<Rat>) -> Result<Mat<Rat>, ArithError> {
    let m = g.block_count();
    if s.rows() != m || s.cols() != m {
        return Err(ArithError::Shape(format!(
            "boundary matrix must be {m}x{m}"
        )));
    }
    let n = g.inner_size();
    if n == 0 {
        return Ok(g.corner());
    }
    let s_tilde = Mat::from_fn(m * n, m * n, |i, j| {
        let (bi, ii) = (i / n, i % n);
        let (bj, jj) = (j / n, j % n);
        if ii == jj {
            s.at(bi, bj).clone()
        } else {
            Rat::zero()
        }
    });
    let resolvent = Mat::<Rat>::identity(m * n).sub(&g.d_full().mul(&s_tilde));
    let inv = resolvent.inverse().map_err(|_| ArithError::PoleAtPoint)?;
    Ok(g
        .corner()
        .add(&g.b_full().mul(&s_tilde).mul(&inv).mul(&g.c_full())))
}
