//! Smith normal form over a discrete valuation ring, generic in the
//! valuation. Two instances are used: Q with the p-adic valuation, and
//! rational functions with the order of vanishing at a basepoint.

use super::context::{PAdicContext, Val};
use super::matrix::Mat;
use super::poly::Poly;
use super::ratfun::RatFun;
use super::{Field, Rat};
use num_traits::{One, Zero};

/// A discrete valuation on a field, with its uniformizer.
pub trait Dvr {
    type El: Field;
    fn val(&self, x: &Self::El) -> Val;
    fn uniformizer(&self) -> Self::El;

    fn uniformizer_pow(&self, e: i64) -> Self::El {
        let pi = self.uniformizer();
        let base = if e >= 0 { pi } else { pi.inv() };
        let mut acc = Self::El::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }
}

/// Q with v_p.
#[derive(Clone, Copy, Debug)]
pub struct PAdicDvr(pub PAdicContext);

impl Dvr for PAdicDvr {
    type El = Rat;
    fn val(&self, x: &Rat) -> Val {
        self.0.val(x)
    }
    fn uniformizer(&self) -> Rat {
        self.0.prime_rat()
    }
}

/// Rational functions localized at a finite basepoint; the valuation is the
/// order of vanishing there and the uniformizer is (x - point).
#[derive(Clone, Debug)]
pub struct LocalRingAt(pub Rat);

impl Dvr for LocalRingAt {
    type El = RatFun;
    fn val(&self, x: &RatFun) -> Val {
        x.ord_at(&self.0)
    }
    fn uniformizer(&self) -> RatFun {
        RatFun::from_poly(Poly::x_minus(&self.0))
    }
}

/// M = u * diag * v with u, v invertible over the valuation ring
/// (entries of valuation >= 0, determinant of valuation 0), and diag the
/// rectangular diagonal uniformizer^e_1, uniformizer^e_2, ... with
/// e_1 <= e_2 <= ... and Inf marking zero diagonal entries.
#[derive(Clone, Debug)]
pub struct SmithDecomp<F> {
    pub u: Mat<F>,
    pub v: Mat<F>,
    pub exponents: Vec<Val>,
}

impl<F: Field> SmithDecomp<F> {
    pub fn rank(&self) -> usize {
        self.exponents.iter().filter(|e| e.is_finite()).count()
    }

    pub fn diag<D: Dvr<El = F>>(&self, dvr: &D, rows: usize, cols: usize) -> Mat<F> {
        let mut d = Mat::zeros(rows, cols);
        for (i, e) in self.exponents.iter().enumerate() {
            if let Val::Fin(e) = e {
                d.set(i, i, dvr.uniformizer_pow(*e));
            }
        }
        d
    }
}

/// Gauss elimination with minimal-valuation pivoting (ties broken by lowest
/// row, then column), so every row/column multiplier stays in the valuation
/// ring and the exponent sequence comes out nondecreasing.
pub fn smith_dvr<D: Dvr>(dvr: &D, m: &Mat<D::El>) -> SmithDecomp<D::El> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    // Maintain u_inv * m * v_inv = a.
    let mut u_inv = Mat::<D::El>::identity(rows);
    let mut v_inv = Mat::<D::El>::identity(cols);
    let steps = rows.min(cols);
    let mut exponents = Vec::with_capacity(steps);

    for k in 0..steps {
        // minimal-valuation pivot in the trailing submatrix
        let mut best: Option<(Val, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let v = dvr.val(a.at(i, j));
                if v == Val::Inf {
                    continue;
                }
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((pv, pi, pj)) = best else {
            break; // all remaining entries are zero
        };
        swap_rows(&mut a, k, pi);
        swap_rows(&mut u_inv, k, pi);
        swap_cols(&mut a, k, pj);
        swap_cols(&mut v_inv, k, pj);

        // normalize pivot to uniformizer^e: scale the row by a unit
        let e = pv.finite().unwrap();
        let target = dvr.uniformizer_pow(e);
        let unit = target * a.at(k, k).inv();
        scale_row(&mut a, k, &unit);
        scale_row(&mut u_inv, k, &unit);

        // clear column k below and row k to the right; multipliers are
        // integral because the pivot has minimal valuation
        for i in k + 1..rows {
            if a.at(i, k).is_zero() {
                continue;
            }
            let factor = a.at(i, k).clone() * a.at(k, k).inv();
            row_sub(&mut a, i, k, &factor);
            row_sub(&mut u_inv, i, k, &factor);
        }
        for j in k + 1..cols {
            if a.at(k, j).is_zero() {
                continue;
            }
            let factor = a.at(k, j).clone() * a.at(k, k).inv();
            col_sub(&mut a, j, k, &factor);
            col_sub(&mut v_inv, j, k, &factor);
        }
        exponents.push(Val::Fin(e));
    }
    while exponents.len() < steps {
        exponents.push(Val::Inf);
    }

    let u = u_inv.inverse().expect("row operations are invertible");
    let v = v_inv.inverse().expect("column operations are invertible");
    SmithDecomp { u, v, exponents }
}

fn swap_rows<F: Field>(m: &mut Mat<F>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let x = m.at(a, j).clone();
        let y = m.at(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn swap_cols<F: Field>(m: &mut Mat<F>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let x = m.at(i, a).clone();
        let y = m.at(i, b).clone();
        m.set(i, a, y);
        m.set(i, b, x);
    }
}

fn scale_row<F: Field>(m: &mut Mat<F>, r: usize, c: &F) {
    for j in 0..m.cols() {
        let v = m.at(r, j).clone() * c.clone();
        m.set(r, j, v);
    }
}

/// row_i -= factor * row_k
fn row_sub<F: Field>(m: &mut Mat<F>, i: usize, k: usize, factor: &F) {
    for j in 0..m.cols() {
        let v = m.at(i, j).clone() - factor.clone() * m.at(k, j).clone();
        m.set(i, j, v);
    }
}

/// col_j -= factor * col_k
fn col_sub<F: Field>(m: &mut Mat<F>, j: usize, k: usize, factor: &F) {
    for i in 0..m.rows() {
        let v = m.at(i, j).clone() - factor.clone() * m.at(i, k).clone();
        m.set(i, j, v);
    }
}

/// Invariant exponents only (the e_i), padded with Inf beyond the rank.
pub fn invariant_exponents<D: Dvr>(dvr: &D, m: &Mat<D::El>) -> Vec<Val> {
    smith_dvr(dvr, m).exponents
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i64};

    fn p2() -> PAdicDvr {
        PAdicDvr(PAdicContext::new(2).unwrap())
    }

    fn check_decomp<D: Dvr>(dvr: &D, m: &Mat<D::El>) -> Vec<Val> {
        let s = smith_dvr(dvr, m);
        let d = s.diag(dvr, m.rows(), m.cols());
        assert_eq!(s.u.mul(&d).mul(&s.v), *m, "u*d*v != m");
        assert_eq!(dvr.val(&s.u.det()), Val::Fin(0), "u not a unit");
        assert_eq!(dvr.val(&s.v.det()), Val::Fin(0), "v not a unit");
        for w in s.exponents.windows(2) {
            assert!(w[0] <= w[1], "exponents not sorted: {:?}", s.exponents);
        }
        for (i, row) in (0..s.u.rows()).map(|i| (i, s.u.row(i))).chain(
            (0..s.v.rows()).map(|i| (i, s.v.row(i))),
        ) {
            for x in row {
                assert!(dvr.val(&x) >= Val::Fin(0), "non-integral entry in u/v at row {i}");
            }
        }
        s.exponents
    }

    #[test]
    fn identity_has_zero_exponents() {
        let e = check_decomp(&p2(), &Mat::identity(2));
        assert_eq!(e, vec![Val::Fin(0), Val::Fin(0)]);
    }

    #[test]
    fn diag_4_6_at_two() {
        // invariant factors 2 and 4: exponents (1, 2), total = v(det 24) = 3
        let m = Mat::from_i64_rows(&[&[4, 0], &[0, 6]]);
        let e = check_decomp(&p2(), &m);
        assert_eq!(e, vec![Val::Fin(1), Val::Fin(2)]);
        assert_eq!(
            e.iter().fold(Val::Fin(0), |a, b| a.plus(*b)),
            p2().val(&m.det())
        );
    }

    #[test]
    fn vanishing_order_at_basepoint() {
        // [[x - x0, 0], [0, 1]] at basepoint x0: exponents (0, 1)
        let x0 = rat(3, 1);
        let dvr = LocalRingAt(x0.clone());
        let m = Mat::from_rows(vec![
            vec![
                RatFun::from_poly(Poly::x_minus(&x0)),
                RatFun::zero(),
            ],
            vec![RatFun::zero(), RatFun::one()],
        ]);
        let s = smith_dvr(&dvr, &m);
        assert_eq!(s.exponents, vec![Val::Fin(0), Val::Fin(1)]);
        let d = s.diag(&dvr, 2, 2);
        assert_eq!(s.u.mul(&d).mul(&s.v), m);
    }

    #[test]
    fn rank_deficient_padding() {
        let m = Mat::from_i64_rows(&[&[2, 4], &[1, 2]]);
        let e = check_decomp(&p2(), &m);
        assert_eq!(e, vec![Val::Fin(0), Val::Inf]);
    }

    #[test]
    fn random_matrices_remultiply() {
        let dvr = p2();
        let mut state = 99u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(11);
            ((state >> 33) as i64 % 9) - 4
        };
        for trial in 0..60 {
            let r = 1 + (trial % 4);
            let c = 1 + (trial % 3);
            let m = Mat::from_fn(r, c, |_, _| rat(next(), 1 + next().unsigned_abs() as i64 % 3));
            check_decomp(&dvr, &m);
        }
    }

    #[test]
    fn invariant_factors_stable_under_units() {
        // e(M) = e(A*M*B) for A, B with valuation-zero determinant
        let dvr = p2();
        let m = Mat::from_i64_rows(&[&[4, 2], &[6, 3]]);
        let a = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let b = Mat::from_i64_rows(&[&[3, 2], &[1, 1]]);
        assert_eq!(dvr.val(&a.det()), Val::Fin(0));
        assert_eq!(dvr.val(&b.det()), Val::Fin(0));
        assert_eq!(
            invariant_exponents(&dvr, &m),
            invariant_exponents(&dvr, &a.mul(&m).mul(&b))
        );
    }

    #[test]
    fn pivot_rule_gives_integral_multipliers_with_rationals() {
        // 1/2 has valuation -1 at p=2 and must be picked as the first pivot
        let m = Mat::from_rows(vec![
            vec![rat_i64(1), rat(1, 2)],
            vec![rat_i64(3), rat_i64(5)],
        ]);
        let e = check_decomp(&p2(), &m);
        assert_eq!(e[0], Val::Fin(-1));
    }
}
