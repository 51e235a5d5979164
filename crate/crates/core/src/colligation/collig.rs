//! Block matrices (a b; c d) of size alpha + m*N over Q, with the
//! size-additive product that multiplies characteristic functions.

use crate::arith::context::ArithError;
use crate::arith::matrix::Mat;
use crate::arith::Rat;
use num_traits::{One, Zero};

/// A square rational matrix with block structure alpha + m*N: corner a
/// (alpha x alpha), rows b_i (alpha x N), columns c_i (N x alpha), inner
/// blocks d_ij (N x N). Conjugation by diag(1, u, ..., u) acts on the inner
/// blocks; the operations here are all invariant or equivariant for it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Colligation {
    alpha: usize,
    m: usize,
    inner: usize,
    mat: Mat<Rat>,
}

impl Colligation {
    pub fn new(alpha: usize, m: usize, inner: usize, mat: Mat<Rat>) -> Result<Self, ArithError> {
        if m == 0 {
            return Err(ArithError::Shape("m must be at least 1".into()));
        }
        let size = m
            .checked_mul(inner)
            .and_then(|mn| mn.checked_add(alpha))
            .ok_or_else(|| ArithError::Shape("block sizes overflow".into()))?;
        if mat.rows() != size || mat.cols() != size {
            return Err(ArithError::Shape(format!(
                "entries are {}x{}, expected {size}x{size} from alpha={alpha}, m={m}, N={inner}",
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(Colligation {
            alpha,
            m,
            inner,
            mat,
        })
    }

    pub fn from_i64(alpha: usize, m: usize, inner: usize, rows: &[&[i64]]) -> Self {
        Colligation::new(alpha, m, inner, Mat::from_i64_rows(rows)).unwrap()
    }

    pub fn identity(alpha: usize, m: usize, inner: usize) -> Self {
        Colligation::new(alpha, m, inner, Mat::identity(alpha + m * inner)).unwrap()
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn block_count(&self) -> usize {
        self.m
    }

    pub fn inner_size(&self) -> usize {
        self.inner
    }

    pub fn size(&self) -> usize {
        self.alpha + self.m * self.inner
    }

    pub fn entries(&self) -> &Mat<Rat> {
        &self.mat
    }

    pub fn corner(&self) -> Mat<Rat> {
        self.mat.submatrix(0, self.alpha, 0, self.alpha)
    }

    fn block_range(&self, i: usize) -> (usize, usize) {
        let start = self.alpha + i * self.inner;
        (start, start + self.inner)
    }

    pub fn b_block(&self, i: usize) -> Mat<Rat> {
        let (c0, c1) = self.block_range(i);
        self.mat.submatrix(0, self.alpha, c0, c1)
    }

    pub fn c_block(&self, i: usize) -> Mat<Rat> {
        let (r0, r1) = self.block_range(i);
        self.mat.submatrix(r0, r1, 0, self.alpha)
    }

    pub fn d_block(&self, i: usize, j: usize) -> Mat<Rat> {
        let (r0, r1) = self.block_range(i);
        let (c0, c1) = self.block_range(j);
        self.mat.submatrix(r0, r1, c0, c1)
    }

    /// Full alpha x mN row band.
    pub fn b_full(&self) -> Mat<Rat> {
        self.mat.submatrix(0, self.alpha, self.alpha, self.size())
    }

    /// Full mN x alpha column band.
    pub fn c_full(&self) -> Mat<Rat> {
        self.mat.submatrix(self.alpha, self.size(), 0, self.alpha)
    }

    /// Full mN x mN inner band.
    pub fn d_full(&self) -> Mat<Rat> {
        self.mat
            .submatrix(self.alpha, self.size(), self.alpha, self.size())
    }

    /// The size-additive product: blockwise assembly with the left factor's
    /// inner blocks first inside each band. Associative; multiplies
    /// characteristic functions.
    pub fn circ(&self, other: &Colligation) -> Result<Colligation, ArithError> {
        if self.alpha != other.alpha || self.m != other.m {
            return Err(ArithError::Shape(format!(
                "cannot multiply (alpha={}, m={}) by (alpha={}, m={})",
                self.alpha, self.m, other.alpha, other.m
            )));
        }
        let m = self.m;
        let n1 = self.inner;
        let n2 = other.inner;
        let corner = self.corner().mul(&other.corner());
        let zero_block = Mat::<Rat>::zeros(n2, n1);

        // band layout: corner, then per block row i the N1-rows then N2-rows
        let mut grid: Vec<Vec<Mat<Rat>>> = Vec::with_capacity(1 + 2 * m);
        let mut top: Vec<Mat<Rat>> = Vec::with_capacity(1 + 2 * m);
        top.push(corner);
        for j in 0..m {
            top.push(self.b_block(j));
            top.push(self.corner().mul(&other.b_block(j)));
        }
        grid.push(top);
        for i in 0..m {
            let mut row_a: Vec<Mat<Rat>> = Vec::with_capacity(1 + 2 * m);
            row_a.push(self.c_block(i).mul(&other.corner()));
            for j in 0..m {
                row_a.push(self.d_block(i, j));
                row_a.push(self.c_block(i).mul(&other.b_block(j)));
            }
            grid.push(row_a);
            let mut row_b: Vec<Mat<Rat>> = Vec::with_capacity(1 + 2 * m);
            row_b.push(other.c_block(i));
            for j in 0..m {
                row_b.push(zero_block.clone());
                row_b.push(other.d_block(i, j));
            }
            grid.push(row_b);
        }
        let refs: Vec<Vec<&Mat<Rat>>> = grid.iter().map(|band| band.iter().collect()).collect();
        let mat = Mat::block(&refs);
        Colligation::new(self.alpha, m, n1 + n2, mat)
    }

    /// Pads with one extra diagonal 1 in the inner block: the characteristic
    /// function is unchanged and the divisor gains the point 1.
    pub fn embed(&self) -> Colligation {
        assert_eq!(self.m, 1, "padding is defined for single-block form");
        let n = self.size();
        let mut mat = Mat::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                mat.set(i, j, self.mat.at(i, j).clone());
            }
        }
        mat.set(n, n, Rat::one());
        Colligation::new(self.alpha, 1, self.inner + 1, mat).unwrap()
    }

    /// Conjugation by diag(1_alpha, u, ..., u); this is the equivalence the
    /// quotient constructions are invariant under.
    pub fn conjugate(&self, u: &Mat<Rat>) -> Result<Colligation, ArithError> {
        assert_eq!(u.rows(), self.inner);
        assert!(u.is_square());
        let u_inv = u.inverse()?;
        let mut big = Mat::<Rat>::identity(self.size());
        let mut big_inv = Mat::<Rat>::identity(self.size());
        for blk in 0..self.m {
            let (r0, _) = self.block_range(blk);
            for i in 0..self.inner {
                for j in 0..self.inner {
                    big.set(r0 + i, r0 + j, u.at(i, j).clone());
                    big_inv.set(r0 + i, r0 + j, u_inv.at(i, j).clone());
                }
            }
        }
        let mat = big.mul(&self.mat).mul(&big_inv);
        Colligation::new(self.alpha, self.m, self.inner, mat)
    }

    /// Linear-fractional action on the whole matrix:
    /// (c00 g + c01)(c10 g + c11)^{-1} for a nondegenerate 2x2 coefficient
    /// matrix of scalars.
    pub fn mobius(&self, coeffs: &Mat<Rat>) -> Result<Colligation, ArithError> {
        assert_eq!((coeffs.rows(), coeffs.cols()), (2, 2));
        if coeffs.det().is_zero() {
            return Err(ArithError::Shape("degenerate coefficient matrix".into()));
        }
        let id = Mat::<Rat>::identity(self.size());
        let numer = self.mat.scale(coeffs.at(0, 0)).add(&id.scale(coeffs.at(0, 1)));
        let denom = self.mat.scale(coeffs.at(1, 0)).add(&id.scale(coeffs.at(1, 1)));
        let denom_inv = denom.inverse()?;
        Colligation::new(self.alpha, self.m, self.inner, numer.mul(&denom_inv))
    }

    /// Value at the opposite chart point: a - b d^{-1} c; requires d
    /// invertible.
    pub fn char_at_infty(&self) -> Result<Mat<Rat>, ArithError> {
        let d_inv = self.d_full().inverse()?;
        Ok(self
            .corner()
            .sub(&self.b_full().mul(&d_inv).mul(&self.c_full())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i64};

    fn lower() -> Colligation {
        Colligation::from_i64(1, 1, 1, &[&[1, 0], &[1, 1]])
    }

    fn upper() -> Colligation {
        Colligation::from_i64(1, 1, 1, &[&[1, 1], &[0, 1]])
    }

    #[test]
    fn product_of_shear_pair() {
        // blockwise: [[ap, b, aq], [cp, d, cq], [r, 0, t]]
        let lu = lower().circ(&upper()).unwrap();
        assert_eq!(
            lu.entries(),
            &Mat::from_i64_rows(&[&[1, 0, 1], &[1, 1, 1], &[0, 0, 1]])
        );
        let ul = upper().circ(&lower()).unwrap();
        assert_eq!(
            ul.entries(),
            &Mat::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[1, 0, 1]])
        );
        // the two products are distinct matrices: the monoid itself is
        // noncommutative even though the quotient is commutative
        assert_ne!(lu, ul);
    }

    #[test]
    fn identity_products_grow_diagonally() {
        let a = Colligation::identity(2, 1, 1);
        let b = Colligation::identity(2, 1, 2);
        let prod = a.circ(&b).unwrap();
        assert_eq!(prod, Colligation::identity(2, 1, 3));
    }

    #[test]
    fn circ_is_associative() {
        let mut state = 5u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(17);
            ((state >> 33) as i64 % 5) - 2
        };
        for _ in 0..10 {
            let mk = |n: usize, next: &mut dyn FnMut() -> i64| {
                let size = 2 + n;
                let mat = Mat::from_fn(size, size, |_, _| rat_i64(next()));
                Colligation::new(2, 1, n, mat).unwrap()
            };
            let g = mk(1, &mut next);
            let h = mk(2, &mut next);
            let k = mk(1, &mut next);
            let lhs = g.circ(&h).unwrap().circ(&k).unwrap();
            let rhs = g.circ(&h.circ(&k).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn shape_mismatch_rejected() {
        let g = Colligation::identity(1, 1, 1);
        let h = Colligation::identity(2, 1, 1);
        assert!(g.circ(&h).is_err());
    }

    #[test]
    fn mobius_identity_and_inverse() {
        let g = Colligation::from_i64(1, 1, 1, &[&[1, 1], &[1, 2]]);
        let id_coeffs = Mat::from_i64_rows(&[&[1, 0], &[0, 1]]);
        assert_eq!(g.mobius(&id_coeffs).unwrap(), g);
        let antidiag = Mat::from_i64_rows(&[&[0, 1], &[1, 0]]);
        let h = g.mobius(&antidiag).unwrap();
        assert_eq!(h.entries(), &g.entries().inverse().unwrap());
    }

    #[test]
    fn mobius_transformation_law() {
        // h = (c00 g + c01)(c10 g + c11)^{-1} satisfies, in the reciprocal
        // coordinate, chi_h(s) = (c00 X + c01)(c10 X + c11)^{-1} with
        // X = chi_g(sigma) at the pulled-back argument
        // sigma = (c11 s - c01)/(c00 - c10 s).
        use crate::colligation::charfun::char_at_reciprocal;
        let mut state = 77u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(3);
            ((state >> 33) as i64 % 5) - 2
        };
        let mut done = 0;
        while done < 50 {
            let alpha = 1 + (next().unsigned_abs() as usize % 2);
            let n = 1 + (next().unsigned_abs() as usize % 3);
            let size = alpha + n;
            let g = match Colligation::new(
                alpha,
                1,
                n,
                Mat::from_fn(size, size, |_, _| rat_i64(next())),
            ) {
                Ok(g) => g,
                Err(_) => continue,
            };
            let coeffs = Mat::from_fn(2, 2, |_, _| rat_i64(next()));
            if coeffs.det().is_zero() {
                continue;
            }
            let h = match g.mobius(&coeffs) {
                Ok(h) => h,
                Err(_) => continue,
            };
            done += 1;
            let (c00, c01) = (coeffs.at(0, 0).clone(), coeffs.at(0, 1).clone());
            let (c10, c11) = (coeffs.at(1, 0).clone(), coeffs.at(1, 1).clone());
            let mut points = 0;
            let mut probe = 2i64;
            while points < 5 && probe < 400 {
                probe += 1;
                let s = rat(probe, 2);
                // sigma = (c11 s - c01)/(-c10 s + c00)
                let denom = &c00 - &(&c10 * &s);
                if denom.is_zero() {
                    continue;
                }
                let sigma = (&(&c11 * &s) - &c01) * denom.recip();
                let (Ok(lhs), Ok(x)) = (char_at_reciprocal(&h, &s), char_at_reciprocal(&g, &sigma))
                else {
                    continue;
                };
                let id = Mat::<Rat>::identity(alpha);
                let numer = x.scale(&c00).add(&id.scale(&c01));
                let denom_mat = x.scale(&c10).add(&id.scale(&c11));
                let Ok(denom_inv) = denom_mat.inverse() else {
                    continue;
                };
                points += 1;
                assert_eq!(lhs, numer.mul(&denom_inv), "law fails at s={s} for {:?}", g.entries());
            }
            assert_eq!(points, 5, "not enough usable sample points");
        }
    }

    #[test]
    fn char_at_infty_examples() {
        let id = Colligation::identity(1, 1, 1);
        assert_eq!(id.char_at_infty().unwrap(), Mat::identity(1));
        let ones = Colligation::from_i64(1, 1, 1, &[&[1, 1], &[1, 1]]);
        assert_eq!(ones.char_at_infty().unwrap(), Mat::from_i64_rows(&[&[0]]));
        let swap = Colligation::from_i64(1, 1, 1, &[&[0, 1], &[1, 0]]);
        assert!(swap.char_at_infty().is_err());
    }

    #[test]
    fn conjugation_preserves_corner() {
        let g = Colligation::from_i64(1, 1, 2, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let u = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let conj = g.conjugate(&u).unwrap();
        assert_eq!(conj.corner(), g.corner());
        assert_ne!(conj, g);
        // involution through the inverse
        let back = conj.conjugate(&u.inverse().unwrap()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn m_block_product_layout() {
        // m = 2, N1 = N2 = 1: the interleaved layout
        let g = Colligation::from_i64(1, 2, 1, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let h = Colligation::from_i64(1, 2, 1, &[&[2, 1, 0], &[1, 1, 1], &[0, 1, 2]]);
        let prod = g.circ(&h).unwrap();
        assert_eq!(prod.alpha(), 1);
        assert_eq!(prod.block_count(), 2);
        assert_eq!(prod.inner_size(), 2);
        // corner = a*p
        assert_eq!(prod.corner(), Mat::from_i64_rows(&[&[2]]));
        // d'_{ij} = [[d_ij, c_i q_j], [0, t_ij]]
        for i in 0..2 {
            for j in 0..2 {
                let blk = prod.d_block(i, j);
                assert_eq!(blk.at(0, 0), g.d_block(i, j).at(0, 0));
                assert_eq!(
                    blk.at(0, 1),
                    &(g.c_block(i).at(0, 0).clone() * h.b_block(j).at(0, 0).clone())
                );
                assert_eq!(blk.at(1, 0), &rat(0, 1));
                assert_eq!(blk.at(1, 1), h.d_block(i, j).at(0, 0));
            }
        }
        // b'_i = [b_i, a q_i], c'_i = [c_i p; r_i]
        for i in 0..2 {
            let b = prod.b_block(i);
            assert_eq!(b.at(0, 0), g.b_block(i).at(0, 0));
            assert_eq!(
                b.at(0, 1),
                &(g.corner().at(0, 0).clone() * h.b_block(i).at(0, 0).clone())
            );
            let cb = prod.c_block(i);
            assert_eq!(
                cb.at(0, 0),
                &(g.c_block(i).at(0, 0).clone() * h.corner().at(0, 0).clone())
            );
            assert_eq!(cb.at(1, 0), h.c_block(i).at(0, 0));
        }
    }
}
