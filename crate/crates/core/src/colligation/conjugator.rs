//! Explicit conjugator between the two orders of a product of generic
//! corner-size-1 colligations with diagonal inner blocks.

use super::collig::Colligation;
use crate::arith::matrix::Mat;
use crate::arith::Rat;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConjugatorError {
    #[error("corner size must be 1")]
    CornerSize,
    #[error("inner blocks must be diagonal")]
    NotDiagonal,
    #[error("eigenvalues must be pairwise distinct (found a collision)")]
    EigenvalueCollision,
    #[error("a diagonal factor vanishes (transfer function value 0 at an eigenvalue)")]
    VanishingDiagonal,
}

/// U with diag(1, U)^{-1} (g o h) diag(1, U) = h o g, both products taken
/// blockwise with the left factor's inner block leading.
///
/// Requires alpha = 1, diagonal inner blocks with all eigenvalues of g and h
/// pairwise distinct, and nonvanishing transfer values at the crossed
/// eigenvalues. U = U_+^{-1} U_d U_- P: triangular corrections with
/// eigenvalue-difference denominators, the diagonal of crossed transfer
/// values, and the permutation P that swaps the two inner blocks.
pub fn commutativity_conjugator(
    g: &Colligation,
    h: &Colligation,
) -> Result<Mat<Rat>, ConjugatorError> {
    if g.alpha() != 1 || h.alpha() != 1 || g.block_count() != 1 || h.block_count() != 1 {
        return Err(ConjugatorError::CornerSize);
    }
    let n1 = g.inner_size();
    let n2 = h.inner_size();
    let dg = g.d_full();
    let dh = h.d_full();
    for (mat, n) in [(&dg, n1), (&dh, n2)] {
        for i in 0..n {
            for j in 0..n {
                if i != j && !mat.at(i, j).is_zero() {
                    return Err(ConjugatorError::NotDiagonal);
                }
            }
        }
    }
    let lam: Vec<Rat> = (0..n1).map(|i| dg.at(i, i).clone()).collect();
    let mu: Vec<Rat> = (0..n2).map(|j| dh.at(j, j).clone()).collect();
    let mut all: Vec<&Rat> = lam.iter().chain(mu.iter()).collect();
    all.sort();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(ConjugatorError::EigenvalueCollision);
    }

    let a = g.corner().at(0, 0).clone();
    let p = h.corner().at(0, 0).clone();
    let b: Vec<Rat> = (0..n1).map(|i| g.b_full().at(0, i).clone()).collect();
    let c: Vec<Rat> = (0..n1).map(|i| g.c_full().at(i, 0).clone()).collect();
    let q: Vec<Rat> = (0..n2).map(|j| h.b_full().at(0, j).clone()).collect();
    let r: Vec<Rat> = (0..n2).map(|j| h.c_full().at(j, 0).clone()).collect();

    // transfer values in the reciprocal coordinate:
    // chi_g(s) = a + sum b_i c_i / (s - lam_i), likewise for h
    let chi_g_at = |s: &Rat| -> Rat {
        let mut acc = a.clone();
        for i in 0..n1 {
            acc += &b[i] * &c[i] * (s - &lam[i]).recip();
        }
        acc
    };
    let chi_h_at = |s: &Rat| -> Rat {
        let mut acc = p.clone();
        for j in 0..n2 {
            acc += &q[j] * &r[j] * (s - &mu[j]).recip();
        }
        acc
    };

    let n = n1 + n2;
    // U_+ = I + X on the upper right block, X[i][j] = c_i q_j / (lam_i - mu_j)
    let mut u_plus_inv = Mat::<Rat>::identity(n);
    for i in 0..n1 {
        for j in 0..n2 {
            let x = &c[i] * &q[j] * (&lam[i] - &mu[j]).recip();
            u_plus_inv.set(i, n1 + j, -x);
        }
    }
    // U_- = I + Y on the lower left block, Y[j][i] = b_i r_j / (mu_j - lam_i)
    let mut u_minus = Mat::<Rat>::identity(n);
    for j in 0..n2 {
        for i in 0..n1 {
            let y = &b[i] * &r[j] * (&mu[j] - &lam[i]).recip();
            u_minus.set(n1 + j, i, y);
        }
    }
    // U_d = diag(chi_h(lam_1..), chi_g(mu_1..)^{-1})
    let mut u_d = Mat::<Rat>::zeros(n, n);
    for i in 0..n1 {
        let v = chi_h_at(&lam[i]);
        if v.is_zero() {
            return Err(ConjugatorError::VanishingDiagonal);
        }
        u_d.set(i, i, v);
    }
    for j in 0..n2 {
        let v = chi_g_at(&mu[j]);
        if v.is_zero() {
            return Err(ConjugatorError::VanishingDiagonal);
        }
        u_d.set(n1 + j, n1 + j, v.recip());
    }
    // block swap: h o g carries h's block first, while the triangular
    // corrections above are written with g's block first
    let mut perm = Mat::<Rat>::zeros(n, n);
    for i in 0..n1 {
        perm.set(i, n2 + i, Rat::one());
    }
    for j in 0..n2 {
        perm.set(n1 + j, j, Rat::one());
    }

    Ok(u_plus_inv.mul(&u_d).mul(&u_minus).mul(&perm))
}

/// diag(1, u) for a conjugator on the inner space.
pub fn extend_by_corner(u: &Mat<Rat>) -> Mat<Rat> {
    let n = u.rows();
    let mut out = Mat::<Rat>::identity(n + 1);
    for i in 0..n {
        for j in 0..n {
            out.set(1 + i, 1 + j, u.at(i, j).clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_conjugates(g: &Colligation, h: &Colligation) {
        let u = commutativity_conjugator(g, h).unwrap();
        let big = extend_by_corner(&u);
        let gh = g.circ(h).unwrap();
        let hg = h.circ(g).unwrap();
        let lhs = big
            .inverse()
            .unwrap()
            .mul(gh.entries())
            .mul(&big);
        assert_eq!(lhs, *hg.entries());
    }

    #[test]
    fn verifies_on_two_by_two_blocks() {
        let g = Colligation::from_i64(1, 1, 2, &[&[1, 1, 1], &[1, 2, 0], &[1, 0, 3]]);
        let h = Colligation::from_i64(1, 1, 2, &[&[1, 1, 1], &[1, 5, 0], &[1, 0, 7]]);
        check_conjugates(&g, &h);
    }

    #[test]
    fn verifies_on_degenerate_sizes() {
        let g = Colligation::from_i64(1, 1, 1, &[&[2, 1], &[3, 4]]);
        let h = Colligation::from_i64(1, 1, 1, &[&[1, 2], &[1, 7]]);
        check_conjugates(&g, &h);
    }

    #[test]
    fn eigenvalue_collision_rejected() {
        let g = Colligation::from_i64(1, 1, 1, &[&[1, 1], &[1, 5]]);
        let h = Colligation::from_i64(1, 1, 1, &[&[1, 1], &[1, 5]]);
        assert_eq!(
            commutativity_conjugator(&g, &h),
            Err(ConjugatorError::EigenvalueCollision)
        );
    }

    #[test]
    fn mixed_sizes() {
        let g = Colligation::from_i64(1, 1, 2, &[&[2, 1, -1], &[1, 2, 0], &[2, 0, 3]]);
        let h = Colligation::from_i64(1, 1, 1, &[&[1, 3], &[1, 7]]);
        check_conjugates(&g, &h);
        check_conjugates(&h, &g);
    }

    #[test]
    fn non_diagonal_rejected() {
        let g = Colligation::from_i64(1, 1, 2, &[&[1, 1, 1], &[1, 2, 1], &[1, 0, 3]]);
        let h = Colligation::from_i64(1, 1, 1, &[&[1, 1], &[1, 7]]);
        assert_eq!(
            commutativity_conjugator(&g, &h),
            Err(ConjugatorError::NotDiagonal)
        );
    }

    #[test]
    fn vanishing_diagonal_rejected() {
        // chi_h(lam_1) = 0: p + qr/(lam - mu) = 0 with p=1, q=r=1, lam=2, mu=3
        let g = Colligation::from_i64(1, 1, 1, &[&[1, 1], &[1, 2]]);
        let h = Colligation::from_i64(1, 1, 1, &[&[1, 1], &[1, 3]]);
        assert_eq!(
            commutativity_conjugator(&g, &h),
            Err(ConjugatorError::VanishingDiagonal)
        );
    }
}
