//! The characteristic map on lattices: intersect the graph of the block
//! matrix with the module constraint and project to the (output, input)
//! plane. Sends vertices of one building toward another and is
//! multiplicative for the relation product.

use crate::arith::matrix::Mat;
use crate::arith::Rat;
use crate::colligation::Colligation;
use crate::lattice::quasi::QuasiLattice;
use crate::lattice::tree::{TreeError, TreeVertex};
use num_traits::{One, Zero};

/// Image of a lattice under the characteristic map: a quasi-lattice in
/// Q^(2 alpha) reading as pairs (output, input), possibly degenerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharMapResult {
    pub lattice: QuasiLattice,
    pub is_full_lattice: bool,
    pub subspace_rank: usize,
}

/// chi_g(R) for a single-block colligation and a module R in Q^2: all pairs
/// (q, p) with (q, y) = g (p, x) for some (y, x) in R tensor O^N. Computed
/// as image(psi, preimage(phi, R tensor O^N)) with phi(p, x) = (cp + dx, x)
/// and psi(p, x) = (ap + bx, p).
pub fn char_lattice(g: &Colligation, r: &QuasiLattice) -> CharMapResult {
    assert_eq!(g.block_count(), 1, "single-block form expected");
    assert_eq!(r.dim(), 2, "input module lives in Q^2");
    char_lattice_m(g, r)
}

/// The multi-block generalization: R lives in Q^(2m), tensored with the unit
/// cube in the N inner copies; coordinate (i-1)N + j of each half carries
/// component j of the i-th block variable.
pub fn char_lattice_m(g: &Colligation, r: &QuasiLattice) -> CharMapResult {
    let m = g.block_count();
    let n = g.inner_size();
    let alpha = g.alpha();
    assert_eq!(r.dim(), 2 * m, "input module must live in Q^(2m)");
    assert!(n >= 1, "inner size 0 has an empty constraint; pad first");

    let tensored = r.tensor_with_unit_cube(m, n);
    // phi: (p, x) -> (cp + dx, x) into Q^(2mN)
    let c = g.c_full();
    let d = g.d_full();
    let phi = Mat::from_fn(2 * m * n, alpha + m * n, |i, j| {
        if i < m * n {
            if j < alpha {
                c.at(i, j).clone()
            } else {
                d.at(i, j - alpha).clone()
            }
        } else {
            // identity on the x block
            let xi = i - m * n;
            if j >= alpha && j - alpha == xi {
                Rat::one()
            } else {
                Rat::zero()
            }
        }
    });
    // psi: (p, x) -> (ap + bx, p) into Q^(2 alpha)
    let a = g.corner();
    let b = g.b_full();
    let psi = Mat::from_fn(2 * alpha, alpha + m * n, |i, j| {
        if i < alpha {
            if j < alpha {
                a.at(i, j).clone()
            } else {
                b.at(i, j - alpha).clone()
            }
        } else {
            let pi = i - alpha;
            if j == pi {
                Rat::one()
            } else {
                Rat::zero()
            }
        }
    });
    let lattice = tensored.preimage(&phi).image(&psi);
    CharMapResult {
        is_full_lattice: lattice.is_full_lattice(),
        subspace_rank: lattice.subspace_rank(),
        lattice,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VertexMapError {
    #[error("image is degenerate (subspace rank {0}); no building vertex")]
    Degenerate(usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Projective image of a tree vertex: the class of chi_g applied to any
/// representative. Degenerate images are reported, never silently classed.
pub fn vertex_map(g: &Colligation, v: &TreeVertex) -> Result<TreeVertex, VertexMapError> {
    let image = char_lattice_m(g, v.representative());
    if image.subspace_rank > 0 || !image.is_full_lattice {
        return Err(VertexMapError::Degenerate(image.subspace_rank));
    }
    Ok(TreeVertex::class(&image.lattice)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::context::PAdicContext;
    use crate::arith::{rat, rat_i64};
    use crate::lattice::quasi::Exp;

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::new(p).unwrap()
    }

    fn swap() -> Colligation {
        Colligation::from_i64(1, 1, 1, &[&[0, 1], &[1, 0]])
    }

    #[test]
    fn identity_maps_standard_lattice_to_diagonal() {
        let c = ctx(2);
        let std2 = QuasiLattice::standard(c, 2);
        let out = char_lattice(&Colligation::identity(1, 1, 1), &std2);
        assert_eq!(out.subspace_rank, 1);
        assert!(!out.is_full_lattice);
        let diag = QuasiLattice::new(
            c,
            2,
            vec![vec![rat_i64(1), rat_i64(1)]],
            vec![Exp::NegInf],
        );
        assert_eq!(out.lattice, diag);
    }

    #[test]
    fn swap_preserves_standard_lattice() {
        let c = ctx(3);
        let std2 = QuasiLattice::standard(c, 2);
        let out = char_lattice(&swap(), &std2);
        assert!(out.is_full_lattice);
        assert_eq!(out.lattice, std2);
    }

    #[test]
    fn scaling_equivariance() {
        let c = ctx(2);
        let g = Colligation::from_i64(1, 1, 2, &[&[1, 2, 1], &[1, 0, 1], &[0, 1, 1]]);
        let r = QuasiLattice::new(
            c,
            2,
            vec![vec![rat_i64(1), rat_i64(2)], vec![rat_i64(0), rat_i64(1)]],
            vec![Exp::Fin(0), Exp::Fin(1)],
        );
        let image = char_lattice(&g, &r).lattice;
        for e in [-2i64, -1, 1, 3] {
            let scaled = char_lattice(&g, &r.scale_pow(e)).lattice;
            assert_eq!(scaled, image.scale_pow(e), "scaling exponent {e}");
        }
        // arbitrary scalars too, not only prime powers
        let lam = rat(3, 7);
        let scaled = char_lattice(&g, &r.scale(&lam)).lattice;
        assert_eq!(scaled, image.scale(&lam));
    }

    #[test]
    fn conjugation_invariance_small() {
        let c = ctx(5);
        let g = Colligation::from_i64(1, 1, 2, &[&[1, 1, 0], &[2, 1, 1], &[1, 0, 3]]);
        // u integral with unit determinant at p=5
        let u = Mat::from_i64_rows(&[&[1, 2], &[1, 3]]);
        let conj = g.conjugate(&u).unwrap();
        let r = QuasiLattice::new(
            c,
            2,
            vec![vec![rat_i64(1), rat_i64(0)], vec![rat_i64(2), rat_i64(5)]],
            vec![Exp::Fin(0), Exp::Fin(0)],
        );
        assert_eq!(char_lattice(&g, &r), char_lattice(&conj, &r));
    }

    #[test]
    fn single_block_consistency_of_multi_block_form() {
        let c = ctx(3);
        let g = Colligation::from_i64(1, 1, 2, &[&[2, 1, 1], &[1, 1, 0], &[1, 0, 2]]);
        let r = QuasiLattice::new(
            c,
            2,
            vec![vec![rat_i64(1), rat_i64(1)], vec![rat_i64(0), rat_i64(3)]],
            vec![Exp::Fin(0), Exp::Fin(0)],
        );
        assert_eq!(char_lattice(&g, &r), char_lattice_m(&g, &r));
    }

    #[test]
    fn identity_multi_block_gives_diagonal_subspace() {
        let c = ctx(2);
        let g = Colligation::identity(2, 2, 1);
        let r = QuasiLattice::standard(c, 4);
        let out = char_lattice_m(&g, &r);
        assert_eq!(out.subspace_rank, 2);
        let diag = QuasiLattice::diagonal_relation(c, 2);
        assert_eq!(out.lattice, diag);
    }

    #[test]
    fn block_diagonal_decouples_on_product_lattices() {
        // an m = 2 colligation reading only the first block variable acts on
        // a product lattice R1 x R2 exactly as the underlying m = 1
        // colligation acts on R1 (the second constraint is satisfiable by 0)
        let c = ctx(2);
        let g1 = Colligation::from_i64(1, 1, 1, &[&[1, 2], &[1, 0]]);
        let lifted = Colligation::from_i64(1, 2, 1, &[&[1, 2, 0], &[1, 0, 0], &[0, 0, 3]]);
        let r1 = QuasiLattice::new(
            c,
            2,
            vec![vec![rat_i64(1), rat_i64(1)], vec![rat_i64(0), rat_i64(2)]],
            vec![Exp::Fin(0), Exp::Fin(0)],
        );
        let r2 = QuasiLattice::new(
            c,
            2,
            vec![vec![rat_i64(1), rat_i64(0)], vec![rat_i64(0), rat_i64(4)]],
            vec![Exp::Fin(0), Exp::Fin(0)],
        );
        // product in coordinates (v1, v2, w1, w2): R1 in slots (0, 2), R2 in (1, 3)
        let mut cols = Vec::new();
        let mut exps = Vec::new();
        for (j, col) in r1.columns().into_iter().enumerate() {
            cols.push(vec![col[0].clone(), rat_i64(0), col[1].clone(), rat_i64(0)]);
            exps.push(r1.exponents()[j]);
        }
        for (j, col) in r2.columns().into_iter().enumerate() {
            cols.push(vec![rat_i64(0), col[0].clone(), rat_i64(0), col[1].clone()]);
            exps.push(r2.exponents()[j]);
        }
        let product = QuasiLattice::new(c, 4, cols, exps);
        assert_eq!(
            char_lattice_m(&lifted, &product),
            char_lattice(&g1, &r1)
        );
    }

    #[test]
    fn two_block_conjugation_invariance() {
        // conjugating by diag(1, u, u) with u integral of unit determinant
        // leaves both the lattice map and the boundary form unchanged
        use crate::colligation::charfun::char_boundary;
        let c = ctx(3);
        let g = Colligation::from_i64(
            1,
            2,
            2,
            &[
                &[1, 1, 0, 2, 1],
                &[1, 1, 1, 0, 1],
                &[0, 2, 1, 1, 0],
                &[1, 0, 1, 1, 1],
                &[2, 1, 0, 0, 1],
            ],
        );
        let u = Mat::from_i64_rows(&[&[1, 1], &[1, 2]]);
        let conj = g.conjugate(&u).unwrap();
        let r = QuasiLattice::new(
            c,
            4,
            Mat::<crate::arith::Rat>::identity(4).columns(),
            vec![Exp::Fin(0), Exp::Fin(1), Exp::Fin(0), Exp::Fin(-1)],
        );
        assert_eq!(char_lattice_m(&g, &r), char_lattice_m(&conj, &r));
        let s = Mat::from_i64_rows(&[&[1, 2], &[0, 1]]);
        assert_eq!(
            char_boundary(&g, &s).unwrap(),
            char_boundary(&conj, &s).unwrap()
        );
    }

    #[test]
    fn two_block_lattice_multiplicativity() {
        // the relation-product identity also holds for the m = 2 map
        let c = ctx(3);
        let mut state = 55u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(41);
            ((state >> 33) as i64 % 5) - 2
        };
        let mut done = 0;
        while done < 10 {
            let n1 = 1 + (next().unsigned_abs() as usize % 2);
            let n2 = 1 + (next().unsigned_abs() as usize % 2);
            let g = Colligation::new(
                1,
                2,
                n1,
                Mat::from_fn(1 + 2 * n1, 1 + 2 * n1, |_, _| rat_i64(next())),
            )
            .unwrap();
            let h = Colligation::new(
                1,
                2,
                n2,
                Mat::from_fn(1 + 2 * n2, 1 + 2 * n2, |_, _| rat_i64(next())),
            )
            .unwrap();
            // random full lattice in Q^4
            let basis = Mat::from_fn(4, 4, |_, _| rat_i64(next()));
            if basis.det() == rat_i64(0) {
                continue;
            }
            done += 1;
            let exps = (0..4).map(|i| Exp::Fin((next() + i as i64) % 2)).collect();
            let r = QuasiLattice::new(c, 4, basis.columns(), exps);
            let prod = g.circ(&h).unwrap();
            let lhs = char_lattice_m(&prod, &r).lattice;
            let rhs = char_lattice_m(&g, &r)
                .lattice
                .relation_compose(&char_lattice_m(&h, &r).lattice);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn vertex_map_examples() {
        let c = ctx(2);
        let base = TreeVertex::base(c, 2);
        let image = vertex_map(&swap(), &base).unwrap();
        assert_eq!(image, base);

        // constant transfer function: the input is unconstrained, so the
        // image always contains the graph line of the constant and the map
        // into the building is degenerate
        let p_const = Colligation::from_i64(1, 1, 1, &[&[2, 1], &[0, 3]]);
        let err = vertex_map(&p_const, &base);
        assert_eq!(err, Err(VertexMapError::Degenerate(1)));
        let img = char_lattice(&p_const, base.representative());
        // subspace part is exactly the line through (2, 1)
        assert!(img
            .lattice
            .dilation_margin(&[rat_i64(2), rat_i64(1)]) == Some(crate::arith::context::Val::Inf));
    }
}
