//! Seeded random instance generators for the verification suites.

use crate::arith::context::{PAdicContext, Val};
use crate::arith::matrix::Mat;
use crate::arith::poly::Poly;
use crate::arith::ratfun::RatFun;
use crate::arith::smith::{Dvr, PAdicDvr};
use crate::arith::{rat, rat_i64, Rat};
use crate::colligation::Colligation;
use crate::lattice::quasi::{Exp, QuasiLattice};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Prng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Prng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries in {-3..3}/{1,2}.
pub fn small_rat(rng: &mut Prng) -> Rat {
    let num = rng.random_range(-3..=3i64);
    let den = if rng.random_bool(0.5) { 1 } else { 2 };
    rat(num, den)
}

pub fn small_int(rng: &mut Prng, bound: i64) -> i64 {
    rng.random_range(-bound..=bound)
}

pub fn colligation(rng: &mut Prng, alpha: usize, m: usize, n: usize) -> Colligation {
    let size = alpha + m * n;
    let mat = Mat::from_fn(size, size, |_, _| small_rat(rng));
    Colligation::new(alpha, m, n, mat).unwrap()
}

pub fn integer_colligation(rng: &mut Prng, alpha: usize, m: usize, n: usize, bound: i64) -> Colligation {
    let size = alpha + m * n;
    let mat = Mat::from_fn(size, size, |_, _| rat_i64(small_int(rng, bound)));
    Colligation::new(alpha, m, n, mat).unwrap()
}

/// Corner size 1 with a diagonal inner block of pairwise distinct integer
/// eigenvalues avoiding the ones in `avoid`; off-corner entries nonzero.
pub fn diagonal_colligation(rng: &mut Prng, n: usize, avoid: &[Rat]) -> Colligation {
    let mut eigen: Vec<i64> = Vec::new();
    while eigen.len() < n {
        let v = rng.random_range(-9..=9i64);
        if !eigen.contains(&v) && !avoid.contains(&rat_i64(v)) {
            eigen.push(v);
        }
    }
    let size = 1 + n;
    let mut mat = Mat::<Rat>::zeros(size, size);
    mat.set(0, 0, rat_i64(rng.random_range(1..=3)));
    for (i, lam) in eigen.iter().enumerate() {
        let b = rng.random_range(1..=3i64);
        let c = rng.random_range(1..=3i64);
        mat.set(0, 1 + i, rat_i64(b));
        mat.set(1 + i, 0, rat_i64(c));
        mat.set(1 + i, 1 + i, rat_i64(*lam));
    }
    Colligation::new(1, 1, n, mat).unwrap()
}

/// Random element of GL(N, O): integer entries, determinant of p-valuation
/// zero (membership-checked by the valuation).
pub fn gl_n_o(rng: &mut Prng, ctx: PAdicContext, n: usize) -> Mat<Rat> {
    let dvr = PAdicDvr(ctx);
    loop {
        let m = Mat::from_fn(n, n, |_, _| rat_i64(small_int(rng, 4)));
        if dvr.val(&m.det()) == Val::Fin(0) {
            return m;
        }
    }
}

/// Random invertible rational matrix with small integer entries.
pub fn invertible(rng: &mut Prng, n: usize) -> Mat<Rat> {
    loop {
        let m = Mat::from_fn(n, n, |_, _| rat_i64(small_int(rng, 4)));
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Full lattice in Q^dim: invertible integer generator matrix with
/// exponents in [-2, 2].
pub fn full_lattice(rng: &mut Prng, ctx: PAdicContext, dim: usize) -> QuasiLattice {
    let basis = invertible(rng, dim);
    let exps = (0..dim).map(|_| Exp::Fin(rng.random_range(-2..=2))).collect();
    QuasiLattice::new(ctx, dim, basis.columns(), exps)
}

/// Quasi-lattice with a chance of subspace directions and dependent
/// generators.
pub fn quasi_lattice(rng: &mut Prng, ctx: PAdicContext, dim: usize) -> QuasiLattice {
    let k = rng.random_range(1..=dim + 1);
    let cols = (0..k)
        .map(|_| (0..dim).map(|_| rat_i64(small_int(rng, 3))).collect())
        .collect();
    let exps = (0..k)
        .map(|_| {
            if rng.random_bool(0.2) {
                Exp::NegInf
            } else {
                Exp::Fin(rng.random_range(-2..=2))
            }
        })
        .collect();
    QuasiLattice::new(ctx, dim, cols, exps)
}

/// Scalar rational function with rational poles and zeros, denominator
/// degree <= max_deg, regular at 0: built as c * prod(s - zero) /
/// prod(s - pole) in the reciprocal coordinate and converted back.
pub fn rational_function(rng: &mut Prng, max_deg: usize) -> RatFun {
    let deg = rng.random_range(1..=max_deg);
    let mut points: Vec<Rat> = Vec::new();
    while points.len() < deg + deg {
        let cand = rat(rng.random_range(-6..=6), rng.random_range(1..=2));
        if !points.contains(&cand) {
            points.push(cand);
        }
    }
    let (poles, zeros_pool) = points.split_at(deg);
    let n_zeros = rng.random_range(0..=deg);
    let mut num = Poly::constant(rat_i64(rng.random_range(1..=3)));
    for z in &zeros_pool[..n_zeros] {
        num = num.mul(&Poly::x_minus(z));
    }
    let mut den = Poly::one();
    for p in poles {
        den = den.mul(&Poly::x_minus(p));
    }
    // in the reciprocal coordinate this is regular at infinity; convert back
    RatFun::new(num, den).reciprocal_substitution()
}

/// Random regular point of the transfer function (not a pole).
pub fn regular_point(rng: &mut Prng, den: &Poly) -> Rat {
    loop {
        let x = rat(rng.random_range(-8..=8), rng.random_range(1..=3));
        if !den.eval(&x).is_zero() {
            return x;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let mut a = seeded(42);
        let mut b = seeded(42);
        for _ in 0..20 {
            assert_eq!(small_rat(&mut a), small_rat(&mut b));
        }
        let ga = colligation(&mut a, 2, 1, 2);
        let gb = colligation(&mut b, 2, 1, 2);
        assert_eq!(ga, gb);
    }

    #[test]
    fn gl_n_o_has_unit_determinant() {
        let ctx = PAdicContext::new(3).unwrap();
        let dvr = PAdicDvr(ctx);
        let mut rng = seeded(7);
        for _ in 0..10 {
            let u = gl_n_o(&mut rng, ctx, 3);
            assert_eq!(dvr.val(&u.det()), Val::Fin(0));
        }
    }

    #[test]
    fn rational_functions_are_regular_at_zero() {
        let mut rng = seeded(11);
        for _ in 0..20 {
            let w = rational_function(&mut rng, 4);
            assert!(!w.den().eval(&Rat::zero()).is_zero());
            assert!(w.den().degree().unwrap() <= 4 + 4);
        }
    }
}
