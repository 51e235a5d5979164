//! Exact factorization of univariate rational polynomials into monic
//! irreducibles: squarefree split, distinct/equal-degree factorization over a
//! small prime field, Hensel lifting, subset recombination.

use super::poly::Poly;
use super::Rat;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Factors `f` as `leading * prod factors[i].0 ^ factors[i].1` with every
/// factor monic irreducible over Q. Factors are sorted canonically.
pub fn factor(f: &Poly) -> (Rat, Vec<(Poly, usize)>) {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let leading = f.leading();
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for irr in factor_squarefree(&part) {
            out.push((irr, mult));
        }
    }
    out.sort_by(|(a, ma), (b, mb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.cmp(b))
            .then_with(|| ma.cmp(mb))
    });
    (leading, out)
}

/// Rational roots of `f` with multiplicities.
pub fn rational_roots(f: &Poly) -> Vec<(Rat, usize)> {
    let (_, factors) = factor(f);
    factors
        .into_iter()
        .filter(|(p, _)| p.degree() == Some(1))
        .map(|(p, m)| (-p.coeff(0), m))
        .collect()
}

/// One rational root if any exists (used where a single pole/zero is peeled).
pub fn any_rational_root(f: &Poly) -> Option<Rat> {
    rational_roots(f).into_iter().next().map(|(r, _)| r)
}

fn factor_squarefree(g: &Poly) -> Vec<Poly> {
    let n = g.degree().expect("nonconstant");
    if n == 1 {
        return vec![g.monic()];
    }
    // Integer model: primitive integer polynomial, then monicize by
    // y = lc * x so that Hensel lifting stays monic throughout.
    let f_int = to_primitive_int(g);
    let lc = f_int.last().unwrap().clone();
    let f_monic = monicize(&f_int);
    let int_factors = factor_monic_int(&f_monic);
    let lc_rat = Rat::from(lc);
    int_factors
        .iter()
        .map(|fac| substitute_scale(fac, &lc_rat).monic())
        .collect()
}

/// Clears denominators and content: returns integer coefficients, positive
/// leading coefficient, content 1.
fn to_primitive_int(g: &Poly) -> Vec<BigInt> {
    let mut denlcm = BigInt::one();
    for c in g.coeffs() {
        denlcm = denlcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = g
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denlcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if ints.last().unwrap().is_negative() {
        content = -content;
    }
    for c in &mut ints {
        *c = &*c / &content;
    }
    ints
}

/// F(y) = lc^(n-1) * f(y/lc): monic integer polynomial with the same
/// splitting behavior.
fn monicize(f: &[BigInt]) -> Vec<BigInt> {
    let n = f.len() - 1;
    let lc = &f[n];
    let mut out = Vec::with_capacity(f.len());
    // coefficient of y^k picks up lc^(n-1-k)
    for (k, c) in f.iter().enumerate() {
        if k == n {
            out.push(BigInt::one());
        } else {
            out.push(c * lc.pow((n - 1 - k) as u32));
        }
    }
    out
}

/// fac(lc * x) as a rational polynomial.
fn substitute_scale(fac: &[BigInt], lc: &Rat) -> Poly {
    let mut coeffs = Vec::with_capacity(fac.len());
    let mut pw = Rat::one();
    for c in fac {
        coeffs.push(Rat::from(c.clone()) * &pw);
        pw *= lc;
    }
    Poly::new(coeffs)
}

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251,
];

/// Zassenhaus for monic squarefree integer polynomials.
fn factor_monic_int(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    debug_assert!(f[n].is_one());
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let q = PRIMES
        .iter()
        .copied()
        .find(|&q| stays_squarefree_mod(f, q))
        .expect("no usable prime for modular factorization");
    let fq = reduce_mod(f, q);
    let mod_factors = factor_mod_q(&fq, q);
    if mod_factors.len() == 1 {
        return vec![f.to_vec()];
    }
    // Lift the modular factorization past twice the factor coefficient bound.
    let bound = factor_coeff_bound(f);
    let target = &bound * BigInt::from(2) + BigInt::one();
    let mut modulus = BigInt::from(q);
    let mut steps = 1u32;
    while modulus < target {
        modulus *= BigInt::from(q);
        steps += 1;
    }
    let lifted = lift_tree(&reduce_mod_big(f, &modulus), &mod_factors, q, steps, &modulus);
    recombine(f, lifted, &modulus)
}

/// Mignotte-style bound on coefficients of monic integer factors.
fn factor_coeff_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let mut maxabs = BigInt::one();
    for c in f {
        if c.abs() > maxabs {
            maxabs = c.abs();
        }
    }
    (maxabs + BigInt::one()) * BigInt::from(2).pow(n as u32) * BigInt::from(n as u64 + 1)
}

fn reduce_mod(f: &[BigInt], q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    let mut out: Vec<u64> = f
        .iter()
        .map(|c| {
            let r = c.mod_floor(&qb);
            r.to_u64().unwrap()
        })
        .collect();
    while out.last().is_some_and(|&c| c == 0) {
        out.pop();
    }
    out
}

fn reduce_mod_big(f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    f.iter().map(|c| c.mod_floor(m)).collect()
}

// ---- arithmetic in F_q[x], q an odd prime fitting in u64 ----

fn ptrim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pdeg(v: &[u64]) -> Option<usize> {
    v.len().checked_sub(1)
}

fn pmul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + (x as u128) * (y as u128)) % q as u128) as u64;
        }
    }
    ptrim(out)
}

fn psub(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for k in 0..n {
        let x = *a.get(k).unwrap_or(&0);
        let y = *b.get(k).unwrap_or(&0);
        out[k] = (x + q - y) % q;
    }
    ptrim(out)
}

fn modpow_u(mut base: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * base as u128) % q as u128) as u64;
        }
        base = ((base as u128 * base as u128) % q as u128) as u64;
        e >>= 1;
    }
    acc
}

fn pinv_scalar(a: u64, q: u64) -> u64 {
    modpow_u(a, q - 2, q)
}

fn pdivrem(a: &[u64], b: &[u64], q: u64) -> (Vec<u64>, Vec<u64>) {
    let db = pdeg(b).expect("division by zero");
    let lead_inv = pinv_scalar(b[db], q);
    let mut rem = a.to_vec();
    let mut quo = vec![0u64; a.len().saturating_sub(db)];
    while let Some(dr) = pdeg(&rem) {
        if dr < db {
            break;
        }
        let factor = ((rem[dr] as u128 * lead_inv as u128) % q as u128) as u64;
        let shift = dr - db;
        quo[shift] = factor;
        for (j, &c) in b.iter().enumerate() {
            let sub = (c as u128 * factor as u128 % q as u128) as u64;
            rem[shift + j] = (rem[shift + j] + q - sub) % q;
        }
        rem = ptrim(rem);
    }
    (ptrim(quo), rem)
}

fn pgcd(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = pdivrem(&x, &y, q);
        x = y;
        y = r;
    }
    pmonic(&x, q)
}

fn pmonic(a: &[u64], q: u64) -> Vec<u64> {
    match pdeg(a) {
        None => vec![],
        Some(d) => {
            let inv = pinv_scalar(a[d], q);
            a.iter()
                .map(|&c| ((c as u128 * inv as u128) % q as u128) as u64)
                .collect()
        }
    }
}

/// Extended Euclid: (g, s, t) with s*a + t*b = g, g monic.
fn peea(a: &[u64], b: &[u64], q: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (quo, rem) = pdivrem(&r0, &r1, q);
        let s2 = psub(&s0, &pmul(&quo, &s1, q), q);
        let t2 = psub(&t0, &pmul(&quo, &t1, q), q);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let d = pdeg(&r0).expect("gcd of zeros");
    let inv = pinv_scalar(r0[d], q);
    let scale = |v: &[u64]| -> Vec<u64> {
        v.iter()
            .map(|&c| ((c as u128 * inv as u128) % q as u128) as u64)
            .collect()
    };
    (scale(&r0), scale(&s0), scale(&t0))
}

fn ppow_mod(base: &[u64], e: &BigUint, modulus: &[u64], q: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = pdivrem(base, modulus, q).1;
    for bit in 0..e.bits() {
        if e.bit(bit) {
            acc = pdivrem(&pmul(&acc, &b, q), modulus, q).1;
        }
        b = pdivrem(&pmul(&b, &b, q), modulus, q).1;
    }
    acc
}

fn stays_squarefree_mod(f: &[BigInt], q: u64) -> bool {
    let fq = reduce_mod(f, q);
    if pdeg(&fq) != Some(f.len() - 1) {
        return false; // leading coefficient vanished
    }
    let dfq = pderiv(&fq, q);
    if dfq.is_empty() {
        return false;
    }
    pdeg(&pgcd(&fq, &dfq, q)) == Some(0)
}

fn pderiv(a: &[u64], q: u64) -> Vec<u64> {
    if a.len() <= 1 {
        return vec![];
    }
    ptrim(
        a[1..]
            .iter()
            .enumerate()
            .map(|(k, &c)| ((c as u128 * ((k as u64 + 1) % q) as u128) % q as u128) as u64)
            .collect(),
    )
}

/// Distinct-degree then equal-degree split of a monic squarefree polynomial.
fn factor_mod_q(f: &[u64], q: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut rest = pmonic(f, q);
    let mut h = vec![0u64, 1]; // x
    let mut d = 1usize;
    let mut rng = 0x9e3779b97f4a7c15u64; // deterministic split choices
    while 2 * d <= pdeg(&rest).unwrap_or(0) {
        h = ppow_mod(&h, &BigUint::from(q), &rest, q);
        let hx = psub(&h, &[0, 1], q);
        let g = pgcd(&hx, &rest, q);
        if pdeg(&g) > Some(0) {
            equal_degree_split(&g, d, q, &mut rng, &mut out);
            rest = pdivrem(&rest, &g, q).0;
            h = pdivrem(&h, &rest, q).1;
        }
        d += 1;
    }
    if pdeg(&rest) > Some(0) {
        out.push(rest);
    }
    out.sort();
    out
}

/// Cantor-Zassenhaus: splits g (product of irreducibles of degree d) fully.
fn equal_degree_split(g: &[u64], d: usize, q: u64, rng: &mut u64, out: &mut Vec<Vec<u64>>) {
    let n = pdeg(g).unwrap();
    if n == d {
        out.push(pmonic(g, q));
        return;
    }
    let exponent = (BigUint::from(q).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        // random polynomial of degree < n
        let mut r: Vec<u64> = (0..n)
            .map(|_| {
                *rng ^= *rng << 13;
                *rng ^= *rng >> 7;
                *rng ^= *rng << 17;
                *rng % q
            })
            .collect();
        r = ptrim(r);
        if pdeg(&r).unwrap_or(0) == 0 {
            continue;
        }
        let e = ppow_mod(&r, &exponent, g, q);
        let em1 = psub(&e, &[1], q);
        let s = pgcd(&em1, g, q);
        if let Some(ds) = pdeg(&s) {
            if ds > 0 && ds < n {
                equal_degree_split(&s, d, q, rng, out);
                equal_degree_split(&pdivrem(g, &s, q).0, d, q, rng, out);
                return;
            }
        }
    }
}

// ---- Hensel lifting over Z/q^k ----

fn bmod(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = v.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn bmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    bmod(&out, m)
}

fn u64s_to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts a coprime monic factorization F = G*H (mod q) to mod q^steps.
/// s*G + t*H = 1 (mod q) is recomputed once; linear lifting.
fn hensel_pair(
    f: &[BigInt],
    g0: &[u64],
    h0: &[u64],
    q: u64,
    steps: u32,
    modulus: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, _s, t) = peea(g0, h0, q);
    debug_assert_eq!(pdeg(&one), Some(0));
    let mut g = u64s_to_big(g0);
    let mut h = u64s_to_big(h0);
    let mut m = BigInt::from(q);
    let qb = BigInt::from(q);
    for _ in 1..steps {
        // error E = (F - G*H)/m, everything mod q
        let gh = mul_plain(&g, &h);
        let diff = sub_plain(f, &gh);
        let e: Vec<u64> = {
            let scaled: Vec<BigInt> = diff.iter().map(|c| c / &m).collect();
            reduce_mod(&scaled, q)
        };
        if !e.is_empty() {
            let te = pmul(&t, &e, q);
            let (_, dg) = pdivrem(&te, g0, q);
            // dH = (E - dG*H)/G exactly in F_q[x]
            let rest = psub(&e, &pmul(&dg, h0, q), q);
            let (dh, rem) = pdivrem(&rest, g0, q);
            debug_assert!(rem.is_empty());
            g = add_scaled(&g, &dg, &m);
            h = add_scaled(&h, &dh, &m);
        }
        m *= &qb;
        g = bmod(&g, &m);
        h = bmod(&h, &m);
    }
    (bmod(&g, modulus), bmod(&h, modulus))
}

fn mul_plain(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn sub_plain(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    (0..n)
        .map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))
        .collect()
}

fn add_scaled(g: &[BigInt], d: &[u64], m: &BigInt) -> Vec<BigInt> {
    let n = g.len().max(d.len());
    let zero = BigInt::zero();
    (0..n)
        .map(|k| {
            let base = g.get(k).unwrap_or(&zero).clone();
            match d.get(k) {
                Some(&c) => base + BigInt::from(c) * m,
                None => base,
            }
        })
        .collect()
}

fn lift_tree(
    f: &[BigInt],
    factors: &[Vec<u64>],
    q: u64,
    steps: u32,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let mid = factors.len() / 2;
    let mut g0 = vec![1u64];
    for fac in &factors[..mid] {
        g0 = pmul(&g0, fac, q);
    }
    let mut h0 = vec![1u64];
    for fac in &factors[mid..] {
        h0 = pmul(&h0, fac, q);
    }
    let (g, h) = hensel_pair(f, &g0, &h0, q, steps, modulus);
    let mut out = lift_tree(&g, &factors[..mid], q, steps, modulus);
    out.extend(lift_tree(&h, &factors[mid..], q, steps, modulus));
    out
}

// ---- recombination ----

fn symmetric(v: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / BigInt::from(2);
    v.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

/// Synthetic division by a monic integer polynomial; Some(quotient) iff exact.
fn divides_int(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = g.len() - 1;
    if f.len() < g.len() {
        return None;
    }
    let mut rem: Vec<BigInt> = f.to_vec();
    let mut quo = vec![BigInt::zero(); f.len() - dg];
    for shift in (0..=f.len() - g.len()).rev() {
        let factor = rem[shift + dg].clone();
        if factor.is_zero() {
            continue;
        }
        quo[shift] = factor.clone();
        for (j, c) in g.iter().enumerate() {
            rem[shift + j] -= c * &factor;
        }
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quo)
    } else {
        None
    }
}

fn recombine(f: &[BigInt], lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut current = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        for combo in combinations(remaining.len(), size) {
            let mut cand = vec![BigInt::one()];
            for &i in &combo {
                cand = bmul(&cand, &remaining[i], modulus);
            }
            let cand = symmetric(&cand, modulus);
            if cand.last().is_none_or(|c| !c.is_one()) {
                continue;
            }
            if let Some(quo) = divides_int(&current, &cand) {
                out.push(cand);
                current = quo;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                continue 'outer;
            }
        }
        size += 1;
    }
    if current.len() > 1 {
        out.push(current);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn poly(coeffs: &[i64]) -> Poly {
        Poly::from_i64(coeffs)
    }

    #[test]
    fn factors_product_of_quadratics() {
        // (x^2 - 2)(x^2 - 3): squarefree, no rational roots, two factors
        let f = poly(&[-2, 0, 1]).mul(&poly(&[-3, 0, 1]));
        let (lead, factors) = factor(&f);
        assert_eq!(lead, rat(1, 1));
        assert_eq!(
            factors,
            vec![(poly(&[-3, 0, 1]), 1), (poly(&[-2, 0, 1]), 1)]
        );
    }

    #[test]
    fn factors_with_multiplicity_and_scale() {
        // 6 (x - 1/2)^2 (x + 3)
        let f = poly(&[-1, 2]) // 2x - 1
            .mul(&poly(&[-1, 2]))
            .mul(&poly(&[3, 1]))
            .scale(&rat(3, 2));
        let (lead, factors) = factor(&f);
        assert_eq!(lead, rat(6, 1));
        assert_eq!(
            factors,
            vec![
                (Poly::new(vec![rat(-1, 2), rat(1, 1)]), 2),
                (poly(&[3, 1]), 1)
            ]
        );
    }

    #[test]
    fn irreducible_quartic_stays_whole() {
        // x^4 + x + 1 is irreducible over Q
        let f = poly(&[1, 1, 0, 0, 1]);
        let (_, factors) = factor(&f);
        assert_eq!(factors, vec![(f, 1)]);
    }

    #[test]
    fn cyclotomic_like_splits() {
        // x^4 - 1 = (x-1)(x+1)(x^2+1)
        let f = poly(&[-1, 0, 0, 0, 1]);
        let (_, factors) = factor(&f);
        assert_eq!(
            factors,
            vec![(poly(&[-1, 1]), 1), (poly(&[1, 1]), 1), (poly(&[1, 0, 1]), 1)]
        );
    }

    #[test]
    fn rational_roots_found() {
        let f = poly(&[-1, 3]).mul(&poly(&[1, 0, 1])); // (3x - 1)(x^2+1)
        let roots = rational_roots(&f);
        assert_eq!(roots, vec![(rat(1, 3), 1)]);
    }

    #[test]
    fn random_products_roundtrip() {
        // Multiply known irreducibles, factor, compare multisets.
        let irreducibles = [
            poly(&[-2, 0, 1]),
            poly(&[1, 1, 1]),
            poly(&[-1, 1]),
            poly(&[5, 1]),
            poly(&[2, 0, 0, 1]), // x^3 + 2  (Eisenstein at 2)
            poly(&[1, -1, 0, 1, 1]),
        ];
        let mut state = 12345u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 33) as usize
        };
        for _ in 0..12 {
            let picks: Vec<usize> = (0..3).map(|_| next() % irreducibles.len()).collect();
            let mut f = Poly::one();
            for &i in &picks {
                f = f.mul(&irreducibles[i]);
            }
            let (_, factors) = factor(&f);
            let mut expect: Vec<(Poly, usize)> = Vec::new();
            let mut sorted = picks.clone();
            sorted.sort();
            sorted.dedup();
            for i in sorted {
                let mult = picks.iter().filter(|&&j| j == i).count();
                expect.push((irreducibles[i].monic(), mult));
            }
            expect.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
            assert_eq!(factors, expect, "failed on picks {picks:?}");
        }
    }
}
