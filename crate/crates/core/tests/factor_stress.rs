//! Heavier randomized stress of exact factorization: products of known
//! irreducibles of mixed degrees, with repeats and rational scalings, must
//! factor back to the same multiset.

use collig::arith::factor::factor;
use collig::arith::poly::Poly;
use collig::arith::{rat, Rat};
use num_traits::One;

fn monic_sorted(fs: &[(Poly, usize)]) -> Vec<(Poly, usize)> {
    let mut v = fs.to_vec();
    v.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    v
}

#[test]
fn factor_random_products_of_known_irreducibles() {
    // irreducible over Q: linears, quadratics with no rational roots,
    // Eisenstein cubics/quartics, and a quintic
    let irreducibles: Vec<Poly> = vec![
        Poly::from_i64(&[-1, 1]),
        Poly::from_i64(&[1, 1]),
        Poly::new(vec![rat(1, 2), Rat::one()]),
        Poly::from_i64(&[-7, 1]),
        Poly::from_i64(&[1, 0, 1]),
        Poly::from_i64(&[-2, 0, 1]),
        Poly::from_i64(&[1, 1, 1]),
        Poly::from_i64(&[3, -3, 1]),
        Poly::from_i64(&[2, 0, 0, 1]),
        Poly::from_i64(&[-2, 2, 0, 1]),
        Poly::from_i64(&[2, 0, 0, 0, 1]),
        Poly::from_i64(&[1, -1, 0, 1, 1]),
        Poly::from_i64(&[2, 2, 0, 0, 0, 1]),
    ];
    let mut state = 0xdeadbeefu64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (state >> 33) as usize
    };
    for trial in 0..60 {
        let picks: Vec<usize> = (0..(1 + next() % 4)).map(|_| next() % irreducibles.len()).collect();
        let mut f = Poly::constant(rat(((next() % 9) + 1) as i64, ((next() % 3) + 1) as i64));
        for &i in &picks {
            f = f.mul(&irreducibles[i]);
        }
        let (lead, factors) = factor(&f);
        // leading coefficient times the monic product reconstructs f
        let mut rebuilt = Poly::constant(lead);
        for (p, m) in &factors {
            for _ in 0..*m {
                rebuilt = rebuilt.mul(p);
            }
        }
        assert_eq!(rebuilt, f, "reconstruction failed on trial {trial}");
        // and the multiset matches the chosen irreducibles
        let mut expect: Vec<(Poly, usize)> = Vec::new();
        let mut sorted = picks.clone();
        sorted.sort();
        sorted.dedup();
        for i in sorted {
            let mult = picks.iter().filter(|&&j| j == i).count();
            expect.push((irreducibles[i].monic(), mult));
        }
        assert_eq!(factors, monic_sorted(&expect), "multiset failed on trial {trial}");
    }
}
