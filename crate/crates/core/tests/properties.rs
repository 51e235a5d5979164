//! Randomized invariants over arbitrary inputs: ultrametric laws, division
//! round-trips, canonical-form stability, and wire-format round-trips.

use collig::arith::context::{val_p, PAdicContext, Val};
use collig::arith::poly::Poly;
use collig::arith::Rat;
use collig::io::{format_rational, parse_rational, QuasiLatticeDoc};
use collig::lattice::quasi::{Exp, QuasiLattice};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (any::<i64>(), 1..=1_000_000i64).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

fn arb_small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1..=4i64).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

fn arb_prime() -> impl Strategy<Value = PAdicContext> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]
        .prop_map(|p| PAdicContext::new(p).unwrap())
}

proptest! {
    #[test]
    fn rational_string_roundtrip(x in arb_rat()) {
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn valuation_is_ultrametric(x in arb_rat(), y in arb_rat(), ctx in arb_prime()) {
        let vx = val_p(&x, ctx);
        let vy = val_p(&y, ctx);
        prop_assert_eq!(val_p(&(&x * &y), ctx), vx.plus(vy));
        let vsum = val_p(&(&x + &y), ctx);
        prop_assert!(vsum >= vx.min(vy));
        if vx != vy {
            prop_assert_eq!(vsum, vx.min(vy));
        }
    }

    #[test]
    fn poly_division_roundtrip(
        f in prop::collection::vec(arb_small_rat(), 0..6),
        g in prop::collection::vec(arb_small_rat(), 1..5),
    ) {
        let f = Poly::new(f);
        let g = Poly::new(g);
        prop_assume!(!g.is_zero());
        let (q, r) = f.divrem(&g);
        prop_assert_eq!(q.mul(&g).add(&r), f);
        if !r.is_zero() {
            prop_assert!(r.degree().unwrap() < g.degree().unwrap());
        }
    }

    #[test]
    fn canonical_form_is_stable_and_faithful(
        cols in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..4),
        exps in prop::collection::vec(-2i64..=2, 4),
        subspace_mask in prop::collection::vec(any::<bool>(), 4),
        p in prop_oneof![Just(2u64), Just(3)],
    ) {
        let ctx = PAdicContext::new(p).unwrap();
        let gens: Vec<Vec<Rat>> = cols
            .iter()
            .map(|c| c.iter().map(|&x| Rat::from(BigInt::from(x))).collect())
            .collect();
        let exponents: Vec<Exp> = gens
            .iter()
            .enumerate()
            .map(|(i, _)| {
                if subspace_mask[i % subspace_mask.len()] {
                    Exp::NegInf
                } else {
                    Exp::Fin(exps[i % exps.len()])
                }
            })
            .collect();
        let m = QuasiLattice::new(ctx, 3, gens.clone(), exponents.clone());
        // idempotent
        prop_assert_eq!(m.canonicalize(), m.clone());
        // the canonical module contains every original generator and is
        // contained in the module it was built from (mutual membership)
        let again = QuasiLattice::new(ctx, 3, gens.clone(), exponents.clone());
        for (g0, e) in gens.iter().zip(exponents.iter()) {
            match e {
                Exp::Fin(v) => {
                    let scaled: Vec<Rat> = g0.iter().map(|x| x * ctx.power(*v)).collect();
                    prop_assert!(m.member(&scaled));
                }
                Exp::NegInf => {
                    // the whole line sits inside: check two scalings
                    prop_assert!(m.dilation_margin(g0).map_or(
                        g0.iter().all(|x| x == &Rat::from(BigInt::from(0))),
                        |v| v == Val::Inf
                    ));
                }
            }
        }
        prop_assert!(again.contains(&m) && m.contains(&again));
    }

    #[test]
    fn lattice_document_roundtrip(
        cols in prop::collection::vec(prop::collection::vec(-9i64..=9, 2), 1..3),
        exps in prop::collection::vec(-3i64..=3, 3),
    ) {
        let ctx = PAdicContext::new(2).unwrap();
        let gens: Vec<Vec<Rat>> = cols
            .iter()
            .map(|c| c.iter().map(|&x| Rat::from(BigInt::from(x))).collect())
            .collect();
        let exponents: Vec<Exp> = (0..gens.len()).map(|i| Exp::Fin(exps[i % exps.len()])).collect();
        let m = QuasiLattice::new(ctx, 2, gens, exponents);
        let doc = QuasiLatticeDoc::from_lattice(&m);
        let json = serde_json::to_string(&doc).unwrap();
        let back = collig::io::parse_quasilattice_json(&json).unwrap();
        prop_assert_eq!(back, m);
    }
}
