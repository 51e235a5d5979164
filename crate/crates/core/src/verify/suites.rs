//! Named verification suites, one per verified statement. Each suite runs a
//! seeded batch of instances and reports counterexamples textually; the
//! acceptance tests and the CLI `verify` command both dispatch here.

use super::gen::{self, Prng};
use crate::arith::context::{PAdicContext, Val};
use crate::arith::matrix::Mat;
use crate::arith::ratfunmat::RatFunMat;
use crate::arith::smith::{smith_dvr, Dvr, PAdicDvr};
use crate::arith::{rat_i64, Rat};
use crate::building::charmap::char_lattice;
use crate::building::checks::{boundary_limit_check, tree_map_check};
use crate::colligation::charfun::{char_at, char_boundary, char_fun, det_char_check, resolvent_det};
use crate::colligation::conjugator::{commutativity_conjugator, extend_by_corner};
use crate::colligation::divisor::divisor;
use crate::colligation::quotient::quotient_equal;
use crate::colligation::realize::realize;
use crate::colligation::Colligation;
use crate::lattice::quasi::{Exp, QuasiLattice};
use crate::lattice::tree::{ball, edges_within, expected_ball_size, TreeVertex};
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub instances: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            instances: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, dump: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(format!(
                "instance {}: {}",
                self.instances - 1,
                dump()
            ));
        }
    }
}

pub const SUITES: &[&str] = &[
    "th-circ-char",
    "divisor-additivity",
    "noncommutative-pair",
    "conjugator",
    "th-product",
    "pr-lattice-c",
    "pr-lattice-d",
    "pr-lattice-b",
    "valence-balls",
    "pr-continuity",
    "boundary-consistency",
    "realize-roundtrip",
    "det-identity",
    "oracle-equivalence",
];

pub fn suite_names() -> &'static [&'static str] {
    SUITES
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite {0:?}; known: {1}")]
pub struct UnknownSuite(pub String, pub String);

/// Runs a named suite; `count` overrides the per-suite default instance
/// count where applicable.
pub fn run_suite(name: &str, seed: u64, count: Option<usize>) -> Result<SuiteReport, UnknownSuite> {
    match name {
        "th-circ-char" => Ok(field_multiplicativity(seed, count.unwrap_or(200))),
        "divisor-additivity" => Ok(divisor_additivity(seed, count.unwrap_or(200))),
        "noncommutative-pair" => Ok(noncommutative_pair(seed)),
        "conjugator" => Ok(conjugator_suite(seed, count.unwrap_or(50))),
        "th-product" => Ok(lattice_multiplicativity(seed, count.unwrap_or(100))),
        "pr-lattice-c" => Ok(conjugation_invariance(seed, count.unwrap_or(100))),
        "pr-lattice-d" => Ok(scaling_equivariance(seed, count.unwrap_or(100))),
        "pr-lattice-b" => Ok(arrow_preservation(seed, count.unwrap_or(10))),
        "valence-balls" => Ok(valence_and_balls(seed)),
        "pr-continuity" => Ok(boundary_limits(seed, count.unwrap_or(20))),
        "boundary-consistency" => Ok(boundary_consistency(seed, count.unwrap_or(100))),
        "realize-roundtrip" => Ok(realize_roundtrip(seed, count.unwrap_or(50))),
        "det-identity" => Ok(det_identity(seed, count.unwrap_or(100))),
        "oracle-equivalence" => Ok(oracle_equivalence(seed, count.unwrap_or(500))),
        other => Err(UnknownSuite(other.to_string(), SUITES.join(", "))),
    }
}

fn random_pair(rng: &mut Prng) -> (Colligation, Colligation) {
    let alpha = rng.random_range(1..=3usize);
    let n1 = rng.random_range(1..=4usize);
    let n2 = rng.random_range(1..=4usize);
    (
        gen::colligation(rng, alpha, 1, n1),
        gen::colligation(rng, alpha, 1, n2),
    )
}

/// Transfer function of a product equals the product of transfer functions.
pub fn field_multiplicativity(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("th-circ-char", seed);
    let mut rng = gen::seeded(seed);
    for _ in 0..count {
        let (g, h) = random_pair(&mut rng);
        let prod = g.circ(&h).unwrap();
        let lhs = char_fun(&prod);
        let rhs = char_fun(&g).mul(&char_fun(&h));
        report.check(lhs == rhs, || {
            format!(
                "transfer mismatch for g={:?} h={:?}",
                g.entries(),
                h.entries()
            )
        });
    }
    report
}

/// Divisor of a product is the multiset sum of the divisors.
pub fn divisor_additivity(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("divisor-additivity", seed);
    let mut rng = gen::seeded(seed);
    for _ in 0..count {
        let (g, h) = random_pair(&mut rng);
        let prod = g.circ(&h).unwrap();
        let lhs = divisor(&prod);
        let rhs = divisor(&g).add(&divisor(&h));
        report.check(lhs == rhs, || {
            format!(
                "divisor mismatch for g={:?} h={:?}: {lhs:?} vs {rhs:?}",
                g.entries(),
                h.entries()
            )
        });
    }
    report
}

/// The fixed shear pair: both products in exact block form, literally
/// distinct, yet equal in the quotient.
pub fn noncommutative_pair(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("noncommutative-pair", seed);
    let lo = Colligation::from_i64(1, 1, 1, &[&[1, 0], &[1, 1]]);
    let up = Colligation::from_i64(1, 1, 1, &[&[1, 1], &[0, 1]]);
    let lu = lo.circ(&up).unwrap();
    let ul = up.circ(&lo).unwrap();
    report.check(
        lu.entries() == &Mat::from_i64_rows(&[&[1, 0, 1], &[1, 1, 1], &[0, 0, 1]]),
        || format!("unexpected first product {:?}", lu.entries()),
    );
    report.check(
        ul.entries() == &Mat::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[1, 0, 1]]),
        || format!("unexpected second product {:?}", ul.entries()),
    );
    report.check(lu != ul, || "products coincide as matrices".to_string());
    let cmp = quotient_equal(&lu, &ul);
    report.check(cmp.equal, || {
        format!("quotient distinguishes the pair: {:?}", cmp.witness)
    });
    report
}

/// The explicit conjugator swaps the two orders of a generic product.
pub fn conjugator_suite(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("conjugator", seed);
    let mut rng = gen::seeded(seed);
    let mut produced = 0;
    while produced < count {
        let n1 = rng.random_range(1..=3usize);
        let n2 = rng.random_range(1..=3usize);
        let g = gen::diagonal_colligation(&mut rng, n1, &[]);
        let avoid: Vec<Rat> = (0..n1).map(|i| g.d_block(0, 0).at(i, i).clone()).collect();
        let h = gen::diagonal_colligation(&mut rng, n2, &avoid);
        let u = match commutativity_conjugator(&g, &h) {
            Ok(u) => u,
            Err(_) => continue, // non-generic draw; resample
        };
        produced += 1;
        let big = extend_by_corner(&u);
        let gh = g.circ(&h).unwrap();
        let hg = h.circ(&g).unwrap();
        let lhs = big.inverse().unwrap().mul(gh.entries()).mul(&big);
        report.check(lhs == *hg.entries(), || {
            format!(
                "conjugation failed for g={:?} h={:?}",
                g.entries(),
                h.entries()
            )
        });
    }
    report
}

/// Characteristic map of a product equals the relation product of the maps,
/// for primes 2, 3, 5.
pub fn lattice_multiplicativity(seed: u64, count_per_prime: usize) -> SuiteReport {
    let mut report = SuiteReport::new("th-product", seed);
    let mut rng = gen::seeded(seed);
    for p in [2u64, 3, 5] {
        let ctx = PAdicContext::new(p).unwrap();
        for _ in 0..count_per_prime {
            let alpha = rng.random_range(1..=2usize);
            let n1 = rng.random_range(1..=3usize);
            let n2 = rng.random_range(1..=3usize);
            let g = gen::integer_colligation(&mut rng, alpha, 1, n1, 3);
            let h = gen::integer_colligation(&mut rng, alpha, 1, n2, 3);
            let r = gen::full_lattice(&mut rng, ctx, 2);
            let prod = g.circ(&h).unwrap();
            let lhs = char_lattice(&prod, &r).lattice;
            let rhs = char_lattice(&g, &r)
                .lattice
                .relation_compose(&char_lattice(&h, &r).lattice);
            report.check(lhs == rhs, || {
                format!(
                    "p={p}: map of product differs from relation product for g={:?} h={:?} r={}",
                    g.entries(),
                    h.entries(),
                    r.digest()
                )
            });
        }
    }
    report
}

/// The characteristic map only depends on the conjugacy class.
pub fn conjugation_invariance(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("pr-lattice-c", seed);
    let mut rng = gen::seeded(seed);
    for i in 0..count {
        let p = [2u64, 3, 5][i % 3];
        let ctx = PAdicContext::new(p).unwrap();
        let alpha = rng.random_range(1..=2usize);
        let n = rng.random_range(1..=3usize);
        let g = gen::integer_colligation(&mut rng, alpha, 1, n, 3);
        let u = gen::gl_n_o(&mut rng, ctx, n);
        let conj = g.conjugate(&u).unwrap();
        let r = gen::full_lattice(&mut rng, ctx, 2);
        report.check(
            char_lattice(&g, &r) == char_lattice(&conj, &r),
            || {
                format!(
                    "p={p}: conjugation changed the image for g={:?} u={:?}",
                    g.entries(),
                    u
                )
            },
        );
    }
    report
}

/// chi(c R) = c chi(R) for scalars of all valuations.
pub fn scaling_equivariance(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("pr-lattice-d", seed);
    let mut rng = gen::seeded(seed);
    for i in 0..count {
        let p = [2u64, 3, 5][i % 3];
        let ctx = PAdicContext::new(p).unwrap();
        let alpha = rng.random_range(1..=2usize);
        let n = rng.random_range(1..=3usize);
        let g = gen::integer_colligation(&mut rng, alpha, 1, n, 3);
        let r = gen::full_lattice(&mut rng, ctx, 2);
        let image = char_lattice(&g, &r).lattice;
        // a scalar with nonzero valuation and a unit scalar
        let scalars = [
            ctx.power(rng.random_range(-2..=2)),
            Rat::from(num_bigint::BigInt::from(3 + 2 * (i as i64 % 2))),
        ];
        for c in scalars {
            if c.is_zero() {
                continue;
            }
            let lhs = char_lattice(&g, &r.scale(&c)).lattice;
            report.check(lhs == image.scale(&c), || {
                format!("p={p}: scaling by {c} not equivariant for g={:?}", g.entries())
            });
        }
    }
    report
}

/// Over every edge of a radius-2 ball, images coincide or stay adjacent.
pub fn arrow_preservation(seed: u64, colligations: usize) -> SuiteReport {
    let mut report = SuiteReport::new("pr-lattice-b", seed);
    let mut rng = gen::seeded(seed);
    for p in [2u64, 3] {
        let ctx = PAdicContext::new(p).unwrap();
        let base = TreeVertex::base(ctx, 2);
        let mut produced = 0;
        let mut attempts = 0;
        while produced < colligations && attempts < 200 {
            attempts += 1;
            let n = rng.random_range(1..=2usize);
            let g = gen::integer_colligation(&mut rng, 1, 1, n, 2);
            let probe = char_lattice(&g, base.representative());
            if !probe.is_full_lattice {
                continue; // degenerate at the center; resample
            }
            let tm = tree_map_check(&g, &base, 2);
            if tm.degenerate_vertices > 0 {
                continue;
            }
            produced += 1;
            report.check(tm.violations.is_empty(), || {
                format!(
                    "p={p}: edge violations {:?} for g={:?}",
                    tm.violations,
                    g.entries()
                )
            });
        }
        report.check(produced == colligations, || {
            format!("p={p}: could not produce {colligations} nondegenerate samples")
        });
    }
    report
}

/// Vertex valence p+1 and ball sizes against the closed formula.
pub fn valence_and_balls(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("valence-balls", seed);
    for p in [2u64, 3, 5] {
        let ctx = PAdicContext::new(p).unwrap();
        let base = TreeVertex::base(ctx, 2);
        report.check(base.neighbors().len() as u64 == p + 1, || {
            format!("valence at p={p} is {}", base.neighbors().len())
        });
        for r in 0..=3 {
            let b = ball(&base, r);
            report.check(b.len() as u64 == expected_ball_size(p, r), || {
                format!(
                    "ball size at p={p}, r={r}: {} (expected {})",
                    b.len(),
                    expected_ball_size(p, r)
                )
            });
        }
    }
    report
}

/// Boundary limits: the characteristic map of the line sequence converges
/// to the graph of the field transfer value at regular points.
pub fn boundary_limits(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("pr-continuity", seed);
    let mut rng = gen::seeded(seed);
    for i in 0..count {
        let p = [2u64, 3, 5][i % 3];
        let ctx = PAdicContext::new(p).unwrap();
        let n = rng.random_range(1..=3usize);
        let g = gen::integer_colligation(&mut rng, 1, 1, n, 2);
        let chi = char_fun(&g);
        for _ in 0..3 {
            let x = gen::regular_point(&mut rng, chi.den());
            match boundary_limit_check(&g, ctx, &x, 12, 4) {
                Ok(ok) => report.check(ok, || {
                    format!("p={p}: no convergence at {x} for g={:?}", g.entries())
                }),
                Err(e) => report.check(false, || {
                    format!("p={p}: check errored at {x} for g={:?}: {e}", g.entries())
                }),
            }
        }
    }
    report
}

/// Boundary form at m = 1 equals the field transfer function; at m = 2 it
/// is multiplicative.
pub fn boundary_consistency(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("boundary-consistency", seed);
    let mut rng = gen::seeded(seed);
    for _ in 0..count {
        let alpha = rng.random_range(1..=2usize);
        let n = rng.random_range(1..=3usize);
        let g = gen::colligation(&mut rng, alpha, 1, n);
        // both sides use the resolvent formula, so sample away from its
        // zeros (which include the removable singularities)
        let x = gen::regular_point(&mut rng, &resolvent_det(&g));
        let s = Mat::new(1, 1, vec![x.clone()]);
        match (char_boundary(&g, &s), char_at(&g, &x)) {
            (Ok(lhs), Ok(rhs)) => report.check(lhs == rhs, || {
                format!("boundary vs field mismatch at {x} for g={:?}", g.entries())
            }),
            _ => report.check(false, || format!("evaluation failed at {x}")),
        }
    }
    // m = 2 multiplicativity on half as many triples
    let triples = (count / 2).max(1);
    let mut made = 0;
    while made < triples {
        let alpha = rng.random_range(1..=2usize);
        let n1 = rng.random_range(1..=2usize);
        let n2 = rng.random_range(1..=2usize);
        let g = gen::integer_colligation(&mut rng, alpha, 2, n1, 2);
        let h = gen::integer_colligation(&mut rng, alpha, 2, n2, 2);
        let s = Mat::from_fn(2, 2, |_, _| rat_i64(gen::small_int(&mut rng, 2)));
        let prod = g.circ(&h).unwrap();
        let lhs = char_boundary(&prod, &s);
        let parts = (char_boundary(&g, &s), char_boundary(&h, &s));
        match (lhs, parts) {
            (Ok(lhs), (Ok(a), Ok(b))) => {
                made += 1;
                report.check(lhs == a.mul(&b), || {
                    format!(
                        "m=2 boundary multiplicativity failed for g={:?} h={:?} s={:?}",
                        g.entries(),
                        h.entries(),
                        s
                    )
                });
            }
            _ => continue, // boundary pole; resample
        }
    }
    report
}

/// Realization round-trip on random rational functions.
pub fn realize_roundtrip(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("realize-roundtrip", seed);
    let mut rng = gen::seeded(seed);
    for _ in 0..count {
        let w = gen::rational_function(&mut rng, 4);
        match realize(&w) {
            Ok(g) => {
                let chi = char_fun(&g);
                let expect =
                    RatFunMat::from_entries(&Mat::from_rows(vec![vec![w.clone()]]));
                report.check(chi == expect, || {
                    format!("round-trip failed for {w}: got {:?}", chi)
                });
            }
            Err(e) => report.check(false, || format!("realization failed for {w}: {e}")),
        }
    }
    report
}

/// Determinant identity for the block form.
pub fn det_identity(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("det-identity", seed);
    let mut rng = gen::seeded(seed);
    for _ in 0..count {
        let alpha = rng.random_range(1..=3usize);
        let n = rng.random_range(1..=3usize);
        let g = gen::colligation(&mut rng, alpha, 1, n);
        report.check(det_char_check(&g), || {
            format!("determinant identity failed for {:?}", g.entries())
        });
    }
    report
}

/// Independent oracles: BFS distance vs invariant factors, raw-generator
/// membership vs canonical membership, Smith remultiplication.
pub fn oracle_equivalence(seed: u64, count: usize) -> SuiteReport {
    let mut report = SuiteReport::new("oracle-equivalence", seed);
    let mut rng = gen::seeded(seed);

    // tree distance against BFS inside radius-3 balls
    for p in [2u64, 3] {
        let ctx = PAdicContext::new(p).unwrap();
        let base = TreeVertex::base(ctx, 2);
        let b = ball(&base, 3);
        let edges = edges_within(&b);
        let mut adj = vec![Vec::new(); b.len()];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        // in a tree, shortest paths between ball vertices stay in the ball
        for src in 0..b.len() {
            let mut dist = vec![u64::MAX; b.len()];
            let mut queue = std::collections::VecDeque::new();
            dist[src] = 0;
            queue.push_back(src);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if dist[w] == u64::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            for other in 0..b.len() {
                report.check(b[src].distance(&b[other]) == dist[other], || {
                    format!(
                        "p={p}: distance mismatch between {} and {}",
                        b[src].digest(),
                        b[other].digest()
                    )
                });
            }
        }
    }

    // membership against the raw-generator valuation oracle
    let mut made = 0;
    while made < count {
        let p = [2u64, 3, 5][made % 3];
        let ctx = PAdicContext::new(p).unwrap();
        let dim = 2 + made % 2;
        let raw = gen::invertible(&mut rng, dim);
        let exps: Vec<i64> = (0..dim).map(|_| rng.random_range(-2..=2)).collect();
        let m = QuasiLattice::new(
            ctx,
            dim,
            raw.columns(),
            exps.iter().map(|&e| Exp::Fin(e)).collect(),
        );
        // random vector, sometimes an exact module element
        let v: Vec<Rat> = if rng.random_bool(0.5) {
            let coeffs: Vec<Rat> = (0..dim)
                .map(|i| ctx.power(exps[i] + rng.random_range(0..=1)))
                .collect();
            raw.mul_vec(&coeffs)
        } else {
            (0..dim)
                .map(|_| {
                    Rat::new(
                        num_bigint::BigInt::from(gen::small_int(&mut rng, 8)),
                        num_bigint::BigInt::from(rng.random_range(1..=6i64)),
                    )
                })
                .collect()
        };
        // oracle: solve against the raw generators and inspect valuations;
        // the coefficient on a p^e O generator must have valuation >= e
        let oracle = match raw.solve(&v) {
            None => false,
            Some(coeffs) => coeffs
                .iter()
                .zip(exps.iter())
                .all(|(t, e)| ctx.val(t) >= Val::Fin(*e)),
        };
        made += 1;
        report.check(m.member(&v) == oracle, || {
            format!("p={p}: membership mismatch for v={v:?} in {}", m.digest())
        });
    }

    // Smith factorization remultiplies with unit transforms
    let dvr2 = PAdicDvr(PAdicContext::new(2).unwrap());
    let dvr5 = PAdicDvr(PAdicContext::new(5).unwrap());
    for i in 0..count {
        let rows = 1 + i % 5;
        let cols = 1 + (i / 2) % 4;
        let mat = Mat::from_fn(rows, cols, |_, _| {
            Rat::new(
                num_bigint::BigInt::from(gen::small_int(&mut rng, 9)),
                num_bigint::BigInt::from(rng.random_range(1..=4i64)),
            )
        });
        let ok = if i % 2 == 0 {
            smith_remultiplies(&dvr2, &mat)
        } else {
            smith_remultiplies(&dvr5, &mat)
        };
        report.check(ok, || format!("smith failed on {mat:?}"));
    }
    report
}

fn smith_remultiplies(dvr: &PAdicDvr, m: &Mat<Rat>) -> bool {
    let dec = smith_dvr(dvr, m);
    let d = dec.diag(dvr, m.rows(), m.cols());
    if dec.u.mul(&d).mul(&dec.v) != *m {
        return false;
    }
    if dvr.val(&dec.u.det()) != Val::Fin(0) || dvr.val(&dec.v.det()) != Val::Fin(0) {
        return false;
    }
    dec.exponents.windows(2).all(|w| w[0] <= w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_run_small_and_pass() {
        for name in suite_names() {
            let count = match *name {
                "oracle-equivalence" => Some(30),
                "pr-lattice-b" => Some(2),
                "pr-continuity" => Some(3),
                _ => Some(8),
            };
            let report = run_suite(name, 1, count).unwrap();
            assert!(
                report.passed(),
                "suite {name} failed: {:?}",
                report.failures
            );
        }
    }

    #[test]
    fn unknown_suite_rejected() {
        assert!(run_suite("nope", 0, None).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite("th-circ-char", 99, Some(5)).unwrap();
        let b = run_suite("th-circ-char", 99, Some(5)).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
