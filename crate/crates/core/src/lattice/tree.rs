//! Vertices of the Bruhat-Tits building: full lattices up to dilatation,
//! with adjacency, balls, graph distance, and the arrow relation.

use super::quasi::QuasiLattice;
use crate::arith::context::Val;
use crate::arith::Rat;
use std::collections::{HashMap, HashSet, VecDeque};

/// Projective class of a full lattice. The representative is the canonical
/// quasi-lattice scaled so its minimal invariant exponent relative to the
/// standard lattice is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeVertex {
    lat: QuasiLattice,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("not a full lattice (rank {rank} of {dim}, subspace rank {subspace})")]
    NotALattice {
        rank: usize,
        dim: usize,
        subspace: usize,
    },
}

impl TreeVertex {
    /// The class of a full lattice.
    pub fn class(lat: &QuasiLattice) -> Result<Self, TreeError> {
        if !lat.is_full_lattice() {
            return Err(TreeError::NotALattice {
                rank: lat.lattice_rank(),
                dim: lat.dim(),
                subspace: lat.subspace_rank(),
            });
        }
        let exps = lat.relative_exponents();
        let min = exps
            .iter()
            .map(|e| e.finite().expect("full lattice has finite exponents"))
            .min()
            .expect("nonzero rank");
        Ok(TreeVertex {
            lat: lat.scale_pow(-min),
        })
    }

    pub fn base(ctx: crate::arith::context::PAdicContext, dim: usize) -> Self {
        TreeVertex::class(&QuasiLattice::standard(ctx, dim)).unwrap()
    }

    pub fn representative(&self) -> &QuasiLattice {
        &self.lat
    }

    pub fn dim(&self) -> usize {
        self.lat.dim()
    }

    pub fn digest(&self) -> String {
        self.lat.digest()
    }

    /// The p+1 adjacent vertices in the tree of rank-2 lattices: preimages of
    /// the lines of R/pR.
    pub fn neighbors(&self) -> Vec<TreeVertex> {
        assert_eq!(self.dim(), 2, "neighbor enumeration is for the tree");
        let ctx = self.lat.ctx();
        let p = ctx.prime();
        let cols = self.lat.columns();
        let f1 = &cols[0];
        let f2 = &cols[1];
        let scaled = self.lat.scale_pow(1);
        let mut out = Vec::with_capacity(p as usize + 1);
        let mut directions: Vec<Vec<Rat>> = Vec::new();
        directions.push(f2.clone()); // line spanned by f2 mod p
        for t in 0..p {
            // f1 + t*f2
            let tr = Rat::from(num_bigint::BigInt::from(t));
            directions.push(
                f1.iter()
                    .zip(f2.iter())
                    .map(|(a, b)| a + &tr * b)
                    .collect(),
            );
        }
        for w in directions {
            let sub = QuasiLattice::new(
                ctx,
                2,
                vec![w],
                vec![super::quasi::Exp::Fin(0)],
            )
            .sum(&scaled);
            out.push(TreeVertex::class(&sub).expect("sublattice is full"));
        }
        out.sort_by_key(|v| v.digest());
        out.dedup();
        out
    }

    /// Graph distance from the difference of relative invariant exponents.
    pub fn distance(&self, other: &TreeVertex) -> u64 {
        assert_eq!(self.dim(), 2);
        assert_eq!(other.dim(), 2);
        let rel = relative_position(&self.lat, &other.lat);
        (rel[rel.len() - 1] - rel[0]) as u64
    }
}

/// Exponents of `b` relative to `a` (both full lattices): Smith exponents of
/// the matrix expressing b's basis in a's.
fn relative_position(a: &QuasiLattice, b: &QuasiLattice) -> Vec<i64> {
    use crate::arith::matrix::Mat;
    use crate::arith::smith::{smith_dvr, PAdicDvr};
    let basis_a = Mat::from_cols(a.dim(), a.columns());
    let basis_b = Mat::from_cols(b.dim(), b.columns());
    let rel = basis_a.inverse().expect("lattice basis").mul(&basis_b);
    let dvr = PAdicDvr(a.ctx());
    smith_dvr(&dvr, &rel)
        .exponents
        .into_iter()
        .map(|e| match e {
            Val::Fin(v) => v,
            Val::Inf => unreachable!("full rank"),
        })
        .collect()
}

/// T contains R contains pT, inclusions tested on generators.
/// Errors unless both inputs are full lattices.
pub fn arrow(r: &QuasiLattice, t: &QuasiLattice) -> Result<bool, TreeError> {
    for m in [r, t] {
        if !m.is_full_lattice() {
            return Err(TreeError::NotALattice {
                rank: m.lattice_rank(),
                dim: m.dim(),
                subspace: m.subspace_rank(),
            });
        }
    }
    Ok(t.contains(r) && r.contains(&t.scale_pow(1)))
}

/// All vertices at distance <= radius from the center, BFS over neighbors,
/// canonically sorted.
pub fn ball(center: &TreeVertex, radius: u64) -> Vec<TreeVertex> {
    let mut seen: HashSet<TreeVertex> = HashSet::new();
    let mut queue: VecDeque<(TreeVertex, u64)> = VecDeque::new();
    seen.insert(center.clone());
    queue.push_back((center.clone(), 0));
    while let Some((v, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        for nb in v.neighbors() {
            if seen.insert(nb.clone()) {
                queue.push_back((nb, d + 1));
            }
        }
    }
    let mut out: Vec<TreeVertex> = seen.into_iter().collect();
    out.sort_by_key(|v| v.digest());
    out
}

/// Edges within a vertex set (each unordered pair once).
pub fn edges_within(vertices: &[TreeVertex]) -> Vec<(usize, usize)> {
    let index: HashMap<&TreeVertex, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut out = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for nb in v.neighbors() {
            if let Some(&j) = index.get(&nb) {
                if i < j {
                    out.push((i, j));
                }
            }
        }
    }
    out.sort();
    out
}

/// BFS distance restricted to the ball, as an independent oracle for
/// the invariant-factor distance.
pub fn bfs_distance(a: &TreeVertex, b: &TreeVertex, max_radius: u64) -> Option<u64> {
    let mut seen: HashSet<TreeVertex> = HashSet::new();
    let mut queue: VecDeque<(TreeVertex, u64)> = VecDeque::new();
    seen.insert(a.clone());
    queue.push_back((a.clone(), 0));
    while let Some((v, d)) = queue.pop_front() {
        if &v == b {
            return Some(d);
        }
        if d == max_radius {
            continue;
        }
        for nb in v.neighbors() {
            if seen.insert(nb.clone()) {
                queue.push_back((nb, d + 1));
            }
        }
    }
    None
}

/// Expected ball size 1 + (p+1)(p^r - 1)/(p - 1) in the (p+1)-regular tree.
pub fn expected_ball_size(p: u64, radius: u64) -> u64 {
    if radius == 0 {
        return 1;
    }
    let mut geom = 0u64;
    let mut pw = 1u64;
    for _ in 0..radius {
        geom += pw;
        pw *= p;
    }
    1 + (p + 1) * geom
}
