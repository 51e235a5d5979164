//! Quasi-lattices: O-submodules of Q^n of the form subspace + lattice part,
//! for O the p-localization of the integers. Encoded by generator columns
//! with exponents in Z plus -inf marking full field lines.

use crate::arith::context::{PAdicContext, Val};
use crate::arith::matrix::Mat;
use crate::arith::smith::{smith_dvr, PAdicDvr};
use crate::arith::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Column exponent: the module contributes p^e * O * column, with NegInf
/// meaning the whole field line K * column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exp {
    NegInf,
    Fin(i64),
}

/// A finitely-described O-submodule of Q^n in canonical form.
///
/// Canonical form: -inf columns first, a reduced column echelon basis of the
/// subspace part; then the lattice part with all exponents folded to 0, in
/// column echelon over O with pivot entries exact p-powers, zeros at all
/// earlier pivot rows, and entries at later pivot rows reduced to canonical
/// residues mod the pivot power. Two equal modules have identical fields.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuasiLattice {
    ctx: PAdicContext,
    dim: usize,
    cols: Mat<Rat>,
    exps: Vec<Exp>,
}

impl QuasiLattice {
    /// Builds the module generated by the given columns and canonicalizes.
    pub fn new(ctx: PAdicContext, dim: usize, cols: Vec<Vec<Rat>>, exps: Vec<Exp>) -> Self {
        assert_eq!(cols.len(), exps.len(), "one exponent per generator");
        for c in &cols {
            assert_eq!(c.len(), dim, "generator dimension mismatch");
        }
        canonicalize_parts(ctx, dim, cols, exps)
    }

    /// The standard lattice O^n.
    pub fn standard(ctx: PAdicContext, dim: usize) -> Self {
        let cols = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        QuasiLattice::new(ctx, dim, cols, vec![Exp::Fin(0); dim])
    }

    pub fn zero(ctx: PAdicContext, dim: usize) -> Self {
        QuasiLattice::new(ctx, dim, vec![], vec![])
    }

    pub fn ctx(&self) -> PAdicContext {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_count(&self) -> usize {
        self.exps.len()
    }

    pub fn columns(&self) -> Vec<Vec<Rat>> {
        self.cols.columns()
    }

    pub fn exponents(&self) -> &[Exp] {
        &self.exps
    }

    pub fn subspace_rank(&self) -> usize {
        self.exps.iter().filter(|e| **e == Exp::NegInf).count()
    }

    pub fn lattice_rank(&self) -> usize {
        self.exps.len() - self.subspace_rank()
    }

    /// A lattice in the strict sense: full rank with no subspace part.
    pub fn is_full_lattice(&self) -> bool {
        self.subspace_rank() == 0 && self.lattice_rank() == self.dim
    }

    /// Re-runs canonicalization; a fixed point on canonical values.
    pub fn canonicalize(&self) -> Self {
        canonicalize_parts(self.ctx, self.dim, self.cols.columns(), self.exps.clone())
    }

    fn finite_cols(&self) -> Vec<Vec<Rat>> {
        (self.subspace_rank()..self.exps.len())
            .map(|j| self.cols.col(j))
            .collect()
    }

    /// Solves v against the canonical generators. Returns the coefficients
    /// split as (subspace part, finite part); None when v is outside the span.
    fn coefficients(&self, v: &[Rat]) -> Option<(Vec<Rat>, Vec<Rat>)> {
        assert_eq!(v.len(), self.dim);
        if self.exps.is_empty() {
            return if v.iter().all(|x| x.is_zero()) {
                Some((vec![], vec![]))
            } else {
                None
            };
        }
        let sol = self.cols.solve(v)?;
        let s = self.subspace_rank();
        Some((sol[..s].to_vec(), sol[s..].to_vec()))
    }

    /// True iff v lies in the module: solvable with all finite coefficients
    /// p-integral.
    pub fn member(&self, v: &[Rat]) -> bool {
        match self.coefficients(v) {
            None => false,
            Some((_, fin)) => fin.iter().all(|t| self.ctx.val(t) >= Val::Fin(0)),
        }
    }

    /// max{t : v in p^t * self}; None if v is outside the span, Inf if v is
    /// in the subspace part.
    pub fn dilation_margin(&self, v: &[Rat]) -> Option<Val> {
        let (_, fin) = self.coefficients(v)?;
        let mut m = Val::Inf;
        for t in &fin {
            m = m.min(self.ctx.val(t));
        }
        Some(m)
    }

    pub fn contains(&self, other: &QuasiLattice) -> bool {
        assert_eq!(self.dim, other.dim);
        let s = other.subspace_rank();
        for (j, col) in other.columns().iter().enumerate() {
            if j < s {
                // a field line fits only inside the subspace part
                match self.dilation_margin(col) {
                    Some(Val::Inf) => {}
                    _ => return false,
                }
            } else if !self.member(col) {
                return false;
            }
        }
        true
    }

    /// Scalar multiple c * M.
    pub fn scale(&self, c: &Rat) -> Self {
        assert!(!c.is_zero(), "scaling by zero");
        let s = self.subspace_rank();
        let cols = self
            .columns()
            .into_iter()
            .enumerate()
            .map(|(j, col)| {
                if j < s {
                    col
                } else {
                    col.iter().map(|x| x * c).collect()
                }
            })
            .collect();
        QuasiLattice::new(self.ctx, self.dim, cols, self.exps.clone())
    }

    /// p^e * M.
    pub fn scale_pow(&self, e: i64) -> Self {
        self.scale(&self.ctx.power(e))
    }

    /// Smallest module containing both.
    pub fn sum(&self, other: &QuasiLattice) -> Self {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.ctx, other.ctx);
        let mut cols = self.columns();
        let mut exps = self.exps.clone();
        cols.extend(other.columns());
        exps.extend(other.exps.iter().cloned());
        QuasiLattice::new(self.ctx, self.dim, cols, exps)
    }

    /// Largest module contained in both, via the kernel of the joint
    /// generator matrix.
    pub fn intersect(&self, other: &QuasiLattice) -> Self {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.ctx, other.ctx);
        if self.exps.is_empty() || other.exps.is_empty() {
            return QuasiLattice::zero(self.ctx, self.dim);
        }
        let c1 = &self.cols;
        let c2 = &other.cols;
        let joint = c1.hstack(&c2.neg());
        let kernel = joint.kernel_basis();
        if kernel.is_empty() {
            return QuasiLattice::zero(self.ctx, self.dim);
        }
        let kmat = Mat::from_cols(c1.cols() + c2.cols(), kernel);
        // O-constrained rows of (t1; t2): the finite slots of both modules
        let mut fin_rows: Vec<usize> = Vec::new();
        for (slot, e) in self
            .exps
            .iter()
            .chain(other.exps.iter())
            .enumerate()
        {
            if *e != Exp::NegInf {
                fin_rows.push(slot);
            }
        }
        let constraint = select_rows(&kmat, &fin_rows);
        let coeff_module = standard_preimage(self.ctx, &constraint, kmat.cols());
        // map y -> C1 * t1(y)
        let k_top = kmat.submatrix(0, c1.cols(), 0, kmat.cols());
        coeff_module.image_under(&c1.mul(&k_top), self.dim)
    }

    /// {v : phi(v) in self}, phi given as an n x m matrix (self lives in Q^n).
    pub fn preimage(&self, phi: &Mat<Rat>) -> Self {
        assert_eq!(phi.rows(), self.dim);
        let m = phi.cols();
        if self.exps.is_empty() {
            // preimage of the zero module is the kernel of phi
            let kern = phi.kernel_basis();
            let k = kern.len();
            return QuasiLattice::new(self.ctx, m, kern, vec![Exp::NegInf; k]);
        }
        // Split Q^n into span(cols) and a complement: P * cols = I on the
        // span, and ann rows annihilate exactly the span.
        let n = self.dim;
        let k = self.exps.len();
        let mut aug = self.cols.hstack(&Mat::identity(n));
        let pivots = aug.rref_in_place();
        debug_assert!(pivots.iter().take_while(|p| **p < k).count() == k);
        let p_mat = aug.submatrix(0, k, k, k + n);
        let ann = aug.submatrix(k, n, k, k + n);
        // v must satisfy ann * phi * v = 0
        let v0 = if ann.rows() == 0 {
            Mat::identity(m)
        } else {
            let constraint = ann.mul(phi);
            let basis = constraint.kernel_basis();
            if basis.is_empty() {
                return QuasiLattice::zero(self.ctx, m);
            }
            Mat::from_cols(m, basis)
        };
        // coefficients of phi(v) for v = v0 * y
        let coeff = p_mat.mul(phi).mul(&v0);
        let s = self.subspace_rank();
        let fin_rows: Vec<usize> = (s..k).collect();
        let constraint = select_rows(&coeff, &fin_rows);
        let coeff_module = standard_preimage(self.ctx, &constraint, v0.cols());
        coeff_module.image_under(&v0, m)
    }

    /// {phi(v) : v in self}, phi an r x n matrix.
    pub fn image(&self, phi: &Mat<Rat>) -> Self {
        assert_eq!(phi.cols(), self.dim);
        self.image_under(phi, phi.rows())
    }

    fn image_under(&self, phi: &Mat<Rat>, target_dim: usize) -> QuasiLattice {
        let cols = self
            .columns()
            .iter()
            .map(|c| phi.mul_vec(c))
            .collect();
        QuasiLattice::new(self.ctx, target_dim, cols, self.exps.clone())
    }

    /// R tensor O^N for R in Q^(2m): ambient Q^(2mN), with coordinate
    /// (i-1)N + j of the first block carrying (y_i)_j and likewise for x.
    pub fn tensor_with_unit_cube(&self, block: usize, n_inner: usize) -> QuasiLattice {
        assert_eq!(self.dim, 2 * block, "ambient must be 2m");
        assert!(n_inner >= 1);
        let out_dim = 2 * block * n_inner;
        let mut cols = Vec::new();
        let mut exps = Vec::new();
        for (gi, col) in self.columns().iter().enumerate() {
            for j in 0..n_inner {
                let mut v = vec![Rat::zero(); out_dim];
                for i in 0..block {
                    v[i * n_inner + j] = col[i].clone();
                    v[block * n_inner + i * n_inner + j] = col[block + i].clone();
                }
                cols.push(v);
                exps.push(self.exps[gi]);
            }
        }
        QuasiLattice::new(self.ctx, out_dim, cols, exps)
    }

    /// Product of relations: {u + w : exists v, u + v in self, v + w in other},
    /// both modules in Q^(2a) read as pairs (u | v) and (v | w).
    pub fn relation_compose(&self, other: &QuasiLattice) -> QuasiLattice {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.dim % 2, 0, "relations live in even dimension");
        let a = self.dim / 2;
        let ctx = self.ctx;
        // lift to Q^(3a): self x (full w-space) and (full u-space) x other
        let mut left_cols: Vec<Vec<Rat>> = Vec::new();
        let mut left_exps = Vec::new();
        for (j, c) in self.columns().into_iter().enumerate() {
            let mut v = c;
            v.extend(std::iter::repeat_n(Rat::zero(), a));
            left_cols.push(v);
            left_exps.push(self.exps[j]);
        }
        for i in 0..a {
            let mut v = vec![Rat::zero(); 3 * a];
            v[2 * a + i] = Rat::one();
            left_cols.push(v);
            left_exps.push(Exp::NegInf);
        }
        let left = QuasiLattice::new(ctx, 3 * a, left_cols, left_exps);

        let mut right_cols: Vec<Vec<Rat>> = Vec::new();
        let mut right_exps = Vec::new();
        for i in 0..a {
            let mut v = vec![Rat::zero(); 3 * a];
            v[i] = Rat::one();
            right_cols.push(v);
            right_exps.push(Exp::NegInf);
        }
        for (j, c) in other.columns().into_iter().enumerate() {
            let mut v = vec![Rat::zero(); a];
            v.extend(c);
            right_cols.push(v);
            right_exps.push(other.exps[j]);
        }
        let right = QuasiLattice::new(ctx, 3 * a, right_cols, right_exps);

        let meet = left.intersect(&right);
        // delete the middle block: (u, v, w) -> (u, w)
        let proj = Mat::from_fn(2 * a, 3 * a, |i, j| {
            let src = if i < a { i } else { a + i };
            if j == src {
                Rat::one()
            } else {
                Rat::zero()
            }
        });
        meet.image(&proj)
    }

    /// The identity relation {(v, v)} in Q^(2a).
    pub fn diagonal_relation(ctx: PAdicContext, a: usize) -> QuasiLattice {
        let cols = (0..a)
            .map(|i| {
                let mut v = vec![Rat::zero(); 2 * a];
                v[i] = Rat::one();
                v[a + i] = Rat::one();
                v
            })
            .collect();
        QuasiLattice::new(ctx, 2 * a, cols, vec![Exp::NegInf; a])
    }

    /// Invariant exponents of the lattice part relative to O^n.
    pub fn relative_exponents(&self) -> Vec<Val> {
        let fin = self.finite_cols();
        if fin.is_empty() {
            return vec![];
        }
        let m = Mat::from_cols(self.dim, fin);
        let dvr = PAdicDvr(self.ctx);
        smith_dvr(&dvr, &m)
            .exponents
            .into_iter()
            .filter(|e| e.is_finite())
            .collect()
    }

    /// Short deterministic text form: subspace columns, then lattice columns.
    pub fn digest(&self) -> String {
        let mut parts = Vec::new();
        let s = self.subspace_rank();
        for (j, col) in self.columns().iter().enumerate() {
            let body = col
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",");
            if j < s {
                parts.push(format!("K({body})"));
            } else {
                parts.push(format!("O({body})"));
            }
        }
        if parts.is_empty() {
            parts.push("0".to_string());
        }
        parts.join(" + ")
    }
}

/// A linear subspace of Q^n with a canonical reduced column echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceRep {
    dim: usize,
    basis: Mat<Rat>,
}

impl SubspaceRep {
    pub fn new(dim: usize, cols: Vec<Vec<Rat>>) -> Self {
        for c in &cols {
            assert_eq!(c.len(), dim);
        }
        if cols.is_empty() {
            return SubspaceRep {
                dim,
                basis: Mat::zeros(dim, 0),
            };
        }
        let m = Mat::from_cols(dim, cols);
        SubspaceRep {
            dim,
            basis: m.column_echelon(),
        }
    }

    pub fn full(dim: usize) -> Self {
        SubspaceRep {
            dim,
            basis: Mat::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Mat<Rat> {
        &self.basis
    }

    pub fn contains_vec(&self, v: &[Rat]) -> bool {
        self.basis.solve(v).is_some()
    }

    /// As a quasi-lattice made of field lines.
    pub fn as_quasi(&self, ctx: PAdicContext) -> QuasiLattice {
        QuasiLattice::new(
            ctx,
            self.dim,
            self.basis.columns(),
            vec![Exp::NegInf; self.basis.cols()],
        )
    }
}

/// Threshold-k convergence of the tail element of `seq` to the subspace L:
/// some dilation p^t * M lies inside L + p^k O^n while swallowing
/// p^(-k) (O^n intersect L). This realizes convergence of lattice classes,
/// which is only defined up to dilation.
pub fn converges_to(seq: &[QuasiLattice], l: &SubspaceRep, k: i64) -> bool {
    assert!(k >= 1, "threshold must be positive");
    let Some(m) = seq.last() else {
        return false;
    };
    assert_eq!(m.dim(), l.dim());
    let ctx = m.ctx();
    let n = m.dim();

    // neighborhood Lambda = L + p^k O^n
    let neighborhood = l.as_quasi(ctx).sum(&QuasiLattice::standard(ctx, n).scale_pow(k));

    // (a) subspace part must already lie inside L; finite generators must be
    // pushable into the neighborhood: t >= -margin
    let s = m.subspace_rank();
    let mut t_min: Option<i64> = None; // None = unconstrained below
    for (j, col) in m.columns().iter().enumerate() {
        match neighborhood.dilation_margin(col) {
            None => return false,
            Some(Val::Inf) => {}
            Some(Val::Fin(margin)) => {
                if j < s {
                    return false; // a field line off L never fits
                }
                t_min = Some(t_min.map_or(-margin, |t| t.max(-margin)));
            }
        }
    }

    // (b) p^t M must contain p^(-k) (O^n intersect L): t <= margin of each
    // generator of that compact set inside M
    let core = QuasiLattice::standard(ctx, n)
        .intersect(&l.as_quasi(ctx))
        .scale_pow(-k);
    let mut t_max: Option<i64> = None; // None = unconstrained above
    for col in core.columns().iter() {
        match m.dilation_margin(col) {
            None => return false,
            Some(Val::Inf) => {}
            Some(Val::Fin(margin)) => {
                t_max = Some(t_max.map_or(margin, |t| t.min(margin)));
            }
        }
    }

    match (t_min, t_max) {
        (Some(lo), Some(hi)) => lo <= hi,
        _ => true,
    }
}

fn select_rows(m: &Mat<Rat>, rows: &[usize]) -> Mat<Rat> {
    Mat::from_fn(rows.len(), m.cols(), |i, j| m.at(rows[i], j).clone())
}

/// {y in Q^s : A y in O^r} via Smith over (Q, v_p): generators are the
/// columns of V^{-1} with exponents -e_j, unconstrained directions -inf.
fn standard_preimage(ctx: PAdicContext, a: &Mat<Rat>, s: usize) -> QuasiLattice {
    if a.rows() == 0 {
        return QuasiLattice::new(
            ctx,
            s,
            Mat::identity(s).columns(),
            vec![Exp::NegInf; s],
        );
    }
    assert_eq!(a.cols(), s);
    let dvr = PAdicDvr(ctx);
    let dec = smith_dvr(&dvr, a);
    let v_inv = dec.v.inverse().expect("v is invertible");
    let mut cols = Vec::with_capacity(s);
    let mut exps = Vec::with_capacity(s);
    for j in 0..s {
        cols.push(v_inv.col(j));
        let e = if j < dec.exponents.len() {
            dec.exponents[j]
        } else {
            Val::Inf
        };
        exps.push(match e {
            Val::Fin(f) => Exp::Fin(-f),
            Val::Inf => Exp::NegInf,
        });
    }
    QuasiLattice::new(ctx, s, cols, exps)
}

/// Canonical residue representative of x modulo p^a O: either 0, or
/// u * p^v with v = val(x) < a and u the least positive integer congruent
/// to the unit part modulo p^(a-v).
fn residue_mod_power(ctx: PAdicContext, x: &Rat, a: i64) -> Rat {
    let v = match ctx.val(x) {
        Val::Inf => return Rat::zero(),
        Val::Fin(v) => v,
    };
    if v >= a {
        return Rat::zero();
    }
    let m = (a - v) as u32;
    let modulus = ctx.prime_big().pow(m);
    // unit part of x
    let unit = x * ctx.power(-v);
    let num = unit.numer().mod_floor(&modulus);
    let den_inv = mod_inverse(unit.denom(), &modulus);
    let rep = (num * den_inv).mod_floor(&modulus);
    Rat::from(rep) * ctx.power(v)
}

fn mod_inverse(a: &BigInt, modulus: &BigInt) -> BigInt {
    let e = a.extended_gcd(modulus);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(modulus)
}

fn canonicalize_parts(
    ctx: PAdicContext,
    dim: usize,
    cols: Vec<Vec<Rat>>,
    exps: Vec<Exp>,
) -> QuasiLattice {
    // split and fold finite exponents into the columns
    let mut sub_cols: Vec<Vec<Rat>> = Vec::new();
    let mut fin_cols: Vec<Vec<Rat>> = Vec::new();
    for (col, e) in cols.into_iter().zip(exps) {
        match e {
            Exp::NegInf => {
                if col.iter().any(|x| !x.is_zero()) {
                    sub_cols.push(col);
                }
            }
            Exp::Fin(e) => {
                if col.iter().any(|x| !x.is_zero()) {
                    let scale = ctx.power(e);
                    fin_cols.push(col.iter().map(|x| x * &scale).collect());
                }
            }
        }
    }

    // subspace part: unique reduced column echelon basis
    let (sub_basis, sub_pivots) = if sub_cols.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        let ech = Mat::from_cols(dim, sub_cols).column_echelon();
        let pivots: Vec<usize> = (0..ech.cols())
            .map(|j| (0..dim).find(|&i| !ech.at(i, j).is_zero()).unwrap())
            .collect();
        (ech.columns(), pivots)
    };

    // clear finite columns at the subspace pivot rows
    for col in fin_cols.iter_mut() {
        for (bi, &pr) in sub_pivots.iter().enumerate() {
            if !col[pr].is_zero() {
                let f = col[pr].clone();
                for (i, x) in col.iter_mut().enumerate() {
                    *x = &*x - &(&f * &sub_basis[bi][i]);
                }
            }
        }
    }
    fin_cols.retain(|c| c.iter().any(|x| !x.is_zero()));

    // column echelon over O with minimal-valuation pivots, exact p-power
    // pivot entries
    let mut done: Vec<(usize, i64, Vec<Rat>)> = Vec::new(); // (pivot row, exp, column)
    let mut active = fin_cols;
    for row in 0..dim {
        let mut best: Option<(i64, usize)> = None;
        for (j, col) in active.iter().enumerate() {
            if let Val::Fin(v) = ctx.val(&col[row]) {
                if best.is_none_or(|(bv, _)| v < bv) {
                    best = Some((v, j));
                }
            }
        }
        let Some((a, jstar)) = best else {
            continue;
        };
        let mut pivot_col = active.swap_remove(jstar);
        // normalize the pivot entry to exactly p^a
        let unit = ctx.power(a) * pivot_col[row].recip();
        for x in pivot_col.iter_mut() {
            *x = &*x * &unit;
        }
        for col in active.iter_mut() {
            if col[row].is_zero() {
                continue;
            }
            let f = &col[row] * ctx.power(-a); // in O by pivot minimality
            for (i, x) in col.iter_mut().enumerate() {
                *x = &*x - &(&f * &pivot_col[i]);
            }
        }
        done.push((row, a, pivot_col));
    }
    debug_assert!(active.iter().all(|c| c.iter().all(|x| x.is_zero())));

    // reduce entries at later pivot rows to canonical residues
    let t = done.len();
    for i in 0..t {
        for j in i + 1..t {
            let (rj, aj, _) = (done[j].0, done[j].1, ());
            let x = done[i].2[rj].clone();
            let res = residue_mod_power(ctx, &x, aj);
            if x != res {
                let c = (&x - &res) * ctx.power(-aj);
                let colj = done[j].2.clone();
                for (r, y) in done[i].2.iter_mut().enumerate() {
                    *y = &*y - &(&c * &colj[r]);
                }
            }
            let _ = aj;
        }
    }

    let mut cols_out: Vec<Vec<Rat>> = sub_basis;
    let mut exps_out: Vec<Exp> = vec![Exp::NegInf; cols_out.len()];
    for (_, _, col) in done {
        cols_out.push(col);
        exps_out.push(Exp::Fin(0));
    }
    let k = cols_out.len();
    let cols_mat = if k == 0 {
        Mat::zeros(dim, 0)
    } else {
        Mat::from_cols(dim, cols_out)
    };
    QuasiLattice {
        ctx,
        dim,
        cols: cols_mat,
        exps: exps_out,
    }
}

/// Serialization-facing view of an exponent.
impl Exp {
    pub fn to_i64(self) -> Option<i64> {
        match self {
            Exp::Fin(e) => Some(e),
            Exp::NegInf => None,
        }
    }
}
