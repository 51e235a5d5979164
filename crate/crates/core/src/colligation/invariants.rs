//! Generating invariants of the conjugation action: corner entries, moment
//! sequences b[i] d^k c[j], and traces of powers of d.

use super::collig::Colligation;
use crate::arith::matrix::Mat;
use crate::arith::Rat;
use num_traits::Zero;

/// Truncated invariant data. Determined by the conjugacy class; separates
/// classes only up to the truncation order, so quotient equality testing
/// goes through the transfer function and divisor instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSignature {
    /// Corner entries a_ij.
    pub corner: Mat<Rat>,
    /// moments[i][j][k] = (row i of b) d^k (column j of c), 0 <= k <= k_max.
    pub moments: Vec<Vec<Vec<Rat>>>,
    /// traces[k-1] = tr d^k, 1 <= k <= k_max.
    pub traces: Vec<Rat>,
}

pub fn invariants(g: &Colligation, k_max: usize) -> InvariantSignature {
    assert_eq!(g.block_count(), 1);
    let alpha = g.alpha();
    let d = g.d_full();
    let b = g.b_full();
    let c = g.c_full();

    let mut power = Mat::<Rat>::identity(g.inner_size());
    let mut moments = vec![vec![Vec::with_capacity(k_max + 1); alpha]; alpha];
    let mut traces = Vec::with_capacity(k_max);
    for k in 0..=k_max {
        let bdc = b.mul(&power).mul(&c);
        for (i, row) in moments.iter_mut().enumerate() {
            for (j, seq) in row.iter_mut().enumerate() {
                seq.push(bdc.at(i, j).clone());
            }
        }
        power = power.mul(&d);
        if k < k_max {
            // after the update, power = d^(k+1)
            let mut tr = Rat::zero();
            for i in 0..g.inner_size() {
                tr += power.at(i, i).clone();
            }
            traces.push(tr);
        }
    }
    InvariantSignature {
        corner: g.corner(),
        moments,
        traces,
    }
}
