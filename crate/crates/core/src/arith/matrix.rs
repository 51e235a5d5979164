//! Dense exact matrices over a ring, with the elimination-based kernels
//! (inverse, solve, kernel basis, reduced echelon forms) available over a
//! field.

use super::context::ArithError;
use super::{Field, Rat, Ring};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>, // row-major
}

impl<F: fmt::Debug> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?} ", self.data[i * self.cols + j])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<F: Ring> Mat<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(n_rows: usize, cols: Vec<Vec<F>>) -> Self {
        let c = cols.len();
        for col in &cols {
            assert_eq!(col.len(), n_rows, "ragged columns");
        }
        Mat::from_fn(n_rows, c, |i, j| cols[j][i].clone())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| F::zero())
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map<G: Ring>(&self, f: impl FnMut(&F) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() + other.at(i, j).clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() - other.at(i, j).clone()
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                acc = acc + self.at(i, k).clone() * other.at(k, j).clone();
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for k in 0..self.cols {
                    acc = acc + self.at(i, k).clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Mat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    /// Assemble from a grid of blocks; row heights and column widths are
    /// taken from the first block in each band.
    pub fn block(grid: &[Vec<&Mat<F>>]) -> Self {
        assert!(!grid.is_empty());
        let heights: Vec<usize> = grid.iter().map(|band| band[0].rows).collect();
        let widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        for (bi, band) in grid.iter().enumerate() {
            assert_eq!(band.len(), widths.len(), "ragged block grid");
            for (bj, blk) in band.iter().enumerate() {
                assert_eq!(blk.rows, heights[bi], "block height mismatch");
                assert_eq!(blk.cols, widths[bj], "block width mismatch");
            }
        }
        let total_r: usize = heights.iter().sum();
        let total_c: usize = widths.iter().sum();
        let mut out = Mat::zeros(total_r, total_c);
        let mut roff = 0;
        for (bi, band) in grid.iter().enumerate() {
            let mut coff = 0;
            for blk in band {
                for i in 0..blk.rows {
                    for j in 0..blk.cols {
                        out.set(roff + i, coff + j, blk.at(i, j).clone());
                    }
                }
                coff += blk.cols;
            }
            roff += heights[bi];
        }
        out
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Mat::from_fn(r1 - r0, c1 - c0, |i, j| self.at(r0 + i, c0 + j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F: Field> Mat<F> {
    /// In-place reduced row echelon form; returns pivot column indices.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.at(r, c).inv();
            for j in 0..self.cols {
                let v = self.at(r, j).clone() * inv.clone();
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let factor = self.at(i, c).clone();
                    for j in 0..self.cols {
                        let v = self.at(i, j).clone() - factor.clone() * self.at(r, j).clone();
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right null space, as columns.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![F::zero(); self.cols];
                v[fc] = F::one();
                for (ri, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.at(ri, fc).clone();
                }
                v
            })
            .collect()
    }

    /// Solves self * x = b; None when inconsistent. When the solution is not
    /// unique, free coordinates are set to zero.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(self.rows, b.len());
        let mut aug = self.hstack(&Mat::new(self.rows, 1, b.to_vec()));
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None; // pivot in the constant column
        }
        let mut x = vec![F::zero(); self.cols];
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(ri, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = self.hstack(&Mat::identity(n));
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
            return Err(ArithError::Singular);
        }
        Ok(aug.submatrix(0, n, n, 2 * n))
    }

    pub fn det(&self) -> F {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return F::zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            det = det * m.at(c, c).clone();
            let inv = m.at(c, c).inv();
            for i in c + 1..n {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let factor = m.at(i, c).clone() * inv.clone();
                for j in c..n {
                    let v = m.at(i, j).clone() - factor.clone() * m.at(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Unique reduced column echelon basis of the column span.
    /// Pivot entries are 1, pivot rows are cleared in all other columns,
    /// columns sorted by pivot row; dependent columns dropped.
    pub fn column_echelon(&self) -> Mat<F> {
        let mut t = self.transpose();
        let pivots = t.rref_in_place();
        let kept = pivots.len();
        t.submatrix(0, kept, 0, self.rows).transpose()
    }
}

impl Mat<Rat> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| super::rat_i64(x)).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_i64};
    use num_traits::Zero;

    #[test]
    fn inverse_of_identity() {
        let id = Mat::<Rat>::identity(3);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_i64_rows(&[&[1, 2], &[3, 5]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
    }

    #[test]
    fn singular_inverse_errors() {
        let m = Mat::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(m.inverse().is_err());
    }

    #[test]
    fn kernel_of_row_vector() {
        let m = Mat::from_i64_rows(&[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // span{(1, -1)}: the basis vector is proportional to it
        let v = &k[0];
        assert_eq!(v[0], -v[1].clone());
        assert!(!v[0].is_zero());
    }

    #[test]
    fn solve_diagonal() {
        let m = Mat::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let x = m.solve(&[rat_i64(4), rat_i64(9)]).unwrap();
        assert_eq!(x, vec![rat_i64(2), rat_i64(3)]);
    }

    #[test]
    fn solve_inconsistent_is_none() {
        let m = Mat::from_i64_rows(&[&[1], &[1]]);
        assert!(m.solve(&[rat_i64(0), rat_i64(1)]).is_none());
    }

    #[test]
    fn det_of_shear_product() {
        let m = Mat::from_i64_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), rat(1, 1));
        let m2 = Mat::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[6, 0, 0]]);
        assert_eq!(m2.det(), rat(6, 1));
    }

    #[test]
    fn column_echelon_is_canonical() {
        let a = Mat::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let b = Mat::from_i64_rows(&[&[1, 2], &[1, 3]]);
        // same column span (all of Q^2)
        assert_eq!(a.column_echelon(), b.column_echelon());
        assert_eq!(a.column_echelon(), Mat::identity(2));
    }

    #[test]
    fn block_assembly() {
        let a = Mat::from_i64_rows(&[&[1]]);
        let b = Mat::from_i64_rows(&[&[2, 3]]);
        let c = Mat::from_i64_rows(&[&[4], &[5]]);
        let d = Mat::from_i64_rows(&[&[6, 7], &[8, 9]]);
        let m = Mat::block(&[vec![&a, &b], vec![&c, &d]]);
        assert_eq!(m, Mat::from_i64_rows(&[&[1, 2, 3], &[4, 6, 7], &[5, 8, 9]]));
    }
}
