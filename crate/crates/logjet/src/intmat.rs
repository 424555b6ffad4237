//! Integer matrices with arbitrary-precision entries and their Smith
//! normal form.
//!
//! Intermediate entries in elimination can blow past machine integers even
//! for small inputs, so entries are BigInt throughout — correctness of the
//! lattice data downstream (group ranks, kernel bases, quotient
//! projections) depends on it.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Smith normal form d = U * M * V with U, V unimodular, d_i >= 0 and
/// d_i | d_{i+1}.
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = self.at(i, k) * other.at(k, j);
                    *out.at_mut(i, j) += add;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += q * row[b]
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let add = q * self.at(b, j);
            *self.at_mut(a, j) += add;
        }
    }

    /// col[a] += q * col[b]
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let add = q * self.at(i, b);
            *self.at_mut(i, a) += add;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.at(a, j).clone();
            *self.at_mut(a, j) = v;
        }
    }

    /// Smith normal form with the unimodular transforms witnessing it.
    pub fn smith_normal_form(&self) -> Snf {
        let mut m = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut k = 0;
        while k < n {
            // Find the entry of minimal absolute value in the working block.
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..self.rows {
                for j in k..self.cols {
                    if m.at(i, j).is_zero() {
                        continue;
                    }
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if m.at(i, j).abs() < m.at(pi, pj).abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break; // block is zero; done
            };
            m.swap_rows(k, pi);
            u.swap_rows(k, pi);
            m.swap_cols(k, pj);
            v.swap_cols(k, pj);

            // Clear row and column k; repeat while remainders reappear.
            let mut clean = false;
            while !clean {
                clean = true;
                for i in (k + 1)..self.rows {
                    if m.at(i, k).is_zero() {
                        continue;
                    }
                    let q = -(m.at(i, k) / m.at(k, k));
                    m.add_row_multiple(i, k, &q);
                    u.add_row_multiple(i, k, &q);
                    if !m.at(i, k).is_zero() {
                        // Remainder smaller than the pivot: promote it.
                        m.swap_rows(k, i);
                        u.swap_rows(k, i);
                        clean = false;
                    }
                }
                for j in (k + 1)..self.cols {
                    if m.at(k, j).is_zero() {
                        continue;
                    }
                    let q = -(m.at(k, j) / m.at(k, k));
                    m.add_col_multiple(j, k, &q);
                    v.add_col_multiple(j, k, &q);
                    if !m.at(k, j).is_zero() {
                        m.swap_cols(k, j);
                        v.swap_cols(k, j);
                        clean = false;
                    }
                }
            }

            // Divisibility: d_k must divide every remaining entry.
            let mut fixed = true;
            'scan: for i in (k + 1)..self.rows {
                for j in (k + 1)..self.cols {
                    if !(m.at(i, j) % m.at(k, k)).is_zero() {
                        let one = BigInt::one();
                        m.add_row_multiple(k, i, &one);
                        u.add_row_multiple(k, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                continue; // redo position k with the fattened row
            }
            if m.at(k, k).is_negative() {
                m.negate_row(k);
                u.negate_row(k);
            }
            k += 1;
        }
        let diag: Vec<BigInt> = (0..n).map(|i| m.at(i, i).clone()).collect();
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        Snf { diag, rank, u, v }
    }

    /// Rank over Q (equals the number of nonzero Smith invariants).
    pub fn rank(&self) -> usize {
        self.smith_normal_form().rank
    }

    /// A lattice basis of the left kernel {v in Z^rows : v * M = 0}: the
    /// bottom rows of U, since row_i(U) * M = d_i * row_i(V^{-1}).
    pub fn left_kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let snf = self.smith_normal_form();
        (snf.rank..self.rows).map(|i| snf.u.row(i)).collect()
    }

    /// Determinant by Bareiss fraction-free elimination (square only).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let Some(swap) = ((k + 1)..n).find(|&i| !m.at(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, swap);
                sign = -sign;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let val = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / &prev;
                    *m.at_mut(i, j) = val;
                }
                *m.at_mut(i, k) = BigInt::zero();
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
