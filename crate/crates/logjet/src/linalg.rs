//! Exact dense linear algebra over the ground field.
//!
//! Plain Gaussian elimination — the matrices here are small (Jacobians of
//! jet presentations, relation matrices at one truncation order), so
//! clarity wins over asymptotics.

use crate::field::{Char, FieldElem};

/// Row-reduce in place; returns the pivot columns. The matrix may be empty.
fn row_reduce(m: &mut Vec<Vec<FieldElem>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for j in c..cols {
            m[r][j] = m[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let sub = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Rank of a matrix given as rows of field elements.
pub fn field_matrix_rank(matrix: &[Vec<FieldElem>]) -> usize {
    let mut m: Vec<Vec<FieldElem>> = matrix.to_vec();
    row_reduce(&mut m).len()
}

/// One particular solution x of A x = b, if the system is consistent.
pub fn solve(a: &[Vec<FieldElem>], b: &[FieldElem], ch: Char) -> Option<Vec<FieldElem>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<FieldElem>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    // Inconsistent iff some pivot lands in the augmented column.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![FieldElem::zero(ch); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

/// A basis of the kernel {x : A x = 0}, one vector per free column.
pub fn kernel_basis(a: &[Vec<FieldElem>], cols: usize, ch: Char) -> Vec<Vec<FieldElem>> {
    let mut m: Vec<Vec<FieldElem>> = a.to_vec();
    let pivots = row_reduce(&mut m);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![FieldElem::zero(ch); cols];
        v[free] = FieldElem::one(ch);
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElem {
        FieldElem::from_int(Char::Zero, n)
    }

    #[test]
    fn rank_of_singular_matrix() {
        let m = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(1), q(0), q(1)],
        ];
        assert_eq!(field_matrix_rank(&m), 2);
        assert_eq!(field_matrix_rank(&[]), 0);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let x = solve(&a, &[q(3), q(1)], Char::Zero).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let singular = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(&singular, &[q(0), q(1)], Char::Zero).is_none());
        // Underdetermined but consistent: any solution is fine.
        let x = solve(&singular, &[q(2), q(4)], Char::Zero).unwrap();
        assert_eq!(x[0].clone() + x[1].clone(), q(2));
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let a = vec![vec![q(1), q(2), q(3)]];
        let k = kernel_basis(&a, 3, Char::Zero);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot = v[0].clone() * q(1) + v[1].clone() * q(2) + v[2].clone() * q(3);
            assert!(dot.is_zero());
        }
    }
}
