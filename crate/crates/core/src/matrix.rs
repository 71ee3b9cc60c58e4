//! Dense matrices over arbitrary-precision rationals with exact Gaussian
//! elimination.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix from rows of equal length; `cols` fixes the width even
    /// when there are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> ExactMatrix {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            entries.extend(row);
        }
        ExactMatrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> ExactMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        ExactMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Stacks the rows of `other` below those of `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduces to reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(pivot_row, found);
            let inv = self.get(pivot_row, col).recip();
            for c in col..self.cols {
                let v = self.get(pivot_row, c) * &inv;
                self.set(pivot_row, c, v);
            }
            for r in 0..self.rows {
                if r == pivot_row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let delta = &factor * self.get(pivot_row, c);
                    if !delta.is_zero() {
                        let v = self.get(r, c) - delta;
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let mut reduced = self.clone();
        let pivots = reduced.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[free] = BigRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(r, free).clone();
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : y · self = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<BigRational>> {
        self.transpose().kernel()
    }

    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = BigRational::one();
        for col in 0..m.cols {
            let Some(found) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return BigRational::zero();
            };
            if found != col {
                m.swap_rows(found, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..m.rows {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) / &pivot;
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// `self · v`.
    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn rank_and_kernel() {
        let m = ExactMatrix::from_integers(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&ker[0]).iter().all(Zero::is_zero));
        let left = m.left_kernel();
        assert_eq!(left.len(), 1);
        assert!(m.transpose().apply(&left[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn determinants() {
        assert_eq!(ExactMatrix::identity(4).determinant(), q(1));
        let m = ExactMatrix::from_integers(&[vec![0, 1], vec![1, -1]]);
        assert_eq!(m.determinant(), q(-1));
        let singular = ExactMatrix::from_integers(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.determinant(), q(0));
        let m3 = ExactMatrix::from_integers(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m3.determinant(), q(0));
        let m3 = ExactMatrix::from_integers(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]);
        // 2(6-2) - 0 + 1(1-3) = 6
        assert_eq!(m3.determinant(), q(6));
    }

    #[test]
    fn empty_shapes() {
        let m = ExactMatrix::zeros(0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().len(), 3);
        let stacked = m.vstack(&ExactMatrix::from_integers(&[vec![1, 1, 1]]));
        assert_eq!(stacked.rank(), 1);
    }

    #[test]
    fn rational_pivots() {
        let m = ExactMatrix::from_integers(&[vec![3, 1], vec![1, 3]]);
        let mut r = m.clone();
        assert_eq!(r.rref(), vec![0, 1]);
        assert_eq!(r, ExactMatrix::identity(2));
        assert_eq!(m.determinant(), q(8));
    }
}
