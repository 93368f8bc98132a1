//! Exact linear algebra over the rationals.
//!
//! Entries are `Ratio<i128>` and every operation is overflow-checked. Ranks are
//! computed by fraction-free elimination on integer-scaled rows.
//! Overflow is treated as an invariant violation and panics with a clear
//! message; at the scale handled here all structure constants are 0/±1.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Zero};

pub type Q = Ratio<i128>;

const OVERFLOW: &str = "exact rational arithmetic overflowed i128";

pub(crate) fn add(a: &Q, b: &Q) -> Q {
    a.checked_add(b).expect(OVERFLOW)
}

pub(crate) fn sub(a: &Q, b: &Q) -> Q {
    a.checked_sub(b).expect(OVERFLOW)
}

pub(crate) fn mul(a: &Q, b: &Q) -> Q {
    a.checked_mul(b).expect(OVERFLOW)
}

fn div(a: &Q, b: &Q) -> Q {
    a.checked_div(b).expect(OVERFLOW)
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `self · other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = add(out.get(i, j), &mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = add(&acc, &mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| sub(a, b)).collect(),
        }
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(columns: &[Vec<Q>], rows: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, *v);
                }
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        rank_fraction_free(self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect(), self.cols)
    }
}

/// Reduced row echelon form of a list of row vectors of width `cols`.
#[derive(Debug, Clone)]
pub struct Rref {
    /// Nonzero reduced rows, pivot entry 1.
    pub rows: Vec<Vec<Q>>,
    /// Pivot column of each row, increasing.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Rref {
    pub fn new(mut rows: Vec<Vec<Q>>, cols: usize) -> Rref {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = div(&Q::one(), &rows[r][c]);
            for v in rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = mul(v, &inv);
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c];
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if !pv.is_zero() {
                        *v = sub(v, &mul(&factor, pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Rref { rows, pivots, cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of the solution space of `rows · v = 0`, one vector per free column
    /// with a 1 in that column and 0 in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        v[p] = -row[f];
                    }
                }
                v
            })
            .collect()
    }
}

/// Coordinates of `v` in a nullspace basis produced by [`Rref::nullspace`]:
/// simply the entries of `v` at the free columns.
pub fn nullspace_coords(v: &[Q], free: &[usize]) -> Vec<Q> {
    free.iter().map(|&f| v[f]).collect()
}

/// Rank by fraction-free Gaussian elimination on rows scaled to integers.
///
/// Each elimination step replaces `r_i` by `p·r_i − a·r_pivot` and then divides
/// the row by its content, so entries stay integral and small.
pub fn rank_fraction_free(rows: Vec<Vec<Q>>, cols: usize) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .map(|r| {
            let l = r.iter().fold(1i128, |acc, v| acc.lcm(v.denom()));
            r.iter().map(|v| v.numer().checked_mul(&(l / v.denom())).expect(OVERFLOW)).collect()
        })
        .collect();
    let n = m.len();
    let mut rank = 0;
    for c in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot_row = m[rank].clone();
        let pivot = pivot_row[c];
        for row in m.iter_mut().skip(rank + 1) {
            let a = row[c];
            if a == 0 {
                continue;
            }
            for j in c..cols {
                row[j] = pivot
                    .checked_mul(row[j])
                    .and_then(|x| a.checked_mul(pivot_row[j]).and_then(|y| x.checked_sub(y)))
                    .expect(OVERFLOW);
            }
            let g = row[c..].iter().fold(0i128, |acc, &v| acc.gcd(&v));
            if g > 1 {
                for v in row[c..].iter_mut() {
                    *v /= g;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn rank_small() {
        let m = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(2), q(4)]], 2);
        assert_eq!(m.rank(), 1);
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(2, 3).rank(), 0);
    }

    #[test]
    fn nullspace_is_kernel() {
        let rows = vec![vec![q(1), q(1), q(0), q(-1)], vec![q(0), q(2), q(1), q(1)]];
        let r = Rref::new(rows.clone(), 4);
        let ns = r.nullspace();
        assert_eq!(ns.len(), 2);
        let m = Matrix::from_rows(rows, 4);
        for v in ns {
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }
}
