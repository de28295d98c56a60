//! Integer vector sets, stored as columns.

use crate::error::{Error, Result};
use crate::linalg::dense;
use crate::scalar::Rational;

/// An n×N integer matrix given by its N columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    cols: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn from_columns(n: usize, cols: Vec<Vec<i64>>) -> Result<Self> {
        for c in &cols {
            if c.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.len(),
                });
            }
        }
        Ok(IntMatrix { n, cols })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: r.len(),
                });
            }
        }
        let cols = (0..ncols)
            .map(|j| rows.iter().map(|r| r[j]).collect())
            .collect();
        Ok(IntMatrix { n, cols })
    }

    pub fn identity(n: usize) -> Self {
        let cols = (0..n)
            .map(|j| (0..n).map(|i| i64::from(i == j)).collect())
            .collect();
        IntMatrix { n, cols }
    }

    pub fn nrows(&self) -> usize {
        self.n
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &[i64] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.cols
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| self.cols.iter().map(|c| c[i]).collect())
            .collect()
    }

    pub fn select(&self, idx: &[usize]) -> IntMatrix {
        IntMatrix {
            n: self.n,
            cols: idx.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    pub fn to_rational_rows(&self) -> Vec<Vec<Rational>> {
        self.rows()
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        dense::rank(&self.to_rational_rows())
    }

    /// Determinant of the square submatrix on the given columns.
    pub fn minor(&self, idx: &[usize]) -> Rational {
        dense::det(&self.select(idx).to_rational_rows())
    }

    /// Whether any two columns are proportional (including equal or
    /// opposite) or some column vanishes.
    pub fn has_proportional_columns(&self) -> bool {
        if self.cols.iter().any(|c| c.iter().all(|&v| v == 0)) {
            return true;
        }
        for a in 0..self.cols.len() {
            for b in a + 1..self.cols.len() {
                let (x, y) = (&self.cols[a], &self.cols[b]);
                let parallel = (0..self.n).all(|i| {
                    (i..self.n).all(|j| {
                        i128::from(x[i]) * i128::from(y[j]) == i128::from(x[j]) * i128::from(y[i])
                    })
                });
                if parallel {
                    return true;
                }
            }
        }
        false
    }
}

/// All k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::int;

    #[test]
    fn basics() {
        let y =
            IntMatrix::from_rows(&[vec![1, 0, 0, 5], vec![0, 1, 0, 7], vec![0, 0, 1, 8]]).unwrap();
        assert_eq!(y.ncols(), 4);
        assert_eq!(y.col(3), &[5, 7, 8]);
        assert_eq!(y.rank(), 3);
        assert_eq!(y.minor(&[0, 1, 3]), int(8));
        assert!(!y.has_proportional_columns());
        let p = IntMatrix::from_columns(2, vec![vec![1, 2], vec![-2, -4]]).unwrap();
        assert!(p.has_proportional_columns());
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }
}
