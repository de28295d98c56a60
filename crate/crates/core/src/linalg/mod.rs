//! Symmetric matrices with the trace inner product, integer vector sets,
//! and the positive-definiteness, inverse, log-determinant and square-root
//! primitives used by the optimizers.

pub mod dense;
pub mod int;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational, Scalar};

pub use dense::Dense;
pub use int::IntMatrix;

/// An element of Sym_n, stored as the packed upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

fn packed(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

impl<T: Clone> SymMatrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                data.push(f(i, j));
            }
        }
        SymMatrix { n, data }
    }

    /// Builds from packed upper-triangular entries `(0,0), (0,1), …, (n-1,n-1)`.
    pub fn from_packed(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * (n + 1) / 2 {
            return Err(Error::DimensionMismatch {
                expected: n * (n + 1) / 2,
                found: data.len(),
            });
        }
        Ok(SymMatrix { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[packed(self.n, i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let k = packed(self.n, i, j);
        self.data[k] = v;
    }

    pub fn packed(&self) -> &[T] {
        &self.data
    }

    pub fn to_dense(&self) -> Dense<T> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> SymMatrix<U> {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Field> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(d: Vec<T>) -> Self {
        let n = d.len();
        Self::from_fn(n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    /// Symmetric matrix from rows; fails when the rows are not symmetric.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Parse(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j].clone()))
    }

    /// Symmetric part of a square dense matrix.
    pub fn symmetrize(rows: &[Vec<T>]) -> Self {
        let half = T::one() / (T::one() + T::one());
        Self::from_fn(rows.len(), |i, j| {
            if i == j {
                rows[i][i].clone()
            } else {
                (rows[i][j].clone() + rows[j][i].clone()) * half.clone()
            }
        })
    }

    /// The rank-one matrix `y yᵗ`.
    pub fn outer(y: &[i64]) -> Self {
        let r = |v: i64| T::from_rational(&Rational::from_integer(v.into()));
        Self::from_fn(y.len(), |i, j| r(y[i] * y[j]))
    }

    /// `a bᵗ + b aᵗ`.
    pub fn sym_outer(a: &[i64], b: &[i64]) -> Self {
        let r = |v: i64| T::from_rational(&Rational::from_integer(v.into()));
        Self::from_fn(a.len(), |i, j| r(a[i] * b[j] + b[i] * a[j]))
    }

    fn zip(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        SymMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|a| a.clone() * k.clone())
    }

    /// `yᵗ S y` for an integer vector.
    pub fn quad_form(&self, y: &[i64]) -> T {
        let mut acc = T::zero();
        for i in 0..self.n {
            if y[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                if y[j] == 0 {
                    continue;
                }
                let c = T::from_rational(&Rational::from_integer((y[i] * y[j]).into()));
                acc = acc + self.get(i, j).clone() * c;
            }
        }
        acc
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.approx().abs())
            .fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> SymMatrix<f64> {
        self.map(|x| x.approx())
    }

    /// Coordinates in the orthonormal-up-to-scaling basis of Sym_n used by
    /// the optimizers: diagonal entries, then off-diagonals doubled so that
    /// the Euclidean dot with [`Self::packed`] is the trace inner product.
    pub fn weighted_coords(&self) -> Vec<T> {
        let two = T::one() + T::one();
        let mut out = Vec::with_capacity(self.data.len());
        for i in 0..self.n {
            for j in i..self.n {
                let v = self.get(i, j).clone();
                out.push(if i == j { v } else { v * two.clone() });
            }
        }
        out
    }
}

impl SymMatrix<Rational> {
    pub fn to_scalar(&self) -> SymMatrix<Scalar> {
        self.map(|r| Scalar::Rational(r.clone()))
    }
}

impl SymMatrix<Scalar> {
    /// The rational image when every entry is rational.
    pub fn to_rational(&self) -> Option<SymMatrix<Rational>> {
        let data: Option<Vec<Rational>> =
            self.data.iter().map(|s| s.as_rational().cloned()).collect();
        data.map(|data| SymMatrix { n: self.n, data })
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(|s| s.is_exact())
    }
}

impl SymMatrix<f64> {
    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| *self.get(i, j))
    }

    pub fn from_nalgebra(m: &DMatrix<f64>) -> Self {
        Self::from_fn(m.nrows(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
    }
}

/// `tr(S1 S2)`.
pub fn trace_inner<T: Field>(a: &SymMatrix<T>, b: &SymMatrix<T>) -> Result<T> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    let two = T::one() + T::one();
    let mut acc = T::zero();
    for i in 0..a.n {
        for j in i..a.n {
            let p = a.get(i, j).clone() * b.get(i, j).clone();
            acc = acc + if i == j { p } else { p * two.clone() };
        }
    }
    Ok(acc)
}

/// Outcome of a positive-definiteness test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    Yes,
    No,
    /// A floating pivot fell within tolerance of zero.
    Indeterminate,
}

/// Relative pivot tolerance for floating matrices.
pub const PD_TOL: f64 = 1e-12;

/// Leading-minor test, exact for rational and algebraic entries (signs are
/// certified) and pivoted LDLᵗ with relative tolerance for floats.
pub fn definiteness<T: Field>(s: &SymMatrix<T>) -> Definiteness {
    let n = s.n;
    if n == 0 {
        return Definiteness::Yes;
    }
    if s.get(0, 0).is_exact() && s.data.iter().all(|x| x.is_exact()) {
        // unpivoted elimination: pivot k is the ratio of leading minors
        let mut m = s.to_dense();
        for k in 0..n {
            let p = m[k][k].clone();
            if p.sign() <= 0 {
                return Definiteness::No;
            }
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let f = m[i][k].clone() / p.clone();
                for j in k..n {
                    let v = m[k][j].clone();
                    m[i][j] = m[i][j].clone() - f.clone() * v;
                }
            }
        }
        Definiteness::Yes
    } else {
        float_definiteness(&s.to_f64(), PD_TOL)
    }
}

/// Diagonally pivoted LDLᵗ on a float matrix.
pub fn float_definiteness(s: &SymMatrix<f64>, tol: f64) -> Definiteness {
    let n = s.n;
    let mut m = s.to_dense();
    let scale = (0..n).map(|i| m[i][i].abs()).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return if n == 0 {
            Definiteness::Yes
        } else {
            Definiteness::No
        };
    }
    let thr = tol * scale;
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut indeterminate = false;
    while !remaining.is_empty() {
        let (pos, &k) = remaining
            .iter()
            .enumerate()
            .max_by(|a, b| m[*a.1][*a.1].total_cmp(&m[*b.1][*b.1]))
            .unwrap();
        let p = m[k][k];
        if p < -thr {
            return Definiteness::No;
        }
        if p <= thr {
            indeterminate = true;
            // everything left is within tolerance of a singular matrix
            if remaining.iter().any(|&i| m[i][i] < -thr) {
                return Definiteness::No;
            }
            break;
        }
        remaining.remove(pos);
        for &i in &remaining {
            let f = m[i][k] / p;
            for &j in &remaining {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    if indeterminate {
        Definiteness::Indeterminate
    } else {
        Definiteness::Yes
    }
}

pub fn is_positive_definite<T: Field>(s: &SymMatrix<T>) -> bool {
    definiteness(s) == Definiteness::Yes
}

pub fn inverse<T: Field>(s: &SymMatrix<T>) -> Result<SymMatrix<T>> {
    let inv = dense::inverse(&s.to_dense())?;
    Ok(SymMatrix::symmetrize(&inv))
}

pub fn det<T: Field>(s: &SymMatrix<T>) -> T {
    dense::det(&s.to_dense())
}

/// `ln det S` via Cholesky of the float image.
pub fn logdet<T: Field>(s: &SymMatrix<T>) -> Result<f64> {
    let m = s.to_f64().to_nalgebra();
    let ch = m.cholesky().ok_or(Error::NotPositiveDefinite)?;
    Ok(2.0 * ch.l().diagonal().iter().map(|d| d.ln()).sum::<f64>())
}

/// Symmetric square root of a PSD matrix; eigenvalues in `[-tol, 0)` are
/// clamped to zero.
pub fn psd_sqrt(s: &SymMatrix<f64>, tol: f64) -> Result<SymMatrix<f64>> {
    let eig = SymmetricEigen::new(s.to_nalgebra());
    let mut d = eig.eigenvalues.clone();
    for v in d.iter_mut() {
        if *v < -tol {
            return Err(Error::NegativeEigenvalue(*v));
        }
        *v = v.max(0.0).sqrt();
    }
    let r = &eig.eigenvectors * DMatrix::from_diagonal(&d) * eig.eigenvectors.transpose();
    Ok(SymMatrix::from_nalgebra(&r))
}

/// Smallest eigenvalue of a float symmetric matrix.
pub fn min_eigenvalue(s: &SymMatrix<f64>) -> f64 {
    SymmetricEigen::new(s.to_nalgebra())
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};

    fn q(rows: &[&[i64]]) -> SymMatrix<Rational> {
        let r: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        SymMatrix::from_rows(&r).unwrap()
    }

    #[test]
    fn trace_inner_examples() {
        let i3 = SymMatrix::<Rational>::identity(3);
        assert_eq!(trace_inner(&i3, &i3).unwrap(), int(3));
        let d = q(&[&[1, 0], &[0, 2]]);
        let o = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(trace_inner(&d, &o).unwrap(), int(0));
        assert!(trace_inner(&d, &i3).is_err());
        let a = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let ai = inverse(&a).unwrap();
        assert_eq!(trace_inner(&a, &ai).unwrap(), int(3));
    }

    #[test]
    fn definiteness_examples() {
        assert!(is_positive_definite(&SymMatrix::<Rational>::identity(3)));
        assert!(!is_positive_definite(&q(&[&[1, 0], &[0, -1]])));
        let h = rat(-1, 2);
        let deg = SymMatrix::from_fn(3, |i, j| if i == j { int(1) } else { h.clone() });
        assert_eq!(det(&deg), int(0));
        assert_eq!(definiteness(&deg), Definiteness::No);
        assert_eq!(definiteness(&deg.to_f64()), Definiteness::Indeterminate);
        let neg = SymMatrix::from_fn(2, |i, j| if i == j { 1.0 } else { 2.0 });
        assert_eq!(definiteness(&neg), Definiteness::No);
    }

    #[test]
    fn inverse_logdet_sqrt() {
        let d = q(&[&[1, 0], &[0, 4]]);
        assert_eq!(
            inverse(&d).unwrap(),
            SymMatrix::diagonal(vec![int(1), rat(1, 4)])
        );
        assert!(inverse(&q(&[&[1, 1], &[1, 1]])).is_err());
        assert_eq!(logdet(&SymMatrix::<f64>::identity(4)).unwrap(), 0.0);
        let e = std::f64::consts::E;
        assert!((logdet(&SymMatrix::diagonal(vec![e, e])).unwrap() - 2.0).abs() < 1e-15);
        assert!(logdet(&q(&[&[1, 0], &[0, -1]])).is_err());
        let r = psd_sqrt(&SymMatrix::diagonal(vec![4.0, 9.0]), 1e-12).unwrap();
        assert!((r.get(0, 0) - 2.0).abs() < 1e-14 && (r.get(1, 1) - 3.0).abs() < 1e-14);
        assert!(psd_sqrt(&SymMatrix::diagonal(vec![1.0, -1.0]), 1e-12).is_err());
    }
}
