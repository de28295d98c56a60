//! Gaussian elimination over any [`Field`], on row-major dense matrices.

use crate::error::{Error, Result};
use crate::scalar::Field;

pub type Dense<T> = Vec<Vec<T>>;

fn max_abs<T: Field>(m: &[Vec<T>]) -> f64 {
    m.iter()
        .flat_map(|r| r.iter())
        .map(|x| x.approx().abs())
        .fold(0.0, f64::max)
}

fn pick_pivot<T: Field>(m: &[Vec<T>], col: usize, from: usize, scale: f64) -> Option<usize> {
    if m.is_empty() {
        return None;
    }
    if m[from.min(m.len() - 1)][col].is_exact() {
        (from..m.len()).find(|&r| !m[r][col].is_zero())
    } else {
        let best = (from..m.len()).max_by(|&a, &b| {
            m[a][col]
                .approx()
                .abs()
                .total_cmp(&m[b][col].approx().abs())
        })?;
        if m[best][col].negligible(scale) {
            None
        } else {
            Some(best)
        }
    }
}

/// Reduced row echelon form and the pivot columns.
pub fn rref<T: Field>(a: &[Vec<T>]) -> (Dense<T>, Vec<usize>) {
    let mut m: Dense<T> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let scale = max_abs(&m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pick_pivot(&m, c, r, scale) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[r][j].clone();
                    m[i][j] = m[i][j].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank<T: Field>(a: &[Vec<T>]) -> usize {
    rref(a).1.len()
}

/// Basis of the right null space.
pub fn kernel<T: Field>(a: &[Vec<T>]) -> Dense<T> {
    let cols = a.first().map_or(0, |r| r.len());
    let (m, pivots) = rref(a);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![T::zero(); cols];
        v[free] = T::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn det<T: Field>(a: &[Vec<T>]) -> T {
    let n = a.len();
    let mut m: Dense<T> = a.to_vec();
    let scale = max_abs(&m);
    let mut d = T::one();
    for c in 0..n {
        let Some(p) = pick_pivot(&m, c, c, scale) else {
            return T::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        let piv = m[c][c].clone();
        d = d * piv.clone();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / piv.clone();
            for j in c..n {
                let v = m[c][j].clone();
                m[i][j] = m[i][j].clone() - f.clone() * v;
            }
        }
    }
    d
}

pub fn inverse<T: Field>(a: &[Vec<T>]) -> Result<Dense<T>> {
    let n = a.len();
    let aug: Dense<T> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve<T: Field>(a: &[Vec<T>], b: &[T]) -> Result<Vec<T>> {
    let n = a.len();
    let aug: Dense<T> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.len() != n || pivots.last() != Some(&(n - 1)) {
        return Err(Error::Singular);
    }
    Ok(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Some solution of a possibly rectangular system, or `None` when
/// inconsistent. Free variables are set to zero.
pub fn solve_any<T: Field>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let cols = a.first().map_or(0, |r| r.len());
    let aug: Dense<T> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][cols].clone();
    }
    Some(x)
}

pub fn mat_mul<T: Field>(a: &[Vec<T>], b: &[Vec<T>]) -> Dense<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(T::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())
                })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Dense<T> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn identity<T: Field>(n: usize) -> Dense<T> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};
    use crate::scalar::Rational;

    fn m(rows: &[&[i64]]) -> Dense<Rational> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    #[test]
    fn exact_elimination() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(det(&a), int(18));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity::<Rational>(3));
        let x = solve(&a, &[int(1), int(0), int(0)]).unwrap();
        assert_eq!(x[0], rat(11, 18));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&s), 1);
        assert_eq!(inverse(&s), Err(Error::Singular));
        let k = kernel(&s);
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
        assert!(solve_any(&s, &[int(1), int(3)]).is_none());
        assert_eq!(solve_any(&s, &[int(1), int(2)]), Some(vec![int(1), int(0)]));
    }

    #[test]
    fn float_elimination() {
        let a = vec![vec![1e-20, 1.0], vec![1.0, 1.0]];
        assert!((det(&a) + 1.0).abs() < 1e-12);
        let s = vec![vec![1.0, 2.0], vec![2.0, 4.0 + 1e-17]];
        assert_eq!(rank(&s), 1);
    }
}
