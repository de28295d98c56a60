//! Independent oracles shared by the integration tests. Nothing here calls
//! into the routines being checked.

#![allow(dead_code, clippy::needless_range_loop)]

use minflat_core::linalg::{IntMatrix, SymMatrix};
use minflat_core::scalar::Rational;
use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap()
}

/// Leading principal minors, exactly.
pub fn is_pd_exact(q: &SymMatrix<Rational>) -> bool {
    let n = q.dim();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| q.get(i, j).clone()).collect())
        .collect();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &a[k][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    true
}

/// Random symmetric rational matrix with |numerators| ≤ 5 and denominators
/// ≤ 4, redrawn until positive definite.
pub fn random_pd(rng: &mut ChaCha8Rng, n: usize) -> SymMatrix<Rational> {
    loop {
        let q = SymMatrix::from_fn(n, |i, j| {
            let num = if i == j {
                rng.random_range(1..=5)
            } else {
                rng.random_range(-5..=5)
            };
            r(num, rng.random_range(1..=4))
        });
        if is_pd_exact(&q) {
            return q;
        }
    }
}

pub fn quad(q: &SymMatrix<Rational>, y: &[i64]) -> Rational {
    let n = y.len();
    let mut s = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            s += q.get(i, j) * Rational::from_integer((y[i] * y[j]).into());
        }
    }
    s
}

/// Every y in the box |y_i| ≤ b with yᵗQy = target and first nonzero entry
/// positive, in lexicographic order. Works in integers after clearing
/// denominators.
pub fn brute_force_norm(q: &SymMatrix<Rational>, target: &Rational, b: i64) -> Vec<Vec<i64>> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let n = q.dim();
    let mut l = target.denom().clone();
    for i in 0..n {
        for j in 0..n {
            l = l.lcm(q.get(i, j).denom());
        }
    }
    let scaled = |x: &Rational| {
        (x * Rational::from_integer(l.clone()))
            .to_integer()
            .to_i128()
            .unwrap()
    };
    let qi: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| scaled(q.get(i, j))).collect())
        .collect();
    let t = scaled(target);
    let mut out = Vec::new();
    let mut y = vec![-b; n];
    loop {
        if y.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0) {
            let mut s = 0i128;
            for i in 0..n {
                for j in 0..n {
                    s += qi[i][j] * (y[i] * y[j]) as i128;
                }
            }
            if s == t {
                out.push(y.clone());
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                out.sort();
                return out;
            }
            k -= 1;
            if y[k] < b {
                y[k] += 1;
                break;
            }
            y[k] = -b;
        }
    }
}

/// A box that contains the ellipsoid yᵗQy ≤ t: |y_i| ≤ √(t (Q⁻¹)_ii).
pub fn box_bound(q: &SymMatrix<Rational>, target: &Rational) -> i64 {
    let m = DMatrix::from_fn(q.dim(), q.dim(), |i, j| to_f64(q.get(i, j)));
    let inv = m.try_inverse().unwrap();
    (0..q.dim())
        .map(|i| (to_f64(target) * inv[(i, i)]).sqrt().floor() as i64 + 1)
        .max()
        .unwrap()
}

/// Random integer columns with entries in [−k, k], rank n.
pub fn random_y(rng: &mut ChaCha8Rng, n: usize, count: usize, k: i64) -> IntMatrix {
    loop {
        let cols: Vec<Vec<i64>> = (0..count)
            .map(|_| (0..n).map(|_| rng.random_range(-k..=k)).collect())
            .collect();
        if cols.iter().any(|c| c.iter().all(|&v| v == 0)) {
            continue;
        }
        let y = IntMatrix::from_columns(n, cols).unwrap();
        if y.rank() == n && !y.has_proportional_columns() {
            return y;
        }
    }
}

/// `count` random nonzero integer columns with entries in [−k, k], no rank
/// condition.
pub fn random_columns(rng: &mut ChaCha8Rng, n: usize, count: usize, k: i64) -> Vec<Vec<i64>> {
    (0..count)
        .map(|_| loop {
            let c: Vec<i64> = (0..n).map(|_| rng.random_range(-k..=k)).collect();
            if c.iter().any(|&v| v != 0) {
                break c;
            }
        })
        .collect()
}

pub fn outer_sum(y: &IntMatrix, w: &[f64]) -> DMatrix<f64> {
    let n = y.nrows();
    let mut p = DMatrix::zeros(n, n);
    for (c, &l) in y.columns().iter().zip(w) {
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] += l * (c[i] * c[j]) as f64;
            }
        }
    }
    p
}

/// Root of an f64 polynomial (constant term first) in [lo, hi] by bisection.
pub fn bisect(p: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let f = |x: f64| p.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let flo = f(lo);
    assert!(flo * f(hi) < 0.0, "no sign change");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).amax()
}

pub fn one() -> Rational {
    Rational::one()
}
