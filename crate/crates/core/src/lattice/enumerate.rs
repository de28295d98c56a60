//! Fincke–Pohst enumeration of integer vectors in an ellipsoid yᵗQy ≤ B.
//!
//! Rational forms are enumerated with exact LDLᵗ data so the coordinate
//! ranges are certified; other forms fall back to floats with an inflated
//! bound and the caller filters the candidates.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::scalar::Rational;

/// Outcome of a ball enumeration.
pub struct Ball {
    pub vectors: Vec<Vec<i64>>,
    /// False when some coordinate range was clipped by the cap.
    pub complete: bool,
}

/// `Q = Uᵗ D U` with `U` unit upper triangular: returns `(d, m)` such that
/// `yᵗQy = Σ d_i (y_i + Σ_{j>i} m[i][j] y_j)²`.
fn ldl_exact(q: &SymMatrix<Rational>) -> Result<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let n = q.dim();
    let mut d = vec![Rational::zero(); n];
    let mut m = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        let mut di = q.get(i, i).clone();
        for k in 0..i {
            di -= &d[k] * &m[k][i] * &m[k][i];
        }
        if !di.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            let mut v = q.get(i, j).clone();
            for k in 0..i {
                v -= &d[k] * &m[k][i] * &m[k][j];
            }
            m[i][j] = v / &di;
        }
        d[i] = di;
    }
    Ok((d, m))
}

fn ldl_f64(q: &SymMatrix<f64>) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = q.dim();
    let mut d = vec![0.0; n];
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        let mut di = *q.get(i, i);
        for k in 0..i {
            di -= d[k] * m[k][i] * m[k][i];
        }
        if di <= 0.0 || !di.is_finite() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            let mut v = *q.get(i, j);
            for k in 0..i {
                v -= d[k] * m[k][i] * m[k][j];
            }
            m[i][j] = v / di;
        }
        d[i] = di;
    }
    Ok((d, m))
}

fn to_i64(x: &num_bigint::BigInt) -> i64 {
    x.to_i64().unwrap_or(if x.is_negative() {
        i64::MIN / 2
    } else {
        i64::MAX / 2
    })
}

/// Integer range of `k` with `d (k + c)² ≤ r`, exact.
fn exact_range(d: &Rational, c: &Rational, r: &Rational) -> Option<(i64, i64)> {
    if r.is_negative() {
        return None;
    }
    let ok = |k: i64| {
        let t = Rational::from_integer(k.into()) + c;
        d * &t * &t <= *r
    };
    let center = to_i64(&(-c).round().to_integer());
    if !ok(center) {
        return None;
    }
    let s = (r / d).to_f64().unwrap_or(f64::MAX).max(0.0).sqrt();
    let cf = c.to_f64().unwrap_or(0.0);
    let mut hi = ((-cf + s).floor() as i64).max(center);
    while ok(hi.saturating_add(1)) {
        hi += 1;
    }
    while !ok(hi) {
        hi -= 1;
    }
    let mut lo = ((-cf - s).ceil() as i64).min(center);
    while ok(lo.saturating_sub(1)) {
        lo -= 1;
    }
    while !ok(lo) {
        lo += 1;
    }
    Some((lo, hi))
}

/// All integer vectors (both signs, including 0) with `yᵗQy ≤ bound`.
pub fn ball_exact(q: &SymMatrix<Rational>, bound: &Rational, cap: i64) -> Result<Ball> {
    let n = q.dim();
    let (d, m) = ldl_exact(q)?;
    let mut out = Vec::new();
    let mut complete = true;
    let mut y = vec![0i64; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        rem: Rational,
        y: &mut Vec<i64>,
        d: &[Rational],
        m: &[Vec<Rational>],
        cap: i64,
        complete: &mut bool,
        out: &mut Vec<Vec<i64>>,
    ) {
        let n = y.len();
        let mut c = Rational::zero();
        for j in i + 1..n {
            if y[j] != 0 {
                c += &m[i][j] * Rational::from_integer(y[j].into());
            }
        }
        let Some((mut lo, mut hi)) = exact_range(&d[i], &c, &rem) else {
            return;
        };
        if lo < -cap || hi > cap {
            *complete = false;
            lo = lo.max(-cap);
            hi = hi.min(cap);
        }
        for k in lo..=hi {
            y[i] = k;
            let t = Rational::from_integer(k.into()) + &c;
            let r = &rem - &d[i] * &t * &t;
            if i == 0 {
                out.push(y.clone());
            } else {
                rec(i - 1, r, y, d, m, cap, complete, out);
            }
        }
        y[i] = 0;
    }
    if n == 0 {
        return Ok(Ball {
            vectors: vec![Vec::new()],
            complete,
        });
    }
    rec(
        n - 1,
        bound.clone(),
        &mut y,
        &d,
        &m,
        cap,
        &mut complete,
        &mut out,
    );
    Ok(Ball {
        vectors: out,
        complete,
    })
}

/// Float enumeration; the bound should already be inflated by the caller.
pub fn ball_f64(q: &SymMatrix<f64>, bound: f64, cap: i64) -> Result<Ball> {
    let n = q.dim();
    let (d, m) = ldl_f64(q)?;
    let mut out = Vec::new();
    let mut complete = true;
    let mut y = vec![0i64; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        rem: f64,
        y: &mut Vec<i64>,
        d: &[f64],
        m: &[Vec<f64>],
        cap: i64,
        complete: &mut bool,
        out: &mut Vec<Vec<i64>>,
    ) {
        let n = y.len();
        let c: f64 = (i + 1..n).map(|j| m[i][j] * y[j] as f64).sum();
        if rem < 0.0 {
            return;
        }
        let s = (rem / d[i]).sqrt();
        let mut lo = (-c - s).ceil() as i64;
        let mut hi = (-c + s).floor() as i64;
        if lo < -cap || hi > cap {
            *complete = false;
            lo = lo.max(-cap);
            hi = hi.min(cap);
        }
        for k in lo..=hi {
            y[i] = k;
            let t = k as f64 + c;
            let r = rem - d[i] * t * t;
            if i == 0 {
                out.push(y.clone());
            } else {
                rec(i - 1, r, y, d, m, cap, complete, out);
            }
        }
        y[i] = 0;
    }
    if n == 0 {
        return Ok(Ball {
            vectors: vec![Vec::new()],
            complete,
        });
    }
    rec(n - 1, bound, &mut y, &d, &m, cap, &mut complete, &mut out);
    Ok(Ball {
        vectors: out,
        complete,
    })
}

/// First nonzero coordinate positive.
pub fn is_representative(y: &[i64]) -> bool {
    y.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0)
}

/// Analytic coordinate bound `|y_i| ≤ sqrt(B (Q⁻¹)_ii)` rounded up.
pub fn coordinate_bound(q: &SymMatrix<Rational>, bound: &Rational) -> Result<i64> {
    let inv = crate::linalg::inverse(q)?;
    let mut best = 0i64;
    for i in 0..q.dim() {
        let v = (bound * inv.get(i, i)).to_f64().unwrap_or(f64::MAX);
        best = best.max(v.max(0.0).sqrt().ceil() as i64 + 1);
    }
    Ok(best)
}
