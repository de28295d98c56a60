//! Maximization of ln det over the convex hull C_Y of the rank-one matrices
//! Y_j Y_jᵗ: Frank–Wolfe with away steps, then Newton on the identified
//! support.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, SymMatrix};
use crate::scalar::Field;

/// A convex combination P = Σ λ_j Y_j Y_jᵗ.
#[derive(Clone, Debug, PartialEq)]
pub struct HullPoint<T> {
    pub y: IntMatrix,
    pub lambda: Vec<T>,
    pub p: SymMatrix<T>,
}

impl<T: Field> HullPoint<T> {
    /// Validates λ ≥ 0 and Σλ = 1 (exactly for exact scalars, to 1e-12
    /// otherwise) and computes P.
    pub fn new(y: IntMatrix, lambda: Vec<T>) -> Result<Self> {
        if lambda.len() != y.ncols() {
            return Err(Error::DimensionMismatch {
                expected: y.ncols(),
                found: lambda.len(),
            });
        }
        let mut sum = T::zero();
        for l in &lambda {
            if l.sign() < 0 && !(l.negligible(1.0) && !l.is_exact()) {
                return Err(Error::InvalidParameters("negative convex weight".into()));
            }
            sum = sum + l.clone();
        }
        let dev = sum - T::one();
        let ok = if dev.is_exact() {
            dev.is_zero()
        } else {
            dev.approx().abs() <= 1e-12
        };
        if !ok {
            return Err(Error::InvalidParameters(
                "convex weights do not sum to 1".into(),
            ));
        }
        let p = combine(&y, &lambda);
        Ok(HullPoint { y, lambda, p })
    }

    /// Indices with nonzero weight.
    pub fn support(&self) -> Vec<usize> {
        (0..self.lambda.len())
            .filter(|&j| !self.lambda[j].is_zero())
            .collect()
    }
}

/// Σ λ_j Y_j Y_jᵗ.
pub fn combine<T: Field>(y: &IntMatrix, lambda: &[T]) -> SymMatrix<T> {
    let mut p = SymMatrix::<T>::zeros(y.nrows());
    for (j, l) in lambda.iter().enumerate() {
        if !l.is_zero() {
            p = p.add(&SymMatrix::<T>::outer(y.col(j)).scale(l));
        }
    }
    p
}

fn col_vec(y: &IntMatrix, j: usize) -> DVector<f64> {
    DVector::from_iterator(y.nrows(), y.col(j).iter().map(|&v| v as f64))
}

fn assemble(ys: &[DVector<f64>], lambda: &[f64]) -> DMatrix<f64> {
    let n = ys[0].len();
    let mut p = DMatrix::zeros(n, n);
    for (y, &l) in ys.iter().zip(lambda) {
        if l != 0.0 {
            p += y * y.transpose() * l;
        }
    }
    p
}

fn leverages(ys: &[DVector<f64>], pinv: &DMatrix<f64>) -> Vec<f64> {
    ys.iter()
        .map(|y| (y.transpose() * pinv * y)[(0, 0)])
        .collect()
}

/// Newton on the face spanned by `support`: maximize ln det Σ λ_j M_j with
/// Σ λ_j = 1. Weights that hit zero leave the support.
fn polish(ys: &[DVector<f64>], lambda: &mut [f64], support: &mut Vec<usize>, n: f64, iters: usize) {
    for _ in 0..iters {
        let p = assemble(ys, lambda);
        let Some(ch) = p.clone().cholesky() else {
            return;
        };
        let pinv = ch.inverse();
        let k = support.len();
        let w: Vec<f64> = support
            .iter()
            .map(|&j| (ys[j].transpose() * &pinv * &ys[j])[(0, 0)])
            .collect();
        let spread = w.iter().map(|x| (x - n).abs()).fold(0.0, f64::max);
        if spread <= 1e-14 * n {
            return;
        }
        // KKT system [H 1; 1ᵗ 0][d; ν] = [-g; 0] with H_jk = -(y_jᵗ P⁻¹ y_k)²
        let mut kkt = DMatrix::zeros(k + 1, k + 1);
        let mut rhs = DVector::zeros(k + 1);
        for a in 0..k {
            for b in 0..k {
                let c = (ys[support[a]].transpose() * &pinv * &ys[support[b]])[(0, 0)];
                kkt[(a, b)] = -c * c;
            }
            kkt[(a, k)] = 1.0;
            kkt[(k, a)] = 1.0;
            rhs[a] = -w[a];
        }
        let svd = kkt.svd(true, true);
        let Ok(sol) = svd.solve(&rhs, 1e-12) else {
            return;
        };
        let d: Vec<f64> = (0..k).map(|a| sol[a]).collect();
        let mut alpha: f64 = 1.0;
        let mut blocking = None;
        for a in 0..k {
            if d[a] < 0.0 {
                let lim = -lambda[support[a]] / d[a];
                if lim < alpha {
                    alpha = lim;
                    blocking = Some(a);
                }
            }
        }
        let f0 = p.determinant().ln();
        let mut accepted = false;
        let mut step = alpha;
        while step > 1e-12 {
            let mut cand = lambda.to_vec();
            for a in 0..k {
                cand[support[a]] += step * d[a];
            }
            for a in 0..k {
                if cand[support[a]] < 0.0 {
                    cand[support[a]] = 0.0;
                }
            }
            let pc = assemble(ys, &cand);
            if let Some(chc) = pc.cholesky() {
                let fc = 2.0 * chc.l().diagonal().iter().map(|x| x.ln()).sum::<f64>();
                if fc >= f0 - 1e-15 {
                    lambda.copy_from_slice(&cand);
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            return;
        }
        if step == alpha {
            if let Some(a) = blocking {
                lambda[support[a]] = 0.0;
            }
        }
        support.retain(|&j| lambda[j] > 0.0);
        let s: f64 = lambda.iter().sum();
        for l in lambda.iter_mut() {
            *l /= s;
        }
    }
}

/// Maximizes ln det over C_Y. `max_iter` bounds the Newton polish rounds;
/// the Frank–Wolfe phase runs for up to 50·max_iter steps.
pub fn maximize_logdet_c(y: &IntMatrix, tol: f64, max_iter: usize) -> Result<HullPoint<f64>> {
    let n = y.nrows();
    let nn = n as f64;
    let count = y.ncols();
    if count == 0 || y.rank() < n {
        return Err(Error::HullNotPositiveDefinite);
    }
    let ys: Vec<DVector<f64>> = (0..count).map(|j| col_vec(y, j)).collect();
    let mut lambda = vec![1.0 / count as f64; count];
    let inverse = |l: &[f64]| -> Result<DMatrix<f64>> {
        assemble(&ys, l)
            .cholesky()
            .map(|c| c.inverse())
            .ok_or(Error::HullNotPositiveDefinite)
    };
    // Frank–Wolfe with away steps
    for _ in 0..50 * max_iter.max(1) {
        let pinv = inverse(&lambda)?;
        let w = leverages(&ys, &pinv);
        let (jp, &wp) = w
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        if wp - nn <= 1e-6 {
            break;
        }
        let away = (0..count)
            .filter(|&j| lambda[j] > 0.0)
            .min_by(|&a, &b| w[a].total_cmp(&w[b]))
            .unwrap();
        let wm = w[away];
        if nn - wm > wp - nn && lambda[away] < 1.0 && wm > 1.0 {
            let amax = lambda[away] / (1.0 - lambda[away]);
            let a = ((nn - wm) / (nn * (wm - 1.0))).min(amax);
            for l in lambda.iter_mut() {
                *l *= 1.0 + a;
            }
            lambda[away] -= a;
            if a >= amax {
                lambda[away] = 0.0;
            }
        } else {
            let a = (wp / nn - 1.0) / (wp - 1.0);
            for l in lambda.iter_mut() {
                *l *= 1.0 - a;
            }
            lambda[jp] += a;
        }
    }
    // support identification and Newton polish; re-add violators
    for _ in 0..max_iter.max(1) {
        let pinv = inverse(&lambda)?;
        let w = leverages(&ys, &pinv);
        let mut support: Vec<usize> = (0..count)
            .filter(|&j| lambda[j] > 1e-9 && w[j] > nn - 1e-3)
            .collect();
        if support.is_empty() {
            support = (0..count).filter(|&j| lambda[j] > 0.0).collect();
        }
        for j in 0..count {
            if !support.contains(&j) {
                lambda[j] = 0.0;
            }
        }
        let s: f64 = lambda.iter().sum();
        for l in lambda.iter_mut() {
            *l /= s;
        }
        polish(&ys, &mut lambda, &mut support, nn, 100);
        let pinv = inverse(&lambda)?;
        let w = leverages(&ys, &pinv);
        let (jp, &wp) = w
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        if wp - nn <= tol {
            let lam = lambda.clone();
            return HullPoint::new(y.clone(), lam).or_else(|_| {
                let s: f64 = lambda.iter().sum();
                HullPoint::new(y.clone(), lambda.iter().map(|l| l / s).collect())
            });
        }
        // bring the most violated vector back in with a Frank–Wolfe step
        let a = (wp / nn - 1.0) / (wp - 1.0);
        for l in lambda.iter_mut() {
            *l *= 1.0 - a;
        }
        lambda[jp] += a;
    }
    Err(Error::NoConvergence(max_iter))
}

/// max_j Y_jᵗ P⁻¹ Y_j − n.
pub fn kkt_gap(point: &HullPoint<f64>) -> Result<f64> {
    let n = point.y.nrows();
    let pinv = point
        .p
        .to_nalgebra()
        .cholesky()
        .ok_or(Error::NotPositiveDefinite)?
        .inverse();
    let ys: Vec<DVector<f64>> = (0..point.y.ncols()).map(|j| col_vec(&point.y, j)).collect();
    Ok(leverages(&ys, &pinv)
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
        - n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_columns_give_uniform_weights() {
        let y = IntMatrix::identity(3);
        let h = maximize_logdet_c(&y, 1e-10, 200).unwrap();
        for l in &h.lambda {
            assert!((l - 1.0 / 3.0).abs() < 1e-10);
        }
        assert!(kkt_gap(&h).unwrap() <= 1e-10);
    }

    #[test]
    fn rank_deficient_hull_is_rejected() {
        let y = IntMatrix::from_columns(2, vec![vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(
            maximize_logdet_c(&y, 1e-10, 200),
            Err(Error::HullNotPositiveDefinite)
        );
    }
}
