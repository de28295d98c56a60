//! Maximization of ln det over the slice W_Y by damped Newton in slice
//! coordinates, preceded by a subgradient search for a positive definite
//! point when Q0 itself is not positive definite.

use nalgebra::{DMatrix, DVector};

use super::slice::AffineSliceW;
use crate::error::{Error, Result};
use crate::linalg::{self, SymMatrix};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub enum WMaximum {
    Optimal {
        q: SymMatrix<f64>,
        t: Vec<f64>,
        /// Max |⟨Q⁻¹, Q_i⟩| at the returned point.
        stationarity: f64,
        iterations: usize,
    },
    /// No positive definite point was found on the slice.
    Infeasible,
}

impl WMaximum {
    pub fn q(&self) -> Option<&SymMatrix<f64>> {
        match self {
            WMaximum::Optimal { q, .. } => Some(q),
            WMaximum::Infeasible => None,
        }
    }
}

fn chol_logdet(m: &DMatrix<f64>) -> Option<(f64, DMatrix<f64>)> {
    let ch = m.clone().cholesky()?;
    let ld = 2.0 * ch.l().diagonal().iter().map(|d| d.ln()).sum::<f64>();
    Some((ld, ch.inverse()))
}

struct Problem {
    q0: DMatrix<f64>,
    qs: Vec<DMatrix<f64>>,
}

impl Problem {
    fn new(slice: &AffineSliceW) -> Self {
        Problem {
            q0: slice.q0.to_f64().to_nalgebra(),
            qs: slice
                .basis
                .iter()
                .map(|b| b.to_f64().to_nalgebra())
                .collect(),
        }
    }

    fn at(&self, t: &[f64]) -> DMatrix<f64> {
        let mut q = self.q0.clone();
        for (ti, qi) in t.iter().zip(&self.qs) {
            q += qi * *ti;
        }
        q
    }

    fn is_pd(&self, t: &[f64]) -> bool {
        let q = self.at(t);
        linalg::float_definiteness(&SymMatrix::from_nalgebra(&q), linalg::PD_TOL)
            == linalg::Definiteness::Yes
    }

    fn gradient(&self, inv: &DMatrix<f64>) -> DVector<f64> {
        DVector::from_iterator(
            self.qs.len(),
            self.qs.iter().map(|qi| inv.component_mul(qi).sum()),
        )
    }

    fn hessian(&self, inv: &DMatrix<f64>) -> DMatrix<f64> {
        let s = self.qs.len();
        let prods: Vec<DMatrix<f64>> = self.qs.iter().map(|qi| inv * qi).collect();
        DMatrix::from_fn(s, s, |i, j| -(&prods[i] * &prods[j]).trace())
    }
}

/// Searches for t with Q0 + Σ t_i Q_i positive definite by subgradient
/// ascent on the smallest eigenvalue.
fn find_feasible(p: &Problem, max_iter: usize) -> Option<Vec<f64>> {
    let s = p.qs.len();
    let mut t = vec![0.0; s];
    if p.is_pd(&t) {
        return Some(t);
    }
    if s == 0 {
        return None;
    }
    let min_eig = |t: &[f64]| -> (f64, DVector<f64>) {
        let eig = p.at(t).symmetric_eigen();
        let (k, &v) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("nonempty");
        (v, eig.eigenvectors.column(k).into_owned())
    };
    let scale = p.q0.amax().max(1.0);
    let mut step = scale;
    let (mut cur, mut vec) = min_eig(&t);
    for _ in 0..max_iter {
        let g: Vec<f64> =
            p.qs.iter()
                .map(|qi| (vec.transpose() * qi * &vec)[(0, 0)])
                .collect();
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return None;
        }
        let mut improved = false;
        let mut alpha = step;
        while alpha > 1e-12 * scale {
            let cand: Vec<f64> = t
                .iter()
                .zip(&g)
                .map(|(ti, gi)| ti + alpha * gi / norm)
                .collect();
            let (v, w) = min_eig(&cand);
            if v > cur {
                t = cand;
                cur = v;
                vec = w;
                improved = true;
                step = alpha * 2.0;
                break;
            }
            alpha *= 0.5;
        }
        if p.is_pd(&t) {
            return Some(t);
        }
        if !improved {
            return None;
        }
    }
    None
}

pub fn maximize_logdet_w(slice: &AffineSliceW, tol: f64, max_iter: usize) -> Result<WMaximum> {
    let p = Problem::new(slice);
    match find_feasible(&p, max_iter) {
        None => Ok(WMaximum::Infeasible),
        Some(t) => newton(&p, t, tol, max_iter),
    }
}

/// Newton from a caller-chosen start; the start must give a positive
/// definite point.
pub fn maximize_logdet_w_from(
    slice: &AffineSliceW,
    start: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<WMaximum> {
    if start.len() != slice.dim() {
        return Err(Error::DimensionMismatch {
            expected: slice.dim(),
            found: start.len(),
        });
    }
    let p = Problem::new(slice);
    if !p.is_pd(start) {
        return Err(Error::NotPositiveDefinite);
    }
    newton(&p, start.to_vec(), tol, max_iter)
}

fn newton(p: &Problem, mut t: Vec<f64>, tol: f64, max_iter: usize) -> Result<WMaximum> {
    let s = p.qs.len();
    let (mut f, mut inv) = chol_logdet(&p.at(&t)).ok_or(Error::NotPositiveDefinite)?;
    for it in 0..=max_iter {
        let g = p.gradient(&inv);
        let gmax = g.amax();
        if s == 0 || gmax <= tol {
            return Ok(WMaximum::Optimal {
                q: SymMatrix::from_nalgebra(&p.at(&t)),
                t,
                stationarity: gmax,
                iterations: it,
            });
        }
        if it == max_iter {
            break;
        }
        let h = p.hessian(&inv);
        let neg = -h;
        let dir = match neg.clone().cholesky() {
            Some(ch) => ch.solve(&g),
            None => {
                neg.pseudo_inverse(1e-14)
                    .map_err(|_| Error::NoConvergence(it))?
                    * &g
            }
        };
        let slope = g.dot(&dir);
        if slope <= 1e-24 {
            return Ok(WMaximum::Optimal {
                q: SymMatrix::from_nalgebra(&p.at(&t)),
                t,
                stationarity: gmax,
                iterations: it,
            });
        }
        // slope is the squared Newton decrement; below 1/16 the full step is
        // feasible and quadratically convergent, and comparing function
        // values there only measures rounding
        if slope < 1.0 / 16.0 {
            let cand: Vec<f64> = t.iter().zip(dir.iter()).map(|(a, d)| a + d).collect();
            if let Some((fc, ic)) = chol_logdet(&p.at(&cand)) {
                t = cand;
                f = fc;
                inv = ic;
                continue;
            }
        }
        let mut alpha = 1.0;
        let mut moved = false;
        while alpha > 1e-16 {
            let cand: Vec<f64> = t
                .iter()
                .zip(dir.iter())
                .map(|(a, d)| a + alpha * d)
                .collect();
            if let Some((fc, ic)) = chol_logdet(&p.at(&cand)) {
                if fc >= f + 1e-4 * alpha * slope {
                    t = cand;
                    f = fc;
                    inv = ic;
                    moved = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if !moved {
            return Err(Error::NoConvergence(it));
        }
    }
    Err(Error::NoConvergence(max_iter))
}
