//! One-parameter slices in dimension 3: det(Q0 + tQ1) is a cubic in t and
//! its maximizer is a root of the quadratic derivative.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::slice::AffineSliceW;
use crate::error::{Error, Result};
use crate::linalg::{self, dense, SymMatrix};
use crate::scalar::{rational, NumberField, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct PencilResult {
    pub t0: Scalar,
    pub qstar: SymMatrix<Scalar>,
    /// Extension degree of Q(t0) over Q: 1 or 2.
    pub degree: usize,
    /// (2 e2)² − 12 e1 e3 for the coefficients of det(I + t Q0⁻¹Q1),
    /// computed at the unshifted Q0.
    pub discriminant_quantity: Rational,
    /// det(Q0 + tQ1) coefficients, constant term first.
    pub det_poly: Vec<Rational>,
}

/// Coefficients e1 = tr M, e2 = (tr² M − tr M²)/2, e3 = det M for
/// M = Q0⁻¹Q1.
pub fn pencil_invariants(
    q0: &SymMatrix<Rational>,
    q1: &SymMatrix<Rational>,
) -> Result<[Rational; 3]> {
    let inv = dense::inverse(&q0.to_dense())?;
    let m = dense::mat_mul(&inv, &q1.to_dense());
    let tr: Rational = (0..3).map(|i| m[i][i].clone()).sum();
    let m2 = dense::mat_mul(&m, &m);
    let tr2: Rational = (0..3).map(|i| m2[i][i].clone()).sum();
    let e2 = (&tr * &tr - tr2) / Rational::from_integer(BigInt::from(2));
    let e3 = dense::det(&m);
    Ok([tr, e2, e3])
}

fn is_pd_at(
    q0: &SymMatrix<Rational>,
    q1: &SymMatrix<Rational>,
    t: &Scalar,
) -> (bool, SymMatrix<Scalar>) {
    let q = q0.to_scalar().add(&q1.to_scalar().scale(t));
    (linalg::definiteness(&q) == linalg::Definiteness::Yes, q)
}

pub fn pencil_maximize(slice: &AffineSliceW) -> Result<PencilResult> {
    if slice.dim() != 1 {
        return Err(Error::SliceDimension(slice.dim()));
    }
    if slice.n() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: slice.n(),
        });
    }
    let q0 = &slice.q0;
    let q1 = &slice.basis[0];
    // shift the base point when Q0 is singular
    let mut shift = Rational::zero();
    let mut base = q0.clone();
    let mut k = 1i64;
    while linalg::det(&base).is_zero() {
        shift = Rational::from_integer(BigInt::from(if k % 2 == 1 {
            k.div_euclid(2) + 1
        } else {
            -(k / 2)
        }));
        base = q0.add(&q1.scale(&shift));
        k += 1;
        if k > 20 {
            return Err(Error::NoPositiveDefinitePoint);
        }
    }
    let [e1, e2, e3] = pencil_invariants(&base, q1)?;
    let d0 = linalg::det(&base);
    // det(base + s Q1) = d0 (1 + e1 s + e2 s² + e3 s³), t = shift + s
    let det_in_s = [d0.clone(), &d0 * &e1, &d0 * &e2, &d0 * &e3];
    let det_poly = taylor_shift(&det_in_s, &-shift.clone());
    let disc = if shift.is_zero() {
        let four = Rational::from_integer(BigInt::from(4));
        let twelve = Rational::from_integer(BigInt::from(12));
        &four * &e2 * &e2 - twelve * &e1 * &e3
    } else {
        let [f1, f2, f3] = pencil_invariants(q0, q1)?;
        Rational::from_integer(BigInt::from(4)) * &f2 * &f2
            - Rational::from_integer(BigInt::from(12)) * f1 * f3
    };
    let mut candidates: Vec<(Scalar, usize)> = Vec::new();
    if !e3.is_zero() {
        // s = (−e2 ± sqrt(e2² − 3 e1 e3)) / (3 e3)
        let three = Rational::from_integer(BigInt::from(3));
        let inner = &e2 * &e2 - &three * &e1 * &e3;
        if inner.is_negative() {
            return Err(Error::NoPositiveDefinitePoint);
        }
        let denom = &three * &e3;
        match rational::rational_sqrt(&inner) {
            Some(r) => {
                for sgn in [1, -1] {
                    let s = (-&e2 + Rational::from_integer(sgn.into()) * &r) / &denom;
                    candidates.push((Scalar::from(s + &shift), 1));
                }
            }
            None => {
                // inner = a/b, sqrt = sqrt(a b)/b = (root/b) sqrt(core)
                let ab = inner.numer() * inner.denom();
                let (root, core) = rational::square_free_split(&ab);
                let field = NumberField::quadratic(&core)?;
                let w = field.generator();
                let coef = Rational::new(root, inner.denom().clone());
                for sgn in [1, -1] {
                    let sq = w.scale(&(&coef * Rational::from_integer(BigInt::from(sgn))));
                    let s = sq
                        .add_rational(&-e2.clone())
                        .scale(&(Rational::one() / &denom));
                    candidates.push((Scalar::from(s.add_rational(&shift)), 2));
                }
            }
        }
    } else if !e2.is_zero() {
        let s = -&e1 / (Rational::from_integer(BigInt::from(2)) * &e2);
        candidates.push((Scalar::from(s + &shift), 1));
    } else {
        return Err(Error::Degenerate("det(Q0 + tQ1) has degree < 2".into()));
    }
    for (t0, degree) in candidates {
        let (pd, qstar) = is_pd_at(q0, q1, &t0);
        if pd {
            return Ok(PencilResult {
                t0,
                qstar,
                degree,
                discriminant_quantity: disc,
                det_poly,
            });
        }
    }
    Err(Error::NoPositiveDefinitePoint)
}

/// Coefficients of p(x + h) given those of p.
fn taylor_shift(p: &[Rational], h: &Rational) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); p.len()];
    // Horner in polynomial arithmetic: q = q·(x + h) + c
    for c in p.iter().rev() {
        let mut next = vec![Rational::zero(); p.len()];
        for (i, qi) in out.iter().enumerate() {
            if qi.is_zero() {
                continue;
            }
            if i + 1 < next.len() {
                next[i + 1] += qi;
            }
            next[i] += qi * h;
        }
        next[0] += c;
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    #[test]
    fn off_diagonal_pencil() {
        let e = SymMatrix::from_fn(3, |i, j| {
            Rational::from_integer(BigInt::from(i64::from((i, j) == (0, 1))))
        });
        let s = AffineSliceW {
            y: IntMatrix::identity(3),
            q0: SymMatrix::identity(3),
            basis: vec![e],
        };
        let r = pencil_maximize(&s).unwrap();
        assert_eq!(r.t0, Scalar::from(0));
        assert_eq!(r.degree, 1);
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p: Vec<Rational> = [1, -2, 3, 5]
            .iter()
            .map(|&v| Rational::from_integer(v.into()))
            .collect();
        let h = Rational::new(2.into(), 3.into());
        let q = taylor_shift(&p, &h);
        let x = Rational::new(7.into(), 5.into());
        let lhs = crate::scalar::poly::eval(&q, &x);
        let rhs = crate::scalar::poly::eval(&p, &(&x + &h));
        assert_eq!(lhs, rhs);
    }
}
