//! Irrational 3-tori from a chosen set of lattice points: maximize det over
//! the slice W_Y in closed form, then certify Q*⁻¹/3 ∈ C_Y exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::immersion::{MatrixData, DEFAULT_TOL};
use crate::linalg::{self, dense, IntMatrix, SymMatrix};
use crate::optimize::{build_slice, lp, pencil_maximize, rank4_lagrange};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Require {
    /// rank{Y_jY_jᵗ} = 5: a one-parameter slice, degree ≤ 2.
    Rank5,
    /// N = 4 with rank{Y_jY_jᵗ} = 4: the Lagrange quartic, degree ≤ 4.
    Rank4,
}

/// Field data of the constructed Q.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IrrationalityReport {
    /// [Q(entries of Q) : Q].
    pub degree: usize,
    /// Minimal polynomial of the generator, constant term first.
    pub minpoly: Vec<String>,
    /// The generator: t0 on the pencil path, the off-diagonal entry a of the
    /// normalized Q on the rank-4 path.
    pub generator: f64,
}

#[derive(Clone, Debug)]
pub struct PencilConstruction {
    pub data: MatrixData,
    pub report: IrrationalityReport,
    /// Pencil parameter t0 (rank-5 path only).
    pub t0: Option<Scalar>,
}

fn minpoly_of(s: &Scalar) -> Vec<BigInt> {
    match s {
        Scalar::Algebraic(a) => a.field().minpoly().to_vec(),
        _ => vec![BigInt::zero(), BigInt::one()],
    }
}

fn rank_of_outer(y: &IntMatrix) -> usize {
    let rows: Vec<Vec<Rational>> = y
        .columns()
        .iter()
        .map(|c| SymMatrix::<Rational>::outer(c).packed().to_vec())
        .collect();
    dense::rank(&rows)
}

/// Exact weights with Σ c_j² Y_jY_jᵗ = Q⁻¹/n and c_j² ≥ 0.
pub fn hull_weights(q: &SymMatrix<Scalar>, y: &IntMatrix) -> Result<Vec<Scalar>> {
    let n = y.nrows();
    let target = linalg::inverse(q)?.scale(&(Scalar::one() / Scalar::from(n as i64)));
    let cols: Vec<Vec<Scalar>> = y
        .columns()
        .iter()
        .map(|c| SymMatrix::<Scalar>::outer(c).packed().to_vec())
        .collect();
    let m = target.packed().len();
    let a: Vec<Vec<Scalar>> = (0..m)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    match lp::feasible_point(&a, target.packed()) {
        Ok(w) => Ok(w),
        Err(Error::Infeasible(_)) => Err(Error::NotInHull),
        Err(e) => Err(e),
    }
}

fn rank5(y: &IntMatrix) -> Result<(SymMatrix<Scalar>, Scalar, usize)> {
    let slice = build_slice(y)?;
    let res = pencil_maximize(&slice)?;
    Ok((res.qstar, res.t0, res.degree))
}

/// Q = G⁻ᵀ Q̃ G⁻¹ from the critical point Q̃ of the normalized slice
/// {Q̃_ii = 1, rᵗQ̃r = 1}, where G holds three independent columns of Y and
/// r = G⁻¹ times the fourth.
fn rank4(y: &IntMatrix) -> Result<(SymMatrix<Scalar>, Scalar)> {
    if y.ncols() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: y.ncols(),
        });
    }
    let basis = (0..4)
        .map(|k| (0..4).filter(|&j| j != k).collect::<Vec<_>>())
        .rev()
        .find(|idx| !y.minor(idx).is_zero())
        .ok_or(Error::RankDeficient {
            rank: y.rank(),
            expected: 3,
        })?;
    let other = (0..4)
        .find(|j| !basis.contains(j))
        .expect("one column left");
    let g: Vec<Vec<Rational>> = (0..3)
        .map(|i| {
            basis
                .iter()
                .map(|&j| Rational::from_integer(y.col(j)[i].into()))
                .collect()
        })
        .collect();
    let ginv = dense::inverse(&g)?;
    let y4: Vec<Rational> = y
        .col(other)
        .iter()
        .map(|&v| Rational::from_integer(v.into()))
        .collect();
    let r: Vec<Rational> = (0..3)
        .map(|i| (0..3).map(|k| &ginv[i][k] * &y4[k]).sum())
        .collect();
    let crit = rank4_lagrange([r[0].clone(), r[1].clone(), r[2].clone()])?;
    let mut best: Option<(f64, SymMatrix<Scalar>, Scalar)> = None;
    for cand in &crit.candidates {
        let qt = cand.matrix();
        if linalg::definiteness(&qt) != linalg::Definiteness::Yes {
            continue;
        }
        let d = linalg::det(&qt).to_f64();
        if best.as_ref().is_none_or(|(b, _, _)| d > *b) {
            best = Some((d, qt, cand.a.clone()));
        }
    }
    let (_, qt, a) = best.ok_or(Error::NoPositiveDefinitePoint)?;
    let gi: Vec<Vec<Scalar>> = ginv
        .iter()
        .map(|row| row.iter().cloned().map(Scalar::from).collect())
        .collect();
    let git = dense::transpose(&gi);
    let q = dense::mat_mul(&dense::mat_mul(&git, &qt.to_dense()), &gi);
    Ok((SymMatrix::symmetrize(&q), a))
}

/// Runs the pencil (rank 5) or Lagrange (rank 4) construction on Y and
/// returns verified matrix data with exact weights.
pub fn construct_pencil_3torus(y: &IntMatrix, require: Require) -> Result<PencilConstruction> {
    if y.nrows() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: y.nrows(),
        });
    }
    if y.rank() != 3 {
        return Err(Error::RankDeficient {
            rank: y.rank(),
            expected: 3,
        });
    }
    let rk = rank_of_outer(y);
    let expected = match require {
        Require::Rank5 => 5,
        Require::Rank4 => 4,
    };
    if rk != expected || (require == Require::Rank4 && y.ncols() != 4) {
        return Err(Error::InvalidParameters(format!(
            "rank{{Y_jY_jᵗ}} = {rk} with N = {}, expected rank {expected}",
            y.ncols()
        )));
    }
    let (q, generator, t0) = match require {
        Require::Rank5 => {
            let (q, t0, _) = rank5(y)?;
            (q, t0.clone(), Some(t0))
        }
        Require::Rank4 => {
            let (q, a) = rank4(y)?;
            (q, a, None)
        }
    };
    let weights = hull_weights(&q, y)?;
    let minpoly = minpoly_of(&generator);
    let data = MatrixData::new(q, y.clone(), weights)?;
    let rep = data.verify(DEFAULT_TOL);
    if !rep.is_verified() {
        return Err(Error::Unverified(format!("{:?}", rep.verdict)));
    }
    Ok(PencilConstruction {
        report: IrrationalityReport {
            degree: minpoly.len() - 1,
            minpoly: minpoly.iter().map(|c| c.to_string()).collect(),
            generator: generator.to_f64(),
        },
        data,
        t0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::catalog::catalog;
    use crate::scalar::Field;

    fn close(a: &SymMatrix<Scalar>, b: &SymMatrix<Scalar>) -> f64 {
        a.packed()
            .iter()
            .zip(b.packed())
            .map(|(x, y)| (x.to_f64() - y.to_f64()).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn rank5_matches_catalog() {
        let cat = catalog("ex-rank5").unwrap();
        let out = construct_pencil_3torus(&cat.y, Require::Rank5).unwrap();
        assert!(close(&out.data.q, &cat.q) < 1e-12);
        assert_eq!(out.report.degree, 2);
        assert_eq!(out.report.minpoly, vec!["-10801", "0", "1"]);
        for (w, c) in out.data.weights.iter().zip(&cat.weights) {
            assert!((w.to_f64() - c.to_f64()).abs() < 1e-14);
            assert!(w.is_exact());
        }
    }

    #[test]
    fn rank4_reproduces_every_catalog_q() {
        for id in ["quadratic-s7", "cubic-s7-a", "cubic-s7-b", "quartic-s7"] {
            let cat = catalog(id).unwrap();
            let out = construct_pencil_3torus(&cat.y, Require::Rank4).unwrap();
            assert!(close(&out.data.q, &cat.q) < 1e-12, "{id}");
            for (w, c) in out.data.weights.iter().zip(&cat.weights) {
                assert!((w.to_f64() - c.to_f64()).abs() < 1e-12, "{id}");
            }
        }
    }

    #[test]
    fn wrong_rank_is_refused() {
        let y = IntMatrix::identity(3);
        assert!(matches!(
            construct_pencil_3torus(&y, Require::Rank5),
            Err(Error::InvalidParameters(_))
        ));
    }
}
