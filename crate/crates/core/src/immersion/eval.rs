//! Evaluation of x(u) = (Θ₁, …, Θ_N)·A with A = (AAᵗ)^{1/2}.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use super::gram::{verify_full, GramOperator};
use super::MatrixData;
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, SymMatrix};
use crate::scalar::Scalar;

/// A verified immersion ready for evaluation.
#[derive(Clone, Debug)]
pub struct Immersion {
    y: IntMatrix,
    a: DMatrix<f64>,
    /// Lower Cholesky factor L of Q (rows generate the dual lattice).
    frame: DMatrix<f64>,
}

impl Immersion {
    /// Refuses operators that do not verify at `tol`.
    pub fn new(
        gram: &GramOperator,
        q: &SymMatrix<Scalar>,
        y: &IntMatrix,
        tol: f64,
    ) -> Result<Self> {
        let report = verify_full(gram, q, y, tol)?;
        if !report.is_verified() {
            return Err(Error::Unverified(format!("{:?}", report.verdict)));
        }
        let a = linalg::psd_sqrt(&gram.to_matrix(), tol)?.to_nalgebra();
        let frame = q
            .to_f64()
            .to_nalgebra()
            .cholesky()
            .ok_or(Error::NotPositiveDefinite)?
            .l();
        Ok(Immersion {
            y: y.clone(),
            a,
            frame,
        })
    }

    pub fn from_data(data: &MatrixData, tol: f64) -> Result<Self> {
        let report = data.verify(tol);
        if !report.is_verified() {
            return Err(Error::Unverified(format!("{:?}", report.verdict)));
        }
        Self::new(&data.gram_operator(), &data.q, &data.y, tol)
    }

    pub fn dim(&self) -> usize {
        self.y.nrows()
    }

    /// Target dimension 2N (the image lies in S^{2N−1}).
    pub fn target_dim(&self) -> usize {
        2 * self.y.ncols()
    }

    /// x(u) for u in Y-coordinates (θ_r = 2π⟨Y_r, u⟩).
    pub fn evaluate(&self, u: &[f64]) -> Result<Vec<f64>> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.len(),
            });
        }
        let mut theta = DVector::<f64>::zeros(self.target_dim());
        for (r, col) in self.y.columns().iter().enumerate() {
            let t = 2.0 * PI * col.iter().zip(u).map(|(&y, &v)| y as f64 * v).sum::<f64>();
            theta[2 * r] = t.cos();
            theta[2 * r + 1] = t.sin();
        }
        Ok((theta.transpose() * &self.a).iter().copied().collect())
    }

    /// Converts orthonormal coordinates (metric (4π²/n)|du|²) to
    /// Y-coordinates: u_Y = L·u.
    pub fn to_y_coordinates(&self, u: &[f64]) -> Result<Vec<f64>> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.len(),
            });
        }
        Ok((&self.frame * DVector::from_column_slice(u))
            .iter()
            .copied()
            .collect())
    }

    pub fn evaluate_orthonormal(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.evaluate(&self.to_y_coordinates(u)?)
    }
}

pub fn evaluate_immersion(imm: &Immersion, u: &[f64]) -> Result<Vec<f64>> {
    imm.evaluate(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    #[test]
    fn clifford_at_origin() {
        let data = MatrixData::new(
            SymMatrix::<Scalar>::identity(2),
            IntMatrix::identity(2),
            vec![Scalar::from(rat(1, 2)); 2],
        )
        .unwrap();
        let imm = Immersion::from_data(&data, 1e-10).unwrap();
        let x = imm.evaluate(&[0.0, 0.0]).unwrap();
        let h = 0.5f64.sqrt();
        for (a, b) in x.iter().zip([h, 0.0, h, 0.0]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn refuses_unverified() {
        let data = MatrixData::new(
            SymMatrix::<Scalar>::identity(2),
            IntMatrix::identity(2),
            vec![Scalar::from(rat(1, 3)), Scalar::from(rat(2, 3))],
        )
        .unwrap();
        assert!(matches!(
            Immersion::from_data(&data, 1e-10),
            Err(Error::Unverified(_))
        ));
    }
}
