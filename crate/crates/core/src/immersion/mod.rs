//! Matrix data {Q, Y, c²} of minimal isometric immersions, the η-set
//! equation system of general immersions, embeddedness, evaluation and
//! deformations.

pub mod embed;
pub mod eta;
pub mod eval;
pub mod gram;
pub mod report;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, SymMatrix};
use crate::optimize::{caratheodory_reduce, HullPoint};
use crate::scalar::{Field, Scalar};

pub use embed::{
    embeddedness, embeddedness_exhaustive, integral_points, unit_minor, Embeddedness,
    EmbeddingCertificate,
};
pub use eta::{eta_sets, EtaPair, EtaSystem};
pub use eval::{evaluate_immersion, Immersion};
pub use gram::{deformation_path, is_homogeneous, verify_full, Block, GramOperator};
pub use report::{EtaResidual, Verdict, VerificationReport};

use report::Judge;

/// Absolute tolerance for floating residuals.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Certificate {Q, Y, c²}: Y_jᵗQY_j = 1, Σ c_j² Y_jY_jᵗ = Q⁻¹/n, Σ c_j² = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixData {
    /// Gram matrix of the dual lattice in the chosen generator.
    pub q: SymMatrix<Scalar>,
    /// n×N, columns Y_j.
    pub y: IntMatrix,
    /// c_j².
    pub weights: Vec<Scalar>,
}

impl MatrixData {
    pub fn new(q: SymMatrix<Scalar>, y: IntMatrix, weights: Vec<Scalar>) -> Result<Self> {
        if q.dim() != y.nrows() {
            return Err(Error::DimensionMismatch {
                expected: y.nrows(),
                found: q.dim(),
            });
        }
        if weights.len() != y.ncols() {
            return Err(Error::DimensionMismatch {
                expected: y.ncols(),
                found: weights.len(),
            });
        }
        Ok(MatrixData { q, y, weights })
    }

    /// Torus dimension n.
    pub fn n(&self) -> usize {
        self.y.nrows()
    }

    /// Number of ±-classes N.
    pub fn classes(&self) -> usize {
        self.y.ncols()
    }

    /// The immersion lies in S^{2N−1}.
    pub fn sphere_dim(&self) -> usize {
        2 * self.classes() - 1
    }

    pub fn is_exact(&self) -> bool {
        self.q.is_exact() && self.weights.iter().all(Field::is_exact)
    }

    pub fn verify(&self, tol: f64) -> VerificationReport {
        verify_matrix_data(self, tol)
    }

    /// Diagonal operator with A_rr = c_r² I₂.
    pub fn gram_operator(&self) -> GramOperator {
        GramOperator::diagonal(&self.weights.iter().map(Scalar::to_f64).collect::<Vec<_>>())
    }
}

fn check(judge: &mut Judge, name: &str, residuals: &[Scalar]) -> f64 {
    let value = residuals
        .iter()
        .map(|r| r.to_f64().abs())
        .fold(0.0, f64::max);
    if residuals.iter().all(Field::is_exact) {
        judge.exact(name, residuals.iter().all(Zero::is_zero), value);
    } else {
        judge.float(name, value);
    }
    value
}

/// Checks the ellipsoid condition, the flat condition, Σ c² = 1 and c² > 0,
/// exactly when all scalars are exact.
pub fn verify_matrix_data(data: &MatrixData, tol: f64) -> VerificationReport {
    let n = data.n();
    let mut judge = Judge::new(tol);
    let rank = data.y.rank();
    if rank != n {
        judge.fail(format!("structure: rank(Y) = {rank}, expected {n}"));
    }
    if data.y.has_proportional_columns() {
        judge.fail("structure: proportional columns in Y".into());
    }

    let aqa: Vec<Scalar> = data
        .y
        .columns()
        .iter()
        .map(|c| data.q.quad_form(c) - Scalar::one())
        .collect();
    let ellipsoid = check(&mut judge, "ellipsoid condition", &aqa);

    let flat = match linalg::inverse(&data.q) {
        Ok(qinv) => {
            let mut m = qinv.scale(&(-Scalar::one() / Scalar::from(n as i64)));
            for (j, w) in data.weights.iter().enumerate() {
                m = m.add(&SymMatrix::<Scalar>::outer(data.y.col(j)).scale(w));
            }
            check(&mut judge, "flat condition", m.packed())
        }
        Err(_) => {
            judge.fail("flat condition: Q is singular".into());
            f64::INFINITY
        }
    };

    let sum = data
        .weights
        .iter()
        .cloned()
        .fold(Scalar::zero(), |a, b| a + b)
        - Scalar::one();
    let weight_sum = check(&mut judge, "weight sum", &[sum]);

    let mut psd_margin = f64::INFINITY;
    for w in &data.weights {
        psd_margin = psd_margin.min(w.to_f64());
        let sign = if w.is_exact() { Some(w.sign()) } else { None };
        judge.margin("weight positivity", w.to_f64(), sign);
    }

    VerificationReport {
        tolerance: tol,
        exact: data.is_exact(),
        ellipsoid,
        flat,
        weight_sum,
        diagonal_blocks: None,
        unit_cos: Vec::new(),
        unit_sin: Vec::new(),
        isometry_cos: Vec::new(),
        isometry_sin: Vec::new(),
        psd_margin,
        verdict: judge.verdict(),
    }
}

/// Carathéodory reduction of the weights: N′ ≤ n(n+1)/2 with the same Q
/// and the same Σ c_j² Y_jY_jᵗ.
pub fn reduce_target_dimension(data: &MatrixData) -> Result<MatrixData> {
    let report = data.verify(DEFAULT_TOL);
    if !report.is_verified() {
        return Err(Error::Unverified(format!("{:?}", report.verdict)));
    }
    let mut lambda = data.weights.clone();
    if !lambda.iter().all(Field::is_exact) {
        let s: f64 = lambda.iter().map(Scalar::to_f64).sum();
        lambda = lambda
            .iter()
            .map(|w| Scalar::Float(w.to_f64() / s))
            .collect();
    }
    let point = HullPoint::new(data.y.clone(), lambda)?;
    let reduced = caratheodory_reduce(&point);
    let keep = reduced.support();
    let y = data.y.select(&keep);
    let weights = keep.iter().map(|&j| reduced.lambda[j].clone()).collect();
    let out = MatrixData::new(data.q.clone(), y, weights)?;
    let report = out.verify(DEFAULT_TOL);
    if !report.is_verified() {
        return Err(Error::Unverified(format!("{:?}", report.verdict)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};
    use crate::scalar::Rational;

    fn s(r: Rational) -> Scalar {
        Scalar::from(r)
    }

    fn clifford(n: usize) -> MatrixData {
        MatrixData::new(
            SymMatrix::identity(n),
            IntMatrix::identity(n),
            vec![s(rat(1, n as i64)); n],
        )
        .unwrap()
    }

    #[test]
    fn clifford_verifies_exactly() {
        let r = clifford(3).verify(DEFAULT_TOL);
        assert!(r.is_verified());
        assert!(r.exact);
        assert_eq!(r.max_residual(), 0.0);
    }

    #[test]
    fn wrong_weights_are_falsified_by_the_flat_condition() {
        let mut d = clifford(2);
        d.weights = vec![s(rat(1, 3)), s(rat(2, 3))];
        match d.verify(DEFAULT_TOL).verdict {
            Verdict::Falsified(r) => assert!(r.starts_with("flat"), "{r}"),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn point_off_the_ellipsoid_is_falsified() {
        let mut d = clifford(2);
        d.q.set(0, 1, s(rat(1, 1000)));
        match d.verify(DEFAULT_TOL).verdict {
            Verdict::Falsified(r) => assert!(r.starts_with("flat") || r.starts_with("ellipsoid")),
            v => panic!("{v:?}"),
        }
        d.y = IntMatrix::from_columns(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        d.q = SymMatrix::diagonal(vec![s(int(2)), s(int(1))]);
        match d.verify(DEFAULT_TOL).verdict {
            Verdict::Falsified(r) => assert!(r.starts_with("ellipsoid"), "{r}"),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn float_weights_use_the_tolerance() {
        let mut d = clifford(2);
        d.weights = vec![Scalar::Float(0.5 + 1e-12), Scalar::Float(0.5 - 1e-12)];
        assert!(d.verify(DEFAULT_TOL).is_verified());
        d.weights = vec![Scalar::Float(0.5 + 1e-9), Scalar::Float(0.5 - 1e-9)];
        assert!(matches!(
            d.verify(DEFAULT_TOL).verdict,
            Verdict::Indeterminate(_)
        ));
    }

    #[test]
    fn diagonal_lift_verifies_in_the_full_system() {
        let d = clifford(3);
        let r = verify_full(&d.gram_operator(), &d.q, &d.y, DEFAULT_TOL).unwrap();
        assert!(r.is_verified());
    }

    #[test]
    fn reduction_leaves_small_data_unchanged() {
        let d = clifford(3);
        assert_eq!(reduce_target_dimension(&d).unwrap(), d);
    }
}
