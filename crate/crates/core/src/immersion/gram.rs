//! The 2N×2N operator AAᵗ of a general immersion and the full equation
//! system for it.

use serde::{Deserialize, Serialize};

use super::eta::eta_sets;
use super::report::{EtaResidual, Judge, VerificationReport};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, SymMatrix};
use crate::scalar::Scalar;

pub type Block = [[f64; 2]; 2];

fn transpose(b: &Block) -> Block {
    [[b[0][0], b[1][0]], [b[0][1], b[1][1]]]
}

/// AAᵗ as an N×N array of 2×2 blocks A_rs, stored for r ≤ s.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramOperator {
    n: usize,
    blocks: Vec<Block>,
}

fn slot(n: usize, r: usize, s: usize) -> usize {
    r * n - r * (r + 1) / 2 + s
}

impl GramOperator {
    pub fn zeros(n: usize) -> Self {
        GramOperator {
            n,
            blocks: vec![[[0.0; 2]; 2]; n * (n + 1) / 2],
        }
    }

    /// The homogeneous operator with A_rr = a_r I₂ and no coupling.
    pub fn diagonal(a: &[f64]) -> Self {
        let mut g = Self::zeros(a.len());
        for (r, &v) in a.iter().enumerate() {
            g.set_block(r, r, [[v, 0.0], [0.0, v]]);
        }
        g
    }

    /// Number of ±-classes N.
    pub fn classes(&self) -> usize {
        self.n
    }

    /// A_rs; A_sr = A_rsᵗ.
    pub fn block(&self, r: usize, s: usize) -> Block {
        if r <= s {
            self.blocks[slot(self.n, r, s)]
        } else {
            transpose(&self.blocks[slot(self.n, s, r)])
        }
    }

    /// Sets A_rs (and implicitly A_sr). Diagonal blocks are symmetrized.
    pub fn set_block(&mut self, r: usize, s: usize, b: Block) {
        if r == s {
            let off = 0.5 * (b[0][1] + b[1][0]);
            self.blocks[slot(self.n, r, r)] = [[b[0][0], off], [off, b[1][1]]];
        } else if r < s {
            self.blocks[slot(self.n, r, s)] = b;
        } else {
            self.blocks[slot(self.n, s, r)] = transpose(&b);
        }
    }

    /// a_r, read as the mean of the diagonal of A_rr.
    pub fn diagonal_weights(&self) -> Vec<f64> {
        (0..self.n)
            .map(|r| {
                let b = self.block(r, r);
                0.5 * (b[0][0] + b[1][1])
            })
            .collect()
    }

    pub fn diagonal_part(&self) -> Self {
        let mut g = Self::zeros(self.n);
        for r in 0..self.n {
            g.set_block(r, r, self.block(r, r));
        }
        g
    }

    /// Nonzero off-diagonal blocks (r < s).
    pub fn off_diagonal(&self) -> Vec<(usize, usize, Block)> {
        let mut out = Vec::new();
        for r in 0..self.n {
            for s in r + 1..self.n {
                let b = self.block(r, s);
                if b.iter().flatten().any(|&v| v != 0.0) {
                    out.push((r, s, b));
                }
            }
        }
        out
    }

    pub fn to_matrix(&self) -> SymMatrix<f64> {
        SymMatrix::from_fn(2 * self.n, |i, j| self.block(i / 2, j / 2)[i % 2][j % 2])
    }

    pub fn from_matrix(m: &SymMatrix<f64>) -> Result<Self> {
        if !m.dim().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: m.dim() + 1,
                found: m.dim(),
            });
        }
        let n = m.dim() / 2;
        let mut g = Self::zeros(n);
        for r in 0..n {
            for s in r..n {
                let b = [
                    [*m.get(2 * r, 2 * s), *m.get(2 * r, 2 * s + 1)],
                    [*m.get(2 * r + 1, 2 * s), *m.get(2 * r + 1, 2 * s + 1)],
                ];
                g.set_block(r, s, b);
            }
        }
        Ok(g)
    }

    /// (1 − t)·self + t·other.
    pub fn lerp(&self, other: &Self, t: f64) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::GeometryMismatch);
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| {
                let mut c = [[0.0; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        c[i][j] = (1.0 - t) * a[i][j] + t * b[i][j];
                    }
                }
                c
            })
            .collect();
        Ok(GramOperator { n: self.n, blocks })
    }

    fn max_off_diagonal(&self) -> f64 {
        self.off_diagonal()
            .iter()
            .flat_map(|(_, _, b)| b.iter().flatten().map(|v| v.abs()).collect::<Vec<_>>())
            .fold(0.0, f64::max)
    }
}

/// True iff every off-diagonal block vanishes within `tol`.
pub fn is_homogeneous(gram: &GramOperator, tol: f64) -> bool {
    gram.max_off_diagonal() <= tol
}

/// Evaluates the unit-norm equations (cos and sin parts), the isometry
/// equations (diagonal, cos and sin parts) and positive semidefiniteness of
/// AAᵗ, all in Y-coordinates and floating point.
///
/// For a pair with Y_r + σY_s = ε·η the contributions are:
/// σ = +1: cos (A¹¹ − A²²), sin ε(A¹² + A²¹), metric −(A¹¹ − A²²), −ε(A¹² + A²¹);
/// σ = −1: cos (A¹¹ + A²²), sin ε(A²¹ − A¹²), metric (A¹¹ + A²²), ε(A²¹ − A¹²);
/// the metric terms multiply Y_rY_sᵗ + Y_sY_rᵗ.
pub fn verify_full(
    gram: &GramOperator,
    q: &SymMatrix<Scalar>,
    y: &IntMatrix,
    tol: f64,
) -> Result<VerificationReport> {
    let big_n = y.ncols();
    let n = y.nrows();
    if gram.classes() != big_n {
        return Err(Error::DimensionMismatch {
            expected: big_n,
            found: gram.classes(),
        });
    }
    if q.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: q.dim(),
        });
    }
    let mut judge = Judge::new(tol);
    let qf = q.to_f64();

    let ellipsoid = (0..big_n)
        .map(|j| (qf.quad_form(y.col(j)) - 1.0).abs())
        .fold(0.0, f64::max);
    judge.float("ellipsoid condition", ellipsoid);

    let diag = (0..big_n)
        .map(|r| {
            let b = gram.block(r, r);
            (b[0][0] - b[1][1]).abs().max(b[0][1].abs())
        })
        .fold(0.0, f64::max);
    judge.float("scalar diagonal blocks", diag);

    let a = gram.diagonal_weights();
    let weight_sum = (a.iter().sum::<f64>() - 1.0).abs();
    let flat = match linalg::inverse(&qf) {
        Ok(qinv) => {
            let mut m = qinv.scale(&(-1.0 / n as f64));
            for (r, ar) in a.iter().enumerate() {
                m = m.add(&SymMatrix::<f64>::outer(y.col(r)).scale(ar));
            }
            m.max_abs()
        }
        Err(_) => f64::INFINITY,
    };
    judge.float("flat condition", flat);
    judge.float("weight sum", weight_sum);

    let sys = eta_sets(y);
    let mut unit_cos = Vec::with_capacity(sys.len());
    let mut unit_sin = Vec::with_capacity(sys.len());
    let mut iso_cos = Vec::with_capacity(sys.len());
    let mut iso_sin = Vec::with_capacity(sys.len());
    for (eta, pairs) in sys.iter() {
        let mut ec = 0.0;
        let mut es = 0.0;
        let mut ic = SymMatrix::<f64>::zeros(n);
        let mut is = SymMatrix::<f64>::zeros(n);
        for p in pairs {
            let b = gram.block(p.r, p.s);
            let eps = f64::from(p.orientation);
            let (c, s, mc, ms) = if p.sigma > 0 {
                let c = b[0][0] - b[1][1];
                let s = eps * (b[0][1] + b[1][0]);
                (c, s, -c, -s)
            } else {
                let c = b[0][0] + b[1][1];
                let s = eps * (b[1][0] - b[0][1]);
                (c, s, c, s)
            };
            ec += c;
            es += s;
            if mc != 0.0 || ms != 0.0 {
                let sym = SymMatrix::<f64>::sym_outer(y.col(p.r), y.col(p.s));
                ic = ic.add(&sym.scale(&mc));
                is = is.add(&sym.scale(&ms));
            }
        }
        unit_cos.push(EtaResidual {
            eta: eta.clone(),
            residual: ec.abs(),
        });
        unit_sin.push(EtaResidual {
            eta: eta.clone(),
            residual: es.abs(),
        });
        iso_cos.push(EtaResidual {
            eta: eta.clone(),
            residual: ic.max_abs(),
        });
        iso_sin.push(EtaResidual {
            eta: eta.clone(),
            residual: is.max_abs(),
        });
    }
    for (name, list) in [
        ("unit-norm cos equation", &unit_cos),
        ("unit-norm sin equation", &unit_sin),
        ("isometry cos equation", &iso_cos),
        ("isometry sin equation", &iso_sin),
    ] {
        if let Some(worst) = list.iter().max_by(|a, b| a.residual.total_cmp(&b.residual)) {
            judge.float(&format!("{name} at η = {:?}", worst.eta), worst.residual);
        }
    }

    let psd_margin = linalg::min_eigenvalue(&gram.to_matrix());
    judge.margin("positive semidefiniteness of AAᵗ", psd_margin, None);

    Ok(VerificationReport {
        tolerance: tol,
        exact: false,
        ellipsoid,
        flat,
        weight_sum,
        diagonal_blocks: Some(diag),
        unit_cos,
        unit_sin,
        isometry_cos: iso_cos,
        isometry_sin: iso_sin,
        psd_margin,
        verdict: judge.verdict(),
    })
}

/// (1 − t)·g0 + t·g1 for t ∈ [0, 1].
pub fn deformation_path(g0: &GramOperator, g1: &GramOperator, t: f64) -> Result<GramOperator> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameters(format!("t = {t} outside [0, 1]")));
    }
    g0.lerp(g1, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clifford(n: usize) -> (SymMatrix<Scalar>, IntMatrix) {
        (SymMatrix::<Scalar>::identity(n), IntMatrix::identity(n))
    }

    #[test]
    fn clifford_diagonal_operator_verifies() {
        let (q, y) = clifford(3);
        let g = GramOperator::diagonal(&[1.0 / 3.0; 3]);
        let rep = verify_full(&g, &q, &y, 1e-10).unwrap();
        assert!(rep.is_verified(), "{:?}", rep.verdict);
        assert!(is_homogeneous(&g, 0.0));
        assert_eq!(rep.unit_cos.len(), 6);
    }

    #[test]
    fn coupling_between_orthogonal_circles_is_rejected() {
        // Y = I₂: every η-set is a single pair, so any coupling breaks |x| = 1.
        let (q, y) = clifford(2);
        let mut g = GramOperator::diagonal(&[0.5, 0.5]);
        g.set_block(0, 1, [[0.1, 0.0], [0.0, 0.0]]);
        let rep = verify_full(&g, &q, &y, 1e-10).unwrap();
        assert!(!rep.is_verified());
        assert!(!is_homogeneous(&g, 1e-10));
    }

    #[test]
    fn rotation_coupling_in_a_trivial_set_is_allowed_by_unit_norm() {
        // A¹¹ + A²² = 0 and A¹² − A²¹ = 0 cancel the difference frequency,
        // but the sum frequency survives.
        let (q, y) = clifford(2);
        let mut g = GramOperator::diagonal(&[0.5, 0.5]);
        g.set_block(0, 1, [[0.1, 0.0], [0.0, -0.1]]);
        let rep = verify_full(&g, &q, &y, 1e-10).unwrap();
        assert!(rep
            .unit_cos
            .iter()
            .any(|e| e.eta == vec![1, -1] && e.residual < 1e-15));
        assert!(rep
            .unit_cos
            .iter()
            .any(|e| e.eta == vec![1, 1] && e.residual > 0.1));
    }

    #[test]
    fn matrix_round_trip_and_lerp() {
        let mut g = GramOperator::diagonal(&[0.25, 0.75]);
        g.set_block(1, 0, [[0.0, 0.1], [0.2, 0.0]]);
        assert_eq!(g.block(0, 1), [[0.0, 0.2], [0.1, 0.0]]);
        let back = GramOperator::from_matrix(&g.to_matrix()).unwrap();
        assert_eq!(back, g);
        let d = g.diagonal_part();
        assert_eq!(deformation_path(&g, &d, 0.0).unwrap(), g);
        assert_eq!(deformation_path(&g, &d, 1.0).unwrap(), d);
        assert!(deformation_path(&g, &GramOperator::zeros(3), 0.5).is_err());
        assert!(is_homogeneous(&GramOperator::zeros(4), 0.0));
    }
}
