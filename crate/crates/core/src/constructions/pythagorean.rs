//! The non-homogeneous family on the 3-torus whose dual lattice is spanned
//! by (1/√3, 0, 0), √(2/3)(0, 1/r, 0), √(2/3)(0, 0, 1/r) for a primitive
//! Pythagorean triple (p, q, r). Its twelve norm-one classes pair up as
//! Y_{2k} + Y_{2k+1} = (2, 0, 0), which leaves room for 2×2 couplings
//! C_k = (α_k β_k; β_k −α_k) between the circles of each pair.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::immersion::{verify_full, GramOperator, MatrixData, DEFAULT_TOL};
use crate::linalg::{dense, int::combinations, IntMatrix, SymMatrix};
use crate::scalar::rational::{int, rat, to_f64};
use crate::scalar::{Rational, Scalar};

/// Largest hypotenuse for which uniqueness is checked by enumeration.
pub const HYPOTENUSE_CHECK_LIMIT: i64 = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct PythagoreanParams {
    pub triple: (i64, i64, i64),
    /// Diagonal values a_1…a_12 of AAᵗ (the weights c_j²).
    pub a: Vec<Rational>,
    pub r1: f64,
    pub r2: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub psi1: f64,
    pub psi2: f64,
}

impl PythagoreanParams {
    /// Homogeneous member (all R_i = 0) with diagonal a.
    pub fn homogeneous(triple: (i64, i64, i64), a: Vec<Rational>) -> Self {
        PythagoreanParams {
            triple,
            a,
            r1: 0.0,
            r2: 0.0,
            phi1: 0.0,
            phi2: 0.0,
            psi1: 0.0,
            psi2: 0.0,
        }
    }

    /// Homogeneous member with the centroid diagonal.
    pub fn centroid(triple: (i64, i64, i64)) -> Result<Self> {
        Ok(Self::homogeneous(triple, centroid_weights(triple)?))
    }
}

pub fn check_triple((p, q, r): (i64, i64, i64)) -> Result<()> {
    if !(0 < p && p < q && q < r) {
        return Err(Error::InvalidParameters(format!(
            "need 0 < p < q < r, got ({p}, {q}, {r})"
        )));
    }
    if p as i128 * p as i128 + q as i128 * q as i128 != r as i128 * r as i128 {
        return Err(Error::InvalidParameters(format!("{p}² + {q}² ≠ {r}²")));
    }
    if p.gcd(&q).gcd(&r) != 1 {
        return Err(Error::InvalidParameters(format!(
            "({p}, {q}, {r}) is not primitive"
        )));
    }
    Ok(())
}

/// Number of primitive triples with hypotenuse r, or None above the check
/// limit.
pub fn primitive_triples_with_hypotenuse(r: i64) -> Option<usize> {
    if r > HYPOTENUSE_CHECK_LIMIT {
        return None;
    }
    let rr = r * r;
    let mut count = 0;
    let mut p = 1;
    while 2 * p * p < rr {
        let q2 = rr - p * p;
        let q = (q2 as f64).sqrt().round() as i64;
        if q * q == q2 && p.gcd(&q) == 1 {
            count += 1;
        }
        p += 1;
    }
    Some(count)
}

/// Y: row 1 all ones, rows 2 and 3 as (r,−r,0,0,p,−p,−q,q,p,−p,q,−q) and
/// (0,0,r,−r,q,−q,p,−p,−q,q,p,−p).
pub fn pythagorean_y((p, q, r): (i64, i64, i64)) -> IntMatrix {
    let row2 = [r, -r, 0, 0, p, -p, -q, q, p, -p, q, -q];
    let row3 = [0, 0, r, -r, q, -q, p, -p, -q, q, p, -p];
    let cols = (0..12).map(|j| vec![1, row2[j], row3[j]]).collect();
    IntMatrix::from_columns(3, cols).expect("3×12")
}

/// Q = (1/3)·diag(1, 2/r², 2/r²).
pub fn pythagorean_q((_, _, r): (i64, i64, i64)) -> SymMatrix<Scalar> {
    let d = rat(2, 3 * r * r);
    SymMatrix::diagonal(vec![
        Scalar::from(rat(1, 3)),
        Scalar::from(d.clone()),
        Scalar::from(d),
    ])
}

/// The five linear constraints on a as rows of (A | b).
fn constraint_system((p, q, r): (i64, i64, i64)) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let c = |u: i64, v: i64| rat(u * v, 2 * r * r);
    let mut a = vec![vec![Rational::zero(); 12]; 5];
    for j in [4, 5, 10, 11] {
        a[0][j] = int(1);
    }
    for j in [6, 7, 8, 9] {
        a[0][j] = int(-1);
    }
    // (lead, [(coefficient, i, j)]) meaning lead + Σ coeff·(a_i + a_j)
    let rows = [
        (
            0,
            [
                (c(p, p + r), 4, 8),
                (c(p, p - r), 5, 9),
                (c(q, q + r), 7, 10),
                (c(q, q - r), 6, 11),
            ],
        ),
        (
            2,
            [
                (c(q, q + r), 4, 9),
                (c(q, q - r), 5, 8),
                (c(p, p + r), 6, 10),
                (c(p, p - r), 7, 11),
            ],
        ),
        (
            1,
            [
                (c(p, p - r), 4, 8),
                (c(p, p + r), 5, 9),
                (c(q, q - r), 7, 10),
                (c(q, q + r), 6, 11),
            ],
        ),
        (
            3,
            [
                (c(q, q - r), 4, 9),
                (c(q, q + r), 5, 8),
                (c(p, p - r), 6, 10),
                (c(p, p + r), 7, 11),
            ],
        ),
    ];
    for (k, (lead, terms)) in rows.iter().enumerate() {
        a[k + 1][*lead] = int(1);
        for (coef, i, j) in terms {
            a[k + 1][*i] += coef;
            a[k + 1][*j] += coef;
        }
    }
    let mut b = vec![rat(1, 4); 5];
    b[0] = int(0);
    (a, b)
}

/// Residuals of the five linear constraints (zero iff satisfied).
pub fn diagonal_constraints(triple: (i64, i64, i64), a: &[Rational]) -> Result<Vec<Rational>> {
    if a.len() != 12 {
        return Err(Error::DimensionMismatch {
            expected: 12,
            found: a.len(),
        });
    }
    let (m, b) = constraint_system(triple);
    Ok(m.iter()
        .zip(&b)
        .map(|(row, bi)| row.iter().zip(a).map(|(x, y)| x * y).sum::<Rational>() - bi)
        .collect())
}

/// Vertices of {a ≥ 0 : the five constraints hold}, sorted.
pub fn feasible_vertices(triple: (i64, i64, i64)) -> Result<Vec<Vec<Rational>>> {
    check_triple(triple)?;
    let (m, b) = constraint_system(triple);
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for idx in combinations(12, 5) {
        let sub: Vec<Vec<Rational>> = m
            .iter()
            .map(|row| idx.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let Ok(x) = dense::solve(&sub, &b) else {
            continue;
        };
        if x.iter().any(Signed::is_negative) {
            continue;
        }
        let mut v = vec![Rational::zero(); 12];
        for (&j, xj) in idx.iter().zip(x) {
            v[j] = xj;
        }
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out.sort();
    Ok(out)
}

/// Mean of the feasible vertices.
pub fn centroid_weights(triple: (i64, i64, i64)) -> Result<Vec<Rational>> {
    let verts = feasible_vertices(triple)?;
    if verts.is_empty() {
        return Err(Error::Infeasible("empty diagonal polytope".into()));
    }
    let k = int(verts.len() as i64);
    Ok((0..12)
        .map(|i| verts.iter().map(|v| v[i].clone()).sum::<Rational>() / &k)
        .collect())
}

/// (α_1…α_6, β_1…β_6).
pub fn couplings(params: &PythagoreanParams) -> ([f64; 6], [f64; 6]) {
    let (p, q, r) = params.triple;
    let k = ((p * p - q * q) as f64) / ((r * r) as f64);
    let family = |big_r: f64, phi: f64, psi: f64| {
        let (cp, cs) = (phi.cos().powi(2), psi.cos().powi(2));
        [
            -big_r * (1.0 + k * (cp - cs)),
            -big_r * (1.0 + k * (cs - cp)),
            big_r * cp,
            big_r * cs,
            big_r * psi.sin().powi(2),
            big_r * phi.sin().powi(2),
        ]
    };
    (
        family(params.r1, params.phi1, params.psi1),
        family(params.r2, params.phi2, params.psi2),
    )
}

fn validate(params: &PythagoreanParams) -> Result<()> {
    check_triple(params.triple)?;
    if params.a.len() != 12 {
        return Err(Error::DimensionMismatch {
            expected: 12,
            found: params.a.len(),
        });
    }
    if params.a.iter().any(Signed::is_negative) {
        return Err(Error::InvalidParameters(
            "diagonal values must be nonnegative".into(),
        ));
    }
    let res = diagonal_constraints(params.triple, &params.a)?;
    if let Some(k) = res.iter().position(|v| !v.is_zero()) {
        return Err(Error::InvalidParameters(format!(
            "linear constraint {} on a violated by {}",
            k + 1,
            res[k]
        )));
    }
    Ok(())
}

/// Homogeneous exact matrix data with weights a.
pub fn pythagorean_matrix_data(triple: (i64, i64, i64), a: &[Rational]) -> Result<MatrixData> {
    let params = PythagoreanParams {
        a: a.to_vec(),
        ..PythagoreanParams::homogeneous(triple, Vec::new())
    };
    validate(&params)?;
    MatrixData::new(
        pythagorean_q(triple),
        pythagorean_y(triple),
        a.iter().cloned().map(Scalar::from).collect(),
    )
}

/// The block operator AAᵗ = diag(B_1, …, B_6) with
/// B_k = (a_{2k−1}I C_k; C_kᵗ a_{2k}I), together with Q and Y; verified
/// before it is returned.
pub fn pythagorean_family(
    params: &PythagoreanParams,
) -> Result<(GramOperator, SymMatrix<Scalar>, IntMatrix)> {
    validate(params)?;
    let r = params.triple.2;
    if let Some(c) = primitive_triples_with_hypotenuse(r).filter(|&c| c != 1) {
        return Err(Error::InvalidParameters(format!(
            "{r} is the hypotenuse of {c} primitive triples"
        )));
    }
    let (alpha, beta) = couplings(params);
    let a: Vec<f64> = params.a.iter().map(to_f64).collect();
    let mut g = GramOperator::diagonal(&a);
    for k in 0..6 {
        let bound = params.a[2 * k].clone() * params.a[2 * k + 1].clone();
        let norm = alpha[k] * alpha[k] + beta[k] * beta[k];
        if norm > to_f64(&bound) {
            return Err(Error::InvalidParameters(format!(
                "PSD bound violated in block {}: α² + β² = {norm:e} > a·a = {:e}",
                k + 1,
                to_f64(&bound)
            )));
        }
        g.set_block(
            2 * k,
            2 * k + 1,
            [[alpha[k], beta[k]], [beta[k], -alpha[k]]],
        );
    }
    let qm = pythagorean_q(params.triple);
    let y = pythagorean_y(params.triple);
    let rep = verify_full(&g, &qm, &y, DEFAULT_TOL)?;
    if !rep.is_verified() {
        return Err(Error::Unverified(format!("{:?}", rep.verdict)));
    }
    Ok((g, qm, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::immersion::{eta_sets, is_homogeneous};

    const T: (i64, i64, i64) = (3, 4, 5);

    #[test]
    fn hypotenuse_counts() {
        assert_eq!(primitive_triples_with_hypotenuse(5), Some(1));
        assert_eq!(primitive_triples_with_hypotenuse(65), Some(2));
        assert_eq!(primitive_triples_with_hypotenuse(20_001), None);
    }

    #[test]
    fn constraints_are_the_flat_condition() {
        // every vertex, and the centroid, satisfies Σ a_j Y_jY_jᵗ = Q⁻¹/3 exactly
        let mut pts = feasible_vertices(T).unwrap();
        pts.push(centroid_weights(T).unwrap());
        for a in pts {
            let d = pythagorean_matrix_data(T, &a).unwrap();
            let mut d2 = d.clone();
            if a.iter().all(Signed::is_positive) {
                assert!(d.verify(DEFAULT_TOL).is_verified());
            }
            d2.weights = a
                .iter()
                .map(|x| Scalar::from(x.clone() + rat(1, 1000)))
                .collect();
            assert!(!d2.verify(DEFAULT_TOL).is_verified());
        }
    }

    #[test]
    fn centroid_is_interior() {
        let a = centroid_weights(T).unwrap();
        assert!(a.iter().all(Signed::is_positive));
        assert_eq!(a.iter().cloned().sum::<Rational>(), int(1));
    }

    #[test]
    fn homogeneous_and_rotated_members_verify() {
        let mut params = PythagoreanParams::centroid(T).unwrap();
        let (g, _, _) = pythagorean_family(&params).unwrap();
        assert!(is_homogeneous(&g, 0.0));
        params.r1 = 0.01;
        let (g, _, y) = pythagorean_family(&params).unwrap();
        assert!(!is_homogeneous(&g, 1e-10));
        let sys = eta_sets(&y);
        assert_eq!(sys.get(&[2, 0, 0]).unwrap().len(), 6);
        params.r2 = 0.004;
        params.phi1 = 0.3;
        params.psi1 = 1.1;
        params.phi2 = -0.7;
        params.psi2 = 0.2;
        assert!(pythagorean_family(&params).is_ok());
    }

    #[test]
    fn psd_bound_and_constraints_are_enforced() {
        let mut params = PythagoreanParams::centroid(T).unwrap();
        params.r1 = 1.0;
        match pythagorean_family(&params) {
            Err(Error::InvalidParameters(m)) => assert!(m.contains("PSD"), "{m}"),
            e => panic!("{e:?}"),
        }
        let mut params = PythagoreanParams::centroid(T).unwrap();
        params.a[0] += rat(1, 100);
        assert!(matches!(
            pythagorean_family(&params),
            Err(Error::InvalidParameters(_))
        ));
    }
}
