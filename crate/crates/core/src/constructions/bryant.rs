//! A one-parameter family of minimal flat 2-tori in S^7 on the tori
//! R²/2π(Z ⊕ (a + ib)Z) with a = m/n < 1/2 and b = √(1 − a²), built from
//! the four frequency classes (0, n), (n, 2m), (n, 0), (2m, n).

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::immersion::{MatrixData, DEFAULT_TOL};
use crate::linalg::{IntMatrix, SymMatrix};
use crate::scalar::rational::{int, rat};
use crate::scalar::{Field, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Bryant2TorusParams {
    pub m: i64,
    pub n: i64,
    /// ρ² = r_4², exact when ρ·b is rational.
    pub rho_sq: Scalar,
}

impl Bryant2TorusParams {
    /// ρ as a float.
    pub fn new(m: i64, n: i64, rho: f64) -> Self {
        Bryant2TorusParams {
            m,
            n,
            rho_sq: Scalar::Float(rho * rho),
        }
    }

    /// Exact rational ρ.
    pub fn with_rho(m: i64, n: i64, rho: Rational) -> Self {
        Bryant2TorusParams {
            m,
            n,
            rho_sq: Scalar::from(&rho * &rho),
        }
    }

    /// ρ = k/b, kept exact: ρ² = k²/b². The endpoints are k = 0 and k = 1/2.
    pub fn with_rho_times_b(m: i64, n: i64, k: Rational) -> Self {
        let b2 = rat(n * n - m * m, n * n);
        Bryant2TorusParams {
            m,
            n,
            rho_sq: Scalar::from(&k * &k / b2),
        }
    }

    pub fn a(&self) -> Rational {
        rat(self.m, self.n)
    }

    pub fn b_squared(&self) -> Rational {
        rat(self.n * self.n - self.m * self.m, self.n * self.n)
    }

    /// Upper end 1/(2b) of the ρ range.
    pub fn rho_max(&self) -> f64 {
        0.5 / crate::scalar::rational::to_f64(&self.b_squared()).sqrt()
    }
}

fn validate(p: &Bryant2TorusParams) -> Result<()> {
    if p.m < 1 || p.n < 1 || p.m.gcd(&p.n) != 1 {
        return Err(Error::InvalidParameters(format!(
            "m = {}, n = {} must be coprime positive integers",
            p.m, p.n
        )));
    }
    if 2 * p.m >= p.n {
        return Err(Error::InvalidParameters(format!(
            "a = {}/{} must be below 1/2",
            p.m, p.n
        )));
    }
    let max = Scalar::from(Rational::one() / (int(4) * p.b_squared()));
    if p.rho_sq.sign() < 0 || ((p.rho_sq.clone() - max).sign() > 0 && !close_to_max(p)) {
        return Err(Error::InvalidParameters(format!(
            "ρ = {} outside [0, 1/(2b)] = [0, {}]",
            p.rho_sq.to_f64().sqrt(),
            p.rho_max()
        )));
    }
    Ok(())
}

fn close_to_max(p: &Bryant2TorusParams) -> bool {
    !p.rho_sq.is_exact() && (p.rho_sq.to_f64().sqrt() - p.rho_max()).abs() <= 1e-15
}

/// r_1², …, r_4² from the closed forms.
pub fn bryant_weights(p: &Bryant2TorusParams) -> Result<[Scalar; 4]> {
    validate(p)?;
    let a2 = Scalar::from(p.a() * p.a());
    let b2 = Scalar::from(p.b_squared());
    let rho2 = p.rho_sq.clone();
    let k = b2.clone() - Scalar::from(3) * a2.clone();
    let quarter = Scalar::one() / (Scalar::from(4) * b2.clone());
    let mut r2 = [
        (b2.clone() - a2) / (Scalar::from(2) * b2) - k.clone() * rho2.clone(),
        quarter.clone() - rho2.clone(),
        quarter + k * rho2.clone(),
        rho2,
    ];
    // the float path can land a hair below zero at ρ = 1/(2b)
    for w in r2.iter_mut() {
        if !w.is_exact() && w.to_f64() < 0.0 && w.to_f64() > -1e-15 {
            *w = Scalar::Float(0.0);
        }
        if w.sign() < 0 {
            return Err(Error::InvalidParameters(format!("negative r² = {w}")));
        }
    }
    Ok(r2)
}

/// Residuals of Σ r_i² = 1,
/// n⁴r_1² − n²(n² − 2m²)(r_2² + r_3²) + (n⁴ − 8m²n² + 8m⁴)r_4² = 0 and
/// n²(r_2² − r_3²) + 2(n² − 2m²)r_4² = 0.
pub fn bryant_equations(m: i64, n: i64, r2: &[Scalar; 4]) -> [Scalar; 3] {
    let (m2, n2) = (m * m, n * n);
    let s = |v: i64| Scalar::from(v);
    let sum = r2.iter().cloned().fold(Scalar::zero(), |x, y| x + y) - Scalar::one();
    let second = s(n2 * n2) * r2[0].clone()
        - s(n2 * (n2 - 2 * m2)) * (r2[1].clone() + r2[2].clone())
        + s(n2 * n2 - 8 * m2 * n2 + 8 * m2 * m2) * r2[3].clone();
    let third = s(n2) * (r2[1].clone() - r2[2].clone()) + s(2 * (n2 - 2 * m2)) * r2[3].clone();
    [sum, second, third]
}

/// Q = (1/n²)(1 −a; −a 1) on the frequencies (p, q); every class has norm 1.
pub fn bryant_q(m: i64, n: i64) -> SymMatrix<Scalar> {
    let d = Scalar::from(rat(1, n * n));
    let off = Scalar::from(rat(-m, n * n * n));
    SymMatrix::from_rows(&[vec![d.clone(), off.clone()], vec![off, d]]).expect("2×2")
}

/// The N = 4 certificate, or N = 3 at the endpoints where a weight
/// vanishes.
pub fn bryant_2torus(p: &Bryant2TorusParams) -> Result<MatrixData> {
    let r2 = bryant_weights(p)?;
    let (m, n) = (p.m, p.n);
    let all = [vec![0, n], vec![n, 2 * m], vec![n, 0], vec![2 * m, n]];
    let mut cols = Vec::new();
    let mut weights = Vec::new();
    for (c, w) in all.into_iter().zip(r2) {
        let zero = if w.is_exact() {
            w.is_zero()
        } else {
            w.to_f64().abs() <= DEFAULT_TOL
        };
        if !zero {
            cols.push(c);
            weights.push(w);
        }
    }
    let data = MatrixData::new(bryant_q(m, n), IntMatrix::from_columns(2, cols)?, weights)?;
    let rep = data.verify(DEFAULT_TOL);
    if !rep.is_verified() {
        return Err(Error::Unverified(format!("{:?}", rep.verdict)));
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_interior() {
        let p0 = Bryant2TorusParams::with_rho_times_b(1, 3, int(0));
        let d0 = bryant_2torus(&p0).unwrap();
        assert_eq!(d0.classes(), 3);
        assert!(d0.is_exact());
        let mid = bryant_2torus(&Bryant2TorusParams::with_rho_times_b(1, 3, rat(1, 4))).unwrap();
        assert_eq!(mid.classes(), 4);
        let end = Bryant2TorusParams::with_rho_times_b(1, 3, rat(1, 2));
        assert!(bryant_weights(&end).unwrap()[1].is_zero());
        assert_eq!(bryant_2torus(&end).unwrap().sphere_dim(), 5);
    }

    #[test]
    fn equations_vanish_exactly() {
        for k in [int(0), rat(1, 7), rat(1, 4), rat(1, 2)] {
            let p = Bryant2TorusParams::with_rho_times_b(2, 7, k);
            let r2 = bryant_weights(&p).unwrap();
            assert!(bryant_equations(2, 7, &r2).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn float_rho_and_range() {
        let p = Bryant2TorusParams::new(1, 3, 0.2);
        assert!(bryant_2torus(&p).is_ok());
        let max = Bryant2TorusParams::new(1, 3, 1.0).rho_max();
        assert!(bryant_2torus(&Bryant2TorusParams::new(1, 3, max)).is_ok());
        assert!(bryant_2torus(&Bryant2TorusParams::new(1, 3, max * 1.01)).is_err());
        assert!(bryant_2torus(&Bryant2TorusParams::new(1, 2, 0.0)).is_err());
        assert!(bryant_2torus(&Bryant2TorusParams::new(2, 6, 0.0)).is_err());
        assert!(
            bryant_2torus(&Bryant2TorusParams::with_rho(1, 3, rat(1, 5)))
                .unwrap()
                .is_exact()
        );
    }
}
