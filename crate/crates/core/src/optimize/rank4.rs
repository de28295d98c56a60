//! Critical points of det on the unit-diagonal slice
//! {Q : Q_ii = 1, rᵗQr = 1} via Lagrange multipliers. With
//! Q = (1 a b; a 1 c; b c 1) the multiplier equations reduce to closed forms
//! b(a), c(a) and a quartic in a.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::scalar::{poly, rational, NumberField, Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Rank4Candidate {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    /// Minimal polynomial of a (primitive integer, constant term first).
    pub minpoly: Vec<BigInt>,
    /// max |slice-projected gradient of det| at the float image.
    pub stationarity: f64,
}

impl Rank4Candidate {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn matrix(&self) -> SymMatrix<Scalar> {
        let one = Scalar::from(1);
        let e = [
            [one.clone(), self.a.clone(), self.b.clone()],
            [self.a.clone(), one.clone(), self.c.clone()],
            [self.b.clone(), self.c.clone(), one],
        ];
        SymMatrix::from_fn(3, |i, j| e[i][j].clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rank4Critical {
    pub r: [Rational; 3],
    /// The quartic in a (constant term first); empty on the r2 = 0 branch.
    pub quartic: Vec<Rational>,
    pub candidates: Vec<Rank4Candidate>,
    /// True on the r2 = 0 branch where the critical point is block diagonal.
    pub block_diagonal: bool,
}

fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// The quartic whose roots are the admissible a.
pub fn lagrange_quartic(r: &[Rational; 3]) -> Vec<Rational> {
    let (r1, r2, r3) = (&r[0], &r[1], &r[2]);
    let s1 = r1 * r1;
    let s2 = r2 * r2;
    let s3 = r3 * r3;
    let p = r1 * r2;
    let one = Rational::one();
    let m = &s3 - &one; // r3² − 1
    let a4 = q(12) * &p * &p * &p;
    let a3 = q(8) * &p * &p * (q(2) * &s1 + q(2) * &s2 - &s3 - &one);
    let a2 = &p
        * (q(7) * &s1 * &s1 + q(2) * &s1 * (q(5) * &s2 - q(4) * (&s3 + &one)) + q(7) * &s2 * &s2
            - q(8) * &s2 * (&s3 + &one)
            + &m * &m);
    let a1 = (&s1 + &s2)
        * (&s1 * &s1 - q(2) * &s1 * (&s2 + &s3 + &one) + &s2 * &s2 - q(2) * &s2 * (&s3 + &one)
            + &m * &m);
    let a0 = -&p * (&s1 * &s1 + q(2) * &s1 * &s2 + &s2 * &s2 - &m * &m);
    vec![a0, a1, a2, a3, a4]
}

/// b(a), c(a) from the multiplier equations.
fn bc_of_a(r: &[Rational; 3], a: &Scalar) -> Option<(Scalar, Scalar)> {
    let (r1, r2, r3) = (
        Scalar::from(r[0].clone()),
        Scalar::from(r[1].clone()),
        Scalar::from(r[2].clone()),
    );
    let two = Scalar::from(2);
    let k = two.clone() * a.clone() * r1.clone() * r2.clone()
        + r1.clone() * r1.clone()
        + r2.clone() * r2.clone()
        + r3.clone() * r3.clone()
        - Scalar::from(1);
    let den = two.clone()
        * r3.clone()
        * (two * a.clone() * r1.clone() * r2.clone()
            + r1.clone() * r1.clone()
            + r2.clone() * r2.clone());
    if num_traits::Zero::is_zero(&den) {
        return None;
    }
    let b = -(a.clone() * r2.clone() + r1.clone()) * k.clone() / den.clone();
    let c = -(a.clone() * r1 + r2) * k / den;
    Some((b, c))
}

/// Projection of ∇det = cofactor matrix onto the slice directions, i.e. the
/// component of (C12, C13, C23) orthogonal to (r1 r2, r1 r3, r2 r3).
fn stationarity(r: &[Rational; 3], a: f64, b: f64, c: f64) -> f64 {
    let c12 = b * c - a;
    let c13 = a * c - b;
    let c23 = a * b - c;
    let (r1, r2, r3) = (
        rational::to_f64(&r[0]),
        rational::to_f64(&r[1]),
        rational::to_f64(&r[2]),
    );
    let n = [r1 * r2, r1 * r3, r2 * r3];
    let g = [c12, c13, c23];
    let nn: f64 = n.iter().map(|x| x * x).sum();
    if nn == 0.0 {
        return g.iter().map(|x| x.abs()).fold(0.0, f64::max);
    }
    let k: f64 = g.iter().zip(&n).map(|(x, y)| x * y).sum::<f64>() / nn;
    g.iter()
        .zip(&n)
        .map(|(x, y)| (x - k * y).abs())
        .fold(0.0, f64::max)
}

pub fn rank4_lagrange(r: [Rational; 3]) -> Result<Rank4Critical> {
    if r[0].is_zero() || r[2].is_zero() {
        return Err(Error::Degenerate("r1 r3 = 0".into()));
    }
    if r[1].is_zero() {
        // a = c = 0 and b fixed by the ellipsoid condition
        let b = (Rational::one() - &r[0] * &r[0] - &r[2] * &r[2]) / (q(2) * &r[0] * &r[2]);
        let stat = stationarity(&r, 0.0, rational::to_f64(&b), 0.0);
        let cand = Rank4Candidate {
            a: Scalar::from(0),
            b: Scalar::from(b),
            c: Scalar::from(0),
            minpoly: vec![BigInt::zero(), BigInt::one()],
            stationarity: stat,
        };
        return Ok(Rank4Critical {
            r,
            quartic: Vec::new(),
            candidates: vec![cand],
            block_diagonal: true,
        });
    }
    let quartic = lagrange_quartic(&r);
    let prim = poly::primitive_part(&quartic);
    let mut candidates = Vec::new();
    for factor in poly::factor_le4(&prim)? {
        let fr = poly::int_to_rational(&factor);
        for iv in poly::isolate_real_roots(&fr) {
            let a = if iv.is_exact() {
                Scalar::from(iv.lo.clone())
            } else {
                let field: Arc<NumberField> = NumberField::new(factor.clone(), iv.lo, iv.hi)?;
                Scalar::Algebraic(field.generator())
            };
            let Some((b, c)) = bc_of_a(&r, &a) else {
                continue;
            };
            let stat = stationarity(&r, a.to_f64(), b.to_f64(), c.to_f64());
            candidates.push(Rank4Candidate {
                a,
                b,
                c,
                minpoly: factor.clone(),
                stationarity: stat,
            });
        }
    }
    candidates.sort_by(|x, y| x.a.to_f64().total_cmp(&y.a.to_f64()));
    Ok(Rank4Critical {
        r,
        quartic,
        candidates,
        block_diagonal: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_at_578_is_the_example_polynomial_times_minus_35() {
        let f = lagrange_quartic(&[q(5), q(7), q(8)]);
        let expected: Vec<Rational> = [-1507, -10730, -1079, 23240, 14700]
            .iter()
            .map(|&v| q(35 * v))
            .collect();
        assert_eq!(f, expected);
    }

    #[test]
    fn block_diagonal_branch() {
        let c = rank4_lagrange([q(1), q(0), q(1)]).unwrap();
        assert!(c.block_diagonal);
        assert_eq!(
            c.candidates[0].b,
            Scalar::from(Rational::new((-1).into(), 2.into()))
        );
        assert!(rank4_lagrange([q(0), q(1), q(1)]).is_err());
    }

    #[test]
    fn candidates_are_stationary() {
        let c = rank4_lagrange([q(5), q(7), q(8)]).unwrap();
        assert!(!c.candidates.is_empty());
        for cand in &c.candidates {
            assert!(cand.stationarity < 1e-9, "{}", cand.stationarity);
            assert_eq!(cand.degree(), 4);
        }
        assert!(c
            .candidates
            .iter()
            .any(|x| (x.a.to_f64() + 0.149200615514973).abs() < 1e-12));
    }
}
