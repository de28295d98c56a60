//! Minimal immersions of rational tori: rational points on the ellipsoid,
//! cleared denominators, and an exact LP for the weights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::immersion::{MatrixData, DEFAULT_TOL};
use crate::lattice::points::rational_points_on_ellipsoid;
use crate::linalg::{self, dense, IntMatrix, SymMatrix};
use crate::optimize::lp;
use crate::scalar::rational::{int, rational_sqrt};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct RationalPipelineConfig {
    pub q: SymMatrix<Rational>,
    pub sample_count: usize,
    pub seed: u64,
    /// Cap on the common denominator μ.
    pub max_denominator: i64,
}

impl RationalPipelineConfig {
    pub fn new(q: SymMatrix<Rational>, seed: u64) -> Self {
        let n = q.dim();
        RationalPipelineConfig {
            q,
            sample_count: 12 * n * (n + 1) / 2,
            seed,
            max_denominator: 10_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RationalConstruction {
    /// Certificate for the torus with Gram Q/(s μ²).
    pub data: MatrixData,
    /// s = e₁ᵗQe₁.
    pub scale: Rational,
    pub mu: i64,
    /// Number of candidate points offered to the LP.
    pub candidates: usize,
}

fn denominator_lcm(u: &[Rational]) -> BigInt {
    u.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

fn outer_rank(points: &[Vec<Rational>]) -> usize {
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|u| {
            let n = u.len();
            let mut v = Vec::with_capacity(n * (n + 1) / 2);
            for i in 0..n {
                for j in i..n {
                    v.push(&u[i] * &u[j]);
                }
            }
            v
        })
        .collect();
    dense::rank(&rows)
}

/// Σ λ_j u_ju_jᵗ = target with λ ≥ 0.
fn solve_weights(points: &[Vec<Rational>], target: &SymMatrix<Rational>) -> Result<Vec<Rational>> {
    let n = target.dim();
    let mut a: Vec<Vec<Rational>> = Vec::with_capacity(n * (n + 1) / 2);
    let mut b = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            a.push(points.iter().map(|u| &u[i] * &u[j]).collect());
            b.push(target.get(i, j).clone());
        }
    }
    lp::feasible_point(&a, &b)
}

/// Seeded construction for a rational positive definite Q.
///
/// Candidates are the scaled coordinate axes that land on the ellipsoid,
/// then sampled rational points; a point is kept only while the running lcm
/// of denominators stays within `max_denominator`. The LP is tried on
/// growing prefixes of the candidate list so that simple supports win.
pub fn construct_rational(cfg: &RationalPipelineConfig) -> Result<RationalConstruction> {
    let n = cfg.q.dim();
    let m = n * (n + 1) / 2;
    if cfg.sample_count < m {
        return Err(Error::InvalidParameters(format!(
            "sample_count {} < n(n+1)/2 = {m}",
            cfg.sample_count
        )));
    }
    if cfg.max_denominator < 1 {
        return Err(Error::InvalidParameters(
            "max_denominator must be at least 1".into(),
        ));
    }
    if !linalg::is_positive_definite(&cfg.q) {
        return Err(Error::NotPositiveDefinite);
    }
    let scale = cfg.q.get(0, 0).clone();
    let qs = cfg.q.scale(&(Rational::one() / &scale));

    let mut candidates: Vec<Vec<Rational>> = Vec::new();
    for i in 0..n {
        if let Some(root) = rational_sqrt(qs.get(i, i)) {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one() / root;
            candidates.push(e);
        }
    }
    let u0 = candidates[0].clone();
    let sampled = rational_points_on_ellipsoid(&qs, &u0, cfg.sample_count, cfg.seed)?;
    let cap = BigInt::from(cfg.max_denominator);
    let mut common = candidates
        .iter()
        .fold(BigInt::one(), |acc, u| acc.lcm(&denominator_lcm(u)));
    for u in sampled {
        let next = common.lcm(&denominator_lcm(&u));
        let neg: Vec<Rational> = u.iter().map(|c| -c).collect();
        if next <= cap && !candidates.contains(&u) && !candidates.contains(&neg) {
            common = next;
            candidates.push(u);
        }
    }
    if outer_rank(&candidates) < m {
        return Err(Error::Infeasible(format!(
            "kept points do not span Sym_{n}; retry with more samples or a larger denominator cap"
        )));
    }

    let target = linalg::inverse(&qs)?.scale(&(Rational::one() / int(n as i64)));
    let mut k = n.min(candidates.len());
    let (support, lambda) = loop {
        let prefix = &candidates[..k];
        if outer_rank(prefix) == m || k == n {
            if let Ok(l) = solve_weights(prefix, &target) {
                break (prefix.to_vec(), l);
            }
        }
        if k == candidates.len() {
            return Err(Error::Infeasible(format!(
                "Q⁻¹/n is not in the hull of {} sampled points; retry with more samples",
                candidates.len()
            )));
        }
        k = (2 * k).min(candidates.len());
    };

    let used: Vec<(Vec<Rational>, Rational)> = support
        .into_iter()
        .zip(lambda)
        .filter(|(_, l)| !l.is_zero())
        .collect();
    // μ clears every kept sample, not just the support: it is the covering
    // scale of the certified torus and varies with the seed
    let mu = common;
    let mu_r = Rational::from_integer(mu.clone());
    let mut cols = Vec::new();
    let mut weights = Vec::new();
    for (u, l) in used {
        let col = u
            .iter()
            .map(|c| {
                let v = c * &mu_r;
                v.to_integer()
                    .to_i64()
                    .ok_or_else(|| Error::InvalidParameters("coordinate overflow".into()))
            })
            .collect::<Result<Vec<i64>>>()?;
        cols.push(col);
        weights.push(Scalar::from(l));
    }
    let q_cert = qs.scale(&(Rational::one() / (&mu_r * &mu_r))).to_scalar();
    let data = MatrixData::new(q_cert, IntMatrix::from_columns(n, cols)?, weights)?;
    let rep = data.verify(DEFAULT_TOL);
    if !rep.is_verified() {
        return Err(Error::Unverified(format!("{:?}", rep.verdict)));
    }
    Ok(RationalConstruction {
        data,
        scale,
        mu: mu.to_i64().expect("μ is capped"),
        candidates: candidates.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    #[test]
    fn identity_gives_a_clifford_support() {
        let out =
            construct_rational(&RationalPipelineConfig::new(SymMatrix::identity(3), 1)).unwrap();
        assert_eq!(out.data.classes(), 3);
        assert!(out
            .data
            .weights
            .iter()
            .all(|w| *w == Scalar::from(rat(1, 3))));
        let mu = out.mu;
        assert_eq!(
            out.data.y,
            IntMatrix::from_columns(3, vec![vec![mu, 0, 0], vec![0, mu, 0], vec![0, 0, mu]])
                .unwrap()
        );
        let other =
            construct_rational(&RationalPipelineConfig::new(SymMatrix::identity(3), 2)).unwrap();
        assert_ne!(other.mu, mu);
    }

    #[test]
    fn deterministic_per_seed() {
        let q = SymMatrix::from_rows(&[
            vec![int(1), rat(1, 4), rat(1, 4)],
            vec![rat(1, 4), int(1), rat(1, 4)],
            vec![rat(1, 4), rat(1, 4), int(1)],
        ])
        .unwrap();
        let a = construct_rational(&RationalPipelineConfig::new(q.clone(), 3)).unwrap();
        let b = construct_rational(&RationalPipelineConfig::new(q, 3)).unwrap();
        assert_eq!(a.data, b.data);
        assert_eq!(a.mu, b.mu);
    }

    #[test]
    fn parameter_checks() {
        let mut cfg = RationalPipelineConfig::new(SymMatrix::identity(3), 0);
        cfg.sample_count = 2;
        assert!(matches!(
            construct_rational(&cfg),
            Err(Error::InvalidParameters(_))
        ));
        cfg.sample_count = 20;
        cfg.max_denominator = 0;
        assert!(matches!(
            construct_rational(&cfg),
            Err(Error::InvalidParameters(_))
        ));
    }
}
