//! Rational points on the hyper-ellipsoid uᵗQu = 1, by projecting through a
//! known rational point u0.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, SymMatrix};
use crate::scalar::Rational;

fn bilinear(q: &SymMatrix<Rational>, a: &[Rational], b: &[Rational]) -> Rational {
    let n = q.dim();
    let mut acc = Rational::zero();
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if !b[j].is_zero() {
                acc += &a[i] * q.get(i, j) * &b[j];
            }
        }
    }
    acc
}

/// Second intersection of the line through `u0` in direction `d` with the
/// ellipsoid through `u0`.
pub fn project_through(q: &SymMatrix<Rational>, u0: &[Rational], d: &[Rational]) -> Vec<Rational> {
    let two = Rational::from_integer(BigInt::from(2));
    let t = two * bilinear(q, u0, d) / bilinear(q, d, d);
    u0.iter().zip(d).map(|(u, di)| u - &t * di).collect()
}

fn random_rational(rng: &mut ChaCha8Rng, height: i64) -> Rational {
    let p = rng.random_range(-height..=height);
    let q = rng.random_range(1..=height);
    Rational::new(p.into(), q.into())
}

/// `count` distinct rational points with uᵗQu = 1, obtained from random
/// rational points u′ on the coordinate hyperplane x_i = 0 (i the first
/// index with u0_i ≠ 0) via `u = u0 − 2 (u0ᵗQd)/(dᵗQd) d`, `d = u′ − u0`.
pub fn rational_points_on_ellipsoid(
    q: &SymMatrix<Rational>,
    u0: &[Rational],
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<Rational>>> {
    let n = q.dim();
    if u0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: u0.len(),
        });
    }
    if !linalg::is_positive_definite(q) {
        return Err(Error::NotPositiveDefinite);
    }
    if bilinear(q, u0, u0) != Rational::from_integer(BigInt::from(1)) {
        return Err(Error::NotOnEllipsoid);
    }
    let axis = u0
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::NotOnEllipsoid)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(count);
    let mut height = 4i64;
    let mut misses = 0usize;
    while out.len() < count {
        let up: Vec<Rational> = (0..n)
            .map(|i| {
                if i == axis {
                    Rational::zero()
                } else {
                    random_rational(&mut rng, height)
                }
            })
            .collect();
        let d: Vec<Rational> = up.iter().zip(u0).map(|(a, b)| a - b).collect();
        let u = project_through(q, u0, &d);
        if u.as_slice() != u0 && !out.contains(&u) {
            out.push(u);
            misses = 0;
        } else {
            misses += 1;
            if misses > 20 {
                height += 1;
                misses = 0;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};

    #[test]
    fn circle_points_are_classical() {
        let q = SymMatrix::<Rational>::identity(2);
        let u0 = vec![int(1), int(0)];
        let pts = rational_points_on_ellipsoid(&q, &u0, 20, 3).unwrap();
        for p in &pts {
            assert_eq!(bilinear(&q, p, p), int(1));
            // ((t²−1)/(t²+1), 2t/(t²+1)) with t = y/(1 − x)... parameter check
            let t = &p[1] / (int(1) - &p[0]);
            let tt = &t * &t;
            assert_eq!(p[0], (&tt - int(1)) / (&tt + int(1)));
        }
    }

    #[test]
    fn rejects_points_off_the_ellipsoid() {
        let q = SymMatrix::diagonal(vec![rat(1, 4), int(1)]);
        assert_eq!(
            rational_points_on_ellipsoid(&q, &[int(1), int(0)], 3, 0),
            Err(Error::NotOnEllipsoid)
        );
        let pts = rational_points_on_ellipsoid(&q, &[int(2), int(0)], 10, 0).unwrap();
        assert_eq!(pts.len(), 10);
    }
}
