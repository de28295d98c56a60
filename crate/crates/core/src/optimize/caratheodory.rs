//! Carathéodory reduction of a convex combination of rank-one matrices.

use super::cmax::HullPoint;
use crate::linalg::{dense, SymMatrix};
use crate::scalar::{Field, Rational};

/// Rewrites the combination on at most n(n+1)/2 = dim Sym_n vectors by
/// eliminating along linear dependencies of the Y_jY_jᵗ, keeping P exactly.
/// When all Y_j lie on one ellipsoid ⟨Q, Y_jY_jᵗ⟩ = 1 every dependency has
/// zero sum, so Σλ = 1 is preserved as well. On ties the lowest index is
/// eliminated.
pub fn caratheodory_reduce<T: Field>(point: &HullPoint<T>) -> HullPoint<T> {
    let n = point.y.nrows();
    let bound = n * (n + 1) / 2;
    let mut lambda = point.lambda.clone();
    loop {
        let support: Vec<usize> = (0..lambda.len())
            .filter(|&j| !lambda[j].is_zero())
            .collect();
        if support.len() <= bound {
            break;
        }
        let vectors: Vec<Vec<Rational>> = support
            .iter()
            .map(|&j| {
                SymMatrix::<Rational>::outer(point.y.col(j))
                    .packed()
                    .to_vec()
            })
            .collect();
        let kernel = dense::kernel(&dense::transpose(&vectors));
        let Some(mut mu) = kernel.into_iter().next() else {
            break;
        };
        let zero = Rational::from_integer(0.into());
        if mu.iter().all(|m| m <= &zero) {
            mu = mu.into_iter().map(|m| -m).collect();
        }
        // α = min λ_j / μ_j over μ_j > 0
        let mut best: Option<(usize, T)> = None;
        for (k, m) in mu.iter().enumerate() {
            if m <= &zero {
                continue;
            }
            let ratio = lambda[support[k]].clone() / T::from_rational(m);
            let better = match &best {
                None => true,
                Some((_, b)) => (ratio.clone() - b.clone()).sign() < 0,
            };
            if better {
                best = Some((k, ratio));
            }
        }
        let (elim, alpha) = best.expect("kernel vectors of lifted points have a positive entry");
        for (k, m) in mu.iter().enumerate() {
            let j = support[k];
            lambda[j] = lambda[j].clone() - alpha.clone() * T::from_rational(m);
            if !lambda[j].is_exact() && lambda[j].approx() < 0.0 {
                lambda[j] = T::zero();
            }
        }
        lambda[support[elim]] = T::zero();
    }
    let p = point.p.clone();
    HullPoint {
        y: point.y.clone(),
        lambda,
        p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;
    use crate::optimize::cmax::combine;
    use crate::scalar::rational::rat;

    #[test]
    fn square_with_diagonals() {
        let y = IntMatrix::from_columns(2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]])
            .unwrap();
        let h = HullPoint::new(y.clone(), vec![rat(1, 4); 4]).unwrap();
        let r = caratheodory_reduce(&h);
        assert!(r.support().len() <= 3);
        assert_eq!(combine(&y, &r.lambda), h.p);
        assert_eq!(r.lambda, vec![rat(3, 4), rat(3, 4), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn small_support_is_unchanged() {
        let y = IntMatrix::identity(3);
        let h = HullPoint::new(y, vec![rat(1, 3); 3]).unwrap();
        assert_eq!(caratheodory_reduce(&h), h);
    }
}
