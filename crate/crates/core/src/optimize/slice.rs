//! The affine slice W_Y = {Q0 + Σ t_i Q_i} of symmetric matrices whose
//! ellipsoid passes through every column of Y.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dense, IntMatrix, SymMatrix};
use crate::scalar::{rational, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct AffineSliceW {
    pub y: IntMatrix,
    /// The unique solution lying in span{Y_j Y_jᵗ}.
    pub q0: SymMatrix<Rational>,
    /// Integer basis (content 1) of the orthogonal complement of span{Y_j Y_jᵗ}.
    pub basis: Vec<SymMatrix<Rational>>,
}

impl AffineSliceW {
    pub fn n(&self) -> usize {
        self.q0.dim()
    }

    /// Slice dimension s.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn point(&self, t: &[f64]) -> SymMatrix<f64> {
        let mut q = self.q0.to_f64();
        for (ti, qi) in t.iter().zip(&self.basis) {
            q = q.add(&qi.to_f64().scale(ti));
        }
        q
    }

    pub fn point_exact(&self, t: &[Rational]) -> SymMatrix<Rational> {
        let mut q = self.q0.clone();
        for (ti, qi) in t.iter().zip(&self.basis) {
            q = q.add(&qi.scale(ti));
        }
        q
    }
}

fn dot(a: &SymMatrix<Rational>, b: &SymMatrix<Rational>) -> Rational {
    crate::linalg::trace_inner(a, b).expect("same dimension")
}

/// Elementary symmetric matrices E_ii and E_ij + E_ji in packed order.
fn standard_basis(n: usize) -> Vec<SymMatrix<Rational>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            out.push(SymMatrix::from_fn(n, |a, b| {
                if (a, b) == (i, j) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
        }
    }
    out
}

/// Scales to an integer matrix with content 1 and first nonzero packed
/// entry positive.
fn integer_normalize(m: &SymMatrix<Rational>) -> SymMatrix<Rational> {
    let l = rational::denominator_lcm(m.packed().iter());
    let ints: Vec<BigInt> = m
        .packed()
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map_or(BigInt::one(), |x| {
            if x.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            }
        });
    let data = ints
        .into_iter()
        .map(|x| Rational::from_integer(x * &sign / &g))
        .collect();
    SymMatrix::from_packed(m.dim(), data).expect("same size")
}

pub fn build_slice(y: &IntMatrix) -> Result<AffineSliceW> {
    let n = y.nrows();
    let rank = y.rank();
    if rank < n {
        return Err(Error::RankDeficient { rank, expected: n });
    }
    let ms: Vec<SymMatrix<Rational>> = y.columns().iter().map(|c| SymMatrix::outer(c)).collect();
    // independent subset of the rank-one matrices
    let mut indep: Vec<SymMatrix<Rational>> = Vec::new();
    for m in &ms {
        let mut rows: Vec<Vec<Rational>> = indep.iter().map(|x| x.packed().to_vec()).collect();
        rows.push(m.packed().to_vec());
        if dense::rank(&rows) == rows.len() {
            indep.push(m.clone());
        }
    }
    let gram: Vec<Vec<Rational>> = indep
        .iter()
        .map(|a| indep.iter().map(|b| dot(a, b)).collect())
        .collect();
    let ones = vec![Rational::one(); indep.len()];
    let x = dense::solve(&gram, &ones)?;
    let mut q0 = SymMatrix::<Rational>::zeros(n);
    for (xi, m) in x.iter().zip(&indep) {
        q0 = q0.add(&m.scale(xi));
    }
    if ms.iter().any(|m| !dot(&q0, m).is_one()) {
        return Err(Error::InconsistentSlice);
    }
    // Gram–Schmidt: orthogonal basis of the span, then extend by the
    // standard basis.
    let mut ortho: Vec<SymMatrix<Rational>> = Vec::new();
    let project_out = |v: &SymMatrix<Rational>, ortho: &[SymMatrix<Rational>]| {
        let mut r = v.clone();
        for o in ortho {
            let c = dot(&r, o) / dot(o, o);
            r = r.sub(&o.scale(&c));
        }
        r
    };
    for m in &indep {
        let r = project_out(m, &ortho);
        ortho.push(r);
    }
    let s = n * (n + 1) / 2 - indep.len();
    let mut basis = Vec::with_capacity(s);
    for e in standard_basis(n) {
        if basis.len() == s {
            break;
        }
        let r = project_out(&e, &ortho);
        if r.is_zero_matrix() {
            continue;
        }
        ortho.push(r.clone());
        basis.push(integer_normalize(&r));
    }
    Ok(AffineSliceW {
        y: y.clone(),
        q0,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::int;

    #[test]
    fn identity_slice() {
        let s = build_slice(&IntMatrix::identity(3)).unwrap();
        assert_eq!(s.q0, SymMatrix::identity(3));
        assert_eq!(s.dim(), 3);
        for q in &s.basis {
            for j in 0..3 {
                assert_eq!(q.get(j, j), &int(0));
            }
        }
    }

    #[test]
    fn inconsistent_and_rank_deficient() {
        let y = IntMatrix::from_columns(2, vec![vec![1, 0], vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(build_slice(&y), Err(Error::InconsistentSlice));
        let y = IntMatrix::from_columns(2, vec![vec![1, 0], vec![2, 0]]).unwrap();
        assert!(matches!(build_slice(&y), Err(Error::RankDeficient { .. })));
    }
}
