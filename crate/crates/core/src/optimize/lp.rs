//! Exact phase-I simplex (Bland's rule) for feasibility of A x = b, x ≥ 0.

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Returns a basic feasible solution of `A x = b, x ≥ 0`, or
/// [`Error::Infeasible`]. Exact when `T` is exact; signs of algebraic
/// entries are certified.
pub fn feasible_point<T: Field>(a: &[Vec<T>], b: &[T]) -> Result<Vec<T>> {
    let m = a.len();
    let nvar = a.first().map_or(0, |r| r.len());
    if b.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: b.len(),
        });
    }
    // tableau: nvar originals, m artificials, rhs
    let width = nvar + m + 1;
    let mut tab: Vec<Vec<T>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].sign() < 0;
        let mut row = Vec::with_capacity(width);
        for j in 0..nvar {
            row.push(if flip {
                -a[i][j].clone()
            } else {
                a[i][j].clone()
            });
        }
        for k in 0..m {
            row.push(if k == i { T::one() } else { T::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        tab.push(row);
    }
    let mut basis: Vec<usize> = (nvar..nvar + m).collect();
    // reduced costs of the phase-I objective (minimize Σ artificials)
    let mut cost = vec![T::zero(); width];
    for row in &tab {
        for j in 0..nvar {
            cost[j] = cost[j].clone() - row[j].clone();
        }
        cost[width - 1] = cost[width - 1].clone() - row[width - 1].clone();
    }
    while let Some(enter) = (0..nvar + m).find(|&j| cost[j].sign() < 0) {
        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            if tab[i][enter].sign() <= 0 {
                continue;
            }
            let ratio = tab[i][width - 1].clone() / tab[i][enter].clone();
            let take = match &leave {
                None => true,
                Some((li, lr)) => {
                    let s = (ratio.clone() - lr.clone()).sign();
                    s < 0 || (s == 0 && basis[i] < basis[*li])
                }
            };
            if take {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            // unbounded direction cannot occur in phase I
            return Err(Error::Infeasible("unbounded phase-I direction".into()));
        };
        let piv = tab[r][enter].clone();
        for x in tab[r].iter_mut() {
            *x = x.clone() / piv.clone();
        }
        for i in 0..m {
            if i != r && !tab[i][enter].is_zero() {
                let f = tab[i][enter].clone();
                for j in 0..width {
                    let v = tab[r][j].clone();
                    tab[i][j] = tab[i][j].clone() - f.clone() * v;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for j in 0..width {
                cost[j] = cost[j].clone() - f.clone() * tab[r][j].clone();
            }
        }
        basis[r] = enter;
    }
    // objective value is −cost[rhs]
    if cost[width - 1].sign() != 0 {
        return Err(Error::Infeasible("no nonnegative solution".into()));
    }
    let mut x = vec![T::zero(); nvar];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < nvar {
            x[bv] = tab[i][width - 1].clone();
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};
    use crate::scalar::Rational;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    #[test]
    fn feasible_and_infeasible() {
        let a = m(&[&[1, 1, 1], &[1, -1, 0]]);
        let x = feasible_point(&a, &[int(1), rat(1, 2)]).unwrap();
        assert_eq!(&x[0] + &x[1] + &x[2], int(1));
        assert_eq!(&x[0] - &x[1], rat(1, 2));
        assert!(x.iter().all(|v| v >= &int(0)));
        let a = m(&[&[1, 1]]);
        assert!(feasible_point(&a, &[int(-1)]).is_err());
        // redundant equality rows are fine
        let a = m(&[&[1, 2], &[2, 4]]);
        assert!(feasible_point(&a, &[int(2), int(4)]).is_ok());
    }
}
