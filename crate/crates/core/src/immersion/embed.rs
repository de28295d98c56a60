//! Embeddedness of a homogeneous immersion from its integer data Y: the map
//! u ↦ uY must send no nonzero u ∈ [0,1)ⁿ to an integer point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{int::combinations, IntMatrix};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbeddingCertificate {
    /// The listed columns form a unimodular minor.
    UnitMinor(Vec<usize>),
    /// No witness exists (exhaustive search).
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Embeddedness {
    Embedded(EmbeddingCertificate),
    /// u ∈ [0,1)ⁿ, u ≠ 0, with uY integral: u and 0 have the same image.
    NotEmbedded {
        witness: Vec<Rational>,
    },
    Unknown,
}

impl Embeddedness {
    pub fn is_embedded(&self) -> bool {
        matches!(self, Embeddedness::Embedded(_))
    }
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    // Bareiss fraction-free elimination
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Columns `idx` of `y` as an n×n matrix B (columns are the B_j).
fn square(y: &IntMatrix, idx: &[usize]) -> Vec<Vec<i128>> {
    let n = y.nrows();
    (0..n)
        .map(|i| idx.iter().map(|&j| i128::from(y.col(j)[i])).collect())
        .collect()
}

fn adjugate(b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = b.len();
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| b[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = s * det_i128(&minor);
        }
    }
    adj
}

/// Unimodular n×n minor, if any (first in lexicographic column order).
pub fn unit_minor(y: &IntMatrix) -> Option<Vec<usize>> {
    combinations(y.ncols(), y.nrows())
        .into_iter()
        .find(|idx| det_i128(&square(y, idx)).abs() == 1)
}

fn witness_key(u: &[Rational]) -> (usize, Vec<usize>, Vec<Rational>) {
    let support: Vec<usize> = (0..u.len())
        .filter(|&i| u[i] != Rational::from_integer(0.into()))
        .collect();
    (support.len(), support, u.to_vec())
}

/// Largest search box (number of integer vectors m) `integral_points`
/// will walk.
pub const MAX_SEARCH_BOX: i128 = 50_000_000;

/// All nonzero u ∈ [0,1)ⁿ with uY integral, found by solving uB = m for an
/// invertible column subset B over the box |m_j| < ‖B_j‖₁; returned in
/// canonical order (fewest nonzero coordinates, earliest support, then
/// lexicographic).
pub fn integral_points(y: &IntMatrix) -> Result<Vec<Vec<Rational>>> {
    let n = y.nrows();
    if y.rank() < n {
        return Err(Error::RankDeficient {
            rank: y.rank(),
            expected: n,
        });
    }
    let l1 = |j: usize| y.col(j).iter().map(|v| i128::from(v.abs())).sum::<i128>();
    let mut best: Option<(i128, Vec<usize>)> = None;
    for idx in combinations(y.ncols(), n) {
        if det_i128(&square(y, &idx)) == 0 {
            continue;
        }
        let size: i128 = idx.iter().map(|&j| 2 * l1(j) - 1).product();
        if best.as_ref().is_none_or(|(s, _)| size < *s) {
            best = Some((size, idx));
        }
    }
    let (size, idx) = best.expect("rank n implies an invertible minor");
    if size > MAX_SEARCH_BOX {
        return Err(Error::BoxCapExceeded {
            bound: size.to_string(),
            cap: MAX_SEARCH_BOX as i64,
        });
    }
    let b = square(y, &idx);
    let mut d = det_i128(&b);
    let mut adj = adjugate(&b);
    if d < 0 {
        d = -d;
        for row in adj.iter_mut() {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
    }
    // u = m·B⁻¹ = m·adj/d; u_i numerators are Σ_j m_j adj[j][i]
    let bounds: Vec<i128> = idx.iter().map(|&j| l1(j) - 1).collect();
    let mut m: Vec<i128> = bounds.iter().map(|b| -b).collect();
    let mut found = Vec::new();
    loop {
        let num: Vec<i128> = (0..n)
            .map(|i| (0..n).map(|j| m[j] * adj[j][i]).sum())
            .collect();
        let inside = num.iter().all(|&v| (0..d).contains(&v)) && num.iter().any(|&v| v != 0);
        if inside {
            let integral = y.columns().iter().all(|col| {
                let t: i128 = (0..n).map(|i| num[i] * i128::from(col[i])).sum();
                t % d == 0
            });
            if integral {
                let u: Vec<Rational> = num
                    .iter()
                    .map(|&v| Rational::new(v.into(), d.into()))
                    .collect();
                found.push(u);
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                found.sort_by_key(|u| witness_key(u));
                found.dedup();
                return Ok(found);
            }
            if m[k] < bounds[k] {
                m[k] += 1;
                break;
            }
            m[k] = -bounds[k];
            k += 1;
        }
    }
}

/// Fast path: a unimodular minor certifies embeddedness; for N = n the
/// determinant decides. Otherwise the exhaustive search runs only when
/// requested.
pub fn embeddedness(y: &IntMatrix, exhaustive: bool) -> Result<Embeddedness> {
    let n = y.nrows();
    if y.rank() < n {
        return Err(Error::RankDeficient {
            rank: y.rank(),
            expected: n,
        });
    }
    if let Some(idx) = unit_minor(y) {
        return Ok(Embeddedness::Embedded(EmbeddingCertificate::UnitMinor(idx)));
    }
    if y.ncols() == n {
        return match embeddedness_exhaustive(y) {
            Err(Error::BoxCapExceeded { .. }) => Ok(square_witness(y)),
            other => other,
        };
    }
    if exhaustive {
        return embeddedness_exhaustive(y);
    }
    Ok(Embeddedness::Unknown)
}

/// For square Y with |det Y| > 1 some row of Y⁻¹ is not integral; its
/// fractional part is a witness (not necessarily the canonical one).
fn square_witness(y: &IntMatrix) -> Embeddedness {
    let n = y.nrows();
    let idx: Vec<usize> = (0..n).collect();
    let b = square(y, &idx);
    let d = det_i128(&b);
    let adj = adjugate(&b);
    // row i of B⁻¹ where B has the Y_j as columns: u = e_i B⁻¹, uB = e_i
    for row in adj.iter() {
        let u: Vec<Rational> = row
            .iter()
            .map(|&v| Rational::new((v * d.signum()).rem_euclid(d.abs()).into(), d.abs().into()))
            .collect();
        if u.iter().any(|c| *c != Rational::from_integer(0.into())) {
            return Embeddedness::NotEmbedded { witness: u };
        }
    }
    Embeddedness::Unknown
}

pub fn embeddedness_exhaustive(y: &IntMatrix) -> Result<Embeddedness> {
    Ok(match integral_points(y)?.into_iter().next() {
        Some(witness) => Embeddedness::NotEmbedded { witness },
        None => Embeddedness::Embedded(EmbeddingCertificate::Exhaustive),
    })
}
