//! Lattices, dual lattices, norm-class enumeration and torus spectra.

pub mod enumerate;
pub mod points;

use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{self, dense, Dense, IntMatrix, SymMatrix};
use crate::scalar::{Field, Scalar};

pub use points::rational_points_on_ellipsoid;

/// Default per-coordinate safety cap for enumeration.
pub const DEFAULT_BOX_BOUND: i64 = 1_000_000;

/// A rank-n lattice given by a generator matrix whose rows span it.
#[derive(Clone, Debug)]
pub struct Lattice {
    generator: Dense<Scalar>,
    gram: SymMatrix<Scalar>,
}

fn gram_of(rows: &Dense<Scalar>) -> SymMatrix<Scalar> {
    let n = rows.len();
    SymMatrix::from_fn(n, |i, j| {
        rows[i]
            .iter()
            .zip(&rows[j])
            .fold(Scalar::from(0), |acc, (a, b)| acc + a.clone() * b.clone())
    })
}

fn check_square(rows: &Dense<Scalar>) -> Result<()> {
    let n = rows.len();
    for r in rows {
        if r.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
    }
    Ok(())
}

impl Lattice {
    pub fn new(generator: Dense<Scalar>) -> Result<Self> {
        check_square(&generator)?;
        if dense::det(&generator).negligible(1.0) {
            return Err(Error::Singular);
        }
        let gram = gram_of(&generator);
        Ok(Lattice { generator, gram })
    }

    pub fn rank(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &Dense<Scalar> {
        &self.generator
    }

    pub fn gram(&self) -> &SymMatrix<Scalar> {
        &self.gram
    }
}

/// The dual lattice, generated by the rows of `(L⁻¹)ᵗ`.
#[derive(Clone, Debug)]
pub struct DualLattice {
    generator: Dense<Scalar>,
    gram: SymMatrix<Scalar>,
}

impl DualLattice {
    pub fn generator(&self) -> &Dense<Scalar> {
        &self.generator
    }

    pub fn gram(&self) -> &SymMatrix<Scalar> {
        &self.gram
    }

    /// The dual of the dual, i.e. the primal lattice.
    pub fn dual(&self) -> Result<Lattice> {
        let inv = dense::inverse(&self.generator)?;
        Lattice::new(dense::transpose(&inv))
    }
}

pub fn dual(lat: &Lattice) -> Result<DualLattice> {
    let inv = dense::inverse(&lat.generator)?;
    let generator = dense::transpose(&inv);
    let gram = linalg::inverse(&lat.gram)?;
    Ok(DualLattice { generator, gram })
}

/// Lattice vectors of a fixed norm, one per ±-pair.
#[derive(Clone, Debug, PartialEq)]
pub struct NormClassList {
    pub target: Scalar,
    /// Representatives with first nonzero coordinate positive, sorted.
    pub classes: Vec<Vec<i64>>,
    /// False when the coordinate cap clipped the search.
    pub complete: bool,
}

impl NormClassList {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn to_int_matrix(&self) -> Result<IntMatrix> {
        let n = self.classes.first().map_or(0, |c| c.len());
        IntMatrix::from_columns(n, self.classes.clone())
    }
}

const FLOAT_REL_TOL: f64 = 1e-9;

fn close(a: &Scalar, b: &Scalar) -> bool {
    if a.is_exact() && b.is_exact() {
        a == b
    } else {
        let (x, y) = (a.to_f64(), b.to_f64());
        (x - y).abs() <= FLOAT_REL_TOL * x.abs().max(y.abs()).max(1.0)
    }
}

fn compare(a: &Scalar, b: &Scalar) -> Ordering {
    if close(a, b) {
        return Ordering::Equal;
    }
    if a.is_exact() && b.is_exact() {
        (a.clone() - b.clone()).sign().cmp(&0)
    } else {
        a.to_f64().total_cmp(&b.to_f64())
    }
}

/// Representatives paired with their norms.
type Valued = Vec<(Vec<i64>, Scalar)>;

/// Representatives with `yᵗQy ≤ bound` together with their norms.
fn ball_values(q: &SymMatrix<Scalar>, bound: &Scalar, cap: i64) -> Result<(Valued, bool)> {
    if bound.sign() <= 0 {
        return Ok((Vec::new(), true));
    }
    let exact_q = q.to_rational();
    let ball = match (&exact_q, bound.as_rational()) {
        (Some(qr), Some(b)) => enumerate::ball_exact(qr, b, cap)?,
        _ => {
            if linalg::definiteness(q) == linalg::Definiteness::No {
                return Err(Error::NotPositiveDefinite);
            }
            let b = bound.to_f64();
            enumerate::ball_f64(&q.to_f64(), b * (1.0 + 1e-9) + 1e-12, cap)?
        }
    };
    let mut out = Vec::new();
    for y in ball.vectors {
        if !enumerate::is_representative(&y) {
            continue;
        }
        let v = match &exact_q {
            Some(qr) => Scalar::Rational(qr.quad_form(&y)),
            None => {
                let f = q.to_f64().quad_form(&y);
                if f > bound.to_f64() * (1.0 + 1e-6) + 1e-9 {
                    continue;
                }
                q.quad_form(&y)
            }
        };
        if compare(&v, bound) != Ordering::Greater {
            out.push((y, v));
        }
    }
    Ok((out, ball.complete))
}

/// All classes with `yᵗQy = target`.
pub fn enumerate_norm(
    q: &SymMatrix<Scalar>,
    target: &Scalar,
    box_bound: Option<i64>,
) -> Result<NormClassList> {
    if target.sign() <= 0 {
        return Err(Error::InvalidParameters(
            "target norm must be positive".into(),
        ));
    }
    let cap = box_bound.unwrap_or(DEFAULT_BOX_BOUND);
    let (vals, complete) = ball_values(q, target, cap)?;
    let mut classes: Vec<Vec<i64>> = vals
        .into_iter()
        .filter(|(_, v)| close(v, target))
        .map(|(y, _)| y)
        .collect();
    classes.sort();
    Ok(NormClassList {
        target: target.clone(),
        classes,
        complete,
    })
}

/// Minimum nonzero norm and its classes.
pub fn shortest_vectors(q: &SymMatrix<Scalar>) -> Result<(Scalar, NormClassList)> {
    if linalg::definiteness(q) != linalg::Definiteness::Yes {
        return Err(Error::NotPositiveDefinite);
    }
    let n = q.dim();
    let mut bound = q.get(0, 0).clone();
    for i in 1..n {
        if compare(q.get(i, i), &bound) == Ordering::Less {
            bound = q.get(i, i).clone();
        }
    }
    let (vals, complete) = ball_values(q, &bound, DEFAULT_BOX_BOUND)?;
    let mut lambda1 = bound;
    for (_, v) in &vals {
        if compare(v, &lambda1) == Ordering::Less {
            lambda1 = v.clone();
        }
    }
    let mut classes: Vec<Vec<i64>> = vals
        .into_iter()
        .filter(|(_, v)| close(v, &lambda1))
        .map(|(y, _)| y)
        .collect();
    classes.sort();
    Ok((
        lambda1.clone(),
        NormClassList {
            target: lambda1,
            classes,
            complete,
        },
    ))
}

/// One distinct Laplace eigenvalue `4π² |ξ|²` of the flat torus.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    /// `|ξ|² = yᵗ Q* y`.
    pub norm: Scalar,
    pub eigenvalue: f64,
    pub multiplicity: usize,
}

fn distinct_norms(vals: &[(Vec<i64>, Scalar)]) -> Vec<(Scalar, usize)> {
    let mut sorted: Vec<&Scalar> = vals.iter().map(|(_, v)| v).collect();
    sorted.sort_by(|a, b| compare(a, b));
    let mut out: Vec<(Scalar, usize)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((last, count)) if close(last, v) => *count += 1,
            _ => out.push((v.clone(), 1)),
        }
    }
    out
}

/// The first `count` distinct eigenvalues (0 included) with multiplicities.
pub fn spectrum(q_dual: &SymMatrix<Scalar>, count: usize) -> Result<Vec<SpectrumEntry>> {
    if linalg::definiteness(q_dual) != linalg::Definiteness::Yes {
        return Err(Error::NotPositiveDefinite);
    }
    let mut out = vec![SpectrumEntry {
        norm: Scalar::from(0),
        eigenvalue: 0.0,
        multiplicity: 1,
    }];
    if count <= 1 {
        out.truncate(count);
        return Ok(out);
    }
    let mut radius = (0..q_dual.dim())
        .map(|i| q_dual.get(i, i).clone())
        .min_by(compare)
        .unwrap_or_else(|| Scalar::from(1));
    loop {
        let (vals, _) = ball_values(q_dual, &radius, DEFAULT_BOX_BOUND)?;
        let distinct = distinct_norms(&vals);
        if distinct.len() + 1 >= count {
            for (norm, classes) in distinct.into_iter().take(count - 1) {
                out.push(SpectrumEntry {
                    eigenvalue: 4.0 * PI * PI * norm.to_f64(),
                    norm,
                    multiplicity: 2 * classes,
                });
            }
            return Ok(out);
        }
        radius = radius.clone() + radius;
    }
}

/// 1-based position of the norm among the distinct nonzero norms, i.e. the
/// `k` for which the corresponding eigenfunctions are the k-th ones.
pub fn eigenfunction_index(q_dual: &SymMatrix<Scalar>, norm: &Scalar) -> Result<usize> {
    if linalg::definiteness(q_dual) != linalg::Definiteness::Yes {
        return Err(Error::NotPositiveDefinite);
    }
    if norm.sign() <= 0 {
        return Err(Error::NotInSpectrum);
    }
    let (vals, _) = ball_values(q_dual, norm, DEFAULT_BOX_BOUND)?;
    let distinct = distinct_norms(&vals);
    distinct
        .iter()
        .position(|(v, _)| close(v, norm))
        .map(|k| k + 1)
        .ok_or(Error::NotInSpectrum)
}

/// [`eigenfunction_index`] for an eigenvalue `4π²|ξ|²` given in floating point.
pub fn eigenfunction_index_of_eigenvalue(
    q_dual: &SymMatrix<Scalar>,
    eigenvalue: f64,
) -> Result<usize> {
    let norm = eigenvalue / (4.0 * PI * PI);
    if norm <= 0.0 {
        return Err(Error::NotInSpectrum);
    }
    let (vals, _) = ball_values(
        q_dual,
        &Scalar::Float(norm * (1.0 + 1e-9)),
        DEFAULT_BOX_BOUND,
    )?;
    let distinct = distinct_norms(&vals);
    distinct
        .iter()
        .position(|(v, _)| (v.to_f64() - norm).abs() <= FLOAT_REL_TOL * norm.max(1.0))
        .map(|k| k + 1)
        .ok_or(Error::NotInSpectrum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, rat};

    fn diag(d: &[(i64, i64)]) -> SymMatrix<Scalar> {
        SymMatrix::diagonal(d.iter().map(|&(p, q)| Scalar::from(rat(p, q))).collect())
    }

    #[test]
    fn duals() {
        let l = Lattice::new(vec![
            vec![Scalar::from(1), Scalar::from(0)],
            vec![Scalar::from(0), Scalar::from(2)],
        ])
        .unwrap();
        let d = dual(&l).unwrap();
        assert_eq!(d.gram(), &diag(&[(1, 1), (1, 4)]));
        assert_eq!(d.dual().unwrap().gram(), l.gram());
    }

    #[test]
    fn small_enumerations() {
        let i3 = diag(&[(1, 1), (1, 1), (1, 1)]);
        let e = enumerate_norm(&i3, &Scalar::from(1), None).unwrap();
        assert_eq!(e.classes, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert!(e.complete);
        let (l1, s) = shortest_vectors(&diag(&[(4, 1), (1, 1)])).unwrap();
        assert_eq!(l1, Scalar::from(1));
        assert_eq!(s.classes, vec![vec![0, 1]]);
        assert!(enumerate_norm(&diag(&[(1, 1), (-1, 1)]), &Scalar::from(1), None).is_err());
    }

    #[test]
    fn spectra() {
        let i2 = diag(&[(1, 1), (1, 1)]);
        let s = spectrum(&i2, 2).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].multiplicity, 1);
        assert_eq!(s[1].multiplicity, 4);
        assert!((s[1].eigenvalue - 4.0 * PI * PI).abs() < 1e-12);
        let d = diag(&[(1, 1), (4, 1)]);
        assert_eq!(eigenfunction_index(&d, &Scalar::from(int(4))).unwrap(), 2);
        assert_eq!(
            eigenfunction_index_of_eigenvalue(&d, 16.0 * PI * PI).unwrap(),
            2
        );
        assert_eq!(
            eigenfunction_index(&d, &Scalar::from(int(3))),
            Err(Error::NotInSpectrum)
        );
    }
}
