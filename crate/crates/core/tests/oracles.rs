//! Cross-checks against independent computations: lattice index via minors,
//! optimality via perturbation, and the catalog embedding witnesses.

mod common;

use common::*;
use minflat_core::constructions::{catalog, catalog_ids};
use minflat_core::immersion::{
    embeddedness, embeddedness_exhaustive, integral_points, Embeddedness,
};
use minflat_core::linalg::IntMatrix;
use minflat_core::optimize::{build_slice, maximize_logdet_w, WMaximum};
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// gcd of all maximal minors = |Zⁿ / Y·Z^N|, the number of u ∈ [0,1)ⁿ with
/// integral uY (including u = 0).
fn minor_gcd(y: &IntMatrix) -> i64 {
    let n = y.nrows();
    let mut g = 0i64;
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let sq: Vec<Vec<i64>> = (0..n)
            .map(|i| idx.iter().map(|&j| y.col(j)[i]).collect())
            .collect();
        g = g.gcd(&det(&sq));
        let mut k = n;
        loop {
            if k == 0 {
                return g;
            }
            k -= 1;
            if idx[k] < y.ncols() - n + k {
                idx[k] += 1;
                for l in k + 1..n {
                    idx[l] = idx[l - 1] + 1;
                }
                break;
            }
        }
    }
}

fn check_witness(y: &IntMatrix, u: &[minflat_core::scalar::Rational]) {
    assert!(u.iter().any(|v| !v.is_zero()), "zero witness");
    assert!(
        u.iter().all(|v| *v >= r(0, 1) && *v < one()),
        "witness outside [0,1): {u:?}"
    );
    for col in y.columns() {
        let s: minflat_core::scalar::Rational = u
            .iter()
            .zip(col)
            .map(|(a, &b)| a * minflat_core::scalar::Rational::from_integer(b.into()))
            .sum();
        assert!(s.is_integer(), "uY_j = {s} for {col:?}");
    }
}

#[test]
fn integral_point_count_is_the_minor_gcd() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 300 {
        let n = rng.random_range(1..=3);
        let count = rng.random_range(n..=n + 3);
        let y = IntMatrix::from_columns(n, random_columns(&mut rng, n, count, 4)).unwrap();
        if y.rank() < n {
            continue;
        }
        let pts = integral_points(&y).unwrap();
        assert_eq!(pts.len() as i64 + 1, minor_gcd(&y), "{y:?}");
        for u in &pts {
            check_witness(&y, u);
        }
        checked += 1;
    }
}

#[test]
fn fast_path_agrees_with_the_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let n = rng.random_range(2..=3);
        let count = rng.random_range(n..=n + 2);
        let y = IntMatrix::from_columns(n, random_columns(&mut rng, n, count, 3)).unwrap();
        if y.rank() < n {
            continue;
        }
        let embedded = minor_gcd(&y) == 1;
        match embeddedness(&y, false).unwrap() {
            Embeddedness::Embedded(_) => assert!(embedded, "{y:?}"),
            Embeddedness::NotEmbedded { witness } => {
                assert!(!embedded);
                check_witness(&y, &witness);
            }
            Embeddedness::Unknown => {}
        }
        assert_eq!(embeddedness_exhaustive(&y).unwrap().is_embedded(), embedded);
    }
}

#[test]
fn catalog_embedding_witnesses() {
    for (id, _) in catalog_ids() {
        let y = catalog(id).unwrap().y;
        match embeddedness_exhaustive(&y).unwrap() {
            Embeddedness::NotEmbedded { witness } => {
                check_witness(&y, &witness);
                assert!(minor_gcd(&y) > 1, "{id}");
            }
            _ => assert_eq!(minor_gcd(&y), 1, "{id}"),
        }
    }
}

#[test]
fn slice_maxima_beat_their_neighbours() {
    for (id, _) in catalog_ids() {
        let slice = build_slice(&catalog(id).unwrap().y).unwrap();
        if slice.dim() == 0 {
            continue;
        }
        let WMaximum::Optimal { q, t, .. } = maximize_logdet_w(&slice, 1e-12, 200).unwrap() else {
            panic!("{id}: infeasible slice");
        };
        let logdet = |t: &[f64]| {
            slice
                .point(t)
                .to_nalgebra()
                .cholesky()
                .map(|c| c.determinant().ln())
        };
        let best = q.to_nalgebra().determinant().ln();
        for i in 0..slice.dim() {
            for eps in [1e-3, -1e-3, 1e-2, -1e-2] {
                let mut s = t.clone();
                s[i] += eps;
                if let Some(v) = logdet(&s) {
                    assert!(v < best, "{id}: direction {i}, step {eps}: {v} ≥ {best}");
                }
            }
        }
    }
}
