//! Property tests for invariants of the exact and float kernels.

mod common;

use common::*;
use minflat_core::certificate::Certificate;
use minflat_core::constructions::{catalog, catalog_ids};
use minflat_core::immersion::verify_matrix_data;
use minflat_core::lattice::enumerate_norm;
use minflat_core::linalg::{self, IntMatrix, SymMatrix};
use minflat_core::optimize::cmax::HullPoint;
use minflat_core::optimize::{build_slice, caratheodory_reduce, maximize_logdet_w, WMaximum};
use minflat_core::scalar::poly::rational_roots;
use minflat_core::scalar::{AlgebraicScalar, NumberField, Rational, Scalar};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| r(p, q))
}

fn sym(n: usize) -> impl Strategy<Value = SymMatrix<Rational>> {
    proptest::collection::vec(rat(), n * (n + 1) / 2)
        .prop_map(move |v| SymMatrix::from_packed(n, v).unwrap())
}

fn pd(n: usize) -> impl Strategy<Value = SymMatrix<Rational>> {
    any::<u64>().prop_map(move |s| random_pd(&mut ChaCha8Rng::seed_from_u64(s), n))
}

/// Y with e_1, …, e_n first, then `extra` random nonzero columns.
fn y_with_axes(
    n: usize,
    extra: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), extra).prop_filter_map(
        "zero or proportional columns",
        move |more| {
            let mut cols: Vec<Vec<i64>> = (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect();
            cols.extend(more);
            let y = IntMatrix::from_columns(n, cols).ok()?;
            (y.columns().iter().all(|c| c.iter().any(|&v| v != 0)) && !y.has_proportional_columns())
                .then_some(y)
        },
    )
}

fn dense(q: &SymMatrix<Rational>) -> DMatrix<f64> {
    DMatrix::from_fn(q.dim(), q.dim(), |i, j| to_f64(q.get(i, j)))
}

/// Residual of the least-squares solution of Y_jᵗQY_j = 1 over packed Q.
fn least_squares_residual(y: &IntMatrix) -> f64 {
    let n = y.nrows();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let a = DMatrix::from_fn(y.ncols(), pairs.len(), |r, c| {
        let (i, j) = pairs[c];
        let col = y.col(r);
        let v = (col[i] * col[j]) as f64;
        if i == j {
            v
        } else {
            2.0 * v
        }
    });
    let b = nalgebra::DVector::from_element(y.ncols(), 1.0);
    let x = a.clone().svd(true, true).solve(&b, 1e-12).unwrap();
    (a * x - b).amax()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn exact_inverse_and_determinant(q in (1usize..=4).prop_flat_map(pd)) {
        let inv = linalg::inverse(&q).unwrap();
        let n = q.dim();
        for i in 0..n {
            for j in 0..n {
                let e: Rational = (0..n).map(|k| q.get(i, k) * inv.get(k, j)).sum();
                prop_assert_eq!(e, if i == j { one() } else { Rational::zero() });
            }
        }
        let want = dense(&q).determinant();
        let got = to_f64(&linalg::det(&q));
        prop_assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0));
    }

    #[test]
    fn definiteness_matches_leading_minors(q in (1usize..=4).prop_flat_map(sym)) {
        let ours = linalg::definiteness(&q) == linalg::Definiteness::Yes;
        prop_assert_eq!(ours, is_pd_exact(&q));
    }

    #[test]
    fn enumeration_matches_brute_force(
        (q, y0) in (1usize..=3).prop_flat_map(|n| (pd(n), proptest::collection::vec(-2i64..=2, n)))
    ) {
        prop_assume!(y0.iter().any(|&v| v != 0));
        let target = quad(&q, &y0);
        let got = enumerate_norm(&q.to_scalar(), &Scalar::from(target.clone()), None).unwrap();
        prop_assert!(got.complete);
        for c in &got.classes {
            prop_assert_eq!(quad(&q, c), target.clone());
            prop_assert!(c.iter().find(|&&v| v != 0).unwrap() > &0);
        }
        prop_assert_eq!(got.classes, brute_force_norm(&q, &target, box_bound(&q, &target)));
    }

    #[test]
    fn rational_roots_are_recovered(
        roots in proptest::collection::vec((-40i64..=40, 1i64..=12), 0..=2),
        c in 2i64..1000,
    ) {
        // Π (q x − p) · (x² − c) with c not a square
        let s = (c as f64).sqrt() as i64;
        prop_assume!(s * s != c && (s + 1) * (s + 1) != c);
        let mut f: Vec<BigInt> = vec![BigInt::from(-c), BigInt::zero(), BigInt::one()];
        let mut want: Vec<Rational> = Vec::new();
        for &(p, q) in &roots {
            let mut g = vec![BigInt::zero(); f.len() + 1];
            for (i, a) in f.iter().enumerate() {
                g[i + 1] += a * q;
                g[i] -= a * p;
            }
            f = g;
            let root = r(p, q);
            if !want.contains(&root) {
                want.push(root);
            }
        }
        want.sort();
        prop_assert_eq!(rational_roots(&f), want);
    }

    #[test]
    fn quadratic_field_arithmetic(
        d in prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 10801]),
        a in (rat(), rat()), b in (rat(), rat()), c in (rat(), rat()),
    ) {
        let k = NumberField::quadratic(&BigInt::from(d)).unwrap();
        let el = |(x, y): (Rational, Rational)| AlgebraicScalar::new(k.clone(), vec![x, y]).unwrap();
        let fl = |(x, y): &(Rational, Rational)| to_f64(x) + to_f64(y) * (d as f64).sqrt();
        let (fa, fb, fc) = (fl(&a), fl(&b), fl(&c));
        let (a, b, c) = (el(a), el(b), el(c));
        let lhs = a.add(&b).mul(&c);
        let rhs = a.mul(&c).add(&b.mul(&c));
        prop_assert!(lhs.sub(&rhs).is_zero());
        prop_assert!((lhs.to_f64() - (fa + fb) * fc).abs() <= 1e-9 * (1.0 + ((fa + fb) * fc).abs()));
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.mul(&inv).as_rational(), Some(one()));
        } else {
            prop_assert!(a.is_zero());
        }
        let sign = if fa.abs() < 1e-12 { 0 } else { fa.signum() as i8 };
        prop_assert_eq!(a.signum(), sign);
    }

    #[test]
    fn slice_points_satisfy_the_constraints(y in y_with_axes(3, 1..=3), t in proptest::collection::vec(rat(), 6)) {
        let slice = match build_slice(&y) {
            Ok(s) => s,
            Err(minflat_core::Error::InconsistentSlice) => {
                prop_assert!(least_squares_residual(&y) > 1e-9);
                return Ok(());
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let q = slice.point_exact(&t[..slice.dim()]);
        for col in y.columns() {
            prop_assert_eq!(quad(&q, col), one());
        }
        for b in &slice.basis {
            for col in y.columns() {
                prop_assert!(quad(b, col).is_zero());
            }
        }
    }

    #[test]
    fn w_maximum_is_stationary(y in y_with_axes(3, 1..=2)) {
        let slice = build_slice(&y);
        prop_assume!(slice.is_ok());
        let slice = slice.unwrap();
        if let WMaximum::Optimal { q, .. } = maximize_logdet_w(&slice, 1e-12, 200).unwrap() {
            let inv = q.to_nalgebra().try_inverse().unwrap();
            for b in &slice.basis {
                let g = inv.component_mul(&dense(b)).sum();
                prop_assert!(g.abs() <= 1e-8, "gradient {}", g);
            }
        }
    }

    #[test]
    fn caratheodory_keeps_p(
        y in (2usize..=3).prop_flat_map(|n| y_with_axes(n, 2..=8)),
        raw in proptest::collection::vec(1i64..=7, 11),
    ) {
        let k = y.ncols();
        let total: i64 = raw[..k].iter().sum();
        let lambda: Vec<Rational> = raw[..k].iter().map(|&v| r(v, total)).collect();
        let point = HullPoint::new(y.clone(), lambda.clone()).unwrap();
        let reduced = caratheodory_reduce(&point);
        let n = y.nrows();
        let support = reduced.lambda.iter().filter(|l| !l.is_zero()).count();
        prop_assert!(support <= n * (n + 1) / 2);
        prop_assert!(reduced.lambda.iter().all(|l| !l.is_negative()));
        let mut p = SymMatrix::<Rational>::zeros(n);
        for (col, l) in reduced.y.columns().iter().zip(&reduced.lambda) {
            p = p.add(&SymMatrix::<Rational>::outer(col).scale(l));
        }
        prop_assert_eq!(p, point.p);
    }

    #[test]
    fn certificates_round_trip(idx in 0usize..6, tag in any::<u32>()) {
        let (id, _) = catalog_ids()[idx];
        let cert = Certificate::homogeneous(catalog(id).unwrap()).with_metadata("tag", tag);
        let back = Certificate::from_json(&cert.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, cert);
    }

    #[test]
    fn tampered_weights_are_falsified(idx in 0usize..6, delta in rat(), pick in any::<prop::sample::Index>()) {
        prop_assume!(!delta.is_zero());
        let (id, _) = catalog_ids()[idx];
        let mut data = catalog(id).unwrap();
        let k = pick.index(data.weights.len());
        data.weights[k] = data.weights[k].clone() + Scalar::from(delta);
        prop_assert!(!verify_matrix_data(&data, 1e-10).is_verified());
    }
}
