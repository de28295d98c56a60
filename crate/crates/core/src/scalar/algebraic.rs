//! Exact arithmetic in simple number fields Q(θ) of degree at most 4, where
//! θ is a designated real root of an irreducible integer polynomial.

use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{self, RootInterval};
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// A real embedding of a number field: minimal polynomial plus an isolating
/// interval selecting one real root.
pub struct NumberField {
    minpoly: Vec<BigInt>,
    monic: Vec<Rational>,
    interval: RootInterval,
    refined: RwLock<RootInterval>,
    approx: OnceLock<Rational>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("minpoly", &self.minpoly)
            .field(
                "interval",
                &(self.interval.lo.to_string(), self.interval.hi.to_string()),
            )
            .finish()
    }
}

impl NumberField {
    /// Validates irreducibility and that `[lo, hi]` contains exactly one
    /// real root of `minpoly`.
    pub fn new(minpoly: Vec<BigInt>, lo: Rational, hi: Rational) -> Result<Arc<Self>> {
        let rp = poly::int_to_rational(&minpoly);
        let d = poly::degree(&rp)
            .ok_or_else(|| Error::InvalidPolynomial("zero minimal polynomial".into()))?;
        if d == 0 {
            return Err(Error::InvalidPolynomial(
                "constant minimal polynomial".into(),
            ));
        }
        if !poly::irreducible_degree_le4(&minpoly)? {
            return Err(Error::InvalidPolynomial(format!(
                "{minpoly:?} is reducible over the rationals"
            )));
        }
        if lo > hi {
            return Err(Error::InvalidInterval(format!("{lo} > {hi}")));
        }
        let mut count = poly::count_roots(&rp, &lo, &hi);
        if poly::eval(&rp, &lo).is_zero() {
            count += 1;
        }
        if count != 1 {
            return Err(Error::InvalidInterval(format!(
                "[{lo}, {hi}] contains {count} roots"
            )));
        }
        let mut prim = poly::primitive_part(&rp);
        prim.truncate(d + 1);
        let monic = poly::monic(&rp);
        let interval = RootInterval { lo, hi };
        Ok(Arc::new(NumberField {
            minpoly: prim,
            monic,
            refined: RwLock::new(interval.clone()),
            interval,
            approx: OnceLock::new(),
        }))
    }

    /// Q(√d) with the positive square root; `d` must not be a square.
    pub fn quadratic(d: &BigInt) -> Result<Arc<Self>> {
        if !d.is_positive() {
            return Err(Error::InvalidPolynomial(format!(
                "x^2 - {d} has no real root"
            )));
        }
        let s = rational::isqrt(d);
        NumberField::new(
            vec![-d.clone(), BigInt::zero(), BigInt::one()],
            Rational::from_integer(s.clone()),
            Rational::from_integer(s + 1),
        )
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// Primitive integer minimal polynomial, constant term first.
    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// The interval supplied at construction.
    pub fn interval(&self) -> &RootInterval {
        &self.interval
    }

    /// The current (possibly refined) isolating interval.
    pub fn current_interval(&self) -> RootInterval {
        self.refined.read().expect("interval lock poisoned").clone()
    }

    fn refine_once(&self) -> RootInterval {
        let mut guard = self.refined.write().expect("interval lock poisoned");
        if !guard.is_exact() {
            let half = guard.width() / Rational::from_integer(BigInt::from(2));
            *guard = poly::refine_root(&self.monic, &guard, &half);
        }
        guard.clone()
    }

    /// Rational approximation of the generator within 2^-200.
    pub fn generator_approx(&self) -> &Rational {
        self.approx.get_or_init(|| {
            let cur = self.current_interval();
            let w = Rational::new(BigInt::one(), BigInt::one() << 200usize);
            poly::refine_root(&self.monic, &cur, &w).midpoint()
        })
    }

    pub fn generator(self: &Arc<Self>) -> AlgebraicScalar {
        let mut coeffs = vec![Rational::zero(); self.degree()];
        if self.degree() == 1 {
            coeffs[0] = -&self.monic[0];
        } else {
            coeffs[1] = Rational::one();
        }
        AlgebraicScalar {
            field: self.clone(),
            coeffs,
        }
    }

    /// True when both describe the same embedded field.
    pub fn same_as(&self, other: &NumberField) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        if self.minpoly != other.minpoly {
            return false;
        }
        let a = self.current_interval();
        let b = other.current_interval();
        let lo = if a.lo > b.lo { a.lo } else { b.lo };
        let hi = if a.hi < b.hi { a.hi } else { b.hi };
        if lo > hi {
            return false;
        }
        let p = poly::int_to_rational(&self.minpoly);
        poly::count_roots(&p, &lo, &hi) + usize::from(poly::eval(&p, &lo).is_zero()) == 1
    }

    fn reduce(&self, mut p: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        if p.len() > d {
            let (_, r) = poly::div_rem(&p, &self.monic);
            p = r;
        }
        p.resize(d, Rational::zero());
        p
    }
}

/// An element of a [`NumberField`], stored as coefficients in the power
/// basis 1, θ, …, θ^(d-1).
#[derive(Clone)]
pub struct AlgebraicScalar {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl fmt::Debug for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "Alg({:?} in {:?})", c, self.field.minpoly)
    }
}

fn iv_mul(a: &(Rational, Rational), b: &(Rational, Rational)) -> (Rational, Rational) {
    let p = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = p.iter().min().unwrap().clone();
    let hi = p.iter().max().unwrap().clone();
    (lo, hi)
}

fn iv_eval(p: &[Rational], x: &RootInterval) -> (Rational, Rational) {
    let xi = (x.lo.clone(), x.hi.clone());
    let mut acc = (Rational::zero(), Rational::zero());
    for c in p.iter().rev() {
        let m = iv_mul(&acc, &xi);
        acc = (m.0 + c, m.1 + c);
    }
    acc
}

impl AlgebraicScalar {
    pub fn new(field: Arc<NumberField>, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() > field.degree() {
            return Err(Error::DimensionMismatch {
                expected: field.degree(),
                found: coeffs.len(),
            });
        }
        let coeffs = field.reduce(coeffs);
        Ok(AlgebraicScalar { field, coeffs })
    }

    pub fn from_rational(field: &Arc<NumberField>, r: Rational) -> Self {
        AlgebraicScalar {
            field: field.clone(),
            coeffs: field.reduce(vec![r]),
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The value when it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Certified sign: refines the field's interval until interval Horner
    /// evaluation excludes zero.
    pub fn signum(&self) -> i8 {
        if let Some(r) = self.as_rational() {
            return if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            };
        }
        let mut iv = self.field.current_interval();
        loop {
            let (lo, hi) = iv_eval(&self.coeffs, &iv);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            if iv.is_exact() {
                // only reachable for a degree-1 field, handled above
                return 0;
            }
            iv = self.field.refine_once();
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.approx_rational())
    }

    /// Value at the generator's 2^-200 approximation.
    pub fn approx_rational(&self) -> Rational {
        poly::eval(&self.coeffs, self.field.generator_approx())
    }

    fn check_field(&self, other: &AlgebraicScalar) {
        assert!(
            self.field.same_as(&other.field),
            "mixing elements of different number fields"
        );
    }

    pub fn add(&self, other: &AlgebraicScalar) -> AlgebraicScalar {
        self.check_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        AlgebraicScalar {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &AlgebraicScalar) -> AlgebraicScalar {
        self.check_field(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        AlgebraicScalar {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> AlgebraicScalar {
        AlgebraicScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &AlgebraicScalar) -> AlgebraicScalar {
        self.check_field(other);
        let p = poly::mul(&self.coeffs, &other.coeffs);
        AlgebraicScalar {
            field: self.field.clone(),
            coeffs: self.field.reduce(p),
        }
    }

    pub fn scale(&self, k: &Rational) -> AlgebraicScalar {
        AlgebraicScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add_rational(&self, k: &Rational) -> AlgebraicScalar {
        let mut out = self.clone();
        out.coeffs[0] += k;
        out
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<AlgebraicScalar> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = poly::ext_gcd(&self.coeffs, &self.field.monic);
        debug_assert_eq!(poly::degree(&g), Some(0));
        Some(AlgebraicScalar {
            field: self.field.clone(),
            coeffs: self.field.reduce(s),
        })
    }

    pub fn div(&self, other: &AlgebraicScalar) -> AlgebraicScalar {
        self.mul(&other.inverse().expect("division by zero"))
    }

    /// Minimal polynomial of this element (primitive, positive leading
    /// coefficient), via the characteristic polynomial of multiplication.
    pub fn minimal_polynomial(&self) -> Vec<BigInt> {
        let d = self.field.degree();
        // columns: coefficients of self * θ^k
        let mut m = vec![vec![Rational::zero(); d]; d];
        for k in 0..d {
            let mut basis = vec![Rational::zero(); k + 1];
            basis[k] = Rational::one();
            let prod = self.field.reduce(poly::mul(&self.coeffs, &basis));
            for (i, c) in prod.into_iter().enumerate() {
                m[i][k] = c;
            }
        }
        let charpoly = char_poly(&m);
        let sf = poly::square_free(&charpoly);
        poly::primitive_part(&sf)
    }
}

impl PartialEq for AlgebraicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.coeffs == other.coeffs
    }
}

/// Characteristic polynomial det(xI - M) by the Faddeev–LeVerrier recurrence.
fn char_poly(m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = m.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // mk = M * (mk_prev + c_{n-k+1} I)
        let mut tmp = mk.clone();
        for (i, row) in tmp.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for l in 0..n {
                    s += &m[i][l] * &tmp[l][j];
                }
                next[i][j] = s;
            }
        }
        let tr: Rational = (0..n).map(|i| next[i][i].clone()).sum();
        coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k));
        mk = next;
    }
    coeffs
}
