//! Scalar regimes: exact rationals, exact number-field elements, and
//! binary64 floats, unified behind [`Field`] and the [`Scalar`] enum.

pub mod algebraic;
pub mod poly;
pub mod rational;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

pub use algebraic::{AlgebraicScalar, NumberField};
pub use rational::Rational;

/// Operations required by the generic linear algebra.
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;
    /// -1, 0 or 1; certified for exact scalars.
    fn sign(&self) -> i8;
    fn approx(&self) -> f64;
    fn is_exact(&self) -> bool;

    /// Whether a pivot candidate should be treated as zero relative to
    /// `scale`. Exact scalars only vanish when they are zero.
    fn negligible(&self, scale: f64) -> bool {
        if self.is_exact() {
            self.is_zero()
        } else {
            self.approx().abs() <= 1e-13 * scale.max(f64::MIN_POSITIVE)
        }
    }
}

impl Field for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }
    fn approx(&self) -> f64 {
        rational::to_f64(self)
    }
    fn is_exact(&self) -> bool {
        true
    }
}

impl Field for f64 {
    fn from_rational(r: &Rational) -> Self {
        rational::to_f64(r)
    }
    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn approx(&self) -> f64 {
        *self
    }
    fn is_exact(&self) -> bool {
        false
    }
}

/// A scalar in one of the three regimes. Mixed arithmetic promotes
/// rational → algebraic → float.
#[derive(Clone)]
pub enum Scalar {
    Rational(Rational),
    Algebraic(AlgebraicScalar),
    Float(f64),
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Algebraic(a) => write!(f, "{a:?}"),
            Scalar::Float(x) => write!(f, "{x:e}"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Algebraic(a) => write!(f, "{:.15}", a.to_f64()),
            Scalar::Float(x) => write!(f, "{x:e}"),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<AlgebraicScalar> for Scalar {
    fn from(a: AlgebraicScalar) -> Self {
        Scalar::Algebraic(a).normalized()
    }
}

impl From<f64> for Scalar {
    fn from(x: f64) -> Self {
        Scalar::Float(x)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Rational(rational::int(v))
    }
}

impl Scalar {
    /// Collapses algebraic values lying in Q to rationals.
    pub fn normalized(self) -> Self {
        match self {
            Scalar::Algebraic(a) => match a.as_rational() {
                Some(r) => Scalar::Rational(r),
                None => Scalar::Algebraic(a),
            },
            other => other,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_algebraic(&self) -> Option<&AlgebraicScalar> {
        match self {
            Scalar::Algebraic(a) => Some(a),
            _ => None,
        }
    }

    pub fn number_field(&self) -> Option<&std::sync::Arc<NumberField>> {
        self.as_algebraic().map(|a| a.field())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => rational::to_f64(r),
            Scalar::Algebraic(a) => a.to_f64(),
            Scalar::Float(x) => *x,
        }
    }

    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    pub fn abs(&self) -> Scalar {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn binary(
        self,
        rhs: Scalar,
        rr: impl Fn(Rational, Rational) -> Rational,
        aa: impl Fn(&AlgebraicScalar, &AlgebraicScalar) -> AlgebraicScalar,
        ff: impl Fn(f64, f64) -> f64,
    ) -> Scalar {
        use Scalar::*;
        match (self, rhs) {
            (Rational(a), Rational(b)) => Rational(rr(a, b)),
            (Float(a), b) => Float(ff(a, b.to_f64())),
            (a, Float(b)) => Float(ff(a.to_f64(), b)),
            (Algebraic(a), Algebraic(b)) => Algebraic(aa(&a, &b)).normalized(),
            (Algebraic(a), Rational(b)) => {
                let b = AlgebraicScalar::from_rational(a.field(), b);
                Algebraic(aa(&a, &b)).normalized()
            }
            (Rational(a), Algebraic(b)) => {
                let a = AlgebraicScalar::from_rational(b.field(), a);
                Algebraic(aa(&a, &b)).normalized()
            }
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.binary(rhs, |a, b| a + b, |a, b| a.add(b), |a, b| a + b)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.binary(rhs, |a, b| a - b, |a, b| a.sub(b), |a, b| a - b)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.binary(rhs, |a, b| a * b, |a, b| a.mul(b), |a, b| a * b)
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.binary(rhs, |a, b| a / b, |a, b| a.div(b), |a, b| a / b)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Algebraic(a) => Scalar::Algebraic(a.neg()),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        use Scalar::*;
        match (self, other) {
            (Float(a), b) => *a == b.to_f64(),
            (a, Float(b)) => a.to_f64() == *b,
            _ => (self.clone() - other.clone()).is_zero(),
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Algebraic(a) => a.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::Rational(Rational::one())
    }
}

impl Field for Scalar {
    fn from_rational(r: &Rational) -> Self {
        Scalar::Rational(r.clone())
    }
    fn sign(&self) -> i8 {
        match self {
            Scalar::Rational(r) => r.sign(),
            Scalar::Algebraic(a) => a.signum(),
            Scalar::Float(x) => x.sign(),
        }
    }
    fn approx(&self) -> f64 {
        self.to_f64()
    }
    fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Float(_))
    }
}
