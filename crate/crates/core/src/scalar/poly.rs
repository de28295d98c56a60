//! Univariate polynomials over the rationals and the integers, stored as
//! coefficient vectors from the constant term upwards.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

pub fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn trimmed(mut p: Vec<Rational>) -> Vec<Rational> {
    trim(&mut p);
    p
}

/// Degree of a polynomial; `None` for the zero polynomial.
pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

pub fn eval_f64(p: &[Rational], x: f64) -> f64 {
    p.iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + super::rational::to_f64(c))
}

pub fn derivative(p: &[Rational]) -> Vec<Rational> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trimmed(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trimmed(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

pub fn scale(a: &[Rational], k: &Rational) -> Vec<Rational> {
    trimmed(a.iter().map(|c| c * k).collect())
}

/// Euclidean division; panics on a zero divisor.
pub fn div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem = trimmed(a.to_vec());
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let k = &rem[dr] / &lead;
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            rem[i + shift] -= &k * c;
        }
        quot[shift] = k;
        trim(&mut rem);
    }
    (trimmed(quot), rem)
}

pub fn monic(p: &[Rational]) -> Vec<Rational> {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let lead = p[d].clone();
            p[..=d].iter().map(|c| c / &lead).collect()
        }
    }
}

pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut a = trimmed(a.to_vec());
    let mut b = trimmed(b.to_vec());
    while !b.is_empty() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    monic(&a)
}

/// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (trimmed(a.to_vec()), trimmed(b.to_vec()));
    let (mut s0, mut s1) = (vec![Rational::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match degree(&r0) {
        None => (Vec::new(), s0, t0),
        Some(d) => {
            let inv = Rational::one() / &r0[d];
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn square_free(p: &[Rational]) -> Vec<Rational> {
    let g = gcd(p, &derivative(p));
    if degree(&g).unwrap_or(0) == 0 {
        return trimmed(p.to_vec());
    }
    div_rem(p, &g).0
}

fn sign(r: &Rational) -> i8 {
    match r.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Sturm chain of a square-free polynomial.
pub fn sturm_chain(p: &[Rational]) -> Vec<Vec<Rational>> {
    let mut chain = vec![trimmed(p.to_vec()), derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let (_, r) = div_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    chain
}

fn sign_changes(chain: &[Vec<Rational>], x: &Rational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|q| sign(&eval(q, x)))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in the half-open interval `(lo, hi]`.
pub fn count_roots(p: &[Rational], lo: &Rational, hi: &Rational) -> usize {
    let chain = sturm_chain(&square_free(p));
    count_with_chain(&chain, lo, hi)
}

fn count_with_chain(chain: &[Vec<Rational>], lo: &Rational, hi: &Rational) -> usize {
    sign_changes(chain, lo).saturating_sub(sign_changes(chain, hi))
}

/// Bound strictly exceeding the modulus of every complex root.
pub fn cauchy_bound(p: &[Rational]) -> Rational {
    let d = degree(p).expect("zero polynomial has no root bound");
    let lead = p[d].abs();
    let m = p[..d]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    m + Rational::one()
}

/// A closed rational interval holding exactly one real root of a square-free
/// polynomial. When the root is rational it is returned exactly (`lo == hi`).
#[derive(Clone, Debug, PartialEq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootInterval {
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }
}

/// Isolates all real roots, in increasing order.
pub fn isolate_real_roots(p: &[Rational]) -> Vec<RootInterval> {
    let sf = square_free(p);
    let mut out = sturm_isolate(&sf);
    let exact = rational_roots(&primitive_part(&sf));
    for iv in out.iter_mut() {
        if let Some(r) = exact.iter().find(|r| **r >= iv.lo && **r <= iv.hi) {
            *iv = RootInterval {
                lo: r.clone(),
                hi: r.clone(),
            };
        }
    }
    out
}

/// Bisection with a Sturm chain; `sf` must be square-free.
fn sturm_isolate(sf: &[Rational]) -> Vec<RootInterval> {
    if degree(sf).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let chain = sturm_chain(sf);
    let b = cauchy_bound(sf);
    let mut stack = vec![(-b.clone(), b)];
    let mut out = Vec::new();
    let two = Rational::from_integer(BigInt::from(2));
    while let Some((lo, hi)) = stack.pop() {
        match count_with_chain(&chain, &lo, &hi) {
            0 => {}
            1 => {
                if eval(sf, &hi).is_zero() {
                    out.push(RootInterval { lo: hi.clone(), hi });
                    continue;
                }
                let mut lo = lo;
                let mut hi = hi;
                while eval(sf, &lo).is_zero() {
                    let mid = (&lo + &hi) / &two;
                    if count_with_chain(&chain, &mid, &hi) == 1 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                out.push(RootInterval { lo, hi });
            }
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Halves an isolating interval of a square-free polynomial until its width
/// is at most `width`. The refined interval is contained in the input.
pub fn refine_root(p: &[Rational], iv: &RootInterval, width: &Rational) -> RootInterval {
    let mut cur = iv.clone();
    if cur.is_exact() {
        return cur;
    }
    let slo = sign(&eval(p, &cur.lo));
    while &cur.width() > width {
        let mid = cur.midpoint();
        let sm = sign(&eval(p, &mid));
        if sm == 0 {
            return RootInterval {
                lo: mid.clone(),
                hi: mid,
            };
        }
        if sm == slo {
            cur.lo = mid;
        } else {
            cur.hi = mid;
        }
    }
    cur
}

// ---------------------------------------------------------------------------
// Integer polynomials.

pub fn int_to_rational(p: &[BigInt]) -> Vec<Rational> {
    trimmed(
        p.iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect(),
    )
}

/// Clears denominators and divides by the content; the leading coefficient
/// of the result is positive.
pub fn primitive_part(p: &[Rational]) -> Vec<BigInt> {
    let p = trimmed(p.to_vec());
    if p.is_empty() {
        return Vec::new();
    }
    let l = super::rational::denominator_lcm(p.iter());
    let mut ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    for c in ints.iter_mut() {
        *c = &*c / &g;
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Continued-fraction convergents of `x` with denominator at most `max_den`.
fn convergents(x: &Rational, max_den: &BigInt) -> Vec<Rational> {
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    let mut out = Vec::new();
    loop {
        let a = rest.floor().to_integer();
        let h = &a * &h1 + &h0;
        let k = &a * &k1 + &k0;
        if &k > max_den {
            break;
        }
        out.push(Rational::new(h.clone(), k.clone()));
        let frac = &rest - Rational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
        (h0, h1, k0, k1) = (h1, h, k1, k);
    }
    out
}

/// All distinct rational roots of an integer polynomial, ascending.
///
/// A root p/q in lowest terms has q | a_n, so after refining each real root
/// to width below 1/(2 a_n²) it is a convergent of the interval midpoint.
pub fn rational_roots(p: &[BigInt]) -> Vec<Rational> {
    let rp = int_to_rational(p);
    if degree(&rp).is_none() {
        return Vec::new();
    }
    let sf = square_free(&rp);
    if degree(&sf).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let prim = primitive_part(&sf);
    let lead = prim.last().expect("nonzero").abs();
    let width = Rational::new(BigInt::one(), BigInt::from(2) * &lead * &lead);
    let mut roots = Vec::new();
    for iv in sturm_isolate(&sf) {
        let iv = refine_root(&sf, &iv, &width);
        if iv.is_exact() {
            roots.push(iv.lo);
            continue;
        }
        if let Some(r) = convergents(&iv.midpoint(), &lead)
            .into_iter()
            .find(|c| c >= &iv.lo && c <= &iv.hi && eval(&sf, c).is_zero())
        {
            roots.push(r);
        }
    }
    roots.sort();
    roots
}

fn exact_div_int(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let (quot, rem) = div_rem(&int_to_rational(p), &int_to_rational(q));
    debug_assert!(rem.is_empty());
    primitive_part(&quot)
}

/// Splits a primitive quartic without rational roots into two integer
/// quadratics, if possible.
fn quadratic_split(f: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let (a0, a1, a2, a3, a4) = (&f[0], &f[1], &f[2], &f[3], &f[4]);
    let norm: BigInt = f.iter().map(|c| c.abs()).sum::<BigInt>() + a4.abs();
    for p1 in divisors(a4) {
        let p2 = a4 / &p1;
        for r1a in divisors(a0) {
            for s in [1, -1] {
                let r1 = &r1a * s;
                let r2 = a0 / &r1;
                let check = |q1: &BigInt, q2: &BigInt| {
                    &(&p1 * q2) + &(q1 * &p2) == *a3
                        && &(&(&p1 * &r2) + &(q1 * q2)) + &(&r1 * &p2) == *a2
                        && &(q1 * &r2) + &(&r1 * q2) == *a1
                };
                let det: BigInt = &p2 * &r1 - &p1 * &r2;
                if !det.is_zero() {
                    let n1: BigInt = a3 * &r1 - &p1 * a1;
                    let n2: BigInt = &p2 * a1 - &r2 * a3;
                    if (&n1 % &det).is_zero() && (&n2 % &det).is_zero() {
                        let (q1, q2) = (&n1 / &det, &n2 / &det);
                        if check(&q1, &q2) {
                            return Some((vec![r1, q1, p1], vec![r2, q2, p2]));
                        }
                    }
                } else {
                    let mut q1 = -norm.clone();
                    while q1 <= norm {
                        let num = a3 - &q1 * &p2;
                        if (&num % &p1).is_zero() {
                            let q2 = &num / &p1;
                            if check(&q1, &q2) {
                                return Some((vec![r1, q1, p1.clone()], vec![r2, q2, p2]));
                            }
                        }
                        q1 += 1;
                    }
                }
            }
        }
    }
    None
}

/// Factors an integer polynomial of degree at most 4 into primitive factors
/// irreducible over the rationals (with multiplicity, constants dropped).
pub fn factor_le4(p: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let rp = int_to_rational(p);
    let d = degree(&rp).ok_or_else(|| Error::InvalidPolynomial("zero polynomial".into()))?;
    if d > 4 {
        return Err(Error::DegreeUnsupported(d));
    }
    let mut rest = primitive_part(&rp);
    let mut factors = Vec::new();
    loop {
        let deg = rest.len() - 1;
        if deg == 0 {
            break;
        }
        let roots = rational_roots(&rest);
        if let Some(r) = roots.first() {
            let lin = vec![-r.numer().clone(), r.denom().clone()];
            rest = exact_div_int(&rest, &lin);
            factors.push(lin);
            continue;
        }
        if deg == 4 {
            if let Some((g, h)) = quadratic_split(&rest) {
                factors.push(primitive_part(&int_to_rational(&g)));
                factors.push(primitive_part(&int_to_rational(&h)));
                break;
            }
        }
        factors.push(rest);
        break;
    }
    Ok(factors)
}

/// Irreducibility over the rationals for integer polynomials of degree at
/// most 4.
pub fn irreducible_degree_le4(p: &[BigInt]) -> Result<bool> {
    let rp = int_to_rational(p);
    let d = degree(&rp).ok_or_else(|| Error::InvalidPolynomial("zero polynomial".into()))?;
    if d > 4 {
        return Err(Error::DegreeUnsupported(d));
    }
    if d == 0 {
        return Ok(false);
    }
    let f = factor_le4(p)?;
    Ok(f.len() == 1 && f[0].len() == d + 1)
}

#[cfg(test)]
mod tests {
    use super::super::rational::{int, rat};
    use super::*;

    fn ip(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn rp(c: &[i64]) -> Vec<Rational> {
        c.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn irreducibility_of_examples() {
        assert!(irreducible_degree_le4(&ip(&[-33, 149, -160, 50])).unwrap());
        assert!(!irreducible_degree_le4(&ip(&[-1, 0, 0, 0, 1])).unwrap());
        assert!(irreducible_degree_le4(&ip(&[1507, 10730, 1079, -23240, -14700])).unwrap());
        assert!(irreducible_degree_le4(&ip(&[-10801, 0, 1])).unwrap());
        assert!(!irreducible_degree_le4(&ip(&[-9, 0, 1])).unwrap());
        assert!(irreducible_degree_le4(&ip(&[5, 3])).unwrap());
        assert!(!irreducible_degree_le4(&ip(&[7])).unwrap());
        // (x^2 + 1)(x^2 + 2): no rational roots but reducible
        assert!(!irreducible_degree_le4(&ip(&[2, 0, 3, 0, 1])).unwrap());
        // (2x^2 + 3x + 5)(3x^2 - x + 7)
        let g = mul(&rp(&[5, 3, 2]), &rp(&[7, -1, 3]));
        assert!(!irreducible_degree_le4(&primitive_part(&g)).unwrap());
        assert_eq!(
            irreducible_degree_le4(&ip(&[1, 0, 0, 0, 0, 1])),
            Err(Error::DegreeUnsupported(5))
        );
        assert!(irreducible_degree_le4(&ip(&[0])).is_err());
    }

    #[test]
    fn factorization_peels_rational_roots() {
        // (x + 1)(50x^3 - 160x^2 + 149x - 33)
        let f = mul(&rp(&[1, 1]), &rp(&[-33, 149, -160, 50]));
        let fs = factor_le4(&primitive_part(&f)).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&ip(&[1, 1])));
        assert!(fs.contains(&ip(&[-33, 149, -160, 50])));
    }

    #[test]
    fn rational_roots_with_large_coefficients() {
        // (123456789 x - 987654321)(x^2 - c) with c a product of two large primes
        let c: BigInt = BigInt::from(1_000_000_007i64) * BigInt::from(998_244_353i64);
        let lin = vec![int(-987_654_321), int(123_456_789)];
        let quad = vec![
            Rational::from_integer(-c.clone()),
            Rational::zero(),
            Rational::one(),
        ];
        let f = primitive_part(&mul(&lin, &quad));
        assert_eq!(rational_roots(&f), vec![rat(987_654_321, 123_456_789)]);
        assert!(rational_roots(&[-c, BigInt::zero(), BigInt::one()]).is_empty());
        assert_eq!(
            rational_roots(&ip(&[0, -4, 0, 1])),
            vec![rat(-2, 1), rat(0, 1), rat(2, 1)]
        );
        // 2 is a convergent near 5/2 and near √5 but must only be reported once
        let g = mul(&mul(&rp(&[-5, 2]), &rp(&[-2, 1])), &rp(&[-5, 0, 1]));
        assert_eq!(
            rational_roots(&primitive_part(&g)),
            vec![rat(2, 1), rat(5, 2)]
        );
    }

    #[test]
    fn root_isolation_and_refinement() {
        let f = rp(&[-33, 149, -160, 50]);
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 3);
        let r = refine_root(&f, &roots[0], &rat(1, 1_000_000_000));
        let approx = super::super::rational::to_f64(&r.midpoint());
        assert!((approx - 0.321060780647883).abs() < 1e-9);
        // exact rational root
        let g = rp(&[-1, 2]);
        let rs = isolate_real_roots(&g);
        assert_eq!(
            rs,
            vec![RootInterval {
                lo: rat(1, 2),
                hi: rat(1, 2)
            }]
        );
        assert_eq!(count_roots(&rp(&[-2, 0, 1]), &int(0), &int(2)), 1);
        assert_eq!(count_roots(&rp(&[-2, 0, 1]), &int(-2), &int(2)), 2);
    }

    #[test]
    fn ext_gcd_inverts_modulo() {
        let f = rp(&[-10801, 0, 1]);
        let g = rp(&[3, 7]);
        let (one, s, _) = ext_gcd(&g, &f);
        assert_eq!(one, rp(&[1]));
        let (_, r) = div_rem(&mul(&s, &g), &f);
        assert_eq!(r, rp(&[1]));
    }
}
