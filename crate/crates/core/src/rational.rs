//! Exact scalar helpers on top of [`BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Generalised binomial coefficient `a(a-1)...(a-k+1)/k!` for any rational `a`.
pub fn binomial(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut top = a.clone();
    for j in 1..=k {
        acc *= &top;
        acc /= int(j as i64);
        top -= Rational::one();
    }
    acc
}

pub fn binomial_int(a: i64, k: u32) -> Rational {
    binomial(&int(a), k)
}

/// `(-1)^n` for any integer `n`.
pub fn sign_pow(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Exact square root of a non-negative rational, if it exists.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rational::zero());
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}
