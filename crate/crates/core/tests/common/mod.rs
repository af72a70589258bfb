#![allow(dead_code)]

use m1plus_core::fock::basis_vectors_up_to;
use m1plus_core::rational::{binomial_int, frac, sign_pow};
use m1plus_core::{FockMonomial, FockVector, Index, Sector};
use proptest::prelude::*;

/// `u_n v` in M(1) by recursion on the length of `u`:
///
/// ```text
/// (h(-k)u')_n v = sum_j (-1)^j C(-k, j) ( h(-k-j) u'_{n+j} v - (-1)^k u'_{n-k-j} h(j) v )
/// ```
///
/// with `vac_n v = delta_{n,-1} v`.
pub fn oracle_product(u: &FockVector, n: i64, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero(Sector::Untwisted);
    for (m, c) in u.terms() {
        out.add_scaled(&oracle_monomial(m, n, v), c);
    }
    out
}

fn weight(v: &FockVector) -> i64 {
    v.terms()
        .map(|(m, _)| (m.weight_doubled() / 2) as i64)
        .max()
        .unwrap_or(0)
}

fn max_part(v: &FockVector) -> i64 {
    v.terms()
        .map(|(m, _)| i64::from(m.max_part_doubled() / 2))
        .max()
        .unwrap_or(0)
}

fn oracle_monomial(m: &FockMonomial, n: i64, v: &FockVector) -> FockVector {
    if m.is_vacuum() {
        return if n == -1 {
            v.clone()
        } else {
            FockVector::zero(Sector::Untwisted)
        };
    }
    let mut parts = m.doubled_parts();
    let k = i64::from(parts.next().unwrap() / 2);
    let rest = FockMonomial::from_doubled_parts(parts);
    let rest_v = FockVector::from_monomial(Sector::Untwisted, rest.clone(), frac(1, 1));
    let rest_wt = (rest.weight_doubled() / 2) as i64;
    let mut out = FockVector::zero(Sector::Untwisted);
    let sign_k = sign_pow(k);
    let first_terms = (rest_wt + weight(v) - n).max(0);
    for j in 0..first_terms {
        let c = sign_pow(j) * binomial_int(-k, j as u32);
        let inner = oracle_monomial(&rest, n + j, v);
        if inner.is_zero() {
            continue;
        }
        out.add_scaled(&inner.create(Index::integer(k + j)).unwrap(), &c);
    }
    for j in 1..=max_part(v) {
        let c = sign_pow(j) * binomial_int(-k, j as u32) * &sign_k;
        let hv = v.annihilate(Index::integer(j)).unwrap();
        if hv.is_zero() {
            continue;
        }
        out.add_scaled(&oracle_product(&rest_v, n - k - j, &hv), &-c);
    }
    out
}

/// Random untwisted vectors built from monomials of weight at most `max_weight`.
pub fn vector_strategy(max_weight: u32, sector: Sector) -> impl Strategy<Value = FockVector> {
    let basis = basis_vectors_up_to(2 * max_weight, sector);
    let n = basis.len();
    proptest::collection::vec((0..n, -4i64..=4, 1i64..=3), 1..=3).prop_map(move |picks| {
        let mut v = FockVector::zero(sector);
        for (i, a, b) in picks {
            v.add_scaled(&basis[i], &frac(a, b));
        }
        if v.is_zero() {
            basis[n - 1].clone()
        } else {
            v
        }
    })
}

/// A single monomial with a non-zero coefficient (homogeneous).
pub fn homogeneous_strategy(max_weight: u32) -> impl Strategy<Value = FockVector> {
    let basis = basis_vectors_up_to(2 * max_weight, Sector::Untwisted);
    let n = basis.len();
    (0..n, 1i64..=5, 1i64..=3).prop_map(move |(i, a, b)| basis[i].scale(&frac(a, b)))
}
