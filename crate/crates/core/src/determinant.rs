//! The binomial determinant `det (C(x_i, k) C(y_j, l))` over
//! `S = {(i, j) : i + j <= n}` and its product formula.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::identities::{RelationReport, Value};
use crate::rational::{binomial, int, Rational};

/// Index pairs `(i, j)` with `i + j <= n`, in a fixed order.
pub fn index_set(n: usize) -> Vec<(usize, usize)> {
    (0..=n)
        .flat_map(|i| (0..=(n - i)).map(move |j| (i, j)))
        .collect()
}

/// Rows `(i, j)`, columns `(k, l)`, entries `C(x_i, k) C(y_j, l)`.
pub fn binomial_matrix(n: usize, x: &[Rational], y: &[Rational]) -> Vec<Vec<Rational>> {
    let s = index_set(n);
    s.iter()
        .map(|&(i, j)| {
            s.iter()
                .map(|&(k, l)| binomial(&x[i], k as u32) * binomial(&y[j], l as u32))
                .collect()
        })
        .collect()
}

/// Determinant by Bareiss elimination over the integers after clearing the
/// denominators of each row.
pub fn bareiss_determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            scale *= &l;
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect();

    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Rational::new(sign * &m[n - 1][n - 1], scale)
}

/// `prod (x_i - x_i')^{n+1-i'} prod (y_j - y_j')^{n+1-j'}` over the same
/// product evaluated at `x_i = i`, `y_j = j`.
pub fn closed_form(n: usize, x: &[Rational], y: &[Rational]) -> Rational {
    let mut num = Rational::one();
    let mut den = Rational::one();
    for a in 0..=n {
        for b in (a + 1)..=n {
            let e = (n + 1 - b) as i32;
            num *= num_traits::pow::Pow::pow(&x[a] - &x[b], e);
            num *= num_traits::pow::Pow::pow(&y[a] - &y[b], e);
            let d = int(a as i64 - b as i64);
            den *= num_traits::pow::Pow::pow(&d, e) * num_traits::pow::Pow::pow(&d, e);
        }
    }
    num / den
}

fn check_points(n: usize, pts: &[Rational], label: &str) -> Result<()> {
    if pts.len() != n + 1 {
        return Err(Error::DegenerateInput(format!(
            "{label} needs {} points, got {}",
            n + 1,
            pts.len()
        )));
    }
    for a in 0..pts.len() {
        for b in (a + 1)..pts.len() {
            if pts[a] == pts[b] {
                return Err(Error::DegenerateInput(format!(
                    "{label}_{a} = {label}_{b} = {}",
                    pts[a]
                )));
            }
        }
    }
    Ok(())
}

pub fn verify_determinant_lemma(
    n: usize,
    x: &[Rational],
    y: &[Rational],
) -> Result<RelationReport> {
    check_points(n, x, "x")?;
    check_points(n, y, "y")?;
    let det = bareiss_determinant(&binomial_matrix(n, x, y));
    Ok(RelationReport::compare(
        &format!("det n={n}"),
        "fraction-free determinant equals the product formula",
        Value::Scalar(closed_form(n, x, y)),
        Value::Scalar(det),
    ))
}
