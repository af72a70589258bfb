use m1plus_core::fock::{basis, basis_doubled};
use m1plus_core::{graded_dim, Parity, Sector};

/// Partitions of `n` with at most `max` as largest part, tallied by length parity.
fn count(n: usize, max: usize, len: usize, out: &mut [u128; 2]) {
    if n == 0 {
        out[len % 2] += 1;
        return;
    }
    for p in (1..=max.min(n)).rev() {
        count(n - p, p, len + 1, out);
    }
}

#[test]
fn graded_dims_match_enumeration() {
    for n in 0..=22 {
        let mut c = [0u128; 2];
        count(n, n, 0, &mut c);
        assert_eq!(graded_dim(n, Parity::Even), c[0], "even n = {n}");
        assert_eq!(graded_dim(n, Parity::Odd), c[1], "odd n = {n}");
        assert_eq!(graded_dim(n, Parity::All), c[0] + c[1]);
        assert_eq!(basis(n as u32).len() as u128, c[0] + c[1]);
    }
}

#[test]
fn known_values() {
    assert_eq!(graded_dim(9, Parity::All), 30);
    assert_eq!(graded_dim(10, Parity::All), 42);
    assert_eq!(graded_dim(4, Parity::Even), 3);
    assert_eq!(graded_dim(0, Parity::Odd), 0);
    assert_eq!(graded_dim(100, Parity::All), 190_569_292);
}

#[test]
fn twisted_basis_counts_partitions_into_odd_parts() {
    // partitions of 2w into odd parts equal partitions of 2w into distinct parts
    let distinct = [1usize, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10, 12, 15];
    for (w2, &d) in distinct.iter().enumerate() {
        assert_eq!(
            basis_doubled(w2 as u32, Sector::Twisted).len(),
            d,
            "doubled weight {w2}"
        );
    }
}
