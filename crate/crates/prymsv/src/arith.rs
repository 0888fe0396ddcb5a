//! Small integer helpers shared by the enumerators and divisor sums.

use num_integer::{Integer, Roots};

/// Positive divisors of `n` in increasing order. Returns an empty list for `n == 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorisation as `(prime, exponent)` pairs, primes increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `gcd` of four integers, taken on absolute values (`gcd(x, 0) = |x|`).
pub fn gcd4(a: i64, b: i64, c: i64, d: i64) -> i64 {
    a.gcd(&b).gcd(&c).gcd(&d)
}

/// Largest `s` with `s² < n`, i.e. the bound for `e² < n` loops.
pub fn isqrt_strict(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let r = n.sqrt();
    if r * r == n {
        r - 1
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
        assert!(divisors(0).is_empty());
    }

    #[test]
    fn factorisations() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn strict_roots() {
        assert_eq!(isqrt_strict(8), 2);
        assert_eq!(isqrt_strict(9), 2);
        assert_eq!(isqrt_strict(10), 3);
        assert_eq!(gcd4(2, 0, 4, -6), 2);
    }
}
