//! Integer helpers: modular exponentiation, Kronecker symbols, primality.

/// `a * b mod m` without overflow for any `u64` inputs.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by square-and-multiply.
pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduce a signed integer into `[0, m)`.
#[inline]
pub fn reduce_signed(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// Kronecker symbol `(a / n)` for `n >= 1`.
///
/// Agrees with the Jacobi symbol for odd `n` and with the Legendre symbol
/// when `n` is an odd prime. The factor `(a / 2)` is `0` for even `a`,
/// `1` for `a ≡ ±1 (mod 8)` and `-1` for `a ≡ ±3 (mod 8)`.
pub fn kronecker(a: i64, n: u64) -> i32 {
    assert!(n >= 1, "kronecker symbol requires n >= 1");
    let mut n = n;
    let mut result = 1i32;

    let twos = n.trailing_zeros();
    if twos > 0 {
        if a.rem_euclid(2) == 0 {
            return 0;
        }
        if twos % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        n >>= twos;
    }

    // Jacobi symbol (a / n) for odd n.
    let mut a = reduce_signed(a, n);
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Deterministic primality test for all `n < 2^64`.
///
/// Trial division by small primes, then strong-pseudoprime tests to the
/// first twelve prime bases, which is exact below 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &SMALL {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let s = d.trailing_zeros();
    d >>= s;
    'bases: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`, if one exists below `u64::MAX`.
pub fn next_prime(n: u64) -> Option<u64> {
    (n.max(2)..u64::MAX).find(|&k| is_prime(k))
}

/// Divisors of `m` in ascending order.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct prime factors of `m` in ascending order.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= m {
        if m.is_multiple_of(q) {
            out.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Integer square root: largest `r` with `r * r <= n`.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler(a: i64, p: u64) -> i32 {
        let r = pow_mod(reduce_signed(a, p), (p - 1) / 2, p);
        match r {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(-7, 113), euler(-7, 113));
        assert_eq!(kronecker(-7, 113), 1);
        assert_eq!(kronecker(0, 5), 0);
        assert_eq!(kronecker(-11, 109), euler(-11, 109));
        assert_eq!(kronecker(-11, 109), -1);
    }

    #[test]
    fn kronecker_at_two() {
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(1, 1), 1);
        // (-3/4) = (-3/2)^2
        assert_eq!(kronecker(-3, 4), 1);
        assert_eq!(kronecker(-3, 8), -1);
    }

    #[test]
    fn primality() {
        assert!(is_prime(1009));
        assert!(is_prime(2689));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(2));
        assert!(!is_prime(561));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(2_147_483_647));
        let sieve: Vec<u64> = (0..2000).filter(|&n| is_prime(n)).collect();
        let naive: Vec<u64> = (0..2000u64)
            .filter(|&n| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
            .collect();
        assert_eq!(sieve, naive);
    }

    #[test]
    fn divisor_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(prime_factors(9240), vec![2, 3, 5, 7, 11]);
        assert_eq!(isqrt(24), 4);
        assert_eq!(isqrt(25), 5);
        assert_eq!(next_prime(1000), Some(1009));
    }
}
