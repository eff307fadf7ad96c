//! Small modular-arithmetic helpers shared by the residue and primitive-root
//! modules. Everything is plain `u64` with `u128` intermediates.

/// `a * b mod m` without overflow.
#[inline]
pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `a^e mod m` by binary exponentiation.
pub fn mod_pow(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mod_mul(r, a, m);
        }
        a = mod_mul(a, a, m);
        e >>= 1;
    }
    r
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Modular inverse of `a` mod `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Trial-division primality, sufficient at desk scale.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Combines `x ≡ r1 (mod m1)` and `x ≡ r2 (mod m2)` for coprime moduli.
pub fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    // x = r1 + m1 * ((r2 - r1) * m1^{-1} mod m2)
    let inv = mod_inverse(m1 % m2, m2).expect("crt moduli must be coprime");
    let diff = (r2 % m2 + m2 - r1 % m2) % m2;
    r1 + m1 * mod_mul(diff, inv, m2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_pow_matches_naive() {
        for &(a, e, m) in &[(3u64, 13u64, 97u64), (7, 100, 1_000_003), (2, 64, 11)] {
            let mut naive = 1u64;
            for _ in 0..e {
                naive = mod_mul(naive, a, m);
            }
            assert_eq!(mod_pow(a, e, m), naive);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        for m in [5u64, 13, 101, 997] {
            for a in 1..m {
                let inv = mod_inverse(a, m).unwrap();
                assert_eq!(mod_mul(a, inv, m), 1);
            }
        }
        assert_eq!(mod_inverse(4, 8), None);
    }

    #[test]
    fn crt_combines() {
        let x = crt_pair(2, 3, 3, 5);
        assert_eq!(x % 3, 2);
        assert_eq!(x % 5, 3);
        assert!(x < 15);
    }

    #[test]
    fn trial_division_primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }
}
