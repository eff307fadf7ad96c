//! Quadratic symbols, square roots of −1, and root sets of `n² ≡ a (mod q)`
//! for odd squarefree moduli (roots per prime lifted by CRT).
//!
//! Only the odd squarefree case is exposed: with μ(d) ≠ 0 and d odd the
//! solution count is exactly `2^ω(q)` or 0, which is the only case the
//! inversion identities need. Moduli with 4 | q are rejected loudly.

use crate::error::{Error, Result};
use crate::modmath::{self, mod_mul, mod_pow};

/// Legendre symbol `(x/p)` by Euler's criterion; `p` must be an odd prime.
pub fn quadratic_symbol(x: i64, p: u64) -> Result<i32> {
    if p < 3 || !modmath::is_prime_u64(p) {
        return Err(Error::arg(format!("quadratic_symbol requires an odd prime, got {p}")));
    }
    let r = x.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    let e = mod_pow(r, (p - 1) / 2, p);
    Ok(if e == 1 { 1 } else { -1 })
}

/// Smallest quadratic nonresidue mod `p`, by ascending scan.
fn smallest_nonresidue(p: u64) -> u64 {
    let mut n = 2u64;
    loop {
        if mod_pow(n, (p - 1) / 2, p) != 1 {
            return n;
        }
        n += 1;
    }
}

/// Both square roots of −1 mod `p` for a prime `p ≡ 1 (mod 4)`, as
/// `(b, p − b)` with `b < p − b`. Uses the deterministic shortcut
/// `b = n^{(p−1)/4}` for the smallest nonresidue `n`; the result is verified
/// before returning.
pub fn sqrt_minus_one(p: u64) -> Result<(u64, u64)> {
    if !modmath::is_prime_u64(p) || p % 4 != 1 {
        return Err(Error::arg(format!(
            "sqrt_minus_one requires a prime p ≡ 1 (mod 4), got {p}"
        )));
    }
    let n = smallest_nonresidue(p);
    let b = mod_pow(n, (p - 1) / 4, p);
    assert_eq!(mod_mul(b, b, p), p - 1, "nonresidue shortcut failed at p={p}");
    Ok((b.min(p - b), b.max(p - b)))
}

/// Square root of `a` mod an odd prime `p` (one of the pair), or `None` when
/// `a` is a nonresidue. Tonelli–Shanks with the smallest-nonresidue scan.
pub(crate) fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if mod_pow(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(mod_pow(a, (p + 1) / 4, p));
    }
    // p ≡ 1 (mod 4): write p - 1 = u · 2^s with u odd
    let mut u = p - 1;
    let mut s = 0u32;
    while u % 2 == 0 {
        u /= 2;
        s += 1;
    }
    let z = smallest_nonresidue(p);
    let mut m = s;
    let mut c = mod_pow(z, u, p);
    let mut t = mod_pow(a, u, p);
    let mut r = mod_pow(a, (u + 1) / 2, p);
    while t != 1 {
        // find least i with t^{2^i} = 1
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mod_mul(t2, t2, p);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = mod_mul(b, b, p);
        }
        m = i;
        c = mod_mul(b, b, p);
        t = mod_mul(t, c, p);
        r = mod_mul(r, b, p);
    }
    Some(r)
}

/// Sorted roots of `n² ≡ a (mod q)` for odd squarefree `q` with
/// `gcd(a, q) = 1`. Empty when `a` is a nonresidue mod some prime factor;
/// otherwise exactly `2^ω(q)` roots.
pub fn roots_mod_squarefree(a: i64, q: u64) -> Result<Vec<u64>> {
    if q == 0 || q % 2 == 0 {
        return Err(Error::arg(format!("roots_mod_squarefree requires odd q >= 1, got {q}")));
    }
    let primes = modmath::distinct_prime_factors(q);
    let prod: u64 = primes.iter().product();
    if prod != q {
        return Err(Error::arg(format!("roots_mod_squarefree requires squarefree q, got {q}")));
    }
    let a_red = a.rem_euclid(q as i64) as u64;
    if modmath::gcd(a_red, q) != 1 {
        return Err(Error::arg(format!(
            "roots_mod_squarefree requires gcd(a, q) = 1, got a={a}, q={q}"
        )));
    }
    // q = 1: the empty product; n ≡ 0 is the single root
    let mut roots: Vec<(u64, u64)> = vec![(0, 1)]; // (root, modulus)
    for &p in &primes {
        let r = match sqrt_mod_prime(a_red % p, p) {
            Some(r) => r,
            None => return Ok(Vec::new()),
        };
        let mut next = Vec::with_capacity(roots.len() * 2);
        for &(x, m) in &roots {
            next.push((modmath::crt_pair(x, m, r, p), m * p));
            next.push((modmath::crt_pair(x, m, p - r, p), m * p));
        }
        roots = next;
    }
    let mut out: Vec<u64> = roots.into_iter().map(|(x, _)| x).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_examples() {
        assert_eq!(quadratic_symbol(-1, 13).unwrap(), 1);
        assert_eq!(quadratic_symbol(2, 7).unwrap(), 1);
        assert_eq!(quadratic_symbol(3, 3).unwrap(), 0);
        assert!(quadratic_symbol(1, 2).is_err());
        assert!(quadratic_symbol(1, 9).is_err());
    }

    #[test]
    fn symbol_matches_brute_force_search() {
        for p in (3..10_000u64).filter(|&p| modmath::is_prime_u64(p)) {
            // squares mod p in one pass
            let mut is_qr = vec![false; p as usize];
            for n in 1..p {
                is_qr[mod_mul(n, n, p) as usize] = true;
            }
            for x in 1..p {
                let expect = if is_qr[x as usize] { 1 } else { -1 };
                assert_eq!(quadratic_symbol(x as i64, p).unwrap(), expect, "({x}/{p})");
            }
        }
    }

    #[test]
    fn symbol_special_formulas() {
        // Eq.-(109)-style special cases as an independent route
        for p in (3..5_000u64).filter(|&p| modmath::is_prime_u64(p)) {
            let minus_one = if (p - 1) / 2 % 2 == 0 { 1 } else { -1 };
            assert_eq!(quadratic_symbol(-1, p).unwrap(), minus_one);
            let two = if (p * p - 1) / 8 % 2 == 0 { 1 } else { -1 };
            assert_eq!(quadratic_symbol(2, p).unwrap(), two);
        }
    }

    #[test]
    fn reciprocity() {
        let odd_primes: Vec<u64> = (3..500).filter(|&p| modmath::is_prime_u64(p)).collect();
        for &p in &odd_primes {
            for &q in &odd_primes {
                if p == q {
                    continue;
                }
                let lhs = quadratic_symbol(p as i64, q).unwrap() * quadratic_symbol(q as i64, p).unwrap();
                let rhs = if (p - 1) / 2 * ((q - 1) / 2) % 2 == 0 { 1 } else { -1 };
                assert_eq!(lhs, rhs, "reciprocity at ({p}, {q})");
            }
        }
    }

    #[test]
    fn sqrt_minus_one_examples() {
        assert_eq!(sqrt_minus_one(5).unwrap(), (2, 3));
        assert_eq!(sqrt_minus_one(13).unwrap(), (5, 8));
        assert_eq!(sqrt_minus_one(17).unwrap(), (4, 13));
        assert!(sqrt_minus_one(7).is_err());
        assert!(sqrt_minus_one(15).is_err());
        for p in (5..20_000u64).filter(|&p| modmath::is_prime_u64(p) && p % 4 == 1) {
            let (b, b2) = sqrt_minus_one(p).unwrap();
            assert_eq!(mod_mul(b, b, p), p - 1);
            assert_eq!(b + b2, p);
        }
    }

    #[test]
    fn tonelli_round_trips() {
        for p in (3..2_000u64).filter(|&p| modmath::is_prime_u64(p)) {
            for a in 0..p {
                match sqrt_mod_prime(a, p) {
                    Some(r) => assert_eq!(mod_mul(r, r, p), a, "sqrt({a}) mod {p}"),
                    None => assert_eq!(mod_pow(a, (p - 1) / 2, p), p - 1),
                }
            }
        }
    }

    #[test]
    fn roots_examples() {
        assert_eq!(roots_mod_squarefree(-1, 65).unwrap(), vec![8, 18, 47, 57]);
        assert_eq!(roots_mod_squarefree(-1, 21).unwrap(), Vec::<u64>::new());
        assert_eq!(roots_mod_squarefree(1, 15).unwrap(), vec![1, 4, 11, 14]);
        assert_eq!(roots_mod_squarefree(1, 1).unwrap(), vec![0]);
        assert!(roots_mod_squarefree(-1, 4).is_err());
        assert!(roots_mod_squarefree(-1, 9).is_err());
        assert!(roots_mod_squarefree(3, 9).is_err());
        assert!(roots_mod_squarefree(5, 15).is_err());
    }

    #[test]
    fn roots_square_back_and_count_law() {
        let mut omega = |mut q: u64| {
            let mut w = 0;
            let mut d = 2;
            while d * d <= q {
                if q % d == 0 {
                    w += 1;
                    while q % d == 0 {
                        q /= d;
                    }
                }
                d += 1;
            }
            if q > 1 {
                w += 1;
            }
            w
        };
        for q in (1..=3_000u64).step_by(2) {
            if modmath::distinct_prime_factors(q).iter().product::<u64>() != q {
                continue; // not squarefree
            }
            for &a in &[-1i64, 1, 2] {
                let a_red = a.rem_euclid(q as i64) as u64;
                if modmath::gcd(a_red, q) != 1 {
                    continue;
                }
                let roots = roots_mod_squarefree(a, q).unwrap();
                for &r in &roots {
                    assert_eq!(mod_mul(r, r, q.max(1)) % q.max(1), a_red % q.max(1));
                }
                assert!(
                    roots.is_empty() || roots.len() == 1 << omega(q),
                    "count law fails at a={a}, q={q}: {}",
                    roots.len()
                );
            }
        }
    }
}
