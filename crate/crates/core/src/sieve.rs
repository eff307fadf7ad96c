//! Smallest-prime-factor sieve and the arithmetic-function tables derived
//! from it.
//!
//! A single linear sieve fills `spf[n]` for every `n <= limit`; one more
//! ascending pass then derives μ, φ, ω, σ, τ and the prime-power
//! decomposition (the structural form of Λ) from the recurrences
//!
//! ```text
//! n = p·m, p = spf(n):   p ∤ m:  μ(n) = -μ(m),  φ(n) = φ(m)(p-1), ...
//!                        p | m:  μ(n) = 0,      φ(n) = φ(m)·p,    ...
//! ```
//!
//! Λ is kept structurally as the pair `(p, m)` with `n = p^m` — never as a
//! floating log — so identity checks downstream stay exact.
//!
//! The tables are immutable after construction and safe to share across
//! threads; all queries are pure.

use crate::error::{Error, Result};
use crate::logs::LogCombination;

/// Default ceiling on the number of table entries.
pub const DEFAULT_MEM_CEILING: u64 = 200_000_000;

/// Immutable per-limit tables of the arithmetic functions used everywhere
/// else: smallest prime factor, μ, φ, ω, σ, τ, and the prime-power base of Λ.
pub struct SieveTables {
    limit: u64,
    spf: Vec<u32>,
    mu: Vec<i8>,
    phi: Vec<u32>,
    omega: Vec<u8>,
    sigma: Vec<u64>,
    tau: Vec<u32>,
    /// `p` when `n = p^m`, otherwise 0.
    pp_base: Vec<u32>,
    /// `m` when `n = p^m`, otherwise 0.
    pp_exp: Vec<u8>,
}

/// Which table `arithmetic_value` reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithmeticKind {
    Mu,
    Mangoldt,
    Phi,
    Omega,
    Sigma,
    Tau,
}

/// Value of a single arithmetic function at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithmeticValue {
    Integer(i64),
    Mangoldt(LogCombination),
}

/// Which summatory function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummatoryKind {
    Psi,
    Mertens,
    PsiAp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SummatoryValue {
    Psi(LogCombination),
    Mertens(i64),
}

fn sigma_prime_power(p: u64, e: u32) -> u64 {
    // (p^{e+1} - 1) / (p - 1) accumulated as 1 + p + ... + p^e
    let mut s = 1u64;
    let mut pk = 1u64;
    for _ in 0..e {
        pk *= p;
        s += pk;
    }
    s
}

impl SieveTables {
    /// Builds all tables for `2 <= limit`, against the default ceiling.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_ceiling(limit, DEFAULT_MEM_CEILING)
    }

    pub fn build_with_ceiling(limit: u64, ceiling: u64) -> Result<Self> {
        if limit < 2 || limit > ceiling {
            return Err(Error::SieveLimit { limit, ceiling });
        }
        let n = limit as usize;

        // Linear sieve: each composite is crossed off exactly once, by its
        // smallest prime factor.
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            for &p in &primes {
                let p = p as usize;
                if p > spf[i] as usize || i * p > n {
                    break;
                }
                spf[i * p] = p as u32;
            }
        }
        spf[1] = 1;

        let mut mu = vec![0i8; n + 1];
        let mut phi = vec![0u32; n + 1];
        let mut omega = vec![0u8; n + 1];
        let mut sigma = vec![0u64; n + 1];
        let mut tau = vec![0u32; n + 1];
        let mut pp_base = vec![0u32; n + 1];
        let mut pp_exp = vec![0u8; n + 1];

        // spf-power part of n (p^{v_p(n)} for p = spf(n)), construction only.
        let mut pk = vec![0u32; n + 1];
        let mut vp = vec![0u8; n + 1];

        mu[1] = 1;
        phi[1] = 1;
        sigma[1] = 1;
        tau[1] = 1;
        pk[1] = 1;

        for i in 2..=n {
            let p = spf[i] as usize;
            let m = i / p;
            if spf[m] as usize == p {
                // p divides m: extend the spf-power part.
                mu[i] = 0;
                phi[i] = phi[m] * p as u32;
                omega[i] = omega[m];
                vp[i] = vp[m] + 1;
                pk[i] = pk[m] * p as u32;
            } else {
                mu[i] = -mu[m];
                phi[i] = phi[m] * (p as u32 - 1);
                omega[i] = omega[m] + 1;
                vp[i] = 1;
                pk[i] = p as u32;
            }
            let free = i / pk[i] as usize;
            tau[i] = tau[free] * (vp[i] as u32 + 1);
            sigma[i] = sigma[free] * sigma_prime_power(p as u64, vp[i] as u32);
            if free == 1 {
                pp_base[i] = p as u32;
                pp_exp[i] = vp[i];
            }
        }

        Ok(Self {
            limit,
            spf,
            mu,
            phi,
            omega,
            sigma,
            tau,
            pp_base,
            pp_exp,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn check(&self, what: &'static str, n: u64) -> Result<usize> {
        if n < 1 || n > self.limit {
            return Err(Error::OutOfRange {
                what,
                value: n,
                lo: 1,
                hi: self.limit,
            });
        }
        Ok(n as usize)
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && self.spf[n as usize] as u64 == n
    }

    /// Smallest prime factor; `spf(1) = 1` by convention.
    pub fn spf(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    pub fn mu(&self, n: u64) -> i64 {
        self.mu[n as usize] as i64
    }

    pub fn phi(&self, n: u64) -> u64 {
        self.phi[n as usize] as u64
    }

    pub fn omega(&self, n: u64) -> u32 {
        self.omega[n as usize] as u32
    }

    pub fn sigma(&self, n: u64) -> u64 {
        self.sigma[n as usize]
    }

    pub fn tau(&self, n: u64) -> u64 {
        self.tau[n as usize] as u64
    }

    /// `Some((p, m))` when `n = p^m`, `m >= 1`.
    pub fn mangoldt_base(&self, n: u64) -> Option<(u64, u32)> {
        let b = self.pp_base[n as usize];
        if b == 0 {
            None
        } else {
            Some((b as u64, self.pp_exp[n as usize] as u32))
        }
    }

    /// Λ(n) as a formal term: `1·log p` when `n = p^m`, else empty.
    pub fn mangoldt(&self, n: u64) -> LogCombination {
        match self.mangoldt_base(n) {
            Some((p, _)) => LogCombination::single(p),
            None => LogCombination::new(),
        }
    }

    /// Prime factorization `(p, e)` pairs in ascending `p`, via the spf table.
    pub fn factor(&self, mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }

    pub fn distinct_primes(&self, n: u64) -> Vec<u64> {
        self.factor(n).into_iter().map(|(p, _)| p).collect()
    }

    /// Iterator over primes `<= limit`.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit).filter(move |&n| self.spf[n as usize] as u64 == n)
    }

    /// Dispatch form of the per-point table reads.
    pub fn arithmetic_value(&self, kind: ArithmeticKind, n: u64) -> Result<ArithmeticValue> {
        let i = self.check("n", n)?;
        Ok(match kind {
            ArithmeticKind::Mu => ArithmeticValue::Integer(self.mu[i] as i64),
            ArithmeticKind::Phi => ArithmeticValue::Integer(self.phi[i] as i64),
            ArithmeticKind::Omega => ArithmeticValue::Integer(self.omega[i] as i64),
            ArithmeticKind::Sigma => ArithmeticValue::Integer(self.sigma[i] as i64),
            ArithmeticKind::Tau => ArithmeticValue::Integer(self.tau[i] as i64),
            ArithmeticKind::Mangoldt => ArithmeticValue::Mangoldt(self.mangoldt(n)),
        })
    }

    /// `ψ(x) = Σ_{n≤x} Λ(n)` as an exact combination.
    pub fn psi(&self, x: u64) -> Result<LogCombination> {
        let x = self.check("x", x)? as u64;
        let mut out = LogCombination::new();
        for n in 2..=x {
            if let Some((p, _)) = self.mangoldt_base(n) {
                out.add_term(p, 1);
            }
        }
        Ok(out)
    }

    /// `ψ(x; q, a) = Σ_{n≤x, n≡a (q)} Λ(n)`; requires `gcd(a, q) = 1`.
    pub fn psi_ap(&self, x: u64, q: u64, a: u64) -> Result<LogCombination> {
        if q == 0 || crate::modmath::gcd(a % q.max(1), q) != 1 {
            return Err(Error::arg(format!("psi_ap requires gcd(a, q) = 1, got a={a}, q={q}")));
        }
        let x = self.check("x", x)? as u64;
        let mut out = LogCombination::new();
        let mut n = a % q;
        if n == 0 {
            n = q;
        }
        while n <= x {
            if let Some((p, _)) = self.mangoldt_base(n) {
                out.add_term(p, 1);
            }
            n += q;
        }
        Ok(out)
    }

    /// Mertens function `M(x) = Σ_{n≤x} μ(n)`.
    pub fn mertens(&self, x: u64) -> Result<i64> {
        let x = self.check("x", x)?;
        Ok(self.mu[1..=x].iter().map(|&m| m as i64).sum())
    }

    /// Dispatch form of the summatory functions.
    pub fn summatory(
        &self,
        kind: SummatoryKind,
        x: u64,
        ap: Option<(u64, u64)>,
    ) -> Result<SummatoryValue> {
        match kind {
            SummatoryKind::Psi => Ok(SummatoryValue::Psi(self.psi(x)?)),
            SummatoryKind::Mertens => Ok(SummatoryValue::Mertens(self.mertens(x)?)),
            SummatoryKind::PsiAp => {
                let (q, a) =
                    ap.ok_or_else(|| Error::arg("psi_ap requires a progression (q, a)"))?;
                Ok(SummatoryValue::Psi(self.psi_ap(x, q, a)?))
            }
        }
    }
}

/// Plain Eratosthenes flag sieve. Kept deliberately independent of the
/// spf construction above so the two can cross-check each other.
pub fn prime_flags_eratosthenes(limit: u64) -> Vec<bool> {
    let n = limit as usize;
    let mut flags = vec![true; n + 1];
    flags[0] = false;
    if n >= 1 {
        flags[1] = false;
    }
    let mut p = 2usize;
    while p * p <= n {
        if flags[p] {
            let mut j = p * p;
            while j <= n {
                flags[j] = false;
                j += p;
            }
        }
        p += 1;
    }
    flags
}
