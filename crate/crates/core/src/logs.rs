//! Exact integer-coefficient combinations of `log p` and `log p · log q`.
//!
//! The summation-inversion identities verified elsewhere cancel terms whose
//! magnitudes reach `x²`, so they are checked over a formal prime-log basis
//! rather than in floating point: two sums are equal exactly or they are not.
//! Coefficients are `i128` with checked arithmetic; an overflow aborts instead
//! of silently wrapping. At the supported sieve ceiling every coefficient
//! stays far below `i128::MAX`.

use std::collections::BTreeMap;
use std::fmt;

/// Integer linear combination `Σ c_p · log p` over primes `p`.
///
/// Zero coefficients are never stored, so derived equality is canonical and
/// independent of construction order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LogCombination {
    terms: BTreeMap<u64, i128>,
}

/// Integer linear combination `Σ c_{p,q} · log p · log q` over unordered
/// prime pairs, keys normalized to `p <= q`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LogBilinear {
    terms: BTreeMap<(u64, u64), i128>,
}

fn checked_add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("log coefficient overflow")
}

fn checked_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("log coefficient overflow")
}

impl LogCombination {
    pub fn new() -> Self {
        Self::default()
    }

    /// The single term `1 · log p`.
    pub fn single(p: u64) -> Self {
        let mut t = Self::new();
        t.add_term(p, 1);
        t
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, p: u64) -> i128 {
        self.terms.get(&p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i128)> + '_ {
        self.terms.iter().map(|(&p, &c)| (p, c))
    }

    /// Adds `c · log p`, dropping the key if the coefficient cancels.
    pub fn add_term(&mut self, p: u64, c: i128) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(p).or_insert(0);
        *entry = checked_add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&p);
        }
    }

    /// `self += scale · other`.
    pub fn add_scaled(&mut self, other: &Self, scale: i128) {
        if scale == 0 {
            return;
        }
        for (p, c) in other.iter() {
            self.add_term(p, checked_mul(c, scale));
        }
    }

    pub fn scaled(&self, scale: i128) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, scale);
        out
    }

    /// Substitutes double-precision natural logs, summing in ascending key
    /// order for reproducibility.
    pub fn evaluate(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&p, &c)| (c as f64) * (p as f64).ln())
            .sum()
    }
}

impl LogBilinear {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, p: u64, q: u64) -> i128 {
        let key = if p <= q { (p, q) } else { (q, p) };
        self.terms.get(&key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u64, u64), i128)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    /// Adds `c · log p · log q` under the normalized key.
    pub fn add_term(&mut self, p: u64, q: u64, c: i128) {
        if c == 0 {
            return;
        }
        let key = if p <= q { (p, q) } else { (q, p) };
        let entry = self.terms.entry(key).or_insert(0);
        *entry = checked_add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    /// `self += scale · other`.
    pub fn add_scaled(&mut self, other: &Self, scale: i128) {
        if scale == 0 {
            return;
        }
        for ((p, q), c) in other.iter() {
            self.add_term(p, q, checked_mul(c, scale));
        }
    }

    pub fn evaluate(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&(p, q), &c)| (c as f64) * (p as f64).ln() * (q as f64).ln())
            .sum()
    }
}

/// Distributive expansion of a product of two linear combinations.
pub fn bilinear_product(a: &LogCombination, b: &LogCombination) -> LogBilinear {
    let mut out = LogBilinear::new();
    for (p, cp) in a.iter() {
        for (q, cq) in b.iter() {
            out.add_term(p, q, checked_mul(cp, cq));
        }
    }
    out
}

impl fmt::Display for LogCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·log{p}")?;
        }
        Ok(())
    }
}

impl fmt::Display for LogBilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, ((p, q), c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·log{p}·log{q}")?;
        }
        Ok(())
    }
}
