//! Power sums over arithmetic progressions in closed form, weighted prime
//! sums over progressions, and power sums over quadratic progressions.

use crate::error::{Error, Result};
use crate::logs::LogCombination;
use crate::modmath;
use crate::qr;
use crate::sieve::SieveTables;

/// Residue class `{ qn + a : n >= 0 }` with `0 <= a < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApClass {
    q: u64,
    a: u64,
}

impl ApClass {
    pub fn new(q: u64, a: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::arg("ApClass requires q >= 1"));
        }
        if a >= q {
            return Err(Error::arg(format!("ApClass requires 0 <= a < q, got a={a}, q={q}")));
        }
        Ok(Self { q, a })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn a(&self) -> u64 {
        self.a
    }
}

/// `Σ_{n≤x, n≡a (mod q)} n^e` for `e ∈ {0,1,2,3}`, via the closed forms in
/// exact integer arithmetic with `T = ⌊(x−a)/q⌋`. An empty progression
/// (x < a) sums to 0.
pub fn power_sum_ap(x: f64, ap: ApClass, e: u32) -> Result<i128> {
    if e > 3 {
        return Err(Error::arg(format!("power_sum_ap supports exponents 0..=3, got {e}")));
    }
    let (q, a) = (ap.q as i128, ap.a as i128);
    if x < ap.a as f64 {
        return Ok(0);
    }
    let t = ((x - ap.a as f64) / ap.q as f64).floor() as i128;
    // Faulhaber pieces for m = 0..=T
    let s0 = t + 1;
    let s1 = t * (t + 1) / 2;
    let s2 = t * (t + 1) * (2 * t + 1) / 6;
    let s3 = s1 * s1;
    Ok(match e {
        0 => s0,
        1 => a * s0 + q * s1,
        2 => a * a * s0 + 2 * a * q * s1 + q * q * s2,
        3 => a * a * a * s0 + 3 * a * a * q * s1 + 3 * a * q * q * s2 + q * q * q * s3,
        _ => unreachable!(),
    })
}

/// `Σ_{n≤x, n≡a (mod q)} n·Λ(n)` exactly, with the relative deviation of its
/// evaluation from the main term `x²/(2φ(q))`.
#[derive(Debug, Clone)]
pub struct WeightedPsiAp {
    pub sum: LogCombination,
    pub main_term: f64,
    pub relative_deviation: f64,
}

pub fn weighted_psi_ap(t: &SieveTables, x: u64, ap: ApClass) -> Result<WeightedPsiAp> {
    if modmath::gcd(ap.a, ap.q) != 1 {
        return Err(Error::arg(format!(
            "weighted_psi_ap requires gcd(a, q) = 1, got a={}, q={}",
            ap.a, ap.q
        )));
    }
    if x > t.limit() {
        return Err(Error::OutOfRange {
            what: "x",
            value: x,
            lo: 1,
            hi: t.limit(),
        });
    }
    let mut sum = LogCombination::new();
    let mut n = if ap.a == 0 { ap.q } else { ap.a };
    while n <= x {
        if let Some((p, _)) = t.mangoldt_base(n) {
            sum.add_term(p, n as i128);
        }
        n += ap.q;
    }
    let main_term = (x as f64) * (x as f64) / (2.0 * t.phi(ap.q) as f64);
    let relative_deviation = if main_term == 0.0 {
        0.0
    } else {
        (sum.evaluate() - main_term).abs() / main_term
    };
    Ok(WeightedPsiAp {
        sum,
        main_term,
        relative_deviation,
    })
}

/// `Σ_{n≤x, n²≡a (mod q)} n²` over an odd squarefree modulus, as the sum of
/// `power_sum_ap` over each root class, with the root multiset and the
/// deviation from the main term `2^W · x³ / (3q²)`.
#[derive(Debug, Clone)]
pub struct QrPowerSum {
    pub sum: i128,
    pub roots: Vec<u64>,
    pub main_term: f64,
    pub relative_deviation: f64,
}

pub fn qr_power_sum(t: &SieveTables, x: f64, q: u64, a: i64) -> Result<QrPowerSum> {
    let _ = t; // factorization is by trial division inside roots_mod_squarefree
    let roots = qr::roots_mod_squarefree(a, q)?;
    let mut sum = 0i128;
    for &b in &roots {
        sum += power_sum_ap(x, ApClass::new(q, b)?, 2)?;
    }
    let main_term = roots.len() as f64 * x * x * x / (3.0 * (q * q) as f64);
    let relative_deviation = if main_term == 0.0 {
        0.0
    } else {
        (sum as f64 - main_term).abs() / main_term
    };
    Ok(QrPowerSum {
        sum,
        roots,
        main_term,
        relative_deviation,
    })
}
