//! Prime moduli, Frobenius exponents, and binomial arithmetic mod p.
//!
//! Binomial and multinomial residues are computed digit by digit in base p
//! (Lucas), never through big integers; the only loops are over base-p digits
//! and over values below p. Everything in this module is exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime p < 2^31, so that products of residues fit in a u64 without
/// overflow tricks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    /// Validates primality with a deterministic Miller-Rabin round over the
    /// witnesses 2, 3, 5, 7 (sufficient for every candidate below 2^31).
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeModulus(p))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Reduce a signed-free residue into [0, p).
    pub fn reduce(self, n: u64) -> u64 {
        n % self.0
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 { 0 } else { self.0 - a }
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b % self.0) % self.0
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a % self.0) * (b % self.0) % self.0
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.0;
        let mut acc = 1 % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.0;
            }
            base = base * base % self.0;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue, by Fermat.
    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a % self.0 != 0, "inverse of zero");
        self.pow(a, self.0 - 2)
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    // n odd, > 7 here. Write n-1 = d * 2^s.
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    // m < 2^31 by construction, so a, b < m keeps the product in range.
    (a % m) * (b % m) % m
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// q = p^e for an admitted prime p. Kept below 2^62 so that q-derived
/// exponent arithmetic stays inside u64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusExponent {
    p: u64,
    e: u32,
    q: u64,
}

impl FrobeniusExponent {
    pub fn new(p: PrimeModulus, e: u32) -> Result<Self> {
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q
                .checked_mul(p.value())
                .filter(|&q| q < 1 << 62)
                .ok_or(Error::ExponentOverflow { p: p.value(), e })?;
        }
        Ok(FrobeniusExponent { p: p.value(), e, q })
    }

    /// Recognizes q as p^e, rejecting anything that is not a power of p.
    pub fn from_q(p: PrimeModulus, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::NotAFrobeniusPower(0));
        }
        let mut rest = q;
        let mut e: u32 = 0;
        while rest > 1 {
            if rest % p.value() != 0 {
                return Err(Error::NotAFrobeniusPower(q));
            }
            rest /= p.value();
            e += 1;
        }
        FrobeniusExponent::new(p, e)
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn e(self) -> u32 {
        self.e
    }

    pub fn q(self) -> u64 {
        self.q
    }
}

/// Little-endian base-p digits; zero has no digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePDigits {
    pub digits: Vec<u32>,
}

impl BasePDigits {
    pub fn value(&self, p: u64) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * p + d as u64)
    }
}

/// Base-p expansion of n, least significant digit first.
pub fn base_p_digits(mut n: u64, p: PrimeModulus) -> BasePDigits {
    let mut digits = Vec::new();
    while n > 0 {
        digits.push((n % p.value()) as u32);
        n /= p.value();
    }
    BasePDigits { digits }
}

/// C(a, b) mod p for 0 <= a, b < p, via the multiplicative formula. Division
/// is exact here because no factor in sight is divisible by p.
fn small_binom_mod(a: u64, b: u64, p: PrimeModulus) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 1..=b {
        num = p.mul(num, a - b + i);
        den = p.mul(den, i);
    }
    p.mul(num, p.inv(den))
}

/// Binomial coefficient C(m, n) mod p by Lucas: the product of the digitwise
/// binomials of the base-p expansions. C(m, n) = 0 whenever n > m.
pub fn binom_mod_p(m: u64, n: u64, p: PrimeModulus) -> u64 {
    if n > m {
        return 0;
    }
    let md = base_p_digits(m, p);
    let nd = base_p_digits(n, p);
    let mut acc = 1u64;
    for (i, &nd_i) in nd.digits.iter().enumerate() {
        let md_i = *md.digits.get(i).unwrap_or(&0) as u64;
        acc = p.mul(acc, small_binom_mod(md_i, nd_i as u64, p));
        if acc == 0 {
            return 0;
        }
    }
    acc
}

/// Multinomial coefficient m! / (parts[0]! * ... * parts[k]!) mod p, computed
/// as a telescoping chain of binomials so that only Lucas is ever invoked.
/// The parts must sum to m.
pub fn multinom_mod_p(m: u64, parts: &[u64], p: PrimeModulus) -> Result<u64> {
    let sum: u64 = parts.iter().sum();
    if sum != m {
        return Err(Error::PartsSumMismatch { sum, expected: m });
    }
    let mut remaining = m;
    let mut acc = 1u64;
    for &part in parts {
        acc = p.mul(acc, binom_mod_p(remaining, part, p));
        if acc == 0 {
            return Ok(0);
        }
        remaining -= part;
    }
    Ok(acc)
}

/// Outcome of one part of the binomial unit suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartOutcome {
    Holds,
    Fails(Vec<String>),
    Skipped(String),
}

impl PartOutcome {
    pub fn failing(&self) -> bool {
        matches!(self, PartOutcome::Fails(_))
    }
}

/// Report of the three nonvanishing certificates used by the splitting
/// witnesses. Skipped parts record why (small characteristic).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSuiteReport {
    pub p: u64,
    pub e_max: u32,
    /// binom(p^e - 1, r) != 0 for every 0 <= r <= p^e - 1 and 1 <= e <= e_max.
    pub full_row: PartOutcome,
    /// binom((p^e + 1)/2, 1) != 0 for 1 <= e <= e_max; needs p > 2.
    pub half_point: PartOutcome,
    /// binom((p^2 + 1)/2, beta) != 0 with beta fixed by p mod 3; needs p > 3.
    pub beta_point: PartOutcome,
    /// The beta used by the third part, when applicable.
    pub beta: Option<u64>,
}

impl UnitSuiteReport {
    /// True when no checked part found a counterexample (skips don't fail).
    pub fn all_hold(&self) -> bool {
        !self.full_row.failing() && !self.half_point.failing() && !self.beta_point.failing()
    }
}

/// The beta index for the third unit certificate: (p^2 - 1)/3 when
/// p = 1 mod 3, (2p^2 - p + 3)/6 when p = 2 mod 3. Requires p > 3.
pub fn beta_for(p: PrimeModulus) -> Result<u64> {
    let p = p.value();
    if p <= 3 {
        return Err(Error::UnsupportedCharacteristic(p, "beta certificate needs p > 3"));
    }
    Ok(match p % 3 {
        1 => (p * p - 1) / 3,
        2 => (2 * p * p - p + 3) / 6,
        _ => unreachable!("p > 3 is prime, so p mod 3 != 0"),
    })
}

/// Runs the three unit certificates for every e up to e_max. Parts that need
/// a larger characteristic are skipped with a reason, never silently.
pub fn binomial_unit_suite(p: PrimeModulus, e_max: u32) -> Result<UnitSuiteReport> {
    let pv = p.value();

    let mut failures = Vec::new();
    for e in 1..=e_max {
        let q = FrobeniusExponent::new(p, e)?.q();
        for r in 0..q {
            if binom_mod_p(q - 1, r, p) == 0 {
                failures.push(format!("binom({}, {}) = 0 mod {}", q - 1, r, pv));
            }
        }
    }
    let full_row = if failures.is_empty() { PartOutcome::Holds } else { PartOutcome::Fails(failures) };

    let half_point = if pv == 2 {
        PartOutcome::Skipped("needs p > 2".into())
    } else {
        let mut failures = Vec::new();
        for e in 1..=e_max {
            let q = FrobeniusExponent::new(p, e)?.q();
            if binom_mod_p((q + 1) / 2, 1, p) == 0 {
                failures.push(format!("binom({}, 1) = 0 mod {}", (q + 1) / 2, pv));
            }
        }
        if failures.is_empty() { PartOutcome::Holds } else { PartOutcome::Fails(failures) }
    };

    let (beta_point, beta) = if pv <= 3 {
        (PartOutcome::Skipped("needs p > 3".into()), None)
    } else {
        let beta = beta_for(p)?;
        let top = (pv * pv + 1) / 2;
        let outcome = if binom_mod_p(top, beta, p) != 0 {
            PartOutcome::Holds
        } else {
            PartOutcome::Fails(vec![format!("binom({top}, {beta}) = 0 mod {pv}")])
        };
        (outcome, Some(beta))
    };

    Ok(UnitSuiteReport { p: pv, e_max, full_row, half_point, beta_point, beta })
}
