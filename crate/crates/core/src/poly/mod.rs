//! Sparse multivariate polynomials over F_p.
//!
//! A `Polynomial` is a vector of (monomial, coefficient) terms kept in
//! strictly descending monomial order with coefficients in [1, p). That
//! canonical form is the representation invariant: two polynomials over the
//! same ring are equal iff their term vectors are equal, and every
//! constructor or arithmetic routine restores it before returning.
//!
//! Rings are shared through `Arc`; operations on operands from different
//! rings (different variables, modulus, or order) are refused rather than
//! coerced.

mod change;
mod text;
mod weierstrass;

pub use change::LinearChange;
pub(crate) use change::pivot_change;
pub use text::parse_polynomial;
pub use weierstrass::{
    depress_cubic, invert_unit_jet, weierstrass_normalize_quadratic, weierstrass_prepare,
    CubicDepressed, JetPrecision, QuadCase, QuadraticJetForm, DEFAULT_JET_PRECISION,
};

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeModulus;

/// Serde helper: emit a polynomial as its canonical text form so JSON
/// payloads stay readable and re-parseable.
pub fn serialize_poly_string<S>(poly: &Polynomial, ser: S) -> std::result::Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    ser.serialize_str(&poly.to_string())
}

/// Ordered list of variable names; the index in the list is the variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::input("a ring needs at least one variable"));
        }
        for (i, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
            if !head_ok || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::input(format!("bad variable name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::input(format!("duplicate variable name {name:?}")));
            }
        }
        Ok(VarSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
}

impl MonomialOrder {
    /// Total order on exponent vectors of equal length.
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => {
                let da: u64 = a.iter().map(|&e| e as u64).sum();
                let db: u64 = b.iter().map(|&e| e as u64).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {
                        // Same degree: the monomial with the smaller exponent
                        // at the last position where they differ is larger.
                        for i in (0..a.len()).rev() {
                            if a[i] != b[i] {
                                return b[i].cmp(&a[i]);
                            }
                        }
                        Ordering::Equal
                    }
                    other => other,
                }
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Grevlex => write!(f, "grevlex"),
        }
    }
}

/// The ambient polynomial ring F_p[vars] with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ring {
    vars: VarSet,
    p: PrimeModulus,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(vars: VarSet, p: PrimeModulus, order: MonomialOrder) -> Arc<Self> {
        Arc::new(Ring { vars, p, order })
    }

    /// Convenience constructor from plain names.
    pub fn with_names(names: &[&str], p: PrimeModulus, order: MonomialOrder) -> Result<Arc<Self>> {
        Ok(Ring::new(VarSet::new(names.iter().map(|s| s.to_string()).collect())?, p, order))
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.p
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same ring contents, different order. Used to re-sort inputs when a
    /// caller requests a specific order for a Groebner run.
    pub fn reordered(&self, order: MonomialOrder) -> Arc<Ring> {
        Ring::new(self.vars.clone(), self.p, order)
    }
}

pub fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn variable(nvars: usize, var: usize, exp: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = exp;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn deg(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::MonomialOverflow))
            .collect::<Result<_>>()?;
        Ok(Monomial { exps })
    }

    pub fn pow(&self, n: u64) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .map(|&a| {
                (a as u64)
                    .checked_mul(n)
                    .and_then(|v| u32::try_from(v).ok())
                    .ok_or(Error::MonomialOverflow)
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial { exps: other.exps.iter().zip(&self.exps).map(|(&b, &a)| b - a).collect() }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect() }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: u64,
}

/// Canonical sparse polynomial: terms strictly descending in the ring order,
/// coefficients in [1, p).
#[derive(Debug, Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: Arc<Ring>) -> Self {
        Polynomial { ring, terms: Vec::new() }
    }

    pub fn constant(ring: Arc<Ring>, c: u64) -> Self {
        let c = ring.modulus().reduce(c);
        let nvars = ring.nvars();
        let terms =
            if c == 0 { Vec::new() } else { vec![Term { mono: Monomial::one(nvars), coeff: c }] };
        Polynomial { ring, terms }
    }

    pub fn one(ring: Arc<Ring>) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn variable(ring: Arc<Ring>, var: usize) -> Self {
        let mono = Monomial::variable(ring.nvars(), var, 1);
        Polynomial { ring, terms: vec![Term { mono, coeff: 1 }] }
    }

    pub fn monomial(ring: Arc<Ring>, mono: Monomial, coeff: u64) -> Self {
        Polynomial::from_raw(ring, vec![(mono, coeff)])
    }

    /// Canonicalizes an arbitrary pile of (monomial, coefficient) pairs.
    pub fn from_raw(ring: Arc<Ring>, pairs: Vec<(Monomial, u64)>) -> Self {
        let p = ring.modulus();
        let order = ring.order();
        let mut pairs: Vec<(Monomial, u64)> =
            pairs.into_iter().map(|(m, c)| (m, p.reduce(c))).collect();
        pairs.sort_unstable_by(|a, b| order.cmp(b.0.exps(), a.0.exps()));
        let mut terms: Vec<Term> = Vec::with_capacity(pairs.len());
        for (mono, coeff) in pairs {
            match terms.last_mut() {
                Some(last) if last.mono == mono => last.coeff = p.add(last.coeff, coeff),
                _ => terms.push(Term { mono, coeff }),
            }
        }
        terms.retain(|t| t.coeff != 0);
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn constant_term(&self) -> u64 {
        self.terms.last().filter(|t| t.mono.is_one()).map_or(0, |t| t.coeff)
    }

    /// Leading term in the ring order; None for the zero polynomial.
    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn coeff_of(&self, mono: &Monomial) -> u64 {
        let order = self.ring.order();
        self.terms
            .binary_search_by(|t| order.cmp(mono.exps(), t.mono.exps()))
            .map_or(0, |i| self.terms[i].coeff)
    }

    /// Total degree of the largest-degree term; None when zero.
    pub fn total_deg(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.mono.deg()).max()
    }

    /// Order = smallest total degree of a term. The zero polynomial has none.
    pub fn ord(&self) -> Result<u64> {
        self.terms.iter().map(|t| t.mono.deg()).min().ok_or(Error::ZeroPolynomial)
    }

    /// Sum of the terms of minimal total degree.
    pub fn initial_form(&self) -> Result<Polynomial> {
        let o = self.ord()?;
        Ok(self.filter_terms(|t| t.mono.deg() == o))
    }

    /// Sum of the terms of total degree exactly n.
    pub fn graded_piece(&self, n: u64) -> Polynomial {
        self.filter_terms(|t| t.mono.deg() == n)
    }

    /// Drops every term of total degree >= cap (jet truncation).
    pub fn truncated(&self, cap: u64) -> Polynomial {
        self.filter_terms(|t| t.mono.deg() < cap)
    }

    fn filter_terms(&self, keep: impl Fn(&Term) -> bool) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|t| keep(t)).cloned().collect(),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::MixedContext)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge_with(&other.terms, 1))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let p = self.ring.modulus();
        Ok(self.merge_with(&other.terms, p.neg(1)))
    }

    pub fn neg(&self) -> Polynomial {
        let p = self.ring.modulus();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.clone(), coeff: p.neg(t.coeff) })
                .collect(),
        }
    }

    /// self + scale * other, both sorted: one linear merge.
    fn merge_with(&self, other: &[Term], scale: u64) -> Polynomial {
        let p = self.ring.modulus();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.len() {
            match order.cmp(self.terms[i].mono.exps(), other[j].mono.exps()) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        mono: other[j].mono.clone(),
                        coeff: p.mul(scale, other[j].coeff),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = p.add(self.terms[i].coeff, p.mul(scale, other[j].coeff));
                    if c != 0 {
                        out.push(Term { mono: self.terms[i].mono.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for t in &other[j..] {
            out.push(Term { mono: t.mono.clone(), coeff: p.mul(scale, t.coeff) });
        }
        out.retain(|t| t.coeff != 0);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let p = self.ring.modulus();
        let c = p.reduce(c);
        if c == 0 {
            return Polynomial::zero(self.ring.clone());
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.clone(), coeff: p.mul(t.coeff, c) })
                .collect(),
        }
    }

    /// Multiply by a single term. Preserves sortedness, so no re-sort.
    pub fn mul_term(&self, mono: &Monomial, coeff: u64) -> Result<Polynomial> {
        let p = self.ring.modulus();
        let coeff = p.reduce(coeff);
        if coeff == 0 {
            return Ok(Polynomial::zero(self.ring.clone()));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(Term { mono: t.mono.mul(mono)?, coeff: p.mul(t.coeff, coeff) })
            })
            .collect::<Result<_>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.mul_trunc(other, None)
    }

    /// Product, optionally dropping every term of degree >= cap while it is
    /// being formed.
    pub fn mul_trunc(&self, other: &Polynomial, cap: Option<u64>) -> Result<Polynomial> {
        self.check_ring(other)?;
        let p = self.ring.modulus();
        let (small, large) =
            if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut pairs = Vec::with_capacity(small.terms.len() * large.terms.len());
        for s in &small.terms {
            for l in &large.terms {
                if let Some(cap) = cap {
                    if s.mono.deg() + l.mono.deg() >= cap {
                        continue;
                    }
                }
                pairs.push((s.mono.mul(&l.mono)?, p.mul(s.coeff, l.coeff)));
            }
        }
        Ok(Polynomial::from_raw(self.ring.clone(), pairs))
    }

    /// Frobenius-style termwise power f^(p^k): exponents scale, coefficients
    /// are fixed by Fermat. Valid only for p-power exponents.
    fn termwise_power(&self, q: u64) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(Term { mono: t.mono.pow(q)?, coeff: t.coeff }))
            .collect::<Result<_>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// f^(p^e), computed termwise since Frobenius is a ring map and
    /// coefficients are fixed by Fermat.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        let exponent = crate::field::FrobeniusExponent::new(self.ring.modulus(), e)?;
        self.termwise_power(exponent.q())
    }

    pub fn pow(&self, n: u64) -> Result<Polynomial> {
        self.pow_trunc(n, None)
    }

    /// f^n through base-p blocks: n = sum n_i p^i gives
    /// f^n = prod (f^(p^i))^(n_i), and each f^(p^i) is a termwise power.
    pub fn pow_trunc(&self, n: u64, cap: Option<u64>) -> Result<Polynomial> {
        let p = self.ring.modulus();
        let mut acc = Polynomial::one(self.ring.clone());
        if let Some(cap) = cap {
            acc = acc.truncated(cap);
        }
        if n == 0 {
            return Ok(acc);
        }
        let digits = crate::field::base_p_digits(n, p);
        let mut stride: u64 = 1;
        for (i, &digit) in digits.digits.iter().enumerate() {
            if digit > 0 {
                let block = self.termwise_power(stride)?;
                let mut block_pow = block.clone();
                // Binary powering within the digit.
                let mut remaining = digit - 1;
                let mut sq = block;
                while remaining > 0 {
                    if remaining & 1 == 1 {
                        block_pow = block_pow.mul_trunc(&sq, cap)?;
                    }
                    remaining >>= 1;
                    if remaining > 0 {
                        sq = sq.mul_trunc(&sq, cap)?;
                    }
                }
                acc = acc.mul_trunc(&block_pow, cap)?;
            }
            if i + 1 < digits.digits.len() {
                stride = stride.checked_mul(p.value()).ok_or(Error::MonomialOverflow)?;
            }
        }
        Ok(acc)
    }

    /// Formal partial derivative in one variable; exponents divisible by p
    /// die, as they must in characteristic p.
    pub fn partial(&self, var: usize) -> Polynomial {
        let p = self.ring.modulus();
        let mut pairs = Vec::new();
        for t in &self.terms {
            let e = t.mono.exp(var);
            if e == 0 {
                continue;
            }
            let c = p.mul(t.coeff, e as u64);
            if c == 0 {
                continue;
            }
            let mut exps = t.mono.exps().to_vec();
            exps[var] -= 1;
            pairs.push((Monomial::new(exps), c));
        }
        Polynomial::from_raw(self.ring.clone(), pairs)
    }

    /// All partial derivatives, in variable order.
    pub fn partials(&self) -> Vec<Polynomial> {
        (0..self.ring.nvars()).map(|v| self.partial(v)).collect()
    }

    /// True when every term is divisible by the variable.
    pub fn divisible_by_var(&self, var: usize) -> bool {
        !self.is_zero() && self.terms.iter().all(|t| t.mono.exp(var) >= 1)
    }

    /// True when no term mentions the variable.
    pub fn free_of_var(&self, var: usize) -> bool {
        self.terms.iter().all(|t| t.mono.exp(var) == 0)
    }

    /// Re-sorts the polynomial into a ring that differs only in order.
    pub fn into_ring(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if same_ring(&self.ring, ring) {
            return Ok(self.clone());
        }
        if self.ring.vars() != ring.vars() || self.ring.modulus() != ring.modulus() {
            return Err(Error::MixedContext);
        }
        Ok(Polynomial::from_raw(
            ring.clone(),
            self.terms.iter().map(|t| (t.mono.clone(), t.coeff)).collect(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Arc<Ring> {
        Ring::with_names(&["X", "Y", "Z", "W"], PrimeModulus::new(2).unwrap(), MonomialOrder::Grevlex)
            .unwrap()
    }

    fn parse(ring: &Arc<Ring>, s: &str) -> Polynomial {
        text::parse_polynomial(ring, s).unwrap()
    }

    #[test]
    fn canonical_form_merges_and_drops() {
        let r = Ring::with_names(&["X", "Y"], PrimeModulus::new(3).unwrap(), MonomialOrder::Grevlex)
            .unwrap();
        let m = |a, b| Monomial::new(vec![a, b]);
        let f = Polynomial::from_raw(
            r.clone(),
            vec![(m(1, 0), 2), (m(0, 1), 1), (m(1, 0), 1), (m(0, 0), 3)],
        );
        // 2X + X = 3X = 0 mod 3, constant 3 = 0: only Y remains.
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f, Polynomial::variable(r, 1));
    }

    #[test]
    fn grevlex_orders_degree_two_monomials() {
        let r = Ring::with_names(&["X", "Y", "Z"], PrimeModulus::new(7).unwrap(), MonomialOrder::Grevlex)
            .unwrap();
        let f = parse(&r, "X^2+X*Y+Y^2+X*Z+Y*Z+Z^2");
        let printed: Vec<String> = f
            .terms()
            .iter()
            .map(|t| {
                t.mono
                    .exps()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| format!("{}{}", r.vars().name(i), e))
                    .collect::<Vec<_>>()
                    .join("")
            })
            .collect();
        assert_eq!(printed, vec!["X2", "X1Y1", "Y2", "X1Z1", "Y1Z1", "Z2"]);
    }

    #[test]
    fn freshman_dream_cube() {
        let r = Ring::with_names(&["x", "y"], PrimeModulus::new(3).unwrap(), MonomialOrder::Grevlex)
            .unwrap();
        let f = parse(&r, "x+y");
        assert_eq!(f.pow(3).unwrap(), parse(&r, "x^3+y^3"));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let r = Ring::with_names(&["x", "y"], PrimeModulus::new(5).unwrap(), MonomialOrder::Grevlex)
            .unwrap();
        let f = parse(&r, "x^2+2*x*y+3");
        let mut by_mul = Polynomial::one(r.clone());
        for n in 0..=7u64 {
            assert_eq!(f.pow(n).unwrap(), by_mul, "exponent {n}");
            by_mul = by_mul.mul(&f).unwrap();
        }
    }

    #[test]
    fn example_polynomial_orders_and_partials() {
        let r = ring2();
        let f = parse(&r, "X^2+X*Y*Z*W+Y^3+Z^3+W^3");
        assert_eq!(f.ord().unwrap(), 2);
        assert_eq!(f.initial_form().unwrap(), parse(&r, "X^2"));
        let d = f.partials();
        // d/dX(X^2) = 2X = 0 mod 2 leaves only the mixed term's contribution.
        assert_eq!(d[0], parse(&r, "Y*Z*W"));
        assert_eq!(d[1], parse(&r, "X*Z*W+Y^2"));
        assert_eq!(d[2], parse(&r, "X*Y*W+Z^2"));
        assert_eq!(d[3], parse(&r, "X*Y*Z+W^2"));
    }

    #[test]
    fn pure_power_partial_dies() {
        let r = ring2();
        assert!(parse(&r, "X^2").partial(0).is_zero());
    }

    #[test]
    fn zero_has_no_order() {
        let r = ring2();
        assert!(matches!(Polynomial::zero(r).ord(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let r1 = ring2();
        let r2 = Ring::with_names(&["X", "Y", "Z", "W"], PrimeModulus::new(3).unwrap(), MonomialOrder::Grevlex)
            .unwrap();
        let f = Polynomial::variable(r1, 0);
        let g = Polynomial::variable(r2, 0);
        assert!(matches!(f.add(&g), Err(Error::MixedContext)));
    }

    #[test]
    fn p_power_exponent_is_termwise() {
        let r = ring2();
        let f = parse(&r, "X+Y+Z");
        assert_eq!(f.pow(8).unwrap(), parse(&r, "X^8+Y^8+Z^8"));
    }

    #[test]
    fn truncation_caps_degree() {
        let r = ring2();
        let f = parse(&r, "X+Y^2");
        let g = f.pow_trunc(5, Some(6)).unwrap();
        assert!(g.total_deg().unwrap() < 6);
        assert_eq!(g, f.pow(5).unwrap().truncated(6));
    }
}
