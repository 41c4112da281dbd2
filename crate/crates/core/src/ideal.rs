//! Ideals presented by finite generating sets.
//!
//! Two representations: `IdealGens` holds arbitrary polynomial generators
//! (the input to Groebner machinery), `MonomialIdeal` holds a minimal
//! antichain of monomials and supports the lattice operations (sum, product,
//! intersection, colon) exactly. Frobenius bracket powers are available on
//! both; the exponent must be a power of the ring characteristic.

use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FrobeniusExponent;
use crate::poly::{same_ring, Monomial, Polynomial, Ring};

/// A finite generating set: zero generators dropped, duplicates merged,
/// order fixed by the ring's monomial order so equal sets print equally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGens {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
}

/// Deterministic total order on polynomials of one ring: compare term lists
/// monomial by monomial, larger leading data first.
pub(crate) fn cmp_polys(a: &Polynomial, b: &Polynomial) -> std::cmp::Ordering {
    let order = a.ring().order();
    let mut lhs = a.terms().iter();
    let mut rhs = b.terms().iter();
    loop {
        match (lhs.next(), rhs.next()) {
            (None, None) => return std::cmp::Ordering::Equal,
            (None, Some(_)) => return std::cmp::Ordering::Greater,
            (Some(_), None) => return std::cmp::Ordering::Less,
            (Some(x), Some(y)) => {
                match order.cmp(x.mono.exps(), y.mono.exps()).reverse() {
                    std::cmp::Ordering::Equal => {}
                    other => return other,
                }
                match x.coeff.cmp(&y.coeff) {
                    std::cmp::Ordering::Equal => {}
                    other => return other,
                }
            }
        }
    }
}

impl IdealGens {
    pub fn new(ring: Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut kept: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !same_ring(g.ring(), &ring) {
                return Err(Error::MixedContext);
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        kept.sort_by(cmp_polys);
        kept.dedup();
        Ok(IdealGens { ring, gens: kept })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.terms().len() == 1)
    }

    /// Reads the generators as a monomial ideal. Fails unless every
    /// generator is a single term.
    pub fn to_monomial_ideal(&self) -> Result<MonomialIdeal> {
        if !self.is_monomial() {
            return Err(Error::input("generators are not all monomials"));
        }
        let monos = self.gens.iter().map(|g| g.terms()[0].mono.clone()).collect();
        MonomialIdeal::new(self.ring.clone(), monos)
    }

    /// Frobenius bracket power (g_1^q, ..., g_r^q) for q = p^e.
    pub fn bracket_power(&self, q: u64) -> Result<IdealGens> {
        let fe = FrobeniusExponent::from_q(self.ring.modulus(), q)?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.frobenius_power(fe.e()))
            .collect::<Result<Vec<_>>>()?;
        IdealGens::new(self.ring.clone(), gens)
    }
}

impl Serialize for IdealGens {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.gens.len()))?;
        for g in &self.gens {
            seq.serialize_element(&g.to_string())?;
        }
        seq.end()
    }
}

/// A monomial ideal stored as the minimal generating antichain, sorted
/// descending in the ring's monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ring: Arc<Ring>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(ring: Arc<Ring>, gens: Vec<Monomial>) -> Result<Self> {
        for m in &gens {
            if m.exps().len() != ring.nvars() {
                return Err(Error::MixedContext);
            }
        }
        Ok(MonomialIdeal { gens: minimalize(&ring, gens), ring })
    }

    /// The zero ideal: no generators.
    pub fn zero(ring: Arc<Ring>) -> Self {
        MonomialIdeal { gens: Vec::new(), ring }
    }

    /// The unit ideal, generated by 1.
    pub fn unit(ring: Arc<Ring>) -> Self {
        let one = Monomial::one(ring.nvars());
        MonomialIdeal { gens: vec![one], ring }
    }

    /// (X_0^k, ..., X_d^k): the bracket power of the maximal ideal when k is
    /// a p-power, and the pure-power frame ideal in general.
    pub fn pure_powers(ring: Arc<Ring>, k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(MonomialIdeal::unit(ring));
        }
        let gens = (0..ring.nvars()).map(|v| Monomial::variable(ring.nvars(), v, k)).collect();
        MonomialIdeal::new(ring, gens)
    }

    /// All monomials of total degree k: the k-th power of the maximal ideal.
    pub fn max_ideal_power(ring: Arc<Ring>, k: u32) -> Result<Self> {
        MonomialIdeal::pure_powers(ring.clone(), 1)?.power(k as u64)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|m| m.deg() == 0)
    }

    pub fn contains(&self, mono: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(mono))
    }

    /// True when every term of f lies in the ideal; for a monomial ideal
    /// this is exact membership of the polynomial.
    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::MixedContext);
        }
        Ok(f.terms().iter().all(|t| self.contains(&t.mono)))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal::new(self.ring.clone(), gens)
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        MonomialIdeal::new(self.ring.clone(), gens)
    }

    /// Intersection via pairwise least common multiples.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        MonomialIdeal::new(self.ring.clone(), gens)
    }

    /// Colon ideal (self : other), as the intersection over the generators g
    /// of other of (m_i / gcd(m_i, g)).
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check(other)?;
        if other.is_zero() {
            return Ok(MonomialIdeal::unit(self.ring.clone()));
        }
        let mut acc: Option<MonomialIdeal> = None;
        for g in &other.gens {
            let quotients = self.gens.iter().map(|m| m.gcd(g).quotient_into(m)).collect();
            let part = MonomialIdeal::new(self.ring.clone(), quotients)?;
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersect(&part)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// k-th ordinary power by products of k generators with repetition.
    pub fn power(&self, k: u64) -> Result<MonomialIdeal> {
        if k == 0 {
            return Ok(MonomialIdeal::unit(self.ring.clone()));
        }
        if self.is_zero() {
            return Ok(MonomialIdeal::zero(self.ring.clone()));
        }
        let mut products = Vec::new();
        let mut stack: Vec<(usize, u64, Monomial)> =
            vec![(0, k, Monomial::one(self.ring.nvars()))];
        while let Some((start, left, acc)) = stack.pop() {
            if left == 0 {
                products.push(acc);
                continue;
            }
            for i in start..self.gens.len() {
                stack.push((i, left - 1, acc.mul(&self.gens[i])?));
            }
        }
        MonomialIdeal::new(self.ring.clone(), products)
    }

    /// Frobenius bracket power: exponents scale by q = p^e.
    pub fn bracket_power(&self, q: u64) -> Result<MonomialIdeal> {
        FrobeniusExponent::from_q(self.ring.modulus(), q)?;
        let gens = self.gens.iter().map(|m| m.pow(q)).collect::<Result<Vec<_>>>()?;
        MonomialIdeal::new(self.ring.clone(), gens)
    }

    /// Generators as display strings, for reports.
    pub fn display_gens(&self) -> Vec<String> {
        self.gens
            .iter()
            .map(|m| Polynomial::monomial(self.ring.clone(), m.clone(), 1).to_string())
            .collect()
    }

    fn check(&self, other: &MonomialIdeal) -> Result<()> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::MixedContext);
        }
        Ok(())
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let strings = self.display_gens();
        let mut seq = ser.serialize_seq(Some(strings.len()))?;
        for s in &strings {
            seq.serialize_element(s)?;
        }
        seq.end()
    }
}

/// Drops every monomial divisible by another and duplicates, then sorts
/// descending in the ring order.
fn minimalize(ring: &Arc<Ring>, mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| ring.order().cmp(a.exps(), b.exps())));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept.sort_by(|a, b| ring.order().cmp(a.exps(), b.exps()).reverse());
    kept
}

/// Ambient data for quotient-ring computations: the polynomial ring together
/// with the hypersurface (or other) relations dividing it out.
#[derive(Debug, Clone)]
pub struct QuotientCtx {
    ring: Arc<Ring>,
    moduli: IdealGens,
}

impl QuotientCtx {
    pub fn new(ring: Arc<Ring>, moduli: IdealGens) -> Result<Self> {
        if !same_ring(moduli.ring(), &ring) {
            return Err(Error::MixedContext);
        }
        Ok(QuotientCtx { ring, moduli })
    }

    /// The ambient polynomial ring itself, with no relations.
    pub fn ambient(ring: Arc<Ring>) -> Self {
        let moduli = IdealGens { ring: ring.clone(), gens: Vec::new() };
        QuotientCtx { ring, moduli }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn moduli(&self) -> &IdealGens {
        &self.moduli
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use crate::poly::{parse_polynomial, MonomialOrder};

    fn ring3(p: u64) -> Arc<Ring> {
        Ring::with_names(&["X", "Y", "Z"], PrimeModulus::new(p).unwrap(), MonomialOrder::Grevlex)
            .unwrap()
    }

    fn mono(ring: &Arc<Ring>, src: &str) -> Monomial {
        parse_polynomial(ring, src).unwrap().terms()[0].mono.clone()
    }

    fn ideal(ring: &Arc<Ring>, gens: &[&str]) -> MonomialIdeal {
        let monos = gens.iter().map(|s| mono(ring, s)).collect();
        MonomialIdeal::new(ring.clone(), monos).unwrap()
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let r = ring3(5);
        let i = ideal(&r, &["X^2", "X^2*Y", "Y^3", "X*Y^3"]);
        assert_eq!(i.gens().len(), 2);
        assert_eq!(i.display_gens(), vec!["Y^3", "X^2"]);
        assert!(i.contains(&mono(&r, "X^2*Z^4")));
        assert!(!i.contains(&mono(&r, "X*Y^2*Z")));
    }

    #[test]
    fn lattice_operations_match_hand_values() {
        let r = ring3(5);
        let a = ideal(&r, &["X^2", "Y"]);
        let b = ideal(&r, &["X", "Y^2"]);
        assert_eq!(a.intersect(&b).unwrap(), ideal(&r, &["X^2", "X*Y", "Y^2"]));
        assert_eq!(a.product(&b).unwrap(), ideal(&r, &["X^3", "X*Y", "Y^3"]));
        assert_eq!(a.sum(&b).unwrap(), ideal(&r, &["X", "Y"]));
        let c = ideal(&r, &["X^2*Y", "X*Z"]);
        assert_eq!(c.colon(&ideal(&r, &["X"])).unwrap(), ideal(&r, &["X*Y", "Z"]));
    }

    #[test]
    fn powers_by_multisets() {
        let r = ring3(5);
        let m = ideal(&r, &["X", "Y"]);
        assert_eq!(m.power(2).unwrap(), ideal(&r, &["X^2", "X*Y", "Y^2"]));
        assert!(m.power(0).unwrap().is_unit());
        let cube = MonomialIdeal::max_ideal_power(r.clone(), 3).unwrap();
        assert_eq!(cube.gens().len(), 10);
    }

    #[test]
    fn cube_intersection_identity_instance() {
        // m^3 meet (X^2, Y^2, Z^2) equals m * (X^2, Y^2, Z^2).
        let r = ring3(5);
        let m3 = MonomialIdeal::max_ideal_power(r.clone(), 3).unwrap();
        let frame = MonomialIdeal::pure_powers(r.clone(), 2).unwrap();
        let lhs = m3.intersect(&frame).unwrap();
        let rhs = MonomialIdeal::max_ideal_power(r.clone(), 1).unwrap().product(&frame).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_power_checks_the_exponent() {
        let r = ring3(5);
        let gens = IdealGens::new(
            r.clone(),
            vec![parse_polynomial(&r, "X+Y").unwrap(), parse_polynomial(&r, "Z").unwrap()],
        )
        .unwrap();
        let bracketed = gens.bracket_power(25).unwrap();
        assert_eq!(bracketed.gens()[0], parse_polynomial(&r, "X^25+Y^25").unwrap());
        assert_eq!(bracketed.gens()[1], parse_polynomial(&r, "Z^25").unwrap());
        assert!(matches!(gens.bracket_power(10), Err(Error::NotAFrobeniusPower(10))));
        assert!(gens.bracket_power(1).is_ok());
        let m = ideal(&r, &["X", "Y^2"]);
        assert_eq!(m.bracket_power(5).unwrap(), ideal(&r, &["X^5", "Y^10"]));
    }

    #[test]
    fn generating_sets_are_canonical() {
        let r = ring3(7);
        let f = parse_polynomial(&r, "X^2+Y").unwrap();
        let g = parse_polynomial(&r, "Z^3").unwrap();
        let a = IdealGens::new(r.clone(), vec![f.clone(), g.clone(), Polynomial::zero(r.clone())])
            .unwrap();
        let b = IdealGens::new(r.clone(), vec![g.clone(), f.clone(), f.clone()]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        assert!(!a.is_monomial());
        let m = IdealGens::new(r.clone(), vec![g]).unwrap();
        assert!(m.is_monomial());
        assert_eq!(m.to_monomial_ideal().unwrap(), ideal(&r, &["Z^3"]));
        assert!(a.to_monomial_ideal().is_err());
    }

    #[test]
    fn unit_and_zero_edges() {
        let r = ring3(5);
        let unit = MonomialIdeal::unit(r.clone());
        assert!(unit.is_unit());
        assert!(unit.contains(&Monomial::one(3)));
        let zero = MonomialIdeal::zero(r.clone());
        assert!(zero.is_zero());
        assert!(!zero.contains(&mono(&r, "X")));
        assert!(zero.power(4).unwrap().is_zero());
        // Colon by the zero ideal is everything.
        assert!(ideal(&r, &["X"]).colon(&zero).unwrap().is_unit());
        // Adding a unit swallows the rest.
        assert_eq!(ideal(&r, &["X"]).sum(&unit).unwrap(), unit);
    }
}
