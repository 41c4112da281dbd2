//! Groebner bases over F_p.
//!
//! Buchberger's algorithm with the product and chain criteria, a fully
//! deterministic S-pair order (degree of the lcm, then the monomial order,
//! then generator indices), and final interreduction to the unique reduced
//! monic basis. Normal forms come with optional division witnesses so a
//! membership claim can be replayed as a plain polynomial identity.

use serde::ser::SerializeSeq;
use serde::Serialize;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::{IdealGens, QuotientCtx};
use crate::poly::{same_ring, Monomial, Polynomial, Ring};

/// A reduced monic Groebner basis, sorted descending by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    fingerprint: u64,
    stats: GroebnerStats,
}

/// Run statistics, for reports and performance regressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroebnerStats {
    pub spairs_considered: u64,
    pub spairs_reduced: u64,
    pub reductions_to_zero: u64,
    pub basis_size: usize,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// FNV-1a hash of the canonical basis; equal ideals (same ring and
    /// order) have equal fingerprints since the reduced basis is unique.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn stats(&self) -> GroebnerStats {
        self.stats
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens.iter().any(|g| g.total_deg() == Some(0))
    }
}

impl Serialize for GroebnerBasis {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.gens.len()))?;
        for g in &self.gens {
            seq.serialize_element(&g.to_string())?;
        }
        seq.end()
    }
}

fn fnv1a64(basis: &[Polynomial]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    let mut eat = |byte: u8| {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    };
    for g in basis {
        for term in g.terms() {
            for &e in term.mono.exps() {
                for b in e.to_le_bytes() {
                    eat(b);
                }
            }
            for b in term.coeff.to_le_bytes() {
                eat(b);
            }
            eat(0xff);
        }
        eat(0xfe);
    }
    hash
}

fn monic(f: &Polynomial) -> Polynomial {
    match f.leading() {
        None => f.clone(),
        Some(lead) => f.scale(f.ring().modulus().inv(lead.coeff)),
    }
}

/// One pass of the division algorithm: rewrites f modulo `basis` until no
/// term of the remainder is divisible by any leading monomial. When `trace`
/// is given, records the quotient on each basis element so that
/// f = sum_i q_i * basis_i + remainder holds exactly.
fn divide(
    f: &Polynomial,
    basis: &[Polynomial],
    mut trace: Option<&mut [Polynomial]>,
) -> Result<Polynomial> {
    let ring = f.ring().clone();
    let mut work = f.clone();
    let mut remainder_terms: Vec<(Monomial, u64)> = Vec::new();
    'outer: while let Some(lead) = work.leading() {
        let (mono, coeff) = (lead.mono.clone(), lead.coeff);
        for (i, g) in basis.iter().enumerate() {
            let glead = match g.leading() {
                Some(t) => t,
                None => continue,
            };
            if glead.mono.divides(&mono) {
                // Basis elements are monic, so the quotient term is exactly
                // (coeff, mono / LM(g)).
                let qmono = glead.mono.quotient_into(&mono);
                work = work.sub(&g.mul_term(&qmono, coeff)?)?;
                if let Some(tr) = trace.as_deref_mut() {
                    tr[i] = tr[i].add(&Polynomial::monomial(ring.clone(), qmono, coeff))?;
                }
                continue 'outer;
            }
        }
        remainder_terms.push((mono.clone(), coeff));
        work = work.sub(&Polynomial::monomial(ring.clone(), mono, coeff))?;
    }
    Ok(Polynomial::from_raw(ring, remainder_terms))
}

/// Fully reduced normal form of f modulo the basis.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if !same_ring(f.ring(), &gb.ring) {
        return Err(Error::MixedContext);
    }
    divide(f, &gb.gens, None)
}

/// Normal form together with the division witness: returns (r, q) with
/// f = sum_i q_i * gb_i + r. In a degree-compatible order every q_i * gb_i
/// has degree at most deg f, so witnesses stay small.
pub fn normal_form_traced(
    f: &Polynomial,
    gb: &GroebnerBasis,
) -> Result<(Polynomial, Vec<Polynomial>)> {
    if !same_ring(f.ring(), &gb.ring) {
        return Err(Error::MixedContext);
    }
    let mut trace = vec![Polynomial::zero(f.ring().clone()); gb.gens.len()];
    let r = divide(f, &gb.gens, Some(&mut trace))?;
    Ok((r, trace))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u64,
}

/// Buchberger's algorithm; the result is the unique reduced monic basis for
/// the ideal in the ring's monomial order.
pub fn buchberger(ideal: &IdealGens) -> Result<GroebnerBasis> {
    let ring = ideal.ring().clone();
    let order = ring.order();
    let mut stats = GroebnerStats {
        spairs_considered: 0,
        spairs_reduced: 0,
        reductions_to_zero: 0,
        basis_size: 0,
    };

    let mut basis: Vec<Polynomial> = ideal.gens().iter().map(monic).collect();
    let mut pending: Vec<Pair> = Vec::new();
    let mut removed: Vec<(usize, usize)> = Vec::new();
    for j in 1..basis.len() {
        for i in 0..j {
            push_pair(&mut pending, &basis, i, j);
        }
    }

    while !pending.is_empty() {
        // Deterministic selection: smallest (deg, lcm, i, j).
        let mut best = 0;
        for k in 1..pending.len() {
            let (a, b) = (&pending[k], &pending[best]);
            let key = a
                .deg
                .cmp(&b.deg)
                .then_with(|| order.cmp(a.lcm.exps(), b.lcm.exps()))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if key == std::cmp::Ordering::Less {
                best = k;
            }
        }
        let pair = pending.swap_remove(best);
        removed.push((pair.i, pair.j));
        stats.spairs_considered += 1;

        // Product criterion: coprime leading monomials reduce to zero.
        let lm_i = &basis[pair.i].leading().unwrap().mono;
        let lm_j = &basis[pair.j].leading().unwrap().mono;
        if lm_i.coprime(lm_j) {
            continue;
        }
        // Chain criterion: a third leading monomial dividing the lcm, whose
        // pairs with both ends were already removed (strictly earlier, so
        // justifications cannot be circular).
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].leading().unwrap().mono.divides(&pair.lcm)
                && removed.contains(&ordered(pair.i, k))
                && removed.contains(&ordered(pair.j, k))
        });
        if chain {
            continue;
        }

        // S-polynomial of two monic elements.
        let qi = lm_i.quotient_into(&pair.lcm);
        let qj = lm_j.quotient_into(&pair.lcm);
        let s = basis[pair.i]
            .mul_term(&qi, 1)?
            .sub(&basis[pair.j].mul_term(&qj, 1)?)?;
        stats.spairs_reduced += 1;
        let reduced = divide(&s, &basis, None)?;
        if reduced.is_zero() {
            stats.reductions_to_zero += 1;
            continue;
        }
        let t = basis.len();
        basis.push(monic(&reduced));
        for i in 0..t {
            push_pair(&mut pending, &basis, i, t);
        }
    }

    let gens = interreduce(basis)?;
    stats.basis_size = gens.len();
    let fingerprint = fnv1a64(&gens);
    Ok(GroebnerBasis { ring, gens, fingerprint, stats })
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn push_pair(pending: &mut Vec<Pair>, basis: &[Polynomial], i: usize, j: usize) {
    let lm_i = &basis[i].leading().unwrap().mono;
    let lm_j = &basis[j].leading().unwrap().mono;
    let lcm = lm_i.lcm(lm_j);
    pending.push(Pair { i, j, deg: lcm.deg(), lcm });
}

/// Minimalizes leading monomials, then tail-reduces every element against
/// the others. With pairwise indivisible leading monomials one full division
/// pass per element reaches the reduced basis.
fn interreduce(mut basis: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    basis.retain(|g| !g.is_zero());
    // Keep only elements whose leading monomial no other element divides;
    // on ties (equal LM) keep the earliest.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let lm_i = basis[i].leading().unwrap().mono.clone();
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let lm_j = &basis[j].leading().unwrap().mono;
            if lm_j.divides(&lm_i) && (lm_j != &lm_i || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial> =
        basis.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect();

    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        reduced.push(monic(&divide(&minimal[i], &others, None)?));
    }
    reduced.sort_by(|a, b| {
        let order = a.ring().order();
        order
            .cmp(a.leading().unwrap().mono.exps(), b.leading().unwrap().mono.exps())
            .reverse()
    });
    Ok(reduced)
}

/// Outcome of a membership test in R/moduli, with a replayable witness.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipVerdict {
    pub is_member: bool,
    /// Normal form of the element modulo the combined basis; zero exactly
    /// when the element is a member.
    #[serde(serialize_with = "crate::poly::serialize_poly_string")]
    pub remainder: Polynomial,
    /// Pairs (basis element, quotient) with
    /// element = sum quotient * basis + remainder.
    pub combination: Vec<(String, String)>,
}

impl MembershipVerdict {
    /// Replays the division identity from the recorded strings.
    pub fn replay(&self, ring: &Arc<Ring>, element: &Polynomial) -> Result<bool> {
        let mut acc = crate::poly::parse_polynomial(ring, &self.remainder.to_string())?;
        for (basis, quotient) in &self.combination {
            let b = crate::poly::parse_polynomial(ring, basis)?;
            let q = crate::poly::parse_polynomial(ring, quotient)?;
            acc = acc.add(&b.mul(&q)?)?;
        }
        Ok(&acc == element)
    }
}

/// Tests membership of g in (ideal + moduli) inside the ambient ring, i.e.
/// membership of the image of g in the quotient ring's image of the ideal.
pub fn quotient_membership(
    ctx: &QuotientCtx,
    ideal: &IdealGens,
    g: &Polynomial,
) -> Result<MembershipVerdict> {
    if !same_ring(g.ring(), ctx.ring()) || !same_ring(ideal.ring(), ctx.ring()) {
        return Err(Error::MixedContext);
    }
    let mut gens = ideal.gens().to_vec();
    gens.extend(ctx.moduli().gens().iter().cloned());
    let combined = IdealGens::new(ctx.ring().clone(), gens)?;
    let gb = buchberger(&combined)?;
    let (remainder, trace) = normal_form_traced(g, &gb)?;
    let combination = gb
        .gens()
        .iter()
        .zip(&trace)
        .filter(|(_, q)| !q.is_zero())
        .map(|(b, q)| (b.to_string(), q.to_string()))
        .collect();
    Ok(MembershipVerdict { is_member: remainder.is_zero(), remainder, combination })
}

/// Decides equality of the two ideals' images in R/moduli by comparing
/// reduced bases of the combined ideals.
pub fn quotient_ideal_equal(ctx: &QuotientCtx, a: &IdealGens, b: &IdealGens) -> Result<bool> {
    let with_moduli = |side: &IdealGens| -> Result<GroebnerBasis> {
        let mut gens = side.gens().to_vec();
        gens.extend(ctx.moduli().gens().iter().cloned());
        buchberger(&IdealGens::new(ctx.ring().clone(), gens)?)
    };
    let ga = with_moduli(a)?;
    let gb = with_moduli(b)?;
    Ok(ga.gens() == gb.gens())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use crate::poly::{parse_polynomial, MonomialOrder};

    fn ring(p: u64, order: MonomialOrder) -> Arc<Ring> {
        Ring::with_names(&["X", "Y", "Z"], PrimeModulus::new(p).unwrap(), order).unwrap()
    }

    fn gens(r: &Arc<Ring>, gs: &[&str]) -> IdealGens {
        IdealGens::new(r.clone(), gs.iter().map(|s| parse_polynomial(r, s).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn lex_chain_example() {
        let r = ring(5, MonomialOrder::Lex);
        let gb = buchberger(&gens(&r, &["X+4*Y", "Y+4*Z"])).unwrap();
        let expect: Vec<Polynomial> =
            ["X+4*Z", "Y+4*Z"].iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
        assert_eq!(gb.gens(), &expect[..]);
    }

    #[test]
    fn coprime_leads_change_nothing() {
        let r = ring(5, MonomialOrder::Grevlex);
        let gb = buchberger(&gens(&r, &["X^2", "Y^2"])).unwrap();
        assert_eq!(gb.gens().len(), 2);
        assert_eq!(gb.stats().spairs_reduced, 0);
    }

    #[test]
    fn principal_ideal_reduces_to_monic_generator() {
        let r = ring(7, MonomialOrder::Grevlex);
        let gb = buchberger(&gens(&r, &["3*X^2+3*Y"])).unwrap();
        assert_eq!(gb.gens(), &[parse_polynomial(&r, "X^2+Y").unwrap()]);
    }

    #[test]
    fn normal_form_is_idempotent_and_traced() {
        let r = ring(7, MonomialOrder::Grevlex);
        let gb = buchberger(&gens(&r, &["X^2+Y*Z", "X*Y+Z^2"])).unwrap();
        let f = parse_polynomial(&r, "X^3*Y+2*X*Z+5").unwrap();
        let (nf, trace) = normal_form_traced(&f, &gb).unwrap();
        assert_eq!(normal_form(&nf, &gb).unwrap(), nf);
        // The witness reconstructs f exactly.
        let mut acc = nf.clone();
        for (g, q) in gb.gens().iter().zip(&trace) {
            acc = acc.add(&g.mul(q).unwrap()).unwrap();
        }
        assert_eq!(acc, f);
        // Every input generator lies in the ideal of the basis.
        for g in ["X^2+Y*Z", "X*Y+Z^2"] {
            assert!(normal_form(&parse_polynomial(&r, g).unwrap(), &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn fingerprint_ignores_generator_presentation() {
        let r = ring(5, MonomialOrder::Grevlex);
        let a = buchberger(&gens(&r, &["X^2+Y*Z", "X*Y+Z^2"])).unwrap();
        let b = buchberger(&gens(&r, &["2*X*Y+2*Z^2", "X^2+Y*Z", "X^3+X*Y*Z"])).unwrap();
        assert_eq!(a.gens(), b.gens());
        assert_eq!(a.fingerprint(), b.fingerprint());
        let c = buchberger(&gens(&r, &["X^2+Y*Z", "X*Y+Z^2", "Z"])).unwrap();
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn membership_in_a_quotient_with_replay() {
        let r = ring(5, MonomialOrder::Grevlex);
        let modulus = gens(&r, &["X^2+Y^2+Z^2"]);
        let ctx = QuotientCtx::new(r.clone(), modulus).unwrap();
        let ideal = gens(&r, &["X"]);
        // Y^2 + Z^2 = (X^2+Y^2+Z^2) - X * X is a member mod the hypersurface.
        let g = parse_polynomial(&r, "Y^2+Z^2").unwrap();
        let verdict = quotient_membership(&ctx, &ideal, &g).unwrap();
        assert!(verdict.is_member);
        assert!(verdict.replay(&r, &g).unwrap());
        // Y alone is not.
        let bad = quotient_membership(&ctx, &ideal, &parse_polynomial(&r, "Y").unwrap()).unwrap();
        assert!(!bad.is_member);
        assert!(bad.replay(&r, &parse_polynomial(&r, "Y").unwrap()).unwrap());
    }

    #[test]
    fn ideal_equality_in_quotients() {
        let r = ring(5, MonomialOrder::Grevlex);
        let ctx = QuotientCtx::ambient(r.clone());
        assert!(quotient_ideal_equal(&ctx, &gens(&r, &["X+4*Y", "Y+4*Z"]), &gens(&r, &["X+4*Z", "Y+4*Z"])).unwrap());
        assert!(!quotient_ideal_equal(&ctx, &gens(&r, &["X"]), &gens(&r, &["X", "Y"])).unwrap());
        // Modulo the relation X - Y, the ideals (X) and (Y) agree.
        let ctx2 = QuotientCtx::new(r.clone(), gens(&r, &["X+4*Y"])).unwrap();
        assert!(quotient_ideal_equal(&ctx2, &gens(&r, &["X"]), &gens(&r, &["Y"])).unwrap());
    }

    #[test]
    fn unit_ideal_is_detected() {
        let r = ring(5, MonomialOrder::Grevlex);
        let gb = buchberger(&gens(&r, &["X", "X+1"])).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.gens().len(), 1);
        assert!(normal_form(&parse_polynomial(&r, "Y^3+2").unwrap(), &gb).unwrap().is_zero());
    }

    /// Independent membership oracle: a Macaulay matrix in all monomials of
    /// degree <= bound, row-reduced over F_p.
    struct MacaulayOracle {
        ring: Arc<Ring>,
        monos: Vec<Monomial>,
        rows: Vec<Vec<u64>>,
    }

    impl MacaulayOracle {
        fn build(ideal: &IdealGens, bound: u64) -> Self {
            let ring = ideal.ring().clone();
            let mut monos = all_monomials(ring.nvars(), bound);
            monos.sort_by(|a, b| ring.order().cmp(a.exps(), b.exps()).reverse());
            let index = |m: &Monomial| monos.iter().position(|x| x == m).unwrap();
            let mut rows = Vec::new();
            for g in ideal.gens() {
                let gdeg = g.total_deg().unwrap();
                for m in all_monomials(ring.nvars(), bound.saturating_sub(gdeg)) {
                    let shifted = g.mul_term(&m, 1).unwrap();
                    let mut row = vec![0u64; monos.len()];
                    for t in shifted.terms() {
                        row[index(&t.mono)] = t.coeff;
                    }
                    rows.push(row);
                }
            }
            let mut oracle = MacaulayOracle { ring, monos, rows };
            oracle.row_reduce();
            oracle
        }

        fn row_reduce(&mut self) {
            let p = self.ring.modulus();
            let cols = self.monos.len();
            let mut rank = 0;
            for col in 0..cols {
                let Some(pivot) = (rank..self.rows.len()).find(|&r| self.rows[r][col] != 0)
                else {
                    continue;
                };
                self.rows.swap(rank, pivot);
                let inv = p.inv(self.rows[rank][col]);
                for x in &mut self.rows[rank] {
                    *x = p.mul(*x, inv);
                }
                for r in 0..self.rows.len() {
                    if r != rank && self.rows[r][col] != 0 {
                        let factor = self.rows[r][col];
                        for c in 0..cols {
                            let sub = p.mul(factor, self.rows[rank][c]);
                            self.rows[r][c] = p.sub(self.rows[r][c], sub);
                        }
                    }
                }
                rank += 1;
            }
            self.rows.truncate(rank);
        }

        /// Membership of f in the ideal, valid when every witness multiple
        /// stays within the degree bound; in a degree-compatible order the
        /// division witness does, so this is exact for grevlex tests.
        fn contains(&self, f: &Polynomial) -> bool {
            let p = self.ring.modulus();
            let mut vec: Vec<u64> = vec![0; self.monos.len()];
            for t in f.terms() {
                vec[self.monos.iter().position(|x| x == &t.mono).unwrap()] = t.coeff;
            }
            for row in &self.rows {
                let lead = row.iter().position(|&x| x != 0).unwrap();
                if vec[lead] != 0 {
                    let factor = vec[lead];
                    for c in 0..vec.len() {
                        vec[c] = p.sub(vec[c], p.mul(factor, row[c]));
                    }
                }
            }
            vec.iter().all(|&x| x == 0)
        }
    }

    fn all_monomials(nvars: usize, bound: u64) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; nvars];
        loop {
            let deg: u64 = exps.iter().map(|&e| e as u64).sum();
            if deg <= bound {
                out.push(Monomial::new(exps.clone()));
            }
            // Odometer over exponent vectors bounded by the degree.
            let mut k = 0;
            loop {
                if k == nvars {
                    return out;
                }
                exps[k] += 1;
                if exps.iter().map(|&e| e as u64).sum::<u64>() <= bound {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn division_agrees_with_macaulay_oracle() {
        let r = ring(5, MonomialOrder::Grevlex);
        let ideal = gens(&r, &["X^2+Y*Z", "X*Y+Z^2", "Y^3+4*Z^3"]);
        let gb = buchberger(&ideal).unwrap();
        let ctx = QuotientCtx::ambient(r.clone());
        let candidates = [
            "X^3",
            "X^2+Y*Z",
            "X^2*Y+X*Z^2",
            "Y^3",
            "Z^4",
            "X*Y*Z+Z^3",
            "X^2*Y^2+2*X*Y*Z^2+Z^4",
            "X+Y+Z",
            "Y^2*Z+3*Z^3",
        ];
        for src in candidates {
            let f = parse_polynomial(&r, src).unwrap();
            let oracle = MacaulayOracle::build(&ideal, f.total_deg().unwrap() + 6);
            let fast = quotient_membership(&ctx, &ideal, &f).unwrap();
            assert_eq!(
                oracle.contains(&f),
                fast.is_member,
                "oracle disagreement on {src}"
            );
            assert_eq!(fast.is_member, normal_form(&f, &gb).unwrap().is_zero());
        }
    }
}
