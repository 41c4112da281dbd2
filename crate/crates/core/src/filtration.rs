//! Integral closures of monomial ideals and filtration invariants.
//!
//! The integral closure of a monomial ideal is the set of lattice points in
//! the Newton polyhedron conv(exponents) + R_(>=0)^d. The polyhedron is
//! turned into halfspaces once by exact Fourier-Motzkin elimination over
//! integers (cross-multiplied combinations, gcd-normalized), and powers are
//! handled by dilation: the polyhedron of I^n is n times the polyhedron of
//! I, so only right-hand sides scale.
//!
//! On top of that sit filtration tables (adic or closure rows), Hilbert
//! data of the associated graded ring by box counting, reduction numbers,
//! and the two identity checks the command line exposes.

use std::sync::Arc;

use num::{BigInt, Integer, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::poly::{Monomial, Polynomial, Ring};

const MAX_NEWTON_DIM: usize = 6;
const MAX_FM_ROWS: usize = 100_000;
pub const DEFAULT_FILTRATION_HORIZON: usize = 8;

/// Halfspace description a . x >= c of conv(points) + the nonnegative
/// orthant; nonnegativity of x is kept implicitly.
#[derive(Debug, Clone)]
pub struct NewtonPolyhedron {
    ring: Arc<Ring>,
    bounds: Vec<u32>,
    rows: Vec<(Vec<BigInt>, BigInt)>,
}

fn normalize_row(coeffs: &mut [BigInt], rhs: &mut BigInt) {
    let mut g = rhs.abs();
    for c in coeffs.iter() {
        g = g.gcd(&c.abs());
    }
    if !g.is_zero() && g != BigInt::from(1) {
        for c in coeffs.iter_mut() {
            *c /= &g;
        }
        *rhs /= &g;
    }
}

/// One Fourier-Motzkin step: eliminates variable v from a system of rows
/// coeffs . y >= rhs by combining positive and negative occurrences.
fn eliminate(rows: Vec<(Vec<BigInt>, BigInt)>, v: usize) -> Result<Vec<(Vec<BigInt>, BigInt)>> {
    let mut kept = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for row in rows {
        match row.0[v].sign() {
            num::bigint::Sign::Plus => pos.push(row),
            num::bigint::Sign::Minus => neg.push(row),
            num::bigint::Sign::NoSign => kept.push(row),
        }
    }
    for (pc, pr) in &pos {
        for (nc, nr) in &neg {
            let a = nc[v].abs();
            let b = pc[v].clone();
            let mut coeffs: Vec<BigInt> =
                pc.iter().zip(nc).map(|(x, y)| x * &a + y * &b).collect();
            let mut rhs = pr * &a + nr * &b;
            debug_assert!(coeffs[v].is_zero());
            normalize_row(&mut coeffs, &mut rhs);
            if coeffs.iter().all(|c| c.is_zero()) {
                // 0 >= rhs: vacuous when rhs <= 0, impossible otherwise.
                debug_assert!(!rhs.is_positive());
                continue;
            }
            kept.push((coeffs, rhs));
        }
    }
    kept.sort();
    kept.dedup();
    if kept.len() > MAX_FM_ROWS {
        return Err(Error::input("newton polyhedron elimination grew too large"));
    }
    Ok(kept)
}

/// Builds the halfspace description of the Newton polyhedron of a nonzero,
/// non-unit monomial ideal.
pub fn newton_polyhedron(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    let ring = ideal.ring().clone();
    let d = ring.nvars();
    if d > MAX_NEWTON_DIM {
        return Err(Error::DimensionTooLarge(d, MAX_NEWTON_DIM));
    }
    if ideal.is_zero() || ideal.is_unit() {
        return Err(Error::input("the newton polyhedron needs a proper nonzero monomial ideal"));
    }
    let points: Vec<&Monomial> = ideal.gens().iter().collect();
    let m = points.len();
    let bounds: Vec<u32> =
        (0..d).map(|v| points.iter().map(|g| g.exp(v)).max().unwrap()).collect();

    // Variables y = (lambda_1 .. lambda_(m-1), x_1 .. x_d); lambda_m has
    // been substituted out of the convexity condition.
    let vars = (m - 1) + d;
    let last = points[m - 1];
    let big = |x: u32| BigInt::from(x);
    let mut rows: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    for i in 0..m - 1 {
        let mut coeffs = vec![BigInt::zero(); vars];
        coeffs[i] = BigInt::from(1);
        rows.push((coeffs, BigInt::zero()));
    }
    {
        // lambda_m >= 0, i.e. 1 - sum lambda_i >= 0.
        let mut coeffs = vec![BigInt::zero(); vars];
        for c in coeffs.iter_mut().take(m - 1) {
            *c = BigInt::from(-1);
        }
        if m > 1 {
            rows.push((coeffs, BigInt::from(-1)));
        }
    }
    for j in 0..d {
        // x_j >= sum_i lambda_i e_ij with lambda_m substituted.
        let mut coeffs = vec![BigInt::zero(); vars];
        for i in 0..m - 1 {
            coeffs[i] = big(last.exp(j)) - big(points[i].exp(j));
        }
        coeffs[m - 1 + j] = BigInt::from(1);
        rows.push((coeffs, big(last.exp(j))));
    }

    for v in 0..m - 1 {
        rows = eliminate(rows, v)?;
    }
    // Drop the eliminated coordinates from the surviving rows.
    let rows = rows
        .into_iter()
        .map(|(coeffs, rhs)| (coeffs[m - 1..].to_vec(), rhs))
        .collect();
    Ok(NewtonPolyhedron { ring, bounds, rows })
}

impl NewtonPolyhedron {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Per-variable exponent bound: minimal generators of the n-th dilation
    /// stay below n * bound in every coordinate.
    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    /// Membership of a lattice point in the n-fold dilation n * P.
    pub fn dilated_contains(&self, point: &Monomial, n: u64) -> bool {
        let scale = BigInt::from(n);
        self.rows.iter().all(|(coeffs, rhs)| {
            let lhs: BigInt = coeffs
                .iter()
                .zip(point.exps())
                .map(|(c, &e)| c * BigInt::from(e))
                .sum();
            lhs >= rhs * &scale
        })
    }

    pub fn contains(&self, point: &Monomial) -> bool {
        self.dilated_contains(point, 1)
    }

    /// The monomial ideal of all lattice points in n * P, i.e. the integral
    /// closure of the n-th power of the original ideal.
    pub fn closure_power(&self, n: u64) -> Result<MonomialIdeal> {
        if n == 0 {
            return Ok(MonomialIdeal::unit(self.ring.clone()));
        }
        let d = self.ring.nvars();
        let caps: Vec<u64> = self.bounds.iter().map(|&b| b as u64 * n).collect();
        let mut gens = Vec::new();
        let mut exps = vec![0u32; d];
        'scan: loop {
            let mono = Monomial::new(exps.clone());
            if self.dilated_contains(&mono, n) {
                gens.push(mono);
            }
            let mut v = 0;
            loop {
                if v == d {
                    break 'scan;
                }
                if (exps[v] as u64) < caps[v] {
                    exps[v] += 1;
                    break;
                }
                exps[v] = 0;
                v += 1;
            }
        }
        MonomialIdeal::new(self.ring.clone(), gens)
    }
}

/// Integral closure of a monomial ideal via its Newton polyhedron.
pub fn integral_closure_monomial(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.is_zero() || ideal.is_unit() {
        return Ok(ideal.clone());
    }
    newton_polyhedron(ideal)?.closure_power(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationStrategy {
    /// Plain powers I^n.
    Adic,
    /// Integral closures of powers.
    Closure,
}

/// Rows F_0 = R, F_1, ..., F_horizon of a multiplicative filtration.
#[derive(Debug, Clone, Serialize)]
pub struct FiltrationTable {
    pub strategy: FiltrationStrategy,
    pub rows: Vec<MonomialIdeal>,
    /// True when every row past F_0 contains a pure power of each variable.
    pub m_primary: bool,
}

pub fn filtration_table(
    ideal: &MonomialIdeal,
    strategy: FiltrationStrategy,
    horizon: usize,
) -> Result<FiltrationTable> {
    if horizon == 0 {
        return Err(Error::input("the filtration horizon must be at least 1"));
    }
    let mut rows = Vec::with_capacity(horizon + 1);
    rows.push(MonomialIdeal::unit(ideal.ring().clone()));
    match strategy {
        FiltrationStrategy::Adic => {
            for n in 1..=horizon {
                rows.push(ideal.power(n as u64)?);
            }
        }
        FiltrationStrategy::Closure => {
            let poly = newton_polyhedron(ideal)?;
            for n in 1..=horizon {
                rows.push(poly.closure_power(n as u64)?);
            }
        }
    }
    let m_primary = rows[1..].iter().all(|row| pure_power_bounds(row).is_some());
    Ok(FiltrationTable { strategy, rows, m_primary })
}

/// For each variable, the least exponent of a pure-power generator; None if
/// some variable has none (the ideal is then not m-primary).
fn pure_power_bounds(ideal: &MonomialIdeal) -> Option<Vec<u32>> {
    let d = ideal.ring().nvars();
    let mut bounds = vec![None::<u32>; d];
    for g in ideal.gens() {
        let support: Vec<usize> = (0..d).filter(|&v| g.exp(v) > 0).collect();
        match support.len() {
            0 => bounds.iter_mut().for_each(|b| *b = Some(0)),
            1 => {
                let v = support[0];
                let e = g.exp(v);
                bounds[v] = Some(bounds[v].map_or(e, |old| old.min(e)));
            }
            _ => {}
        }
    }
    bounds.into_iter().collect()
}

/// Number of monomials outside the ideal, finite exactly in the m-primary
/// case; counted by scanning the box below the pure-power bounds.
pub fn colength(ideal: &MonomialIdeal) -> Result<u64> {
    let bounds = pure_power_bounds(ideal)
        .ok_or_else(|| Error::input("colength needs an m-primary monomial ideal"))?;
    let d = ideal.ring().nvars();
    if bounds.iter().any(|&b| b == 0) {
        return Ok(0);
    }
    let mut count = 0u64;
    let mut exps = vec![0u32; d];
    'scan: loop {
        if !ideal.contains(&Monomial::new(exps.clone())) {
            count += 1;
        }
        let mut v = 0;
        loop {
            if v == d {
                break 'scan;
            }
            if exps[v] + 1 < bounds[v] {
                exps[v] += 1;
                break;
            }
            exps[v] = 0;
            v += 1;
        }
    }
    Ok(count)
}

/// Hilbert data of the associated graded ring of a filtration: graded piece
/// dimensions, the numerator of the series over (1-t)^d, and the a-invariant
/// read from the numerator degree.
#[derive(Debug, Clone, Serialize)]
pub struct HilbertReport {
    /// dim F_n / F_(n+1) for n = 0 .. horizon-1.
    pub dims: Vec<u64>,
    /// Coefficients of (1-t)^d * sum dims t^n, low degree first.
    pub numerator: Vec<i64>,
    pub dimension: usize,
    /// deg(numerator) - dimension when the numerator has settled.
    pub a_invariant: Option<i64>,
    /// At least three trailing zero coefficients were observed, so the
    /// numerator is taken as complete.
    pub stabilized: bool,
    /// The a-invariant reading treats the graded ring as Cohen-Macaulay;
    /// this flag records whether that is an assumption or established.
    pub cm_assumed: bool,
}

pub fn hilbert_function(table: &FiltrationTable) -> Result<HilbertReport> {
    if !table.m_primary {
        return Err(Error::input("hilbert data needs an m-primary filtration"));
    }
    let d = table.rows[0].ring().nvars();
    let horizon = table.rows.len() - 1;
    let colengths: Vec<u64> =
        table.rows.iter().map(colength).collect::<Result<Vec<_>>>()?;
    let dims: Vec<u64> = (0..horizon).map(|n| colengths[n + 1] - colengths[n]).collect();

    // Numerator h = (1 - t)^d * H(t), truncated at the horizon.
    let mut binoms = vec![0i128; d + 1];
    binoms[0] = 1;
    for j in 1..=d {
        binoms[j] = binoms[j - 1] * (d as i128 - j as i128 + 1) / j as i128;
    }
    let mut numerator: Vec<i64> = Vec::with_capacity(horizon);
    for k in 0..horizon {
        let mut h = 0i128;
        for (j, &b) in binoms.iter().enumerate() {
            if j <= k {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                h += sign * b * dims[k - j] as i128;
            }
        }
        numerator.push(i64::try_from(h).map_err(|_| Error::input("numerator overflow"))?);
    }
    let stabilized =
        numerator.len() >= 3 && numerator[numerator.len() - 3..].iter().all(|&x| x == 0);
    let a_invariant = if stabilized {
        let deg = numerator.iter().rposition(|&x| x != 0).unwrap_or(0);
        Some(deg as i64 - d as i64)
    } else {
        None
    };
    if stabilized {
        let deg = numerator.iter().rposition(|&x| x != 0).unwrap_or(0);
        numerator.truncate(deg + 1);
    }
    Ok(HilbertReport {
        dims,
        numerator,
        dimension: d,
        a_invariant,
        stabilized,
        cm_assumed: true,
    })
}

/// Hilbert data of the associated graded ring of a hypersurface k[X]/(f)
/// with the maximal-ideal filtration: the initial form is a single relation
/// of degree e = ord f, so the series is (1 - t^e) / (1 - t)^v exactly and
/// the a-invariant is e - v.
pub fn assoc_graded_hypersurface(f: &Polynomial, horizon: usize) -> Result<HilbertReport> {
    let v = f.ring().nvars();
    let e = f.ord()?;
    let choose = |n: i64, k: i64| -> u64 {
        if n < 0 || k < 0 || k > n {
            return 0;
        }
        let mut acc: u128 = 1;
        for i in 0..k as u128 {
            acc = acc * (n as u128 - i) / (i + 1);
        }
        acc as u64
    };
    let dims: Vec<u64> = (0..horizon as i64)
        .map(|n| choose(n + v as i64 - 1, v as i64 - 1) - choose(n - e as i64 + v as i64 - 1, v as i64 - 1))
        .collect();
    let mut numerator = vec![0i64; e as usize + 1];
    numerator[0] = 1;
    numerator[e as usize] = -1;
    Ok(HilbertReport {
        dims,
        numerator,
        dimension: v,
        a_invariant: Some(e as i64 - v as i64),
        stabilized: true,
        cm_assumed: false,
    })
}

/// Reduction data: the least r with F_(n+1) = I * F_n for every checked
/// n >= r; the claim is verified only up to the table horizon.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub r: Option<u64>,
    pub verified_to: usize,
}

pub fn reduction_number(table: &FiltrationTable, ideal: &MonomialIdeal) -> Result<ReductionReport> {
    let horizon = table.rows.len() - 1;
    let mut last_fail: Option<usize> = None;
    for n in 0..horizon {
        let step = ideal.product(&table.rows[n])?;
        if step != table.rows[n + 1] {
            last_fail = Some(n);
        }
    }
    let r = match last_fail {
        None => Some(0),
        // Failing at the last checked step leaves every candidate untested.
        Some(n) if n + 1 >= horizon => None,
        Some(n) => Some(n as u64 + 1),
    };
    Ok(ReductionReport { r, verified_to: horizon })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome")]
pub enum CheckOutcome {
    Holds,
    Fails { detail: String },
    Inconclusive { detail: String },
}

/// Verifies r = a + d for the closure filtration of an m-primary monomial
/// ideal, with r the reduction number, a the numerator a-invariant, and d
/// the ambient dimension.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionAInvariantReport {
    pub r: Option<u64>,
    pub a_invariant: Option<i64>,
    pub dimension: usize,
    pub outcome: CheckOutcome,
    pub hilbert: HilbertReport,
    pub cm_assumed: bool,
}

pub fn check_reduction_a_invariant(
    table: &FiltrationTable,
    reduction_ideal: &MonomialIdeal,
) -> Result<ReductionAInvariantReport> {
    let hilbert = hilbert_function(table)?;
    let reduction = reduction_number(table, reduction_ideal)?;
    let d = hilbert.dimension;
    let outcome = match (reduction.r, hilbert.a_invariant) {
        (Some(r), Some(a)) => {
            if r as i64 == a + d as i64 {
                CheckOutcome::Holds
            } else {
                CheckOutcome::Fails {
                    detail: format!("r = {r} but a + d = {}", a + d as i64),
                }
            }
        }
        (None, _) => CheckOutcome::Inconclusive {
            detail: "the reduction step did not settle within the horizon".to_string(),
        },
        (_, None) => CheckOutcome::Inconclusive {
            detail: "the hilbert numerator did not stabilize within the horizon".to_string(),
        },
    };
    Ok(ReductionAInvariantReport {
        r: reduction.r,
        a_invariant: hilbert.a_invariant,
        dimension: d,
        outcome,
        cm_assumed: hilbert.cm_assumed,
        hilbert,
    })
}

/// Checks closure(I^(k+l)) meet I^[l] = closure(I^k) * I^[l] for an ideal
/// generated by a monomial system of parameters, where I^[l] is generated
/// by the l-th powers of the parameters.
#[derive(Debug, Clone, Serialize)]
pub struct IntersectionIdentityReport {
    pub k: u64,
    pub l: u64,
    pub holds: bool,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub counterexample: Option<String>,
}

pub fn check_intersection_identity(
    ideal: &MonomialIdeal,
    k: u64,
    l: u64,
) -> Result<IntersectionIdentityReport> {
    if l == 0 {
        return Err(Error::input("the parameter power l must be at least 1"));
    }
    let d = ideal.ring().nvars();
    let mut seen = vec![false; d];
    for g in ideal.gens() {
        let support: Vec<usize> = (0..d).filter(|&v| g.exp(v) > 0).collect();
        if support.len() != 1 || seen[support[0]] {
            return Err(Error::input(
                "the identity needs a monomial system of parameters: one pure variable power per variable",
            ));
        }
        seen[support[0]] = true;
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::input(
            "the identity needs a monomial system of parameters: one pure variable power per variable",
        ));
    }
    let powered: Result<Vec<Monomial>> = ideal.gens().iter().map(|g| g.pow(l)).collect();
    let bracket = MonomialIdeal::new(ideal.ring().clone(), powered?)?;
    let poly = newton_polyhedron(ideal)?;
    let lhs = poly.closure_power(k + l)?.intersect(&bracket)?;
    let rhs = poly.closure_power(k)?.product(&bracket)?;
    let holds = lhs == rhs;
    let counterexample = if holds {
        None
    } else {
        lhs.gens()
            .iter()
            .find(|g| !rhs.contains(g))
            .or_else(|| rhs.gens().iter().find(|g| !lhs.contains(g)))
            .map(|g| {
                Polynomial::monomial(ideal.ring().clone(), (*g).clone(), 1).to_string()
            })
    };
    Ok(IntersectionIdentityReport {
        k,
        l,
        holds,
        lhs: lhs.display_gens(),
        rhs: rhs.display_gens(),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use crate::poly::{parse_polynomial, MonomialOrder};

    fn ring2(p: u64) -> Arc<Ring> {
        Ring::with_names(&["X", "Y"], PrimeModulus::new(p).unwrap(), MonomialOrder::Grevlex)
            .unwrap()
    }

    fn ideal(r: &Arc<Ring>, gens: &[&str]) -> MonomialIdeal {
        let monos = gens
            .iter()
            .map(|s| parse_polynomial(r, s).unwrap().terms()[0].mono.clone())
            .collect();
        MonomialIdeal::new(r.clone(), monos).unwrap()
    }

    #[test]
    fn classical_closures() {
        let r = ring2(5);
        // (X^2, Y^2) gains the mixed monomial.
        let a = integral_closure_monomial(&ideal(&r, &["X^2", "Y^2"])).unwrap();
        assert_eq!(a, ideal(&r, &["X^2", "X*Y", "Y^2"]));
        // (X^3, Y^3) closes up to all of m^3.
        let b = integral_closure_monomial(&ideal(&r, &["X^3", "Y^3"])).unwrap();
        assert_eq!(b, ideal(&r, &["X^3", "X^2*Y", "X*Y^2", "Y^3"]));
        // (X^2, Y^3): the lattice points of x/2 + y/3 >= 1.
        let c = integral_closure_monomial(&ideal(&r, &["X^2", "Y^3"])).unwrap();
        assert_eq!(c, ideal(&r, &["X^2", "X*Y^2", "Y^3"]));
        // An already closed ideal is fixed.
        let d = integral_closure_monomial(&ideal(&r, &["X^4", "X*Y", "Y^4"])).unwrap();
        assert_eq!(d, ideal(&r, &["X^4", "X*Y", "Y^4"]));
    }

    #[test]
    fn dilation_matches_direct_elimination() {
        let r = ring2(5);
        let base = ideal(&r, &["X^2", "Y^3"]);
        let poly = newton_polyhedron(&base).unwrap();
        for n in 1..=4u64 {
            let by_dilation = poly.closure_power(n).unwrap();
            let direct = integral_closure_monomial(&base.power(n).unwrap()).unwrap();
            assert_eq!(by_dilation, direct, "power {n}");
        }
    }

    #[test]
    fn closure_agrees_with_bounded_power_oracle() {
        // x in the closure iff x^j in I^j for some j; for these small cases
        // a witness appears by j <= 6, giving an independent check on the
        // polyhedral route over the whole generator box.
        let r = ring2(5);
        for gens in [&["X^2", "Y^2"][..], &["X^2", "Y^3"][..], &["X^4", "X*Y", "Y^4"][..]] {
            let base = ideal(&r, gens);
            let closed = integral_closure_monomial(&base).unwrap();
            let powers: Vec<MonomialIdeal> =
                (1..=6u64).map(|j| base.power(j).unwrap()).collect();
            let bounds: Vec<u32> = (0..2)
                .map(|v| base.gens().iter().map(|g| g.exp(v)).max().unwrap())
                .collect();
            for x in 0..=bounds[0] {
                for y in 0..=bounds[1] {
                    let mono = Monomial::new(vec![x, y]);
                    let by_oracle = (1..=6u64).any(|j| {
                        powers[j as usize - 1].contains(&mono.pow(j).unwrap())
                    });
                    assert_eq!(
                        closed.contains(&mono),
                        by_oracle,
                        "disagreement at ({x},{y}) for {gens:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn closure_filtration_of_two_squares() {
        let r = ring2(5);
        let base = ideal(&r, &["X^2", "Y^2"]);
        let table = filtration_table(&base, FiltrationStrategy::Closure, 8).unwrap();
        assert!(table.m_primary);
        assert!(table.rows[0].is_unit());
        // Row n is every monomial of degree 2n.
        for n in 1..=8usize {
            let expect = MonomialIdeal::max_ideal_power(r.clone(), 2 * n as u32).unwrap();
            assert_eq!(table.rows[n], expect, "row {n}");
        }
        let hil = hilbert_function(&table).unwrap();
        assert_eq!(&hil.dims[..4], &[3, 7, 11, 15]);
        assert_eq!(hil.numerator, vec![3, 1]);
        assert_eq!(hil.a_invariant, Some(-1));
        assert!(hil.stabilized);
        assert!(hil.cm_assumed);
        let red = reduction_number(&table, &base).unwrap();
        assert_eq!(red.r, Some(1));
        let check = check_reduction_a_invariant(&table, &base).unwrap();
        assert_eq!(check.outcome, CheckOutcome::Holds);
    }

    #[test]
    fn adic_reduction_checks() {
        // The maximal-ideal filtration has r = 0 and a = -d.
        let r = ring2(5);
        let m = ideal(&r, &["X", "Y"]);
        let table = filtration_table(&m, FiltrationStrategy::Adic, 6).unwrap();
        let check = check_reduction_a_invariant(&table, &m).unwrap();
        assert_eq!(check.r, Some(0));
        assert_eq!(check.a_invariant, Some(-2));
        assert_eq!(check.outcome, CheckOutcome::Holds);
        // The m^2-adic filtration reduced against (X^2, Y^2) fails the first
        // step only: r = 1 pairs with a = -1.
        let m2 = ideal(&r, &["X^2", "X*Y", "Y^2"]);
        let j = ideal(&r, &["X^2", "Y^2"]);
        let table = filtration_table(&m2, FiltrationStrategy::Adic, 6).unwrap();
        let check = check_reduction_a_invariant(&table, &j).unwrap();
        assert_eq!(check.r, Some(1));
        assert_eq!(check.a_invariant, Some(-1));
        assert_eq!(check.outcome, CheckOutcome::Holds);
    }

    #[test]
    fn adic_and_closure_rows_differ_when_not_closed() {
        let r = ring2(5);
        let base = ideal(&r, &["X^2", "Y^2"]);
        let adic = filtration_table(&base, FiltrationStrategy::Adic, 3).unwrap();
        let closed = filtration_table(&base, FiltrationStrategy::Closure, 3).unwrap();
        assert_ne!(adic.rows[1], closed.rows[1]);
        let xy = parse_polynomial(&r, "X*Y").unwrap().terms()[0].mono.clone();
        assert!(!adic.rows[1].contains(&xy));
        assert!(closed.rows[1].contains(&xy));
    }

    #[test]
    fn colength_counts_standard_monomials() {
        let r = ring2(5);
        assert_eq!(colength(&ideal(&r, &["X^2", "X*Y", "Y^2"])).unwrap(), 3);
        assert_eq!(colength(&ideal(&r, &["X^3", "Y^2"])).unwrap(), 6);
        assert_eq!(colength(&MonomialIdeal::unit(r.clone())).unwrap(), 0);
        assert!(colength(&ideal(&r, &["X"])).is_err());
    }

    #[test]
    fn hypersurface_graded_series() {
        let r3 = Ring::with_names(
            &["X0", "X1", "X2"],
            PrimeModulus::new(7).unwrap(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let f = parse_polynomial(&r3, "X0^2+X1^2+X2^3").unwrap();
        let rep = assoc_graded_hypersurface(&f, 6).unwrap();
        assert_eq!(rep.numerator, vec![1, 0, -1]);
        assert_eq!(rep.a_invariant, Some(-1));
        assert_eq!(rep.dimension, 3);
        assert_eq!(rep.dims, vec![1, 3, 5, 7, 9, 11]);
        assert!(!rep.cm_assumed);
        // Order three in three variables has a-invariant zero.
        let g = parse_polynomial(&r3, "X0^3").unwrap();
        assert_eq!(assoc_graded_hypersurface(&g, 4).unwrap().a_invariant, Some(0));
        assert!(assoc_graded_hypersurface(&Polynomial::zero(r3), 4).is_err());
    }

    #[test]
    fn intersection_identity_on_parameter_powers() {
        let r = ring2(2);
        let base = ideal(&r, &["X^2", "Y^2"]);
        for (k, l) in [(0u64, 2u64), (1, 2), (2, 2), (1, 3), (1, 4), (3, 3)] {
            let rep = check_intersection_identity(&base, k, l).unwrap();
            assert!(rep.holds, "failed at k = {k}, l = {l}");
            assert!(rep.counterexample.is_none());
        }
        let r3 = Ring::with_names(
            &["X", "Y", "Z"],
            PrimeModulus::new(5).unwrap(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let m = MonomialIdeal::new(
            r3.clone(),
            (0..3).map(|v| Monomial::variable(3, v, 1)).collect(),
        )
        .unwrap();
        for k in 1..=3u64 {
            for l in 1..=3u64 {
                assert!(check_intersection_identity(&m, k, l).unwrap().holds);
            }
        }
        // Not a system of parameters: mixed-support generator, or a
        // variable left uncovered.
        assert!(check_intersection_identity(&ideal(&r, &["X^2", "X*Y"]), 1, 2).is_err());
        assert!(check_intersection_identity(&ideal(&r, &["X"]), 1, 2).is_err());
        assert!(check_intersection_identity(&base, 1, 0).is_err());
    }

    #[test]
    fn newton_polyhedron_rejects_edge_cases() {
        let r = ring2(5);
        assert!(newton_polyhedron(&MonomialIdeal::unit(r.clone())).is_err());
        assert!(newton_polyhedron(&MonomialIdeal::zero(r.clone())).is_err());
        let wide = Ring::with_names(
            &["A", "B", "C", "D", "E", "F", "G"],
            PrimeModulus::new(5).unwrap(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let one_gen = MonomialIdeal::new(wide.clone(), vec![Monomial::variable(7, 0, 1)]).unwrap();
        assert!(matches!(
            newton_polyhedron(&one_gen),
            Err(Error::DimensionTooLarge(7, 6))
        ));
    }

    #[test]
    fn single_generator_polyhedron_is_a_shifted_orthant() {
        let r = ring2(5);
        let base = ideal(&r, &["X^2*Y"]);
        let closed = integral_closure_monomial(&base).unwrap();
        assert_eq!(closed, base);
        let poly = newton_polyhedron(&base).unwrap();
        assert!(poly.contains(&Monomial::new(vec![2, 1])));
        assert!(poly.contains(&Monomial::new(vec![5, 3])));
        assert!(!poly.contains(&Monomial::new(vec![2, 0])));
    }

    /// Smallest power K with point^K in I^K, by brute force over multisets
    /// of K generators.
    fn min_power_witness(gens: &[Monomial], point: &Monomial, kmax: u64) -> Option<u64> {
        fn rec(gens: &[Monomial], target: &[u64], i: usize, remaining: u64, acc: &[u64]) -> bool {
            if i == gens.len() - 1 {
                return (0..target.len())
                    .all(|v| acc[v] + remaining * gens[i].exp(v) as u64 <= target[v]);
            }
            (0..=remaining).any(|k| {
                let next: Vec<u64> =
                    (0..target.len()).map(|v| acc[v] + k * gens[i].exp(v) as u64).collect();
                next.iter().zip(target).all(|(a, t)| a <= t)
                    && rec(gens, target, i + 1, remaining - k, &next)
            })
        }
        (1..=kmax).find(|&k| {
            let target: Vec<u64> = (0..point.exps().len())
                .map(|v| k * point.exp(v) as u64)
                .collect();
            rec(gens, &target, 0, k, &vec![0; target.len()])
        })
    }

    /// Membership in the integral closure can require arbitrarily deep
    /// power witnesses even for small generators: the closure point here
    /// satisfies point^K in I^K first at K = 11, far above the generator
    /// degrees. Guards against "bounded power search" shortcuts.
    #[test]
    fn closure_membership_can_need_deep_power_witnesses() {
        let r = Ring::with_names(
            &["X", "Y", "Z"],
            PrimeModulus::new(5).unwrap(),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let base = ideal(&r, &["Y^5", "X^4*Z^2", "Y*Z^5"]);
        let closed = integral_closure_monomial(&base).unwrap();
        let point = Monomial::new(vec![3, 1, 2]);
        assert!(closed.contains(&point));
        assert!(!base.contains(&point));
        assert_eq!(min_power_witness(base.gens(), &point, 20), Some(11));
    }
}
