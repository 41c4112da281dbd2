//! Jet-level Weierstrass preparation and the two normal forms built on it.
//!
//! All series live as jets: polynomials truncated below a total-degree
//! precision D. `weierstrass_prepare` solves u * (X^e + b_1 X^(e-1) + ... +
//! b_e) = h degree by degree, which is exact at every level (no fixed-point
//! iteration, no precision loss). The distinguished-variable coefficient of
//! X^e must be a unit, which the seeded pivot search arranges beforehand.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::change::pivot_change;
use crate::poly::{LinearChange, Monomial, Polynomial, Ring};

/// Total-degree truncation bound for jets. Terms of degree >= D are dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JetPrecision(pub u64);

pub const DEFAULT_JET_PRECISION: JetPrecision = JetPrecision(12);

impl JetPrecision {
    pub fn validated(self, minimum: u64) -> Result<u64> {
        if self.0 < minimum {
            return Err(Error::input(format!(
                "jet precision {} too small, need at least {minimum}",
                self.0
            )));
        }
        Ok(self.0)
    }
}

/// Multiplicative inverse of a jet with nonzero constant term, truncated
/// below `cap`, by the graded recursion v_n = -c0^(-1) sum_j u_j v_(n-j).
pub fn invert_unit_jet(u: &Polynomial, cap: u64) -> Result<Polynomial> {
    let ring = u.ring().clone();
    let p = ring.modulus();
    let c0 = u.constant_term();
    if c0 == 0 {
        return Err(Error::input("cannot invert a jet with zero constant term"));
    }
    let c0_inv = p.inv(c0);
    let mut inv = Polynomial::constant(ring.clone(), c0_inv);
    for n in 1..cap {
        // piece = sum_{j=1..n} u_j * v_{n-j}, all lower pieces known.
        let mut piece = Polynomial::zero(ring.clone());
        for j in 1..=n {
            let uj = u.graded_piece(j);
            if uj.is_zero() {
                continue;
            }
            piece = piece.add(&uj.mul(&inv.graded_piece(n - j))?)?;
        }
        if !piece.is_zero() {
            inv = inv.sub(&piece.scale(c0_inv))?;
        }
    }
    Ok(inv)
}

/// Writes h = U * (X_pivot^e + b_1 X_pivot^(e-1) + ... + b_e) mod degree D,
/// with each b_k free of the pivot variable and of order >= k, and U a unit
/// jet. Requires ord(h) = e and a nonzero coefficient on the pure monomial
/// X_pivot^e.
pub fn weierstrass_prepare(
    h: &Polynomial,
    pivot: usize,
    e: u32,
    cap: u64,
) -> Result<(Polynomial, Vec<Polynomial>)> {
    let ring = h.ring().clone();
    let p = ring.modulus();
    let found = h.ord()?;
    if found != e as u64 {
        return Err(Error::WrongOrder { expected: e as u64, found });
    }
    let u0 = h.coeff_of(&Monomial::variable(ring.nvars(), pivot, e));
    if u0 == 0 {
        return Err(Error::input("pivot coefficient vanishes; apply a coordinate change first"));
    }
    let u0_inv = p.inv(u0);

    let mut unit = Polynomial::zero(ring.clone());
    let mut b: Vec<Polynomial> = vec![Polynomial::zero(ring.clone()); e as usize];

    for n in e as u64..cap {
        // What the current partial solution already produces at degree n.
        let mut w = Polynomial::monomial(ring.clone(), Monomial::variable(ring.nvars(), pivot, e), 1);
        for (k, bk) in b.iter().enumerate() {
            let x_pow = Monomial::variable(ring.nvars(), pivot, e - 1 - k as u32);
            w = w.add(&bk.mul_term(&x_pow, 1)?)?;
        }
        let produced = unit.mul_trunc(&w, Some(n + 1))?;
        let mut rho = h.sub(&produced)?.graded_piece(n);

        // The unit piece first: every term with pivot exponent >= e belongs
        // to u_(n-e) * X^e and nothing else reaches that exponent.
        let mut unit_piece: Vec<(Monomial, u64)> = Vec::new();
        for term in rho.terms() {
            let pe = term.mono.exp(pivot);
            if pe >= e {
                let mut exps = term.mono.exps().to_vec();
                exps[pivot] = pe - e;
                unit_piece.push((Monomial::new(exps), term.coeff));
            }
        }
        if !unit_piece.is_empty() {
            let u_new = Polynomial::from_raw(ring.clone(), unit_piece);
            // u_(n-e) also multiplies the known low pieces of W at this same
            // level; subtract that before reading off the b updates.
            let cross = u_new.mul_trunc(&w, Some(n + 1))?.graded_piece(n);
            rho = rho.sub(&cross)?;
            unit = unit.add(&u_new)?;
        }

        // What remains rides on u_0, split by the pivot exponent e - k.
        debug_assert!(rho.terms().iter().all(|t| t.mono.exp(pivot) < e));
        let mut b_pieces: Vec<Vec<(Monomial, u64)>> = vec![Vec::new(); e as usize];
        for term in rho.terms() {
            let pe = term.mono.exp(pivot);
            let mut exps = term.mono.exps().to_vec();
            exps[pivot] = 0;
            b_pieces[(e - 1 - pe) as usize]
                .push((Monomial::new(exps), p.mul(term.coeff, u0_inv)));
        }
        for (k, piece) in b_pieces.into_iter().enumerate() {
            if !piece.is_empty() {
                b[k] = b[k].add(&Polynomial::from_raw(ring.clone(), piece))?;
            }
        }
    }

    debug_assert_eq!(unit.constant_term(), u0);
    Ok((unit, b))
}

/// Where the order of the normalized remainder lands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadCase {
    Ord2,
    Ord3,
    /// Order >= 4, including a remainder that vanishes at this precision.
    OrdGe4,
}

fn quad_case_of(g: &Polynomial) -> QuadCase {
    match g.ord() {
        Err(_) => QuadCase::OrdGe4,
        Ok(2) => QuadCase::Ord2,
        Ok(3) => QuadCase::Ord3,
        Ok(_) => QuadCase::OrdGe4,
    }
}

/// Result of normalizing an order-2 series to unit * (X_0^2 + g_rest).
#[derive(Debug, Clone, Serialize)]
pub struct QuadraticJetForm {
    /// The X_0-free remainder g in f o change = unit * (X_0^2 + g).
    #[serde(serialize_with = "crate::poly::serialize_poly_string")]
    pub g_rest: Polynomial,
    pub case_tag: QuadCase,
    /// Order of the second-stage remainder (filled by the classifier).
    pub m_order: Option<u64>,
    /// Order of the cubic-case constant remainder (filled by the classifier).
    pub n_order: Option<u64>,
    pub change: LinearChange,
    /// Unit jet carrying the normalization factor; nonzero constant term.
    #[serde(serialize_with = "crate::poly::serialize_poly_string")]
    pub unit: Polynomial,
    pub precision: JetPrecision,
}

impl QuadraticJetForm {
    /// Back-substitution check: f o change and unit * (X_0^2 + g_rest) must
    /// agree below the precision.
    pub fn verify(&self, f: &Polynomial) -> Result<bool> {
        let cap = self.precision.0;
        let ring = f.ring().clone();
        let lhs = self.change.apply(f, Some(cap))?;
        let x0sq = Polynomial::monomial(ring.clone(), Monomial::variable(ring.nvars(), 0, 2), 1);
        let rhs = self.unit.mul_trunc(&x0sq.add(&self.g_rest)?, Some(cap))?;
        Ok(lhs == rhs)
    }
}

/// Normalizes an order-2 series to unit * (X_0^2 + g_rest) with g_rest free
/// of X_0, recording the coordinate change (linear part plus a completing
/// shift in X_0). Needs p > 2.
pub fn weierstrass_normalize_quadratic(
    f: &Polynomial,
    precision: JetPrecision,
    seed: u64,
) -> Result<QuadraticJetForm> {
    let ring = f.ring().clone();
    let p = ring.modulus();
    if p.value() == 2 {
        return Err(Error::UnsupportedCharacteristic(2, "completing the square needs 1/2"));
    }
    let cap = precision.validated(4)?;
    let found = f.ord()?;
    if found != 2 {
        return Err(Error::WrongOrder { expected: 2, found });
    }

    let linear = pivot_change(&f.initial_form()?, 0, 0, seed)?;
    let moved = linear.apply(f, Some(cap))?;
    let (unit_raw, b) = weierstrass_prepare(&moved, 0, 2, cap)?;
    let (b1, b2) = (&b[0], &b[1]);

    let s = b1.scale(p.inv(2));
    let g_rest = b2.sub(&s.mul(&s)?)?.truncated(cap);

    let change = compose_with_pivot_shift(&linear, 0, &s)?;
    let unit = shift_only(&ring, 0, &s)?.apply(&unit_raw, Some(cap))?;

    let form = QuadraticJetForm {
        case_tag: quad_case_of(&g_rest),
        g_rest,
        m_order: None,
        n_order: None,
        change,
        unit,
        precision: JetPrecision(cap),
    };
    debug_assert!(form.verify(f)?);
    Ok(form)
}

/// Result of depressing an order-3 series in the X_1.. block to
/// unit * (X_1^3 + h1 * X_1 + h2).
#[derive(Debug, Clone, Serialize)]
pub struct CubicDepressed {
    #[serde(serialize_with = "crate::poly::serialize_poly_string")]
    pub unit: Polynomial,
    /// Coefficient of X_1; zero or of order >= 2, free of X_0 and X_1.
    #[serde(serialize_with = "crate::poly::serialize_poly_string")]
    pub h1: Polynomial,
    /// Constant coefficient; zero or of order >= 3, free of X_0 and X_1.
    #[serde(serialize_with = "crate::poly::serialize_poly_string")]
    pub h2: Polynomial,
    pub change: LinearChange,
    pub precision: JetPrecision,
}

impl CubicDepressed {
    pub fn verify(&self, g: &Polynomial) -> Result<bool> {
        let cap = self.precision.0;
        let ring = g.ring().clone();
        let lhs = self.change.apply(g, Some(cap))?;
        let x1 = Monomial::variable(ring.nvars(), 1, 1);
        let w = Polynomial::monomial(ring.clone(), Monomial::variable(ring.nvars(), 1, 3), 1)
            .add(&self.h1.mul_term(&x1, 1)?)?
            .add(&self.h2)?;
        Ok(lhs == self.unit.mul_trunc(&w, Some(cap))?)
    }
}

/// Depresses an order-3 series g in the variables X_1..X_d (X_0 must not
/// occur) to unit * (X_1^3 + h1 X_1 + h2): Weierstrass preparation in X_1
/// followed by the shift X_1 -> X_1 - b_1/3. Needs p > 3.
pub fn depress_cubic(g: &Polynomial, precision: JetPrecision, seed: u64) -> Result<CubicDepressed> {
    let ring = g.ring().clone();
    let p = ring.modulus();
    if p.value() <= 3 {
        return Err(Error::UnsupportedCharacteristic(p.value(), "cubic depression needs 1/6"));
    }
    if ring.nvars() < 2 {
        return Err(Error::input("cubic depression needs at least two variables"));
    }
    if !g.free_of_var(0) {
        return Err(Error::input("the cubic remainder must not involve X_0"));
    }
    let cap = precision.validated(5)?;
    let found = g.ord()?;
    if found != 3 {
        return Err(Error::WrongOrder { expected: 3, found });
    }

    let linear = pivot_change(&g.initial_form()?, 1, 1, seed)?;
    let moved = linear.apply(g, Some(cap))?;
    let (unit_raw, b) = weierstrass_prepare(&moved, 1, 3, cap)?;
    let (b1, b2, b3) = (&b[0], &b[1], &b[2]);

    let inv3 = p.inv(3);
    let a = b1.scale(inv3);
    let b1sq = b1.mul(b1)?;
    let h1 = b2.sub(&b1sq.scale(inv3))?.truncated(cap);
    // h2 = b3 - b1 b2 / 3 + 2 b1^3 / 27.
    let h2 = b3
        .sub(&b1.mul(b2)?.scale(inv3))?
        .add(&b1sq.mul(b1)?.scale(p.mul(2, p.inv(27))))?
        .truncated(cap);

    let change = compose_with_pivot_shift(&linear, 1, &a)?;
    let unit = shift_only(&ring, 1, &a)?.apply(&unit_raw, Some(cap))?;

    debug_assert!(h1.is_zero() || h1.ord()? >= 2);
    debug_assert!(h2.is_zero() || h2.ord()? >= 3);
    debug_assert!(h1.free_of_var(0) && h1.free_of_var(1));
    debug_assert!(h2.free_of_var(0) && h2.free_of_var(1));

    let out = CubicDepressed { unit, h1, h2, change, precision: JetPrecision(cap) };
    debug_assert!(out.verify(g)?);
    Ok(out)
}

/// The change sending X -> linear(sigma(X)) where sigma subtracts `s` from
/// the pivot variable: X_i -> sum_j C_ij X_j - C_i,pivot * s.
fn compose_with_pivot_shift(
    linear: &LinearChange,
    pivot: usize,
    s: &Polynomial,
) -> Result<LinearChange> {
    let ring = linear.ring().clone();
    let p = ring.modulus();
    let shifts = (0..ring.nvars())
        .map(|i| s.scale(p.neg(linear.matrix()[i][pivot])))
        .collect();
    LinearChange::linear(ring, linear.matrix().to_vec())?.with_shifts(shifts)
}

/// Identity on every variable except pivot, which maps to X_pivot - s.
fn shift_only(ring: &Arc<Ring>, pivot: usize, s: &Polynomial) -> Result<LinearChange> {
    let mut shifts = vec![Polynomial::zero(ring.clone()); ring.nvars()];
    shifts[pivot] = s.neg();
    LinearChange::identity(ring.clone()).with_shifts(shifts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use crate::poly::{parse_polynomial, MonomialOrder};

    fn ring(p: u64) -> Arc<Ring> {
        Ring::with_names(&["X0", "X1", "X2"], PrimeModulus::new(p).unwrap(), MonomialOrder::Grevlex)
            .unwrap()
    }

    #[test]
    fn jet_inversion_is_exact_below_cap() {
        let r = ring(7);
        let u = parse_polynomial(&r, "2+X1+3*X0^2*X2").unwrap();
        let v = invert_unit_jet(&u, 9).unwrap();
        let prod = u.mul_trunc(&v, Some(9)).unwrap();
        assert_eq!(prod, Polynomial::one(r));
        assert!(invert_unit_jet(&parse_polynomial(&ring(7), "X0").unwrap(), 5).is_err());
    }

    #[test]
    fn pure_square_normalizes_trivially() {
        let r = ring(5);
        let f = parse_polynomial(&r, "X0^2").unwrap();
        let form = weierstrass_normalize_quadratic(&f, JetPrecision(10), 1).unwrap();
        assert!(form.g_rest.is_zero());
        assert_eq!(form.unit, Polynomial::one(r));
        assert_eq!(form.case_tag, QuadCase::OrdGe4);
        assert!(form.verify(&f).unwrap());
    }

    #[test]
    fn diagonal_plus_tail_passes_through() {
        let r = ring(7);
        let f = parse_polynomial(&r, "X0^2+X1^2+X2^3").unwrap();
        let form = weierstrass_normalize_quadratic(&f, JetPrecision(12), 1).unwrap();
        assert_eq!(form.g_rest, parse_polynomial(&r, "X1^2+X2^3").unwrap());
        assert_eq!(form.case_tag, QuadCase::Ord2);
        assert!(form.verify(&f).unwrap());
    }

    #[test]
    fn linear_terms_complete_the_square() {
        let r = ring(7);
        let f = parse_polynomial(&r, "X0^2+X0*X1+X2^2").unwrap();
        let form = weierstrass_normalize_quadratic(&f, JetPrecision(12), 1).unwrap();
        // (X0 + X1/2)^2 + X2^2 - X1^2/4 and -1/4 = 5 mod 7.
        assert_eq!(form.g_rest, parse_polynomial(&r, "5*X1^2+X2^2").unwrap());
        assert!(form.verify(&f).unwrap());
    }

    #[test]
    fn rank_deficient_square_requires_a_change() {
        let r = ring(5);
        let f = parse_polynomial(&r, "X0*X1").unwrap();
        let form = weierstrass_normalize_quadratic(&f, JetPrecision(8), 3).unwrap();
        assert!(form.verify(&f).unwrap());
        assert_eq!(form.case_tag, QuadCase::Ord2);
        // Determinism: the same seed reproduces the same change.
        let again = weierstrass_normalize_quadratic(&f, JetPrecision(8), 3).unwrap();
        assert_eq!(form.change, again.change);
        assert_eq!(form.g_rest, again.g_rest);
    }

    #[test]
    fn characteristic_two_is_refused() {
        let r = Ring::with_names(&["X0", "X1"], PrimeModulus::new(2).unwrap(), MonomialOrder::Grevlex)
            .unwrap();
        let f = parse_polynomial(&r, "X0^2+X1^2").unwrap();
        assert!(matches!(
            weierstrass_normalize_quadratic(&f, JetPrecision(8), 0),
            Err(Error::UnsupportedCharacteristic(2, _))
        ));
    }

    #[test]
    fn wrong_order_is_refused() {
        let r = ring(5);
        let f = parse_polynomial(&r, "X0^3").unwrap();
        assert!(matches!(
            weierstrass_normalize_quadratic(&f, JetPrecision(8), 0),
            Err(Error::WrongOrder { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn depression_kills_the_square_term() {
        let r = ring(7);
        let g = parse_polynomial(&r, "X1^3+3*X1^2*X2").unwrap();
        let out = depress_cubic(&g, JetPrecision(8), 1).unwrap();
        assert_eq!(out.h1, parse_polynomial(&r, "4*X2^2").unwrap());
        assert_eq!(out.h2, parse_polynomial(&r, "2*X2^3").unwrap());
        assert!(out.verify(&g).unwrap());
    }

    #[test]
    fn depression_rejects_small_characteristic_and_x0() {
        let r = ring(3);
        let g = parse_polynomial(&r, "X1^3").unwrap();
        assert!(matches!(
            depress_cubic(&g, JetPrecision(8), 0),
            Err(Error::UnsupportedCharacteristic(3, _))
        ));
        let r7 = ring(7);
        let bad = parse_polynomial(&r7, "X0*X1^2").unwrap();
        assert!(depress_cubic(&bad, JetPrecision(8), 0).is_err());
    }

    #[test]
    fn preparation_reconstructs_its_input() {
        let r = ring(7);
        let cap = 10;
        let h = parse_polynomial(&r, "2*X0^2+X0^2*X1+X0*X1^2+X1^4+X2^5").unwrap();
        let (unit, b) = weierstrass_prepare(&h, 0, 2, cap).unwrap();
        let x0 = Monomial::variable(3, 0, 1);
        let w = parse_polynomial(&r, "X0^2")
            .unwrap()
            .add(&b[0].mul_term(&x0, 1).unwrap())
            .unwrap()
            .add(&b[1])
            .unwrap();
        assert_eq!(unit.mul_trunc(&w, Some(cap)).unwrap(), h.truncated(cap));
        assert!(b[0].free_of_var(0) && b[1].free_of_var(0));
        assert_eq!(unit.constant_term(), 2);
    }
}
