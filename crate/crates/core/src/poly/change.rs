//! Invertible coordinate changes, possibly with polynomial shifts.
//!
//! A change substitutes `X_i -> sum_j matrix[i][j] X_j + shifts[i]` where the
//! matrix is invertible over F_p and every shift has order >= 1, so the
//! origin is fixed and the order of a series is preserved.

use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearChange {
    ring: Arc<Ring>,
    matrix: Vec<Vec<u64>>,
    shifts: Vec<Polynomial>,
}

impl LinearChange {
    pub fn identity(ring: Arc<Ring>) -> Self {
        let n = ring.nvars();
        let matrix =
            (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
        let shifts = vec![Polynomial::zero(ring.clone()); n];
        LinearChange { ring, matrix, shifts }
    }

    /// Pure linear change. The matrix must be square and invertible mod p.
    pub fn linear(ring: Arc<Ring>, matrix: Vec<Vec<u64>>) -> Result<Self> {
        let n = ring.nvars();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::input("change matrix has the wrong shape"));
        }
        let p = ring.modulus();
        let matrix: Vec<Vec<u64>> =
            matrix.into_iter().map(|row| row.into_iter().map(|c| p.reduce(c)).collect()).collect();
        if !is_invertible(&matrix, p.value()) {
            return Err(Error::input("change matrix is singular"));
        }
        let shifts = vec![Polynomial::zero(ring.clone()); n];
        Ok(LinearChange { ring, matrix, shifts })
    }

    /// Attaches polynomial shifts; each must be zero or of order >= 1.
    pub fn with_shifts(mut self, shifts: Vec<Polynomial>) -> Result<Self> {
        if shifts.len() != self.ring.nvars() {
            return Err(Error::input("one shift per variable required"));
        }
        for s in &shifts {
            if !crate::poly::same_ring(s.ring(), &self.ring) {
                return Err(Error::MixedContext);
            }
            if !s.is_zero() && s.ord()? == 0 {
                return Err(Error::input("shifts must have order >= 1"));
            }
        }
        self.shifts = shifts;
        Ok(self)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn shifts(&self) -> &[Polynomial] {
        &self.shifts
    }

    /// The substitution target for variable i.
    pub fn image_of(&self, var: usize) -> Result<Polynomial> {
        let mut img = self.shifts[var].clone();
        for (j, &c) in self.matrix[var].iter().enumerate() {
            if c != 0 {
                img = img.add(&Polynomial::variable(self.ring.clone(), j).scale(c))?;
            }
        }
        Ok(img)
    }

    /// f after the substitution, truncated below `cap` when given. The
    /// truncation is applied while powers are formed, not only at the end.
    pub fn apply(&self, f: &Polynomial, cap: Option<u64>) -> Result<Polynomial> {
        if !crate::poly::same_ring(f.ring(), &self.ring) {
            return Err(Error::MixedContext);
        }
        let images: Vec<Polynomial> =
            (0..self.ring.nvars()).map(|v| self.image_of(v)).collect::<Result<_>>()?;
        let mut acc = Polynomial::zero(self.ring.clone());
        for term in f.terms() {
            let mut prod = Polynomial::constant(self.ring.clone(), term.coeff);
            for (v, &e) in term.mono.exps().iter().enumerate() {
                if e > 0 {
                    prod = prod.mul_trunc(&images[v].pow_trunc(e as u64, cap)?, cap)?;
                    if prod.is_zero() {
                        break;
                    }
                }
            }
            acc = acc.add(&prod)?;
        }
        Ok(match cap {
            Some(cap) => acc.truncated(cap),
            None => acc,
        })
    }
}

// Serialized as plain data (matrix plus shift strings) so that certificates
// stay readable and re-parseable.
impl Serialize for LinearChange {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = ser.serialize_struct("LinearChange", 2)?;
        s.serialize_field("matrix", &self.matrix)?;
        let shifts: Vec<String> = self.shifts.iter().map(|p| p.to_string()).collect();
        s.serialize_field("shifts", &shifts)?;
        s.end()
    }
}

fn is_invertible(matrix: &[Vec<u64>], p: u64) -> bool {
    let n = matrix.len();
    let mut m: Vec<Vec<u64>> = matrix.to_vec();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] % p != 0) else {
            return false;
        };
        m.swap(col, pivot);
        let inv = mod_inv(m[col][col], p);
        for r in col + 1..n {
            let factor = m[r][col] % p;
            if factor == 0 {
                continue;
            }
            let scale = factor * inv % p;
            for c in col..n {
                m[r][c] = (m[r][c] + (p - scale * m[col][c] % p)) % p;
            }
        }
    }
    true
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime and a nonzero mod p.
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Deterministic pseudo-random stream for coordinate searches.
pub(crate) struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        (self.next_u64() >> 24) % bound
    }
}

/// Value of a polynomial at an integer point, mod p.
fn eval_at(f: &Polynomial, point: &[u64]) -> u64 {
    let p = f.ring().modulus();
    let mut total = 0u64;
    for term in f.terms() {
        let mut v = term.coeff;
        for (i, &e) in term.mono.exps().iter().enumerate() {
            if e > 0 {
                v = p.mul(v, p.pow(point[i], e as u64));
            }
        }
        total = p.add(total, v);
    }
    total
}

/// Searches for an invertible change, supported on the variable block
/// `block_start..nvars`, that makes the coefficient of `X_pivot^e` in the
/// initial form nonzero. Tries the identity first, then seeded candidates:
/// the pivot column is a random block vector v with form(v) != 0, completed
/// to an invertible matrix by standard basis vectors.
pub(crate) fn pivot_change(
    form: &Polynomial,
    pivot: usize,
    block_start: usize,
    seed: u64,
) -> Result<LinearChange> {
    let ring = form.ring().clone();
    let p = ring.modulus();
    let n = ring.nvars();
    debug_assert!(pivot >= block_start);

    let mut candidate = vec![0u64; n];
    candidate[pivot] = 1;
    if eval_at(form, &candidate) != 0 {
        return Ok(LinearChange::identity(ring));
    }

    let mut rng = Lcg::new(seed ^ (pivot as u64) << 8);
    for _ in 0..4096 {
        let mut v = vec![0u64; n];
        for entry in v.iter_mut().take(n).skip(block_start) {
            *entry = rng.below(p.value());
        }
        if v.iter().all(|&c| c == 0) || eval_at(form, &v) == 0 {
            continue;
        }
        if let Some(change) = complete_to_change(&ring, &v, pivot, block_start) {
            return Ok(change);
        }
    }
    Err(Error::input(
        "no coordinate change found to realize the pivot coefficient (is the form zero?)",
    ))
}

/// Builds a change whose pivot column is v, identity outside the block.
fn complete_to_change(
    ring: &Arc<Ring>,
    v: &[u64],
    pivot: usize,
    block_start: usize,
) -> Option<LinearChange> {
    let n = ring.nvars();
    let p = ring.modulus().value();
    let block: Vec<usize> = (block_start..n).collect();

    // Greedily extend {v restricted to block} by standard basis vectors.
    let mut basis: Vec<Vec<u64>> = vec![block.iter().map(|&i| v[i]).collect()];
    for bi in 0..block.len() {
        if basis.len() == block.len() {
            break;
        }
        let mut e = vec![0u64; block.len()];
        e[bi] = 1;
        let mut trial = basis.clone();
        trial.push(e);
        if rank(&trial, p) == trial.len() {
            basis = trial;
        }
    }
    if basis.len() != block.len() {
        return None;
    }

    // Columns of the block submatrix: pivot gets v, the rest in block order.
    let mut matrix: Vec<Vec<u64>> =
        (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let mut rest = basis.iter().skip(1);
    for &col in &block {
        let source: &Vec<u64> = if col == pivot { &basis[0] } else { rest.next().unwrap() };
        for (bi, &row) in block.iter().enumerate() {
            matrix[row][col] = source[bi];
        }
    }
    LinearChange::linear(ring.clone(), matrix).ok()
}

fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..m.len()).find(|&i| m[i][col] % p != 0) else { continue };
        m.swap(r, pivot);
        let inv = mod_inv(m[r][col], p);
        for i in 0..m.len() {
            if i != r && m[i][col] % p != 0 {
                let scale = m[i][col] * inv % p;
                for c in 0..ncols {
                    m[i][c] = (m[i][c] + (p - scale * m[r][c] % p)) % p;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use crate::poly::{parse_polynomial, Monomial, MonomialOrder};

    fn ring(p: u64) -> Arc<Ring> {
        Ring::with_names(&["X0", "X1", "X2"], PrimeModulus::new(p).unwrap(), MonomialOrder::Grevlex)
            .unwrap()
    }

    #[test]
    fn identity_change_is_truncation() {
        let r = ring(5);
        let f = parse_polynomial(&r, "X0^2+X1^5+2*X2^7").unwrap();
        let id = LinearChange::identity(r);
        assert_eq!(id.apply(&f, None).unwrap(), f);
        assert_eq!(id.apply(&f, Some(6)).unwrap(), f.truncated(6));
    }

    #[test]
    fn singular_matrices_are_rejected() {
        let r = ring(5);
        let singular = vec![vec![1, 2, 0], vec![2, 4, 0], vec![0, 0, 1]];
        assert!(LinearChange::linear(r, singular).is_err());
    }

    #[test]
    fn substitution_matches_hand_expansion() {
        let r = ring(7);
        // X0 -> X0 + X1, X1 -> X1, X2 -> X2 applied to X0^2.
        let m = vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let ch = LinearChange::linear(r.clone(), m).unwrap();
        let f = parse_polynomial(&r, "X0^2").unwrap();
        assert_eq!(ch.apply(&f, None).unwrap(), parse_polynomial(&r, "X0^2+2*X0*X1+X1^2").unwrap());
    }

    #[test]
    fn shift_substitution_expands() {
        let r = ring(7);
        let s = parse_polynomial(&r, "X1^2").unwrap();
        let ch = LinearChange::identity(r.clone())
            .with_shifts(vec![
                s,
                Polynomial::zero(r.clone()),
                Polynomial::zero(r.clone()),
            ])
            .unwrap();
        let f = parse_polynomial(&r, "X0^2+X2").unwrap();
        // (X0 + X1^2)^2 + X2
        assert_eq!(
            ch.apply(&f, None).unwrap(),
            parse_polynomial(&r, "X0^2+2*X0*X1^2+X1^4+X2").unwrap()
        );
    }

    #[test]
    fn constant_shifts_are_rejected() {
        let r = ring(7);
        let c = Polynomial::constant(r.clone(), 1);
        let res = LinearChange::identity(r.clone()).with_shifts(vec![
            c,
            Polynomial::zero(r.clone()),
            Polynomial::zero(r),
        ]);
        assert!(res.is_err());
    }

    #[test]
    fn pivot_search_prefers_identity() {
        let r = ring(5);
        let q = parse_polynomial(&r, "X0^2+X1*X2").unwrap();
        let ch = pivot_change(&q, 0, 0, 42).unwrap();
        assert_eq!(ch, LinearChange::identity(r));
    }

    #[test]
    fn pivot_search_fixes_missing_square() {
        let r = ring(5);
        // No X0^2 term: a change is required, and must be deterministic.
        let q = parse_polynomial(&r, "X0*X1").unwrap();
        let a = pivot_change(&q, 0, 0, 42).unwrap();
        let b = pivot_change(&q, 0, 0, 42).unwrap();
        assert_eq!(a, b);
        let moved = a.apply(&q, None).unwrap();
        let sq = Monomial::variable(3, 0, 2);
        assert_ne!(moved.coeff_of(&sq), 0);
    }

    #[test]
    fn pivot_search_respects_blocks() {
        let r = ring(7);
        let q = parse_polynomial(&r, "X1*X2").unwrap();
        let ch = pivot_change(&q, 1, 1, 7).unwrap();
        // X0 must stay fixed.
        assert_eq!(ch.matrix()[0], vec![1, 0, 0]);
        assert_eq!(ch.matrix()[1][0], 0);
        assert_eq!(ch.matrix()[2][0], 0);
        let moved = ch.apply(&q, None).unwrap();
        assert_ne!(moved.coeff_of(&Monomial::variable(3, 1, 2)), 0);
    }
}
