//! Exact computational algebra over small prime fields.
//!
//! Everything here is exact: arithmetic is done in `F_p` (or in arbitrary
//! precision integers for the Newton polyhedron work), and every "yes" answer
//! is backed by a certificate that can be replayed independently. The crate
//! covers three areas:
//!
//! * Frobenius-theoretic singularity tests for hypersurfaces: F-purity via
//!   the `f^(p-1)` membership criterion, splitting witnesses for strong
//!   F-regularity, and bounded tight-closure evidence.
//! * Groebner machinery over `F_p` used as the decision kernel for ideal
//!   membership in hypersurface quotients.
//! * Monomial filtration invariants: integral closures via Newton polyhedra,
//!   reduction numbers, Hilbert numerators and a-invariants.

pub mod error;
pub mod field;
pub mod filtration;
pub mod fsing;
pub mod groebner;
pub mod ideal;
pub mod poly;

pub use error::{Error, Result};
pub use field::{base_p_digits, binom_mod_p, multinom_mod_p, BasePDigits, FrobeniusExponent, PrimeModulus};
pub use ideal::{IdealGens, MonomialIdeal, QuotientCtx};
pub use poly::{JetPrecision, LinearChange, Monomial, MonomialOrder, Polynomial, QuadraticJetForm, Ring, VarSet};
