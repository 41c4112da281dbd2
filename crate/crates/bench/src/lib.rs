//! Shared fixtures for the criterion benchmarks.

use std::sync::Arc;

use charp::ideal::IdealGens;
use charp::poly::{parse_polynomial, Polynomial, Ring};
use charp::{Monomial, MonomialIdeal, MonomialOrder, PrimeModulus};

fn ring(p: u64, vars: &[&str]) -> Arc<Ring> {
    Ring::with_names(vars, PrimeModulus::new(p).expect("prime"), MonomialOrder::Grevlex)
        .expect("ring")
}

/// The mixed quartic over F_2 used throughout the test corpus, together with
/// the coordinate ideal whose bracket powers drive the splitting checks.
pub fn char2_hypersurface() -> (Polynomial, IdealGens) {
    let r = ring(2, &["X", "Y", "Z", "W"]);
    let f = parse_polynomial(&r, "X^2+X*Y*Z*W+Y^3+Z^3+W^3").expect("poly");
    let gens = ["Y", "Z", "W"]
        .iter()
        .map(|s| parse_polynomial(&r, s).expect("poly"))
        .collect();
    (f, IdealGens::new(r, gens).expect("ideal"))
}

/// A symmetric quadric system over F_7 whose basis computation exercises
/// s-pair reduction without terminating immediately.
pub fn symmetric_quadrics() -> IdealGens {
    let r = ring(7, &["X", "Y", "Z"]);
    let gens = ["X^2+Y*Z", "Y^2+X*Z", "Z^2+X*Y"]
        .iter()
        .map(|s| parse_polynomial(&r, s).expect("poly"))
        .collect();
    IdealGens::new(r, gens).expect("ideal")
}

/// A dense reducend for normal-form benchmarks over the quadric basis.
pub fn dense_octic() -> Polynomial {
    let r = symmetric_quadrics().ring().clone();
    let linear = parse_polynomial(&r, "X+Y+Z").expect("poly");
    let mixed = parse_polynomial(&r, "X*Y+Y*Z+Z*X").expect("poly");
    let diag = parse_polynomial(&r, "X^2*Y^2*Z^2").expect("poly");
    linear
        .pow(8)
        .and_then(|a| a.add(&mixed.pow(3)?))
        .and_then(|a| a.add(&diag))
        .expect("octic")
}

/// A diagonal-plus-mixed hypersurface over F_5 for splitting benchmarks.
pub fn quintic_split_instance() -> (Polynomial, Polynomial) {
    let r = ring(5, &["X", "Y", "Z"]);
    let f = parse_polynomial(&r, "X^2+Y^3+Z^5").expect("poly");
    let c = parse_polynomial(&r, "Y*Z").expect("poly");
    (f, c)
}

/// A three-variable monomial ideal whose Newton polyhedron has interior
/// lattice points missing from the ideal itself.
pub fn closure_instance() -> MonomialIdeal {
    let r = ring(5, &["X", "Y", "Z"]);
    let gens = [[6, 0, 0], [0, 6, 0], [0, 0, 6], [1, 4, 1], [4, 0, 2], [0, 1, 5]]
        .iter()
        .map(|e| Monomial::new(e.to_vec()))
        .collect();
    MonomialIdeal::new(r, gens).expect("ideal")
}
