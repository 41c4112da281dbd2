//! The input file grammar.
//!
//! A document is a ring header followed by named bindings:
//!
//! ```text
//! ring p=2 vars=X,Y,Z,W order=grevlex jet=12
//! f = X^2+X*Y*Z*W+Y^3+Z^3+W^3
//! I = Y, Z, W
//! ```
//!
//! A right-hand side with top-level commas is an ideal, otherwise a single
//! polynomial. Every error carries the 1-based line and column it points at.

use std::collections::BTreeMap;
use std::sync::Arc;

use charp::ideal::IdealGens;
use charp::poly::{parse_polynomial, MonomialOrder, Polynomial, Ring};
use charp::{Error, MonomialIdeal, PrimeModulus, Result};
use serde::Serialize;

pub const DEFAULT_JET: u64 = 12;

#[derive(Debug, Clone, Serialize)]
pub struct RingDecl {
    pub p: u64,
    pub vars: Vec<String>,
    pub order: String,
    pub jet: u64,
}

#[derive(Debug, Clone)]
pub enum Binding {
    Poly(Polynomial),
    Ideal(IdealGens),
}

#[derive(Debug, Clone)]
pub struct InputDoc {
    pub decl: RingDecl,
    pub ring: Arc<Ring>,
    pub jet: u64,
    bindings: BTreeMap<String, Binding>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Tokens of a header line together with their 1-based starting columns.
fn fields_with_columns(line: &str) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0usize;
    for (i, c) in line.chars().enumerate() {
        if c.is_whitespace() {
            if !current.is_empty() {
                out.push((std::mem::take(&mut current), start + 1));
            }
        } else {
            if current.is_empty() {
                start = i;
            }
            current.push(c);
        }
    }
    if !current.is_empty() {
        out.push((current, start + 1));
    }
    out
}

fn shift_parse_error(err: Error, line: usize, col_shift: usize) -> Error {
    match err {
        Error::Parse { col, msg, .. } => Error::Parse { line, col: col + col_shift, msg },
        other => other,
    }
}

fn parse_header(
    line: &str,
    lineno: usize,
    order_override: Option<MonomialOrder>,
    jet_override: Option<u64>,
) -> Result<(RingDecl, Arc<Ring>, u64)> {
    let fields = fields_with_columns(line);
    debug_assert_eq!(fields[0].0, "ring");
    let mut p: Option<(u64, usize)> = None;
    let mut vars: Option<(Vec<String>, usize)> = None;
    let mut order = MonomialOrder::Grevlex;
    let mut jet = DEFAULT_JET;
    for (field, col) in &fields[1..] {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| Error::parse(lineno, *col, format!("expected key=value, found {field:?}")))?;
        let vcol = col + key.len() + 1;
        match key {
            "p" => {
                let n = value
                    .parse::<u64>()
                    .map_err(|_| Error::parse(lineno, vcol, format!("bad characteristic {value:?}")))?;
                p = Some((n, vcol));
            }
            "vars" => {
                let names: Vec<String> = value.split(',').map(str::to_string).collect();
                for name in &names {
                    if !is_identifier(name) {
                        return Err(Error::parse(
                            lineno,
                            vcol,
                            format!("bad variable name {name:?}"),
                        ));
                    }
                }
                vars = Some((names, vcol));
            }
            "order" => {
                order = match value {
                    "lex" => MonomialOrder::Lex,
                    "grevlex" => MonomialOrder::Grevlex,
                    other => {
                        return Err(Error::parse(
                            lineno,
                            vcol,
                            format!("unknown order {other:?}, expected lex or grevlex"),
                        ))
                    }
                };
            }
            "jet" => {
                jet = value
                    .parse::<u64>()
                    .map_err(|_| Error::parse(lineno, vcol, format!("bad jet precision {value:?}")))?;
            }
            other => {
                return Err(Error::parse(lineno, *col, format!("unknown header key {other:?}")))
            }
        }
    }
    let (p, pcol) = p.ok_or_else(|| Error::parse(lineno, 1, "the header must set p=<prime>"))?;
    let (vars, vcol) =
        vars.ok_or_else(|| Error::parse(lineno, 1, "the header must set vars=<id,...>"))?;
    let modulus =
        PrimeModulus::new(p).map_err(|e| Error::parse(lineno, pcol, e.to_string()))?;
    let order = order_override.unwrap_or(order);
    let jet = jet_override.unwrap_or(jet);
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let ring = Ring::with_names(&refs, modulus, order)
        .map_err(|e| Error::parse(lineno, vcol, e.to_string()))?;
    let decl = RingDecl {
        p,
        vars,
        order: match order {
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::Grevlex => "grevlex".to_string(),
        },
        jet,
    };
    Ok((decl, ring, jet))
}

/// Parses a document. `order_override` and `jet_override` take precedence
/// over the header's own settings.
pub fn parse_input(
    text: &str,
    order_override: Option<MonomialOrder>,
    jet_override: Option<u64>,
) -> Result<InputDoc> {
    let mut doc: Option<InputDoc> = None;
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let first = fields_with_columns(line);
        if first[0].0 == "ring" {
            if doc.is_some() {
                return Err(Error::parse(lineno, first[0].1, "duplicate ring header"));
            }
            let (decl, ring, jet) =
                parse_header(line, lineno, order_override, jet_override)?;
            doc = Some(InputDoc { decl, ring, jet, bindings: BTreeMap::new() });
            continue;
        }
        let doc = doc
            .as_mut()
            .ok_or_else(|| Error::parse(lineno, 1, "the first line must be a ring header"))?;
        let eq = line
            .find('=')
            .ok_or_else(|| Error::parse(lineno, 1, "expected name = value"))?;
        let name = line[..eq].trim();
        if !is_identifier(name) {
            return Err(Error::parse(lineno, 1, format!("bad binding name {name:?}")));
        }
        if doc.bindings.contains_key(name) {
            return Err(Error::parse(lineno, 1, format!("duplicate binding {name:?}")));
        }
        let rhs = &line[eq + 1..];
        if rhs.trim().is_empty() {
            return Err(Error::parse(lineno, eq + 2, "empty right-hand side"));
        }
        // Column arithmetic below is in characters, matching the lexer.
        let rhs_shift = line[..eq + 1].chars().count();
        let binding = if rhs.contains(',') {
            let mut gens = Vec::new();
            let mut piece_shift = rhs_shift;
            for piece in rhs.split(',') {
                let poly = parse_polynomial(&doc.ring, piece)
                    .map_err(|e| shift_parse_error(e, lineno, piece_shift))?;
                gens.push(poly);
                piece_shift += piece.chars().count() + 1;
            }
            Binding::Ideal(IdealGens::new(doc.ring.clone(), gens)?)
        } else {
            let poly = parse_polynomial(&doc.ring, rhs)
                .map_err(|e| shift_parse_error(e, lineno, rhs_shift))?;
            Binding::Poly(poly)
        };
        doc.bindings.insert(name.to_string(), binding);
    }
    doc.ok_or_else(|| Error::input("empty input: expected a ring header"))
}

impl InputDoc {
    pub fn names(&self) -> Vec<&str> {
        self.bindings.keys().map(String::as_str).collect()
    }

    pub fn get(&self, name: &str) -> Result<&Binding> {
        self.bindings.get(name).ok_or_else(|| {
            Error::input(format!(
                "no binding named {name:?}; available: {}",
                self.names().join(", ")
            ))
        })
    }

    pub fn poly(&self, name: &str) -> Result<Polynomial> {
        match self.get(name)? {
            Binding::Poly(f) => Ok(f.clone()),
            Binding::Ideal(_) => {
                Err(Error::input(format!("{name:?} is an ideal, expected a polynomial")))
            }
        }
    }

    pub fn ideal(&self, name: &str) -> Result<IdealGens> {
        match self.get(name)? {
            Binding::Ideal(i) => Ok(i.clone()),
            Binding::Poly(f) => IdealGens::new(self.ring.clone(), vec![f.clone()]),
        }
    }

    pub fn monomial_ideal(&self, name: &str) -> Result<MonomialIdeal> {
        self.ideal(name)?.to_monomial_ideal()
    }

    /// Resolves a command-line polynomial argument: a literal in the ring's
    /// variables, with bound names accepted as a fallback.
    pub fn resolve_poly(&self, src: &str) -> Result<Polynomial> {
        match parse_polynomial(&self.ring, src) {
            Ok(f) => Ok(f),
            Err(parse_err) => {
                if is_identifier(src.trim()) {
                    if let Ok(f) = self.poly(src.trim()) {
                        return Ok(f);
                    }
                }
                Err(parse_err)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "ring p=2 vars=X,Y,Z,W\nf = X^2+X*Y*Z*W+Y^3+Z^3+W^3\nI = Y, Z, W\n";

    #[test]
    fn parses_the_running_example() {
        let doc = parse_input(EXAMPLE, None, None).unwrap();
        assert_eq!(doc.decl.p, 2);
        assert_eq!(doc.decl.vars, vec!["X", "Y", "Z", "W"]);
        assert_eq!(doc.decl.order, "grevlex");
        assert_eq!(doc.jet, DEFAULT_JET);
        let f = doc.poly("f").unwrap();
        assert_eq!(f.terms().len(), 5);
        let i = doc.ideal("I").unwrap();
        assert_eq!(i.gens().len(), 3);
        assert!(doc.monomial_ideal("I").is_ok());
        assert!(doc.poly("I").is_err());
        assert!(doc.poly("g").is_err());
    }

    #[test]
    fn zero_binding_parses() {
        let doc = parse_input("ring p=5 vars=X,Y\ng = 0\n", None, None).unwrap();
        assert!(doc.poly("g").unwrap().is_zero());
    }

    #[test]
    fn single_polynomial_coerces_to_a_principal_ideal() {
        let doc = parse_input("ring p=5 vars=X,Y\nf = X^2+Y\n", None, None).unwrap();
        assert_eq!(doc.ideal("f").unwrap().gens().len(), 1);
    }

    #[test]
    fn oversized_coefficient_is_rejected_with_position() {
        let err = parse_input("ring p=5 vars=X,Y\nf = X^2+7*Y\n", None, None).unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 2);
                // Column points at the 7 in the original line.
                assert_eq!(col, 9);
            }
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn ideal_piece_errors_shift_by_piece_offset() {
        let err = parse_input("ring p=5 vars=X,Y\nI = X, Q\n", None, None).unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 2);
                assert_eq!(col, 8);
            }
            other => panic!("expected a parse error, got {other}"),
        }
    }

    #[test]
    fn header_validation() {
        assert!(parse_input("ring p=6 vars=X", None, None).is_err());
        assert!(parse_input("ring vars=X", None, None).is_err());
        assert!(parse_input("ring p=5", None, None).is_err());
        assert!(parse_input("ring p=5 vars=X order=weird", None, None).is_err());
        assert!(parse_input("f = X", None, None).is_err());
        assert!(parse_input("", None, None).is_err());
        assert!(parse_input("ring p=5 vars=X\nring p=7 vars=Y", None, None).is_err());
        assert!(parse_input("ring p=5 vars=X\nf = X\nf = X^2", None, None).is_err());
    }

    #[test]
    fn overrides_beat_the_header() {
        let doc =
            parse_input("ring p=5 vars=X,Y order=lex jet=4", Some(MonomialOrder::Grevlex), Some(9))
                .unwrap();
        assert_eq!(doc.decl.order, "grevlex");
        assert_eq!(doc.jet, 9);
    }

    #[test]
    fn resolve_prefers_ring_variables_over_bindings() {
        let doc = parse_input("ring p=5 vars=X,Y\nX0 = Y\nc = X+Y\n", None, None).unwrap();
        // A literal that parses wins.
        let x = doc.resolve_poly("X").unwrap();
        assert_eq!(x.to_string(), "X");
        // A non-variable identifier falls back to its binding.
        let c = doc.resolve_poly("c").unwrap();
        assert_eq!(c.to_string(), "X+Y");
        assert!(doc.resolve_poly("nope").is_err());
    }
}
