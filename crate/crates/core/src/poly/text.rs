//! Text form of polynomials.
//!
//! The grammar is deliberately small: terms are joined by `+` or `-`, a term
//! is a `*`-separated chain of integer factors and `name^exp` factors, and
//! whitespace never matters. `2*X0^3*X1` is a term; `0` is the zero
//! polynomial. Printing always emits the canonical descending term order, so
//! print-then-parse is the identity.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, Ring};

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vars = self.ring().vars();
        for (i, term) in self.terms().iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if term.coeff != 1 || term.mono.is_one() {
                factors.push(term.coeff.to_string());
            }
            for (v, &e) in term.mono.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars.name(v).to_string()),
                    _ => factors.push(format!("{}^{}", vars.name(v), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

struct Lexer {
    toks: Vec<(Tok, usize)>, // token and its 1-based starting column
    pos: usize,
    end_col: usize,
}

fn lex(src: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                toks.push((Tok::Plus, col));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, col));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, col));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let value = text
                    .parse::<u64>()
                    .map_err(|_| Error::parse(1, col, format!("integer {text} out of range")))?;
                toks.push((Tok::Int(value), col));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => return Err(Error::parse(1, col, format!("unexpected character {other:?}"))),
        }
    }
    Ok(Lexer { toks, pos: 0, end_col: chars.len() + 1 })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }
}

/// Parses a polynomial in the ring's variables. Columns in errors are
/// 1-based offsets into `src`; callers that know a line number can shift the
/// reported position.
pub fn parse_polynomial(ring: &Arc<Ring>, src: &str) -> Result<Polynomial> {
    let mut lx = lex(src)?;
    if lx.peek().is_none() {
        return Err(Error::parse(1, lx.end_col, "empty polynomial"));
    }
    let mut pairs: Vec<(Monomial, u64)> = Vec::new();
    let mut negate = false;
    // Optional leading sign.
    match lx.peek() {
        Some(Tok::Minus) => {
            negate = true;
            lx.bump();
        }
        Some(Tok::Plus) => {
            lx.bump();
        }
        _ => {}
    }
    loop {
        let (mono, coeff) = parse_term(ring, &mut lx)?;
        let coeff = if negate { ring.modulus().neg(coeff) } else { coeff };
        pairs.push((mono, coeff));
        match lx.bump() {
            None => break,
            Some(Tok::Plus) => negate = false,
            Some(Tok::Minus) => negate = true,
            Some(_) => {
                return Err(Error::parse(1, lx.col().saturating_sub(1), "expected + or - between terms"))
            }
        }
    }
    Ok(Polynomial::from_raw(ring.clone(), pairs))
}

fn parse_term(ring: &Arc<Ring>, lx: &mut Lexer) -> Result<(Monomial, u64)> {
    let p = ring.modulus();
    let mut coeff: u64 = 1;
    let mut exps = vec![0u32; ring.nvars()];
    loop {
        let col = lx.col();
        match lx.bump() {
            Some(Tok::Int(n)) => {
                if n >= p.value() {
                    return Err(Error::parse(
                        1,
                        col,
                        format!("coefficient {n} out of range for p = {}", p.value()),
                    ));
                }
                coeff = p.mul(coeff, n);
            }
            Some(Tok::Ident(name)) => {
                let var = ring
                    .vars()
                    .index_of(&name)
                    .ok_or_else(|| Error::parse(1, col, format!("unknown identifier {name:?}")))?;
                let mut exp: u32 = 1;
                if lx.peek() == Some(&Tok::Caret) {
                    lx.bump();
                    let ecol = lx.col();
                    match lx.bump() {
                        Some(Tok::Int(n)) => {
                            exp = u32::try_from(n)
                                .map_err(|_| Error::parse(1, ecol, format!("bad exponent {n}")))?;
                        }
                        _ => return Err(Error::parse(1, ecol, "expected an integer exponent after ^")),
                    }
                }
                exps[var] = exps[var]
                    .checked_add(exp)
                    .ok_or_else(|| Error::parse(1, col, "exponent overflow in term"))?;
            }
            _ => return Err(Error::parse(1, col, "expected a coefficient or a variable")),
        }
        if lx.peek() == Some(&Tok::Star) {
            lx.bump();
            continue;
        }
        return Ok((Monomial::new(exps), coeff));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeModulus;
    use crate::poly::MonomialOrder;

    fn ring(p: u64) -> Arc<Ring> {
        Ring::with_names(&["X0", "X1", "X2"], PrimeModulus::new(p).unwrap(), MonomialOrder::Grevlex)
            .unwrap()
    }

    #[test]
    fn parses_the_documented_shapes() {
        let r = ring(7);
        let f = parse_polynomial(&r, "2*X0^3*X1 + X2 - 3").unwrap();
        assert_eq!(f.to_string(), "2*X0^3*X1+X2+4");
        assert_eq!(parse_polynomial(&r, "0").unwrap(), Polynomial::zero(r.clone()));
        // Whitespace-insensitive, repeated variables multiply out.
        assert_eq!(
            parse_polynomial(&r, "X0 * X0 ^ 2").unwrap(),
            parse_polynomial(&r, "X0^3").unwrap()
        );
    }

    #[test]
    fn print_parse_roundtrip() {
        let r = ring(5);
        for src in ["X0^2+X1^2+X2^3", "4*X0*X1*X2+3*X2^2+1", "0", "X0^14", "2"] {
            let f = parse_polynomial(&r, src).unwrap();
            let g = parse_polynomial(&r, &f.to_string()).unwrap();
            assert_eq!(f, g, "{src}");
        }
    }

    #[test]
    fn rejects_bad_inputs_with_positions() {
        let r = ring(3);
        let unknown = parse_polynomial(&r, "X0+Q^2");
        match unknown {
            Err(Error::Parse { line: 1, col: 4, msg }) => assert!(msg.contains("unknown identifier")),
            other => panic!("expected parse error, got {other:?}"),
        }
        let big_coeff = parse_polynomial(&r, "5*X0");
        match big_coeff {
            Err(Error::Parse { col: 1, msg, .. }) => assert!(msg.contains("out of range")),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_polynomial(&r, "X0^").is_err());
        assert!(parse_polynomial(&r, "X0++X1").is_err());
        assert!(parse_polynomial(&r, "").is_err());
        assert!(parse_polynomial(&r, "X0 X1").is_err());
    }

    #[test]
    fn minus_folds_into_residues() {
        let r = ring(3);
        let f = parse_polynomial(&r, "-X0+2*X1-2").unwrap();
        assert_eq!(f.to_string(), "2*X0+2*X1+1");
    }
}
