//! Certificate replay: walks any JSON document, finds embedded certificate
//! objects by their "kind" tag, and re-derives each claim from scratch
//! using only the data recorded in the certificate.

use std::sync::Arc;

use charp::fsing::{
    coefficient_by_enumeration, tc_certificate, verify_split_certificate, witness_coefficient,
    witness_model, SplitCertificate, SurvivingTerm, WitnessCase,
};
use charp::groebner::{quotient_membership, MembershipVerdict};
use charp::ideal::IdealGens;
use charp::poly::{parse_polynomial, MonomialOrder, Polynomial, Ring};
use charp::{Error, PrimeModulus, QuotientCtx, Result};
use serde::Serialize;
use serde_json::Value;

use crate::report::{EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS};

const KNOWN_KINDS: [&str; 4] = ["split", "tight_closure", "membership", "witness"];

#[derive(Debug, Clone, Serialize)]
pub struct ReplayedCert {
    pub location: String,
    pub kind: String,
    pub valid: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReplayReport {
    pub certificates: Vec<ReplayedCert>,
}

impl ReplayReport {
    pub fn exit_code(&self) -> i32 {
        if self.certificates.is_empty() {
            EXIT_INCONCLUSIVE
        } else if self.certificates.iter().any(|c| !c.valid) {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }

    pub fn render_text(&self) -> String {
        if self.certificates.is_empty() {
            return "no certificates found".to_string();
        }
        let mut out = String::new();
        for c in &self.certificates {
            let label = if c.valid { "VALID  " } else { "INVALID" };
            out.push_str(&format!("{label} {:<14} {}  {}\n", c.kind, c.location, c.detail));
        }
        let good = self.certificates.iter().filter(|c| c.valid).count();
        out.push_str(&format!("replayed: {good}/{} valid\n", self.certificates.len()));
        out
    }
}

/// Replays every recognized certificate in the document.
pub fn replay_value(root: &Value) -> ReplayReport {
    let mut found = Vec::new();
    collect(root, "$".to_string(), &mut found);
    let certificates = found
        .into_iter()
        .map(|(location, kind, value)| {
            let (valid, detail) = match replay_one(&kind, value) {
                Ok(pair) => pair,
                Err(e) => (false, format!("replay error: {e}")),
            };
            ReplayedCert { location, kind, valid, detail }
        })
        .collect();
    ReplayReport { certificates }
}

fn collect<'a>(value: &'a Value, path: String, out: &mut Vec<(String, String, &'a Value)>) {
    match value {
        Value::Object(map) => {
            if let Some(kind) = map.get("kind").and_then(Value::as_str) {
                if KNOWN_KINDS.contains(&kind) {
                    out.push((path.clone(), kind.to_string(), value));
                }
            }
            for (k, v) in map {
                collect(v, format!("{path}.{k}"), out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                collect(v, format!("{path}[{i}]"), out);
            }
        }
        _ => {}
    }
}

fn replay_one(kind: &str, value: &Value) -> Result<(bool, String)> {
    match kind {
        "split" => replay_split(value),
        "tight_closure" => replay_tight_closure(value),
        "membership" => replay_membership(value),
        "witness" => replay_witness(value),
        other => Err(Error::input(format!("unknown certificate kind {other:?}"))),
    }
}

fn field<'a>(value: &'a Value, name: &str) -> Result<&'a Value> {
    value.get(name).ok_or_else(|| Error::input(format!("certificate lacks field {name:?}")))
}

fn str_field(value: &Value, name: &str) -> Result<String> {
    field(value, name)?
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| Error::input(format!("field {name:?} is not a string")))
}

fn u64_field(value: &Value, name: &str) -> Result<u64> {
    field(value, name)?
        .as_u64()
        .ok_or_else(|| Error::input(format!("field {name:?} is not an unsigned integer")))
}

fn bool_field(value: &Value, name: &str) -> Result<bool> {
    field(value, name)?
        .as_bool()
        .ok_or_else(|| Error::input(format!("field {name:?} is not a boolean")))
}

fn string_list(value: &Value, name: &str) -> Result<Vec<String>> {
    let items = field(value, name)?
        .as_array()
        .ok_or_else(|| Error::input(format!("field {name:?} is not an array")))?;
    items
        .iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::input(format!("field {name:?} holds a non-string entry")))
        })
        .collect()
}

fn ring_from(value: &Value) -> Result<Arc<Ring>> {
    let decl = field(value, "ring")?;
    let p = PrimeModulus::new(u64_field(decl, "p")?)?;
    let vars = string_list(decl, "vars")?;
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let order = match str_field(decl, "order")?.as_str() {
        "lex" => MonomialOrder::Lex,
        "grevlex" => MonomialOrder::Grevlex,
        other => return Err(Error::input(format!("unknown monomial order {other:?}"))),
    };
    Ring::with_names(&refs, p, order)
}

fn parse_many(ring: &Arc<Ring>, texts: &[String]) -> Result<Vec<Polynomial>> {
    texts.iter().map(|t| parse_polynomial(ring, t)).collect()
}

fn ctx_from(ring: &Arc<Ring>, moduli: &[String]) -> Result<QuotientCtx> {
    if moduli.is_empty() {
        Ok(QuotientCtx::ambient(ring.clone()))
    } else {
        QuotientCtx::new(ring.clone(), IdealGens::new(ring.clone(), parse_many(ring, moduli)?)?)
    }
}

fn verdict_from(ring: &Arc<Ring>, value: &Value) -> Result<MembershipVerdict> {
    let combination_items = field(value, "combination")?
        .as_array()
        .ok_or_else(|| Error::input("field \"combination\" is not an array"))?;
    let mut combination = Vec::new();
    for item in combination_items {
        let pair = item
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::input("combination entries must be [basis, quotient] pairs"))?;
        let basis = pair[0].as_str().ok_or_else(|| Error::input("basis must be a string"))?;
        let quotient = pair[1].as_str().ok_or_else(|| Error::input("quotient must be a string"))?;
        combination.push((basis.to_string(), quotient.to_string()));
    }
    Ok(MembershipVerdict {
        is_member: bool_field(value, "is_member")?,
        remainder: parse_polynomial(ring, &str_field(value, "remainder")?)?,
        combination,
    })
}

fn replay_split(value: &Value) -> Result<(bool, String)> {
    let ring = ring_from(value)?;
    let f = parse_polynomial(&ring, &str_field(value, "f")?)?;
    let c = parse_polynomial(&ring, &str_field(value, "c")?)?;
    let witness = match field(value, "witness")? {
        Value::Null => None,
        w => {
            let exponents = field(w, "exponents")?
                .as_array()
                .ok_or_else(|| Error::input("witness exponents must be an array"))?
                .iter()
                .map(|v| {
                    v.as_u64()
                        .and_then(|x| u32::try_from(x).ok())
                        .ok_or_else(|| Error::input("witness exponent out of range"))
                })
                .collect::<Result<Vec<u32>>>()?;
            Some(SurvivingTerm {
                monomial: str_field(w, "monomial")?,
                exponents,
                coefficient: u64_field(w, "coefficient")?,
            })
        }
    };
    let cert = SplitCertificate {
        p: ring.modulus().value(),
        e: u32::try_from(u64_field(value, "e")?)
            .map_err(|_| Error::input("certificate level e out of range"))?,
        q: u64_field(value, "q")?,
        multiplier: str_field(value, "c")?,
        splits: bool_field(value, "splits")?,
        witness,
        regular_locus_attested: false,
        work_used: 0,
    };
    let ok = verify_split_certificate(&f, &c, &cert)?;
    let detail = if ok {
        format!("witness coefficient re-derived by enumeration at q = {}", cert.q)
    } else {
        "enumeration contradicts the recorded witness".to_string()
    };
    Ok((ok, detail))
}

fn replay_membership(value: &Value) -> Result<(bool, String)> {
    let ring = ring_from(value)?;
    let moduli = string_list(value, "moduli")?;
    let ideal_texts = string_list(value, "ideal")?;
    let element = parse_polynomial(&ring, &str_field(value, "element")?)?;
    let verdict = verdict_from(&ring, field(value, "verdict")?)?;
    if verdict.is_member != verdict.remainder.is_zero() {
        return Ok((false, "recorded verdict contradicts its own remainder".to_string()));
    }
    if !verdict.replay(&ring, &element)? {
        return Ok((false, "division identity does not reproduce the element".to_string()));
    }
    let ctx = ctx_from(&ring, &moduli)?;
    let ideal = IdealGens::new(ring.clone(), parse_many(&ring, &ideal_texts)?)?;
    let fresh = quotient_membership(&ctx, &ideal, &element)?;
    if fresh.is_member != verdict.is_member {
        return Ok((false, "fresh membership test disagrees with the record".to_string()));
    }
    let side = if verdict.is_member { "member" } else { "non-member" };
    Ok((true, format!("identity replayed and {side} verdict reproduced")))
}

fn replay_tight_closure(value: &Value) -> Result<(bool, String)> {
    let ring = ring_from(value)?;
    let moduli = string_list(value, "moduli")?;
    let ctx = ctx_from(&ring, &moduli)?;
    let cert = field(value, "certificate")?;
    let z = parse_polynomial(&ring, &str_field(cert, "element")?)?;
    let c = parse_polynomial(&ring, &str_field(cert, "multiplier")?)?;
    let ideal_texts = string_list(cert, "ideal")?;
    let ideal = IdealGens::new(ring.clone(), parse_many(&ring, &ideal_texts)?)?;
    let rows = field(cert, "rows")?
        .as_array()
        .ok_or_else(|| Error::input("certificate rows must be an array"))?;
    if rows.is_empty() {
        return Ok((false, "certificate has no sampled levels".to_string()));
    }
    let mut qs = Vec::new();
    for row in rows {
        qs.push(u64_field(row, "q")?);
    }
    for row in rows {
        let q = u64_field(row, "q")?;
        let recorded_member = bool_field(row, "is_member")?;
        let witness = verdict_from(&ring, field(row, "witness")?)?;
        if witness.is_member != recorded_member {
            return Ok((false, format!("row q = {q} contradicts its own witness")));
        }
        let target = c.mul(&z.pow(q)?)?;
        if !witness.replay(&ring, &target)? {
            return Ok((false, format!("row q = {q}: division identity fails")));
        }
    }
    let fresh = tc_certificate(
        &ctx,
        &ideal,
        &z,
        &c,
        bool_field(cert, "c_is_test_element")?,
        &qs,
    )?;
    let fresh_verdict = serde_json::to_value(&fresh.verdict).expect("verdict serializes");
    if &fresh_verdict != field(cert, "verdict")? {
        return Ok((false, "fresh run reaches a different verdict".to_string()));
    }
    for (row, fresh_row) in rows.iter().zip(&fresh.rows) {
        if bool_field(row, "is_member")? != fresh_row.is_member {
            return Ok((false, format!("fresh run disagrees at q = {}", fresh_row.q)));
        }
    }
    Ok((true, format!("all {} levels replayed and recomputed", rows.len())))
}

fn replay_witness(value: &Value) -> Result<(bool, String)> {
    let p = PrimeModulus::new(u64_field(value, "p")?)?;
    let w = field(value, "witness")?;
    let case_value = field(w, "case")?;
    let case = match str_field(case_value, "family")?.as_str() {
        "Quadratic" => WitnessCase::Quadratic {
            m: u64_field(case_value, "m")? as u32,
            e: u64_field(case_value, "e")? as u32,
        },
        "CubicMixed" => WitnessCase::CubicMixed { m: u64_field(case_value, "m")? as u32 },
        "CubicPure" => WitnessCase::CubicPure { n: u64_field(case_value, "n")? as u32 },
        other => return Err(Error::input(format!("unknown witness family {other:?}"))),
    };
    let recorded_coefficient = u64_field(w, "coefficient")?;
    let recorded_splits = bool_field(w, "splits")?;
    let fresh = witness_coefficient(p, case)?;
    if fresh.coefficient != recorded_coefficient || fresh.splits != recorded_splits {
        return Ok((false, "closed form no longer matches the record".to_string()));
    }
    let (_, f, c, target) = witness_model(p, case)?;
    let by_enum = coefficient_by_enumeration(
        &f,
        &c.terms()[0].mono,
        c.terms()[0].coeff,
        &target,
        fresh.q - 1,
    )?;
    if by_enum != recorded_coefficient {
        return Ok((false, "enumeration contradicts the recorded coefficient".to_string()));
    }
    Ok((true, format!("coefficient {recorded_coefficient} re-derived two ways")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::{RingDecl, DEFAULT_JET};
    use crate::report::{membership_json, tc_certificate_json, witness_json};
    use charp::poly::MonomialOrder;
    use serde_json::json;

    fn ring2(p: u64) -> Arc<Ring> {
        Ring::with_names(&["X", "Y"], PrimeModulus::new(p).unwrap(), MonomialOrder::Grevlex)
            .unwrap()
    }

    fn decl2(p: u64) -> RingDecl {
        RingDecl {
            p,
            vars: vec!["X".into(), "Y".into()],
            order: "grevlex".into(),
            jet: DEFAULT_JET,
        }
    }

    #[test]
    fn membership_certificate_survives_replay_and_rejects_tampering() {
        let ring = ring2(3);
        let ctx = QuotientCtx::ambient(ring.clone());
        let gens = vec![
            parse_polynomial(&ring, "X^2+Y").unwrap(),
            parse_polynomial(&ring, "Y^3").unwrap(),
        ];
        let ideal = IdealGens::new(ring.clone(), gens).unwrap();
        let member = parse_polynomial(&ring, "X^2*Y^2+Y^3+X^2+Y").unwrap();
        let verdict = quotient_membership(&ctx, &ideal, &member).unwrap();
        assert!(verdict.is_member);
        let ideal_texts: Vec<String> =
            ideal.gens().iter().map(|g| g.to_string()).collect();
        let cert =
            membership_json(&decl2(3), &[], &ideal_texts, &member.to_string(), &verdict);
        let report = replay_value(&json!({ "wrapped": [cert.clone()] }));
        assert_eq!(report.certificates.len(), 1);
        assert!(report.certificates[0].valid);
        assert_eq!(report.exit_code(), 0);

        let mut tampered = cert;
        tampered["element"] = json!("X");
        let report = replay_value(&tampered);
        assert!(!report.certificates[0].valid);
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn tight_closure_certificate_survives_replay_and_rejects_tampering() {
        let ring = ring2(3);
        let ctx = QuotientCtx::ambient(ring.clone());
        let ideal =
            IdealGens::new(ring.clone(), vec![parse_polynomial(&ring, "X").unwrap()]).unwrap();
        let z = parse_polynomial(&ring, "X").unwrap();
        let one = Polynomial::one(ring.clone());
        let cert = tc_certificate(&ctx, &ideal, &z, &one, false, &[3, 9]).unwrap();
        let json_cert = tc_certificate_json(&decl2(3), &[], &cert);
        let report = replay_value(&json_cert);
        assert_eq!(report.certificates.len(), 1);
        assert!(report.certificates[0].valid, "{}", report.certificates[0].detail);

        let mut tampered = json_cert;
        tampered["certificate"]["verdict"] = json!("NotInStar");
        let report = replay_value(&tampered);
        assert!(!report.certificates[0].valid);
    }

    #[test]
    fn witness_certificate_survives_replay_and_rejects_tampering() {
        let p = PrimeModulus::new(7).unwrap();
        let w = witness_coefficient(p, WitnessCase::CubicMixed { m: 2 }).unwrap();
        let cert = witness_json(7, &w);
        let report = replay_value(&cert);
        assert!(report.certificates[0].valid, "{}", report.certificates[0].detail);

        let mut tampered = cert;
        tampered["witness"]["coefficient"] = json!(1 + w.coefficient);
        let report = replay_value(&tampered);
        assert!(!report.certificates[0].valid);
    }

    #[test]
    fn unknown_kinds_and_empty_documents_are_inconclusive() {
        let report = replay_value(&json!({ "kind": "mystery", "data": [1, 2, 3] }));
        assert!(report.certificates.is_empty());
        assert_eq!(report.exit_code(), 2);
        assert!(report.render_text().contains("no certificates"));
    }

    #[test]
    fn malformed_certificates_are_invalid_not_fatal() {
        let report = replay_value(&json!({ "kind": "split", "q": 4 }));
        assert_eq!(report.certificates.len(), 1);
        assert!(!report.certificates[0].valid);
        assert!(report.certificates[0].detail.contains("replay error"));
        assert_eq!(report.exit_code(), 1);
    }
}
