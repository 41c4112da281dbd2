//! Report shapes shared by the subcommands: a versioned JSON envelope,
//! PASS/FAIL/INCONCLUSIVE statuses with their exit codes, and the
//! replayable certificate payloads.

use charp::fsing::{SplitCertificate, TightClosureCertificate};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::RingDecl;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => EXIT_PASS,
            Status::Fail => EXIT_FAIL,
            Status::Inconclusive => EXIT_INCONCLUSIVE,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteEntry {
    pub id: String,
    pub status: Status,
    pub detail: String,
    pub runtime_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub overall: Status,
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn from_entries(mut entries: Vec<SuiteEntry>) -> SuiteReport {
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let overall = if entries.iter().any(|e| e.status == Status::Fail) {
            Status::Fail
        } else if entries.iter().any(|e| e.status == Status::Inconclusive) {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        SuiteReport { schema: SCHEMA_VERSION, overall, entries }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{:<14} {:<22} {:>7} ms  {}\n",
                e.status.label(),
                e.id,
                e.runtime_ms,
                e.detail
            ));
        }
        out.push_str(&format!("overall: {}\n", self.overall.label()));
        out
    }
}

/// Wraps a command payload in the versioned envelope.
pub fn envelope(command: &str, payload: Value) -> Value {
    let mut doc = json!({ "schema": SCHEMA_VERSION, "command": command });
    if let (Value::Object(doc), Value::Object(payload)) = (&mut doc, payload) {
        for (k, v) in payload {
            doc.insert(k, v);
        }
    }
    doc
}

pub fn ring_json(decl: &RingDecl) -> Value {
    json!({ "p": decl.p, "vars": decl.vars, "order": decl.order })
}

/// Replayable payload for a splitting certificate: everything the checker
/// needs to re-derive the witness coefficient by direct enumeration.
pub fn split_certificate_json(decl: &RingDecl, f: &str, cert: &SplitCertificate) -> Value {
    json!({
        "kind": "split",
        "ring": ring_json(decl),
        "f": f,
        "c": cert.multiplier,
        "e": cert.e,
        "q": cert.q,
        "splits": cert.splits,
        "witness": cert.witness.as_ref().map(|w| json!({
            "monomial": w.monomial,
            "exponents": w.exponents,
            "coefficient": w.coefficient,
        })),
    })
}

/// Replayable payload for a bounded tight-closure certificate; the rows
/// keep their full division witnesses.
pub fn tc_certificate_json(
    decl: &RingDecl,
    moduli: &[String],
    cert: &TightClosureCertificate,
) -> Value {
    json!({
        "kind": "tight_closure",
        "ring": ring_json(decl),
        "moduli": moduli,
        "certificate": serde_json::to_value(cert).expect("tc certificate serializes"),
    })
}

/// Replayable payload for a quotient-ring membership verdict.
pub fn membership_json(
    decl: &RingDecl,
    moduli: &[String],
    ideal: &[String],
    element: &str,
    verdict: &charp::groebner::MembershipVerdict,
) -> Value {
    json!({
        "kind": "membership",
        "ring": ring_json(decl),
        "moduli": moduli,
        "ideal": ideal,
        "element": element,
        "verdict": serde_json::to_value(verdict).expect("membership verdict serializes"),
    })
}

/// Replayable payload for a closed-form splitting witness.
pub fn witness_json(p: u64, witness: &charp::fsing::SplitWitness) -> Value {
    json!({
        "kind": "witness",
        "p": p,
        "witness": serde_json::to_value(witness).expect("witness serializes"),
    })
}
