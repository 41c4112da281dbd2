//! One function per subcommand. Each returns the JSON envelope, a text
//! rendering, and the exit code; the binary decides which view to print.

use std::fs;
use std::io::Read as _;

use charp::field::{base_p_digits, binom_mod_p};
use charp::filtration::{
    assoc_graded_hypersurface, check_intersection_identity, check_reduction_a_invariant,
    filtration_table, hilbert_function, integral_closure_monomial, newton_polyhedron,
    CheckOutcome, FiltrationStrategy, HilbertReport,
};
use charp::fsing::{
    classify_quadratic_hypersurface, fedder_fpure, glassbrenner_split_test, tc_certificate,
    Branch, SplitCertificate, TcVerdict, WitnessCase,
};
use charp::groebner::quotient_membership;
use charp::ideal::IdealGens;
use charp::poly::{MonomialOrder, Polynomial};
use charp::{Error, JetPrecision, PrimeModulus, QuotientCtx, Result};
use serde_json::{json, Value};

use crate::input::{parse_input, Binding, InputDoc};
use crate::replay::replay_value;
use crate::report::{
    envelope, membership_json, ring_json, split_certificate_json, tc_certificate_json,
    EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS,
};
use crate::suite::{run_suite, SuiteOptions};

pub struct CommandOutput {
    pub json: Value,
    pub text: String,
    pub exit: i32,
}

fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::input(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| Error::input(format!("cannot read {path}: {e}")))
    }
}

pub fn load_doc(
    path: &str,
    order: Option<MonomialOrder>,
    jet: Option<u64>,
) -> Result<InputDoc> {
    parse_input(&read_source(path)?, order, jet)
}

pub fn binom(p: u64, m: u64, n: u64) -> Result<CommandOutput> {
    let modulus = PrimeModulus::new(p)?;
    let value = binom_mod_p(m, n, modulus);
    let m_digits = base_p_digits(m, modulus);
    let n_digits = base_p_digits(n, modulus);
    let json = envelope(
        "binom",
        json!({
            "p": p,
            "m": m,
            "n": n,
            "value": value,
            "m_digits": m_digits.digits,
            "n_digits": n_digits.digits,
        }),
    );
    let text = format!(
        "binom({m}, {n}) = {value} (mod {p})\nbase-{p} digits: {m} = {:?}, {n} = {:?}\n",
        m_digits.digits, n_digits.digits
    );
    Ok(CommandOutput { json, text, exit: EXIT_PASS })
}

pub fn fpure(doc: &InputDoc, name: &str) -> Result<CommandOutput> {
    let f = doc.poly(name)?;
    let report = fedder_fpure(&f)?;
    let mut payload = json!({
        "ring": ring_json(&doc.decl),
        "f": f.to_string(),
        "report": serde_json::to_value(&report).expect("report serializes"),
    });
    let mut text = format!("F-pure: {}\n", if report.is_f_pure { "yes" } else { "no" });
    if let Some(w) = &report.witness {
        let cert = SplitCertificate {
            p: report.p,
            e: 1,
            q: report.p,
            multiplier: "1".to_string(),
            splits: true,
            witness: Some(w.clone()),
            regular_locus_attested: false,
            work_used: report.work_used,
        };
        if let Value::Object(map) = &mut payload {
            map.insert(
                "certificate".to_string(),
                split_certificate_json(&doc.decl, &f.to_string(), &cert),
            );
        }
        text.push_str(&format!("surviving term: {} (coefficient {})\n", w.monomial, w.coefficient));
    }
    let exit = if report.is_f_pure { EXIT_PASS } else { EXIT_FAIL };
    Ok(CommandOutput { json: envelope("fpure", payload), text, exit })
}

pub fn fregular(
    doc: &InputDoc,
    name: &str,
    c_src: &str,
    e: u32,
    budget: Option<u64>,
) -> Result<CommandOutput> {
    let f = doc.poly(name)?;
    let c = doc.resolve_poly(c_src)?;
    let cert = glassbrenner_split_test(&f, &c, e, budget)?;
    let payload = json!({
        "certificate": split_certificate_json(&doc.decl, &f.to_string(), &cert),
    });
    let mut text = format!(
        "splits at q = {} (e = {}): {}\nmultiplier: {}\n",
        cert.q,
        cert.e,
        if cert.splits { "yes" } else { "no" },
        cert.multiplier
    );
    if let Some(w) = &cert.witness {
        text.push_str(&format!("witness: {} with coefficient {}\n", w.monomial, w.coefficient));
    }
    if cert.splits {
        text.push_str(if cert.regular_locus_attested {
            "strong F-regularity attested: the multiplier cuts out a regular locus\n"
        } else {
            "split certificate only; the multiplier's locus was not checked\n"
        });
    }
    let exit = if cert.splits { EXIT_PASS } else { EXIT_FAIL };
    Ok(CommandOutput { json: envelope("fregular", payload), text, exit })
}

fn branch_label(branch: &Branch) -> String {
    match branch {
        Branch::NotNormalPunctured { reason } => format!("not normal off the origin ({reason})"),
        Branch::OrderObstruction { order } => {
            format!("residual order {order} obstructs the splitting witnesses")
        }
        Branch::QuadraticModel { m } => format!("quadratic model with residual exponent m = {m}"),
        Branch::CubicModel { case } => match case {
            WitnessCase::CubicMixed { m } => format!("cubic model, mixed term exponent m = {m}"),
            WitnessCase::CubicPure { n } => format!("cubic model, pure term exponent n = {n}"),
            WitnessCase::Quadratic { m, e } => format!("quadratic witness case m = {m}, e = {e}"),
        },
        Branch::OutsideWindow { m, n } => {
            format!("orders outside the verified window (m = {m:?}, n = {n:?})")
        }
    }
}

pub fn normalize(doc: &InputDoc, name: &str, ebudget: u32, seed: u64) -> Result<CommandOutput> {
    let f = doc.poly(name)?;
    let report = classify_quadratic_hypersurface(&f, JetPrecision(doc.jet), ebudget, seed)?;
    let mut payload = json!({
        "ring": ring_json(&doc.decl),
        "f": f.to_string(),
        "report": serde_json::to_value(&report).expect("report serializes"),
    });
    if let (Some(cert), Some(model)) = (&report.certificate, &report.model) {
        if let Value::Object(map) = &mut payload {
            map.insert(
                "certificate".to_string(),
                split_certificate_json(&doc.decl, model, cert),
            );
        }
    }
    let mut text = format!("branch: {}\n", branch_label(&report.branch));
    if let Some(model) = &report.model {
        text.push_str(&format!("model: {model}\n"));
    }
    let yn = |b: Option<bool>| match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undetermined",
    };
    text.push_str(&format!(
        "F-pure evidence: {}; F-regular evidence: {}\n",
        yn(report.f_pure_evidence),
        yn(report.f_regular_evidence)
    ));
    for a in &report.assumptions {
        text.push_str(&format!("assumption: {a}\n"));
    }
    let exit = match report.f_regular_evidence {
        Some(true) => EXIT_PASS,
        Some(false) => EXIT_FAIL,
        None => EXIT_INCONCLUSIVE,
    };
    Ok(CommandOutput { json: envelope("normalize", payload), text, exit })
}

pub fn closure(doc: &InputDoc, name: &str, power: u64) -> Result<CommandOutput> {
    if power == 0 {
        return Err(Error::input("power must be at least 1"));
    }
    let ideal = doc.monomial_ideal(name)?;
    let closed = if ideal.is_zero() || ideal.is_unit() {
        ideal.clone()
    } else if power == 1 {
        integral_closure_monomial(&ideal)?
    } else {
        newton_polyhedron(&ideal)?.closure_power(power)?
    };
    let payload = json!({
        "ring": ring_json(&doc.decl),
        "ideal": ideal.display_gens(),
        "power": power,
        "closure": closed.display_gens(),
    });
    let text = format!(
        "I = ({})\nclosure of I^{power} = ({})\n",
        ideal.display_gens().join(", "),
        closed.display_gens().join(", ")
    );
    Ok(CommandOutput { json: envelope("closure", payload), text, exit: EXIT_PASS })
}

fn outcome_exit(outcome: &CheckOutcome) -> i32 {
    match outcome {
        CheckOutcome::Holds => EXIT_PASS,
        CheckOutcome::Fails { .. } => EXIT_FAIL,
        CheckOutcome::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    }
}

pub fn redno(
    doc: &InputDoc,
    name: &str,
    reduction: Option<&str>,
    strategy: FiltrationStrategy,
    horizon: usize,
) -> Result<CommandOutput> {
    let ideal = doc.monomial_ideal(name)?;
    let j = match reduction {
        Some(jname) => doc.monomial_ideal(jname)?,
        None => ideal.clone(),
    };
    let table = filtration_table(&ideal, strategy, horizon)?;
    let report = check_reduction_a_invariant(&table, &j)?;
    let payload = json!({
        "ring": ring_json(&doc.decl),
        "ideal": ideal.display_gens(),
        "reduction_ideal": j.display_gens(),
        "strategy": serde_json::to_value(strategy).expect("strategy serializes"),
        "horizon": horizon,
        "report": serde_json::to_value(&report).expect("report serializes"),
    });
    let outcome_text = match &report.outcome {
        CheckOutcome::Holds => "r = a + d holds".to_string(),
        CheckOutcome::Fails { detail } => format!("r = a + d FAILS: {detail}"),
        CheckOutcome::Inconclusive { detail } => format!("inconclusive: {detail}"),
    };
    let text = format!(
        "reduction number r: {}\na-invariant: {}\ndimension: {}\n{}{}\n",
        report.r.map_or("unresolved within horizon".to_string(), |r| r.to_string()),
        report.a_invariant.map_or("unstabilized".to_string(), |a| a.to_string()),
        report.dimension,
        outcome_text,
        if report.cm_assumed { " (Cohen-Macaulay assumed, not verified)" } else { "" }
    );
    let exit = outcome_exit(&report.outcome);
    Ok(CommandOutput { json: envelope("redno", payload), text, exit })
}

fn hilbert_text(report: &HilbertReport) -> String {
    let mut text = format!(
        "graded dimensions: {:?}\nnumerator: {:?}\ndimension: {}\n",
        report.dims, report.numerator, report.dimension
    );
    match report.a_invariant {
        Some(a) => text.push_str(&format!("a-invariant: {a}")),
        None => text.push_str("a-invariant: unstabilized within the horizon"),
    }
    if report.cm_assumed {
        text.push_str(" (Cohen-Macaulay assumed, not verified)");
    }
    text.push('\n');
    text
}

pub fn hilbert(
    doc: &InputDoc,
    name: &str,
    strategy: FiltrationStrategy,
    horizon: usize,
) -> Result<CommandOutput> {
    let (payload, report) = match doc.get(name)? {
        Binding::Poly(f) => {
            let report = assoc_graded_hypersurface(f, horizon)?;
            let payload = json!({
                "ring": ring_json(&doc.decl),
                "kind": "hypersurface",
                "f": f.to_string(),
                "report": serde_json::to_value(&report).expect("report serializes"),
            });
            (payload, report)
        }
        Binding::Ideal(_) => {
            let ideal = doc.monomial_ideal(name)?;
            let table = filtration_table(&ideal, strategy, horizon)?;
            let report = hilbert_function(&table)?;
            let payload = json!({
                "ring": ring_json(&doc.decl),
                "kind": "filtration",
                "ideal": ideal.display_gens(),
                "strategy": serde_json::to_value(strategy).expect("strategy serializes"),
                "report": serde_json::to_value(&report).expect("report serializes"),
            });
            (payload, report)
        }
    };
    let exit = if report.stabilized { EXIT_PASS } else { EXIT_INCONCLUSIVE };
    Ok(CommandOutput { json: envelope("hilbert", payload), text: hilbert_text(&report), exit })
}

pub fn tc(
    doc: &InputDoc,
    z_src: &str,
    ideal_name: &str,
    c_src: Option<&str>,
    c_is_test_element: bool,
    qmax: u64,
    modulus_name: Option<&str>,
) -> Result<CommandOutput> {
    let z = doc.resolve_poly(z_src)?;
    let c = match c_src {
        Some(src) => doc.resolve_poly(src)?,
        None => z.clone(),
    };
    let ideal = doc.ideal(ideal_name)?;
    let moduli_polys: Vec<Polynomial> = match modulus_name {
        Some(name) => doc.ideal(name)?.gens().to_vec(),
        None => match doc.get("f") {
            Ok(Binding::Poly(f)) => vec![f.clone()],
            _ => Vec::new(),
        },
    };
    let ctx = if moduli_polys.is_empty() {
        QuotientCtx::ambient(doc.ring.clone())
    } else {
        QuotientCtx::new(doc.ring.clone(), IdealGens::new(doc.ring.clone(), moduli_polys.clone())?)?
    };
    let p = doc.ring.modulus().value();
    let mut qs = Vec::new();
    let mut q = p;
    while q <= qmax {
        qs.push(q);
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    if qs.is_empty() {
        let payload = json!({
            "ring": ring_json(&doc.decl),
            "note": format!("qmax = {qmax} is below p = {p}, no levels sampled"),
        });
        return Ok(CommandOutput {
            json: envelope("tc", payload),
            text: format!("no Frobenius levels at or below {qmax}; nothing sampled\n"),
            exit: EXIT_INCONCLUSIVE,
        });
    }
    let cert = tc_certificate(&ctx, &ideal, &z, &c, c_is_test_element, &qs)?;
    let moduli_texts: Vec<String> = moduli_polys.iter().map(|f| f.to_string()).collect();
    let membership = quotient_membership(&ctx, &ideal, &z)?;
    let mut cert_json = tc_certificate_json(&doc.decl, &moduli_texts, &cert);
    if let Value::Object(map) = &mut cert_json {
        map.insert(
            "non_membership".to_string(),
            membership_json(&doc.decl, &moduli_texts, &cert.ideal, &z.to_string(), &membership),
        );
    }
    let payload = json!({ "certificate": cert_json });
    let mut text = String::new();
    for row in &cert.rows {
        text.push_str(&format!(
            "q = {:>6}: c*z^q {} I^[q]\n",
            row.q,
            if row.is_member { "in" } else { "NOT in" }
        ));
    }
    text.push_str(&format!(
        "element is {} the ideal itself\n",
        if membership.is_member { "inside" } else { "outside" }
    ));
    let (verdict_text, exit) = match cert.verdict {
        TcVerdict::EvidenceInStar => ("evidence of tight-closure membership at every sampled level", EXIT_PASS),
        TcVerdict::NotInStar => ("excluded from the tight closure (test element failed)", EXIT_FAIL),
        TcVerdict::Inconclusive => ("no verdict: a level failed under a non-test multiplier", EXIT_INCONCLUSIVE),
    };
    text.push_str(&format!("verdict: {verdict_text}\n"));
    Ok(CommandOutput { json: envelope("tc", payload), text, exit })
}

pub fn vv(doc: &InputDoc, name: &str, k: u64, l: u64) -> Result<CommandOutput> {
    let ideal = doc.monomial_ideal(name)?;
    let report = check_intersection_identity(&ideal, k, l)?;
    let payload = json!({
        "ring": ring_json(&doc.decl),
        "ideal": ideal.display_gens(),
        "report": serde_json::to_value(&report).expect("report serializes"),
    });
    let mut text = format!(
        "closure(I^{}) ∩ I^[{l}] {} closure(I^{k}) * I^[{l}]\n",
        k + l,
        if report.holds { "=" } else { "!=" }
    );
    if let Some(c) = &report.counterexample {
        text.push_str(&format!("counterexample: {c}\n"));
    }
    let exit = if report.holds { EXIT_PASS } else { EXIT_FAIL };
    Ok(CommandOutput { json: envelope("vv", payload), text, exit })
}

pub fn paper_verify(opts: &SuiteOptions, report_path: Option<&str>) -> Result<CommandOutput> {
    let report = run_suite(opts)?;
    let json = envelope("paper-verify", serde_json::to_value(&report).expect("report serializes"));
    if let Some(path) = report_path {
        let pretty = serde_json::to_string_pretty(&json).expect("report serializes") + "\n";
        fs::write(path, pretty).map_err(|e| Error::input(format!("cannot write {path}: {e}")))?;
    }
    let exit = report.overall.exit_code();
    Ok(CommandOutput { json, text: report.render_text(), exit })
}

pub fn replay(path: &str) -> Result<CommandOutput> {
    let text = read_source(path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::input(format!("report is not valid JSON: {e}")))?;
    let report = replay_value(&value);
    let json = envelope("replay", serde_json::to_value(&report).expect("report serializes"));
    let exit = report.exit_code();
    Ok(CommandOutput { json, text: report.render_text(), exit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_input;
    use crate::report::{EXIT_FAIL, EXIT_INCONCLUSIVE};

    const DOC: &str = "ring p=5 vars=X,Y\nf = X^2+Y^3\nI = X^2, Y^2\n";

    #[test]
    fn hilbert_dispatches_on_the_binding_kind() {
        let doc = parse_input(DOC, None, None).unwrap();
        let out = hilbert(&doc, "f", FiltrationStrategy::Closure, 8).unwrap();
        assert_eq!(out.exit, 0);
        assert_eq!(out.json["kind"], "hypersurface");

        let out = hilbert(&doc, "I", FiltrationStrategy::Closure, 8).unwrap();
        assert_eq!(out.exit, 0);
        assert_eq!(out.json["kind"], "filtration");
        assert!(out.text.contains("a-invariant"));
    }

    #[test]
    fn tc_with_no_admissible_q_is_inconclusive() {
        let doc = parse_input(DOC, None, None).unwrap();
        let out = tc(&doc, "X", "I", None, false, 3, None).unwrap();
        assert_eq!(out.exit, EXIT_INCONCLUSIVE);

        let out = tc(&doc, "Y", "I", Some("1"), true, 25, None).unwrap();
        assert!(out.exit == 0 || out.exit == EXIT_FAIL || out.exit == EXIT_INCONCLUSIVE);
        assert_eq!(out.json["command"], "tc");
        assert_eq!(out.json["schema"], 1);
    }

    #[test]
    fn binom_reports_digit_vectors_with_the_value() {
        let out = binom(3, 10, 4).unwrap();
        assert_eq!(out.exit, 0);
        assert_eq!(out.json["value"], 0);
        assert!(out.text.contains("digits"));

        let out = binom(3, 10, 9).unwrap();
        assert_eq!(out.json["value"], 1);
    }
}
