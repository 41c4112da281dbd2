//! Frobenius splitting and tight-closure certificates for hypersurfaces.
//!
//! The workhorse is `reduced_multiplier_power`: it computes c * f^(q-1)
//! modulo a monomial ideal by factoring q - 1 = sum (p-1) p^i and
//! multiplying the Frobenius blocks f^((p-1) p^i) in descending stride
//! order, discarding absorbed terms after every multiplication. Discarding
//! early is sound because a monomial ideal swallows every multiple of a
//! discarded term, and the descending order prunes hardest.
//!
//! Everything here returns replayable data: surviving terms with exact
//! coefficients, membership witnesses, and closed-form witness coefficients
//! that an independent enumeration can recompute.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{beta_for, binom_mod_p, multinom_mod_p, FrobeniusExponent, PrimeModulus};
use crate::groebner::{quotient_membership, MembershipVerdict};
use crate::ideal::{IdealGens, MonomialIdeal, QuotientCtx};
use crate::poly::{
    depress_cubic, pivot_change, same_ring, weierstrass_normalize_quadratic, weierstrass_prepare,
    JetPrecision, Monomial, Polynomial, QuadCase, QuadraticJetForm, Ring,
};

/// Cap on the number of term-by-term products a reduced-power computation
/// may spend. The default is generous for every pinned configuration while
/// still catching accidental blowups.
pub const DEFAULT_WORK_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy)]
pub struct WorkBudget {
    limit: u64,
    used: u64,
}

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget::new(DEFAULT_WORK_BUDGET)
    }
}

impl WorkBudget {
    pub fn new(limit: u64) -> Self {
        WorkBudget { limit, used: 0 }
    }

    pub fn charge(&mut self, amount: u64) -> Result<()> {
        self.used = self.used.saturating_add(amount);
        if self.used > self.limit {
            return Err(Error::BudgetExhausted(self.limit));
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

fn discard_reduce(f: &Polynomial, discard: &MonomialIdeal) -> Polynomial {
    let kept = f
        .terms()
        .iter()
        .filter(|t| !discard.contains(&t.mono))
        .map(|t| (t.mono.clone(), t.coeff))
        .collect();
    Polynomial::from_raw(f.ring().clone(), kept)
}

/// c * f^(p^e - 1) reduced modulo the monomial ideal `discard` after every
/// multiplication. The base-p digits of p^e - 1 are all p - 1, so the
/// product splits into Frobenius blocks; large strides go first because
/// their terms hit the discard frame soonest.
pub fn reduced_multiplier_power(
    c: &Polynomial,
    f: &Polynomial,
    e: u32,
    discard: &MonomialIdeal,
    budget: &mut WorkBudget,
) -> Result<Polynomial> {
    if !same_ring(c.ring(), f.ring()) || !same_ring(f.ring(), discard.ring()) {
        return Err(Error::MixedContext);
    }
    let p = f.ring().modulus();
    let mut acc = discard_reduce(c, discard);
    for i in (0..e).rev() {
        let block = discard_reduce(&f.frobenius_power(i)?, discard);
        for _ in 0..p.value() - 1 {
            if acc.is_zero() {
                return Ok(acc);
            }
            budget.charge(acc.terms().len() as u64 * block.terms().len() as u64)?;
            acc = discard_reduce(&acc.mul(&block)?, discard);
        }
    }
    Ok(acc)
}

/// A term that survived reduction modulo the pure-power frame; exponents are
/// all below q, so the term certifies nonvanishing modulo the bracket power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurvivingTerm {
    pub monomial: String,
    pub exponents: Vec<u32>,
    pub coefficient: u64,
}

fn surviving_leader(reduced: &Polynomial) -> Option<SurvivingTerm> {
    reduced.leading().map(|t| SurvivingTerm {
        monomial: Polynomial::monomial(reduced.ring().clone(), t.mono.clone(), 1).to_string(),
        exponents: t.mono.exps().to_vec(),
        coefficient: t.coeff,
    })
}

/// Fedder-style F-purity test for R = k[X]/(f) at the origin: R is F-pure
/// iff f^(p-1) survives reduction modulo (X_0^p, ..., X_d^p).
#[derive(Debug, Clone, Serialize)]
pub struct FedderReport {
    pub p: u64,
    pub is_f_pure: bool,
    pub witness: Option<SurvivingTerm>,
    pub work_used: u64,
}

pub fn fedder_fpure(f: &Polynomial) -> Result<FedderReport> {
    let ring = f.ring().clone();
    let p = ring.modulus();
    if f.is_zero() || f.constant_term() != 0 {
        return Err(Error::input("the hypersurface must be nonzero and vanish at the origin"));
    }
    let frame = MonomialIdeal::pure_powers(ring.clone(), u32::try_from(p.value()).unwrap())?;
    let mut budget = WorkBudget::default();
    let one = Polynomial::one(ring);
    let reduced = reduced_multiplier_power(&one, f, 1, &frame, &mut budget)?;
    Ok(FedderReport {
        p: p.value(),
        is_f_pure: !reduced.is_zero(),
        witness: surviving_leader(&reduced),
        work_used: budget.used(),
    })
}

/// Splitting certificate at level e: the multiplier c admits a Frobenius
/// splitting at q = p^e iff c * f^(q-1) survives modulo (X_i^q).
#[derive(Debug, Clone, Serialize)]
pub struct SplitCertificate {
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub multiplier: String,
    pub splits: bool,
    pub witness: Option<SurvivingTerm>,
    /// True when c lies in the ideal generated by f and its partials, so the
    /// localization at c is regular and a split at one level certifies
    /// strong F-regularity.
    pub regular_locus_attested: bool,
    pub work_used: u64,
}

pub fn glassbrenner_split_test(
    f: &Polynomial,
    c: &Polynomial,
    e: u32,
    budget_limit: Option<u64>,
) -> Result<SplitCertificate> {
    let ring = f.ring().clone();
    let p = ring.modulus();
    if e == 0 {
        return Err(Error::input("the Frobenius level e must be at least 1"));
    }
    if f.is_zero() || f.constant_term() != 0 {
        return Err(Error::input("the hypersurface must be nonzero and vanish at the origin"));
    }
    if c.is_zero() {
        return Err(Error::input("the multiplier must be nonzero"));
    }
    let fe = FrobeniusExponent::new(p, e)?;
    let frame_exp = u32::try_from(fe.q()).map_err(|_| Error::MonomialOverflow)?;
    let frame = MonomialIdeal::pure_powers(ring.clone(), frame_exp)?;
    let mut budget = WorkBudget::new(budget_limit.unwrap_or(DEFAULT_WORK_BUDGET));
    let reduced = reduced_multiplier_power(c, f, e, &frame, &mut budget)?;

    let mut jac = vec![f.clone()];
    jac.extend(f.partials());
    let jacobian = IdealGens::new(ring.clone(), jac)?;
    let ambient = QuotientCtx::ambient(ring.clone());
    let attested = quotient_membership(&ambient, &jacobian, c)?.is_member;

    Ok(SplitCertificate {
        p: p.value(),
        e,
        q: fe.q(),
        multiplier: c.to_string(),
        splits: !reduced.is_zero(),
        witness: surviving_leader(&reduced),
        regular_locus_attested: attested,
        work_used: budget.used(),
    })
}

/// Coefficient of `target` in c * f^power, by direct enumeration of the
/// multinomial expansion. Independent of the reduced-product path, so it
/// serves as the replay check for split certificates.
pub fn coefficient_by_enumeration(
    f: &Polynomial,
    c_mono: &Monomial,
    c_coeff: u64,
    target: &Monomial,
    power: u64,
) -> Result<u64> {
    let p = f.ring().modulus();
    if c_coeff == 0 || !c_mono.divides(target) {
        return Ok(0);
    }
    let goal = c_mono.quotient_into(target);
    let terms: Vec<(&Monomial, u64)> =
        f.terms().iter().map(|t| (&t.mono, t.coeff)).collect();
    let mut counts = vec![0u64; terms.len()];
    let mut rem = goal.exps().to_vec();
    let total = enum_rec(p, &terms, 0, power, &mut rem, &mut counts)?;
    Ok(p.mul(total, c_coeff))
}

fn enum_rec(
    p: PrimeModulus,
    terms: &[(&Monomial, u64)],
    k: usize,
    n_left: u64,
    rem: &mut Vec<u32>,
    counts: &mut Vec<u64>,
) -> Result<u64> {
    if k == terms.len() {
        if n_left == 0 && rem.iter().all(|&e| e == 0) {
            let total: u64 = counts.iter().sum::<u64>() + n_left;
            let multi = multinom_mod_p(total, counts, p)?;
            let scale = terms
                .iter()
                .zip(counts.iter())
                .fold(1u64, |acc, ((_, coeff), &n)| p.mul(acc, p.pow(*coeff, n)));
            return Ok(p.mul(multi, scale));
        }
        return Ok(0);
    }
    let (mono, _) = terms[k];
    let mut bound = n_left;
    for (v, &e) in mono.exps().iter().enumerate() {
        if e > 0 {
            bound = bound.min((rem[v] / e) as u64);
        }
    }
    let mut sum = 0u64;
    for n in 0..=bound {
        counts[k] = n;
        for (v, &e) in mono.exps().iter().enumerate() {
            rem[v] -= e * n as u32;
        }
        sum = p.add(sum, enum_rec(p, terms, k + 1, n_left - n, rem, counts)?);
        for (v, &e) in mono.exps().iter().enumerate() {
            rem[v] += e * n as u32;
        }
    }
    counts[k] = 0;
    Ok(sum)
}

/// Replays a split certificate by recomputing the recorded surviving term's
/// coefficient through enumeration. The multiplier must be a monomial.
pub fn verify_split_certificate(
    f: &Polynomial,
    c: &Polynomial,
    cert: &SplitCertificate,
) -> Result<bool> {
    let witness = match (&cert.witness, cert.splits) {
        (Some(w), true) => w,
        (None, false) => return Ok(true),
        _ => return Ok(false),
    };
    if c.terms().len() != 1 {
        return Err(Error::input("certificate replay needs a monomial multiplier"));
    }
    if witness.exponents.iter().any(|&x| x as u64 >= cert.q) {
        return Ok(false);
    }
    let target = Monomial::new(witness.exponents.clone());
    let coeff = coefficient_by_enumeration(
        f,
        &c.terms()[0].mono,
        c.terms()[0].coeff,
        &target,
        cert.q - 1,
    )?;
    Ok(coeff == witness.coefficient && coeff != 0)
}

/// The three hypersurface families whose splitting witnesses have closed
/// forms: X0^2+X1^2+X2^m, X0^2+X1^3+X1*X2^m, and X0^2+X1^3+X2^n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum WitnessCase {
    Quadratic { m: u32, e: u32 },
    CubicMixed { m: u32 },
    CubicPure { n: u32 },
}

/// Closed-form splitting witness: a target monomial below the q-frame whose
/// coefficient in X0 * f^(q-1) is an explicit product of binomials.
#[derive(Debug, Clone, Serialize)]
pub struct SplitWitness {
    pub case: WitnessCase,
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub alpha: Option<u64>,
    pub beta: Option<u64>,
    pub model: String,
    pub multiplier: String,
    pub target: Vec<u32>,
    pub target_display: String,
    pub coefficient: u64,
    /// Every target exponent is below q, so a nonzero coefficient survives
    /// the bracket frame.
    pub survives_frame: bool,
    pub splits: bool,
}

/// The model ring, hypersurface, multiplier, and witness target for a case.
pub fn witness_model(
    p: PrimeModulus,
    case: WitnessCase,
) -> Result<(Arc<Ring>, Polynomial, Polynomial, Monomial)> {
    use crate::poly::MonomialOrder;
    let ring = Ring::with_names(&["X0", "X1", "X2"], p, MonomialOrder::Grevlex)?;
    let var = |v: usize, e: u32| Monomial::variable(3, v, e);
    let mono = |v: usize, e: u32| Polynomial::monomial(ring.clone(), var(v, e), 1);
    let exp32 = |x: u64| u32::try_from(x).map_err(|_| Error::MonomialOverflow);

    let (f, target) = match case {
        WitnessCase::Quadratic { m, e } => {
            if p.value() == 2 {
                return Err(Error::UnsupportedCharacteristic(2, "witness needs odd q"));
            }
            if m < 2 {
                return Err(Error::input("the quadratic family needs m >= 2"));
            }
            let q = FrobeniusExponent::new(p, e)?.q();
            if q <= m as u64 {
                return Err(Error::input("need p^e > m for the witness target"));
            }
            let f = mono(0, 2).add(&mono(1, 2))?.add(&mono(2, m))?;
            let target = Monomial::new(vec![exp32(q - 2)?, exp32(q - 1)?, m]);
            (f, target)
        }
        WitnessCase::CubicMixed { m } => {
            let q = FrobeniusExponent::new(p, 2)?.q();
            let alpha = beta_for(p)?;
            let beta = (q + 1) / 2 - alpha;
            if m < 1 {
                return Err(Error::input("the mixed cubic family needs m >= 1"));
            }
            let f = mono(0, 2)
                .add(&mono(1, 3))?
                .add(&Polynomial::monomial(ring.clone(), var(1, 1).mul(&var(2, m))?, 1))?;
            let target = Monomial::new(vec![
                exp32(q - 2)?,
                exp32(3 * beta + alpha)?,
                exp32(m as u64 * alpha)?,
            ]);
            (f, target)
        }
        WitnessCase::CubicPure { n } => {
            let q = FrobeniusExponent::new(p, 2)?.q();
            let alpha = beta_for(p)?;
            let beta = (q + 1) / 2 - alpha;
            if n < 2 {
                return Err(Error::input("the pure cubic family needs n >= 2"));
            }
            let f = mono(0, 2).add(&mono(1, 3))?.add(&mono(2, n))?;
            let target =
                Monomial::new(vec![exp32(q - 2)?, exp32(3 * alpha)?, exp32(n as u64 * beta)?]);
            (f, target)
        }
    };
    let c = mono(0, 1);
    Ok((ring, f, c, target))
}

/// Computes the closed-form witness coefficient for a model case. The
/// expansion of X0 * f^(q-1) has exactly one multinomial term landing on the
/// target (the X0 and X2 exponents pin the counts), so the coefficient is a
/// single multinomial value.
pub fn witness_coefficient(p: PrimeModulus, case: WitnessCase) -> Result<SplitWitness> {
    let (ring, f, c, target) = witness_model(p, case)?;
    let (e, q, alpha, beta, coefficient) = match case {
        WitnessCase::Quadratic { e, .. } => {
            let q = FrobeniusExponent::new(p, e)?.q();
            let a = (q - 3) / 2;
            let b = (q - 1) / 2;
            let coeff = multinom_mod_p(q - 1, &[a, b, 1], p)?;
            debug_assert_eq!(
                coeff,
                p.mul(binom_mod_p(q - 1, a, p), p.reduce((q + 1) / 2))
            );
            (e, q, None, None, coeff)
        }
        WitnessCase::CubicMixed { .. } => {
            let q = FrobeniusExponent::new(p, 2)?.q();
            let alpha = beta_for(p)?;
            let beta = (q + 1) / 2 - alpha;
            let a = (q - 3) / 2;
            let coeff = multinom_mod_p(q - 1, &[a, beta, alpha], p)?;
            (2, q, Some(alpha), Some(beta), coeff)
        }
        WitnessCase::CubicPure { .. } => {
            let q = FrobeniusExponent::new(p, 2)?.q();
            let alpha = beta_for(p)?;
            let beta = (q + 1) / 2 - alpha;
            let a = (q - 3) / 2;
            let coeff = multinom_mod_p(q - 1, &[a, alpha, beta], p)?;
            (2, q, Some(alpha), Some(beta), coeff)
        }
    };
    let survives_frame = target.exps().iter().all(|&x| (x as u64) < q);
    Ok(SplitWitness {
        case,
        p: p.value(),
        e,
        q,
        alpha,
        beta,
        model: f.to_string(),
        multiplier: c.to_string(),
        target: target.exps().to_vec(),
        target_display: Polynomial::monomial(ring, target, 1).to_string(),
        coefficient,
        survives_frame,
        splits: survives_frame && coefficient != 0,
    })
}

/// Searches for a uniform exponent N <= bound with X_i^N in (f, partials)
/// for every variable; returns the least such N. Success certifies that the
/// singular locus meets the punctured neighborhood of the origin nowhere.
pub fn jacobian_isolated_singularity(f: &Polynomial, bound: u32) -> Result<Option<u32>> {
    let ring = f.ring().clone();
    let mut gens = vec![f.clone()];
    gens.extend(f.partials());
    let jacobian = IdealGens::new(ring.clone(), gens)?;
    let gb = crate::groebner::buchberger(&jacobian)?;
    'levels: for n in 1..=bound {
        for v in 0..ring.nvars() {
            let xn = Polynomial::monomial(ring.clone(), Monomial::variable(ring.nvars(), v, n), 1);
            if !crate::groebner::normal_form(&xn, &gb)?.is_zero() {
                continue 'levels;
            }
        }
        return Ok(Some(n));
    }
    Ok(None)
}

/// Verdicts for a bounded tight-closure certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TcVerdict {
    /// Every sampled level passed; consistent with membership in the tight
    /// closure but not a proof.
    EvidenceInStar,
    /// Some level failed and the multiplier is a test element, which decides
    /// non-membership.
    NotInStar,
    /// Some level failed but nothing is known about the multiplier.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct TcRow {
    pub q: u64,
    pub is_member: bool,
    pub witness: MembershipVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct TightClosureCertificate {
    pub element: String,
    pub ideal: Vec<String>,
    pub multiplier: String,
    pub c_is_test_element: bool,
    pub rows: Vec<TcRow>,
    pub verdict: TcVerdict,
}

/// Checks c * z^q in I^[q] (mod the context's relations) for each sampled
/// q and aggregates the verdict.
pub fn tc_certificate(
    ctx: &QuotientCtx,
    ideal: &IdealGens,
    z: &Polynomial,
    c: &Polynomial,
    c_is_test_element: bool,
    qs: &[u64],
) -> Result<TightClosureCertificate> {
    if qs.is_empty() {
        return Err(Error::input("at least one Frobenius level q is required"));
    }
    if c.is_zero() {
        return Err(Error::input("the multiplier must be nonzero"));
    }
    let p = ctx.ring().modulus();
    let mut levels: Vec<u64> = qs.to_vec();
    levels.sort_unstable();
    levels.dedup();

    let mut rows = Vec::with_capacity(levels.len());
    for &q in &levels {
        let fe = FrobeniusExponent::from_q(p, q)?;
        let zq = z.frobenius_power(fe.e())?;
        let czq = c.mul(&zq)?;
        let bracketed = ideal.bracket_power(q)?;
        let witness = quotient_membership(ctx, &bracketed, &czq)?;
        rows.push(TcRow { q, is_member: witness.is_member, witness });
    }
    let all_pass = rows.iter().all(|r| r.is_member);
    let verdict = if all_pass {
        TcVerdict::EvidenceInStar
    } else if c_is_test_element {
        TcVerdict::NotInStar
    } else {
        TcVerdict::Inconclusive
    };
    Ok(TightClosureCertificate {
        element: z.to_string(),
        ideal: ideal.gens().iter().map(|g| g.to_string()).collect(),
        multiplier: c.to_string(),
        c_is_test_element,
        rows,
        verdict,
    })
}

/// X_var is superficial for the hypersurface filtration iff it is a
/// nonzerodivisor on k[X]/(initial form), i.e. the initial form is not
/// divisible by X_var.
pub fn superficial_check(initial_form: &Polynomial, var: usize) -> Result<bool> {
    if initial_form.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if var >= initial_form.ring().nvars() {
        return Err(Error::input("variable index out of range"));
    }
    Ok(!initial_form.divisible_by_var(var))
}

/// Where a double point lands after normalization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "branch")]
pub enum Branch {
    /// The series is a unit times a form whose zero set is singular in
    /// codimension one, so the local ring is not normal.
    NotNormalPunctured { reason: String },
    /// The residual order is at least four; the top weight is nonnegative,
    /// which obstructs the splitting witnesses used here.
    OrderObstruction { order: u64 },
    /// Equivalent to X0^2 + X1^2 + X2^m times a unit.
    QuadraticModel { m: u64 },
    /// Equivalent to one of the depressed cubic models times a unit.
    CubicModel { case: WitnessCase },
    /// The cubic orders fall outside the verified witness window.
    OutsideWindow { m: Option<u64>, n: Option<u64> },
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifierReport {
    pub branch: Branch,
    pub normal_form: QuadraticJetForm,
    pub model: Option<String>,
    pub witness: Option<SplitWitness>,
    pub certificate: Option<SplitCertificate>,
    pub isolated_singularity_attested: Option<u32>,
    pub f_pure_evidence: Option<bool>,
    pub f_regular_evidence: Option<bool>,
    pub assumptions: Vec<String>,
}

/// Splits g (free of X0, order 2 in X1 and X2) as unit * (X1^2 + h(X2)) and
/// returns h.
fn split_off_second_square(g: &Polynomial, cap: u64, seed: u64) -> Result<Polynomial> {
    let p = g.ring().modulus();
    let linear = pivot_change(&g.initial_form()?, 1, 1, seed)?;
    let moved = linear.apply(g, Some(cap))?;
    let (_, b) = weierstrass_prepare(&moved, 1, 2, cap)?;
    let s = b[0].scale(p.inv(2));
    Ok(b[1].sub(&s.mul(&s)?)?.truncated(cap))
}

/// Classifies a double point f (order 2, three variables) by normalizing to
/// X0^2 + g, splitting off further squares, and matching the residual
/// series against the witnessed model families. Certificates are computed
/// on the models; the report lists the assumptions that transport them back.
pub fn classify_quadratic_hypersurface(
    f: &Polynomial,
    precision: JetPrecision,
    e_budget: u32,
    seed: u64,
) -> Result<ClassifierReport> {
    let ring = f.ring().clone();
    if ring.nvars() != 3 {
        return Err(Error::input("the classifier expects a three-variable ring"));
    }
    let p = ring.modulus();
    let mut form = weierstrass_normalize_quadratic(f, precision, seed)?;
    let mut assumptions = vec![
        "the singular point sits at the origin".to_string(),
        format!(
            "series are tracked to total degree {} and the tail is assumed not to change the detected orders",
            form.precision.0
        ),
        "certificates are computed on the matched model, which represents f up to a unit and a change of variables at this precision".to_string(),
    ];

    let g = form.g_rest.clone();
    let exp32 = |x: u64| u32::try_from(x).map_err(|_| Error::MonomialOverflow);
    let report = |branch: Branch,
                      form: QuadraticJetForm,
                      model: Option<Polynomial>,
                      witness: Option<SplitWitness>,
                      certificate: Option<SplitCertificate>,
                      isolated: Option<u32>,
                      assumptions: Vec<String>|
     -> ClassifierReport {
        let f_pure = match (&witness, &certificate) {
            (_, Some(cert)) => Some(cert.splits),
            (Some(w), None) => Some(w.splits),
            (None, None) => None,
        };
        let f_regular = match (&witness, &certificate) {
            (_, Some(cert)) => Some(cert.splits && cert.regular_locus_attested),
            (Some(w), None) => Some(w.splits && isolated.is_some()),
            (None, None) => match branch {
                Branch::OrderObstruction { .. } => Some(false),
                Branch::NotNormalPunctured { .. } => Some(false),
                _ => None,
            },
        };
        ClassifierReport {
            branch,
            normal_form: form,
            model: model.map(|m| m.to_string()),
            witness,
            certificate,
            isolated_singularity_attested: isolated,
            f_pure_evidence: f_pure,
            f_regular_evidence: f_regular,
            assumptions,
        }
    };

    match form.case_tag {
        QuadCase::OrdGe4 if g.is_zero() => {
            assumptions.push("a vanishing remainder means f is a unit times a pure square".to_string());
            Ok(report(
                Branch::NotNormalPunctured { reason: "unit times X0^2".to_string() },
                form,
                None,
                None,
                None,
                None,
                assumptions,
            ))
        }
        QuadCase::OrdGe4 => {
            let order = g.ord()?;
            assumptions.push(
                "residual order at least four puts the top weight at or above zero, outside every witnessed family".to_string(),
            );
            Ok(report(Branch::OrderObstruction { order }, form, None, None, None, None, assumptions))
        }
        QuadCase::Ord2 => {
            let h = split_off_second_square(&g, form.precision.0, seed)?;
            if h.is_zero() {
                assumptions.push("two squares and no remainder: the zero set is a pair of planes".to_string());
                return Ok(report(
                    Branch::NotNormalPunctured { reason: "unit times X0^2 + X1^2".to_string() },
                    form,
                    None,
                    None,
                    None,
                    None,
                    assumptions,
                ));
            }
            let m = h.ord()?;
            form.m_order = Some(m);
            let e_level = u32::try_from(m + 1).map_err(|_| Error::MonomialOverflow)?;
            let case = WitnessCase::Quadratic {
                m: u32::try_from(m).map_err(|_| Error::MonomialOverflow)?,
                e: e_level,
            };
            let witness = witness_coefficient(p, case).ok();
            if witness.is_none() {
                assumptions.push(
                    "the closed-form witness target does not fit the exponent range; only the branch is reported".to_string(),
                );
            }
            let mut model = None;
            let mut certificate = None;
            let mut isolated = None;
            if let Ok((_, model_poly, c, _)) = witness_model(p, case) {
                if e_level <= e_budget {
                    match glassbrenner_split_test(&model_poly, &c, e_level, None) {
                        Ok(cert) => certificate = Some(cert),
                        Err(Error::BudgetExhausted(_)) => assumptions.push(
                            "the direct reduction exhausted its work budget; the closed-form witness stands alone".to_string(),
                        ),
                        Err(other) => return Err(other),
                    }
                } else {
                    assumptions.push(format!(
                        "the direct reduction at e = {e_level} exceeds the e-budget {e_budget}; the closed-form witness stands alone"
                    ));
                }
                isolated = jacobian_isolated_singularity(&model_poly, 8)?;
                model = Some(model_poly);
            }
            Ok(report(
                Branch::QuadraticModel { m },
                form,
                model,
                witness,
                certificate,
                isolated,
                assumptions,
            ))
        }
        QuadCase::Ord3 => {
            let dep = depress_cubic(&g, JetPrecision(form.precision.0), seed)?;
            let m = if dep.h1.is_zero() { None } else { Some(dep.h1.ord()?) };
            let n = if dep.h2.is_zero() { None } else { Some(dep.h2.ord()?) };
            form.m_order = m;
            form.n_order = n;
            let chosen = match (m, n) {
                (None, None) => {
                    assumptions.push(
                        "both cubic remainders vanish: the singular locus of X0^2 + X1^3 is a line".to_string(),
                    );
                    return Ok(report(
                        Branch::NotNormalPunctured {
                            reason: "unit times X0^2 + X1^3".to_string(),
                        },
                        form,
                        None,
                        None,
                        None,
                        None,
                        assumptions,
                    ));
                }
                (Some(m), None) => WitnessCase::CubicMixed { m: exp32(m)? },
                (None, Some(n)) => WitnessCase::CubicPure { n: exp32(n)? },
                (Some(m), Some(n)) => {
                    // Lower Newton boundary in the (X1, X2)-plane: the pure
                    // point (0, n) beats the mixed point (1, m) iff 2n < 3m.
                    if 2 * n < 3 * m {
                        WitnessCase::CubicPure { n: exp32(n)? }
                    } else {
                        WitnessCase::CubicMixed { m: exp32(m)? }
                    }
                }
            };
            let in_window = match chosen {
                WitnessCase::CubicMixed { m } => m <= 3,
                WitnessCase::CubicPure { n } => n <= 5,
                WitnessCase::Quadratic { .. } => unreachable!(),
            };
            if !in_window {
                assumptions.push(
                    "the residual orders fall outside the window where model witnesses are verified".to_string(),
                );
                return Ok(report(Branch::OutsideWindow { m, n }, form, None, None, None, None, assumptions));
            }
            let witness = Some(witness_coefficient(p, chosen)?);
            let (_, model, c, _) = witness_model(p, chosen)?;
            let certificate = if 2 <= e_budget {
                match glassbrenner_split_test(&model, &c, 2, None) {
                    Ok(cert) => Some(cert),
                    Err(Error::BudgetExhausted(_)) => {
                        assumptions.push(
                            "the direct reduction exhausted its work budget; the closed-form witness stands alone".to_string(),
                        );
                        None
                    }
                    Err(other) => return Err(other),
                }
            } else {
                assumptions.push("the e-budget excludes the direct reduction at e = 2".to_string());
                None
            };
            let isolated = jacobian_isolated_singularity(&model, 8)?;
            Ok(report(
                Branch::CubicModel { case: chosen },
                form,
                Some(model),
                witness,
                certificate,
                isolated,
                assumptions,
            ))
        }
    }
}
