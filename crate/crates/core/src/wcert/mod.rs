//! Reasoning in quotient rings `P/I` through Gröbner bases of `P`: regular
//! elements and sequences, a depth-two certificate for GV-ideals, the Koszul
//! `Tor_1` witness, and the composed certificate that a principal ideal is
//! not a w-ideal.
//!
//! Every certificate stores the ideals it used together with their reduced
//! bases, so it can be re-verified (see [`document`]).

pub mod document;

use std::sync::Arc;

use crate::groebner::{extend_ideal, ideal_equal, ideal_quotient, ideal_sum, IdealGB};
use crate::poly::{same_ring, MonOrder, Poly, RingSpec};

pub use document::{
    CertificateDoc, CheckMode, Derivation, DocBuilder, FactKind, FactRecord, IdealRecord, Recheck,
};

use document::poly_list;

/// Name of the defining ideal in certificate documents.
pub const DEFINING_NAME: &str = "I";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertError {
    #[error("zero element: `{0}` lies in the defining ideal")]
    ZeroElement(String),
    #[error("sequence is not a certified regular sequence: {0}")]
    Uncertified(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("no GV certificate found (inconclusive after {0} candidate pairs)")]
    Inconclusive(usize),
    #[error("fact {name} failed: {detail}")]
    FactFailed { name: String, detail: String },
}

/// `R = P / I`.
#[derive(Debug, Clone)]
pub struct QuotRing {
    defining: IdealGB,
}

impl QuotRing {
    pub fn new(defining: IdealGB) -> QuotRing {
        QuotRing { defining }
    }

    pub fn ambient(&self) -> &Arc<RingSpec> {
        self.defining.ring()
    }

    pub fn defining(&self) -> &IdealGB {
        &self.defining
    }

    pub fn is_zero(&self, f: &Poly) -> bool {
        self.defining.contains(f)
    }

    pub fn elements_equal(&self, f: &Poly, g: &Poly) -> bool {
        self.defining.contains(&(f - g))
    }

    pub fn is_zero_ring(&self) -> bool {
        self.defining.is_unit()
    }

    /// Annihilator of `f`, lifted to `P`: `(I : f)`.
    pub fn annihilator(&self, f: &Poly) -> IdealGB {
        crate::groebner::quotient_by_element(&self.defining, f)
    }

    pub fn with_order(&self, order: MonOrder) -> QuotRing {
        QuotRing::new(self.defining.with_order(order))
    }

    fn check(&self, f: &Poly) {
        assert!(
            same_ring(f.ring(), self.ambient()),
            "element from a different ring"
        );
    }
}

/// One colon-stability step `(Q : f) = Q`.
#[derive(Debug, Clone)]
pub struct ColonCheck {
    pub element: Poly,
    pub base: IdealGB,
    pub colon: IdealGB,
    pub stable: bool,
}

#[derive(Debug, Clone)]
pub struct RegSeqCert {
    pub ring: QuotRing,
    pub sequence: Vec<Poly>,
    /// `checks[i]` verifies `((I + (f_1..f_i)) : f_{i+1}) = I + (f_1..f_i)`.
    pub checks: Vec<ColonCheck>,
    /// `I + (f_1..f_k)`, verified not to contain 1.
    pub final_ideal: IdealGB,
}

impl RegSeqCert {
    /// Records the colon equalities and the properness fact; returns the
    /// name of the final ideal.
    pub fn record(&self, b: &mut DocBuilder) -> String {
        let mut base = b.ideal(DEFINING_NAME, self.ring.defining(), Derivation::Given);
        for (i, (check, f)) in self.checks.iter().zip(&self.sequence).enumerate() {
            let fs = f.to_string();
            let colon = b.ideal(
                &format!("({base} : {fs})"),
                &check.colon,
                Derivation::Colon {
                    base: base.clone(),
                    polys: vec![fs.clone()],
                },
            );
            b.fact(FactKind::IdealEqual, &colon, &base);
            let next = self.checks.get(i + 1).map_or(&self.final_ideal, |c| &c.base);
            base = b.ideal(
                &format!("{base} + ({fs})"),
                next,
                Derivation::Extend {
                    base: base.clone(),
                    polys: vec![fs],
                },
            );
        }
        b.fact(FactKind::NotMember, "1", &base);
        base
    }

    pub fn document(&self) -> CertificateDoc {
        let mut b = DocBuilder::new(self.ring.ambient());
        self.record(&mut b);
        b.finish("regular sequence")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegSeqFailure {
    /// 1-based position of the first element that is a zero divisor modulo
    /// the previous ones; `witness` lies in the colon but not in the base.
    ZeroDivisor {
        index: usize,
        witness: String,
    },
    /// The sequence generates the unit ideal together with `I`.
    Improper,
    Empty,
}

impl std::fmt::Display for RegSeqFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegSeqFailure::ZeroDivisor { index, witness } => {
                write!(f, "element {index} is a zero divisor (witness {witness})")
            }
            RegSeqFailure::Improper => f.write_str("the ideal becomes the unit ideal"),
            RegSeqFailure::Empty => f.write_str("empty sequence"),
        }
    }
}

fn colon_check(base: &IdealGB, f: &Poly) -> ColonCheck {
    let colon = ideal_quotient(base, &IdealGB::principal(f));
    ColonCheck {
        element: f.clone(),
        base: base.clone(),
        stable: ideal_equal(&colon, base),
        colon,
    }
}

fn colon_witness(check: &ColonCheck) -> String {
    check
        .colon
        .basis()
        .iter()
        .find(|g| !check.base.contains(g))
        .map(|g| g.to_string())
        .unwrap_or_default()
}

/// Multiplication by `f` is injective on `R`, i.e. `(I : f) = I`.
pub fn is_regular_element(ring: &QuotRing, f: &Poly) -> Result<bool, CertError> {
    ring.check(f);
    if ring.is_zero(f) {
        return Err(CertError::ZeroElement(f.to_string()));
    }
    Ok(colon_check(&ring.defining, f).stable)
}

pub fn is_regular_sequence(ring: &QuotRing, seq: &[Poly]) -> Result<RegSeqCert, RegSeqFailure> {
    if seq.is_empty() {
        return Err(RegSeqFailure::Empty);
    }
    let mut base = ring.defining.clone();
    let mut checks = Vec::with_capacity(seq.len());
    for (i, f) in seq.iter().enumerate() {
        ring.check(f);
        let check = colon_check(&base, f);
        if !check.stable {
            return Err(RegSeqFailure::ZeroDivisor {
                index: i + 1,
                witness: colon_witness(&check),
            });
        }
        base = extend_ideal(&base, std::slice::from_ref(f));
        checks.push(check);
    }
    if base.is_unit() {
        return Err(RegSeqFailure::Improper);
    }
    Ok(RegSeqCert {
        ring: ring.clone(),
        sequence: seq.to_vec(),
        checks,
        final_ideal: base,
    })
}

#[derive(Debug, Clone)]
pub enum GvEvidence {
    /// `J + I` is the whole ring.
    UnitIdeal,
    /// A regular sequence of length two inside `J`.
    Depth2(RegSeqCert),
}

#[derive(Debug, Clone)]
pub struct GVCert {
    pub ring: QuotRing,
    pub ideal_gens: Vec<Poly>,
    /// `J + I`.
    pub ideal: IdealGB,
    pub evidence: GvEvidence,
}

/// Name of the GV-ideal in certificate documents.
pub const GV_NAME: &str = "J";

impl GVCert {
    pub fn record(&self, b: &mut DocBuilder) -> String {
        b.ideal(DEFINING_NAME, self.ring.defining(), Derivation::Given);
        let j = b.ideal(
            GV_NAME,
            &self.ideal,
            Derivation::Extend {
                base: DEFINING_NAME.into(),
                polys: poly_list(&self.ideal_gens),
            },
        );
        match &self.evidence {
            GvEvidence::UnitIdeal => {
                b.fact(FactKind::Member, "1", &j);
            }
            GvEvidence::Depth2(c) => {
                for f in &c.sequence {
                    b.fact(FactKind::Member, &f.to_string(), &j);
                }
                c.record(b);
            }
        }
        j
    }

    pub fn verdict(&self) -> &'static str {
        match self.evidence {
            GvEvidence::UnitIdeal => "J is the unit ideal, hence a GV-ideal",
            GvEvidence::Depth2(_) => "J contains a regular sequence of length 2, hence is a GV-ideal",
        }
    }

    pub fn document(&self) -> CertificateDoc {
        let mut b = DocBuilder::new(self.ring.ambient());
        self.record(&mut b);
        b.finish(self.verdict())
    }

    pub fn regular_sequence(&self) -> Option<&RegSeqCert> {
        match &self.evidence {
            GvEvidence::Depth2(c) => Some(c),
            GvEvidence::UnitIdeal => None,
        }
    }
}

/// Candidate elements of `J`: the generators, then `a*g_i + b*g_j` with
/// `0 < |a|, |b| <= 2`, deduplicated up to scalars.
fn gv_candidates(gens: &[Poly]) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    let mut push = |p: Poly| {
        if !p.is_zero() {
            let m = p.monic();
            if !out.iter().any(|q| q.monic() == m) {
                out.push(p);
            }
        }
    };
    for g in gens {
        push(g.clone());
    }
    let coeffs = [1i64, -1, 2, -2];
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            for &a in &coeffs {
                for &b in &coeffs {
                    let ca = crate::arith::BigRat::from_i64(a);
                    let cb = crate::arith::BigRat::from_i64(b);
                    push(&gens[i].scale(&ca) + &gens[j].scale(&cb));
                }
            }
        }
    }
    out
}

/// Looks for a length-two regular sequence inside `J = (J_gens) + I`. Never
/// concludes that `J` is not GV: exhausting the search is reported as
/// [`CertError::Inconclusive`].
pub fn gv_certificate(ring: &QuotRing, j_gens: &[Poly]) -> Result<GVCert, CertError> {
    if j_gens.is_empty() {
        return Err(CertError::Degenerate("empty generator list".into()));
    }
    for g in j_gens {
        ring.check(g);
    }
    let ideal = extend_ideal(&ring.defining, j_gens);
    if ideal.is_unit() {
        return Ok(GVCert {
            ring: ring.clone(),
            ideal_gens: j_gens.to_vec(),
            ideal,
            evidence: GvEvidence::UnitIdeal,
        });
    }
    let cands: Vec<Poly> = gv_candidates(j_gens)
        .into_iter()
        .filter(|c| !ring.is_zero(c))
        .collect();
    // regularity of single candidates is shared across pairs
    let regular: Vec<bool> = cands
        .iter()
        .map(|c| colon_check(&ring.defining, c).stable)
        .collect();
    let mut tried = 0;
    for (i, first) in cands.iter().enumerate() {
        if !regular[i] {
            continue;
        }
        for (j, second) in cands.iter().enumerate() {
            if i == j {
                continue;
            }
            tried += 1;
            if let Ok(cert) = is_regular_sequence(ring, &[first.clone(), second.clone()]) {
                return Ok(GVCert {
                    ring: ring.clone(),
                    ideal_gens: j_gens.to_vec(),
                    ideal,
                    evidence: GvEvidence::Depth2(cert),
                });
            }
        }
    }
    Err(CertError::Inconclusive(tried))
}

/// A membership statement checked by normal form.
#[derive(Debug, Clone)]
pub struct MembershipFact {
    pub element: Poly,
    pub ideal_name: String,
    /// Whether the statement claims membership (`true`) or non-membership.
    pub claims_member: bool,
    pub normal_form: Poly,
}

impl MembershipFact {
    fn check(element: &Poly, ideal: &IdealGB, name: &str, claims_member: bool) -> MembershipFact {
        MembershipFact {
            element: element.clone(),
            ideal_name: name.to_string(),
            claims_member,
            normal_form: ideal.normal_form(element),
        }
    }

    pub fn holds(&self) -> bool {
        self.normal_form.is_zero() == self.claims_member
    }

    pub fn describe(&self) -> String {
        let rel = if self.claims_member { "in" } else { "not in" };
        format!("{} {rel} {}", self.element, self.ideal_name)
    }
}

#[derive(Debug, Clone)]
pub struct KoszulWitness {
    pub regseq: RegSeqCert,
    pub principal_elem: Poly,
    /// `(I : r)`
    pub annihilator: IdealGB,
    /// `(I : r) + (f1) + I`
    pub colon_sum: IdealGB,
    pub witness: Poly,
    /// (a) the witness is not in the colon-sum ideal.
    pub not_in: MembershipFact,
    /// (b) `f2 * witness` is in the colon-sum ideal.
    pub mult_in: MembershipFact,
}

/// Name of `(I : r) + (f1) + I` in certificate documents.
pub const COLON_SUM_NAME: &str = "C";

impl KoszulWitness {
    pub fn holds(&self) -> bool {
        self.not_in.holds() && self.mult_in.holds()
    }

    pub fn record(&self, b: &mut DocBuilder) {
        self.regseq.record(b);
        // the regular-sequence record names I + (f1) as its second base
        let f1_ideal = format!("{DEFINING_NAME} + ({})", self.regseq.sequence[0]);
        debug_assert!(b.has_ideal(&f1_ideal));
        let ann = b.ideal(
            &format!("({DEFINING_NAME} : {})", self.principal_elem),
            &self.annihilator,
            Derivation::Colon {
                base: DEFINING_NAME.into(),
                polys: vec![self.principal_elem.to_string()],
            },
        );
        b.ideal(
            COLON_SUM_NAME,
            &self.colon_sum,
            Derivation::Sum {
                parts: vec![ann, f1_ideal],
            },
        );
        for fact in [&self.not_in, &self.mult_in] {
            let kind = if fact.claims_member {
                FactKind::Member
            } else {
                FactKind::NotMember
            };
            b.fact(kind, &fact.element.to_string(), COLON_SUM_NAME);
        }
    }

    pub fn document(&self) -> CertificateDoc {
        let mut b = DocBuilder::new(self.regseq.ring.ambient());
        self.record(&mut b);
        let verdict = if self.holds() {
            "nonzero element of the Koszul kernel"
        } else {
            ""
        };
        b.finish(verdict)
    }
}

/// Checks that `witness` gives a nonzero element of
/// `(0 :_{R/(f1 R + ann r)} f2)`, which computes `Tor_1^R(R/J, rR)` when
/// `f1, f2` is a regular sequence.
pub fn koszul_tor1_witness(
    ring: &QuotRing,
    r_elem: &Poly,
    seq: &[Poly],
    witness: &Poly,
) -> Result<KoszulWitness, CertError> {
    ring.check(r_elem);
    ring.check(witness);
    if seq.len() != 2 {
        return Err(CertError::Uncertified(format!(
            "expected two sequence elements, got {}",
            seq.len()
        )));
    }
    let regseq = is_regular_sequence(ring, seq).map_err(|e| CertError::Uncertified(e.to_string()))?;
    let annihilator = ring.annihilator(r_elem);
    let colon_sum = ideal_sum(&annihilator, &regseq.checks[1].base);
    let not_in = MembershipFact::check(witness, &colon_sum, "C", false);
    let mult_in = MembershipFact::check(&(&seq[1] * witness), &colon_sum, "C", true);
    Ok(KoszulWitness {
        regseq,
        principal_elem: r_elem.clone(),
        annihilator,
        colon_sum,
        witness: witness.clone(),
        not_in,
        mult_in,
    })
}

pub const W_FAILURE_VERDICT: &str = "principal ideal is not a w-ideal";

#[derive(Debug, Clone)]
pub struct WFailureCert {
    pub gv: GVCert,
    pub principal_elem: Poly,
    pub koszul: KoszulWitness,
    pub verdict: String,
}

impl WFailureCert {
    pub fn zero_ideal_colon(&self) -> &IdealGB {
        &self.koszul.annihilator
    }

    pub fn witness(&self) -> &Poly {
        &self.koszul.witness
    }

    pub fn fact_not_in(&self) -> &MembershipFact {
        &self.koszul.not_in
    }

    pub fn fact_mult_in(&self) -> &MembershipFact {
        &self.koszul.mult_in
    }

    /// Self-contained document: every ideal with its reduced basis, and
    /// every fact the verdict rests on.
    pub fn document(&self) -> CertificateDoc {
        let mut b = DocBuilder::new(self.gv.ring.ambient());
        self.gv.record(&mut b);
        self.koszul.record(&mut b);
        b.finish(&self.verdict)
    }
}

/// Composes the GV certificate for `J` with the Koszul witness. Only
/// returns a certificate when every sub-fact holds.
pub fn w_failure_certificate(
    ring: &QuotRing,
    r_elem: &Poly,
    j_gens: &[Poly],
    witness: &Poly,
) -> Result<WFailureCert, CertError> {
    ring.check(r_elem);
    if ring.is_zero(r_elem) {
        return Err(CertError::Degenerate(format!(
            "`{r_elem}` is zero in R, and the zero ideal is a w-ideal"
        )));
    }
    let gv = gv_certificate(ring, j_gens)?;
    let regseq = match &gv.evidence {
        GvEvidence::Depth2(c) => c,
        GvEvidence::UnitIdeal => {
            return Err(CertError::Degenerate(
                "J is the unit ideal, so Ext^1(R/J, -) vanishes".into(),
            ))
        }
    };
    let koszul = koszul_tor1_witness(ring, r_elem, &regseq.sequence, witness)?;
    if !koszul.not_in.holds() {
        return Err(CertError::FactFailed {
            name: "(a)".into(),
            detail: format!(
                "{} (normal form {})",
                koszul.not_in.describe(),
                koszul.not_in.normal_form
            ),
        });
    }
    if !koszul.mult_in.holds() {
        return Err(CertError::FactFailed {
            name: "(b)".into(),
            detail: format!(
                "{} (normal form {})",
                koszul.mult_in.describe(),
                koszul.mult_in.normal_form
            ),
        });
    }
    Ok(WFailureCert {
        gv,
        principal_elem: r_elem.clone(),
        koszul,
        verdict: W_FAILURE_VERDICT.to_string(),
    })
}

/// The ascending chain `(T : J) ⊆ (T : J^2) ⊆ ...` with `T = target + I`.
#[derive(Debug, Clone)]
pub struct RelativeClosure {
    pub target: IdealGB,
    pub steps: Vec<IdealGB>,
    /// First `k` with `(T : J^k) = (T : J^(k-1))`, where `(T : J^0) = T`.
    pub stabilized_at: Option<usize>,
}

impl RelativeClosure {
    pub fn last(&self) -> &IdealGB {
        self.steps.last().unwrap_or(&self.target)
    }

    /// Whether the first step is strictly larger than the target.
    pub fn strict_at_first_step(&self) -> bool {
        self.steps.first().is_some_and(|s| !ideal_equal(s, &self.target))
    }
}

pub const DEFAULT_K_MAX: usize = 5;

/// Relative w-closure lower bound of `target` inside `R`, via iterated colon
/// by the GV-ideal of `gv`.
pub fn relative_w_closure(
    ring: &QuotRing,
    target_gens: &[Poly],
    gv: &GVCert,
    k_max: usize,
) -> RelativeClosure {
    let target = extend_ideal(&ring.defining, target_gens);
    let by = gv.ideal.clone();
    let mut steps: Vec<IdealGB> = Vec::new();
    let mut stabilized_at = None;
    let mut prev = target.clone();
    for k in 1..=k_max {
        let next = ideal_quotient(&prev, &by);
        assert!(next.contains_ideal(&prev), "colon chain must ascend");
        let done = ideal_equal(&next, &prev);
        steps.push(next.clone());
        if done {
            stabilized_at = Some(k);
            break;
        }
        prev = next;
    }
    RelativeClosure {
        target,
        steps,
        stabilized_at,
    }
}
