//! Serializable certificate documents.
//!
//! A document lists named ideals (generators, reduced basis, and how the
//! ideal was derived from earlier ones) followed by facts about them. It can
//! be checked in two ways:
//!
//! * [`CheckMode::Recorded`] trusts no computation but runs none either: each
//!   recorded basis is checked to be a reduced Gröbner basis containing its
//!   generators, each derivation is checked in the directions that reduce to
//!   membership tests, and every fact is re-evaluated by normal forms.
//! * [`CheckMode::Replay`] recomputes every ideal from its derivation with a
//!   fresh engine run and compares bases before re-evaluating the facts.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::groebner::{extend_ideal, ideal_intersect, ideal_quotient, ideal_sum, reduce_full, IdealGB};
use crate::poly::{Poly, PolyError, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Derivation {
    /// Generated by the listed generators.
    Given,
    /// `base + (polys)`
    Extend { base: String, polys: Vec<String> },
    /// `(base : (polys))`
    Colon { base: String, polys: Vec<String> },
    /// Sum of earlier ideals.
    Sum { parts: Vec<String> },
    /// Intersection of earlier ideals.
    Intersect { parts: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealRecord {
    pub name: String,
    pub generators: Vec<String>,
    pub basis: Vec<String>,
    pub derivation: Derivation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactKind {
    /// polynomial `lhs` lies in ideal `rhs`
    Member,
    /// polynomial `lhs` does not lie in ideal `rhs`
    NotMember,
    /// ideals `lhs` and `rhs` coincide
    IdealEqual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactRecord {
    /// Optional name such as `A1`, used to match report assertions.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    pub kind: FactKind,
    pub lhs: String,
    pub rhs: String,
    /// Whether the statement is true.
    pub verdict: bool,
    /// Normal form of `lhs` modulo `rhs`; for equalities, the first nonzero
    /// normal form met while reducing one basis modulo the other, or `0`.
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub ring: RingSpec,
    pub ideals: Vec<IdealRecord>,
    pub facts: Vec<FactRecord>,
    /// Conclusion drawn from the facts, empty if none is claimed.
    #[serde(default)]
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DocError {
    #[error("invalid ring: {0}")]
    Ring(PolyError),
    #[error("ideal `{name}`: {msg}")]
    Ideal { name: String, msg: String },
    #[error("fact {index}: {msg}")]
    Fact { index: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Recorded,
    Replay,
}

/// Outcome of re-evaluating a document's facts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recheck {
    pub verdicts: Vec<bool>,
    /// Indices of facts whose recomputed verdict or evidence differs from
    /// the recorded one.
    pub mismatches: Vec<usize>,
}

impl Recheck {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn eval_fact(
    kind: FactKind,
    lhs: &str,
    rhs: &str,
    ring: &Arc<RingSpec>,
    ideals: &BTreeMap<String, IdealGB>,
) -> Result<(bool, String), String> {
    let target = ideals.get(rhs).ok_or_else(|| format!("unknown ideal `{rhs}`"))?;
    match kind {
        FactKind::Member | FactKind::NotMember => {
            let f = Poly::parse(lhs, ring).map_err(|e| e.to_string())?;
            let nf = target.normal_form(&f);
            let inside = nf.is_zero();
            let verdict = if kind == FactKind::Member { inside } else { !inside };
            Ok((verdict, nf.to_string()))
        }
        FactKind::IdealEqual => {
            let source = ideals.get(lhs).ok_or_else(|| format!("unknown ideal `{lhs}`"))?;
            let nonzero = source
                .basis()
                .iter()
                .map(|g| target.normal_form(g))
                .chain(target.basis().iter().map(|g| source.normal_form(g)))
                .find(|nf| !nf.is_zero());
            Ok(match nonzero {
                Some(nf) => (false, nf.to_string()),
                None => (true, "0".into()),
            })
        }
    }
}

fn parse_all(texts: &[String], ring: &Arc<RingSpec>) -> Result<Vec<Poly>, PolyError> {
    texts.iter().map(|s| Poly::parse(s, ring)).collect()
}

fn reduces_to_zero(f: &Poly, ideal: &IdealGB) -> bool {
    let refs: Vec<&Poly> = ideal.basis().iter().collect();
    reduce_full(f, &refs, None).is_zero()
}

impl CertificateDoc {
    fn ring_arc(&self) -> Result<Arc<RingSpec>, DocError> {
        self.ring.validate().map_err(DocError::Ring)?;
        Ok(Arc::new(self.ring.clone()))
    }

    /// Ideals of the document, either accepted from their recorded bases or
    /// recomputed.
    pub fn materialize(&self, mode: CheckMode) -> Result<BTreeMap<String, IdealGB>, DocError> {
        let ring = self.ring_arc()?;
        let mut done: BTreeMap<String, IdealGB> = BTreeMap::new();
        for rec in &self.ideals {
            let err = |msg: String| DocError::Ideal {
                name: rec.name.clone(),
                msg,
            };
            if done.contains_key(&rec.name) {
                return Err(err("defined twice".into()));
            }
            let gens = parse_all(&rec.generators, &ring).map_err(|e| err(e.to_string()))?;
            let basis = parse_all(&rec.basis, &ring).map_err(|e| err(e.to_string()))?;
            let lookup = |n: &String| {
                done.get(n)
                    .ok_or_else(|| err(format!("refers to undefined ideal `{n}`")))
            };
            let ideal = match mode {
                CheckMode::Recorded => {
                    let ideal = IdealGB::from_recorded(&ring, gens, basis).map_err(err)?;
                    // derivations checked in the directions that need no new basis
                    match &rec.derivation {
                        Derivation::Given => {}
                        Derivation::Extend { base, polys } => {
                            let base = lookup(base)?;
                            let polys = parse_all(polys, &ring).map_err(|e| err(e.to_string()))?;
                            if !base
                                .basis()
                                .iter()
                                .chain(&polys)
                                .all(|g| reduces_to_zero(g, &ideal))
                            {
                                return Err(err("does not contain its summands".into()));
                            }
                        }
                        Derivation::Sum { parts } => {
                            for p in parts {
                                if !lookup(p)?.basis().iter().all(|g| reduces_to_zero(g, &ideal)) {
                                    return Err(err(format!("does not contain `{p}`")));
                                }
                            }
                        }
                        Derivation::Intersect { parts } => {
                            for p in parts {
                                let part = lookup(p)?;
                                if !ideal.basis().iter().all(|g| reduces_to_zero(g, part)) {
                                    return Err(err(format!("is not contained in `{p}`")));
                                }
                            }
                        }
                        Derivation::Colon { base, polys } => {
                            let base = lookup(base)?;
                            let polys = parse_all(polys, &ring).map_err(|e| err(e.to_string()))?;
                            if !base.basis().iter().all(|g| reduces_to_zero(g, &ideal)) {
                                return Err(err("does not contain the base ideal".into()));
                            }
                            for b in ideal.basis() {
                                for p in &polys {
                                    if !reduces_to_zero(&(b * p), base) {
                                        return Err(err(format!("`{b}` times `{p}` leaves the base")));
                                    }
                                }
                            }
                        }
                    }
                    ideal
                }
                CheckMode::Replay => {
                    let ideal = match &rec.derivation {
                        Derivation::Given => IdealGB::new(&ring, gens),
                        Derivation::Extend { base, polys } => {
                            let polys = parse_all(polys, &ring).map_err(|e| err(e.to_string()))?;
                            extend_ideal(lookup(base)?, &polys)
                        }
                        Derivation::Sum { parts } => {
                            let mut acc = IdealGB::zero(&ring);
                            for p in parts {
                                acc = ideal_sum(&acc, lookup(p)?);
                            }
                            acc
                        }
                        Derivation::Intersect { parts } => {
                            let mut acc = IdealGB::unit(&ring);
                            for p in parts {
                                acc = ideal_intersect(&acc, lookup(p)?);
                            }
                            acc
                        }
                        Derivation::Colon { base, polys } => {
                            let polys = parse_all(polys, &ring).map_err(|e| err(e.to_string()))?;
                            ideal_quotient(lookup(base)?, &IdealGB::new(&ring, polys))
                        }
                    };
                    if ideal.basis_strings() != rec.basis {
                        return Err(err("recomputed basis differs from the recorded one".into()));
                    }
                    ideal
                }
            };
            done.insert(rec.name.clone(), ideal);
        }
        Ok(done)
    }

    pub fn recheck(&self, mode: CheckMode) -> Result<Recheck, DocError> {
        let ring = self.ring_arc()?;
        let ideals = self.materialize(mode)?;
        let mut verdicts = Vec::with_capacity(self.facts.len());
        let mut mismatches = Vec::new();
        for (index, fact) in self.facts.iter().enumerate() {
            let (verdict, evidence) = eval_fact(fact.kind, &fact.lhs, &fact.rhs, &ring, &ideals)
                .map_err(|msg| DocError::Fact { index, msg })?;
            if verdict != fact.verdict || evidence != fact.evidence {
                mismatches.push(index);
            }
            verdicts.push(verdict);
        }
        Ok(Recheck { verdicts, mismatches })
    }

    pub fn all_facts_hold(&self) -> bool {
        self.facts.iter().all(|f| f.verdict)
    }
}

/// Accumulates ideals and facts, evaluating each fact exactly as
/// [`CertificateDoc::recheck`] will.
#[derive(Debug, Clone)]
pub struct DocBuilder {
    ring: Arc<RingSpec>,
    ideals: Vec<IdealRecord>,
    live: BTreeMap<String, IdealGB>,
    facts: Vec<FactRecord>,
}

impl DocBuilder {
    pub fn new(ring: &Arc<RingSpec>) -> DocBuilder {
        DocBuilder {
            ring: ring.clone(),
            ideals: Vec::new(),
            live: BTreeMap::new(),
            facts: Vec::new(),
        }
    }

    pub fn has_ideal(&self, name: &str) -> bool {
        self.live.contains_key(name)
    }

    /// Registers `ideal` under `name` unless the name is taken.
    pub fn ideal(&mut self, name: &str, ideal: &IdealGB, derivation: Derivation) -> String {
        if !self.live.contains_key(name) {
            self.ideals.push(IdealRecord {
                name: name.to_string(),
                generators: ideal.generators().iter().map(Poly::to_string).collect(),
                basis: ideal.basis_strings(),
                derivation,
            });
            self.live.insert(name.to_string(), ideal.clone());
        }
        name.to_string()
    }

    pub fn fact(&mut self, kind: FactKind, lhs: &str, rhs: &str) -> bool {
        self.fact_labeled("", kind, lhs, rhs)
    }

    pub fn fact_labeled(&mut self, label: &str, kind: FactKind, lhs: &str, rhs: &str) -> bool {
        let (verdict, evidence) =
            eval_fact(kind, lhs, rhs, &self.ring, &self.live).expect("fact refers to recorded ideals");
        self.facts.push(FactRecord {
            label: label.to_string(),
            kind,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            verdict,
            evidence,
        });
        verdict
    }

    pub fn finish(self, verdict: &str) -> CertificateDoc {
        CertificateDoc {
            ring: (*self.ring).clone(),
            ideals: self.ideals,
            facts: self.facts,
            verdict: verdict.to_string(),
        }
    }
}

pub(crate) fn poly_list(polys: &[Poly]) -> Vec<String> {
    polys.iter().map(Poly::to_string).collect()
}
