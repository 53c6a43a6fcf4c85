//! Catalog runs: every check of the lab over a list of rings and the
//! modules built from them.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::module::FinModule;
use super::ring::{build_ring, FinError, FinRingSpec};
use super::set::{subset, Set};
use super::wops::{check_lemma_2_1, closure_law_violation, m_bracket_p, theorem_2_5_consistency, GVSet};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "WLAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Gv,
    Wclose,
    Lemma21,
    Cohen,
    All,
}

impl Suite {
    fn runs(self, part: Suite) -> bool {
        self == Suite::All || self == part
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gv => "gv",
            Suite::Wclose => "wclose",
            Suite::Lemma21 => "lemma21",
            Suite::Cohen => "cohen",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        [Suite::Gv, Suite::Wclose, Suite::Lemma21, Suite::Cohen, Suite::All]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// The built-in catalog: 34 rings of size at most 64.
pub fn default_catalog() -> Vec<FinRingSpec> {
    let z = FinRingSpec::zn;
    let pq = FinRingSpec::poly_quot;
    let prod = FinRingSpec::product;
    let mut out: Vec<FinRingSpec> = [2, 3, 4, 5, 6, 7, 8, 9, 12, 16, 18, 24, 27, 30, 32, 36, 60, 64]
        .into_iter()
        .map(z)
        .collect();
    out.extend([
        prod(z(2), z(2)),
        prod(z(2), z(3)),
        prod(z(2), z(4)),
        prod(z(4), z(4)),
        prod(z(3), z(9)),
        prod(z(2), pq(2, &[0, 0, 1])),
        pq(2, &[0, 0, 1]),
        pq(2, &[1, 1, 1]),
        pq(2, &[0, 1, 1]),
        pq(3, &[0, 0, 1]),
        pq(3, &[1, 0, 1]),
        pq(4, &[0, 0, 1]),
        pq(4, &[1, 1, 1]),
        pq(5, &[0, 0, 1]),
        pq(7, &[0, 0, 1]),
        pq(8, &[0, 0, 1]),
    ]);
    out
}

/// `R`, every `R/I` with `I ≠ 0` (including the zero module `R/R`), and
/// `R ⊕ R` and `R ⊕ R/I` whenever they have at most 64 elements.
pub fn catalog_modules(gv: &GVSet) -> Result<Vec<FinModule>, FinError> {
    let reg = gv.regular.clone();
    let mut out = vec![reg.clone()];
    for &i in &gv.ideals {
        if i != 1 {
            out.push(reg.quotient(i, &format!("R/{}", reg.describe(i)))?);
        }
    }
    let quotients = out.len();
    for k in 0..quotients {
        if reg.size() * out[k].size() <= 64 && out[k].size() > 1 {
            let sum = reg.direct_sum(&out[k])?;
            out.push(sum);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    pub pass: bool,
    /// Number of instances examined.
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<String>,
}

impl CheckOutcome {
    fn new(check: &str, module: Option<&FinModule>, cases: usize, witness: Option<String>) -> CheckOutcome {
        CheckOutcome {
            check: check.into(),
            module: module.map(|m| m.name().to_string()),
            pass: witness.is_none(),
            cases,
            witness,
            details: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RingReport {
    pub ring: String,
    pub spec: FinRingSpec,
    pub size: usize,
    pub ideals: Vec<String>,
    pub gv: Vec<String>,
    /// Whether the unit ideal is the only GV-ideal.
    pub gv_trivial: bool,
    pub primes: Vec<String>,
    pub modules: Vec<String>,
    pub checks: Vec<CheckOutcome>,
}

impl RingReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LabReport {
    pub suite: String,
    pub rings: Vec<RingReport>,
    /// Observation, not an assumption: every ring's GV set is `{R}`.
    pub gv_trivial_everywhere: bool,
    pub checks_run: usize,
    pub failed_checks: usize,
    pub verdict: String,
}

impl LabReport {
    pub fn pass(&self) -> bool {
        self.failed_checks == 0
    }

    /// Outcomes of one check across all rings.
    pub fn outcomes<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a CheckOutcome> + 'a {
        self.rings
            .iter()
            .flat_map(|r| r.checks.iter())
            .filter(move |c| c.check == check)
    }
}

/// Runs `suite` on one ring.
pub fn run_ring(spec: &FinRingSpec, max_size: usize, suite: Suite) -> Result<RingReport, FinError> {
    let ring = Arc::new(build_ring(spec, max_size)?);
    let gv = GVSet::compute(&ring);
    let reg = &gv.regular;
    let modules = catalog_modules(&gv)?;
    let primes = gv.primes();
    let mut checks = Vec::new();

    if suite.runs(Suite::Gv) {
        let mult = gv.multiplicative_violation();
        checks.push(CheckOutcome::new(
            "gv_multiplicative",
            None,
            gv.gv.len() * gv.gv.len(),
            mult.map(|(a, b)| format!("{} * {}", reg.describe(a), reg.describe(b))),
        ));
    }
    for m in &modules {
        let subs = m.submodules();
        if suite.runs(Suite::Wclose) {
            let tor = gv.gv_torsion(m);
            let bad = if !m.is_submodule(tor) {
                Some("torsion is not a submodule".to_string())
            } else if gv.is_trivial() && tor != 1 {
                Some(format!("torsion {} with trivial GV set", m.describe(tor)))
            } else {
                None
            };
            checks.push(CheckOutcome::new("gv_torsion", Some(m), 1, bad));
            checks.push(CheckOutcome::new(
                "closure_operator",
                Some(m),
                subs.len(),
                closure_law_violation(&gv, m, &subs),
            ));
            let closed: Vec<Set> = subs.iter().copied().filter(|&n| gv.is_w_closed(m, n)).collect();
            let bad = closed
                .iter()
                .find(|&&n| !gv.is_w_ideal(m.annihilator(n)))
                .map(|&n| format!("(0 :_R {}) is not a w-ideal", m.describe(n)));
            checks.push(CheckOutcome::new(
                "annihilator_w_ideal",
                Some(m),
                closed.len(),
                bad,
            ));
        }
        if suite.runs(Suite::Lemma21) {
            let rep = check_lemma_2_1(&gv, m, &subs);
            let mut out = CheckOutcome::new(
                "lemma_2_1",
                Some(m),
                rep.ideals_checked,
                rep.violations
                    .first()
                    .map(|i| format!("(0 :_M {i}) is not w-closed")),
            );
            out.details.push(format!("w-module: {}", rep.w_module.holds()));
            checks.push(out);

            let mut bad = None;
            for &p in &primes {
                let b = m_bracket_p(m, p)?;
                let ann = m.annihilated_by(p);
                if !m.is_submodule(b) || !subset(b, ann) {
                    bad = Some(format!(
                        "M[{}] = {} is not inside {}",
                        reg.describe(p),
                        m.describe(b),
                        m.describe(ann)
                    ));
                    break;
                }
            }
            checks.push(CheckOutcome::new(
                "m_bracket_containment",
                Some(m),
                primes.len(),
                bad,
            ));
        }
        if suite.runs(Suite::Cohen) {
            let rep = theorem_2_5_consistency(&gv, m)?;
            let cofg = &rep.cofinitely_generated;
            let mut out = CheckOutcome::new(
                "cofinite_definitions_agree",
                Some(m),
                cofg.families,
                (!cofg.agree()).then(|| {
                    format!(
                        "finite-subfamily {} vs inverse-system {}",
                        cofg.finite_subfamily, cofg.inverse_system
                    )
                }),
            );
            if !cofg.exhaustive {
                out.details
                    .push("families of size at most 3 plus the full family".into());
            }
            checks.push(out);

            let mut out = CheckOutcome::new(
                "theorem_2_5",
                Some(m),
                rep.primes.len(),
                (!rep.equivalent).then(|| format!("side 1 {} vs side 2 {}", rep.side1, rep.side2)),
            );
            out.details.push(format!(
                "side 1 {} (longest chain {}), side 2 {}, w-module {}",
                rep.side1,
                rep.longest_chain,
                rep.side2,
                rep.w_module.holds()
            ));
            for p in &rep.primes {
                out.details.push(format!(
                    "p = {}: N^p = {}{}, {} candidate(s), M[p] = {}",
                    p.prime,
                    p.chosen.as_deref().unwrap_or("none"),
                    if p.chosen_is_annihilator {
                        " = (0 :_M p)"
                    } else {
                        ""
                    },
                    p.candidates,
                    p.m_bracket
                ));
            }
            checks.push(out);
        }
    }

    Ok(RingReport {
        ring: ring.name(),
        spec: spec.clone(),
        size: ring.size(),
        ideals: gv.ideals.iter().map(|&i| reg.describe(i)).collect(),
        gv: gv.describe(),
        gv_trivial: gv.is_trivial(),
        primes: primes.iter().map(|&p| reg.describe(p)).collect(),
        modules: modules.iter().map(|m| m.name().to_string()).collect(),
        checks,
    })
}

fn pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

/// Runs `suite` on every ring of `specs` in parallel. Size bounds are
/// checked for all rings before any work starts.
pub fn run_catalog(specs: &[FinRingSpec], max_size: usize, suite: Suite) -> Result<LabReport, FinError> {
    for spec in specs {
        let size = spec.size().unwrap_or(u128::MAX);
        if size > max_size.min(super::ring::MAX_SIZE) as u128 {
            return Err(FinError::SizeBound {
                spec: spec.to_string(),
                size,
                bound: max_size.min(super::ring::MAX_SIZE),
            });
        }
    }
    let rings: Vec<RingReport> = pool().install(|| {
        specs
            .par_iter()
            .map(|s| run_ring(s, max_size, suite))
            .collect::<Result<_, _>>()
    })?;
    let checks_run = rings.iter().map(|r| r.checks.len()).sum();
    let failed_checks = rings
        .iter()
        .map(|r| r.checks.iter().filter(|c| !c.pass).count())
        .sum();
    Ok(LabReport {
        suite: suite.name().into(),
        gv_trivial_everywhere: rings.iter().all(|r| r.gv_trivial),
        rings,
        checks_run,
        failed_checks,
        verdict: if failed_checks == 0 { "pass" } else { "fail" }.into(),
    })
}
