//! Acceptance criteria, one line each. Runs as a plain binary so that the
//! lines are always printed; exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use wlab::example26::{Example26, GV_GENS, PRINCIPAL, WITNESS};
use wlab::finlab::{default_catalog, run_catalog, Suite, MAX_SIZE};
use wlab::groebner::{ideal_equal, ideal_quotient, ideal_sum};
use wlab::poly::{MonOrder, Poly};
use wlab::wcert::{gv_certificate, is_regular_sequence, koszul_tor1_witness, CheckMode, GvEvidence};

const EXAMPLE_BUDGET: Duration = Duration::from_secs(60);
const FINITE_BUDGET: Duration = Duration::from_secs(300);
const MEMBERSHIP_CASES: usize = 120;
const LAW_CASES: usize = 60;
const MIN_CATALOG: usize = 20;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn example_reproduction() -> Verdict {
    let start = Instant::now();
    let run = Example26::build(MonOrder::Grevlex, None).run();
    let elapsed = start.elapsed();
    let false_ones: Vec<&str> = run
        .assertions
        .iter()
        .chain(&run.conjunctions)
        .filter(|a| !a.actual)
        .map(|a| a.name.as_str())
        .collect();
    let cert = match &run.certificate {
        Ok(c) => c,
        Err(e) => return verdict(false, format!("no certificate: {e}")),
    };
    let doc = cert.document();
    let rechecks = [CheckMode::Recorded, CheckMode::Replay]
        .into_iter()
        .all(|m| doc.recheck(m).is_ok_and(|r| r.agrees()));
    let pass = run.assertions.len() == 21
        && run.conjunctions.len() == 3
        && false_ones.is_empty()
        && cert.verdict.contains("is not a w-ideal")
        && doc.all_facts_hold()
        && rechecks
        && elapsed < EXAMPLE_BUDGET;
    verdict(
        pass,
        format!(
            "21 assertions + 3 conjunctions, false: {false_ones:?}; certificate \"{}\" rechecked: {rechecks}; {:.2?} (< {:?})",
            cert.verdict, elapsed, EXAMPLE_BUDGET
        ),
    )
}

fn gens(ex: &Example26) -> Vec<Poly> {
    GV_GENS.iter().map(|g| ex.poly(g)).collect()
}

fn regular_sequence_and_gv() -> Verdict {
    let ex = Example26::build(MonOrder::Grevlex, None);
    let seq = match is_regular_sequence(&ex.quot, &gens(&ex)) {
        Ok(s) => s,
        Err(e) => return verdict(false, format!("x1, x2 not regular: {e}")),
    };
    let seq_doc = seq
        .document()
        .recheck(CheckMode::Replay)
        .is_ok_and(|r| r.agrees());
    let gv = match gv_certificate(&ex.quot, &gens(&ex)) {
        Ok(g) => g,
        Err(e) => return verdict(false, format!("no GV certificate: {e}")),
    };
    let depth2 = matches!(&gv.evidence, GvEvidence::Depth2(r) if r.sequence.len() == 2);
    let gv_doc = gv.document();
    let gv_ok = gv_doc.all_facts_hold() && gv_doc.recheck(CheckMode::Replay).is_ok_and(|r| r.agrees());
    let on_j = ideal_equal(&gv.ideal, &ex.j);
    verdict(
        seq_doc && depth2 && gv_ok && on_j,
        format!(
            "regular sequence certificate replays: {seq_doc}; depth-2 evidence: {depth2}; GV document valid: {gv_ok}; ideal is J: {on_j}"
        ),
    )
}

fn koszul_witness() -> Verdict {
    let ex = Example26::build(MonOrder::Grevlex, None);
    let w = match koszul_tor1_witness(&ex.quot, &ex.poly(PRINCIPAL), &gens(&ex), &ex.poly(WITNESS)) {
        Ok(w) => w,
        Err(e) => return verdict(false, e.to_string()),
    };
    // the colon-sum ideal must be (I : T) + K
    let target = ideal_sum(&ideal_quotient(&ex.i, &ex.t), &ex.k);
    let same = ideal_equal(&w.colon_sum, &target);
    let s3 = !target.contains(&ex.poly(WITNESS));
    let s4 = target.contains(&ex.poly("x2*c"));
    let doc_ok = w.document().recheck(CheckMode::Replay).is_ok_and(|r| r.agrees());
    verdict(
        w.holds() && same && s3 && s4 && doc_ok,
        format!(
            "(a) {}; (b) {}; colon sum = (I : T) + K: {same}; S3 {s3}, S4 {s4}",
            w.not_in.describe(),
            w.mult_in.describe()
        ),
    )
}

fn membership_oracle() -> Verdict {
    let ex = Example26::build(MonOrder::Grevlex, None);
    let mut oracle = MembershipOracle::new(&ex);
    let cases = membership_cases(&ex, 2024, MEMBERSHIP_CASES);
    let mut agree = 0;
    let mut members = 0;
    for f in &cases {
        let expected = oracle.in_i(f);
        members += expected as usize;
        agree += (ex.i.contains(&to_poly(f, &ex.ring)) == expected) as usize;
    }
    let max_deg = cases.iter().map(total_degree).max().unwrap_or(0);
    verdict(
        agree == cases.len() && cases.len() >= 100 && max_deg <= 4,
        format!(
            "{agree}/{} agree ({members} members), degree <= {max_deg}",
            cases.len()
        ),
    )
}

fn engine_oracle() -> Verdict {
    let ex = Example26::build(MonOrder::Grevlex, None);
    let mut differing = Vec::new();
    for (name, ideal) in [
        ("I", &ex.i),
        ("J", &ex.j),
        ("K", &ex.k),
        ("L", &ex.l),
        ("T", &ex.t),
    ] {
        let generators: Vec<P> = ideal.generators().iter().map(from_poly).collect();
        let engine = sorted(ideal.basis().iter().map(from_poly).collect());
        if naive_buchberger(&generators, Ord2::Grevlex) != engine {
            differing.push(name);
        }
    }
    verdict(
        differing.is_empty(),
        format!("reduced bases of I, J, K, L, T identical; differing: {differing:?}"),
    )
}

fn order_invariance() -> Verdict {
    let verdicts = |o| -> Vec<(String, bool)> {
        Example26::build(o, None)
            .run()
            .assertions
            .into_iter()
            .map(|a| (a.name, a.actual))
            .collect()
    };
    let g = verdicts(MonOrder::Grevlex);
    let l = verdicts(MonOrder::Lex);
    verdict(
        g == l && g.len() == 21,
        format!("{} verdicts compared, identical: {}", g.len(), g == l),
    )
}

fn colon_laws() -> Verdict {
    let cases = law_cases(7, LAW_CASES);
    let failures: Vec<String> = cases
        .iter()
        .enumerate()
        .filter_map(|(n, [i, j, k])| check_laws(i, j, k).err().map(|law| format!("case {n}: {law}")))
        .collect();
    verdict(
        failures.is_empty(),
        format!("{} cases, failures: {failures:?}", cases.len()),
    )
}

fn finite_lab() -> Verdict {
    let start = Instant::now();
    let catalog = default_catalog();
    let report = match run_catalog(&catalog, MAX_SIZE, Suite::All) {
        Ok(r) => r,
        Err(e) => return verdict(false, e.to_string()),
    };
    let elapsed = start.elapsed();
    let parts = [
        ("a", "lemma_2_1"),
        ("b", "m_bracket_containment"),
        ("c", "closure_operator"),
        ("d", "cofinite_definitions_agree"),
        ("e", "theorem_2_5"),
        ("f", "gv_multiplicative"),
    ];
    let mut summary = Vec::new();
    let mut pass = catalog.len() >= MIN_CATALOG && report.rings.iter().all(|r| r.size <= MAX_SIZE);
    for (tag, check) in parts {
        let outs: Vec<_> = report.outcomes(check).collect();
        let ok = outs.iter().filter(|o| o.pass).count();
        pass &= !outs.is_empty() && ok == outs.len();
        summary.push(format!("({tag}) {ok}/{}", outs.len()));
    }
    pass &= elapsed < FINITE_BUDGET;
    verdict(
        pass,
        format!(
            "{} rings; {}; GV trivial everywhere: {}; {:.2?} (< {:?})",
            report.rings.len(),
            summary.join(", "),
            report.gv_trivial_everywhere,
            elapsed,
            FINITE_BUDGET
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 8] = [
        ("example reproduction", example_reproduction),
        ("regular-sequence and GV certificates", regular_sequence_and_gv),
        ("Koszul witness", koszul_witness),
        ("oracle equivalence (membership)", membership_oracle),
        ("oracle equivalence (engine)", engine_oracle),
        ("order invariance", order_invariance),
        ("colon/intersection law suite", colon_laws),
        ("finite-lab exhaustive suite", finite_lab),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let v = check();
        failed += !v.pass as usize;
        println!("{} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
