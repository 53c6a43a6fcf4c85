//! Command-line driver: `verify-example26`, `ideal`, `finite`, `check-cert`.
//!
//! Exit codes: 0 when every assertion passes, 1 when a mathematical
//! assertion fails, 2 on usage or input errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::example26::{Example26, GV_GENS, IDEAL_NAMES, PRINCIPAL};
use crate::finlab::{default_catalog, run_catalog, FinRingSpec, LabReport, Suite, MAX_SIZE};
use crate::groebner::{eliminate, ideal_equal, ideal_intersect, ideal_quotient, ideal_sum, IdealGB};
use crate::poly::{MonOrder, Poly, RingSpec};
use crate::report::{AssertionResult, RunReport};
use crate::wcert::{
    gv_certificate, relative_w_closure, CertificateDoc, CheckMode, Derivation, DocBuilder, FactKind,
    DEFAULT_K_MAX,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Prefix selecting an ideal of the built-in example, as in `example26:K`.
pub const BUILTIN_PREFIX: &str = "example26:";

#[derive(Parser, Debug)]
#[command(
    name = "wlab",
    version,
    about = "Gröbner certificates and a finite-ring w-operation lab"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the 21 assertions of the built-in example and its w-failure certificate.
    #[command(name = "verify-example26")]
    VerifyExample26 {
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
        #[command(flatten)]
        out: OutputArgs,
        /// Perturb generator i (1..7) of I by adding x1*x2.
        #[arg(long, value_name = "i")]
        mutate_gen: Option<usize>,
    },
    /// Gröbner calculus on ideals given inline, as JSON files or as
    /// `example26:<I|J|K|L|T>`.
    Ideal {
        #[command(subcommand)]
        op: IdealOp,
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exhaustive checks over a catalog of finite commutative rings.
    Finite {
        /// gv, wclose, lemma21, cohen or all.
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// JSON list of ring specs (objects or strings such as "Z/2 x Z/3").
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// A single ring in text notation; repeatable, replaces the default catalog.
        #[arg(long = "ring", value_name = "SPEC")]
        rings: Vec<String>,
        /// Reject rings with more elements than this.
        #[arg(long, default_value_t = MAX_SIZE)]
        max_ring_size: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Re-validate a certificate or a JSON run report offline.
    CheckCert {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand, Debug)]
enum IdealOp {
    /// Reduced Gröbner basis.
    Gb {
        ideal: String,
        #[arg(long, value_name = "IDEAL")]
        expect_equal: Option<String>,
    },
    /// Ideal membership of a polynomial.
    Member {
        poly: String,
        ideal: String,
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Colon ideal (A : B).
    Colon {
        ideal: String,
        by: String,
        #[arg(long, value_name = "IDEAL")]
        expect_equal: Option<String>,
    },
    /// Intersection A ∩ B.
    Intersect {
        left: String,
        right: String,
        #[arg(long, value_name = "IDEAL")]
        expect_equal: Option<String>,
    },
    /// Elimination ideal A ∩ Q[remaining variables].
    Eliminate {
        ideal: String,
        /// Comma-separated variables to eliminate.
        #[arg(long, value_delimiter = ',', required = true)]
        drop: Vec<String>,
    },
    /// Sum A + B.
    Sum {
        left: String,
        right: String,
        #[arg(long, value_name = "IDEAL")]
        expect_equal: Option<String>,
    },
}

#[derive(Args, Debug)]
struct RingArgs {
    /// Comma-separated variables for inline generators.
    #[arg(long, value_delimiter = ',', global = true)]
    vars: Option<Vec<String>>,
    /// Monomial order; overrides the order of file and built-in rings.
    #[arg(long, value_enum, global = true)]
    order: Option<OrderArg>,
}

#[derive(Args, Debug, Clone, Copy)]
struct OutputArgs {
    /// Print the JSON run report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Record wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum OrderArg {
    Lex,
    Grlex,
    Grevlex,
}

impl From<OrderArg> for MonOrder {
    fn from(o: OrderArg) -> MonOrder {
        match o {
            OrderArg::Lex => MonOrder::Lex,
            OrderArg::Grlex => MonOrder::Grlex,
            OrderArg::Grevlex => MonOrder::Grevlex,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Recorded,
    Replay,
    Both,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// Result of a command: the report plus its text rendering.
struct Outcome {
    report: RunReport,
    text: String,
}

/// Runs the CLI on `args` (program name first), writing to stdout/stderr.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let json = match &cli.command {
        Command::VerifyExample26 { out, .. }
        | Command::Ideal { out, .. }
        | Command::Finite { out, .. }
        | Command::CheckCert { out, .. } => out.json,
    };
    match dispatch(cli.command, echo) {
        Ok(Outcome { report, text }) => {
            // a closed pipe downstream is not an error of ours
            let mut stdout = std::io::stdout().lock();
            let _ = if json {
                writeln!(stdout, "{}", report.to_json())
            } else {
                stdout.write_all(text.as_bytes())
            };
            if report.pass() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, echo: Vec<String>) -> Result<Outcome> {
    let mut report = RunReport::new(echo);
    let text = match command {
        Command::VerifyExample26 {
            order,
            out,
            mutate_gen,
        } => verify_example26(&mut report, order.into(), mutate_gen, out.timings)?,
        Command::Ideal { op, ring, out } => ideal_command(&mut report, op, &ring, out.timings)?,
        Command::Finite {
            suite,
            catalog,
            rings,
            max_ring_size,
            out,
        } => finite_command(
            &mut report,
            suite,
            catalog.as_deref(),
            &rings,
            max_ring_size,
            out.timings,
        )?,
        Command::CheckCert { file, mode, .. } => check_cert(&mut report, &file, mode)?,
    };
    report.settle();
    Ok(Outcome { report, text })
}

fn millis(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn pass_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

// ---------------------------------------------------------------- example

fn verify_example26(
    report: &mut RunReport,
    order: MonOrder,
    mutate: Option<usize>,
    timings: bool,
) -> Result<String> {
    let t0 = Instant::now();
    let ex = Example26::try_build(order, mutate).map_err(|e| anyhow!(e))?;
    let t_build = millis(t0);
    let t1 = Instant::now();
    let run = ex.run();
    let t_run = millis(t1);

    let mut text = String::new();
    for a in run.assertions.iter().chain(&run.conjunctions) {
        report.push(AssertionResult::new(&a.name, &a.statement, a.expected, a.actual));
        writeln!(
            text,
            "{:<8} {:<5} {}  {}",
            a.name,
            a.actual,
            pass_word(a.pass()),
            a.statement
        )?;
    }
    let cert_summary = match &run.certificate {
        Ok(cert) => {
            report.certificates.insert("w_failure".into(), cert.document());
            cert.verdict.clone()
        }
        Err(e) => e.to_string(),
    };
    report.push(AssertionResult::holds(
        "certificate",
        format!("(r) is certified not to be a w-ideal: {cert_summary}"),
        run.certificate.is_ok(),
    ));
    report
        .certificates
        .insert("assertions".into(), run.document.clone());
    writeln!(text, "certificate: {cert_summary}")?;
    writeln!(text, "(I : K) = {}", run.colon_i_k.basis_strings().join(", "))?;
    writeln!(text, "(K : L) = {}", run.colon_k_l.basis_strings().join(", "))?;

    let t2 = Instant::now();
    let observations = observations(&ex);
    let t_obs = millis(t2);
    for (k, v) in observations.as_object().expect("object") {
        writeln!(text, "observed {k}: {v}")?;
    }

    report.result = json!({
        "order": order.name(),
        "mutated_generator": mutate,
        "certificate_verdict": cert_summary,
        "colon_I_K": run.colon_i_k.basis_strings(),
        "colon_K_L": run.colon_k_l.basis_strings(),
        "observations": observations,
    });
    if timings {
        report.timings.insert("build".into(), t_build);
        report.timings.insert("assertions".into(), t_run);
        report.timings.insert("observations".into(), t_obs);
    }
    report.settle();
    writeln!(text, "verdict: {}", report.verdict)?;
    Ok(text)
}

/// Exploratory facts about the example that the assertions do not decide.
fn observations(ex: &Example26) -> Value {
    let a = ex.poly("a");
    let a_in_rt = ex.t.contains(&a);
    // (I : J) = I says R has no nonzero element killed by this J
    let no_j_torsion = ideal_equal(&ideal_quotient(&ex.i, &ex.j), &ex.i);
    let gv: Vec<Poly> = GV_GENS.iter().map(|g| ex.poly(g)).collect();
    let chain = gv_certificate(&ex.quot, &gv).ok().map(|cert| {
        let rc = relative_w_closure(&ex.quot, &[ex.poly(PRINCIPAL)], &cert, DEFAULT_K_MAX);
        json!({
            "steps": rc.steps.iter().map(IdealGB::basis_strings).collect::<Vec<_>>(),
            "strict_at_first_step": rc.strict_at_first_step(),
            "stabilized_at": rc.stabilized_at,
            "contains_a": rc.last().contains(&a),
        })
    });
    json!({
        "a_in_principal_ideal": a_in_rt,
        "no_torsion_for_gv_ideal_J": no_j_torsion,
        "colon_chain_of_principal_ideal": chain,
    })
}

// ---------------------------------------------------------------- ideal

#[derive(Debug, Deserialize)]
struct IdealFile {
    ring: RingSpec,
    generators: Vec<String>,
}

enum Source {
    Builtin(String),
    File(IdealFile),
    Inline(Vec<String>),
}

fn classify(arg: &str) -> Result<Source> {
    if let Some(name) = arg.strip_prefix(BUILTIN_PREFIX) {
        if !IDEAL_NAMES.contains(&name) {
            bail!(
                "unknown built-in ideal `{arg}` (choose from {})",
                IDEAL_NAMES.join(", ")
            );
        }
        return Ok(Source::Builtin(name.into()));
    }
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        let file: IdealFile = serde_json::from_str(&text).with_context(|| format!("parsing {arg}"))?;
        return Ok(Source::File(file));
    }
    let inner = arg.trim();
    let inner = inner
        .strip_prefix(['{', '[', '('])
        .and_then(|s| s.strip_suffix(['}', ']', ')']))
        .unwrap_or(inner);
    let gens: Vec<String> = inner
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    Ok(Source::Inline(gens))
}

/// Ring and ideal resolution shared by the `ideal` subcommands.
struct IdealCtx {
    ring: Arc<RingSpec>,
    example: Option<Example26>,
}

impl IdealCtx {
    fn new(args: &RingArgs, sources: &[&Source]) -> Result<IdealCtx> {
        let order_override = args.order.map(MonOrder::from);
        let needs_example = sources.iter().any(|s| matches!(s, Source::Builtin(_)));
        let example = needs_example.then(|| Example26::build(order_override.unwrap_or_default(), None));
        let ring = if let Some(vars) = &args.vars {
            RingSpec::new(vars, order_override.unwrap_or_default())?
        } else if let Some(ex) = &example {
            ex.ring.clone()
        } else if let Some(Source::File(f)) = sources.iter().find(|s| matches!(s, Source::File(_))) {
            f.ring.validate()?;
            let order = order_override.unwrap_or(f.ring.order);
            RingSpec::new(&f.ring.vars, order)?
        } else {
            bail!("inline generators need --vars");
        };
        Ok(IdealCtx { ring, example })
    }

    fn check_vars(&self, vars: &[String], what: &str) -> Result<()> {
        if vars != self.ring.vars.as_slice() {
            bail!(
                "{what} lives in ring [{}], expected [{}]",
                vars.join(", "),
                self.ring.vars.join(", ")
            );
        }
        Ok(())
    }

    fn ideal(&self, source: &Source, label: &str) -> Result<IdealGB> {
        let gens: Vec<String> = match source {
            Source::Builtin(name) => {
                let ex = self.example.as_ref().expect("example built for built-in ideals");
                self.check_vars(&ex.ring.vars, label)?;
                let ideal = ex.ideal_named(name).expect("validated name");
                ideal.generators().iter().map(Poly::to_string).collect()
            }
            Source::File(f) => {
                self.check_vars(&f.ring.vars, label)?;
                f.generators.clone()
            }
            Source::Inline(g) => g.clone(),
        };
        IdealGB::parse(&self.ring, &gens).with_context(|| format!("parsing {label}"))
    }

    fn poly(&self, text: &str) -> Result<Poly> {
        Poly::parse(text, &self.ring).with_context(|| format!("parsing polynomial `{text}`"))
    }
}

fn ideal_command(report: &mut RunReport, op: IdealOp, ring: &RingArgs, timings: bool) -> Result<String> {
    let mut inputs: Vec<(&str, String)> = Vec::new();
    let mut expect_equal = None;
    match &op {
        IdealOp::Gb {
            ideal,
            expect_equal: e,
        } => {
            inputs.push(("A", ideal.clone()));
            expect_equal = e.clone();
        }
        IdealOp::Member { ideal, .. } | IdealOp::Eliminate { ideal, .. } => inputs.push(("A", ideal.clone())),
        IdealOp::Colon {
            ideal: l,
            by: r,
            expect_equal: e,
        }
        | IdealOp::Intersect {
            left: l,
            right: r,
            expect_equal: e,
        }
        | IdealOp::Sum {
            left: l,
            right: r,
            expect_equal: e,
        } => {
            inputs.push(("A", l.clone()));
            inputs.push(("B", r.clone()));
            expect_equal = e.clone();
        }
    }
    if let Some(e) = &expect_equal {
        inputs.push(("E", e.clone()));
    }
    let sources: Vec<Source> = inputs.iter().map(|(_, s)| classify(s)).collect::<Result<_>>()?;
    let ctx = IdealCtx::new(ring, &sources.iter().collect::<Vec<_>>())?;

    let t0 = Instant::now();
    let mut named: BTreeMap<&str, IdealGB> = BTreeMap::new();
    for ((name, _), src) in inputs.iter().zip(&sources) {
        named.insert(name, ctx.ideal(src, name)?);
    }
    let a = &named["A"];
    let mut b = DocBuilder::new(&ctx.ring);
    b.ideal("A", a, Derivation::Given);
    if let Some(bi) = named.get("B") {
        b.ideal("B", bi, Derivation::Given);
    }

    let mut text = String::new();
    let (op_name, result): (&str, Option<(String, IdealGB)>) = match &op {
        IdealOp::Gb { .. } => ("gb", Some(("A".into(), a.clone()))),
        IdealOp::Colon { .. } => {
            let bi = &named["B"];
            let q = ideal_quotient(a, bi);
            let name = b.ideal(
                "(A : B)",
                &q,
                Derivation::Colon {
                    base: "A".into(),
                    polys: bi.basis_strings(),
                },
            );
            ("colon", Some((name, q)))
        }
        IdealOp::Intersect { .. } => {
            let q = ideal_intersect(a, &named["B"]);
            let name = b.ideal(
                "A cap B",
                &q,
                Derivation::Intersect {
                    parts: vec!["A".into(), "B".into()],
                },
            );
            ("intersect", Some((name, q)))
        }
        IdealOp::Sum { .. } => {
            let q = ideal_sum(a, &named["B"]);
            let name = b.ideal(
                "A + B",
                &q,
                Derivation::Sum {
                    parts: vec!["A".into(), "B".into()],
                },
            );
            ("sum", Some((name, q)))
        }
        IdealOp::Member { poly, expect, .. } => {
            let f = ctx.poly(poly)?;
            let canonical = f.to_string();
            let member = b.fact(FactKind::Member, &canonical, "A");
            let nf = a.normal_form(&f).to_string();
            writeln!(text, "{member}")?;
            writeln!(text, "normal form: {nf}")?;
            if let Some(e) = expect {
                report.push(AssertionResult::new(
                    "member",
                    format!("{canonical} in A"),
                    *e,
                    member,
                ));
            }
            report.result = json!({
                "op": "member",
                "ring": &*ctx.ring,
                "poly": canonical,
                "ideal": a.basis_strings(),
                "member": member,
                "normal_form": nf,
            });
            ("member", None)
        }
        IdealOp::Eliminate { drop, .. } => {
            let drop: Vec<&str> = drop.iter().map(String::as_str).collect();
            let q = eliminate(a, &drop)?;
            for g in q.basis_strings() {
                writeln!(text, "{g}")?;
            }
            // the result lives in a smaller ring, so it gets its own document
            let mut eb = DocBuilder::new(q.ring());
            eb.ideal("A elim", &q, Derivation::Given);
            report.certificates.insert("eliminated".into(), eb.finish(""));
            report.result = json!({
                "op": "eliminate",
                "ring": &**q.ring(),
                "dropped": drop,
                "basis": q.basis_strings(),
            });
            ("eliminate", None)
        }
    };
    if let Some((name, q)) = &result {
        for g in q.basis_strings() {
            writeln!(text, "{g}")?;
        }
        report.result = json!({
            "op": op_name,
            "ring": &*ctx.ring,
            "name": name,
            "basis": q.basis_strings(),
        });
        if let Some(e) = named.get("E") {
            b.ideal("E", e, Derivation::Given);
            let equal = b.fact(FactKind::IdealEqual, name, "E");
            report.push(AssertionResult::holds("equal", format!("{name} eq E"), equal));
            writeln!(text, "equal to expected: {equal}")?;
        }
    }
    report.certificates.insert(op_name.into(), b.finish(""));
    if timings {
        report.timings.insert(op_name.into(), millis(t0));
    }
    Ok(text)
}

// ---------------------------------------------------------------- finite

/// Reads a catalog: a JSON list whose entries are ring-spec objects or
/// strings in ring notation.
pub fn load_catalog(path: &Path) -> Result<Vec<FinRingSpec>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let entries: Vec<Value> =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    entries
        .into_iter()
        .enumerate()
        .map(|(i, v)| match v {
            Value::String(s) => s.parse().map_err(|e: String| anyhow!("catalog entry {i}: {e}")),
            other => serde_json::from_value(other).with_context(|| format!("catalog entry {i}")),
        })
        .collect()
}

fn finite_command(
    report: &mut RunReport,
    suite: Suite,
    catalog: Option<&Path>,
    rings: &[String],
    max_size: usize,
    timings: bool,
) -> Result<String> {
    if max_size > MAX_SIZE {
        bail!("--max-ring-size {max_size} exceeds the hard bound {MAX_SIZE}");
    }
    let mut specs = match catalog {
        Some(p) => load_catalog(p)?,
        None if rings.is_empty() => default_catalog(),
        None => Vec::new(),
    };
    for r in rings {
        specs.push(r.parse().map_err(|e: String| anyhow!(e))?);
    }
    let t0 = Instant::now();
    let lab = run_catalog(&specs, max_size, suite)?;
    if timings {
        report.timings.insert("catalog".into(), millis(t0));
    }
    let text = render_lab(&lab, suite)?;
    for ring in &lab.rings {
        let mut names: Vec<&str> = ring.checks.iter().map(|c| c.check.as_str()).collect();
        names.dedup();
        for name in names {
            let outs: Vec<_> = ring.checks.iter().filter(|c| c.check == name).collect();
            let cases: usize = outs.iter().map(|c| c.cases).sum();
            let failed = outs.iter().find(|c| !c.pass);
            let statement = match failed {
                None => format!("{cases} cases"),
                Some(c) => format!(
                    "module {}: {}",
                    c.module.as_deref().unwrap_or("-"),
                    c.witness.as_deref().unwrap_or("")
                ),
            };
            report.push(AssertionResult::holds(
                format!("{}: {name}", ring.ring),
                statement,
                failed.is_none(),
            ));
        }
    }
    report.result = serde_json::to_value(&lab)?;
    Ok(text)
}

fn render_lab(lab: &LabReport, suite: Suite) -> Result<String> {
    let mut text = String::new();
    for r in &lab.rings {
        let passed = r.checks.iter().filter(|c| c.pass).count();
        writeln!(
            text,
            "{} ({} elements): GV = {{{}}}; primes {}; {passed}/{} checks pass",
            r.ring,
            r.size,
            r.gv.join(", "),
            r.primes.join(", "),
            r.checks.len()
        )?;
        for c in &r.checks {
            let module = c.module.as_deref().unwrap_or("-");
            if let Some(w) = &c.witness {
                writeln!(text, "  FAIL {} [{module}]: {w}", c.check)?;
            }
            if suite == Suite::Cohen {
                for d in &c.details {
                    writeln!(text, "  {} [{module}]: {d}", c.check)?;
                }
            }
        }
    }
    if lab.gv_trivial_everywhere {
        writeln!(text, "GV(R) = {{R}} on every ring examined")?;
    }
    writeln!(
        text,
        "verdict: {} ({} checks, {} failed)",
        lab.verdict, lab.checks_run, lab.failed_checks
    )?;
    Ok(text)
}

// ---------------------------------------------------------------- check-cert

fn check_cert(report: &mut RunReport, file: &Path, mode: ModeArg) -> Result<String> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", file.display()))?;
    let mut docs: Vec<(String, CertificateDoc)> = Vec::new();
    let mut source_report: Option<RunReport> = None;
    if value.get("facts").is_some() {
        docs.push((
            "certificate".into(),
            serde_json::from_value(value).context("certificate document")?,
        ));
    } else if value.get("verdict").is_some() && value.get("assertions").is_some() {
        let r: RunReport = serde_json::from_value(value).context("run report")?;
        docs.extend(r.certificates.iter().map(|(k, v)| (k.clone(), v.clone())));
        source_report = Some(r);
    } else {
        bail!("{} is neither a certificate nor a run report", file.display());
    }
    let modes: &[(CheckMode, &str)] = match mode {
        ModeArg::Recorded => &[(CheckMode::Recorded, "recorded")],
        ModeArg::Replay => &[(CheckMode::Replay, "replay")],
        ModeArg::Both => &[(CheckMode::Recorded, "recorded"), (CheckMode::Replay, "replay")],
    };

    let mut out = String::new();
    let mut recomputed: BTreeMap<String, bool> = BTreeMap::new();
    for (name, doc) in &docs {
        for &(m, mname) in modes {
            let (ok, statement) = match doc.recheck(m) {
                Ok(rc) if rc.agrees() => {
                    for (fact, v) in doc.facts.iter().zip(&rc.verdicts) {
                        if !fact.label.is_empty() {
                            recomputed.insert(fact.label.clone(), *v);
                        }
                    }
                    (true, format!("{} facts agree", rc.verdicts.len()))
                }
                Ok(rc) => (
                    false,
                    format!("facts {:?} disagree with the record", rc.mismatches),
                ),
                Err(e) => (false, e.to_string()),
            };
            writeln!(out, "{name} [{mname}]: {} ({statement})", pass_word(ok))?;
            report.push(AssertionResult::holds(format!("{name}/{mname}"), statement, ok));
        }
        if !doc.verdict.is_empty() {
            let ok = doc.all_facts_hold();
            writeln!(out, "{name} [verdict]: {} ({})", pass_word(ok), doc.verdict)?;
            report.push(AssertionResult::holds(
                format!("{name}/verdict"),
                format!("every fact supports \"{}\"", doc.verdict),
                ok,
            ));
        }
    }
    if let Some(r) = &source_report {
        let consistent = r.is_consistent();
        writeln!(out, "report [consistency]: {}", pass_word(consistent))?;
        report.push(AssertionResult::holds(
            "report/consistency",
            "verdict and pass flags follow from expected and actual",
            consistent,
        ));
        let mut compared = 0;
        let mut disagree = Vec::new();
        for a in &r.assertions {
            if let Some(&v) = recomputed.get(&a.name) {
                compared += 1;
                if v != a.actual {
                    disagree.push(a.name.clone());
                }
            }
        }
        if compared > 0 {
            let ok = disagree.is_empty();
            writeln!(
                out,
                "report [assertions]: {} ({compared} replayed)",
                pass_word(ok)
            )?;
            report.push(AssertionResult::holds(
                "report/assertions",
                if ok {
                    format!("{compared} assertions match replayed facts")
                } else {
                    format!("mismatch on {}", disagree.join(", "))
                },
                ok,
            ));
        }
        report.result = json!({ "source_verdict": r.verdict, "documents": docs.len() });
    } else {
        report.result = json!({ "documents": docs.len() });
    }
    report.settle();
    writeln!(out, "verdict: {}", report.verdict)?;
    Ok(out)
}
