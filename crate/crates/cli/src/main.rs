//! `acf`: command line front end.
//!
//! Exit codes: 0 success, 1 validation failure, 2 input error, 3 size limit.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use acf_core::concepts::{decompose, enumerate_concepts, is_compact};
use acf_core::io::cxt::read_cxt;
use acf_core::io::json::{
    acf_to_json, poset_from_json, to_pretty, AcfDocument, FunctionDocument, MorphismDocument,
};
use acf_core::kernel::{check_ca1, check_kernel_axioms, induced_acf, AcfContext, BracketMutation};
use acf_core::morphisms::{
    apply, compose, describe, from_function, to_function, validate, MorphismReport,
};
use acf_core::representation::{bracket_formula_holds, rep, verify_roundtrip};
use acf_core::subclasses::{classify, ConditionCheck, SubclassReport};
use acf_core::suite::{run_suite, SuiteConfig};
use acf_core::symbolic::{
    l1_discontinuity_witness, verify_chain_concept, way_below_table_mismatches, Family,
    DEFAULT_DEPTH, ORACLE_INDEX,
};
use acf_core::{Error, Result};

#[derive(Parser)]
#[command(name = "acf", version, about = "Attribute continuous formal contexts")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write a DOT rendering of the concept poset to this path.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Truncation depth for the chain examples.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH)]
    depth: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Check the kernel axioms and the selection of a context file.
    Validate { file: PathBuf },
    /// List the continuous concepts with order and way-below.
    Concepts { file: PathBuf },
    /// Syntactic subclass conditions with the order-theoretic cross-check.
    Classify { file: PathBuf },
    /// Build the representing context of a finite poset.
    Rep {
        poset: PathBuf,
        /// Write the context JSON here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relations between contexts.
    Morphism {
        #[command(subcommand)]
        command: MorphismCommand,
    },
    /// Worked examples.
    Example {
        #[command(subcommand)]
        command: ExampleCommand,
    },
    /// Run the property suite.
    VerifySuite {
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Comma-separated check names; all by default.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = Mutation::None)]
        mutation: Mutation,
    },
}

#[derive(Subcommand)]
enum MorphismCommand {
    /// Check AR1 to AR5.
    Validate { file: PathBuf },
    /// Image of an attribute set.
    Apply {
        file: PathBuf,
        /// Attribute names or indices, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// The concept function of a relation.
    ToFn { file: PathBuf },
    /// The relation of a concept function.
    FromFn { file: PathBuf },
    /// `second ∘ first`.
    Compose { first: PathBuf, second: PathBuf },
}

#[derive(Subcommand)]
enum ExampleCommand {
    /// The two chain lattices: continuous concept that is not a formal concept.
    Fig1 {
        #[arg(long, value_enum, ignore_case = true, default_value_t = FamilyArg::L1)]
        family: FamilyArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "L1")]
    L1,
    #[value(name = "L2")]
    L2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mutation {
    None,
    SkipKernel,
    Raw,
    DropMax,
}

impl From<Mutation> for BracketMutation {
    fn from(m: Mutation) -> Self {
        match m {
            Mutation::None => BracketMutation::None,
            Mutation::SkipKernel => BracketMutation::SkipKernel,
            Mutation::Raw => BracketMutation::Raw,
            Mutation::DropMax => BracketMutation::DropMax,
        }
    }
}

/// What a command prints and how it exits.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = if cli.global.json {
                to_pretty(&out.json)
            } else {
                out.text
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            if cli.global.json {
                println!(
                    "{}",
                    json!({ "error": e.to_string(), "exit_code": e.exit_code() })
                );
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

/// JSON context documents, or `.cxt` files taken with the induced kernel
/// and selection.
fn load_acf(path: &Path) -> Result<AcfContext> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "cxt") {
        induced_acf(read_cxt(&text)?.context)
    } else {
        serde_json::from_str::<AcfDocument>(&text)?.build()
    }
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

fn run(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::Validate { file } => validate_cmd(file),
        Command::Concepts { file } => concepts_cmd(file, g.dot.as_deref()),
        Command::Classify { file } => {
            let acf = load_acf(file)?;
            write_dot(&acf, g.dot.as_deref())?;
            let r = classify(&acf);
            Ok(Output {
                text: r.to_table(),
                json: subclass_json(&r),
                ok: true,
            })
        }
        Command::Rep { poset, out } => rep_cmd(poset, out.as_deref(), g.dot.as_deref()),
        Command::Morphism { command } => morphism_cmd(command),
        Command::Example {
            command: ExampleCommand::Fig1 { family },
        } => fig1(
            match family {
                FamilyArg::L1 => Family::L1,
                FamilyArg::L2 => Family::L2,
            },
            g.depth,
        ),
        Command::VerifySuite {
            count,
            checks,
            mutation,
        } => {
            let mut cfg = SuiteConfig {
                seed: g.seed,
                count: (*count).max(1),
                mutation: (*mutation).into(),
                ..SuiteConfig::default()
            };
            if let Some(c) = checks {
                cfg.checks = c
                    .iter()
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect::<BTreeSet<_>>();
            }
            let report = run_suite(&cfg);
            Ok(Output {
                text: report.to_text(),
                json: serde_json::to_value(&report)?,
                ok: report.passed(),
            })
        }
    }
}

fn validate_cmd(file: &Path) -> Result<Output> {
    let text = read(file)?;
    let (ctx, kernel, sel) = if file.extension().is_some_and(|e| e == "cxt") {
        let acf = induced_acf(read_cxt(&text)?.context)?;
        (
            acf.context().clone(),
            acf.kernel().clone(),
            acf.selection().clone(),
        )
    } else {
        let doc: AcfDocument = serde_json::from_str(&text)?;
        (
            doc.context()?,
            doc.kernel_operator()?,
            doc.selection_sets()?,
        )
    };
    let kr = check_kernel_axioms(&ctx, &kernel)?;
    let ca1 = if kr.passed() {
        Some(check_ca1(&ctx, &kernel, &sel)?)
    } else {
        None
    };
    let ok = kr.passed() && ca1.as_ref().is_some_and(|c| c.passed);
    let mut text = format!(
        "objects: {}\nattributes: {}\nselection members: {}\nclosed sets: {}\nkernel: {kr}\n",
        ctx.num_objects(),
        ctx.num_attributes(),
        sel.len(),
        kr.closed_sets
    );
    if kr.a2_readings_diverge() {
        text.push_str("note: the two readings of A2 disagree on this kernel\n");
    }
    match &ca1 {
        Some(c) => text.push_str(&format!("CA1: {c}\n")),
        None => text.push_str("CA1: not checked\n"),
    }
    text.push_str(if ok { "valid\n" } else { "invalid\n" });
    let json = json!({
        "valid": ok,
        "objects": ctx.num_objects(),
        "attributes": ctx.num_attributes(),
        "selection_members": sel.len(),
        "closed_sets": kr.closed_sets,
        "kernel": {
            "passed": kr.passed(),
            "a1": kr.a1.passed,
            "a2": kr.a2.passed,
            "a2_literal": kr.a2_literal.passed,
            "a2_literal_skipped": kr.a2_literal_skipped,
            "a3": kr.a3.passed,
            "report": kr.to_string(),
        },
        "ca1": ca1.as_ref().map(|c| json!({ "passed": c.passed, "report": c.to_string() })),
    });
    Ok(Output { text, json, ok })
}

fn write_dot(acf: &AcfContext, dot: Option<&Path>) -> Result<()> {
    if let Some(p) = dot {
        fs::write(p, acf.poset().to_dot())?;
    }
    Ok(())
}

fn concepts_cmd(file: &Path, dot: Option<&Path>) -> Result<Output> {
    let acf = load_acf(file)?;
    write_dot(&acf, dot)?;
    let cp = enumerate_concepts(&acf);
    let ctx = acf.context();
    let mut text = String::new();
    let mut items = Vec::new();
    for (i, c) in cp.concepts().iter().enumerate() {
        let below: Vec<&str> = (0..cp.len())
            .filter(|&j| cp.way_below(j, i))
            .map(|j| cp.label(j))
            .collect();
        let compact = is_compact(&acf, c)?;
        let parts: Vec<String> = decompose(&acf, c)?
            .into_iter()
            .map(|b| ctx.format_attrs(b))
            .collect();
        text.push_str(&format!(
            "{}{}\n  way below it: {}\n  brackets below: {}\n",
            cp.label(i),
            if compact { "  (compact)" } else { "" },
            below.join(" "),
            parts.join(" ")
        ));
        items.push(json!({
            "attributes": c.attrs.to_vec(),
            "label": cp.label(i),
            "compact": compact,
            "witnesses": c.witnesses,
            "way_below_it": (0..cp.len()).filter(|&j| cp.way_below(j, i)).collect::<Vec<_>>(),
            "below_it": (0..cp.len()).filter(|&j| cp.leq(j, i)).collect::<Vec<_>>(),
        }));
    }
    text.push_str(&format!("{} continuous concepts\n", cp.len()));
    Ok(Output {
        text,
        json: json!({ "concepts": items }),
        ok: true,
    })
}

fn check_json(c: &ConditionCheck) -> Value {
    json!({ "holds": c.holds, "counterexample": c.counterexample })
}

fn subclass_json(r: &SubclassReport) -> Value {
    json!({
        "ad": check_json(&r.ad),
        "pointed": check_json(&r.pointed),
        "topped": check_json(&r.topped),
        "bc": check_json(&r.bc),
        "ss1": check_json(&r.ss.ss1),
        "ss2": check_json(&r.ss.ss2),
        "semantic": r.semantic.map(|s| json!({
            "dcpo": s.is_dcpo,
            "continuous": s.is_continuous,
            "algebraic": s.is_algebraic,
            "least_element": s.is_pointed,
            "greatest_element": s.has_top,
            "bounded_complete": s.is_bounded_complete,
            "bounded_complete_nonempty": r.semantic_bc_nonempty,
            "semilattice": s.is_semilattice,
            "multiplicative_way_below": s.waybelow_multiplicative,
        })),
    })
}

fn rep_cmd(poset: &Path, out: Option<&Path>, dot: Option<&Path>) -> Result<Output> {
    let d = poset_from_json(&read(poset)?)?;
    let rc = rep(&d)?;
    write_dot(rc.acf(), dot)?;
    let rt = verify_roundtrip(&rc);
    let formula = bracket_formula_holds(&rc);
    let ok = rt.ok && formula;
    let doc = acf_to_json(rc.acf());
    let mut text = String::new();
    match out {
        Some(p) => fs::write(p, &doc)?,
        None => text.push_str(&doc),
    }
    text.push_str(&format!(
        "elements: {}\nselection members: {}\nround trip: {}\nbracket formula: {}\n",
        d.len(),
        rc.acf().selection().len(),
        rt.failure.as_deref().unwrap_or("ok"),
        if formula { "ok" } else { "fails" }
    ));
    let json = json!({
        "context": if out.is_some() { Value::Null } else { serde_json::to_value(AcfDocument::from_acf(rc.acf()))? },
        "elements": d.len(),
        "selection_members": rc.acf().selection().len(),
        "roundtrip": { "ok": rt.ok, "failure": rt.failure },
        "bracket_formula": formula,
    });
    Ok(Output { text, json, ok })
}

fn report_json(r: &MorphismReport) -> Value {
    json!({
        "passed": r.passed(),
        "ar1": check_json(&r.ar1),
        "ar2": check_json(&r.ar2),
        "ar3": check_json(&r.ar3),
        "ar4": check_json(&r.ar4),
        "ar5": check_json(&r.ar5),
        "ar5_equivalence_holds": r.ar5_equivalence_holds,
    })
}

fn report_text(r: &MorphismReport) -> String {
    let show = |c: &ConditionCheck| match &c.counterexample {
        None => "ok".to_string(),
        Some(m) => format!("fails: {m}"),
    };
    let mut s = format!(
        "AR1 {}\nAR2 {}\nAR3 {}\nAR4 {}\nAR5 {}\n",
        show(&r.ar1),
        show(&r.ar2),
        show(&r.ar3),
        show(&r.ar4),
        show(&r.ar5)
    );
    if !r.ar5_equivalence_holds {
        s.push_str("note: AR5 disagrees with AR3 and AR4 together on this relation\n");
    }
    s.push_str(if r.passed() { "valid\n" } else { "invalid\n" });
    s
}

fn morphism_cmd(cmd: &MorphismCommand) -> Result<Output> {
    match cmd {
        MorphismCommand::Validate { file } => {
            let doc: MorphismDocument = serde_json::from_str(&read(file)?)?;
            let (s, t) = (
                doc.source.load(base_dir(file))?,
                doc.target.load(base_dir(file))?,
            );
            let h = doc.morphism(&s, &t)?;
            let r = validate(&h);
            Ok(Output {
                text: report_text(&r),
                json: report_json(&r),
                ok: r.passed(),
            })
        }
        MorphismCommand::Apply { file, set } => {
            let doc: MorphismDocument = serde_json::from_str(&read(file)?)?;
            let (s, t) = (
                doc.source.load(base_dir(file))?,
                doc.target.load(base_dir(file))?,
            );
            let h = doc.morphism(&s, &t)?;
            let x = s.context().parse_attrs(set)?;
            let y = apply(&h, x)?;
            Ok(Output {
                text: format!("{}\n", t.context().format_attrs(y)),
                json: json!({ "input": x.to_vec(), "image": y.to_vec() }),
                ok: true,
            })
        }
        MorphismCommand::ToFn { file } => {
            let doc: MorphismDocument = serde_json::from_str(&read(file)?)?;
            let (s, t) = (
                doc.source.load(base_dir(file))?,
                doc.target.load(base_dir(file))?,
            );
            let h = doc.morphism(&s, &t)?;
            let r = validate(&h);
            if !r.passed() {
                return Ok(Output {
                    text: report_text(&r),
                    json: json!({ "validation": report_json(&r) }),
                    ok: false,
                });
            }
            let phi = to_function(&h)?;
            let out = FunctionDocument::from_function(&phi, doc.source.clone(), doc.target.clone());
            Ok(Output {
                text: describe(&phi)
                    .into_iter()
                    .map(|(a, b)| format!("{a} ↦ {b}\n"))
                    .collect(),
                json: serde_json::to_value(out)?,
                ok: true,
            })
        }
        MorphismCommand::FromFn { file } => {
            let doc: FunctionDocument = serde_json::from_str(&read(file)?)?;
            let (s, t) = (
                doc.source.load(base_dir(file))?,
                doc.target.load(base_dir(file))?,
            );
            let phi = doc.function(&s, &t)?;
            let h = from_function(&phi);
            let r = validate(&h);
            let out = MorphismDocument::from_morphism(&h, doc.source.clone(), doc.target.clone());
            let text = h
                .pairs()
                .iter()
                .map(|&(f, x)| {
                    format!(
                        "{} → {}\n",
                        s.context().format_attrs(s.selection().get(f)),
                        t.context().attributes()[x]
                    )
                })
                .collect::<String>()
                + &report_text(&r);
            Ok(Output {
                text,
                json: json!({ "morphism": out, "validation": report_json(&r) }),
                ok: r.passed(),
            })
        }
        MorphismCommand::Compose { first, second } => {
            let d1: MorphismDocument = serde_json::from_str(&read(first)?)?;
            let d2: MorphismDocument = serde_json::from_str(&read(second)?)?;
            let a = d1.source.load(base_dir(first))?;
            let b = d1.target.load(base_dir(first))?;
            let b2 = d2.source.load(base_dir(second))?;
            let c = d2.target.load(base_dir(second))?;
            if b != b2 {
                return Err(Error::ContextMismatch(
                    "target of the first relation is not the source of the second".into(),
                ));
            }
            let h1 = d1.morphism(&a, &b)?;
            let h2 = d2.morphism(&b, &c)?;
            let h = compose(&h2, &h1)?;
            let r = validate(&h);
            let out = MorphismDocument::from_morphism(&h, d1.source.clone(), d2.target.clone());
            Ok(Output {
                text: to_pretty(&out) + &report_text(&r),
                json: json!({ "morphism": out, "validation": report_json(&r) }),
                ok: r.passed(),
            })
        }
    }
}

fn fig1(family: Family, depth: u32) -> Result<Output> {
    let report = verify_chain_concept(family, depth)?;
    let mismatches = way_below_table_mismatches(family, ORACLE_INDEX)?;
    let witness = match family {
        Family::L1 => Some(l1_discontinuity_witness(depth)?),
        Family::L2 => None,
    };
    let names = |v: &[acf_core::symbolic::ChainElement]| {
        v.iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let mut text = format!(
        "family {family:?}, depth {depth}\nsampled subsets of the chain: {}\ncontinuous concept on samples: {}\nobjects above the chain: {}\nclosure adds: {}\nnot a formal concept: {}\nway-below table vs oracle (indices ≤ {ORACLE_INDEX}): {}\n",
        report.samples,
        report.continuous,
        names(&report.upper_bound_objects),
        names(&report.closure_adds),
        report.not_formal_concept,
        if mismatches.is_empty() { "agrees".to_string() } else { format!("{} mismatches", mismatches.len()) },
    );
    if let Some(w) = &witness {
        text.push_str(&format!(
            "approximants of {}: {}; their supremum is {}; not continuous: {}\n",
            w.element,
            names(&w.approximants),
            w.supremum,
            w.certifies_not_continuous
        ));
    }
    text.push_str(&format!("caveat: {}\n", report.caveat));
    let ok = report.passed()
        && mismatches.is_empty()
        && witness.as_ref().is_none_or(|w| w.certifies_not_continuous);
    let json = json!({
        "report": report,
        "way_below_mismatches": mismatches.iter().map(|(x, y)| format!("{x} ≪ {y}")).collect::<Vec<_>>(),
        "discontinuity_witness": witness,
        "passed": ok,
    });
    Ok(Output { text, json, ok })
}
