//! Command-line front door: parse model files, run analyses, print
//! deterministic reports.
//!
//! Exit codes partition outcomes: 0 for affirmative verdicts (covered,
//! reducible, verified, constructed), 1 for negative verdicts (with
//! counterexamples printed), 2 for usage, schema and I/O errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use indmod::engine::{closure_trace, nim_verdict, ClosureTrace, NimVerdict};
use indmod::plan::emit_proof_plan;
use indmod::reduction::{
    build_reduction, decide_reducible, verify_reduction, ReductionRelation, Verdict, VerifyReport,
};
use indmod::render::compress_set;
use indmod::structure::structure_report;
use indmod::{construct, Bound, Error, GenFn, InductionModel, SetSpec};

#[derive(Parser)]
#[command(
    name = "indmod",
    version,
    about = "Bounded analysis, construction and reduction of induction models over the naturals"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Universe prefix N the verdicts talk about.
    #[arg(long = "bound", global = true, value_name = "N")]
    bound: Option<u64>,

    /// Materialization cap M (default 2N + 16).
    #[arg(long = "cap", global = true, value_name = "M")]
    cap: Option<u64>,

    /// Maximum fixpoint levels before a step count is reported as at-least.
    #[arg(long = "cutoff", global = true, value_name = "C")]
    cutoff: Option<u32>,

    /// Write the command's primary artifact (model, relation, plan or
    /// report) to this path in addition to the stdout report.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the bounded closure trace and report coverage of [1, N].
    Analyze { model: PathBuf },
    /// Classify a generating function and search for a self-loop refutation.
    Classify {
        model: PathBuf,
        #[arg(long, default_value_t = 20)]
        search_cap: u64,
    },
    /// Construct a generating function for a base set (read from a set file).
    ConstructS {
        base: PathBuf,
        #[arg(long, value_enum)]
        structure: Structure,
        #[arg(long, default_value_t = 1)]
        arity: usize,
    },
    /// Construct a complement base for a generating function.
    ConstructB {
        genfn: PathBuf,
        #[arg(long, default_value_t = 20)]
        search_cap: u64,
    },
    /// Decide reducibility of m1 to m2 and emit the recipe relation.
    Reduce {
        m1: PathBuf,
        m2: PathBuf,
        /// Build the relation even when the step-count comparison is
        /// undecided at this cutoff (the result is marked heuristic).
        #[arg(long)]
        force: bool,
    },
    /// Check the three reduction conditions for a relation file.
    VerifyReduction {
        m1: PathBuf,
        m2: PathBuf,
        relation: PathBuf,
    },
    /// Emit the proof-conversion plan for a (verified) reduction.
    Plan {
        m1: PathBuf,
        m2: PathBuf,
        /// Relation file; when omitted, the recipe relation is built first.
        relation: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Structure {
    General,
    Additive,
    Multiplicative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// Domain refusals are negative verdicts (exit 1); everything else that
/// errors is a usage, schema or I/O problem (exit 2).
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NotReducible { .. }
        | Error::UndecidedReduction { .. }
        | Error::UnverifiedRelation { .. }
        | Error::UnaryAdditiveImpossible { .. }
        | Error::SingletonMultiplicative
        | Error::NoBaseWitness { .. }
        | Error::IdentityFunction => 1,
        _ => 2,
    }
}

fn bound_from(cli: &Cli) -> indmod::Result<Bound> {
    let universe = cli.bound.unwrap_or(Bound::DEFAULT_UNIVERSE);
    let cap = cli.cap.unwrap_or(2 * universe + 16);
    let cutoff = cli.cutoff.unwrap_or(Bound::DEFAULT_CUTOFF);
    Bound::new(universe, cap, cutoff)
}

fn read_to_string(path: &Path) -> indmod::Result<String> {
    std::fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn load_model(path: &Path) -> indmod::Result<InductionModel> {
    indmod::parse_model(&read_to_string(path)?)
}

fn load_set_spec(path: &Path) -> indmod::Result<SetSpec> {
    Ok(serde_json::from_str(&read_to_string(path)?)?)
}

/// Reads a generating function from either a bare function document or a
/// full model file (using its `gen` field).
fn load_genfn(path: &Path) -> indmod::Result<GenFn> {
    let text = read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("gen").is_some() {
        Ok(load_model(path)?.gen)
    } else {
        Ok(serde_json::from_str(&text)?)
    }
}

fn write_out(cli: &Cli, contents: &str) -> indmod::Result<()> {
    if let Some(path) = &cli.out {
        std::fs::write(path, contents)?;
    }
    Ok(())
}

/// Print the report in the selected format, mirror it to --out when the
/// command has no other primary artifact, and map the verdict to an exit
/// code.
fn finish<R: Serialize>(
    cli: &Cli,
    text: String,
    report: &R,
    affirmative: bool,
    mirror_report: bool,
) -> indmod::Result<ExitCode> {
    let rendered = match cli.format {
        Format::Text => text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serialization");
            s.push('\n');
            s
        }
    };
    print!("{rendered}");
    if mirror_report {
        write_out(cli, &rendered)?;
    }
    Ok(if affirmative {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: &Cli) -> indmod::Result<ExitCode> {
    let bound = bound_from(cli)?;
    match &cli.cmd {
        Cmd::Analyze { model } => analyze(cli, &bound, model),
        Cmd::Classify { model, search_cap } => classify_cmd(cli, model, *search_cap),
        Cmd::ConstructS {
            base,
            structure,
            arity,
        } => construct_s(cli, &bound, base, *structure, *arity),
        Cmd::ConstructB { genfn, search_cap } => construct_b(cli, &bound, genfn, *search_cap),
        Cmd::Reduce { m1, m2, force } => reduce(cli, &bound, m1, m2, *force),
        Cmd::VerifyReduction { m1, m2, relation } => verify_cmd(cli, &bound, m1, m2, relation),
        Cmd::Plan { m1, m2, relation } => plan_cmd(cli, &bound, m1, m2, relation.as_deref()),
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    model: String,
    // the trace carries the bound
    #[serde(flatten)]
    trace: ClosureTrace,
    step_count: indmod::ExtNat,
    #[serde(flatten)]
    verdict: NimVerdict,
}

fn analyze(cli: &Cli, bound: &Bound, path: &Path) -> indmod::Result<ExitCode> {
    let model = load_model(path)?;
    let trace = closure_trace(&model, bound)?;
    let verdict = nim_verdict(&trace);

    let mut text = String::new();
    use std::fmt::Write;
    writeln!(text, "analyze: {}", path.display()).unwrap();
    writeln!(text, "model: {model}").unwrap();
    writeln!(text, "bound: {bound}").unwrap();
    writeln!(text, "levels:").unwrap();
    for (i, level) in trace.levels.iter().enumerate() {
        writeln!(
            text,
            "  {i}: S={} Cl={}",
            compress_set(level.power.iter().copied()),
            compress_set(level.closure.iter().copied())
        )
        .unwrap();
    }
    writeln!(text, "stabilized at: {}", trace.stabilized_at).unwrap();
    writeln!(text, "step count: {}", trace.stabilized_at).unwrap();
    writeln!(
        text,
        "closure: {}",
        compress_set(trace.closure().iter().copied())
    )
    .unwrap();
    writeln!(text, "l-table:").unwrap();
    let mut by_level: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
    for (&x, &l) in &trace.l_table {
        by_level.entry(l).or_default().push(x);
    }
    for (l, xs) in &by_level {
        writeln!(text, "  l={l}: {}", compress_set(xs.iter().copied())).unwrap();
    }
    writeln!(
        text,
        "covered: {}",
        if verdict.covered { "yes" } else { "no" }
    )
    .unwrap();
    if !verdict.covered {
        writeln!(
            text,
            "missing: {}",
            compress_set(verdict.missing.iter().copied())
        )
        .unwrap();
    }
    writeln!(text, "note: {}", verdict.caveat).unwrap();

    let covered = verdict.covered;
    let report = AnalyzeReport {
        model: model.to_string(),
        step_count: trace.stabilized_at,
        trace,
        verdict,
    };
    finish(cli, text, &report, covered, true)
}

#[derive(Serialize)]
struct ClassifyReport {
    model: String,
    gen: String,
    arity: usize,
    #[serde(flatten)]
    structure: indmod::structure::StructureReport,
}

fn classify_cmd(cli: &Cli, path: &Path, search_cap: u64) -> indmod::Result<ExitCode> {
    let model = load_model(path)?;
    let report = structure_report(&model.gen, search_cap)?;

    let mut text = String::new();
    use std::fmt::Write;
    writeln!(text, "classify: {}", path.display()).unwrap();
    writeln!(text, "gen: {}", model.gen).unwrap();
    writeln!(text, "arity: {}", model.gen.arity()).unwrap();
    writeln!(text, "additive: {}", yesno(report.additive)).unwrap();
    writeln!(text, "multiplicative: {}", yesno(report.multiplicative)).unwrap();
    match &report.self_loop_witness {
        Some(w) => {
            let coords: Vec<String> = w.tuple.iter().map(u64::to_string).collect();
            writeln!(
                text,
                "self-loop witness: ({}) -> {} (not a self-loop)",
                coords.join(","),
                w.value
            )
            .unwrap();
        }
        None => {
            writeln!(
                text,
                "self-loop witness: none up to {} (consistent with a self-loop; \
                 search can only refute)",
                search_cap
            )
            .unwrap();
        }
    }
    writeln!(text, "searched up to: {search_cap}").unwrap();

    let affirmative = report.self_loop_witness.is_some();
    let report = ClassifyReport {
        model: model.to_string(),
        gen: model.gen.to_string(),
        arity: model.gen.arity(),
        structure: report,
    };
    finish(cli, text, &report, affirmative, true)
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct ConstructReport {
    #[serde(flatten)]
    result: construct::ConstructionResult,
    bound: Bound,
    covered: bool,
    missing: Vec<u64>,
    step_count: indmod::ExtNat,
}

fn construct_s(
    cli: &Cli,
    bound: &Bound,
    base_path: &Path,
    structure: Structure,
    arity: usize,
) -> indmod::Result<ExitCode> {
    let base = load_set_spec(base_path)?;
    let result = match structure {
        Structure::General => construct::construct_s_general(&base, arity)?,
        Structure::Additive => construct::construct_s_additive(&base, arity)?,
        Structure::Multiplicative => construct::construct_s_multiplicative(&base, arity)?,
    };
    finish_construction(cli, bound, result, "construct-s", base_path)
}

fn construct_b(
    cli: &Cli,
    bound: &Bound,
    genfn_path: &Path,
    search_cap: u64,
) -> indmod::Result<ExitCode> {
    let gen = load_genfn(genfn_path)?;
    let result = construct::construct_b_for_s(&gen, search_cap)?;
    finish_construction(cli, bound, result, "construct-b", genfn_path)
}

fn finish_construction(
    cli: &Cli,
    bound: &Bound,
    result: construct::ConstructionResult,
    cmd: &str,
    input: &Path,
) -> indmod::Result<ExitCode> {
    let trace = closure_trace(&result.model, bound)?;
    let verdict = nim_verdict(&trace);

    let mut text = String::new();
    use std::fmt::Write;
    writeln!(text, "{cmd}: {}", input.display()).unwrap();
    writeln!(text, "recipe: {}", result.recipe).unwrap();
    let params: Vec<String> = result
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    writeln!(text, "parameters: {}", params.join(" ")).unwrap();
    writeln!(text, "model: {}", result.model).unwrap();
    writeln!(text, "step count: {}", trace.stabilized_at).unwrap();
    writeln!(text, "covered at {bound}: {}", yesno(verdict.covered)).unwrap();
    if !verdict.covered {
        writeln!(
            text,
            "missing: {}",
            compress_set(verdict.missing.iter().copied())
        )
        .unwrap();
    }
    if let Some(out) = &cli.out {
        writeln!(text, "model written to: {}", out.display()).unwrap();
    }
    write_out(cli, &indmod::serialize_model(&result.model))?;

    let covered = verdict.covered;
    let report = ConstructReport {
        result,
        bound: *bound,
        covered,
        missing: verdict.missing.iter().copied().collect(),
        step_count: trace.stabilized_at,
    };
    finish(cli, text, &report, covered, false)
}

#[derive(Serialize)]
struct ReduceReport {
    m1: String,
    m2: String,
    decision: indmod::reduction::ReductionDecision,
    relation_entries: Option<usize>,
    heuristic: bool,
}

fn reduce(
    cli: &Cli,
    bound: &Bound,
    m1_path: &Path,
    m2_path: &Path,
    force: bool,
) -> indmod::Result<ExitCode> {
    let m1 = load_model(m1_path)?;
    let m2 = load_model(m2_path)?;
    let decision = decide_reducible(&m1, &m2, bound)?;

    let mut text = String::new();
    use std::fmt::Write;
    writeln!(
        text,
        "reduce: m1={} m2={}",
        m1_path.display(),
        m2_path.display()
    )
    .unwrap();
    writeln!(text, "n(m1): {}", decision.n1).unwrap();
    writeln!(text, "n(m2): {}", decision.n2).unwrap();

    let build = match decision.reducible {
        Verdict::Yes { presumed_infinite } => {
            if presumed_infinite {
                writeln!(
                    text,
                    "reducible: yes (assuming both presumed-omega step counts are equal)"
                )
                .unwrap();
            } else {
                writeln!(text, "reducible: yes (n(m1) <= n(m2))").unwrap();
            }
            true
        }
        Verdict::No => {
            writeln!(
                text,
                "reducible: no (n(m1) {} > n(m2) {})",
                decision.n1, decision.n2
            )
            .unwrap();
            false
        }
        Verdict::Unknown => {
            if force {
                writeln!(
                    text,
                    "reducible: unknown at this cutoff; building heuristically on request"
                )
                .unwrap();
            } else {
                writeln!(
                    text,
                    "reducible: unknown at this cutoff (rerun with --force to build anyway)"
                )
                .unwrap();
            }
            force
        }
    };
    writeln!(
        text,
        "equivalent: {}",
        match decision.equivalent {
            Verdict::Yes {
                presumed_infinite: true,
            } => "yes (presumed)",
            Verdict::Yes { .. } => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    )
    .unwrap();

    let mut relation_entries = None;
    let mut heuristic = false;
    if build {
        let relation = build_reduction(&m1, &m2, bound, force)?;
        relation_entries = Some(relation.entries.len());
        heuristic = relation.heuristic;
        writeln!(text, "relation: {} entries", relation.entries.len()).unwrap();
        if let Some(out) = &cli.out {
            writeln!(text, "relation written to: {}", out.display()).unwrap();
        }
        write_out(cli, &relation.serialize())?;
    }

    let report = ReduceReport {
        m1: m1.to_string(),
        m2: m2.to_string(),
        decision,
        relation_entries,
        heuristic,
    };
    finish(cli, text, &report, build, false)
}

#[derive(Serialize)]
struct VerifyCmdReport {
    m1: String,
    m2: String,
    bound: Bound,
    #[serde(flatten)]
    report: VerifyReport,
    verified: bool,
}

fn verify_cmd(
    cli: &Cli,
    bound: &Bound,
    m1_path: &Path,
    m2_path: &Path,
    relation_path: &Path,
) -> indmod::Result<ExitCode> {
    let m1 = load_model(m1_path)?;
    let m2 = load_model(m2_path)?;
    let relation = ReductionRelation::parse(&read_to_string(relation_path)?)?;
    let report = verify_reduction(&m1, &m2, &relation, bound)?;

    let text = render_verify(&report, m1_path, m2_path, relation_path);
    let verified = report.passed();
    let report = VerifyCmdReport {
        m1: m1.to_string(),
        m2: m2.to_string(),
        bound: *bound,
        report,
        verified,
    };
    finish(cli, text, &report, verified, true)
}

fn render_verify(
    report: &VerifyReport,
    m1_path: &Path,
    m2_path: &Path,
    relation_path: &Path,
) -> String {
    let mut text = String::new();
    use std::fmt::Write;
    writeln!(
        text,
        "verify-reduction: m1={} m2={} r={}",
        m1_path.display(),
        m2_path.display(),
        relation_path.display()
    )
    .unwrap();
    let set_line = |name: &str, c: &indmod::reduction::SetCondition, text: &mut String| {
        if c.passed {
            writeln!(text, "{name}: pass").unwrap();
        } else {
            writeln!(text, "{name}: FAIL").unwrap();
            if !c.missing.is_empty() {
                writeln!(
                    text,
                    "  missing: {}",
                    compress_set(c.missing.iter().copied())
                )
                .unwrap();
            }
            if !c.extra.is_empty() {
                writeln!(text, "  extra: {}", compress_set(c.extra.iter().copied())).unwrap();
            }
        }
    };
    set_line(
        "condition 1 (images cover source closure)",
        &report.closure_coverage,
        &mut text,
    );
    set_line(
        "condition 2 (base images give source base)",
        &report.base_mapping,
        &mut text,
    );
    let c3 = &report.step_compatibility;
    if c3.passed {
        writeln!(
            text,
            "condition 3 (step compatibility): pass ({} checked)",
            c3.checked
        )
        .unwrap();
    } else {
        writeln!(text, "condition 3 (step compatibility): FAIL").unwrap();
        for f in &c3.failures {
            let coords: Vec<String> = f.tuple.iter().map(u64::to_string).collect();
            writeln!(
                text,
                "  x={} tuple=({}): expected {}, got {}",
                f.x,
                coords.join(","),
                compress_set(f.expected.iter().copied()),
                compress_set(f.actual.iter().copied())
            )
            .unwrap();
        }
    }
    for w in &report.warnings {
        writeln!(text, "warning: {w}").unwrap();
    }
    writeln!(
        text,
        "verdict: {}",
        if report.passed() {
            "verified"
        } else {
            "not verified"
        }
    )
    .unwrap();
    text
}

fn plan_cmd(
    cli: &Cli,
    bound: &Bound,
    m1_path: &Path,
    m2_path: &Path,
    relation_path: Option<&Path>,
) -> indmod::Result<ExitCode> {
    let m1 = load_model(m1_path)?;
    let m2 = load_model(m2_path)?;
    let relation = match relation_path {
        Some(p) => ReductionRelation::parse(&read_to_string(p)?)?,
        None => build_reduction(&m1, &m2, bound, false)?,
    };
    let plan = emit_proof_plan(&m1, &m2, &relation, bound)?;

    let mut text = String::new();
    use std::fmt::Write;
    writeln!(
        text,
        "plan: m1={} m2={}",
        m1_path.display(),
        m2_path.display()
    )
    .unwrap();
    write!(text, "{plan}").unwrap();
    if let Some(out) = &cli.out {
        writeln!(text, "plan written to: {}", out.display()).unwrap();
        let mut s = serde_json::to_string_pretty(&plan).expect("plan serialization");
        s.push('\n');
        write_out(cli, &s)?;
    }

    finish(cli, text, &plan, true, false)
}
