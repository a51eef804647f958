//! Command line front end: code ingestion, trellis construction, analysis,
//! dualization, verification suites, and export.
//!
//! Exit codes: 0 on success, 2 when a code lacks the full-support
//! precondition, 3 on parse errors, 1 for any other failure (including a
//! failed verification).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use kvtrellis::io::{CodeFile, TrellisFile};
use kvtrellis::span::parse_span_list;
use kvtrellis::verify;
use kvtrellis::{
    bcjr_dual, check_subtrellis_dual, dual_characteristic_pair, dual_kv_pair, dual_selection,
    kv_conjecture_suite, kv_trellis, local_dual, BcjrTrellis, Budget, CharacteristicPair, Error,
    GeneratorPolicy, LinearTrellis, ProductTrellis, StatePairing,
};

#[derive(Parser)]
#[command(name = "kvtrellis", version, about = "Tail-biting trellises of linear block codes: construction, analysis, dualization")]
struct Cli {
    /// Number of worker threads for the verification suites.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Override the enumeration budget (also via TRELLIS_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Largest per-time state dimension the isomorphism search accepts.
    #[arg(long, global = true)]
    iso_dim: Option<usize>,
    /// Reinterpret the input generators over GF(p) instead of the
    /// modulus declared in the file.
    #[arg(long, global = true)]
    modulus: Option<u64>,
    /// Print progress notes to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TieBreak {
    Lex,
    Normalized,
}

impl From<TieBreak> for GeneratorPolicy {
    fn from(t: TieBreak) -> Self {
        match t {
            TieBreak::Lex => GeneratorPolicy::LexFirst,
            TieBreak::Normalized => GeneratorPolicy::Normalized,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TrellisKind {
    Product,
    Bcjr,
    Kv,
}

#[derive(Clone, Copy, ValueEnum)]
enum DualMethod {
    Local,
    Bcjr,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Examples,
    KvConjecture,
    Properties,
}

#[derive(Clone, Copy, ValueEnum)]
enum KvDualEmit {
    Y,
    Report,
    Trellises,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a characteristic matrix and span list of a code.
    Charmat {
        /// Code JSON file: {"p", "n", "generators"}.
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "tie-break", value_enum, default_value_t = TieBreak::Lex)]
        tie_break: TieBreak,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Build a trellis from a code and print profile and property flags.
    Trellis {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: TrellisKind,
        /// Span list such as "(1,3],(3,0],(2,1]", one span per generator
        /// row (product, bcjr).
        #[arg(long)]
        spans: Option<String>,
        /// Comma-separated characteristic row indices (kv).
        #[arg(long)]
        selection: Option<String>,
        /// Code JSON file whose raw generator rows serve as the check
        /// matrix; defaults to the canonical parity check of the input.
        #[arg(long)]
        check: Option<PathBuf>,
        #[arg(long = "tie-break", value_enum, default_value_t = TieBreak::Lex)]
        tie_break: TieBreak,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Dualize a trellis, either from a construction spec or a trellis file.
    Dual {
        /// Code JSON file for a BCJR construction spec.
        #[arg(long, required_unless_present = "trellis")]
        input: Option<PathBuf>,
        #[arg(long)]
        spans: Option<String>,
        /// Code JSON file whose raw generator rows serve as the check
        /// matrix; defaults to the canonical parity check of the input.
        #[arg(long)]
        check: Option<PathBuf>,
        /// Trellis JSON file (local dualization only).
        #[arg(long, conflicts_with_all = ["input", "spans"])]
        trellis: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = DualMethod::Both)]
        method: DualMethod,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Construct the dual characteristic matrix and verify the KV duality.
    KvDual {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "tie-break", value_enum, default_value_t = TieBreak::Lex)]
        tie_break: TieBreak,
        #[arg(long, value_enum, default_value_t = KvDualEmit::Report)]
        emit: KvDualEmit,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a verification suite; exits nonzero on any failure.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Code JSON file (kv-conjecture on a specific code).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Seed for the randomized parts.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random codes for the randomized parts.
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long = "tie-break", value_enum, default_value_t = TieBreak::Lex)]
        tie_break: TieBreak,
    },
    /// Re-export a trellis file, e.g. as a DOT digraph.
    Export {
        #[arg(long)]
        trellis: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Parallelism is opt-in: without --jobs the suites run on one thread.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global();
    let mut budget = Budget::default();
    if let Ok(v) = std::env::var("TRELLIS_BUDGET") {
        if let Ok(v) = v.parse::<u64>() {
            budget.enumeration = v;
            budget.graph_states = v;
        }
    }
    if let Some(v) = cli.budget {
        budget.enumeration = v;
        budget.graph_states = v;
    }
    if let Some(d) = cli.iso_dim {
        budget.iso_state_dim = d;
    }
    let ctx = Context { budget, modulus: cli.modulus, verbose: cli.verbose };
    match run(cli.command, &ctx) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

struct Context {
    budget: Budget,
    modulus: Option<u64>,
    verbose: bool,
}

impl Context {
    fn read_code_file(&self, path: &PathBuf) -> kvtrellis::Result<CodeFile> {
        let mut file = read_code_file(path)?;
        if let Some(p) = self.modulus {
            file.p = p;
        }
        if self.verbose {
            eprintln!(
                "read {}: [{}] code over GF({}) with {} generator rows",
                path.display(),
                file.n,
                file.p,
                file.generators.len()
            );
        }
        Ok(file)
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::SupportError | Error::UnsupportedPosition(_) => 2,
        Error::Parse(_) => 3,
        _ => 1,
    }
}

fn emit(out: &OutputArgs, text: String) -> kvtrellis::Result<()> {
    match &out.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            if text.ends_with('\n') {
                print!("{text}");
            } else {
                println!("{text}");
            }
            Ok(())
        }
    }
}

fn read_code_file(path: &PathBuf) -> kvtrellis::Result<CodeFile> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    CodeFile::parse(&text)
}

fn read_trellis_file(path: &PathBuf) -> kvtrellis::Result<LinearTrellis> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    TrellisFile::parse(&text)?.to_trellis()
}

fn parse_selection(text: &str) -> kvtrellis::Result<Vec<usize>> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index {t}"))))
        .collect()
}

fn charmat_text(pair: &CharacteristicPair) -> String {
    let (by_end, _) = pair.sorted_by_end();
    let mut out = String::new();
    for (l, span) in by_end.spans().iter().enumerate() {
        let row: Vec<String> = by_end.matrix().row(l).iter().map(u8::to_string).collect();
        out.push_str(&format!("{} {}\n", span, row.join(" ")));
    }
    out
}

fn trellis_flags(t: &LinearTrellis) -> serde_json::Value {
    let c = t.complexity();
    json!({
        "scp": c.scp,
        "ecp": c.ecp,
        "reduced": t.is_reduced(),
        "biproper": t.is_biproper(),
        "one_to_one": t.is_one_to_one(),
    })
}

fn flags_text(t: &LinearTrellis) -> String {
    let c = t.complexity();
    format!(
        "scp {:?}\necp {:?}\nreduced {}\nbiproper {}\none-to-one {}\n",
        c.scp,
        c.ecp,
        t.is_reduced(),
        t.is_biproper(),
        t.is_one_to_one()
    )
}

fn run(cmd: Command, ctx: &Context) -> kvtrellis::Result<ExitCode> {
    let budget = &ctx.budget;
    match cmd {
        Command::Charmat { input, tie_break, out } => {
            let code = ctx.read_code_file(&input)?.to_code()?;
            let pair = code.characteristic_pair_with(tie_break.into(), budget)?;
            match out.format {
                Format::Json => {
                    let (by_end, _) = pair.sorted_by_end();
                    let rows: Vec<Vec<u8>> =
                        (0..by_end.len()).map(|l| by_end.matrix().row(l).to_vec()).collect();
                    let doc = json!({
                        "p": code.field().modulus(),
                        "n": code.len(),
                        "k": code.dim(),
                        "matrix": rows,
                        "spans": by_end.spans(),
                    });
                    emit(&out, serde_json::to_string_pretty(&doc).unwrap())?;
                }
                _ => emit(&out, charmat_text(&pair))?,
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Trellis { input, kind, spans, selection, check, tie_break, out } => {
            let file = ctx.read_code_file(&input)?;
            let gens = file.raw_matrix()?;
            let code = file.to_code()?;
            let n = code.len();
            let check_matrix = match &check {
                Some(path) => read_code_file(path)?.raw_matrix()?,
                None => code.check().clone(),
            };
            let built: (LinearTrellis, String, Vec<kvtrellis::Span>) = match kind {
                TrellisKind::Product => {
                    let spans = spans
                        .ok_or_else(|| Error::Parse("--spans is required for product".into()))?;
                    let t = ProductTrellis::new(gens, parse_span_list(&spans, n)?)?;
                    let display = t.staggered_display();
                    let spans = t.spans().clone();
                    (t.into_base(), display, spans)
                }
                TrellisKind::Bcjr => {
                    let spans =
                        spans.ok_or_else(|| Error::Parse("--spans is required for bcjr".into()))?;
                    let t =
                        BcjrTrellis::from_spans(gens, check_matrix, parse_span_list(&spans, n)?)?;
                    let display = t.staggered_display();
                    let spans = t.spans().cloned().unwrap_or_default();
                    (t.into_base(), display, spans)
                }
                TrellisKind::Kv => {
                    let sel = selection
                        .ok_or_else(|| Error::Parse("--selection is required for kv".into()))?;
                    let pair = code.characteristic_pair_with(tie_break.into(), budget)?;
                    let t = kv_trellis(&pair, &check_matrix, &parse_selection(&sel)?)?;
                    let display = t.staggered_display();
                    let spans = t.spans().cloned().unwrap_or_default();
                    (t.into_base(), display, spans)
                }
            };
            let (trellis, display, span_list) = built;
            match out.format {
                Format::Dot => emit(&out, trellis.export_dot_with(budget)?)?,
                Format::Json => {
                    let doc = json!({
                        "trellis": TrellisFile::from_trellis(&trellis),
                        "properties": trellis_flags(&trellis),
                    });
                    emit(&out, serde_json::to_string_pretty(&doc).unwrap())?;
                }
                Format::Text => {
                    let mut text = display;
                    let spans: Vec<String> =
                        span_list.iter().map(|s| s.display_with_axis()).collect();
                    text.push_str(&format!("spans {}\n", spans.join(" ")));
                    text.push_str(&flags_text(&trellis));
                    emit(&out, text)?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Dual { input, spans, trellis, check, method, out } => {
            if let Some(path) = trellis {
                if !matches!(method, DualMethod::Local) {
                    return Err(Error::Parse(
                        "a bare trellis file only supports --method local".into(),
                    ));
                }
                let t = read_trellis_file(&path)?;
                let dual = local_dual(&t, &StatePairing::default_for(&t))?;
                let doc = json!({
                    "local_dual": TrellisFile::from_trellis(&dual),
                    "properties": trellis_flags(&dual),
                });
                emit(&out, serde_json::to_string_pretty(&doc).unwrap())?;
                return Ok(ExitCode::SUCCESS);
            }
            let file = ctx.read_code_file(&input.expect("clap guarantees input"))?;
            let gens = file.raw_matrix()?;
            let code = file.to_code()?;
            let check_matrix = match &check {
                Some(path) => read_code_file(path)?.raw_matrix()?,
                None => code.check().clone(),
            };
            let spans =
                spans.ok_or_else(|| Error::Parse("--spans is required with --input".into()))?;
            let t =
                BcjrTrellis::from_spans(gens, check_matrix, parse_span_list(&spans, code.len())?)?;
            let mut doc = serde_json::Map::new();
            if matches!(method, DualMethod::Local | DualMethod::Both) {
                let local = local_dual(t.base(), &StatePairing::default_for(t.base()))?;
                doc.insert("local_dual".into(), json!(TrellisFile::from_trellis(&local)));
                doc.insert("local_properties".into(), trellis_flags(&local));
            }
            if matches!(method, DualMethod::Bcjr | DualMethod::Both) {
                let bd = bcjr_dual(&t)?;
                doc.insert("bcjr_dual".into(), json!(TrellisFile::from_trellis(bd.base())));
                doc.insert("bcjr_properties".into(), trellis_flags(bd.base()));
            }
            if matches!(method, DualMethod::Both) {
                let report = check_subtrellis_dual(&t)?;
                let bd = bcjr_dual(&t)?;
                let local = local_dual(t.base(), &StatePairing::default_for(t.base()))?;
                let isomorphic = match bd.base().is_isomorphic_with(&local, budget) {
                    Ok(w) => json!(w.is_some()),
                    Err(_) => serde_json::Value::Null,
                };
                doc.insert(
                    "comparison".into(),
                    json!({
                        "subtrellis": report.is_subtrellis(),
                        "equal": report.is_equal(),
                        "gaps": report.gaps,
                        "bcjr_ecp": report.bcjr_ecp,
                        "local_ecp": report.local_ecp,
                        "isomorphic": isomorphic,
                    }),
                );
            }
            emit(&out, serde_json::to_string_pretty(&serde_json::Value::Object(doc)).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }

        Command::KvDual { input, tie_break, emit: what, out } => {
            let code = ctx.read_code_file(&input)?.to_code()?;
            match what {
                KvDualEmit::Y => {
                    let pair = code.characteristic_pair_with(tie_break.into(), budget)?;
                    let res = dual_characteristic_pair(&pair, code.check())?;
                    let mut text = String::new();
                    for (m, span) in res.dual_spans().iter().enumerate() {
                        let row: Vec<String> =
                            res.dual_matrix().row(m).iter().map(u8::to_string).collect();
                        text.push_str(&format!("{} {}\n", span, row.join(" ")));
                    }
                    emit(&out, text)?;
                    Ok(ExitCode::SUCCESS)
                }
                KvDualEmit::Report => {
                    let report = kv_conjecture_suite(&code, tie_break.into(), budget)?;
                    let ok = report.passed;
                    emit(&out, serde_json::to_string_pretty(&report).unwrap())?;
                    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
                }
                KvDualEmit::Trellises => {
                    let pair = code.characteristic_pair_with(tie_break.into(), budget)?;
                    let res = dual_characteristic_pair(&pair, code.check())?;
                    let mut items = Vec::new();
                    let n = code.len();
                    let k = code.dim();
                    for ends in (0..n).combinations(k) {
                        let sel = dual_selection(&res, &ends)?;
                        if sel.x_sel.rank() != k {
                            continue;
                        }
                        let (primal, dual, _) = dual_kv_pair(&res, &sel, budget)?;
                        items.push(json!({
                            "ends": ends,
                            "primal": TrellisFile::from_trellis(primal.base()),
                            "dual": TrellisFile::from_trellis(&dual),
                        }));
                    }
                    emit(&out, serde_json::to_string_pretty(&json!(items)).unwrap())?;
                    Ok(ExitCode::SUCCESS)
                }
            }
        }

        Command::Verify { suite, input, seed, count, tie_break } => {
            let report = match suite {
                Suite::Examples => verify::examples_suite(budget),
                Suite::Properties => verify::properties_suite(seed, count, budget),
                Suite::KvConjecture => match input {
                    Some(path) => {
                        let code = ctx.read_code_file(&path)?.to_code()?;
                        verify::conjecture_suite_report(&code, tie_break.into(), budget)?
                    }
                    None => random_conjecture_suite(seed, count, tie_break.into(), budget)?,
                },
            };
            let ok = report.passed;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }

        Command::Export { trellis, out } => {
            let t = read_trellis_file(&trellis)?;
            match out.format {
                Format::Json => {
                    emit(&out, serde_json::to_string_pretty(&TrellisFile::from_trellis(&t)).unwrap())?
                }
                _ => emit(&out, t.export_dot_with(budget)?)?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Seeded random codes through the end-to-end dual-construction suite.
fn random_conjecture_suite(
    seed: u64,
    count: usize,
    policy: GeneratorPolicy,
    budget: &Budget,
) -> kvtrellis::Result<verify::SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut merged: Option<verify::SuiteReport> = None;
    let mut produced = 0usize;
    let mut shape = 0usize;
    while produced < count {
        let p = if shape % 2 == 0 { 2 } else { 3 };
        let n = 4 + (shape % 5);
        let k = 2 + (shape % (n - 3).max(1));
        shape += 1;
        let Some(code) = kvtrellis::code::random_full_support_code(&mut rng, p, n, k, 500) else {
            continue;
        };
        let report = kv_conjecture_suite(&code, policy, budget)?;
        let label = format!("random_{produced}_p{p}_n{n}_k{k}");
        let entry = verify::CheckResult {
            name: label,
            passed: report.passed,
            detail: if report.passed { String::new() } else { "suite failed".into() },
        };
        merged = Some(match merged.take() {
            None => verify::SuiteReport {
                suite: "kv-conjecture".into(),
                passed: entry.passed,
                checks: vec![entry],
            },
            Some(mut r) => {
                r.passed = r.passed && entry.passed;
                r.checks.push(entry);
                r
            }
        });
        produced += 1;
    }
    merged.ok_or_else(|| Error::VerificationFailed("no random codes produced".into()))
}

