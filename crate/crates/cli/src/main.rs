use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use locmod::harness::HarnessError;
use locmod::semantic::Verdict;
use locmod::{
    extract, find_countermodel, genuine_modules, parse_ontology_with, parse_signature, render_report,
    run_comparison, serialize_ontology, Budget, ExtractOptions, Locality, LocalityFlavor, ModuleKind, Ontology,
    ParseErrorKind, ParseOptions, ReportFormat, SamplingConfig, Signature, TestMode,
};

const EXIT_PARSE: u8 = 1;
const EXIT_UNSUPPORTED: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

#[derive(Parser)]
#[command(name = "locmod", version, about = "Locality-based module extraction and syntactic/semantic comparison")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract a module for a seed signature and print it in functional syntax.
    Extract(ExtractArgs),
    /// Print the locality verdict of every axiom for a seed signature.
    Check(CheckArgs),
    /// List the deduplicated modules of all axiom signatures.
    Genuine(GenuineArgs),
    /// Compare syntactic and semantic locality over sampled signatures.
    Compare(CompareArgs),
    /// Search every axiom for a small countermodel.
    #[command(hide = true)]
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Flavor {
    Bot,
    Top,
    Star,
    SemBot,
    SemTop,
    SemStar,
}

impl Flavor {
    fn kind(self) -> ModuleKind {
        match self {
            Flavor::Bot => ModuleKind::Single(LocalityFlavor::SynBot),
            Flavor::Top => ModuleKind::Single(LocalityFlavor::SynTop),
            Flavor::SemBot => ModuleKind::Single(LocalityFlavor::SemBot),
            Flavor::SemTop => ModuleKind::Single(LocalityFlavor::SemTop),
            Flavor::Star => ModuleKind::star(false),
            Flavor::SemStar => ModuleKind::star(true),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    T1a,
    T1b,
    T2,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Markdown,
}

#[derive(Args)]
struct InputArgs {
    /// Ontology file in functional syntax.
    #[arg(long, value_name = "PATH")]
    ontology: PathBuf,
    /// Reject names used without a declaration.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct SeedArgs {
    /// Seed signature file, one entity per line.
    #[arg(long, value_name = "PATH")]
    signature: Option<PathBuf>,
    /// Inline seed signature, e.g. `C:A,R:r`. Wins over --signature.
    #[arg(long, value_name = "LIST")]
    terms: Option<String>,
}

#[derive(Args)]
struct ReasonerArgs {
    /// Use the refined syntactic grammar for role axioms.
    #[arg(long)]
    refined: bool,
    /// Tableau step budget per satisfiability test.
    #[arg(long, env = "LOCMOD_BUDGET_STEPS", value_name = "N")]
    budget_steps: Option<u64>,
    /// Tableau time budget per satisfiability test, in milliseconds.
    #[arg(long, env = "LOCMOD_BUDGET_MS", value_name = "MS")]
    budget_ms: Option<u64>,
    /// Exit with status 3 when any semantic verdict is Unknown.
    #[arg(long)]
    strict_verdicts: bool,
}

impl ReasonerArgs {
    fn options(&self, trace: bool) -> ExtractOptions {
        let mut budget = Budget::default();
        if let Some(n) = self.budget_steps {
            budget.max_steps = n;
        }
        if let Some(ms) = self.budget_ms {
            budget.max_time = Duration::from_millis(ms);
        }
        ExtractOptions {
            refined: self.refined,
            budget,
            trace,
        }
    }
}

#[derive(Args)]
struct ExtractArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    seed: SeedArgs,
    /// Module kind.
    #[arg(long, value_enum)]
    flavor: Flavor,
    #[command(flatten)]
    reasoner: ReasonerArgs,
    /// Write the module here instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Print the extraction trace and statistics on standard error.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    seed: SeedArgs,
    /// Locality notion (star kinds are not per-axiom notions).
    #[arg(long, value_enum)]
    flavor: Flavor,
    #[command(flatten)]
    reasoner: ReasonerArgs,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenuineArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum)]
    flavor: Flavor,
    #[command(flatten)]
    reasoner: ReasonerArgs,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Args)]
struct CompareArgs {
    /// Ontology file; may be repeated.
    #[arg(long, value_name = "PATH")]
    ontology: Vec<PathBuf>,
    /// Directory whose `.ofs` files are added to the inputs.
    #[arg(long, value_name = "DIR")]
    corpus: Option<PathBuf>,
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, default_value = "all")]
    mode: Mode,
    /// Signatures sampled per ontology.
    #[arg(long, default_value_t = 400)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Inclusion probability of each term.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Sample signature sizes from equal-width bins.
    #[arg(long)]
    binned: bool,
    #[arg(long, default_value_t = 10)]
    bins: usize,
    #[command(flatten)]
    reasoner: ReasonerArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Fill in timing columns (the output is then no longer reproducible).
    #[arg(long)]
    timings: bool,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Largest domain to try.
    #[arg(long, default_value_t = 3)]
    max_domain: usize,
}

/// A failure with its exit status; the message goes to standard error.
struct Failure(u8, String);

type Outcome = Result<u8, Failure>;

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure(EXIT_PARSE, format!("{}: {e}", path.display()))
}

fn load(input: &InputArgs) -> Result<Ontology, Failure> {
    load_path(&input.ontology, input.strict)
}

fn load_path(path: &Path, strict: bool) -> Result<Ontology, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    match parse_ontology_with(&text, &ParseOptions { strict }) {
        Ok(p) if p.named => Ok(p.ontology),
        Ok(p) => {
            let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
            Ok(Ontology::new(stem.unwrap_or_default(), p.ontology.axioms().to_vec()))
        }
        Err(errors) => {
            let code = if errors.iter().all(|e| e.kind == ParseErrorKind::UnsupportedConstruct) {
                EXIT_UNSUPPORTED
            } else {
                EXIT_PARSE
            };
            let lines: Vec<String> = errors.iter().map(|e| format!("{}:{e}", path.display())).collect();
            Err(Failure(code, lines.join("\n")))
        }
    }
}

fn seed(args: &SeedArgs, o: &Ontology) -> Result<Signature, Failure> {
    let text = match (&args.terms, &args.signature) {
        (Some(terms), Some(path)) => {
            eprintln!("warning: --terms given, ignoring --signature {}", path.display());
            terms.replace(',', "\n")
        }
        (Some(terms), None) => terms.replace(',', "\n"),
        (None, Some(path)) => fs::read_to_string(path).map_err(|e| io_error(path, e))?,
        (None, None) => {
            eprintln!("warning: no seed signature given, using the empty signature");
            String::new()
        }
    };
    parse_signature(&text, o).map_err(|errors| {
        let lines: Vec<String> = errors.iter().map(|e| format!("signature:{e}")).collect();
        Failure(EXIT_PARSE, lines.join("\n"))
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure(EXIT_PARSE, format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn unknown_status(unknown: usize, strict: bool) -> u8 {
    if unknown > 0 {
        eprintln!("warning: {unknown} semantic verdict(s) were Unknown and counted as non-local");
        if strict {
            return EXIT_UNKNOWN;
        }
    }
    0
}

fn set_jobs(jobs: Option<usize>) -> Result<(), Failure> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure(EXIT_PARSE, format!("--jobs: {e}")))?;
    }
    Ok(())
}

fn run_extract(args: &ExtractArgs) -> Outcome {
    let o = load(&args.input)?;
    let sig = seed(&args.seed, &o)?;
    let opts = args.reasoner.options(args.verbose);
    let m = extract(&o, &sig, args.flavor.kind(), &opts);
    if args.verbose {
        for line in &m.trace {
            eprintln!("{line}");
        }
        eprintln!(
            "{} module: {} of {} axioms, {} locality checks, {:?}",
            m.kind,
            m.module.len(),
            o.len(),
            m.locality_checks,
            m.wall_time
        );
        if !m.chain.is_empty() {
            eprintln!("chain: {:?}", m.chain);
        }
    }
    emit(&args.out, &serialize_ontology(&m.module))?;
    Ok(unknown_status(m.unknown_verdicts, args.reasoner.strict_verdicts))
}

fn run_check(args: &CheckArgs) -> Outcome {
    let flavor = match args.flavor.kind() {
        ModuleKind::Single(f) => f,
        _ => return Err(Failure(EXIT_PARSE, "check needs one of bot, top, sem-bot, sem-top".into())),
    };
    let o = load(&args.input)?;
    let sig = seed(&args.seed, &o)?;
    let loc = Locality::new(flavor, &args.reasoner.options(false));
    let mut text = String::new();
    let mut unknown = 0;
    for (i, a) in o.axioms().iter().enumerate() {
        let v = loc.check(a, &sig);
        let label = match &v {
            Verdict::Local => "local".to_string(),
            Verdict::NonLocal => "non-local".to_string(),
            Verdict::Unknown(why) => {
                unknown += 1;
                format!("unknown ({why})")
            }
        };
        text.push_str(&format!("{i}\t{label}\t{a}\n"));
    }
    emit(&args.out, &text)?;
    Ok(unknown_status(unknown, args.reasoner.strict_verdicts))
}

fn run_genuine(args: &GenuineArgs) -> Outcome {
    set_jobs(args.jobs)?;
    let o = load(&args.input)?;
    let modules = genuine_modules(&o, args.flavor.kind(), &args.reasoner.options(false));
    let mut text = String::new();
    let mut unknown = 0;
    for (a, m) in &modules {
        unknown += m.unknown_verdicts;
        let ids: Vec<String> = m.axiom_ids.iter().map(|i| i.to_string()).collect();
        text.push_str(&format!("{}\t[{}]\t{a}\n", m.axiom_ids.len(), ids.join(",")));
    }
    text.push_str(&format!("# {} genuine modules for {} axioms\n", modules.len(), o.len()));
    emit(&args.out, &text)?;
    Ok(unknown_status(unknown, args.reasoner.strict_verdicts))
}

fn run_compare(args: &CompareArgs) -> Outcome {
    set_jobs(args.jobs)?;
    let mut paths = args.ontology.clone();
    if let Some(dir) = &args.corpus {
        let entries = fs::read_dir(dir).map_err(|e| io_error(dir, e))?;
        let mut found: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "ofs"))
            .collect();
        found.sort();
        paths.extend(found);
    }
    if paths.is_empty() {
        return Err(Failure(EXIT_PARSE, "compare needs --ontology or --corpus".into()));
    }
    let cfg = SamplingConfig {
        sample_count: args.samples,
        inclusion_probability: args.p,
        rng_seed: args.seed,
        binned: args.binned,
        bin_count: args.bins,
    };
    let modes: &[TestMode] = match args.mode {
        Mode::T1a => &[TestMode::T1a],
        Mode::T1b => &[TestMode::T1b],
        Mode::T2 => &[TestMode::T2],
        Mode::All => &TestMode::ALL,
    };
    let opts = args.reasoner.options(false);
    let mut comparisons = Vec::new();
    for path in &paths {
        let o = load_path(path, args.strict)?;
        for &mode in modes {
            let cmp = run_comparison(&o, mode, &cfg, &opts).map_err(|e| match e {
                HarnessError::InvalidConfig(_) => Failure(EXIT_PARSE, e.to_string()),
                HarnessError::InvariantViolation { .. } => Failure(EXIT_INVARIANT, format!("invariant violated: {e}")),
            })?;
            comparisons.push(cmp);
        }
    }
    let format = match args.format {
        Format::Csv => ReportFormat::Csv,
        Format::Markdown => ReportFormat::Markdown,
    };
    emit(&args.out, &render_report(&comparisons, format, args.timings))?;
    let unknown = comparisons.iter().map(|c| c.unknown_verdicts).sum();
    Ok(unknown_status(unknown, args.reasoner.strict_verdicts))
}

fn run_oracle(args: &OracleArgs) -> Outcome {
    if args.max_domain > 7 {
        return Err(Failure(EXIT_PARSE, "--max-domain must be at most 7".into()));
    }
    let o = load(&args.input)?;
    for (i, a) in o.axioms().iter().enumerate() {
        let sig = locmod::signature_of(a);
        if sig.len() > 4 {
            println!("{i}\tskipped ({} names)\t{a}", sig.len());
            continue;
        }
        match find_countermodel(a, args.max_domain) {
            Some(m) => println!("{i}\trefuted on {} elements\t{a}", m.domain_size),
            None => println!("{i}\tno countermodel up to {}\t{a}", args.max_domain),
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Extract(a) => run_extract(a),
        Command::Check(a) => run_check(a),
        Command::Genuine(a) => run_genuine(a),
        Command::Compare(a) => run_compare(a),
        Command::Oracle(a) => run_oracle(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
