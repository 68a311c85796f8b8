//! Command-line frontend: zero-sum partitions, forest labeling, labeling
//! verification, random instance generation, exhaustive search, and DOT
//! export.
//!
//! Exit codes: 0 success, 1 domain error (ineligible forest, unsatisfiable
//! constraints, collisions, no witness), 2 usage or parse error. Domain
//! errors never emit partial payloads.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use antimagic_core::{
    abc_partition, forest_dot, generate_forest, label_forest_with_plan, labeling_dot, oracle_search,
    parse_document, parse_forest, parse_labeled, serialize_forest, serialize_labeling, vertex_sums,
    zero_sum_partition, Constraint, ForestSpec, GraphError, LabelError, LabelingPlan, OracleMode,
    OracleOutcome, SpecialEdge, VerifyError, DEFAULT_ORACLE_BOUND, FORMAT_HEADER,
};

#[derive(Parser)]
#[command(
    name = "antimagic",
    version,
    about = "Antimagic edge labelings for forests via zero-sum partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a zero-sum partition: tagged A/B/C-sets for --s/--l, or
    /// classes of prescribed sizes for --k/--sizes.
    Partition(PartitionArgs),
    /// Construct an antimagic labeling for the forest in INPUT.
    Label(LabelArgs),
    /// Check a labeled forest: print vertex sums and the verdict.
    Verify(VerifyArgs),
    /// Generate a random forest with the labeler's hypotheses.
    Generate(GenerateArgs),
    /// Exhaustively search all edge labelings of a small forest.
    Oracle(OracleArgs),
    /// Render a forest (labeled or plain) as Graphviz DOT.
    ExportDot(ExportDotArgs),
}

#[derive(Args)]
struct PartitionArgs {
    /// Number of B-sets (pairs summing to k+1); use with --l.
    #[arg(long)]
    s: Option<u64>,
    /// Number of A-sets and of C-sets (triples); use with --s.
    #[arg(long)]
    l: Option<u64>,
    /// Partition [1,k] into the classes given by --sizes.
    #[arg(long, conflicts_with_all = ["s", "l"])]
    k: Option<u64>,
    /// Comma-separated class sizes, each >= 2, summing to k.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<u64>>,
    /// Comma-separated placement constraints with 0-based class indices:
    /// exact-b=I, c-set=I, b-set=I, carrier=I.
    #[arg(long, value_delimiter = ',')]
    constraints: Option<Vec<String>>,
}

#[derive(Args)]
struct LabelArgs {
    /// Edge-list file, or '-' for standard input.
    input: String,
    /// Also write a DOT rendering with vertex sums to this file.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Prepend the case tag, roots, modulus, and reservations as comments.
    #[arg(long)]
    explain: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Labeled edge-list file, or '-' for standard input.
    input: String,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    components: usize,
    #[arg(long)]
    edges: usize,
    /// Number of degree-2 vertices: 0 or 1.
    #[arg(long, default_value_t = 0)]
    degree2: u8,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct OracleArgs {
    /// Edge-list file, or '-' for standard input.
    input: String,
    #[arg(long, value_enum, default_value_t = ModeArg::First)]
    mode: ModeArg,
    /// Maximum edge count for the exhaustive search; overrides the
    /// ANTIMAGIC_ORACLE_BOUND environment variable (default 9).
    #[arg(long)]
    bound: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy)]
enum ModeArg {
    First,
    Count,
    All,
}

#[derive(Args)]
struct ExportDotArgs {
    /// Edge-list file, or '-' for standard input.
    input: String,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    /// Exit 1: the request is well-formed but has no answer.
    Domain(String),
    /// Exit 2: bad flags, unreadable input, or a malformed document.
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Usage(m) => m,
        }
    }
}

/// Payload for standard output plus the exit code (verify reports
/// collisions with a full payload and exit 1).
type Outcome = (String, u8);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Partition(args) => cmd_partition(args),
        Command::Label(args) => cmd_label(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::ExportDot(args) => cmd_export_dot(args),
    };
    match result {
        Ok((payload, code)) => {
            print!("{}", payload);
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Usage(format!("cannot read standard input: {}", e)))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read '{}': {}", path, e)))
    }
}

fn domain_label_error(e: LabelError) -> Failure {
    Failure::Domain(e.to_string())
}

fn parse_failure(e: GraphError) -> Failure {
    Failure::Usage(e.to_string())
}

fn cmd_partition(args: PartitionArgs) -> Result<Outcome, Failure> {
    match (args.s, args.l, args.k, args.sizes) {
        (Some(s), Some(l), None, None) => {
            if args.constraints.is_some() {
                return Err(Failure::Usage(
                    "--constraints applies to --k/--sizes mode only".into(),
                ));
            }
            let p = abc_partition(s, l);
            let mut out = String::new();
            for set in p.a_sets.iter().chain(&p.b_sets).chain(&p.c_sets) {
                let elems: Vec<String> = set.elements.iter().map(u64::to_string).collect();
                writeln!(out, "{}{}={{{}}}", set.kind, set.index, elems.join(",")).unwrap();
            }
            Ok((out, 0))
        }
        (None, None, Some(k), Some(sizes)) => {
            let constraints = parse_constraints(args.constraints.as_deref().unwrap_or(&[]))?;
            let part = zero_sum_partition(k, &sizes, &constraints)
                .map_err(|e| Failure::Domain(e.to_string()))?;
            let mut out = String::new();
            for class in &part.classes {
                let elems: Vec<String> = class.elements().iter().map(u64::to_string).collect();
                writeln!(
                    out,
                    "sum={} mod={}: {}",
                    class.sum(),
                    part.modulus,
                    elems.join(" ")
                )
                .unwrap();
            }
            Ok((out, 0))
        }
        _ => Err(Failure::Usage(
            "use either --s N --l N, or --k N --sizes A,B,...".into(),
        )),
    }
}

fn parse_constraints(specs: &[String]) -> Result<Vec<Constraint>, Failure> {
    specs
        .iter()
        .map(|spec| {
            let (kind, idx) = spec.split_once('=').ok_or_else(|| {
                Failure::Usage(format!("constraint '{}' is not of the form kind=index", spec))
            })?;
            let class: usize = idx
                .parse()
                .map_err(|_| Failure::Usage(format!("bad class index in '{}'", spec)))?;
            match kind {
                "exact-b" => Ok(Constraint::ExactBSet { class }),
                "c-set" => Ok(Constraint::ContainsCSet { class }),
                "b-set" => Ok(Constraint::ContainsBSet { class }),
                "carrier" => Ok(Constraint::CarrierOfK { class }),
                other => Err(Failure::Usage(format!(
                    "unknown constraint kind '{}' (use exact-b, c-set, b-set, carrier)",
                    other
                ))),
            }
        })
        .collect()
}

fn render_labeled(
    lab: &antimagic_core::EdgeLabeling,
    plan: Option<&LabelingPlan>,
) -> String {
    let mut out = String::from(FORMAT_HEADER);
    out.push('\n');
    if let Some(plan) = plan {
        writeln!(out, "# case: {}", plan.case).unwrap();
        writeln!(out, "# roots: {}", plan.roots.join(" ")).unwrap();
        writeln!(out, "# modulus: {}", plan.modulus).unwrap();
        if !plan.reservations.is_empty() {
            let items: Vec<String> = plan
                .reservations
                .iter()
                .map(|r| format!("{}@{}", r.kind, r.vertex))
                .collect();
            writeln!(out, "# reservations: {}", items.join(" ")).unwrap();
        }
        for special in &plan.special_edges {
            match special {
                SpecialEdge::MaxLabel(e) => writeln!(out, "# max-label: {}", e).unwrap(),
                SpecialEdge::BPairEdges(e1, e2) => {
                    writeln!(out, "# b-pair: {} {}", e1, e2).unwrap()
                }
            }
        }
    }
    for e in lab.forest().canonical_edges() {
        let (a, b) = e.endpoints();
        writeln!(out, "{} {} {}", a, b, lab.label(&e)).unwrap();
    }
    out
}

fn cmd_label(args: LabelArgs) -> Result<Outcome, Failure> {
    let text = read_input(&args.input)?;
    let forest = parse_forest(&text).map_err(parse_failure)?;
    let (lab, plan) = label_forest_with_plan(&forest).map_err(domain_label_error)?;
    let payload = render_labeled(&lab, args.explain.then_some(&plan));
    if let Some(path) = &args.dot {
        std::fs::write(path, labeling_dot(&lab))
            .map_err(|e| Failure::Usage(format!("cannot write '{}': {}", path.display(), e)))?;
    }
    Ok((payload, 0))
}

fn cmd_verify(args: VerifyArgs) -> Result<Outcome, Failure> {
    let text = read_input(&args.input)?;
    let lab = parse_labeled(&text).map_err(parse_failure)?;
    let report = vertex_sums(&lab).map_err(|e| match e {
        VerifyError::NotABijection { .. } => Failure::Usage(e.to_string()),
        other => Failure::Domain(other.to_string()),
    })?;
    let mut out = String::new();
    for (v, sum) in &report.sums {
        writeln!(out, "{} {}", v, sum).unwrap();
    }
    for (u, v) in &report.collisions {
        writeln!(out, "collision {} {}", u, v).unwrap();
    }
    if report.is_antimagic {
        writeln!(out, "antimagic").unwrap();
        Ok((out, 0))
    } else {
        writeln!(out, "not antimagic").unwrap();
        Ok((out, 1))
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<Outcome, Failure> {
    if args.degree2 > 1 {
        return Err(Failure::Usage("--degree2 must be 0 or 1".into()));
    }
    let spec = ForestSpec {
        components: args.components,
        edges: args.edges,
        degree2: args.degree2 == 1,
        seed: args.seed,
    };
    let forest = generate_forest(&spec).map_err(|e| Failure::Domain(e.to_string()))?;
    Ok((serialize_forest(&forest), 0))
}

fn oracle_bound(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("ANTIMAGIC_ORACLE_BOUND") {
        Ok(raw) => raw
            .parse()
            .map_err(|_| Failure::Usage(format!("ANTIMAGIC_ORACLE_BOUND='{}' is not a number", raw))),
        Err(_) => Ok(DEFAULT_ORACLE_BOUND),
    }
}

fn cmd_oracle(args: OracleArgs) -> Result<Outcome, Failure> {
    let text = read_input(&args.input)?;
    let forest = parse_forest(&text).map_err(parse_failure)?;
    let bound = oracle_bound(args.bound)?;
    let mode = match args.mode {
        ModeArg::First => OracleMode::First,
        ModeArg::Count => OracleMode::Count,
        ModeArg::All => OracleMode::All,
    };
    let outcome = oracle_search(&forest, mode, bound).map_err(|e| Failure::Domain(e.to_string()))?;
    match outcome {
        OracleOutcome::First(Some(lab)) => Ok((serialize_labeling(&lab), 0)),
        OracleOutcome::First(None) => Err(Failure::Domain("no antimagic labeling".into())),
        OracleOutcome::Count(n) => Ok((format!("{}\n", n), u8::from(n == 0))),
        OracleOutcome::All(labs) => {
            if labs.is_empty() {
                return Err(Failure::Domain("no antimagic labeling".into()));
            }
            let docs: Vec<String> = labs.iter().map(serialize_labeling).collect();
            Ok((docs.join("\n"), 0))
        }
    }
}

fn cmd_export_dot(args: ExportDotArgs) -> Result<Outcome, Failure> {
    let text = read_input(&args.input)?;
    let (forest, labeling) = parse_document(&text).map_err(parse_failure)?;
    let dot = match labeling {
        Some(lab) => labeling_dot(&lab),
        None => forest_dot(&forest),
    };
    match args.output {
        Some(path) => {
            std::fs::write(&path, dot)
                .map_err(|e| Failure::Usage(format!("cannot write '{}': {}", path.display(), e)))?;
            Ok((String::new(), 0))
        }
        None => Ok((dot, 0)),
    }
}
