//! The `fixedloci` command line.
//!
//! [`run`] parses arguments, dispatches to the core library and returns the
//! rendered payload with an exit code, so tests can drive it in-process.
//! Output never contains timestamps or unordered collections.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use fixedloci_core::corpus::{self, CaseStatus, CorpusSummary};
use fixedloci_core::extension::{analyze_extension, build_extension, ExtensionSpecJson};
use fixedloci_core::gerbe::{self, GerbeClass, PicModel};
use fixedloci_core::graphs::{self, GraphError, WeightVector};
use fixedloci_core::groupoid::TheoremCaseJson;
use fixedloci_core::lattice::{self, IntMatrix};
use fixedloci_core::{FinAbGroup, GroupSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_THEOREM: i32 = 3;

/// Environment variable overriding the graph enumeration cap.
pub const CAP_ENV: &str = "FIXEDLOCI_CAP";

#[derive(Parser, Debug)]
#[command(name = "fixedloci", version, about = "Exact invariants of torus fixed loci on finite models")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Md, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Smith normal form U A V = D of an integer matrix
    Snf(MatrixArgs),
    /// Kernel of the torus isogeny given by a square matrix, as a diagonalizable group
    TorusKernel(MatrixArgs),
    /// Finite model of an extension of a torus by a finite group
    Extension(ExtensionArgs),
    /// Run the structure-theorem verifier on a case corpus
    VerifyTheorem(VerifyArgs),
    /// Enumerate localization graphs with their fixed-locus data
    GpGraphs(GraphArgs),
    /// Root gerbe class arithmetic in Pic / r Pic
    Gerbe(GerbeArgs),
    /// Print the bundled theorem corpus or a seeded random one
    Corpus(CorpusArgs),
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    /// Rows separated by ';', entries by ',', e.g. "2,0;0,4"
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: String,
}

#[derive(Args, Debug)]
pub struct ExtensionArgs {
    /// JSON file {group, r, iota, M}
    #[arg(long, conflicts_with_all = ["group", "r", "iota", "m"])]
    pub spec: Option<PathBuf>,
    /// Group name such as C4, C2xC4, D4, Q8
    #[arg(long)]
    pub group: Option<String>,
    /// Divisor chain, comma separated
    #[arg(long)]
    pub r: Option<String>,
    /// Images of the generators of mu_r, comma separated element indices
    #[arg(long)]
    pub iota: Option<String>,
    #[arg(long = "M")]
    pub m: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// JSON array of cases; the bundled corpus when omitted
    #[arg(long)]
    pub corpus: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[arg(long)]
    pub g: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long = "N")]
    pub big_n: usize,
    #[arg(long)]
    pub d: u64,
    /// N+1 distinct integer weights, comma separated
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    /// Maximum number of candidate graphs examined (overrides FIXEDLOCI_CAP)
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Args, Debug)]
pub struct GerbeArgs {
    #[command(subcommand)]
    pub op: GerbeOp,
}

#[derive(Args, Debug)]
pub struct ClassArgs {
    /// Picard group, e.g. "Z" or "Z^2 x Z/2"
    #[arg(long, default_value = "Z")]
    pub pic: String,
    /// Optional generator labels, comma separated
    #[arg(long)]
    pub labels: Option<String>,
    #[arg(long)]
    pub r: u64,
}

#[derive(Subcommand, Debug)]
pub enum GerbeOp {
    /// Class of a line bundle in Pic / r Pic
    Kummer {
        #[command(flatten)]
        class: ClassArgs,
        /// Coordinates of L in the generators, comma separated
        #[arg(long = "L", allow_hyphen_values = true)]
        l: String,
    },
    /// Sum of two classes
    Add {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long = "L1", allow_hyphen_values = true)]
        l1: String,
        #[arg(long = "L2", allow_hyphen_values = true)]
        l2: String,
    },
    /// Class over base x BG_m after tensoring with a weight w character
    Twist {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long = "L", allow_hyphen_values = true)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
    },
}

#[derive(Args, Debug)]
pub struct CorpusArgs {
    /// Generate this many random cases instead of the bundled corpus
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = corpus::DEFAULT_SEED)]
    pub seed: u64,
    /// Append the non-central negative control case
    #[arg(long)]
    pub with_control: bool,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn error(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Resource(String),
}

type CmdResult = Result<Outcome, Failure>;

fn input(msg: impl std::fmt::Display) -> Failure {
    Failure::Input(msg.to_string())
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: text },
            };
        }
    };
    let cap_env = std::env::var(CAP_ENV).ok();
    match dispatch(&cli, cap_env.as_deref()) {
        Ok(out) => out,
        Err(Failure::Input(msg)) => Outcome::error(EXIT_INPUT, msg),
        Err(Failure::Resource(msg)) => Outcome::error(EXIT_RESOURCE, msg),
    }
}

fn dispatch(cli: &Cli, cap_env: Option<&str>) -> CmdResult {
    let f = cli.format;
    match &cli.command {
        Command::Snf(a) => snf(a, f),
        Command::TorusKernel(a) => torus_kernel(a, f),
        Command::Extension(a) => extension(a, f),
        Command::VerifyTheorem(a) => verify(a, f),
        Command::GpGraphs(a) => gp_graphs(a, f, cap_env),
        Command::Gerbe(a) => gerbe_cmd(a, f),
        Command::Corpus(a) => corpus_cmd(a, f),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn parse_matrix(text: &str) -> Result<IntMatrix, Failure> {
    text.parse().map_err(|e| input(format!("--matrix: {e}")))
}

fn parse_list<T: std::str::FromStr>(flag: &str, text: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| input(format!("{flag}: bad entry {:?}", x.trim()))))
        .collect()
}

/// Integer entry as a JSON number when it fits in i64, else as a string.
fn big_json(x: &num_bigint::BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| big_json(m.get(i, j))).collect())).collect())
}

fn snf(a: &MatrixArgs, f: Format) -> CmdResult {
    let m = parse_matrix(&a.matrix)?;
    let s = lattice::smith_normal_form(&m);
    let factors: Vec<String> = s.factors.iter().map(ToString::to_string).collect();
    let out = match f {
        Format::Json => to_json(&json!({
            "matrix": matrix_json(&m),
            "U": matrix_json(&s.u),
            "D": matrix_json(&s.d),
            "V": matrix_json(&s.v),
            "factors": s.factors.iter().map(big_json).collect::<Vec<_>>(),
            "cokernel": lattice::coker_structure(&m).map_err(input)?.to_string(),
        })),
        Format::Csv => to_csv(
            &["index", "factor"],
            &factors.iter().enumerate().map(|(i, x)| vec![i.to_string(), x.clone()]).collect::<Vec<_>>(),
        ),
        Format::Md => {
            let mut out = String::new();
            let _ = writeln!(out, "factors: {}", factors.join(", "));
            let _ = writeln!(out, "U = {}", s.u);
            let _ = writeln!(out, "D = {}", s.d);
            let _ = writeln!(out, "V = {}", s.v);
            out
        }
    };
    Ok(Outcome::ok(out))
}

fn torus_kernel(a: &MatrixArgs, f: Format) -> CmdResult {
    let m = parse_matrix(&a.matrix)?;
    let k = lattice::torus_kernel(&m).map_err(|e| input(format!("--matrix: {e}")))?;
    let factors = k.torsion().nontrivial().to_vec();
    let out = match f {
        Format::Json => to_json(&json!({
            "matrix": matrix_json(&m),
            "kernel": k.to_mu_string(),
            "invariant_factors": factors,
            "order": k.order(),
        })),
        Format::Csv => to_csv(&["invariant_factor"], &factors.iter().map(|x| vec![x.to_string()]).collect::<Vec<_>>()),
        Format::Md => format!("{}\n", k.to_mu_string()),
    };
    Ok(Outcome::ok(out))
}

fn extension_spec(a: &ExtensionArgs) -> Result<ExtensionSpecJson, Failure> {
    if let Some(path) = &a.spec {
        let text = std::fs::read_to_string(path).map_err(|e| input(format!("--spec {}: {e}", path.display())))?;
        return serde_json::from_str(&text).map_err(|e| input(format!("--spec: {e}")));
    }
    let missing = |flag: &str| input(format!("{flag} is required without --spec"));
    Ok(ExtensionSpecJson {
        group: GroupSpec::Named(a.group.clone().ok_or_else(|| missing("--group"))?),
        r: parse_list("--r", a.r.as_deref().ok_or_else(|| missing("--r"))?)?,
        iota: parse_list("--iota", a.iota.as_deref().ok_or_else(|| missing("--iota"))?)?,
        m: a.m.ok_or_else(|| missing("--M"))?,
    })
}

fn extension(a: &ExtensionArgs, f: Format) -> CmdResult {
    let spec = extension_spec(a)?.build().map_err(input)?;
    let model = build_extension(&spec).map_err(input)?;
    let report = analyze_extension(&model).map_err(input)?;
    let j = report.to_json();
    let out = match f {
        Format::Json => to_json(&j),
        Format::Csv => to_csv(
            &["key", "value"],
            &[
                vec!["r".into(), report.r.to_string()],
                vec!["gbar".into(), j.gbar.description.clone()],
                vec!["gbar_order".into(), j.gbar.order.to_string()],
                vec!["gamma_order".into(), model.gamma.order().to_string()],
                vec!["split_ok".into(), j.split_ok.to_string()],
                vec!["central_ok".into(), j.central_ok.to_string()],
                vec!["pushout_ok".into(), j.pushout_ok.to_string()],
            ],
        ),
        Format::Md => {
            let mut out = String::new();
            let _ = writeln!(out, "r: {}", report.r);
            let _ = writeln!(out, "mu_r: {}", FinAbGroup::new(0, report.r.moduli()).map_err(input)?.to_mu_string());
            let _ = writeln!(out, "Gbar: {} (order {})", j.gbar.description, j.gbar.order);
            let _ = writeln!(out, "|Gamma_M|: {}", model.gamma.order());
            let _ = writeln!(out, "split: {}", pass(j.split_ok));
            let _ = writeln!(out, "central: {}", pass(j.central_ok));
            let _ = writeln!(out, "pushout exact: {}", pass(j.pushout_ok));
            out
        }
    };
    let code = if report.all_ok() { EXIT_OK } else { EXIT_THEOREM };
    Ok(Outcome { code, stdout: out, stderr: String::new() })
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn status_word(s: CaseStatus) -> &'static str {
    match s {
        CaseStatus::Pass => "pass",
        CaseStatus::Fail => "FAIL",
        CaseStatus::Rejected => "rejected",
    }
}

fn verify(a: &VerifyArgs, f: Format) -> CmdResult {
    let text = match &a.corpus {
        Some(path) => std::fs::read_to_string(path).map_err(|e| input(format!("--corpus {}: {e}", path.display())))?,
        None => corpus::BUNDLED_CORPUS.to_string(),
    };
    let cases: Vec<TheoremCaseJson> = corpus::parse_corpus(&text).map_err(|e| input(format!("--corpus: {e}")))?;
    let summary = corpus::run_corpus(&cases);
    let out = match f {
        Format::Json => to_json(&summary),
        Format::Csv => corpus_csv(&summary),
        Format::Md => corpus_md(&summary),
    };
    let code = if summary.all_passed() { EXIT_OK } else { EXIT_THEOREM };
    Ok(Outcome { code, stdout: out, stderr: String::new() })
}

const PART_COLUMNS: [&str; 8] =
    ["split", "central", "pushout", "part1", "part2", "part3", "stabilizers", "containment"];

fn part_flags(summary: &CorpusSummary) -> Vec<Vec<String>> {
    summary
        .cases
        .iter()
        .map(|c| match &c.report {
            Some(r) => [
                r.split_ok,
                r.central_ok,
                r.pushout_ok,
                r.part1_ok,
                r.part2_ok,
                r.part3_ok,
                r.stabilizers_ok,
                r.containment_ok,
            ]
            .iter()
            .map(|&b| pass(b).to_string())
            .collect(),
            None => vec!["-".to_string(); PART_COLUMNS.len()],
        })
        .collect()
}

fn corpus_csv(summary: &CorpusSummary) -> String {
    let mut header = vec!["case", "status"];
    header.extend(PART_COLUMNS);
    header.push("error");
    let rows: Vec<Vec<String>> = summary
        .cases
        .iter()
        .zip(part_flags(summary))
        .map(|(c, flags)| {
            let mut row = vec![c.name.clone(), status_word(c.status).to_string()];
            row.extend(flags);
            row.push(c.error.clone().unwrap_or_default());
            row
        })
        .collect();
    to_csv(&header, &rows)
}

fn corpus_md(summary: &CorpusSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "| case | status | {} |", PART_COLUMNS.join(" | "));
    let _ = writeln!(out, "|---|---|{}", "---|".repeat(PART_COLUMNS.len()));
    for (c, flags) in summary.cases.iter().zip(part_flags(summary)) {
        let _ = writeln!(out, "| {} | {} | {} |", c.name, status_word(c.status), flags.join(" | "));
    }
    let _ = writeln!(out);
    for c in summary.cases.iter().filter(|c| c.error.is_some()) {
        let _ = writeln!(out, "- {}: {}", c.name, c.error.as_deref().unwrap_or_default());
    }
    let _ = writeln!(
        out,
        "total {} passed {} failed {} rejected {}",
        summary.total, summary.passed, summary.failed, summary.rejected
    );
    out
}

fn resolve_cap(flag: Option<usize>, env: Option<&str>) -> Result<usize, Failure> {
    if let Some(cap) = flag {
        return if cap == 0 { Err(input("--cap must be positive")) } else { Ok(cap) };
    }
    match env {
        Some(text) => match text.trim().parse::<usize>() {
            Ok(cap) if cap > 0 => Ok(cap),
            _ => Err(input(format!("{CAP_ENV}: expected a positive integer, got {text:?}"))),
        },
        None => Ok(graphs::DEFAULT_CAP),
    }
}

fn gp_graphs(a: &GraphArgs, f: Format, cap_env: Option<&str>) -> CmdResult {
    let cap = resolve_cap(a.cap, cap_env)?;
    let weights: Option<WeightVector> = match &a.weights {
        Some(w) => {
            let w: WeightVector = w.parse().map_err(|e| input(format!("--weights: {e}")))?;
            if w.len() != a.big_n + 1 {
                return Err(input(format!(
                    "--weights: expected {} weights for N = {}, got {}",
                    a.big_n + 1,
                    a.big_n,
                    w.len()
                )));
            }
            Some(w)
        }
        None => None,
    };
    let graphs = graphs::enumerate_graphs_capped(a.g, a.n, a.big_n, a.d, cap).map_err(|e| match e {
        GraphError::ResourceBound(_) => Failure::Resource(format!("{e}; raise --cap or {CAP_ENV}")),
        other => input(other),
    })?;
    let reports = graphs
        .iter()
        .map(|g| graphs::component_descriptor(g, weights.as_ref()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(input)?;
    let rows: Vec<Vec<String>> = reports
        .iter()
        .enumerate()
        .map(|(i, rep)| {
            let factors = rep.moduli_factors.iter().map(|m| format!("M({},{})", m.genus, m.points)).collect::<Vec<_>>();
            let unstable = rep.unstable_vertices.iter().map(ToString::to_string).collect::<Vec<_>>();
            vec![
                i.to_string(),
                rep.graph.to_string(),
                rep.r.map_or("-".into(), |r| r.to_string()),
                rep.aut_order.to_string(),
                rep.deck_order.to_string(),
                rep.a_order.to_string(),
                factors.join(" "),
                unstable.join(" "),
            ]
        })
        .collect();
    let header = ["index", "graph", "r", "aut", "deck", "A", "moduli_factors", "unstable_vertices"];
    let out = match f {
        Format::Json => to_json(&reports),
        Format::Csv => to_csv(&header, &rows),
        Format::Md => {
            let mut out = String::new();
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for row in &rows {
                let _ = writeln!(out, "| {} |", row.join(" | "));
            }
            let _ = writeln!(out, "\n{} graphs", rows.len());
            out
        }
    };
    Ok(Outcome::ok(out))
}

fn pic_model(c: &ClassArgs) -> Result<PicModel, Failure> {
    let pic: FinAbGroup = c.pic.parse().map_err(|e| input(format!("--pic: {e}")))?;
    let labels: Option<Vec<String>> = c.labels.as_ref().map(|l| l.split(',').map(|s| s.trim().to_string()).collect());
    if labels.is_none() && pic == "Z".parse().expect("Z") {
        return Ok(PicModel::projective_line());
    }
    PicModel::from_group(&pic, labels.as_deref()).map_err(|e| input(format!("--pic: {e}")))
}

fn class_of(base: &PicModel, flag: &str, l: &str, r: u64) -> Result<GerbeClass, Failure> {
    let coords: Vec<i64> = parse_list(flag, l)?;
    gerbe::kummer_class(base, &coords, r).map_err(|e| input(format!("{flag}: {e}")))
}

fn gerbe_cmd(a: &GerbeArgs, f: Format) -> CmdResult {
    let class = match &a.op {
        GerbeOp::Kummer { class, l } => class_of(&pic_model(class)?, "--L", l, class.r)?,
        GerbeOp::Add { class, l1, l2 } => {
            let base = pic_model(class)?;
            let c1 = class_of(&base, "--L1", l1, class.r)?;
            let c2 = class_of(&base, "--L2", l2, class.r)?;
            gerbe::add_classes(&c1, &c2).map_err(input)?
        }
        GerbeOp::Twist { class, l, w } => {
            let c = class_of(&pic_model(class)?, "--L", l, class.r)?;
            gerbe::equivariant_twist(&c, *w)
        }
    };
    let trivial = gerbe::is_trivial(&class);
    let moduli = class.base.moduli(class.r);
    let out = match f {
        Format::Json => to_json(&json!({
            "r": class.r,
            "generators": class.base.generators,
            "coords": class.coords,
            "moduli": moduli,
            "trivial": trivial,
            "class": class.to_string(),
        })),
        Format::Csv => to_csv(
            &["generator", "coordinate", "modulus"],
            &class
                .base
                .generators
                .iter()
                .zip(&class.coords)
                .zip(&moduli)
                .map(|((g, c), m)| vec![g.label.clone(), c.to_string(), m.to_string()])
                .collect::<Vec<_>>(),
        ),
        Format::Md => format!("{class}\ntrivial: {}\n", if trivial { "yes" } else { "no" }),
    };
    Ok(Outcome::ok(out))
}

fn corpus_cmd(a: &CorpusArgs, f: Format) -> CmdResult {
    let mut cases = match a.random {
        Some(n) => corpus::random_corpus(a.seed, n),
        None => corpus::default_corpus(),
    };
    if a.with_control {
        cases.push(corpus::negative_control());
    }
    let out = match f {
        Format::Json => corpus::corpus_to_json(&cases),
        Format::Csv => to_csv(
            &["name", "group", "r", "iota", "M", "U_size"],
            &cases
                .iter()
                .map(|c| {
                    let group = match &c.group {
                        GroupSpec::Named(n) => n.clone(),
                        GroupSpec::Table { order, .. } => format!("table({order})"),
                    };
                    let join = |v: Vec<String>| v.join(" ");
                    vec![
                        c.name.clone().unwrap_or_default(),
                        group,
                        join(c.r.iter().map(ToString::to_string).collect()),
                        join(c.iota.iter().map(ToString::to_string).collect()),
                        c.m.to_string(),
                        c.u_size.to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Md => {
            let mut out = String::new();
            for c in &cases {
                let _ = writeln!(out, "- {}", c.name.as_deref().unwrap_or("unnamed"));
            }
            let _ = writeln!(out, "\n{} cases", cases.len());
            out
        }
    };
    Ok(Outcome::ok(out))
}
