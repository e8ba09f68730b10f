//! Command-line front end. `run` parses argv, dispatches, and returns the exit code.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::builders::beta::{Beta, BetaClass};
use crate::builders::number::ExactNumber;
use crate::builders::{beta_lgs, dyck_lgs, markov_dyck_lgs, motzkin_lgs};
use crate::conjugacy::{
    check_coe, check_eventual_conjugacy, check_one_sided_conjugacy, check_substitution_morphism, higher_block_codes,
    BlockMap, BlockWordMap, Cocycle, CoeData, EventualConjugacyData, PathMap, Substitution,
};
use crate::error::{Error, Result};
use crate::fischer::{ck_matrix, fischer_cover, min_lgs_from_fischer};
use crate::invariants::{ck_kgroups, entropy};
use crate::lambda_graph::LambdaGraphTruncation;
use crate::schema::{parse_tagged, tag};
use crate::subshift::{self, Alphabet, Backend, LabeledGraph, SubshiftSpec, Word};
use crate::sync::{build_min_lgs, SyncSearchParams};
use crate::verdict::CheckReport;

pub const EXIT_ERROR: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "lamgraph", version, about = "Lambda-graph systems and invariants of subshifts")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect a subshift.
    Subshift {
        #[command(subcommand)]
        action: SubshiftAction,
    },
    /// Minimal lambda-graph system from synchronizing words.
    Min {
        #[command(flatten)]
        src: SpecSource,
        #[arg(long, default_value_t = 4)]
        level: usize,
        #[arg(long, default_value_t = 6)]
        word_bound: usize,
        #[arg(long)]
        extension_bound: Option<usize>,
    },
    /// Fischer cover of a sofic shift, or its lambda-graph system with `--level`.
    Fischer {
        #[command(flatten)]
        src: GraphSource,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Matrix on symbol-vertex pairs of a left-resolving graph.
    CkMatrix {
        #[command(flatten)]
        src: GraphSource,
    },
    /// Cuntz-Krieger K-groups of a 0/1 matrix.
    Kgroups {
        /// JSON file holding `[[..]]` or `{"matrix": [[..]]}`.
        #[arg(long, required_unless_present_any = ["graph", "spec", "catalog"])]
        matrix: Option<PathBuf>,
        #[command(flatten)]
        src: OptGraphSource,
    },
    /// Beta expansions and beta shifts.
    Beta {
        #[command(subcommand)]
        action: BetaAction,
    },
    /// Lambda-graph systems of bracket shifts and beta shifts.
    Builders {
        #[command(subcommand)]
        action: BuilderAction,
    },
    /// Finite-depth conjugacy checks.
    Conjugacy {
        #[command(subcommand)]
        action: ConjugacyAction,
    },
    /// Structural validation of a lambda-graph system file.
    Validate {
        #[arg(long)]
        lgs: PathBuf,
    },
    /// Re-export a lambda-graph system, its matrices or its relations.
    Export {
        #[arg(long)]
        lgs: PathBuf,
        #[arg(long, conflicts_with = "matrices")]
        relations: bool,
        #[arg(long)]
        matrices: bool,
    },
}

#[derive(Args, Debug)]
struct SpecSource {
    /// Subshift JSON file.
    #[arg(long, required_unless_present = "catalog", conflicts_with = "catalog")]
    spec: Option<PathBuf>,
    /// even, odd, golden, full:N, dyck:N, motzkin:N or beta:X.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args, Debug)]
struct GraphSource {
    /// Labeled graph JSON file.
    #[arg(long, required_unless_present_any = ["spec", "catalog"], conflicts_with_all = ["spec", "catalog"])]
    graph: Option<PathBuf>,
    #[arg(long, conflicts_with = "catalog")]
    spec: Option<PathBuf>,
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args, Debug)]
struct OptGraphSource {
    #[arg(long, conflicts_with_all = ["matrix", "spec", "catalog"])]
    graph: Option<PathBuf>,
    #[arg(long, conflicts_with_all = ["matrix", "catalog"])]
    spec: Option<PathBuf>,
    #[arg(long, conflicts_with = "matrix")]
    catalog: Option<String>,
}

#[derive(Subcommand, Debug)]
enum SubshiftAction {
    /// Alphabet, backend and word counts.
    Info {
        #[command(flatten)]
        src: SpecSource,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Admissible words of one length.
    Words {
        #[command(flatten)]
        src: SpecSource,
        #[arg(long)]
        length: usize,
    },
    /// Irreducibility of the language up to a depth.
    Irreducible {
        #[command(flatten)]
        src: SpecSource,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Topological entropy.
    Entropy {
        #[command(flatten)]
        src: SpecSource,
    },
}

#[derive(Subcommand, Debug)]
enum BetaAction {
    /// Greedy expansion of `x` (default 1) in base beta.
    Expand {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value = "1")]
        x: String,
        #[arg(long, default_value_t = 16)]
        depth: usize,
    },
    /// Full shift, SFT, strictly sofic or non-sofic.
    Classify {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 32)]
        depth: usize,
    },
    /// Quasi-greedy expansion of 1 bounding the beta shift.
    Zeta {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 16)]
        depth: usize,
    },
    /// Lambda-graph system of the beta shift.
    Lgs {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 4)]
        level: usize,
    },
    /// K-groups from the expansion of 1.
    Kgroups {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 64)]
        depth: usize,
    },
    /// Entropy `log beta`.
    Entropy {
        #[arg(long)]
        beta: String,
    },
}

#[derive(Subcommand, Debug)]
enum BuilderAction {
    Dyck {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        level: usize,
    },
    MarkovDyck {
        /// Rows separated by `;`, entries by `,`, e.g. `1,1;1,0`.
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 4)]
        level: usize,
    },
    Motzkin {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        level: usize,
    },
    Beta {
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 4)]
        level: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ConjugacyAction {
    /// Check a candidate map between two subshifts to a finite depth.
    Check {
        #[arg(long, value_enum)]
        kind: CheckKind,
        /// Subshift (or, for `coe`, lambda-graph system) file or catalog name.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: Option<String>,
        /// JSON description of the maps.
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Conj,
    Eventual,
    Coe,
    Substitution,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            return EXIT_USAGE;
        }
    };
    if cli.jobs == Some(0) {
        let _ = writeln!(err, "error: --jobs must be positive");
        return EXIT_USAGE;
    }
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::invalid(e.to_string())),
        },
        None => dispatch(&cli),
    };
    match result.and_then(|o| emit(&cli, &o.text).map(|_| o)) {
        Ok(o) => {
            if cli.out.is_none() {
                let _ = out.write_all(o.text.as_bytes());
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    if let Some(p) = &cli.out {
        std::fs::write(p, text)?;
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let f = cli.format;
    match &cli.command {
        Command::Subshift { action } => subshift_cmd(action, f),
        Command::Min { src, level, word_bound, extension_bound } => {
            let spec = src.load()?;
            let mut params = SyncSearchParams::new(*word_bound);
            if let Some(e) = extension_bound {
                params = params.with_extension_bound(*e);
            }
            lgs_output(&build_min_lgs(&spec, *level, &params)?, f)
        }
        Command::Fischer { src, level } => {
            let g = src.fischer()?;
            match level {
                Some(l) => {
                    let fl = min_lgs_from_fischer(&g, *l)?;
                    if f == Format::Text {
                        Ok(Output::ok(format!("stabilization level {}\n{}", fl.stabilization, lgs_text(&fl.lgs))))
                    } else {
                        lgs_output(&fl.lgs, f)
                    }
                }
                None => graph_output(&g, f),
            }
        }
        Command::CkMatrix { src } => {
            let g = src.presentation()?;
            let m = ck_matrix(&g)?;
            text_or_json(f, m.to_string(), || m.to_json())
        }
        Command::Kgroups { matrix, src } => {
            let a = match matrix {
                Some(p) => read_matrix(p)?,
                None => {
                    let gs =
                        GraphSource { graph: src.graph.clone(), spec: src.spec.clone(), catalog: src.catalog.clone() };
                    ck_matrix(&gs.presentation()?)?.entries
                }
            };
            let k = ck_kgroups(&a)?;
            text_or_json(f, format!("{k}\n"), || k.to_json())
        }
        Command::Beta { action } => beta_cmd(action, f),
        Command::Builders { action } => {
            let g = match action {
                BuilderAction::Dyck { n, level } => dyck_lgs(*n, *level)?,
                BuilderAction::MarkovDyck { matrix, level } => markov_dyck_lgs(&parse_inline_matrix(matrix)?, *level)?,
                BuilderAction::Motzkin { n, level } => motzkin_lgs(*n, *level)?,
                BuilderAction::Beta { beta, level } => beta_lgs(&Beta::parse(beta)?, *level)?,
            };
            lgs_output(&g, f)
        }
        Command::Conjugacy { action: ConjugacyAction::Check { kind, left, right, data, depth } } => {
            let report = conjugacy_check(*kind, left, right.as_deref(), data, *depth)?;
            report_output(&report, f)
        }
        Command::Validate { lgs } => {
            let g = read_lgs(lgs)?;
            let r = g.validate();
            let code = if r.all_ok() { 0 } else { 1 };
            let text = if f == Format::Json {
                json_string(&serde_json::to_value(&r)?)?
            } else {
                let mut s = String::new();
                for (name, ok) in [
                    ("left_resolving", r.left_resolving),
                    ("predecessor_separated", r.predecessor_separated),
                    ("local_property", r.local_property),
                    ("essential", r.essential),
                    ("iota_surjective", r.iota_surjective),
                ] {
                    let _ = writeln!(s, "{name}: {ok}");
                }
                for fail in &r.failures {
                    let _ = writeln!(s, "failure: {fail}");
                }
                s
            };
            Ok(Output { text, code })
        }
        Command::Export { lgs, relations, matrices } => {
            let g = read_lgs(lgs)?;
            if *relations {
                Ok(Output::ok(json_string(&g.export_relations()?)?))
            } else if *matrices {
                Ok(Output::ok(json_string(&serde_json::to_value(g.transition_matrices())?)?))
            } else {
                let f = if f == Format::Text { Format::Json } else { f };
                lgs_output(&g, f)
            }
        }
    }
}

fn subshift_cmd(action: &SubshiftAction, f: Format) -> Result<Output> {
    match action {
        SubshiftAction::Info { src, depth } => {
            let spec = src.load()?;
            let counts = spec.word_counts(*depth)?;
            let kind = backend_kind(&spec);
            let certified = spec.certified_depth();
            let text = format!(
                "alphabet: {}\nbackend: {kind}\ncertified depth: {}\nword counts: {}\n",
                spec.alphabet().names().join(" "),
                certified.map_or("unbounded".into(), |d| d.to_string()),
                join(&counts),
            );
            text_or_json(
                f,
                text,
                || json!({ "alphabet": spec.alphabet().names(), "backend": kind, "certified_depth": certified, "word_counts": counts }),
            )
        }
        SubshiftAction::Words { src, length } => {
            let spec = src.load()?;
            let words: Vec<String> =
                spec.admissible_words(*length)?.iter().map(|w| spec.alphabet().format_word(w)).collect();
            let mut text = String::new();
            for w in &words {
                let _ = writeln!(text, "{w}");
            }
            text_or_json(f, text, || json!({ "length": length, "words": words }))
        }
        SubshiftAction::Irreducible { src, depth } => report_output(&src.load()?.is_irreducible(*depth)?, f),
        SubshiftAction::Entropy { src } => {
            let e = entropy(&src.load()?)?;
            let text = match &e.symbolic {
                Some(s) => format!("{:.12} = {s}\n", e.value),
                None => format!("{:.12} in [{:.12}, {:.12}]\n", e.value, e.lower, e.upper),
            };
            text_or_json(f, text, || e.to_json())
        }
    }
}

fn beta_cmd(action: &BetaAction, f: Format) -> Result<Output> {
    match action {
        BetaAction::Expand { beta, x, depth } => {
            let b = Beta::parse(beta)?;
            let e = b.expand(&ExactNumber::parse(x)?, *depth)?;
            let mut text = format!("digits: {}\n", join(&e.digits));
            if let Some(m) = e.finite_len {
                let _ = writeln!(text, "terminates after {m} digits");
            }
            if let Some((s, n)) = e.period {
                let _ = writeln!(text, "period of length {n} from digit {}", s + 1);
            }
            text_or_json(
                f,
                text,
                || json!({ "beta": beta, "x": x, "digits": e.digits, "finite_len": e.finite_len, "period": e.period }),
            )
        }
        BetaAction::Classify { beta, depth } => {
            let c = Beta::parse(beta)?.classify(*depth)?;
            let code = if matches!(c, BetaClass::NonSoficUpTo { .. }) { 2 } else { 0 };
            let o = text_or_json(f, format!("{c}\n"), || serde_json::to_value(&c).unwrap_or(Value::Null))?;
            Ok(Output { code, ..o })
        }
        BetaAction::Zeta { beta, depth } => {
            let z = Beta::parse(beta)?.zeta(*depth)?;
            let text = if z.period.is_empty() {
                format!("digits: {}\n", join(&z.take(*depth)))
            } else {
                let head = if z.prefix.is_empty() { String::new() } else { format!("prefix: {}\n", join(&z.prefix)) };
                format!("{head}period: {}\n", join(&z.period))
            };
            text_or_json(f, text, || serde_json::to_value(&z).unwrap_or(Value::Null))
        }
        BetaAction::Lgs { beta, level } => lgs_output(&beta_lgs(&Beta::parse(beta)?, *level)?, f),
        BetaAction::Kgroups { beta, depth } => {
            let k = Beta::parse(beta)?.kgroups(*depth)?;
            text_or_json(f, format!("{} ({})\n", k.groups, k.branch), || k.to_json())
        }
        BetaAction::Entropy { beta } => {
            let (v, s) = Beta::parse(beta)?.entropy();
            text_or_json(f, format!("{v:.12} = {s}\n"), || json!({ "value": format!("{v:.12}"), "symbolic": s }))
        }
    }
}

impl SpecSource {
    fn load(&self) -> Result<SubshiftSpec> {
        match (&self.spec, &self.catalog) {
            (Some(p), _) => SubshiftSpec::from_json(&read(p)?),
            (None, Some(name)) => catalog_spec(name),
            (None, None) => Err(Error::invalid("one of --spec or --catalog is required")),
        }
    }
}

impl GraphSource {
    /// The graph as given, or the Fischer cover of a spec.
    fn presentation(&self) -> Result<LabeledGraph> {
        match &self.graph {
            Some(p) => LabeledGraph::from_json(&read(p)?),
            None => fischer_cover(&self.spec()?),
        }
    }

    fn fischer(&self) -> Result<LabeledGraph> {
        match &self.graph {
            Some(p) => fischer_cover(&SubshiftSpec::sofic(LabeledGraph::from_json(&read(p)?)?)?),
            None => fischer_cover(&self.spec()?),
        }
    }

    fn spec(&self) -> Result<SubshiftSpec> {
        SpecSource { spec: self.spec.clone(), catalog: self.catalog.clone() }.load()
    }
}

fn catalog_spec(name: &str) -> Result<SubshiftSpec> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let n = || -> Result<usize> {
        arg.ok_or_else(|| Error::invalid(format!("catalog entry {head} needs :N")))?
            .parse()
            .map_err(|_| Error::invalid(format!("bad size in {name:?}")))
    };
    match head {
        "even" => Ok(subshift::even_shift()),
        "odd" => Ok(subshift::odd_shift()),
        "golden" => Ok(subshift::golden_mean()),
        "full" => Ok(subshift::full_shift(n()?)),
        "dyck" => SubshiftSpec::dyck(n()?),
        "motzkin" => SubshiftSpec::motzkin(n()?),
        "beta" => SubshiftSpec::beta_shift(Beta::parse(arg.unwrap_or(""))?),
        _ => Err(Error::invalid(format!("unknown catalog entry {name:?}"))),
    }
}

/// A file path when it exists, a catalog name otherwise.
fn spec_arg(arg: &str) -> Result<SubshiftSpec> {
    let p = Path::new(arg);
    if p.is_file() {
        SubshiftSpec::from_json(&read(p)?)
    } else {
        catalog_spec(arg)
    }
}

fn backend_kind(spec: &SubshiftSpec) -> &'static str {
    match spec.backend() {
        Backend::Forbidden { .. } => "forbidden",
        Backend::Sofic(_) => "sofic",
        Backend::Dyck(_) => "dyck",
        Backend::MarkovDyck { .. } => "markov_dyck",
        Backend::Motzkin(_) => "motzkin",
        Backend::Beta(_) => "beta",
        Backend::HigherBlock { .. } => "higher_block",
        Backend::Oracle(_) => "oracle",
    }
}

fn read(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::invalid(format!("{}: {e}", p.display())))
}

fn read_lgs(p: &Path) -> Result<LambdaGraphTruncation> {
    LambdaGraphTruncation::from_json(&read(p)?)
}

fn read_matrix(p: &Path) -> Result<Vec<Vec<u64>>> {
    let v = parse_tagged(&read(p)?)?;
    let m = match v {
        Value::Object(mut o) => o.remove("matrix").ok_or_else(|| Error::invalid("object lacks \"matrix\""))?,
        other => other,
    };
    Ok(serde_json::from_value(m)?)
}

fn parse_inline_matrix(text: &str) -> Result<Vec<Vec<u8>>> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|c| c.trim().parse::<u8>().map_err(|_| Error::BadMatrix(format!("bad entry {c:?}"))))
                .collect()
        })
        .collect()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn json_string(v: &Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(&tag(v.clone()))? + "\n")
}

fn text_or_json(f: Format, text: String, json: impl FnOnce() -> Value) -> Result<Output> {
    match f {
        Format::Json => Ok(Output::ok(json_string(&json())?)),
        Format::Dot => Err(Error::Unsupported("dot output is only available for graphs".into())),
        Format::Text => Ok(Output::ok(text)),
    }
}

fn report_output(r: &CheckReport, f: Format) -> Result<Output> {
    let mut text = format!("{}\n", r.verdict);
    if let Some(w) = &r.witness {
        let _ = writeln!(text, "witness: {w}");
    }
    if let Some(n) = &r.note {
        let _ = writeln!(text, "note: {n}");
    }
    let o = text_or_json(f, text, || serde_json::to_value(r).unwrap_or(Value::Null))?;
    Ok(Output { code: r.verdict.exit_code(), ..o })
}

fn graph_text(g: &LabeledGraph) -> String {
    let mut s = format!("vertices: {}\n", g.vertices().join(" "));
    for e in g.edges() {
        let _ = writeln!(s, "{} -{}-> {}", g.vertices()[e.src], g.alphabet().name(e.label), g.vertices()[e.dst]);
    }
    s
}

fn graph_output(g: &LabeledGraph, f: Format) -> Result<Output> {
    Ok(Output::ok(match f {
        Format::Json => g.to_json()? + "\n",
        Format::Dot => g.to_dot(),
        Format::Text => graph_text(g),
    }))
}

fn lgs_text(g: &LambdaGraphTruncation) -> String {
    format!(
        "depth: {}\nvertices per level: {}\nedges per level: {}\n",
        g.depth(),
        join(g.sizes()),
        join(&g.num_edges())
    )
}

fn lgs_output(g: &LambdaGraphTruncation, f: Format) -> Result<Output> {
    Ok(Output::ok(match f {
        Format::Json => g.to_json()? + "\n",
        Format::Dot => g.to_dot(),
        Format::Text => lgs_text(g),
    }))
}

/// Sliding block code: window length plus a table from blocks to letters.
#[derive(Deserialize)]
struct BlockDoc {
    window: usize,
    table: HashMap<String, String>,
}

#[derive(Deserialize)]
struct ConjDoc {
    #[serde(default)]
    higher_block: Option<usize>,
    #[serde(default)]
    forward: Option<BlockDoc>,
    #[serde(default)]
    backward: Option<BlockDoc>,
}

#[derive(Deserialize)]
struct SubstitutionDoc {
    images: HashMap<String, String>,
}

#[derive(Deserialize)]
struct EventualDoc {
    k: usize,
    phi1: BlockDoc,
    h1: BlockDoc,
    phi2: BlockDoc,
    h2: BlockDoc,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum PathMapDoc {
    Sliding(BlockDoc),
    Substitution(SubstitutionDoc),
    Desubstitution(SubstitutionDoc),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CocycleDoc {
    Constant(usize),
    Window { window: usize, table: HashMap<String, usize> },
}

#[derive(Deserialize)]
struct CoeDoc {
    h: PathMapDoc,
    h_inv: PathMapDoc,
    k1: CocycleDoc,
    l1: CocycleDoc,
    k2: CocycleDoc,
    l2: CocycleDoc,
    #[serde(default)]
    label_map: Option<PathMapDoc>,
}

fn block_map(doc: &BlockDoc, src: &Alphabet, dst: &Alphabet) -> Result<BlockMap> {
    let mut table = HashMap::new();
    for (k, v) in &doc.table {
        let img = dst.parse_word(v)?;
        if img.len() != 1 {
            return Err(Error::invalid(format!("block image {v:?} must be one symbol")));
        }
        table.insert(src.parse_word(k)?, img[0]);
    }
    BlockMap::new(doc.window, table)
}

fn block_word_map(doc: &BlockDoc, src: &Alphabet, dst: &Alphabet) -> Result<BlockWordMap> {
    let table = doc
        .table
        .iter()
        .map(|(k, v)| Ok((src.parse_word(k)?, dst.parse_word(v)?)))
        .collect::<Result<HashMap<Word, Word>>>()?;
    BlockWordMap::new(doc.window, table)
}

fn substitution(doc: &SubstitutionDoc, src: &Alphabet, dst: &Alphabet) -> Result<Substitution> {
    let mut images = vec![None; src.len()];
    for (k, v) in &doc.images {
        let s = src.index_of(k).ok_or_else(|| Error::invalid(format!("unknown symbol {k:?}")))?;
        images[s as usize] = Some(dst.parse_word(v)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| Error::invalid(format!("no image for {}", src.names()[i]))))
        .collect::<Result<Vec<_>>>()?;
    Substitution::new(images)
}

fn path_map(doc: &PathMapDoc, src: &Alphabet, dst: &Alphabet) -> Result<PathMap> {
    Ok(match doc {
        PathMapDoc::Sliding(b) => PathMap::Sliding(block_map(b, src, dst)?),
        PathMapDoc::Substitution(s) => PathMap::Substitution(substitution(s, src, dst)?),
        // Images are words over `src` standing for letters of `dst`.
        PathMapDoc::Desubstitution(s) => PathMap::Desubstitution(substitution(s, dst, src)?),
    })
}

fn cocycle(doc: &CocycleDoc, a: &Alphabet) -> Result<Cocycle> {
    Ok(match doc {
        CocycleDoc::Constant(c) => Cocycle::Constant(*c),
        CocycleDoc::Window { window, table } => Cocycle::Window {
            window: *window,
            table: table.iter().map(|(k, v)| Ok((a.parse_word(k)?, *v))).collect::<Result<_>>()?,
        },
    })
}

fn conjugacy_check(kind: CheckKind, left: &str, right: Option<&str>, data: &Path, depth: usize) -> Result<CheckReport> {
    let doc = parse_tagged(&read(data)?)?;
    let need_right = || right.ok_or_else(|| Error::invalid("--right is required for this kind"));
    match kind {
        CheckKind::Conj => {
            let spec1 = spec_arg(left)?;
            let d: ConjDoc = serde_json::from_value(doc)?;
            let (spec2, fwd, bwd) = match d.higher_block {
                Some(k) => higher_block_codes(&spec1, k)?,
                None => {
                    let spec2 = spec_arg(need_right()?)?;
                    let (fd, bd) = match (&d.forward, &d.backward) {
                        (Some(f), Some(b)) => (f, b),
                        _ => return Err(Error::invalid("data needs forward and backward codes or higher_block")),
                    };
                    let fwd = block_map(fd, spec1.alphabet(), spec2.alphabet())?;
                    let bwd = block_map(bd, spec2.alphabet(), spec1.alphabet())?;
                    (spec2, fwd, bwd)
                }
            };
            check_one_sided_conjugacy(&spec1, &spec2, &fwd, &bwd, depth)
        }
        CheckKind::Substitution => {
            let spec1 = spec_arg(left)?;
            let spec2 = spec_arg(need_right()?)?;
            let d: SubstitutionDoc = serde_json::from_value(doc)?;
            let sub = substitution(&d, spec1.alphabet(), spec2.alphabet())?;
            check_substitution_morphism(&spec1, &spec2, &sub, depth)
        }
        CheckKind::Eventual => {
            let spec1 = spec_arg(left)?;
            let spec2 = spec_arg(need_right()?)?;
            let d: EventualDoc = serde_json::from_value(doc)?;
            let (a1, a2) = (spec1.alphabet(), spec2.alphabet());
            let data = EventualConjugacyData::new(
                d.k,
                block_word_map(&d.phi1, a1, a2)?,
                block_map(&d.h1, a1, a2)?,
                block_word_map(&d.phi2, a2, a1)?,
                block_map(&d.h2, a2, a1)?,
            )?;
            check_eventual_conjugacy(&spec1, &spec2, &data, depth)
        }
        CheckKind::Coe => {
            let g1 = read_lgs(Path::new(left))?;
            let g2 = read_lgs(Path::new(need_right()?))?;
            let p1 = crate::conjugacy::path_space(&g1)?;
            let p2 = crate::conjugacy::path_space(&g2)?;
            let (a1, a2) = (p1.spec.alphabet(), p2.spec.alphabet());
            let d: CoeDoc = serde_json::from_value(doc)?;
            let data = CoeData {
                h: path_map(&d.h, a1, a2)?,
                h_inv: path_map(&d.h_inv, a2, a1)?,
                k1: cocycle(&d.k1, a1)?,
                l1: cocycle(&d.l1, a1)?,
                k2: cocycle(&d.k2, a2)?,
                l2: cocycle(&d.l2, a2)?,
                label_map: d.label_map.as_ref().map(|m| path_map(m, g1.alphabet(), g2.alphabet())).transpose()?,
            };
            check_coe(&data, &g1, &g2, depth)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_matrix_rows_and_entries() {
        assert_eq!(parse_inline_matrix("1,1;1,0").unwrap(), vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(parse_inline_matrix(" 1 , 0 ").unwrap(), vec![vec![1, 0]]);
        assert!(parse_inline_matrix("1,x").is_err());
    }

    #[test]
    fn catalog_names() {
        assert_eq!(catalog_spec("full:3").unwrap().alphabet().len(), 3);
        assert_eq!(catalog_spec("dyck:2").unwrap().alphabet().len(), 4);
        assert_eq!(backend_kind(&catalog_spec("beta:golden").unwrap()), "beta");
        assert!(catalog_spec("full").is_err());
        assert!(catalog_spec("full:two").is_err());
        assert!(catalog_spec("nonesuch").is_err());
    }

    #[test]
    fn dot_is_refused_for_non_graph_output() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(["lamgraph", "--format", "dot", "beta", "entropy", "--beta", "2"], &mut out, &mut err);
        assert_eq!(code, EXIT_ERROR);
        assert!(out.is_empty());
    }
}
