use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spectra_factor::factors::{
    has_perfect_matching, has_star_cycle_factor, iso_witness, iso_witness_bounded, tutte_witness,
    tutte_witness_bounded, FactorResult, Witness,
};
use spectra_factor::graph::{from_graph6, parse_edge_list, to_graph6};
use spectra_factor::harness::{
    format_sig, sweep, verify, verify_oracles, Progress, RecordMode, ReportFormat, ReportWriter, RunConfig,
    Source,
};
use spectra_factor::limits::limits;
use spectra_factor::quotient::{closed_form_matrix, MatrixId, MatrixParams};
use spectra_factor::spectra::{
    graph_char_poly, largest_eigenvalue_with_tolerance, largest_real_root, wiener_index, MatrixKind,
    DEFAULT_TOLERANCE,
};
use spectra_factor::theorems::{
    extremal_k2_spec, extremal_star_cycle_spec, Threshold, ThresholdKind, TheoremId,
};
use spectra_factor::{Error, FamilySpec, Graph};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "spectra-factor", version, about = "Spectral radii, factor oracles and exhaustive threshold checks for small graphs")]
struct Cli {
    /// Error bound required of computed eigenvalues.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Output format (text by default for single-graph commands).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Parallel workers for enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    chunks: usize,
    /// Permit order-8 enumeration (about 2.7e8 labeled graphs).
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Largest adjacency, signless Laplacian and distance eigenvalues.
    Spectral {
        #[command(flatten)]
        input: GraphInput,
        /// Subset of rho, kappa, mu1.
        #[arg(long, value_delimiter = ',', default_value = "rho,kappa,mu1")]
        kinds: Vec<String>,
    },
    /// Exact characteristic polynomial of a graph matrix or a closed-form quotient matrix.
    Charpoly {
        #[command(flatten)]
        input: OptionalGraph,
        /// Graph matrix: A, Q or D.
        #[arg(long, default_value = "A")]
        kind: String,
        /// Closed-form quotient matrix M1..M15 instead of a graph.
        #[arg(long, conflicts_with_all = ["graph", "edge_list", "family"])]
        matrix: Option<String>,
        #[arg(long)]
        nu: Option<usize>,
        #[arg(long)]
        x: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Perfect matching and star-cycle factor, with certificate or violating set.
    FactorCheck {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t = FactorChoice::Both)]
        factor: FactorChoice,
    },
    /// The graph attaining a threshold, with its invariants and factor oracles.
    Extremal {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Exhaustive threshold verification.
    Verify {
        /// Comma-separated statement ids; defaults to sc-size,sc-rho,sc-mu1.
        #[arg(long, value_delimiter = ',')]
        theorem: Vec<TheoremId>,
        /// Orders such as 7, 4..7 or 4-7.
        #[arg(long, default_value = "4..7", value_parser = parse_orders)]
        orders: RangeInclusive<usize>,
        /// graph6 corpus (one per line) instead of labeled enumeration.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Records::Notable)]
        records: Records,
        /// Cross-check factor oracles instead of statements.
        #[arg(long)]
        oracles: bool,
    },
    /// Thresholds tabulated over a range of orders.
    Sweep {
        #[arg(long)]
        theorem: Option<TheoremId>,
        #[arg(long, default_value = "4..12", value_parser = parse_orders)]
        orders: RangeInclusive<usize>,
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Wiener index (sum of distances over unordered pairs).
    Wiener {
        #[command(flatten)]
        input: GraphInput,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FactorChoice {
    K2,
    StarCycle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Records {
    All,
    Notable,
    None,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// graph6 string.
    graph: Option<String>,
    /// Edge-list file: a "n m" line, then m lines "u v".
    #[arg(long)]
    edge_list: Option<PathBuf>,
    /// Family such as "K(2; 5x1)".
    #[arg(long)]
    family: Option<FamilySpec>,
}

#[derive(Args, Debug)]
#[group(required = false, multiple = false)]
struct OptionalGraph {
    graph: Option<String>,
    #[arg(long)]
    edge_list: Option<PathBuf>,
    #[arg(long)]
    family: Option<FamilySpec>,
}

fn parse_orders(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parts: Vec<&str> = s.split("..").flat_map(|p| p.split('-')).collect();
    let nums: Result<Vec<usize>, _> = parts.iter().map(|p| p.trim().parse::<usize>()).collect();
    match nums.map_err(|e| e.to_string())?.as_slice() {
        [a] => Ok(*a..=*a),
        [a, b] if a <= b => Ok(*a..=*b),
        _ => Err(format!("expected N or A..B with A <= B, got {s:?}")),
    }
}

fn load(graph: &Option<String>, edge_list: &Option<PathBuf>, family: &Option<FamilySpec>) -> Result<Graph, Error> {
    match (graph, edge_list, family) {
        (Some(g6), _, _) => from_graph6(g6.trim()),
        (_, Some(path), _) => parse_edge_list(&std::fs::read_to_string(path)?),
        (_, _, Some(spec)) => Ok(spec.to_graph()),
        _ => Err(Error::Input("no graph given".into())),
    }
}

fn kind_from_name(s: &str) -> Result<MatrixKind, Error> {
    match s {
        "rho" => Ok(MatrixKind::Adjacency),
        "kappa" => Ok(MatrixKind::SignlessLaplacian),
        "mu1" => Ok(MatrixKind::Distance),
        other => other.parse(),
    }
}

struct Ctx {
    tolerance: f64,
    format: Option<Format>,
    out: Box<dyn Write>,
}

impl Ctx {
    fn emit(&mut self, text: &str, value: &Value) -> Result<(), Error> {
        match self.format {
            Some(Format::Json) => writeln!(self.out, "{}", serde_json::to_string_pretty(value).expect("json"))?,
            Some(Format::Csv) => {
                return Err(Error::Input("csv output is only available for verify and sweep".into()))
            }
            None => write!(self.out, "{text}")?,
        }
        Ok(())
    }

    fn eigen(&self, g: &Graph, kind: MatrixKind) -> Result<(f64, f64), Error> {
        let v = largest_eigenvalue_with_tolerance(&kind.matrix(g)?, self.tolerance)?;
        Ok((v.value, v.residual))
    }
}

fn factor_json(r: &FactorResult, w: &Option<Witness>) -> Value {
    json!({ "exists": r.exists, "certificate": r.certificate, "witness": w })
}

fn cmd_spectral(ctx: &mut Ctx, g: &Graph, kinds: &[String]) -> Result<(), Error> {
    let mut text = String::new();
    let mut values = Vec::new();
    for k in kinds {
        let kind = kind_from_name(k.trim())?;
        let (v, residual) = ctx.eigen(g, kind)?;
        text.push_str(&format!("{:<6} {}  (residual {residual:.1e})\n", kind.symbol(), format_sig(v, 10)));
        values.push(json!({ "kind": kind.symbol(), "value": v, "residual": residual }));
    }
    ctx.emit(&text, &json!({ "graph6": to_graph6(g)?, "values": values }))
}

fn cmd_charpoly(ctx: &mut Ctx, g: Option<Graph>, kind: &str, matrix: Option<MatrixId>, params: MatrixParams) -> Result<(), Error> {
    let (poly, label) = match (matrix, g) {
        (Some(id), _) => (closed_form_matrix(id, &params)?.char_poly(), format!("{id} at {}", serde_json::to_string(&params).expect("json"))),
        (None, Some(g)) => {
            let kind = kind_from_name(kind)?;
            (graph_char_poly(&g, kind)?, format!("{} of {}", kind.letter(), to_graph6(&g)?))
        }
        (None, None) => return Err(Error::Input("give a graph or --matrix".into())),
    };
    let root = largest_real_root(&poly, None)?;
    let text = format!("{label}\n{poly}\nlargest root {}\n", format_sig(root, 10));
    ctx.emit(&text, &json!({ "source": label, "charpoly": poly, "charpoly_text": poly.to_string(), "largest_root": root }))
}

fn witness_for(g: &Graph, tutte: bool) -> Result<Option<Witness>, Error> {
    let full = g.order() <= limits().witness_order;
    match (tutte, full) {
        (true, true) => tutte_witness(g),
        (false, true) => iso_witness(g),
        // large extremal graphs: the hub is found among small sets
        (true, false) => tutte_witness_bounded(g, g.min_degree()),
        (false, false) => iso_witness_bounded(g, g.min_degree()),
    }
}

fn factor_report(g: &Graph, choice: FactorChoice) -> Result<(String, Value), Error> {
    let mut text = String::new();
    let mut out = serde_json::Map::new();
    if choice != FactorChoice::StarCycle {
        let r = has_perfect_matching(g);
        let w = if r.exists { None } else { witness_for(g, true)? };
        text.push_str(&format!("perfect matching: {}\n", if r.exists { "yes" } else { "no" }));
        if let Some(w) = &w {
            text.push_str(&format!("  {w}\n"));
        }
        out.insert("k2_factor".into(), factor_json(&r, &w));
    }
    if choice != FactorChoice::K2 {
        let r = has_star_cycle_factor(g)?;
        let w = if r.exists { None } else { witness_for(g, false)? };
        text.push_str(&format!("star-cycle factor: {}\n", if r.exists { "yes" } else { "no" }));
        if let Some(w) = &w {
            text.push_str(&format!("  {w}\n"));
        }
        out.insert("star_cycle_factor".into(), factor_json(&r, &w));
    }
    Ok((text, Value::Object(out)))
}

fn cmd_extremal(ctx: &mut Ctx, id: TheoremId, nu: usize, delta: Option<usize>) -> Result<(), Error> {
    let spec = if id.is_matching() {
        let d = delta.ok_or_else(|| Error::Input(format!("{id} needs --delta")))?;
        extremal_k2_spec(d, nu)?
    } else {
        extremal_star_cycle_spec(nu)?
    };
    let g = spec.to_graph();
    let threshold = Threshold::new(id, nu, delta)?;
    let mut text = format!("{spec}\ngraph6 {}\n|E| {}\n", to_graph6(&g)?, g.size());
    let mut values = serde_json::Map::new();
    for kind in MatrixKind::ALL {
        let (v, _) = ctx.eigen(&g, kind)?;
        text.push_str(&format!("{:<6} {}\n", kind.symbol(), format_sig(v, 10)));
        values.insert(kind.symbol().into(), json!(v));
    }
    if let Some(kind) = threshold.kind.matrix() {
        let (full, _) = ctx.eigen(&g, kind)?;
        let agree = (full - threshold.value).abs() < 1e-8;
        text.push_str(&format!(
            "quotient {} {} ({})\n",
            kind.symbol(),
            format_sig(threshold.value, 10),
            if agree { "agrees" } else { "DISAGREES" }
        ));
        values.insert("quotient".into(), json!({ "kind": kind.symbol(), "value": threshold.value, "agrees": agree }));
    } else if threshold.kind == ThresholdKind::Size {
        text.push_str(&format!("size threshold {}\n", threshold.exact.expect("size")));
    }
    let choice = if id.is_matching() { FactorChoice::K2 } else { FactorChoice::StarCycle };
    let (ftext, fjson) = factor_report(&g, choice)?;
    text.push_str(&ftext);
    let value = json!({
        "theorem": id,
        "family": spec.to_string(),
        "graph6": to_graph6(&g)?,
        "nu": nu,
        "m": g.size(),
        "threshold": threshold,
        "values": values,
        "factors": fjson,
    });
    ctx.emit(&text, &value)
}

fn report_format(f: Option<Format>, default: ReportFormat) -> ReportFormat {
    match f {
        Some(Format::Json) => ReportFormat::JsonLines,
        Some(Format::Csv) => ReportFormat::Csv,
        None => default,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let out: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let mut ctx = Ctx { tolerance: cli.tolerance, format: cli.format, out };
    let mut code = 0;
    match cli.command {
        Command::Spectral { input, kinds } => {
            let g = load(&input.graph, &input.edge_list, &input.family)?;
            cmd_spectral(&mut ctx, &g, &kinds)?;
        }
        Command::Charpoly { input, kind, matrix, nu, x, delta } => {
            let g = match (&input.graph, &input.edge_list, &input.family) {
                (None, None, None) => None,
                (g, e, f) => Some(load(g, e, f)?),
            };
            let id = matrix.as_deref().map(str::parse::<MatrixId>).transpose()?;
            cmd_charpoly(&mut ctx, g, &kind, id, MatrixParams::new(nu, x, delta))?;
        }
        Command::FactorCheck { input, factor } => {
            let g = load(&input.graph, &input.edge_list, &input.family)?;
            let (text, value) = factor_report(&g, factor)?;
            ctx.emit(&text, &json!({ "graph6": to_graph6(&g)?, "factors": value }))?;
        }
        Command::Extremal { theorem, nu, delta } => cmd_extremal(&mut ctx, theorem, nu, delta)?,
        Command::Wiener { input } => {
            let g = load(&input.graph, &input.edge_list, &input.family)?;
            let w = wiener_index(&g)?;
            ctx.emit(&format!("{w}\n"), &json!({ "graph6": to_graph6(&g)?, "wiener": w }))?;
        }
        Command::Sweep { theorem, orders, delta } => {
            let rows = sweep(orders, theorem, delta)?;
            let mut w = ReportWriter::new(&mut ctx.out, report_format(ctx.format, ReportFormat::Csv));
            for r in &rows {
                w.sweep_row(r)?;
            }
            w.finish(&spectra_factor::harness::SWEEP_HEADER)?;
        }
        Command::Verify { theorem, orders, corpus, records, oracles } => {
            if oracles {
                let s = verify_oracles(orders, cli.chunks, cli.allow_large)?;
                writeln!(ctx.out, "{}", serde_json::to_string_pretty(&s).expect("json"))?;
                eprintln!("{} graphs, {} discrepancies", s.graphs, s.failures());
                code = if s.failures() == 0 { 0 } else { EXIT_VIOLATION };
            } else {
                let config = RunConfig {
                    source: corpus.map_or(Source::Labeled(orders), Source::Corpus),
                    theorems: if theorem.is_empty() { TheoremId::STAR_CYCLE.to_vec() } else { theorem },
                    chunks: cli.chunks,
                    allow_large: cli.allow_large,
                    records: match records {
                        Records::All => RecordMode::All,
                        Records::Notable => RecordMode::Notable,
                        Records::None => RecordMode::None,
                    },
                };
                let mut w = ReportWriter::new(&mut ctx.out, report_format(ctx.format, ReportFormat::JsonLines));
                let summary = verify(&config, &mut |r| w.record(r), |p: Progress| {
                    if p.masks_total > 1 << 22 {
                        eprintln!("order {}: {}/{} masks", p.order, p.masks_done, p.masks_total);
                    }
                })?;
                w.finish(&spectra_factor::harness::RECORD_HEADER)?;
                eprintln!("{} graphs in {:.1?}", summary.graphs, summary.wall_time);
                for (id, t) in &summary.theorems {
                    let counts: Vec<String> = t.counts.iter().map(|(v, c)| format!("{v} {c}")).collect();
                    eprintln!("{id}: {}", counts.join(", "));
                    if !t.extremal_classes.is_empty() {
                        eprintln!("  extremal classes: {}", t.extremal_classes.join(" "));
                    }
                    if !t.violation_classes.is_empty() {
                        eprintln!("  violating classes: {}", t.violation_classes.join(" "));
                    }
                    if let Some(m) = t.worst_margin {
                        eprintln!("  worst margin {}", format_sig(m, 6));
                    }
                }
                code = if summary.violations() == 0 { 0 } else { EXIT_VIOLATION };
            }
        }
    }
    ctx.out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Io(_)) { EXIT_IO } else { EXIT_INPUT })
        }
    }
}
