//! Command-line front end. Reports go to the writer passed to [`run`] as one
//! JSON document per line; human-readable notes go to standard error.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng as _;
use serde_json::{json, Value};

use crate::approx::{epsilon_approximation, parse_rational, verify_approximation, verify_net, Rational};
use crate::discrepancy::{
    beck_fiala_checked, eval_discrepancy, exact_discrepancy, exact_discrepancy_capped, herdisc_search, spectral_lower_bound, Coloring,
    DEFAULT_EXACT_CAP,
};
use crate::error::{Error, Result};
use crate::graph::{
    generate_family, graph_stats, random_degenerate, read_edge_list, subdivide, sylvester_graph, write_edge_list, Family, Graph,
};
use crate::orderings::{
    degeneracy, degeneracy_order, orient_along, wcol_exact_capped, wcol_from_order, wcol_heuristic_order, LinearOrder,
    DEFAULT_MAX_ORDERINGS,
};
use crate::pointer::{
    defined_system, from_degenerate_graph, parse_formula, qf_color, random_formula, random_structure, verify_decomposition, FormulaShape,
    PointerStructure, QFFormula,
};
use crate::power::{edge_color_coloring, orientation_coloring, power_coloring, wreach_star_system};
use crate::rng;
use crate::setsystem::{edge_color_system, neighborhood_system, random_system, EdgeColoring, SetSystem};

#[derive(Parser, Debug)]
#[command(name = "herdisc", version, about = "Low-discrepancy colorings of set systems from sparse graphs")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest ground set for exhaustive discrepancy.
    #[arg(long, global = true, value_name = "N")]
    cap_exact_n: Option<usize>,
    /// Most orderings examined by exact weak coloring numbers.
    #[arg(long, global = true, value_name = "COUNT")]
    cap_orderings: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph as an edge list.
    Gen(GenArgs),
    /// Degeneracy and weak coloring numbers of a graph.
    Order(OrderArgs),
    /// Build a set system and print it as JSON.
    System(SystemArgs),
    /// Color a system and report the certified bound.
    Color(ColorArgs),
    /// Evaluate, compute or bound discrepancy.
    Disc(DiscArgs),
    /// Build or check ε-approximations.
    Approx(ApproxArgs),
    /// Run a randomized property suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    /// path, cycle, grid, complete, complete-bipartite, gnp, all-d-subsets, sylvester, degenerate, petersen
    family: String,
    params: Vec<u64>,
    /// Subdivide every edge this many times.
    #[arg(long, default_value_t = 0)]
    subdivide: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderMode {
    Degeneracy,
    Wcol,
    Stats,
}

#[derive(Args, Debug)]
struct OrderArgs {
    #[arg(value_enum)]
    mode: OrderMode,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short = 'd', long, default_value_t = 1)]
    radius: usize,
    /// Vertex order file (one line, earliest first); smallest-last otherwise.
    #[arg(long)]
    order: Option<PathBuf>,
    /// Also compute the exact value over all orderings.
    #[arg(long)]
    exact: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SystemKind {
    Neighborhood,
    Power,
    Wreach,
    EdgeColor,
    Defined,
    Random,
    Json,
}

/// Where a set system comes from.
#[derive(Args, Debug, Default)]
struct Source {
    /// Edge list, system JSON, or `-` for standard input.
    #[arg(short, long)]
    input: Option<PathBuf>,
    #[arg(short = 'd', long, default_value_t = 1)]
    radius: usize,
    #[arg(long)]
    order: Option<PathBuf>,
    /// Edge colors, lines `u v c`; random when absent.
    #[arg(long)]
    gamma: Option<PathBuf>,
    /// Pointer structure JSON.
    #[arg(long)]
    structure: Option<PathBuf>,
    #[arg(long = "formula")]
    formulas: Vec<String>,
    #[arg(long, default_value_t = 50)]
    ground: usize,
    #[arg(long, default_value_t = 50)]
    slots: usize,
    #[arg(long, default_value_t = 3)]
    degree: usize,
}

#[derive(Args, Debug)]
struct SystemArgs {
    #[arg(value_enum)]
    kind: SystemKind,
    #[command(flatten)]
    source: Source,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ColorMethod {
    BeckFiala,
    Orientation,
    Power,
    EdgeColor,
    Qf,
}

#[derive(Args, Debug)]
struct ColorArgs {
    #[arg(value_enum)]
    method: ColorMethod,
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum)]
    system: Option<SystemKind>,
    /// Coloring file; the coloring goes into the report when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DiscMode {
    Eval,
    Exact,
    Herdisc,
    Spectral,
}

#[derive(Args, Debug)]
struct DiscArgs {
    #[arg(value_enum)]
    mode: DiscMode,
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum)]
    system: Option<SystemKind>,
    #[arg(long)]
    coloring: Option<PathBuf>,
    /// Random subsets tried by `herdisc` when exhaustive search is too large.
    #[arg(long, default_value_t = 4096)]
    budget: u64,
    /// Where `exact` writes an optimal coloring.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ApproxMode {
    Build,
    Verify,
}

#[derive(Args, Debug)]
struct ApproxArgs {
    #[arg(value_enum)]
    mode: ApproxMode,
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum)]
    system: Option<SystemKind>,
    #[arg(long)]
    eps: String,
    /// Sample to check: whitespace-separated elements or a build report.
    #[arg(long)]
    sample: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    BeckFiala,
    Orientation,
    Power,
    Wcol,
    Decomposition,
    Eta,
    Approximation,
    EdgeColor,
    Spectral,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 50)]
    cases: usize,
}

struct Caps {
    exact_n: usize,
    orderings: u64,
}

/// Runs one command. `args[0]` is the program name. Returns the exit status.
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    eprint!("{}", e.render());
                    2
                }
            };
        }
    };
    let caps =
        Caps { exact_n: cli.cap_exact_n.unwrap_or(DEFAULT_EXACT_CAP), orderings: cli.cap_orderings.unwrap_or(DEFAULT_MAX_ORDERINGS) };
    match dispatch(&cli.command, cli.seed, &caps, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("herdisc: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: &Command, seed: u64, caps: &Caps, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Gen(a) => gen(a, seed, out),
        Command::Order(a) => order(a, caps, out),
        Command::System(a) => {
            let s = build_system(Some(a.kind), &a.source, seed)?;
            eprintln!("system: ground {}, {} sets, degree {}", s.ground_size(), s.len(), s.degree());
            match &a.output {
                Some(path) => {
                    write_file(path, &(s.to_json() + "\n"))?;
                    emit(out, &json!({"ground_size": s.ground_size(), "sets": s.len(), "degree": s.degree()}))
                }
                None => writeln!(out, "{}", s.to_json()).map_err(io_error),
            }?;
            Ok(0)
        }
        Command::Color(a) => color(a, seed, out),
        Command::Disc(a) => disc(a, seed, caps, out),
        Command::Approx(a) => approx(a, seed, out),
        Command::Verify(a) => verify(a, seed, caps, out),
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidArgument(e.to_string())
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<()> {
    writeln!(out, "{value}").map_err(io_error)
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(io_error)?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn fraction(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn load_graph(path: &Path) -> Result<Graph> {
    let g = read_edge_list(&read_text(path)?)?;
    eprintln!("{}: {} vertices, {} edges", path.display(), g.n(), g.edge_count());
    Ok(g)
}

fn load_order(path: Option<&PathBuf>, g: &Graph) -> Result<Option<LinearOrder>> {
    let Some(path) = path else { return Ok(None) };
    let order = LinearOrder::parse(&read_text(path)?)?;
    if order.len() != g.n() {
        return Err(Error::invalid(format!("order has {} vertices, graph has {}", order.len(), g.n())));
    }
    Ok(Some(order))
}

fn order_json(order: &LinearOrder) -> Value {
    json!(order.sequence())
}

fn gen(a: &GenArgs, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let param = |i: usize| -> Result<u64> {
        if a.params.len() != i + 1 {
            return Err(Error::invalid(format!("{} takes {} parameter(s)", a.family, i + 1)));
        }
        Ok(a.params[i])
    };
    let g = match a.family.as_str() {
        "sylvester" => sylvester_graph(u32::try_from(param(0)?).map_err(|_| Error::invalid("order too large"))?)?,
        "degenerate" => {
            param(1)?;
            let (n, d) = (a.params[0] as usize, a.params[1] as usize);
            if n > 1 << 20 {
                return Err(Error::invalid("too many vertices"));
            }
            random_degenerate(n, d, seed)
        }
        "petersen" if a.params.is_empty() => Graph::petersen(),
        name => generate_family(name.parse::<Family>()?, &a.params, seed)?,
    };
    let g = if a.subdivide > 0 { subdivide(&g, a.subdivide) } else { g };
    let text = write_edge_list(&g);
    match &a.output {
        Some(path) => {
            write_file(path, &text)?;
            emit(out, &json!({"n": g.n(), "edges": g.edge_count()}))?;
        }
        None => out.write_all(text.as_bytes()).map_err(io_error)?,
    }
    Ok(0)
}

fn order(a: &OrderArgs, caps: &Caps, out: &mut dyn Write) -> Result<i32> {
    let g = load_graph(&a.input)?;
    let report = match a.mode {
        OrderMode::Degeneracy => {
            let (order, deg) = degeneracy_order(&g);
            json!({"degeneracy": deg, "order": order_json(&order)})
        }
        OrderMode::Wcol => {
            if a.radius == 0 {
                return Err(Error::invalid("radius must be at least 1"));
            }
            let order = load_order(a.order.as_ref(), &g)?.unwrap_or_else(|| wcol_heuristic_order(&g));
            let mut report = json!({
                "d": a.radius,
                "wcol_order": wcol_from_order(&g, &order, a.radius),
                "order": order_json(&order),
            });
            if a.exact {
                report["wcol_exact"] = json!(wcol_exact_capped(&g, a.radius, caps.orderings)?);
            }
            report
        }
        OrderMode::Stats => {
            let st = graph_stats(&g);
            json!({
                "n": g.n(),
                "edges": g.edge_count(),
                "min_degree": st.min_degree,
                "max_degree": st.max_degree,
                "average_degree": fraction(st.average_degree),
                "clique_number": st.clique_number,
                "degeneracy": degeneracy(&g),
            })
        }
    };
    emit(out, &report)?;
    Ok(0)
}

fn require_graph(source: &Source) -> Result<Graph> {
    let path = source.input.as_ref().ok_or_else(|| Error::invalid("this command needs a graph: -i FILE"))?;
    load_graph(path)
}

fn edge_coloring(source: &Source, g: &Graph, seed: u64) -> Result<EdgeColoring> {
    match &source.gamma {
        Some(path) => EdgeColoring::parse(&read_text(path)?),
        None => Ok(EdgeColoring::random(g, seed)),
    }
}

fn load_structure(source: &Source) -> Result<(PointerStructure, Vec<QFFormula>)> {
    let path = source.structure.as_ref().ok_or_else(|| Error::invalid("needs --structure FILE"))?;
    let m = PointerStructure::from_json(&read_text(path)?)?;
    if source.formulas.is_empty() {
        return Err(Error::invalid("needs at least one --formula"));
    }
    let phis = source.formulas.iter().map(|f| parse_formula(f)).collect::<Result<Vec<_>>>()?;
    Ok((m, phis))
}

/// Resolves the system described by `kind` and `source`; without a kind the
/// input is read as system JSON if it looks like JSON, else as a graph.
fn build_system(kind: Option<SystemKind>, source: &Source, seed: u64) -> Result<SetSystem> {
    let kind = match kind {
        Some(k) => k,
        None if source.structure.is_some() => SystemKind::Defined,
        None => {
            let path = source.input.as_ref().ok_or_else(|| Error::invalid("no input: pass -i FILE"))?;
            let text = read_text(path)?;
            if text.trim_start().starts_with('{') {
                return SetSystem::from_json(&text);
            }
            return Ok(neighborhood_system(&read_edge_list(&text)?));
        }
    };
    match kind {
        SystemKind::Neighborhood => Ok(neighborhood_system(&require_graph(source)?)),
        SystemKind::Power => {
            let g = require_graph(source)?;
            Ok(neighborhood_system(&crate::graph::graph_power(&g, source.radius)?))
        }
        SystemKind::Wreach => {
            let g = require_graph(source)?;
            let order = load_order(source.order.as_ref(), &g)?.unwrap_or_else(|| wcol_heuristic_order(&g));
            wreach_star_system(&g, &order, source.radius)
        }
        SystemKind::EdgeColor => {
            let g = require_graph(source)?;
            edge_color_system(&g, &edge_coloring(source, &g, seed)?)
        }
        SystemKind::Defined => {
            let (m, phis) = load_structure(source)?;
            let [phi] = &phis[..] else {
                return Err(Error::invalid("a defined system takes exactly one --formula"));
            };
            defined_system(&m, phi)
        }
        SystemKind::Random => random_system(source.ground, source.slots, source.degree, seed),
        SystemKind::Json => {
            let path = source.input.as_ref().ok_or_else(|| Error::invalid("no input: pass -i FILE"))?;
            SetSystem::from_json(&read_text(path)?)
        }
    }
}

/// Writes the coloring to `output`, or adds it to the report.
fn attach_coloring(report: &mut Value, chi: &Coloring, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => write_file(path, &chi.to_text()),
        None => {
            report["coloring"] = json!(chi.values());
            Ok(())
        }
    }
}

fn color(a: &ColorArgs, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let (chi, mut report) = match a.method {
        ColorMethod::BeckFiala => {
            let s = build_system(a.system, &a.source, seed)?;
            let (chi, rep) = beck_fiala_checked(&s)?;
            let disc = eval_discrepancy(&s, &chi)?.max;
            (chi, json!({"disc": disc, "bound": rep.bound, "degree": rep.degree, "rounds": rep.rounds}))
        }
        ColorMethod::Orientation => {
            let g = require_graph(&a.source)?;
            let order = match load_order(a.source.order.as_ref(), &g)? {
                Some(o) => o,
                None => degeneracy_order(&g).0,
            };
            let run = orientation_coloring(&g, &orient_along(&g, &order)?)?;
            let report = json!({"disc": run.achieved, "out_degree": run.out_degree, "bound": 3 * run.out_degree});
            (run.coloring, report)
        }
        ColorMethod::Power => {
            let g = require_graph(&a.source)?;
            let order = load_order(a.source.order.as_ref(), &g)?;
            let (chi, cert) = power_coloring(&g, a.source.radius, order.as_ref())?;
            let report = serde_json::to_value(&cert).expect("certificate serializes");
            (chi, report)
        }
        ColorMethod::EdgeColor => {
            let g = require_graph(&a.source)?;
            let gamma = edge_coloring(&a.source, &g, seed)?;
            let run = edge_color_coloring(&g, &gamma)?;
            let deg = degeneracy(&g);
            if g.edge_count() > 0 && run.achieved >= 3 * deg as u64 {
                return Err(Error::Invariant(format!("edge-color coloring reached {}, degeneracy {deg}", run.achieved)));
            }
            let report = json!({"disc": run.achieved, "degeneracy": deg, "double_degeneracy": run.double_degeneracy, "bound": 3 * deg});
            (run.coloring, report)
        }
        ColorMethod::Qf => {
            let (m, phis) = load_structure(&a.source)?;
            let run = qf_color(&m, &phis)?;
            let mut disc = Vec::new();
            for phi in &phis {
                let d = eval_discrepancy(&defined_system(&m, phi)?, &run.coloring)?.max;
                if d as u128 > run.bound {
                    return Err(Error::Invariant(format!("'{phi}' reached {d}, bound {}", run.bound)));
                }
                disc.push(d);
            }
            let report = json!({
                "disc": disc,
                "bound": run.bound.to_string(),
                "k": run.k,
                "t": run.t,
                "closure_size": run.closure_size,
                "closure_degree": run.closure_degree,
            });
            (run.coloring, report)
        }
    };
    attach_coloring(&mut report, &chi, a.output.as_ref())?;
    emit(out, &report)?;
    Ok(0)
}

fn disc(a: &DiscArgs, seed: u64, caps: &Caps, out: &mut dyn Write) -> Result<i32> {
    let s = build_system(a.system, &a.source, seed)?;
    let report = match a.mode {
        DiscMode::Eval => {
            let path = a.coloring.as_ref().ok_or_else(|| Error::invalid("eval needs --coloring FILE"))?;
            let ev = eval_discrepancy(&s, &Coloring::parse(&read_text(path)?)?)?;
            json!({"disc": ev.max, "witness": ev.witness})
        }
        DiscMode::Exact => {
            let (d, chi) = exact_discrepancy_capped(&s, caps.exact_n)?;
            if let Some(path) = &a.output {
                write_file(path, &chi.to_text())?;
            }
            json!({"disc": d})
        }
        DiscMode::Herdisc => {
            if s.ground_size() > caps.exact_n {
                return Err(Error::limit(format!("ground size {} exceeds the exact cap {}", s.ground_size(), caps.exact_n)));
            }
            let h = herdisc_search(&s, a.budget, seed)?;
            json!({"lower_bound": h.lower_bound, "exhaustive": h.exhaustive, "witness": h.witness})
        }
        DiscMode::Spectral => {
            let r = spectral_lower_bound(&s)?;
            json!({"lower_bound": fraction(r), "floor": r.to_integer()})
        }
    };
    emit(out, &report)?;
    Ok(0)
}

fn parse_sample(text: &str) -> Result<Vec<usize>> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::invalid(format!("sample report: {e}")))?;
        return serde_json::from_value(v["sample"].clone()).map_err(|e| Error::invalid(format!("sample report: {e}")));
    }
    text.split_whitespace().map(|t| t.parse().map_err(|_| Error::invalid(format!("bad sample element `{t}`")))).collect()
}

fn approx(a: &ApproxArgs, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let s = build_system(a.system, &a.source, seed)?;
    let eps = parse_rational(&a.eps)?;
    match a.mode {
        ApproxMode::Build => {
            let report = epsilon_approximation(&s, eps)?;
            eprintln!("sample of {} from {}, {} levels", report.sample.len(), report.ground_size, report.levels.len());
            if let Some(path) = &a.output {
                let text: Vec<String> = report.sample.iter().map(usize::to_string).collect();
                write_file(path, &(text.join(" ") + "\n"))?;
            }
            writeln!(out, "{}", report.to_json()).map_err(io_error)?;
        }
        ApproxMode::Verify => {
            let path = a.sample.as_ref().ok_or_else(|| Error::invalid("verify needs --sample FILE"))?;
            let sample = parse_sample(&read_text(path)?)?;
            let (ok, worst, measured) = verify_approximation(&s, &sample, eps)?;
            let net = verify_net(&s, &sample, eps);
            emit(out, &json!({"ok": ok, "net": net, "worst_set": worst, "measured": fraction(measured)}))?;
        }
    }
    Ok(0)
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: Result<bool>, what: impl FnOnce() -> String) {
        self.cases += 1;
        match ok {
            Ok(true) => {}
            Ok(false) => self.failures.push(what()),
            Err(e) => self.failures.push(format!("{}: {e}", what())),
        }
    }
}

fn random_graph(rng: &mut rng::Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(2..=max_n);
    let num = rng.gen_range(1..=4u64);
    let g = generate_family(Family::Gnp, &[n as u64, num, 10], rng.gen()).expect("valid parameters");
    if rng.gen_bool(0.2) {
        subdivide(&g, 1)
    } else {
        g
    }
}

fn run_suite(suite: Suite, cases: usize, seed: u64, caps: &Caps) -> Tally {
    let mut rng = rng::seeded(seed ^ suite as u64);
    let mut tally = Tally::new();
    for case in 0..cases {
        match suite {
            Suite::BeckFiala => {
                let (n, t) = (rng.gen_range(1..=200), rng.gen_range(1..=6));
                let slots = rng.gen_range(t..=n.max(t));
                let ok = random_system(n, slots, t, rng.gen()).and_then(|s| {
                    let (chi, _) = beck_fiala_checked(&s)?;
                    Ok(eval_discrepancy(&s, &chi)?.max < 2 * t as u64)
                });
                tally.check(ok, || format!("case {case}: n={n} t={t}"));
            }
            Suite::Orientation => {
                let g = random_graph(&mut rng, 60);
                if g.edge_count() == 0 {
                    continue;
                }
                let ok = (|| {
                    let (order, deg) = degeneracy_order(&g);
                    let run = orientation_coloring(&g, &orient_along(&g, &order)?)?;
                    Ok(run.achieved < 3 * deg as u64)
                })();
                tally.check(ok, || format!("case {case}: n={}", g.n()));
            }
            Suite::Power => {
                let g = random_graph(&mut rng, 40);
                let d = rng.gen_range(1..=3);
                let ok = power_coloring(&g, d, None).map(|(_, cert)| cert.achieved < cert.claimed_bound);
                tally.check(ok, || format!("case {case}: n={} d={d}", g.n()));
            }
            Suite::Wcol => {
                let n = rng.gen_range(1..=7u64);
                let g = generate_family(Family::Gnp, &[n, rng.gen_range(1..=9), 10], rng.gen()).expect("valid parameters");
                let ok = wcol_exact_capped(&g, 1, caps.orderings).map(|w| w == degeneracy(&g) + 1);
                tally.check(ok, || format!("case {case}: {:?}", g.edges().collect::<Vec<_>>()));
            }
            Suite::Decomposition => {
                let n = rng.gen_range(1..=6);
                let shape = FormulaShape::standard(rng.gen_range(1..=2), rng.gen_range(0..=2), 2, 2, 4);
                let m = random_structure(n, 2, 2, rng.gen());
                let ok = random_formula(&shape, rng.gen()).and_then(|phi| verify_decomposition(&m, &phi)).map(|_| true);
                tally.check(ok, || format!("case {case}"));
            }
            Suite::Eta => {
                let n = rng.gen_range(3..=120);
                let (m, eta) = from_degenerate_graph(&random_degenerate(n, 2, rng.gen()));
                let ok = (|| {
                    let run = qf_color(&m, std::slice::from_ref(&eta))?;
                    let d = eval_discrepancy(&defined_system(&m, &eta)?, &run.coloring)?.max;
                    Ok(d as u128 <= run.bound)
                })();
                tally.check(ok, || format!("case {case}: n={n}"));
            }
            Suite::Approximation => {
                let n = rng.gen_range(2..=80);
                let eps = Rational::new(1, rng.gen_range(1..=8));
                let ok = random_system(n, n, 3.min(n), rng.gen()).and_then(|s| {
                    let r = epsilon_approximation(&s, eps)?;
                    Ok(r.epsilon_measured <= r.epsilon_claimed && r.epsilon_claimed <= eps && verify_net(&s, &r.sample, eps))
                });
                tally.check(ok, || format!("case {case}: n={n} eps={}", fraction(eps)));
            }
            Suite::EdgeColor => {
                let g = random_graph(&mut rng, 50);
                if g.edge_count() == 0 {
                    continue;
                }
                let gamma = EdgeColoring::random(&g, rng.gen());
                let ok = edge_color_coloring(&g, &gamma).map(|run| {
                    let deg = degeneracy(&g);
                    run.double_degeneracy <= deg && run.achieved < 3 * deg as u64
                });
                tally.check(ok, || format!("case {case}: n={}", g.n()));
            }
            Suite::Spectral => {
                let n = rng.gen_range(1..=caps.exact_n.min(12));
                let slots = rng.gen_range(1..=12);
                let t = rng.gen_range(1..=slots);
                let ok = random_system(n, slots, t, rng.gen()).and_then(|s| {
                    let lower = spectral_lower_bound(&s)?.to_integer();
                    Ok(lower <= exact_discrepancy(&s)?.0)
                });
                tally.check(ok, || format!("case {case}: n={n}"));
            }
            Suite::All => unreachable!(),
        }
    }
    tally
}

fn verify(a: &VerifyArgs, seed: u64, caps: &Caps, out: &mut dyn Write) -> Result<i32> {
    let suites: Vec<Suite> =
        if a.suite == Suite::All { Suite::value_variants().iter().copied().filter(|&s| s != Suite::All).collect() } else { vec![a.suite] };
    let mut failed = false;
    for suite in suites {
        let name = suite.to_possible_value().expect("named suite").get_name().to_string();
        let tally = run_suite(suite, a.cases, seed, caps);
        for f in &tally.failures {
            eprintln!("{name}: {f}");
        }
        failed |= !tally.failures.is_empty();
        emit(out, &json!({"suite": name, "cases": tally.cases, "failures": tally.failures.len()}))?;
    }
    Ok(if failed { 4 } else { 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut argv = vec!["herdisc".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        let mut out = Vec::new();
        let code = run(&argv, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        assert_eq!(call(&["disc", "exact", "--badflag"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&[]).0, 2);
    }

    #[test]
    fn help_goes_to_output() {
        let (code, text) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(text.contains("Usage"));
    }

    #[test]
    fn gen_to_stdout() {
        let (code, text) = call(&["gen", "cycle", "3"]);
        assert_eq!(code, 0);
        assert_eq!(text, "n 3\n0 1\n0 2\n1 2\n");
        assert_eq!(call(&["gen", "cycle"]).0, 2);
        assert_eq!(call(&["gen", "sylvester", "20"]).0, 3);
    }

    #[test]
    fn random_system_json() {
        let (code, text) = call(&["system", "random", "--ground", "5", "--slots", "3", "--degree", "2", "--seed", "4"]);
        assert_eq!(code, 0);
        let s = SetSystem::from_json(&text).unwrap();
        assert_eq!(s, random_system(5, 3, 2, 4).unwrap());
    }

    #[test]
    fn suites_pass() {
        let (code, text) = call(&["verify", "all", "--cases", "5"]);
        assert_eq!(code, 0, "{text}");
        assert_eq!(text.lines().count(), 9);
    }
}
