use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kgeodetic::cover::{
    cover_lower_bounds, greedy_generator, min_generator, CoverError, GeneratorSet, SolverBudget,
};
use kgeodetic::families::{
    build_family, cycle_generator, kmn_generator, path_generator, tree_generator, FamilyError,
    FamilySpec,
};
use kgeodetic::geodesic::{geodetic_index, GeodesicError};
use kgeodetic::graph::{all_pairs_distances, diameter, parse_graph, Graph, GraphError};
use kgeodetic::products::{
    cartesian_product, corona_product, predict_cartesian, predict_corona, predict_strong,
    strong_product, FactorSummary, ProductError, ProductPrediction,
};
use kgeodetic::verifier::{run_suite, ClaimClass, Suite, SweepConfig};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "kgeodetic",
    version,
    about = "Edge geodetic index and minimum geodesic covers of graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print size, diameter, index and cover bounds of a graph
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print a cover of the edges by k-geodesics
    Generator(GeneratorArgs),
    /// Write a graph from one of the built-in families
    Family(FamilyArgs),
    /// Build a product of two graphs
    Product(ProductArgs),
    /// Run the verification sweeps
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GeneratorArgs {
    file: PathBuf,
    /// Geodesic length; defaults to the geodetic index
    #[arg(long)]
    k: Option<usize>,
    /// Minimum cover (the default)
    #[arg(long, conflicts_with = "greedy")]
    exact: bool,
    /// Greedy cover
    #[arg(long)]
    greedy: bool,
    /// Branch-and-bound node limit for the exact search
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Path,
    Cycle,
    Kmn,
    Star,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// First side of K_{m,n}
    #[arg(long)]
    m: Option<usize>,
    /// Path length, cycle order, second side of K_{m,n} or number of star leaves
    #[arg(long)]
    n: Option<usize>,
    /// Also write the constructive generator
    #[arg(long)]
    with_generator: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Cartesian,
    Strong,
    Corona,
}

#[derive(Args)]
struct ProductArgs {
    #[arg(long, value_enum)]
    op: Op,
    g: PathBuf,
    h: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Print the predicted index and generator bound as JSON
    #[arg(long)]
    predict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Families,
    Products,
    Random,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    max_n: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Branch-and-bound node limit per exact search
    #[arg(long)]
    budget: Option<u64>,
    /// Write the full report here
    #[arg(long)]
    json: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Failure::new(2, message)
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Disconnected => Failure::new(3, e.to_string()),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

impl From<GeodesicError> for Failure {
    fn from(e: GeodesicError) -> Self {
        match e {
            GeodesicError::Graph(g) => g.into(),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::NotKEdgeGeodetic { .. } => Failure::new(4, e.to_string()),
            CoverError::PathBudgetExceeded(_) | CoverError::NodeBudgetExceeded(_) => {
                Failure::new(5, e.to_string())
            }
            CoverError::Geodesic(g) => g.into(),
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Cover(c) => c.into(),
            _ => Failure::invalid(e.to_string()),
        }
    }
}

impl From<ProductError> for Failure {
    fn from(e: ProductError) -> Self {
        match e {
            ProductError::EmptyFactor => Failure::invalid(e.to_string()),
            _ => Failure::new(4, e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { file, json } => analyze(&file, json),
        Command::Generator(args) => generator(args),
        Command::Family(args) => family(args),
        Command::Product(args) => product(args),
        Command::Verify(args) => verify(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn connected(g: &Graph) -> Result<(), Failure> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(GraphError::Disconnected.into())
    }
}

fn instance(g: &Graph, file: &Path) -> Value {
    json!({ "edge_list": g.to_edge_list(), "params": { "file": file.display().to_string() } })
}

fn analyze(file: &Path, as_json: bool) -> Result<u8, Failure> {
    let g = read_graph(file)?;
    connected(&g)?;
    let d = all_pairs_distances(&g);
    let diam = diameter(&d)?;
    let k = geodetic_index(&g, &d)?;
    let bounds = cover_lower_bounds(&g, &d, k, &SolverBudget::default())?;
    if as_json {
        let report = json!({
            "instance": instance(&g, file),
            "observed": {
                "n": g.vertex_count(),
                "m": g.edge_count(),
                "diameter": diam,
                "max_degree": g.max_degree(),
                "index": k,
                "lower_bound": bounds.lower,
                "lower_reasons": bounds.lower_reasons,
                "gen_greedy": bounds.upper,
            },
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        let greedy = bounds.upper.map_or("none".to_string(), |u| u.to_string());
        println!(
            "n={} m={} diameter={diam} max_degree={} lower_bound={} index={k} gen_greedy={greedy}",
            g.vertex_count(),
            g.edge_count(),
            g.max_degree(),
            bounds.lower,
        );
    }
    Ok(0)
}

fn generator(args: GeneratorArgs) -> Result<u8, Failure> {
    let g = read_graph(&args.file)?;
    connected(&g)?;
    let d = all_pairs_distances(&g);
    let k = match args.k {
        Some(0) => return Err(Failure::invalid("--k must be at least 1")),
        Some(k) => k,
        None => geodetic_index(&g, &d)?,
    };
    let mut budget = SolverBudget::default();
    if let Some(nodes) = args.budget {
        budget.max_nodes = nodes;
    }
    let set = if args.greedy {
        greedy_generator(&g, &d, k, &budget)?
    } else {
        min_generator(&g, &d, k, &budget)?
    };
    if args.json {
        let paths: Vec<&[usize]> = set.paths.iter().map(|p| p.vertices()).collect();
        let report = json!({
            "instance": instance(&g, &args.file),
            "observed": { "k": set.k, "size": set.len(), "exact": set.exact, "paths": paths },
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        print!("{}", listing(&set, ""));
    }
    Ok(0)
}

fn listing(set: &GeneratorSet, prefix: &str) -> String {
    let mut out = String::new();
    for p in &set.paths {
        writeln!(out, "{prefix}{p}").unwrap();
    }
    writeln!(out, "# size={} exact={}", set.len(), set.exact).unwrap();
    out
}

fn family(args: FamilyArgs) -> Result<u8, Failure> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Failure::invalid(format!("--kind needs --{flag}")))
    };
    let spec = match args.kind {
        Kind::Path => FamilySpec::Path {
            length: need(args.n, "n")?,
        },
        Kind::Cycle => FamilySpec::Cycle {
            n: need(args.n, "n")?,
        },
        Kind::Kmn => FamilySpec::CompleteBipartite {
            m: need(args.m, "m")?,
            n: need(args.n, "n")?,
        },
        Kind::Star => FamilySpec::Star {
            leaves: need(args.n, "n")?,
        },
    };
    let g = build_family(spec)?;
    let gen = if args.with_generator {
        Some(match spec {
            FamilySpec::Path { length } => path_generator(length)?,
            FamilySpec::Cycle { n } => cycle_generator(n)?,
            FamilySpec::CompleteBipartite { m, n } => kmn_generator(m, n)?,
            FamilySpec::Star { .. } => tree_generator(&g)?,
        })
    } else {
        None
    };

    let header = format!(
        "# {}\n",
        serde_json::to_string(&spec).expect("serializable")
    );
    let graph_text = format!("{header}{}", g.to_edge_list());
    match &args.output {
        Some(out) => {
            write_file(out, &graph_text)?;
            if let Some(set) = &gen {
                let mut path = out.clone().into_os_string();
                path.push(".gen");
                write_file(Path::new(&path), &listing(set, ""))?;
            }
        }
        None => {
            print!("{graph_text}");
            if let Some(set) = &gen {
                print!("{}", listing(set, "# gen "));
            }
        }
    }
    Ok(0)
}

fn factor_summary(g: &Graph, budget: &SolverBudget) -> Result<FactorSummary, Failure> {
    connected(g)?;
    let d = all_pairs_distances(g);
    let index = geodetic_index(g, &d)?;
    let gen = min_generator(g, &d, index, budget)?.len();
    Ok(FactorSummary {
        index,
        gen,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
    })
}

fn predict(op: Op, g: &Graph, h: &Graph) -> Result<ProductPrediction, Failure> {
    let budget = SolverBudget::default();
    Ok(match op {
        Op::Cartesian => {
            let (a, b) = (factor_summary(g, &budget)?, factor_summary(h, &budget)?);
            predict_cartesian(a.index, b.index, a.gen, b.gen, a.vertices, b.vertices)
        }
        Op::Strong => predict_strong(factor_summary(g, &budget)?, factor_summary(h, &budget)?),
        Op::Corona => {
            // Preconditions first, so a refusal is reported before any solving.
            predict_corona(g, h, 0)?;
            connected(h)?;
            let gen2 = min_generator(h, &all_pairs_distances(h), 2, &budget)?.len();
            predict_corona(g, h, gen2)?
        }
    })
}

fn product(args: ProductArgs) -> Result<u8, Failure> {
    let g = read_graph(&args.g)?;
    let h = read_graph(&args.h)?;
    let (op_name, built) = match args.op {
        Op::Cartesian => ("cartesian", cartesian_product(&g, &h)),
        Op::Strong => ("strong", strong_product(&g, &h)),
        Op::Corona => ("corona", corona_product(&g, &h)),
    };
    let built = built?;
    let prediction = if args.predict {
        Some(predict(args.op, &g, &h)?)
    } else {
        None
    };

    let text = built.graph.to_edge_list();
    match &args.output {
        Some(out) => write_file(out, &text)?,
        None if prediction.is_none() => print!("{text}"),
        None => {}
    }
    if let Some(p) = prediction {
        let report = json!({
            "instance": {
                "family": op_name,
                "params": {
                    "g": args.g.display().to_string(),
                    "h": args.h.display().to_string(),
                    "vertices": built.graph.vertex_count(),
                    "edges": built.graph.edge_count(),
                },
            },
            "expected": p,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    }
    Ok(0)
}

const SHOWN_FAILURES: usize = 10;

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let mut cfg = SweepConfig {
        seed: args.seed,
        max_n: args.max_n,
        samples: args.samples,
        ..SweepConfig::default()
    };
    if let Some(nodes) = args.budget {
        cfg.budgets.solver_nodes = nodes;
    }
    let (suite, name) = match args.suite {
        SuiteArg::Families => (Suite::Families, "families"),
        SuiteArg::Products => (Suite::Products, "products"),
        SuiteArg::Random => (Suite::Random, "random"),
        SuiteArg::All => (Suite::All, "all"),
    };
    let report = run_suite(&cfg, suite);
    if let Some(path) = &args.json {
        write_file(path, &report.to_json())?;
    }
    let guaranteed = report.failures(ClaimClass::Guaranteed).count();
    let findings = report.failures(ClaimClass::Finding).count();
    for c in report.failures(ClaimClass::Guaranteed).take(SHOWN_FAILURES) {
        eprintln!(
            "FAIL {} {}",
            c.claim_id,
            serde_json::to_string(&c.instance).expect("serializable")
        );
    }
    if guaranteed > SHOWN_FAILURES {
        eprintln!(
            "({} more failures in the report)",
            guaranteed - SHOWN_FAILURES
        );
    }
    println!(
        "suite={name} seed={} checks={} pass={} fail={} skipped={} guaranteed_fail={guaranteed} findings_fail={findings}",
        cfg.seed,
        report.checks.len(),
        report.summary.pass,
        report.summary.fail,
        report.summary.skipped,
    );
    Ok(if guaranteed > 0 { 1 } else { 0 })
}
