//! Command-line front end. JSON goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 bad input or failed construction, 3 solver budget exhausted,
//! 4 verification found a mismatch.

use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bchroma::coloring::to_dot;
use bchroma::constructions::{
    color_line_star_product, color_power_star_product, color_star_product, color_total_star_product,
    power3_from_grid, rook_grid_coloring, Construction, ConstructionError,
};
use bchroma::formulas::{table_json, MDegreeFamily};
use bchroma::verify::{run_suite, Suite, VerifyOptions};
use bchroma::{solver, GraphSpec, SearchConfig, SolverError, SCHEMA};

#[derive(Parser)]
#[command(name = "bchroma", version, about = "b-chromatic numbers of star-graph operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Budget {
    /// Search-node budget (default: BCHROMA_MAX_NODES or 100000000).
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    max_seconds: Option<f64>,
    /// Worker threads, 0 for one per core. Output does not depend on it.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

impl Budget {
    fn config(&self) -> SearchConfig {
        let mut cfg = SearchConfig::from_env().with_workers(self.workers);
        if let Some(n) = self.max_nodes {
            cfg.max_nodes = n;
        }
        if let Some(s) = self.max_seconds {
            cfg.max_seconds = s;
        }
        cfg
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact b-chromatic number with a witness certificate.
    Phi {
        spec: GraphSpec,
        #[command(flatten)]
        budget: Budget,
        /// Also write the witness as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Exact chromatic number.
    Chi {
        spec: GraphSpec,
        #[command(flatten)]
        budget: Budget,
    },
    /// Clique number.
    Omega {
        spec: GraphSpec,
        #[command(flatten)]
        budget: Budget,
    },
    /// m-degree, the degree-sequence upper bound on φ.
    Mdegree { spec: GraphSpec },
    /// Number of b-colorings using exactly the colors 1..=k.
    Count {
        spec: GraphSpec,
        k: u32,
        #[command(flatten)]
        budget: Budget,
    },
    /// Run an explicit construction and print its certificate.
    Construct {
        #[arg(value_enum)]
        family: Family,
        n: usize,
        /// Second star (skeleton); unused by the rook families.
        m: Option<usize>,
        /// Power, for `star-product-power`.
        k: Option<usize>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compare closed forms, the solver and the constructions over a parameter range.
    Verify {
        suite: Suite,
        #[arg(long, value_parser = parse_range, default_value = "2..5")]
        n: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range, default_value = "2..5")]
        m: RangeInclusive<usize>,
        /// Power, for `star-product-power`.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Family, for `mdegree`.
        #[arg(long)]
        family: Option<MDegreeFamily>,
        /// Skip the exact solver.
        #[arg(long)]
        no_solver: bool,
        /// Aligned table instead of JSON.
        #[arg(long)]
        text: bool,
        #[command(flatten)]
        budget: Budget,
    },
    /// Export the formula table, a graph or a rook grid.
    Export {
        #[command(subcommand)]
        what: Export,
    },
}

#[derive(Subcommand)]
enum Export {
    /// Every closed form evaluated on n, m in 1..=max.
    Table {
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
    /// A graph as JSON, an edge list or DOT.
    Graph {
        spec: GraphSpec,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// The rook grid coloring of K_n □ K_3.
    Grid {
        n: usize,
        #[arg(long)]
        text: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Edges,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    StarProduct,
    LineStarProduct,
    TotalStarProduct,
    StarProductPower,
    RookGrid,
    RookPower3,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad number {t:?} in range {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

enum Failure {
    Input(String),
    Budget(String),
    Mismatch(usize),
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        Failure::Input(e.to_string())
    }
}

// A closed pipe (`bchroma ... | head`) ends the run quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).and_then(|()| out.flush()).is_err() {
        std::process::exit(0);
    }
}

fn print(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values serialize")));
}

fn build(spec: &GraphSpec) -> Result<bchroma::Graph, Failure> {
    spec.build().map_err(|e| Failure::Input(format!("{spec}: {e}")))
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn construct(family: Family, n: usize, m: Option<usize>, k: Option<usize>) -> Result<Construction, Failure> {
    let need_m = || m.ok_or_else(|| Failure::Input("this family needs a second parameter m".into()));
    Ok(match family {
        Family::StarProduct => color_star_product(n, need_m()?)?,
        Family::LineStarProduct => color_line_star_product(n, need_m()?)?,
        Family::TotalStarProduct => color_total_star_product(n, need_m()?)?,
        Family::StarProductPower => {
            let k = k.ok_or_else(|| Failure::Input("star-product-power needs n m k".into()))?;
            color_power_star_product(n, need_m()?, k)?
        }
        Family::RookGrid => rook_grid_coloring(n)?.to_certificate()?,
        Family::RookPower3 => power3_from_grid(n, 3, &rook_grid_coloring(n)?)?,
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Phi { spec, budget, dot } => {
            let g = build(&spec)?;
            let report = solver::b_chromatic_number(&g, &budget.config())?;
            if let Some(path) = dot {
                write_file(&path, &to_dot(&g, &report.witness.coloring, &report.witness.b_vertices))?;
            }
            let mut doc = report.to_json(&g);
            doc["graph"] = json!(spec.to_string());
            print(&doc);
        }
        Command::Chi { spec, budget } => {
            let g = build(&spec)?;
            let r = solver::chromatic_number(&g, &budget.config())?;
            let colors: serde_json::Map<String, Value> =
                r.coloring.colors().iter().enumerate().map(|(v, &c)| (g.label(v).to_string(), json!(c))).collect();
            print(&json!({
                "schema": SCHEMA,
                "graph": spec.to_string(),
                "chi": r.chi,
                "coloring": colors,
                "nodes_explored": r.nodes_explored,
                "elapsed_seconds": r.elapsed.as_secs_f64(),
            }));
        }
        Command::Omega { spec, budget } => {
            let g = build(&spec)?;
            let omega = solver::clique_number(&g, &budget.config())?;
            print(&json!({ "schema": SCHEMA, "graph": spec.to_string(), "omega": omega }));
        }
        Command::Mdegree { spec } => {
            let g = build(&spec)?;
            print(&json!({ "schema": SCHEMA, "graph": spec.to_string(), "m_degree": solver::m_degree(&g) }));
        }
        Command::Count { spec, k, budget } => {
            let g = build(&spec)?;
            match solver::count_b_colorings(&g, k, &budget.config()) {
                Ok(r) => {
                    let mut doc = r.to_json();
                    doc["graph"] = json!(spec.to_string());
                    doc["percent_bucket"] = json!(r.percent(1));
                    print(&doc);
                }
                Err(SolverError::Budget { resource, nodes, partial }) => {
                    let lower = match partial {
                        solver::Partial::CountLowerBound(c) => Some(c.to_string()),
                        _ => None,
                    };
                    print(&json!({
                        "schema": SCHEMA,
                        "graph": spec.to_string(),
                        "k": k,
                        "budget_exhausted": format!("{resource:?}"),
                        "nodes_explored": nodes,
                        "count_lower_bound": lower,
                    }));
                    return Err(Failure::Budget(format!("{resource:?} budget exhausted after {nodes} nodes")));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Construct { family, n, m, k, dot } => {
            let c = construct(family, n, m, k)?;
            if let Some(path) = dot {
                write_file(&path, &to_dot(&c.graph, &c.certificate.coloring, &c.certificate.b_vertices))?;
            }
            let mut doc = c.certificate.to_json(&c.graph);
            doc["valid"] = json!(true);
            print(&doc);
        }
        Command::Verify { suite, n, m, k, family, no_solver, text, budget } => {
            let opts = VerifyOptions { n, m, k, family, skip_solver: no_solver, search: budget.config() };
            let report = run_suite(suite, &opts);
            if text {
                emit(&report.to_text());
            } else {
                print(&report.to_json());
            }
            if report.mismatches() > 0 {
                return Err(Failure::Mismatch(report.mismatches()));
            }
        }
        Command::Export { what } => match what {
            Export::Table { max } => print(&table_json(max)),
            Export::Graph { spec, format } => {
                let g = build(&spec)?;
                match format {
                    GraphFormat::Json => emit(&format!("{}\n", g.to_json())),
                    GraphFormat::Edges => emit(&g.to_edge_list()),
                    GraphFormat::Dot => {
                        let plain = bchroma::Coloring::new(vec![1; g.order()], 1).expect("one color");
                        emit(&to_dot(&g, &plain, &[]));
                    }
                }
            }
            Export::Grid { n, text } => {
                let grid = rook_grid_coloring(n)?;
                if text {
                    emit(&grid.to_text());
                } else {
                    print(&grid.to_json());
                }
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Mismatch(n)) => {
            eprintln!("verify: {n} mismatching rows");
            ExitCode::from(4)
        }
    }
}
