use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use locating_core::coloring::{is_locating, Locating};
use locating_core::conjecture::{check_conjecture, Limits, Verdict};
use locating_core::constructions::{
    grid_coloring, kmkn_coloring, kmpn_coloring, ConstructionResult,
};
use locating_core::latin::{first_unseparated_pair, LatinRectangle};
use locating_core::solver::{Solver, MAX_SEARCH_VERTICES};
use locating_core::{
    Coloring, ColoringDocument, ColoringError, ColoringMatrix, Graph, GraphSpec, SolveBudget,
    SolveOptions,
};

const GRAMMAR: &str =
    "graph specs: P<n> | C<n> | K<n> | <spec>x<spec>   (e.g. P5, C6, K3xP4, K3xK3)";

/// Tools for locating colorings of graphs.
#[derive(Debug, Parser)]
#[command(name = "locating", version, about, after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct BudgetArgs {
    /// Largest graph (in vertices) the exact search will attempt.
    #[arg(long, env = "LOCATING_BUDGET", default_value_t = 24)]
    budget: usize,
    /// Abort a search after this many nodes.
    #[arg(long)]
    node_limit: Option<u64>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl BudgetArgs {
    fn solve_budget(&self) -> Result<SolveBudget> {
        if self.budget > MAX_SEARCH_VERTICES {
            bail!(
                "--budget {} exceeds the search limit of {MAX_SEARCH_VERTICES} vertices",
                self.budget
            );
        }
        Ok(SolveBudget {
            node_limit: self.node_limit,
            ..SolveBudget::with_max_vertices(self.budget)
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Locating chromatic number of a graph, with a witness coloring.
    Chi {
        /// Graph spec, or an edge-list file with --edge-list.
        graph: String,
        #[arg(long)]
        edge_list: bool,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the witness as a coloring document.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build an explicit locating coloring.
    Construct {
        family: Construction,
        m: usize,
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring file against a graph.
    Verify {
        /// Graph spec, or an edge-list file with --edge-list.
        graph: String,
        coloring: PathBuf,
        #[arg(long)]
        edge_list: bool,
    },
    /// Latin-rectangle view of K_m x K_n colorings.
    Latin {
        #[command(subcommand)]
        action: LatinAction,
    },
    /// Gather solver evidence for one of the open statements (1 to 4).
    Conjecture {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=4))]
        id: u8,
        #[arg(long)]
        max_m: usize,
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the report as TOML.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Construction {
    /// P_m x P_n
    Grid,
    /// K_m x P_n
    Kmpn,
    /// K_m x K_n
    Kmkn,
}

#[derive(Debug, Subcommand)]
enum LatinAction {
    /// Test the Latin-rectangle form of the locating condition.
    Check { file: PathBuf },
    /// Convert between a coloring document and a plain integer grid.
    Convert {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Chi {
            graph,
            edge_list,
            budget,
            output,
        } => chi(&load_graph(&graph, edge_list)?, &budget, output.as_deref()),
        Command::Construct {
            family,
            m,
            n,
            output,
        } => construct(family, m, n, output.as_deref()),
        Command::Verify {
            graph,
            coloring,
            edge_list,
        } => verify(&load_graph(&graph, edge_list)?, &coloring),
        Command::Latin { action } => match action {
            LatinAction::Check { file } => latin_check(&file),
            LatinAction::Convert { file, output } => latin_convert(&file, output.as_deref()),
        },
        Command::Conjecture {
            id,
            max_m,
            max_n,
            budget,
            output,
        } => conjecture(id, max_m, max_n, &budget, output.as_deref()),
    }
}

fn load_graph(arg: &str, edge_list: bool) -> Result<Graph> {
    if edge_list {
        let text = fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        return Graph::parse_edge_list(&text).with_context(|| format!("parsing edge list {arg}"));
    }
    let spec: GraphSpec = arg.parse()?;
    Ok(spec.build()?)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Shape used to print a coloring: the grid of a product, else one row.
fn as_matrix(g: &Graph, c: &Coloring) -> ColoringMatrix {
    let (rows, cols) = g.grid().map_or((1, g.vertex_count()), |s| (s.rows, s.cols));
    ColoringMatrix::from_fn(rows, cols, |i, j| c.color((i - 1) * cols + j - 1))
        .expect("coloring uses 1..=k")
}

fn describe_vertex(g: &Graph, v: usize) -> String {
    match g.grid() {
        Some(s) => {
            let (i, j) = s.coords(v);
            format!("v({i},{j})")
        }
        None => format!("v{v}"),
    }
}

fn chi(g: &Graph, args: &BudgetArgs, output: Option<&Path>) -> Result<ExitCode> {
    let options = SolveOptions {
        jobs: args.jobs.max(1),
        ..SolveOptions::default()
    };
    let result = Solver::new(g, &args.solve_budget()?)
        .and_then(|s| s.with_options(options).chromatic_number())
        .with_context(|| format!("computing chi_L({})", g.name()))?;
    let matrix = as_matrix(g, &result.witness);
    println!("chi_L({}) = {}", g.name(), result.value);
    println!(
        "lower bound {}, {} search nodes",
        result.lower_bound, result.nodes
    );
    match output {
        Some(path) => {
            write_file(
                path,
                &ColoringDocument::new(g.name(), &matrix, None).to_toml(),
            )?;
            println!("witness written to {}", path.display());
        }
        None => print!("{}", matrix.to_grid_text()),
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(family: Construction, m: usize, n: usize, output: Option<&Path>) -> Result<ExitCode> {
    let (result, name): (ConstructionResult, String) = match family {
        Construction::Grid => (grid_coloring(m, n)?, format!("P{m}xP{n}")),
        Construction::Kmpn => (kmpn_coloring(m, n)?, format!("K{m}xP{n}")),
        Construction::Kmkn => (kmkn_coloring(m, n)?, format!("K{m}xK{n}")),
    };
    let doc = ColoringDocument::new(name.clone(), &result.matrix, Some(result.case.to_string()));
    println!("{name}: {} colors ({})", result.colors_used, result.case);
    match output {
        Some(path) => {
            write_file(path, &doc.to_toml())?;
            println!("written to {}", path.display());
        }
        None => print!("{}", result.matrix.to_grid_text()),
    }
    Ok(ExitCode::SUCCESS)
}

/// Reads a coloring document, falling back to a plain integer grid.
fn read_matrix(path: &Path) -> Result<ColoringMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    match ColoringDocument::from_toml(&text) {
        Ok(doc) => Ok(doc.matrix()?),
        Err(toml_err) => ColoringMatrix::parse_grid_text(&text).with_context(|| {
            format!(
                "{} is neither a coloring document ({toml_err}) nor an integer grid",
                path.display()
            )
        }),
    }
}

fn verify(g: &Graph, path: &Path) -> Result<ExitCode> {
    let matrix = read_matrix(path)?;
    if matrix.cells().len() != g.vertex_count() {
        bail!(
            "{} has {} cells but {} has {} vertices",
            path.display(),
            matrix.cells().len(),
            g.name(),
            g.vertex_count()
        );
    }
    let coloring = matrix.to_coloring();
    match is_locating(g, &coloring) {
        Ok(Locating::Yes) => {
            println!("locating: {} colors on {}", coloring.num_colors(), g.name());
            Ok(ExitCode::SUCCESS)
        }
        Ok(Locating::No(clash)) => {
            println!(
                "not locating: {} and {} share color code {}",
                describe_vertex(g, clash.first),
                describe_vertex(g, clash.second),
                clash.code
            );
            Ok(ExitCode::from(1))
        }
        Err(ColoringError::Improper { u, v, color }) => {
            println!(
                "not proper: adjacent {} and {} both have color {color}",
                describe_vertex(g, u),
                describe_vertex(g, v)
            );
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(e.into()),
    }
}

fn latin_check(path: &Path) -> Result<ExitCode> {
    let lr = LatinRectangle::from_coloring(&read_matrix(path)?)?;
    match first_unseparated_pair(&lr) {
        None => {
            println!(
                "locating: {}x{} Latin rectangle on {} symbols",
                lr.m(),
                lr.n(),
                lr.symbols()
            );
            Ok(ExitCode::SUCCESS)
        }
        Some(((a, b), (c, d))) => {
            println!(
                "not locating: cells ({a},{b}) and ({c},{d}) hold symbol {} and see the same symbols",
                lr.get(a, b)
            );
            Ok(ExitCode::from(1))
        }
    }
}

fn latin_convert(path: &Path, output: Option<&Path>) -> Result<ExitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let converted = match ColoringDocument::from_toml(&text) {
        Ok(doc) => LatinRectangle::from_coloring(&doc.matrix()?)?.to_grid_text(),
        Err(_) => {
            let lr = LatinRectangle::parse_grid_text(&text).with_context(|| {
                format!(
                    "{} is neither a coloring document nor an integer grid",
                    path.display()
                )
            })?;
            let name = format!("K{}xK{}", lr.m(), lr.n());
            ColoringDocument::new(name, &lr.to_coloring(), None).to_toml()
        }
    };
    match output {
        Some(p) => write_file(p, &converted)?,
        None => print!("{converted}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn conjecture(
    id: u8,
    max_m: usize,
    max_n: usize,
    args: &BudgetArgs,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let limits = Limits {
        max_m,
        max_n,
        budget: args.solve_budget()?,
        jobs: args.jobs.max(1),
    };
    let report = check_conjecture(id, &limits)?;
    print!("{}", report.table());
    if let Some(path) = output {
        write_file(path, &report.to_toml())?;
    }
    Ok(if report.count(Verdict::Counterexample) > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
