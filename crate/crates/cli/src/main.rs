use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use chordal_core::gen::{coloring_field_is_faithful, gen_colorings, gen_diffeq, gen_subset_sum_over};
use chordal_core::pipeline::{prepare, run, summary, Command, OrderChoice, RunOptions};
use chordal_core::{FieldSpec, GeneratorSet, Graph, MonomialOrder, Ring, SystemFile};

/// Chordal elimination for sparse polynomial systems.
#[derive(Parser)]
#[command(name = "chordal", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Chordal completion, cliques and elimination tree of a system or graph.
    GraphInfo(Common),
    /// Chordal elimination up to a level, with success certificates.
    ChordElim {
        #[command(flatten)]
        common: Common,
        /// Number of variables to eliminate (default: all but the last).
        #[arg(long)]
        level: Option<usize>,
    },
    /// Elimination ideals of every clique.
    CliqueElim(Common),
    /// List all points of a zero-dimensional system over GF(p).
    Solve(Common),
    /// Count the points of a zero-dimensional system over GF(p).
    Count(Common),
    /// Write a generated system.
    #[command(subcommand)]
    Gen(GenCmd),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    system: Option<PathBuf>,
    /// Graph file: `n m` followed by one `u v` edge per line.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Override the field declared in the system header: `Q` or `GF(p)`.
    #[arg(long)]
    field: Option<FieldSpec>,
    #[arg(long, value_enum, default_value_t = OrderArg::Given)]
    order: OrderArg,
    /// Write the JSON report to this file (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Append `x^p - x` for every variable.
    #[arg(long)]
    add_field_equations: bool,
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Given,
    Heuristic,
}

#[derive(Subcommand)]
enum GenCmd {
    /// `q`-colorings of a graph.
    Colorings {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subset sum as a chain of partial sums.
    Subsetsum {
        /// Comma-separated integers.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        values: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        target: i64,
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finite-difference equations of a cubic two-point boundary value problem.
    Diffeq {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(common: &Common) -> Result<(SystemFile, Option<Graph>)> {
    let graph = match &common.graph {
        Some(p) => Some(Graph::parse(&read(p)?).with_context(|| format!("parsing {}", p.display()))?),
        None => None,
    };
    let mut system = match (&common.system, &graph) {
        (Some(p), _) => SystemFile::parse_with_field(&read(p)?, common.field)
            .with_context(|| format!("parsing {}", p.display()))?,
        (None, Some(g)) => {
            let ring = Ring::indexed("x", g.n(), common.field.unwrap_or(FieldSpec::Rationals));
            SystemFile::new(GeneratorSet::empty(&ring, MonomialOrder::Lex))
        }
        (None, None) => bail!("need --system or --graph"),
    };
    if common.add_field_equations {
        system.add_field_equations()?;
    }
    Ok((system, graph))
}

fn execute(common: &Common, command: Command) -> Result<i32> {
    let (system, graph) = load(common)?;
    if common.system.is_none() && command != Command::GraphInfo {
        bail!("this command needs --system");
    }
    let choice = match common.order {
        OrderArg::Given => OrderChoice::Given,
        OrderArg::Heuristic => OrderChoice::Heuristic,
    };
    let prepared = prepare(&system, graph.as_ref(), choice)?;
    let (report, status) = run(&prepared, command, RunOptions { timings: common.timings })?;
    match &common.json {
        Some(p) if p.as_os_str() == "-" => println!("{}", report.to_json()),
        Some(p) => {
            fs::write(p, report.to_json() + "\n").with_context(|| format!("writing {}", p.display()))?;
            print!("{}", summary(&report));
        }
        None => print!("{}", summary(&report)),
    }
    Ok(status.exit_code())
}

fn emit(system: &SystemFile, out: &Option<PathBuf>) -> Result<i32> {
    match out {
        Some(p) => fs::write(p, system.to_text()).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{}", system.to_text()),
    }
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Cmd::GraphInfo(c) => execute(&c, Command::GraphInfo),
        Cmd::ChordElim { common, level } => execute(&common, Command::ChordElim { level }),
        Cmd::CliqueElim(c) => execute(&c, Command::CliqueElim),
        Cmd::Solve(c) => execute(&c, Command::Solve),
        Cmd::Count(c) => execute(&c, Command::Count),
        Cmd::Gen(GenCmd::Colorings { graph, q, field, out }) => {
            let g = Graph::parse(&read(&graph)?)?;
            if !coloring_field_is_faithful(q, field) {
                eprintln!("warning: {field} lacks the {q}-th roots of unity; counts may differ from colorings");
            }
            emit(&gen_colorings(&g, q, field)?, &out)
        }
        Cmd::Gen(GenCmd::Subsetsum { values, target, field, out }) => {
            emit(&gen_subset_sum_over(&values, target, field), &out)
        }
        Cmd::Gen(GenCmd::Diffeq { n, out }) => emit(&gen_diffeq(n)?, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
