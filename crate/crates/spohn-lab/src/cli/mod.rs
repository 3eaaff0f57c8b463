//! Command-line front end. `run` parses arguments, executes one subcommand and
//! returns the process exit code.

pub mod reproduce;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::warn;
use serde_json::{json, Value};

use crate::chow::{canonical_multidegree, is_general_type_surface, nash_ci_degree, nash_ci_degree_class};
use crate::cimodel::{export_ideal, model_dimension, model_quadrics, param_map};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::graph::{Graph, Partition};
use crate::numeric::{
    dimension_probe, payoff_region_sample, sample_ci_equilibria, solve_totally_mixed_nash, EquilibriumPoint, SolveConfig,
};
use crate::spohnci::{build_system, expected_nash_ci_dimension, expected_spohn_ci_dimension, nash_ci_system};
use crate::universality::lift_game;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_SOLUTIONS: i32 = 3;

/// Environment variable capping the solver thread pool.
pub const THREADS_ENV: &str = "SPOHN_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "spohn-lab", version, about = "Polynomial systems and equilibria of games on graphical models")]
pub struct Cli {
    /// Pretty-print JSON instead of one object per line.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 200)]
    pub starts: usize,
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,
    /// Exit with status 3 when nothing is found.
    #[arg(long)]
    pub require_solutions: bool,
}

impl SolverArgs {
    fn config(&self) -> SolveConfig {
        SolveConfig { tol: self.tol, starts: self.starts, max_iter: self.max_iter, ..SolveConfig::new(self.seed) }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkovKind {
    Global,
    Pairwise,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Markov properties of a graph.
    Markov {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value = "global")]
        kind: MarkovKind,
    },
    /// Clique parametrization, dimension and CI quadrics of the graphical model.
    Model {
        #[arg(long)]
        graph: String,
        /// Include the global Markov quadrics.
        #[arg(long)]
        quadrics: bool,
    },
    /// Torus polynomials F_1, …, F_n of a game on a graph.
    Spohn {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        game: String,
        /// Plain-text export instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Nash CI polynomials on a disjoint union of cliques.
    Nashci {
        #[arg(long)]
        partition: String,
        #[arg(long)]
        game: String,
        #[arg(long)]
        text: bool,
    },
    /// Model and Spohn CI dimensions predicted from the clique complex.
    Dim {
        #[arg(long)]
        graph: String,
    },
    /// Degree of the Nash CI variety of a partition.
    Degree {
        #[arg(long)]
        partition: String,
        /// Also print the full class in the Chow ring.
        #[arg(long)]
        show_class: bool,
    },
    /// Totally mixed Nash equilibria.
    SolveNash {
        #[arg(long)]
        game: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Sample totally mixed CI equilibria.
    SampleCi {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        game: String,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Numerical dimension of the Spohn CI variety.
    ProbeDim {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        game: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Expected payoffs of sampled CI equilibria.
    PayoffRegion {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        game: String,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Append l clique-paired players to a binary game.
    Lift {
        #[arg(long)]
        game: String,
        #[arg(long)]
        l: usize,
    },
    /// Re-derive the values of a built-in worked example.
    Reproduce {
        #[arg(value_parser = ["example-4player"])]
        example: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Loads a built-in game by name or a JSON file by path.
pub fn load_game(spec: &str) -> Result<Game> {
    if let Some(g) = Game::builtin(spec) {
        return Ok(g);
    }
    Game::from_json(&read_json(spec)?)
}

/// Loads a built-in graph by name or a JSON file by path.
pub fn load_graph(spec: &str) -> Result<Graph> {
    if let Some(g) = Graph::builtin(spec) {
        return Ok(g);
    }
    Graph::from_json(&read_json(spec)?)
}

fn read_json(path: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("`{path}` is neither a built-in name nor a readable file: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

/// A finished command: JSON records or raw text, and an exit code.
#[derive(Debug, Default)]
pub struct Report {
    pub records: Vec<Value>,
    pub text: Option<String>,
    pub code: i32,
}

impl Report {
    fn json(records: Vec<Value>) -> Self {
        Report { records, text: None, code: EXIT_OK }
    }

    pub fn render(&self, pretty: bool) -> String {
        if let Some(t) = &self.text {
            return t.clone();
        }
        let mut out = String::new();
        for r in &self.records {
            let line = if pretty { serde_json::to_string_pretty(r) } else { serde_json::to_string(r) };
            out.push_str(&line.expect("JSON values serialize"));
            out.push('\n');
        }
        out
    }
}

fn points_json(points: &[EquilibriumPoint], g: &Graph, game: &Game) -> Vec<Value> {
    let pm = param_map(g);
    let p_vars = game.p_vars();
    points.iter().map(|p| p.to_json(pm.torus(), &p_vars)).collect()
}

fn require(found: usize, solver: &SolverArgs, mut report: Report) -> Report {
    if found == 0 && solver.require_solutions {
        report.code = EXIT_NO_SOLUTIONS;
    }
    report
}

/// Executes a parsed command.
pub fn execute(command: &Command) -> Result<Report> {
    Ok(match command {
        Command::Markov { graph, kind } => {
            let g = load_graph(graph)?;
            let stmts = match kind {
                MarkovKind::Global => g.global_markov()?,
                MarkovKind::Pairwise => g.pairwise_markov(),
            };
            Report::json(vec![json!({
                "graph": g.to_json(),
                "kind": format!("{kind:?}").to_lowercase(),
                "statements": stmts.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            })])
        }
        Command::Model { graph, quadrics } => {
            let g = load_graph(graph)?;
            let pm = param_map(&g);
            let mut rec = json!({
                "graph": g.to_json(),
                "dimension": model_dimension(&g),
                "maximal_cliques": pm.cliques().iter().map(|c| c.labels()).collect::<Vec<_>>(),
                "parametrization": pm.to_json(),
            });
            if *quadrics {
                let q = model_quadrics(&g, &vec![2; g.vertex_count()])?;
                let vars = Game::zero(vec![2; g.vertex_count()])?.p_vars();
                rec["quadrics"] = json!(q.iter().map(|p| p.to_text()).collect::<Vec<_>>());
                rec["ideal"] = json!(export_ideal(&q, &vars));
            }
            Report::json(vec![rec])
        }
        Command::Spohn { graph, game, text } => {
            let sys = build_system(&load_graph(graph)?, &load_game(game)?)?;
            if *text {
                Report { text: Some(sys.export_text()), ..Report::default() }
            } else {
                Report::json(vec![sys.to_json()])
            }
        }
        Command::Nashci { partition, game, text } => {
            let sys = nash_ci_system(&Partition::parse(partition)?, &load_game(game)?)?;
            if *text {
                Report { text: Some(sys.export_text()), ..Report::default() }
            } else {
                Report::json(vec![sys.to_json()])
            }
        }
        Command::Dim { graph } => {
            let g = load_graph(graph)?;
            let mut rec = json!({
                "graph": g.to_json(),
                "model_dimension": model_dimension(&g),
                "spohn_ci_dimension": expected_spohn_ci_dimension(&g),
            });
            if let Some(part) = g.is_disjoint_cliques() {
                rec["partition"] = json!(part.sizes());
                rec["nash_ci_dimension"] = json!(expected_nash_ci_dimension(&part));
            }
            Report::json(vec![rec])
        }
        Command::Degree { partition, show_class } => {
            let part = Partition::parse(partition)?;
            let degree = nash_ci_degree(&part)?;
            let mut rec = json!({
                "partition": part.sizes(),
                "degree": serde_json::from_str::<Value>(&degree.to_string())?,
                "dimension": expected_nash_ci_dimension(&part),
                "canonical_multidegree": canonical_multidegree(&part),
            });
            if expected_nash_ci_dimension(&part) == 2 {
                rec["general_type_surface"] = json!(is_general_type_surface(&part)?);
            }
            if *show_class {
                rec["class"] = json!(nash_ci_degree_class(&part)?.to_string());
            }
            Report::json(vec![rec])
        }
        Command::SolveNash { game, solver } => {
            let game = load_game(game)?;
            let pts = solve_totally_mixed_nash(&game, &solver.config())?;
            let g = Graph::empty(game.players());
            let report = Report::json(vec![json!({"count": pts.len(), "points": points_json(&pts, &g, &game)})]);
            require(pts.len(), solver, report)
        }
        Command::SampleCi { graph, game, count, solver } => {
            let (g, game) = (load_graph(graph)?, load_game(game)?);
            let pts = sample_ci_equilibria(&g, &game, *count, &solver.config())?;
            if pts.len() < *count {
                warn!("sampled {} of {} requested points", pts.len(), count);
            }
            let report = Report::json(vec![json!({"count": pts.len(), "points": points_json(&pts, &g, &game)})]);
            require(pts.len(), solver, report)
        }
        Command::ProbeDim { graph, game, solver } => {
            let (g, game) = (load_graph(graph)?, load_game(game)?);
            let probe = match dimension_probe(&g, &game, &solver.config()) {
                Err(Error::NoPoints) if !solver.require_solutions => {
                    return Ok(Report::json(vec![json!({"dimension": null, "expected": expected_spohn_ci_dimension(&g)})]));
                }
                Err(Error::NoPoints) => return Ok(Report { code: EXIT_NO_SOLUTIONS, ..Report::default() }),
                r => r?,
            };
            let mut rec = probe.to_json();
            rec["expected"] = json!(expected_spohn_ci_dimension(&g));
            Report::json(vec![rec])
        }
        Command::PayoffRegion { graph, game, count, solver } => {
            let (g, game) = (load_graph(graph)?, load_game(game)?);
            let pays = payoff_region_sample(&g, &game, *count, &solver.config())?;
            let report = Report::json(vec![json!({"count": pays.len(), "payoffs": pays})]);
            require(pays.len(), solver, report)
        }
        Command::Lift { game, l } => Report::json(vec![lift_game(&load_game(game)?, *l)?.to_json()]),
        Command::Reproduce { example: _, seed } => {
            let checks = reproduce::example_4player(&SolveConfig::new(*seed))?;
            let code = if checks.iter().all(|c| c.pass) { EXIT_OK } else { EXIT_FAILURE };
            Report { records: checks.iter().map(|c| c.to_json()).collect(), text: None, code }
        }
    })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::Io(_) => EXIT_FAILURE,
        Error::NoPoints => EXIT_NO_SOLUTIONS,
        _ => EXIT_INVALID,
    }
}

fn configure_threads() {
    let Ok(v) = std::env::var(THREADS_ENV) else { return };
    match v.parse::<usize>() {
        Ok(n) if n > 0 => {
            if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
                warn!("thread pool already initialized; {THREADS_ENV} ignored");
            }
        }
        _ => warn!("ignoring {THREADS_ENV}={v}: expected a positive integer"),
    }
}

/// Parses `args` (including the program name), runs the command and writes the report.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let body = report.render(cli.pretty);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_FAILURE;
            }
        }
        None => print!("{body}"),
    }
    report.code
}
