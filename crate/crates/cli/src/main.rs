use std::fs;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use glu_cli::commands::load_sequence;
use glu_cli::{
    cmd_compare, cmd_geometrize, cmd_moves_apply, cmd_moves_enumerate, cmd_pi1, cmd_quotients,
    cmd_validate, load_triangulation, CliError, Mode, Outcome, PipelineConfig,
};
use glu_core::quotient::QuotientFilters;

#[derive(Parser)]
#[command(name = "glu", version, about = "Triangulated closed 3-manifolds: moves, quotients, π1, geometry, comparison")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Box,
    Direct,
}

#[derive(Subcommand)]
enum Command {
    /// Check a glu3/1 gluing and report its skeleton.
    Validate { file: String },
    /// Replay a move sequence, or list every applicable elementary move.
    Moves {
        file: String,
        #[arg(long, conflicts_with = "enumerate", required_unless_present = "enumerate")]
        apply: Option<String>,
        #[arg(long)]
        enumerate: bool,
    },
    /// Enumerate simplicial quotients.
    Quotients {
        file: String,
        #[arg(long)]
        oriented: bool,
        #[arg(long)]
        degree_one: bool,
        /// Keep only quotients that are closed 3-manifolds.
        #[arg(long)]
        manifold: bool,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Presentation and first homology; with --words, face-pairing words up to length L.
    Pi1 {
        file: String,
        #[arg(long, value_name = "L")]
        words: Option<u64>,
    },
    /// Solve for a hyperbolic structure.
    Geometrize {
        file: String,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Direct)]
        mode: ModeArg,
        #[arg(long)]
        report: Option<String>,
    },
    /// Look for a sequence of Pachner moves between two gluings.
    Compare {
        a: String,
        b: String,
        /// Elementary moves searched at most.
        #[arg(long, default_value_t = 6)]
        cap: u64,
        #[arg(long, default_value_t = 2)]
        c: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        /// Signatures visited by the search at most.
        #[arg(long, default_value_t = 500_000)]
        nodes: usize,
        /// Skip geometrization and search up to the cap.
        #[arg(long)]
        no_geometry: bool,
        #[arg(long)]
        report: Option<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Moves { .. } => "moves",
            Command::Quotients { .. } => "quotients",
            Command::Pi1 { .. } => "pi1",
            Command::Geometrize { .. } => "geometrize",
            Command::Compare { .. } => "compare",
        }
    }
}

/// Runs a command; the second value is where to write the report, if not stdout.
fn run(command: Command) -> Result<(Outcome, Option<String>), CliError> {
    let cfg = PipelineConfig::default();
    Ok(match command {
        Command::Validate { file } => (cmd_validate(&load_triangulation(&file)?), None),
        Command::Moves { file, apply, enumerate } => {
            let tri = load_triangulation(&file)?;
            match (apply, enumerate) {
                (Some(seq), _) => (cmd_moves_apply(&tri, &load_sequence(&seq)?)?, None),
                (None, _) => (cmd_moves_enumerate(&tri), None),
            }
        }
        Command::Quotients { file, oriented, degree_one, manifold, budget } => {
            let filters = QuotientFilters { oriented, degree_one, manifold };
            let cfg = PipelineConfig { quotient_budget: budget, ..cfg };
            (cmd_quotients(&load_triangulation(&file)?, filters, &cfg)?, None)
        }
        Command::Pi1 { file, words } => (cmd_pi1(&load_triangulation(&file)?, words)?, None),
        Command::Geometrize { file, restarts, tol, seed, mode, report } => {
            let mode = match mode {
                ModeArg::Box => Mode::Box,
                ModeArg::Direct => Mode::Direct,
            };
            let cfg = PipelineConfig { restarts, tol, seed, mode, ..cfg };
            (cmd_geometrize(&load_triangulation(&file)?, &cfg)?, report)
        }
        Command::Compare { a, b, cap, c, seed, restarts, nodes, no_geometry, report } => {
            let cfg = PipelineConfig {
                cap,
                c,
                seed,
                restarts,
                node_cap: nodes,
                geometrize: !no_geometry,
                ..cfg
            };
            let (ta, tb) = (load_triangulation(&a)?, load_triangulation(&b)?);
            (cmd_compare(&ta, &tb, &cfg)?, report)
        }
    })
}

fn threads() -> anyhow::Result<()> {
    if let Ok(n) = std::env::var("GLU_THREADS") {
        let n: usize = n.parse().context("GLU_THREADS must be a positive integer")?;
        anyhow::ensure!(n > 0, "GLU_THREADS must be a positive integer");
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    if let Err(e) = threads() {
        eprintln!("{}", serde_json::json!({"format": "glu-error/1", "command": name, "kind": "config", "message": format!("{e:#}")}));
        return ExitCode::from(1);
    }
    match run(cli.command) {
        Ok((outcome, path)) => {
            let text = outcome.to_text();
            match path {
                Some(p) => {
                    if let Err(source) = fs::write(&p, &text) {
                        let e = CliError::Io { path: p, source };
                        eprintln!("{}", e.to_json_value(name));
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(outcome.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{}", e.to_json_value(name));
            ExitCode::from(1)
        }
    }
}
