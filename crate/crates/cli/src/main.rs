use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use signal_eq::cse::assemble_cse;
use signal_eq::finite::{equivalence_sweep, random_games, BeliefGrid, EnumerationOptions, ReactionDomain};
use signal_eq::io::{finite_report, load_game, read_solution, write_report, write_solution_files, RunConfig};
use signal_eq::verify::verify_solution;

const THREADS_VAR: &str = "SIGNAL_EQ_THREADS";

#[derive(Parser)]
#[command(name = "signal-eq", version, about = "Monotone signaling equilibria: solve, verify, and analyse finite games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the continuum market described by a config file.
    Solve {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Nominal ODE step.
        #[arg(long)]
        step: Option<f64>,
        /// Local error bound per ODE step.
        #[arg(long)]
        tol: Option<f64>,
        /// Solve even if an assumption certificate fails.
        #[arg(long)]
        waive_assumptions: bool,
    },
    /// Audit a solution file; exits 0 only if every check passes.
    Verify {
        #[arg(long)]
        solution: PathBuf,
        #[arg(long)]
        config: PathBuf,
        /// Directory for report.json; defaults to the solution's directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Tolerance for payoff-based checks.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Compare Criterion D1 with stronger monotonicity on finite games.
    Finite {
        /// Game file (TOML, or JSON by extension).
        game: Option<PathBuf>,
        /// Generate this many random games instead of reading a file.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Largest number of types, actions and reactions in generated games.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        #[arg(long, value_enum, default_value_t = DomainArg::Listed)]
        domain: DomainArg,
        #[arg(long, value_enum, default_value_t = GridArg::PointMasses)]
        belief_grid: GridArg,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    /// Deviation incentives over the listed reactions.
    Listed,
    /// Deviation incentives over all transfers (quasilinear games only).
    Unbounded,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    /// Point masses plus the uniform belief.
    PointMasses,
    /// Uniform belief on every nonempty subset of types.
    Faces,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<signal_eq::Error>() {
        Some(signal_eq::Error::Convergence(_)) => 3,
        _ => 2,
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v.parse().with_context(|| format!("{THREADS_VAR} must be a positive integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .context("thread pool already initialised")?;
    }
    Ok(())
}

fn solve(config: &Path, out: &Path, step: Option<f64>, tol: Option<f64>, waive: bool) -> Result<()> {
    let mut cfg = RunConfig::load(config)?;
    if let Some(step) = step {
        cfg.solver.step = step;
        cfg.solver.floor = cfg.solver.floor.min(step);
    }
    if let Some(tol) = tol {
        cfg.solver.local_tol = tol;
    }
    cfg.solver.waive_assumptions |= waive;
    cfg.validate()?;
    let m = cfg.build_primitives()?;
    let sol = assemble_cse(&m, &cfg.solve_options())?;
    let files = write_solution_files(&sol, out, cfg.output.table_points)?;
    println!("regime: {}", sol.regime);
    if let Some(th) = sol.thresholds {
        println!("entry: z_ell = {:.10}, s_ell = {:.10}", th.z_ell, th.s_ell);
        if let Some(j) = th.jump {
            println!("pooling: z_h = {:.10}, s_h = {:.10}", j.z_h, j.s_h);
        }
    }
    if let Some(top) = sol.tau_top {
        println!("top reaction of the uncapped arc: {top:.10}");
    }
    for note in &sol.metadata.notes {
        println!("note: {note}");
    }
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn verify(solution: &Path, config: &Path, out: Option<&Path>, tol: Option<f64>) -> Result<bool> {
    let mut cfg = RunConfig::load(config)?;
    if let Some(tol) = tol {
        cfg.verify.tolerance = tol;
    }
    cfg.validate()?;
    let m = cfg.build_primitives()?;
    let sol = read_solution(solution)?;
    let report = verify_solution(&sol, &m, &cfg.verify_options())?;
    let dir = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| solution.parent().map(Path::to_path_buf).unwrap_or_default());
    let path = dir.join("report.json");
    write_report(&report, &path)?;
    for r in &report.records {
        let flag = if r.pass { "pass" } else { "FAIL" };
        println!("{flag}  {:<34} max residual {:.3e} (tol {:.1e})", r.name, r.max_residual, r.tolerance);
        if !r.pass {
            if let Some(w) = &r.worst_witness {
                println!("      {w}");
            }
        }
    }
    println!("overall: {}", if report.pass { "pass" } else { "FAIL" });
    println!("wrote {}", path.display());
    Ok(report.pass)
}

#[allow(clippy::too_many_arguments)]
fn finite(
    game: Option<&Path>,
    random: Option<usize>,
    seed: u64,
    max_size: usize,
    domain: DomainArg,
    grid: GridArg,
    out: &Path,
) -> Result<()> {
    let games = match (game, random) {
        (Some(path), None) => vec![load_game(path)?],
        (None, Some(n)) => random_games(n, seed, max_size),
        _ => anyhow::bail!(signal_eq::Error::Config("give either a game file or --random N".into())),
    };
    let domain = match domain {
        DomainArg::Listed => ReactionDomain::Listed,
        DomainArg::Unbounded => ReactionDomain::UnboundedQuasilinear,
    };
    let options = EnumerationOptions {
        belief_grid: match grid {
            GridArg::PointMasses => BeliefGrid::PointMassesAndUniform,
            GridArg::Faces => BeliefGrid::FaceBarycenters,
        },
        ..EnumerationOptions::default()
    };
    let reports = equivalence_sweep(&games, &options, domain)?;
    let summary = finite_report(&reports, domain);
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let path = out.join("finite_report.json");
    std::fs::write(&path, serde_json::to_string_pretty(&summary)?)
        .with_context(|| format!("writing {}", path.display()))?;
    println!(
        "games: {} (hypothesis met: {}), PBEs: {}, disagreements: {}",
        summary.games, summary.asserted_games, summary.total_pbes, summary.total_disagreements
    );
    if let [single] = summary.reports.as_slice() {
        println!("support classes: {}", single.support_classes);
    }
    println!("equivalence: {}", summary.verdict);
    println!("wrote {}", path.display());
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    configure_threads()?;
    match cli.command {
        Command::Solve {
            config,
            out,
            step,
            tol,
            waive_assumptions,
        } => solve(&config, &out, step, tol, waive_assumptions).map(|()| ExitCode::SUCCESS),
        Command::Verify { solution, config, out, tol } => {
            let pass = verify(&solution, &config, out.as_deref(), tol)?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Finite {
            game,
            random,
            seed,
            max_size,
            domain,
            belief_grid,
            out,
        } => finite(game.as_deref(), random, seed, max_size, domain, belief_grid, &out).map(|()| ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
