use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use maslov_cli::commands::{self, Report};
use maslov_cli::suite::{self, SuiteConfig};
use maslov_cli::{CliError, Format, RunConfig, Verdict};
use serde_json::json;

/// Decision procedures and model construction for a prefix-class fragment
/// of first-order logic.
///
/// Exit codes: 0 sat / won / passed, 1 unsat up to the size bound / lost /
/// failed, 2 budget exhausted, 3 input error.
#[derive(Parser, Debug)]
#[command(name = "maslov", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for every randomised step. MASLOV_SEED, when set, wins.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for model search and game solving.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,
    /// Largest number of unnamed elements the model search tries.
    #[arg(long = "max-size", global = true, default_value_t = 4)]
    max_size: u32,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fragment membership, grade and diagnostics of a sentence.
    Classify { formula: PathBuf },
    /// Evaluate a sentence in a structure given as JSON.
    Check {
        formula: PathBuf,
        #[arg(long)]
        structure: PathBuf,
    },
    /// Bounded model search, cross-checked by the satisfiability game.
    Sat {
        formula: PathBuf,
        /// Search even when the sentence is outside the supported classes.
        #[arg(long)]
        force: bool,
        /// Also try every identification of the constants.
        #[arg(long)]
        identify_constants: bool,
    },
    /// Solve the satisfiability game over the type set of a structure.
    SolveGame {
        #[arg(long)]
        formula: PathBuf,
        /// Structure JSON whose padded type set is used; defaults to a
        /// model found by bounded search.
        #[arg(long)]
        beta: Option<PathBuf>,
        /// Merge 1-types the strategy cannot tell apart and re-solve.
        #[arg(long)]
        reduce: bool,
    },
    /// Solve the game, then build and model-check a finite model.
    BuildModel {
        #[arg(long)]
        formula: PathBuf,
        #[arg(long)]
        beta: Option<PathBuf>,
        /// Use the witness-chain grid construction.
        #[arg(long)]
        grid: bool,
    },
    /// Paradoxical tournaments.
    #[command(subcommand)]
    Tournament(TournamentCmd),
    /// Emit the hard sentence for n, optionally with its prototypical model.
    GenPhin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        constant_free: bool,
        /// Write the prototypical model JSON to this file.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Satisfiability-preserving rewrites.
    #[command(subcommand)]
    Translate(TranslateCmd),
    /// Run the acceptance suite and print a pass/fail table.
    Demo {
        /// Prime used by the Paley row.
        #[arg(long, default_value_t = 67)]
        paley_prime: u64,
        /// Run only these criteria (comma separated ids).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Subcommand, Debug)]
enum TournamentCmd {
    /// Sample until the verifier accepts.
    Sample {
        #[arg(long, default_value_t = 2)]
        vertex_colours: usize,
        #[arg(long, default_value_t = 1)]
        arc_colours: usize,
        /// Vertices per colour; defaults to the sampler's bound.
        #[arg(long)]
        multiplicity: Option<usize>,
    },
    /// Build the quadratic-residue tournament on a prime p = 3 mod 4.
    Paley {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Include the tournament itself in the output.
        #[arg(long)]
        emit: bool,
    },
    /// Check a tournament given as JSON.
    Verify {
        file: PathBuf,
        /// Tuple length; defaults to the number of arc colours.
        #[arg(long)]
        ell: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum TranslateCmd {
    /// Rewrite a uniform sentence into Skolem conjuncts.
    Fauf { formula: PathBuf },
    /// One reduced sentence per partition of the constants.
    Constants { formula: PathBuf },
}

fn config(g: &Global) -> Result<RunConfig, CliError> {
    let seed = match std::env::var("MASLOV_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("MASLOV_SEED={s} is not an unsigned integer")))?,
        Err(_) => g.seed,
    };
    let cfg = RunConfig {
        seed,
        node_budget: g.budget,
        max_model_size: g.max_size,
        jobs: g.jobs,
        format: if g.json { Format::Json } else { Format::Text },
    };
    cfg.validate()?;
    Ok(cfg)
}

fn demo(cfg: &RunConfig, paley_prime: u64, only: &[u8]) -> Result<Report, CliError> {
    if let Some(bad) = only.iter().find(|i| suite::criterion(**i).is_none()) {
        return Err(CliError::Input(format!("no criterion {bad}")));
    }
    let sc = SuiteConfig { seed: cfg.seed, paley_prime };
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in suite::CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let o = c.run(&sc);
        let line = format!(
            "{:>2}  {:<26} {}  {:>8.2}s / {:>3}s  {}\n",
            o.id,
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.elapsed.as_secs_f64(),
            o.limit_secs,
            o.detail
        );
        if !cfg.json() {
            // Rows appear as they finish; the table is long-running.
            print!("{line}");
        }
        text.push_str(&line);
        rows.push(o);
    }
    let all = rows.iter().all(|o| o.passed);
    let failed: Vec<u8> = rows.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    let json = json!({"command": "demo", "seed": cfg.seed, "passed": all, "failed": failed, "criteria": rows});
    Ok(Report {
        verdict: Verdict::from_bool(all),
        text: if cfg.json() { text } else { String::new() },
        json,
    })
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        Command::Classify { formula } => commands::cmd_classify(formula),
        Command::Check { formula, structure } => commands::cmd_check(formula, structure),
        Command::Sat { formula, force, identify_constants } => {
            commands::cmd_sat(formula, cfg, *force, *identify_constants)
        }
        Command::SolveGame { formula, beta, reduce } => {
            commands::cmd_solve_game(formula, beta.as_deref(), *reduce, cfg)
        }
        Command::BuildModel { formula, beta, grid } => {
            commands::cmd_build_model(formula, beta.as_deref(), *grid, cfg)
        }
        Command::Tournament(TournamentCmd::Sample { vertex_colours, arc_colours, multiplicity }) => {
            commands::cmd_tournament_sample(*vertex_colours, *arc_colours, *multiplicity, cfg)
        }
        Command::Tournament(TournamentCmd::Paley { prime, k, emit }) => commands::cmd_tournament_paley(*prime, *k, *emit),
        Command::Tournament(TournamentCmd::Verify { file, ell }) => commands::cmd_tournament_verify(file, *ell),
        Command::GenPhin { n, constant_free, model } => commands::cmd_gen_phin(*n, *constant_free, model.as_deref()),
        Command::Translate(TranslateCmd::Fauf { formula }) => commands::cmd_translate_fauf(formula),
        Command::Translate(TranslateCmd::Constants { formula }) => commands::cmd_translate_constants(formula),
        Command::Demo { paley_prime, only } => demo(cfg, *paley_prime, only),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Verdict::InputError.code() } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return e.verdict().into();
        }
    };
    if let Some(jobs) = cfg.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return Verdict::InputError.into();
        }
    }
    match dispatch(&cli.command, &cfg) {
        Ok(report) => {
            let out = report.render(&cfg);
            if !out.is_empty() {
                print!("{out}");
                if cfg.json() {
                    println!();
                }
            }
            report.verdict.into()
        }
        Err(e) => {
            if cfg.json() {
                let v = json!({"error": e.to_string(), "exit_code": e.verdict().code()});
                println!("{}", serde_json::to_string_pretty(&v).expect("JSON values serialise"));
            } else {
                eprintln!("error: {e}");
            }
            e.verdict().into()
        }
    }
}
