use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quantum_inspection::polytope::SamplingOptions;
use quantum_inspection::scenario::{
    reproduce_reference, run_scenario, ReproduceOptions, ScenarioConfig, DEFAULT_COMPARISON_TOLERANCE,
};
use quantum_inspection::{Error, StrategyProfile};

const EXIT_ANALYSIS_FAILURE: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 2;

/// Quantum inspection game solver.
#[derive(Parser)]
#[command(name = "quantum-inspection", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical matrix, equilibria and payoffs.
    Classical(ScenarioArgs),
    /// Quantum expected payoffs at a strategy profile.
    Payoff {
        #[command(flatten)]
        common: ScenarioArgs,
        /// Employer's probability of the identity operation.
        #[arg(long)]
        p: Option<f64>,
        /// Worker's probability of the identity operation.
        #[arg(long)]
        q: Option<f64>,
    },
    /// All Nash equilibria of the quantum game for the configured state.
    FindNe(ScenarioArgs),
    /// Corner equilibrium conditions and exact payoff ranges.
    CornerCases(ScenarioArgs),
    /// Floor-constrained joint payoff maximization.
    Pareto(ScenarioArgs),
    /// Sampled payoff ranges over states with an interior equilibrium.
    InteriorRange {
        #[command(flatten)]
        common: ScenarioArgs,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Every analysis enabled in the config.
    Run(ScenarioArgs),
    /// Built-in reference battery; prints a summary table to stderr.
    Reproduce {
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = quantum_inspection::polytope::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_COMPARISON_TOLERANCE)]
        tolerance: f64,
        /// Also write the summary table to this file.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ScenarioArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_COMPARISON_TOLERANCE)]
    tolerance: f64,
}

enum Failure {
    Input(String),
    Analysis(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InfeasibleProgram(_) | Error::TooManyConstraints { .. } | Error::InvalidProbabilityVector(_) => {
                Failure::Analysis(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn load_config(path: &Path) -> Result<ScenarioConfig, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(ScenarioConfig::from_json(&text)?)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Input(format!("stdout: {e}"))),
    }
}

fn run_with(
    args: &ScenarioArgs,
    adjust: impl FnOnce(&mut ScenarioConfig) -> Result<(), Failure>,
) -> Result<bool, Failure> {
    let mut config = load_config(&args.config)?;
    adjust(&mut config)?;
    let report = run_scenario(&config, args.tolerance)?;
    write_output(args.output.as_deref(), &report.to_json())?;
    for check in report.checks.iter().filter(|c| !c.pass) {
        eprintln!("check failed: {} ({})", check.name, check.detail);
    }
    Ok(report.pass)
}

fn execute(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Classical(args) => run_with(&args, |c| {
            c.analysis.classical = true;
            Ok(())
        }),
        Command::Payoff { common, p, q } => run_with(&common, |c| {
            let current = c.analysis.quantum_payoff;
            let p = p.or(current.map(|s| s.p));
            let q = q.or(current.map(|s| s.q));
            match (p, q) {
                (Some(p), Some(q)) => {
                    c.analysis.quantum_payoff = Some(StrategyProfile::new(p, q)?);
                    Ok(())
                }
                _ => Err(Failure::Input(
                    "payoff needs a profile: pass --p and --q or set analysis.quantum_payoff".into(),
                )),
            }
        }),
        Command::FindNe(args) => run_with(&args, |c| {
            c.analysis.find_ne = true;
            Ok(())
        }),
        Command::CornerCases(args) => run_with(&args, |c| {
            c.analysis.corner_cases = true;
            Ok(())
        }),
        Command::Pareto(args) => run_with(&args, |c| {
            c.analysis.pareto = true;
            Ok(())
        }),
        Command::InteriorRange { common, seed, samples } => run_with(&common, |c| {
            c.analysis.interior_range = true;
            if let Some(seed) = seed {
                c.sampling.seed = seed;
            }
            if let Some(samples) = samples {
                c.sampling.samples = samples;
            }
            Ok(())
        }),
        Command::Run(args) => run_with(&args, |_| Ok(())),
        Command::Reproduce { output, seed, samples, tolerance, summary } => {
            let mut sampling = SamplingOptions { seed, ..SamplingOptions::default() };
            if let Some(samples) = samples {
                sampling.samples = samples;
            }
            let options = ReproduceOptions { sampling, tolerance, ..ReproduceOptions::default() };
            let report = reproduce_reference(options);
            write_output(output.as_deref(), &report.to_json())?;
            let table = report.summary_table();
            eprint!("{table}");
            if let Some(path) = summary {
                fs::write(&path, &table).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_ANALYSIS_FAILURE),
        Err(Failure::Analysis(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ANALYSIS_FAILURE)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT_ERROR)
        }
    }
}
