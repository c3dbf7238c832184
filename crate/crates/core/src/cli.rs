//! Command-line front end. Data goes to files or stdout, diagnostics to
//! stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{emit_csv, run_benchmark, write_csv, TrialPlan};
use crate::dynamic::{emit_trace_csv, run_dynamic_capacity, write_trace_csv, DynamicConfig};
use crate::error::{Error, Result};
use crate::greedy::{gda_with, greedy, SortKey, TieBreak};
use crate::gsa::{gsa_complexity_estimate, GsaConfig};
use crate::io::{instance_to_json, read_instance, solution_to_json, write_text};
use crate::model::{Instance, Objective};
use crate::oracle::{lp_upper_bound, OracleBudget};
use crate::scenario::{generate, DemandRanges, Scenario, ScenarioSpec};
use crate::solve::{solve, Algorithm};

/// Subset counts above this trigger a warning before GSA runs.
const GSA_WARN_SUBSETS: u64 = 10_000_000;

const ACRONYM_HELP: &str = "\
Scenario acronyms are three letters, one from each group:
  power        F = full (active + reactive), A = active only
  correlation  C = valuation quadratic in |d|, U = uncorrelated, L = linear
  load         R = residential, I = industrial, M = mixed
e.g. FCR, AUM, FLI.

Exit codes: 0 success, 1 I/O failure, 2 malformed input or usage,
3 oracle budget exceeded, 4 a demand exceeds the capacity.";

#[derive(Debug, Parser)]
#[command(name = "curtail", version, about = "Load-curtailment solvers for complex power demands", after_help = ACRONYM_HELP)]
pub struct Cli {
    /// Seed for instance generation, tie shuffling and simulation.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Relative feasibility tolerance applied to loaded instances.
    #[arg(long, global = true, value_name = "REL")]
    pub tolerance_override: Option<f64>,
    /// Suppress warnings.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random instance as JSON.
    #[command(after_help = ACRONYM_HELP)]
    Generate(GenerateArgs),
    /// Run a heuristic (or the oracle) on an instance file.
    Solve(SolveArgs),
    /// Exact optimum by exhaustive search, or the fractional upper bound.
    Oracle(OracleArgs),
    /// Run a trial plan and write a CSV report.
    Bench(BenchArgs),
    /// Simulate a fluctuating generation capacity and write a CSV trace.
    #[command(after_help = ACRONYM_HELP)]
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Preset {
    /// Residential 500 VA - 8 kVA, industrial 500 kVA - 2 MVA.
    Wide,
    /// Residential 500 VA - 5 kVA, industrial 300 kVA - 1 MVA.
    Narrow,
}

impl Preset {
    fn ranges(self) -> DemandRanges {
        match self {
            Preset::Wide => DemandRanges::WIDE,
            Preset::Narrow => DemandRanges::NARROW,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Three-letter scenario acronym (see below).
    #[arg(long)]
    pub scenario: String,
    #[arg(long)]
    pub n: usize,
    /// Capacity in VA.
    #[arg(long, default_value_t = 2e6)]
    pub capacity: f64,
    /// Capacity as a fraction of total demand magnitude (overrides --capacity).
    #[arg(long)]
    pub capacity_fraction: Option<f64>,
    #[arg(long, value_enum, default_value_t = Preset::Wide)]
    pub preset: Preset,
    /// Output file (stdout when omitted).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum, default_value_t = Objective::Vmax)]
    pub objective: Objective,
    /// gva | gma | gra | gda | gsa | gsa:<epsilon> | oracle
    #[arg(long, default_value = "gda")]
    pub algorithm: String,
    /// GSA accuracy parameter in (0, 1).
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Break sort ties by a seeded shuffle instead of by id (greedy only).
    #[arg(long)]
    pub random_ties: bool,
    /// Largest instance the oracle will enumerate.
    #[arg(long, default_value_t = 20)]
    pub max_n: usize,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    pub instance: PathBuf,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum, default_value_t = Objective::Vmax)]
    pub objective: Objective,
    /// Largest instance the oracle will enumerate.
    #[arg(long, default_value_t = 20)]
    pub max_n: usize,
    /// Print the fractional relaxation bound instead of enumerating.
    #[arg(long)]
    pub lp_bound: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    pub instance: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Trial plan JSON.
    #[arg(long)]
    pub plan: PathBuf,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// Worker threads (0 = all cores); overrides the plan.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Dynamic generation-capacity simulation (the only mode).
    #[arg(long, required = true)]
    pub dynamic: bool,
    /// Simulation config JSON; flags below override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub scenario: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub algorithm: Option<String>,
    #[arg(long, value_enum)]
    pub objective: Option<Objective>,
    /// Horizon in seconds.
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Record the exact optimum at every trace point.
    #[arg(long)]
    pub oracle_overlay: bool,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => write_text(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn load(cli: &Cli, path: &Path) -> Result<Instance> {
    let inst = read_instance(path)?;
    match cli.tolerance_override {
        Some(tol) => inst.with_tolerance(tol),
        None => Ok(inst),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        context: path.display().to_string(),
        source,
    })
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Generate(a) => {
            let scenario: Scenario = a.scenario.parse()?;
            let mut spec = ScenarioSpec::new(scenario, a.n, a.capacity, cli.seed.unwrap_or(0))
                .with_ranges(a.preset.ranges());
            spec.capacity_fraction = a.capacity_fraction;
            let inst = generate(&spec)?;
            emit(a.output.as_deref(), &(instance_to_json(&inst) + "\n"))
        }
        Command::Solve(a) => {
            let inst = load(cli, &a.instance)?;
            let mut algorithm: Algorithm = a.algorithm.parse()?;
            if let Some(eps) = a.epsilon {
                match algorithm {
                    Algorithm::Gsa(_) => {
                        algorithm = Algorithm::Gsa(Some(GsaConfig::new(eps)?.epsilon()))
                    }
                    _ => return Err(Error::InvalidConfig("--epsilon only applies to gsa".into())),
                }
            }
            if let Algorithm::Gsa(eps) = algorithm {
                let eps = eps.unwrap_or(GsaConfig::MIXED.epsilon());
                let subsets = gsa_complexity_estimate(inst.len(), eps)?;
                if subsets > GSA_WARN_SUBSETS && !cli.quiet {
                    eprintln!(
                        "warning: gsa with epsilon {eps} on n = {} enumerates {subsets} subsets",
                        inst.len()
                    );
                }
            }
            let budget = OracleBudget::new(a.max_n)?;
            let solution = if a.random_ties {
                let tie = TieBreak::Seeded(cli.seed.unwrap_or(0));
                match (a.objective, algorithm) {
                    (Objective::Vmax, Algorithm::Gva) => greedy(&inst, SortKey::ValuationDesc, tie),
                    (Objective::Vmax, Algorithm::Gma) => greedy(&inst, SortKey::MagnitudeAsc, tie),
                    (Objective::Vmax, Algorithm::Gra) => {
                        greedy(&inst, SortKey::EfficiencyDesc, tie)
                    }
                    (Objective::Vmax, Algorithm::Gda) => gda_with(&inst, tie),
                    _ => {
                        return Err(Error::InvalidConfig(
                            "--random-ties applies to the valuation-maximising greedy algorithms"
                                .into(),
                        ))
                    }
                }
            } else {
                solve(&inst, algorithm, a.objective, budget)?
            };
            emit(a.output.as_deref(), &(solution_to_json(&solution) + "\n"))
        }
        Command::Oracle(a) => {
            let inst = load(cli, &a.instance)?;
            if a.lp_bound {
                if a.objective == Objective::Cmin {
                    return Err(Error::InvalidConfig(
                        "the fractional bound only applies to valuation maximisation".into(),
                    ));
                }
                let v = serde_json::json!({ "lp_upper_bound": lp_upper_bound(&inst) });
                return emit(a.output.as_deref(), &format!("{v:#}\n"));
            }
            let budget = OracleBudget::new(a.max_n)?;
            let solution = solve(&inst, Algorithm::Oracle, a.objective, budget)?;
            emit(a.output.as_deref(), &(solution_to_json(&solution) + "\n"))
        }
        Command::Bench(a) => {
            let mut plan: TrialPlan = read_json(&a.plan)?;
            if let Some(t) = a.threads {
                plan.threads = t;
            }
            if let Some(seed) = cli.seed {
                plan.scenario.seed = seed;
            }
            let report = run_benchmark(&plan)?;
            match &a.output {
                Some(path) => emit_csv(&report, path),
                None => write_csv(&report, std::io::stdout().lock()).map_err(|source| Error::Csv {
                    path: PathBuf::from("<stdout>"),
                    source,
                }),
            }
        }
        Command::Simulate(a) => {
            let mut cfg: DynamicConfig = match &a.config {
                Some(path) => read_json(path)?,
                None => DynamicConfig::default(),
            };
            if let Some(s) = &a.scenario {
                cfg.base.scenario = s.parse()?;
            }
            if let Some(n) = a.n {
                cfg.base.n = n;
            }
            if let Some(alg) = &a.algorithm {
                cfg.algorithm = alg.parse()?;
            }
            if let Some(obj) = a.objective {
                cfg.objective = obj;
            }
            if let Some(h) = a.horizon {
                cfg.horizon_s = h;
            }
            if let Some(seed) = cli.seed {
                cfg.seed = seed;
            }
            cfg.oracle_overlay |= a.oracle_overlay;
            let trace = run_dynamic_capacity(&cfg)?;
            match &a.output {
                Some(path) => emit_trace_csv(&trace, path),
                None => {
                    write_trace_csv(&trace, std::io::stdout().lock()).map_err(|source| Error::Csv {
                        path: PathBuf::from("<stdout>"),
                        source,
                    })
                }
            }
        }
    }
}
