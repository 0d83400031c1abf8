//! `viaphy` command-line frontend.
//!
//! Exit codes: 0 success, 1 input error, 2 resource or feasibility failure,
//! 3 `verify` found a ratio below the guaranteed floor.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use viaphy::reductions::{generate_maxcov, generate_sat, generate_vertexcover, CnfInput, CoverageInput, VertexCoverInput};
use viaphy::{
    is_viable, solve, truncated_depth, viable_extension, Algorithm, Instance, Limits, PdOracle, Report, SolverConfig,
    SpeciesSet, SubmodularOracle,
};

type W = u64;

const LIMITS_ENV: &str = "VIAPHY_LIMITS";

#[derive(Debug, Parser)]
#[command(name = "viaphy", version, about = "Phylogenetic diversity under food-web viability constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Faller,
    #[value(name = "greedy_p")]
    GreedyP,
    #[value(name = "enum_p")]
    EnumP,
    Exact,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Faller => Algorithm::Faller,
            AlgorithmArg::GreedyP => Algorithm::GreedyP,
            AlgorithmArg::EnumP => Algorithm::EnumP,
            AlgorithmArg::Exact => Algorithm::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Maxcov,
    Vc,
    Sat,
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value = "greedy_p")]
    algorithm: AlgorithmArg,
    /// Candidate-set size for greedy_p and enum_p.
    #[arg(long, default_value_t = 1)]
    p: usize,
    /// Cap on subsets examined while seeding enum_p.
    #[arg(long)]
    seed_cap: Option<u64>,
    /// Worker threads for candidate evaluation.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Print one JSON object instead of a table.
    #[arg(long)]
    json: bool,
    /// Report `elapsed_ms` as null, for reproducible output.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, clap::Args)]
struct SetArgs {
    instance: PathBuf,
    /// Comma-separated species names.
    #[arg(long, default_value = "")]
    set: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance.
    Solve(SolveArgs),
    /// Solve, compare against the exact optimum and check the guaranteed floor.
    Verify(SolveArgs),
    /// Is the set viable?
    Check(SetArgs),
    /// Phylogenetic diversity of the set.
    Pd(SetArgs),
    /// Minimum viable extension of the set.
    Extend(SetArgs),
    /// Longest food-chain length and truncated depth.
    Depth {
        instance: PathBuf,
        /// Budget to truncate at; defaults to the instance budget.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Build an instance from a coverage, graph or CNF source file.
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        source: PathBuf,
        /// Number of sets / vertices to pick (maxcov and vc).
        #[arg(long)]
        k: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: viaphy::Error },
    #[error(transparent)]
    Core(#[from] viaphy::Error),
    #[error("{0}")]
    Usage(String),
    #[error("ratio below the guaranteed floor")]
    VerifyFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_resource_failure() => 2,
            CliError::VerifyFailed => 3,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> Result<Instance<W>> {
    Instance::parse(&read(path)?).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn limits() -> Result<Limits> {
    let mut limits = Limits::default();
    if let Ok(spec) = std::env::var(LIMITS_ENV) {
        limits
            .apply_overrides(&spec)
            .map_err(|e| CliError::Usage(format!("{LIMITS_ENV}: {e}")))?;
    }
    Ok(limits)
}

fn solver_config(args: &SolveArgs) -> Result<SolverConfig> {
    if args.p == 0 {
        return Err(CliError::Usage("--p must be at least 1".into()));
    }
    let mut limits = limits()?;
    if let Some(cap) = args.seed_cap {
        limits.max_seeds = cap;
    }
    Ok(SolverConfig::new(args.algorithm.into())
        .with_p(args.p)
        .with_limits(limits)
        .with_threads(args.threads))
}

fn print_report(out: &mut impl Write, rep: &Report, json: bool) -> io::Result<()> {
    if json {
        return writeln!(out, "{}", rep.to_json());
    }
    let alg = match rep.p {
        Some(p) => format!("{} (p={p})", rep.algorithm),
        None => rep.algorithm.clone(),
    };
    writeln!(out, "algorithm  {alg}")?;
    writeln!(out, "species    {}", rep.n)?;
    writeln!(out, "budget     {}", rep.k)?;
    writeln!(out, "depth      {}", rep.d)?;
    writeln!(out, "value      {}", rep.value)?;
    writeln!(out, "set        {}", rep.set.join(","))?;
    writeln!(out, "viable     {}", rep.viable)?;
    if let Some(opt) = rep.optimum {
        writeln!(out, "optimum    {opt}")?;
    }
    if let Some(ratio) = rep.ratio {
        writeln!(out, "ratio      {ratio:.4}")?;
    }
    if rep.optimum.is_some() {
        match rep.floor {
            Some(floor) => writeln!(out, "floor      {floor:.4}")?,
            None => writeln!(out, "floor      n/a (no guarantee)")?,
        }
        let verdict = match rep.passes() {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "report-only",
        };
        writeln!(out, "verdict    {verdict}")?;
    }
    if let Some(ms) = rep.elapsed_ms {
        writeln!(out, "elapsed    {ms} ms")?;
    }
    Ok(())
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

fn run(cli: Cli) -> Result<()> {
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Solve(args) => {
            let inst = load(&args.instance)?;
            let cfg = solver_config(&args)?;
            let r = solve(&inst, &cfg)?;
            let rep = Report::new(&inst, &r, !args.no_timing);
            print_report(&mut out, &rep, args.json).map_err(stdout_err)?;
        }
        Command::Verify(args) => {
            let inst = load(&args.instance)?;
            let cfg = solver_config(&args)?;
            let r = solve(&inst, &cfg)?;
            let exact_cfg = SolverConfig::new(Algorithm::Exact).with_limits(cfg.limits.clone());
            let opt = solve(&inst, &exact_cfg)?;
            let rep = Report::new(&inst, &r, !args.no_timing).with_optimum(r.value, opt.value);
            print_report(&mut out, &rep, args.json).map_err(stdout_err)?;
            if rep.passes() == Some(false) {
                return Err(CliError::VerifyFailed);
            }
        }
        Command::Check(args) => {
            let (inst, set) = load_with_set(&args)?;
            writeln!(out, "{}", is_viable(&set, &inst.web)?).map_err(stdout_err)?;
        }
        Command::Pd(args) => {
            let (inst, set) = load_with_set(&args)?;
            let value = PdOracle::new(&inst.tree).value(&set)?;
            writeln!(out, "{value}").map_err(stdout_err)?;
        }
        Command::Extend(args) => {
            let (inst, set) = load_with_set(&args)?;
            let ext = viable_extension(&set, &inst.web, &SpeciesSet::new())?;
            writeln!(out, "{}", inst.species().format_set(&ext)).map_err(stdout_err)?;
        }
        Command::Depth { instance, k } => {
            let inst = load(&instance)?;
            let info = truncated_depth(&inst.web, k.unwrap_or(inst.budget));
            writeln!(out, "d={} longest_path_len={}", info.d, info.longest_path_len).map_err(stdout_err)?;
        }
        Command::Generate { kind, source, k, out: path } => {
            let text = read(&source)?;
            let need_k = || k.ok_or_else(|| CliError::Usage("--k is required for this kind".into()));
            let input_err = |source_err: viaphy::Error| CliError::Input {
                path: source.clone(),
                source: source_err,
            };
            let inst: Instance<W> = match kind {
                Kind::Maxcov => {
                    let input = CoverageInput::parse(&text, need_k()?).map_err(input_err)?;
                    generate_maxcov(&input)?
                }
                Kind::Vc => {
                    let input = VertexCoverInput::parse(&text, need_k()?).map_err(input_err)?;
                    generate_vertexcover(&input)?
                }
                Kind::Sat => generate_sat(&CnfInput::parse(&text).map_err(input_err)?)?,
            };
            match path {
                Some(p) => fs::write(&p, inst.to_text()).map_err(|source| CliError::Io { path: p, source })?,
                None => out.write_all(inst.to_text().as_bytes()).map_err(stdout_err)?,
            }
        }
    }
    Ok(())
}

fn load_with_set(args: &SetArgs) -> Result<(Instance<W>, SpeciesSet)> {
    let inst = load(&args.instance)?;
    let set = inst.species().parse_set(&args.set)?;
    Ok((inst, set))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerifyFailed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
