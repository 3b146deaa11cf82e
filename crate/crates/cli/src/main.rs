use clap::{Args, Parser, Subcommand};
use fairkc::audit::{min_alpha_nr, min_alpha_proportional, socially_fair_cost};
use fairkc::bounds::{DsBounds, GfBounds};
use fairkc::generators::{gen_l_community, gen_proportional_gadget, gen_random, ColorPattern};
use fairkc::harness::{
    emit_report, load_instance, load_solution, run_experiment, save_instance, save_solution, Algorithm,
    ExperimentFile, Format, IoError, ReportFormat,
};
use fairkc::instance::Instance;
use fairkc::metrics::evaluate;
use fairkc::oracle::{brute_force_opt, OracleError};
use fairkc::solution::Solution;
use fairkc::solvers::{alg_ds, alg_gf, ds_to_gfds, gf_to_gfds, gonzalez, SolverError};
use serde_json::json;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fairkc", version, about = "Fair k-center clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as a distance-matrix JSON file.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Run one algorithm and write its solution.
    Solve(SolveArgs),
    /// Print violations and audit values of a solution.
    Evaluate(EvaluateArgs),
    /// Exact optimum by exhaustive search (small instances only).
    Oracle(OracleArgs),
    /// Compare all algorithms over several k as described by a JSON config.
    Experiment {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Groups of coinciding points, pairwise at distance R.
    LCommunity {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value = "alternating")]
        pattern: String,
        #[arg(long)]
        output: PathBuf,
    },
    /// Two-color star layout used to audit proportional fairness.
    Gadget {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        group_size: usize,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long)]
        output: PathBuf,
    },
    /// Uniform random points in the unit cube.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Comma-separated color proportions, e.g. 0.7,0.3
        #[arg(long, value_delimiter = ',')]
        proportions: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, default_value_t = 0.2)]
    delta: f64,
    #[arg(long, default_value_t = 0.8)]
    theta: f64,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    algo: Algorithm,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    bounds: BoundArgs,
    /// Seeds the first color-blind center; point 0 otherwise.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long)]
    solution: PathBuf,
    #[arg(long)]
    input: PathBuf,
    /// Budget for the quotas and audits; defaults to the number of centers.
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    bounds: BoundArgs,
    #[arg(long, default_value_t = 1)]
    p: u32,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    /// Enforce group proportions derived from this delta.
    #[arg(long)]
    delta: Option<f64>,
    /// Enforce center quotas derived from this theta.
    #[arg(long)]
    theta: Option<f64>,
    /// Allowed additive proportion violation.
    #[arg(long, default_value_t = 0.0)]
    rho: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }

    fn usage(message: impl Display) -> Self {
        Self::new(1, message)
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Io { .. } => Failure::new(1, e),
            _ => Failure::new(3, e),
        }
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        Failure::new(if e.is_infeasible() { 2 } else { 1 }, e)
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::new(if e == OracleError::Infeasible { 2 } else { 1 }, e)
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    load_instance(path, Format::from_path(path)).map_err(|e| match e {
        IoError::Io { .. } => Failure::from(e),
        _ => Failure::new(3, format!("{}: {e}", path.display())),
    })
}

fn gf_bounds(inst: &Instance, delta: f64) -> Result<GfBounds, Failure> {
    GfBounds::from_delta(inst, delta).map_err(|e| Failure::new(2, e))
}

fn ds_bounds(inst: &Instance, k: usize, theta: f64) -> Result<DsBounds, Failure> {
    DsBounds::from_theta(inst, k, theta).map_err(|e| Failure::new(2, e))
}

fn generate(family: Family) -> Result<(), Failure> {
    let (inst, output) = match family {
        Family::LCommunity {
            l,
            size,
            r,
            pattern,
            output,
        } => {
            let pattern: ColorPattern = serde_json::from_value(json!(pattern))
                .map_err(|_| Failure::usage(format!("unknown pattern `{pattern}`")))?;
            (gen_l_community(l, size, r, pattern), output)
        }
        Family::Gadget {
            k,
            group_size,
            r,
            alpha,
            output,
        } => (gen_proportional_gadget(k, group_size, r, alpha), output),
        Family::Random {
            n,
            dim,
            proportions,
            seed,
            output,
        } => (gen_random(n, proportions.len(), dim, &proportions, seed), output),
    };
    let inst = inst.map_err(Failure::usage)?;
    save_instance(&inst, &output)?;
    Ok(())
}

fn solve(args: SolveArgs) -> Result<(), Failure> {
    let inst = load(&args.input)?;
    let k = args.k;
    let gfb = || gf_bounds(&inst, args.bounds.delta);
    let dsb = || ds_bounds(&inst, k, args.bounds.theta);
    let sol: Solution = match args.algo {
        Algorithm::ColorBlind => gonzalez(&inst, k, args.seed)?,
        Algorithm::AlgGf => alg_gf(&inst, k, &gfb()?, args.seed)?.solution,
        Algorithm::AlgDs => alg_ds(&inst, &dsb()?)?,
        Algorithm::GfToGfds => {
            let g = gfb()?;
            let start = alg_gf(&inst, k, &g, args.seed)?.solution;
            gf_to_gfds(&inst, &start, &g, &dsb()?)?.solution
        }
        Algorithm::DsToGfds => {
            let d = dsb()?;
            let start = alg_ds(&inst, &d)?;
            ds_to_gfds(&inst, &start, &gfb()?, &d)?.solution
        }
    };
    save_solution(&sol, &args.output)?;
    Ok(())
}

fn real(v: f64) -> serde_json::Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!("inf")
    }
}

fn evaluate_cmd(args: EvaluateArgs) -> Result<(), Failure> {
    let inst = load(&args.input)?;
    let sol = load_solution(&args.solution, inst.n())?;
    let k = args.k.unwrap_or(sol.centers().len()).max(1);
    let gfb = gf_bounds(&inst, args.bounds.delta)?;
    let dsb = ds_bounds(&inst, k, args.bounds.theta)?;
    let report = evaluate(&inst, &sol, &gfb, &dsb);
    let out = json!({
        "violations": report,
        "min_alpha_nr": real(min_alpha_nr(&inst, &sol, k)),
        "min_alpha_proportional": real(min_alpha_proportional(&inst, &sol, k)),
        "socially_fair_cost": real(socially_fair_cost(&inst, &sol, args.p)),
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("json value"));
    Ok(())
}

fn oracle(args: OracleArgs) -> Result<(), Failure> {
    let inst = load(&args.input)?;
    let gfb = args.delta.map(|d| gf_bounds(&inst, d)).transpose()?;
    let dsb = args.theta.map(|t| ds_bounds(&inst, args.k, t)).transpose()?;
    let res = brute_force_opt(&inst, args.k, gfb.as_ref(), dsb.as_ref(), args.rho)?;
    println!(
        "{}",
        json!({ "cost": res.cost, "centers": res.solution.centers() })
    );
    if let Some(path) = args.output {
        save_solution(&res.solution, &path)?;
    }
    Ok(())
}

fn experiment(config: &Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(config)
        .map_err(|e| Failure::from(IoError::Io { path: config.to_path_buf(), source: e }))?;
    let file: ExperimentFile = serde_json::from_str(&text)
        .map_err(|e| Failure::new(3, format!("{}: {e}", config.display())))?;
    // relative paths are taken from the config's directory
    let base = config.parent().unwrap_or(Path::new("."));
    let input = base.join(&file.input);
    let output = base.join(&file.output);
    let inst = load(&input)?;
    let outcome = run_experiment(&inst, &file.config).map_err(|e| Failure::new(2, e))?;
    let format = match output.extension().and_then(|e| e.to_str()) {
        Some("csv") => ReportFormat::Csv,
        _ => ReportFormat::Json,
    };
    emit_report(&outcome.report, &output, format)?;
    let timings = output.with_extension("timings.json");
    std::fs::write(
        &timings,
        serde_json::to_string_pretty(&outcome.timings).expect("timings serialize"),
    )
    .map_err(|e| Failure::from(IoError::Io { path: timings, source: e }))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version requests are not failures
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Generate { family } => generate(family),
        Command::Solve(args) => solve(args),
        Command::Evaluate(args) => evaluate_cmd(args),
        Command::Oracle(args) => oracle(args),
        Command::Experiment { config } => experiment(&config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
