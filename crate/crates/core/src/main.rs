use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lattice_greedy::bench::{SuiteParams, SweepParams};
use lattice_greedy::profit::{
    monte_carlo_spread, parse_instance, parse_strategy, serialize_instance, BipartiteInstance,
    GeneratorParams, ProfitOracle, StrategyDocument,
};
use lattice_greedy::rng::{RngStream, StreamLabel};
use lattice_greedy::solvers::{
    bsdg_solve, exhaustive_scan, unit_double_greedy, Algorithm, CoordinateTrace,
};
use lattice_greedy::verification::{
    check_dr, check_lattice_submodular, check_nonmonotone, CheckConfig, DEFAULT_TOL,
};
use lattice_greedy::{Error, Result};

#[derive(Parser)]
#[command(
    name = "lattice-greedy",
    version,
    about = "Double greedy maximization of bipartite marketing profit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Gen(GenArgs),
    /// Maximize the profit of an instance.
    Solve(SolveArgs),
    /// Evaluate a strategy file against an instance.
    Eval(EvalArgs),
    /// Check DR-submodularity, lattice submodularity, non-monotonicity and the spread formula.
    Verify(VerifyArgs),
    /// Run the approximation-ratio suite and the query-count sweep.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 4)]
    sources: usize,
    #[arg(long, default_value_t = 8)]
    targets: usize,
    #[arg(long, default_value_t = 0.5)]
    edge_prob: f64,
    #[arg(long, default_value_t = 1)]
    cap_min: u64,
    #[arg(long, default_value_t = 6)]
    cap_max: u64,
    #[arg(long, default_value_t = 0.1)]
    p1_min: f64,
    #[arg(long, default_value_t = 0.9)]
    p1_max: f64,
    #[arg(long, default_value_t = 0.5)]
    decay_min: f64,
    #[arg(long, default_value_t = 0.95)]
    decay_max: f64,
    #[arg(long, default_value_t = 0.3)]
    cost_min: f64,
    #[arg(long, default_value_t = 0.9)]
    cost_max: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    Bsdg,
    Unit,
    Exhaustive,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = AlgArg::Bsdg)]
    alg: AlgArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    instance: PathBuf,
    strategy: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    mc_trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Write the full report as JSON.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    runs: u64,
    #[arg(long, default_value_t = 100)]
    instances: usize,
    /// Largest exponent k of the B = 2^k query sweep.
    #[arg(long, default_value_t = 14)]
    sweep_max: u32,
    /// Ratio report CSV.
    #[arg(short, long)]
    output: PathBuf,
    /// Query sweep table; defaults to the CSV path with a `.dat` extension.
    #[arg(long)]
    table: Option<PathBuf>,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::DrViolation { .. } => 1,
        Error::BoxTooLarge { .. } => 3,
        _ => 2,
    }
}

fn read_instance(path: &Path) -> Result<BipartiteInstance> {
    parse_instance(&fs::read_to_string(path)?)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

fn gen(args: GenArgs) -> Result<u8> {
    let params = GeneratorParams {
        n_sources: args.sources,
        n_targets: args.targets,
        edge_prob: args.edge_prob,
        cap_range: (args.cap_min, args.cap_max),
        p1_range: (args.p1_min, args.p1_max),
        decay_range: (args.decay_min, args.decay_max),
        cost_fraction_range: (args.cost_min, args.cost_max),
    };
    let mut rng = RngStream::new(args.seed).child(StreamLabel::Generator, 0);
    let inst = params.generate(&mut rng)?;
    fs::write(&args.output, serialize_instance(&inst))?;
    println!(
        "n_sources={} n_targets={} edges={} max_capacity={}",
        inst.n_sources(),
        inst.n_targets(),
        inst.n_edges(),
        inst.capacities().max_cap()
    );
    Ok(0)
}

#[derive(Serialize)]
struct SolveOutput {
    algorithm: Algorithm,
    levels: BTreeMap<String, u64>,
    value: f64,
    raw_queries: u64,
    seed: u64,
    trace: Vec<CoordinateTrace>,
}

fn solve(args: SolveArgs) -> Result<u8> {
    let inst = read_instance(&args.instance)?;
    let oracle = ProfitOracle::new(inst.clone());
    let (algorithm, solution, value, raw_queries, trace) = match args.alg {
        AlgArg::Bsdg | AlgArg::Unit => {
            let r = match args.alg {
                AlgArg::Bsdg => bsdg_solve(&oracle, args.seed)?,
                _ => unit_double_greedy(&oracle, args.seed)?,
            };
            (r.algorithm, r.solution, r.value, r.raw_queries, r.trace)
        }
        AlgArg::Exhaustive => {
            let s = exhaustive_scan(&oracle)?;
            let queries = u64::try_from(s.points).unwrap_or(u64::MAX);
            (Algorithm::Exhaustive, s.argmax, s.max, queries, Vec::new())
        }
    };
    let out = SolveOutput {
        algorithm,
        levels: StrategyDocument::from_point(&inst, &solution).levels,
        value,
        raw_queries,
        seed: args.seed,
        trace,
    };
    if let Some(path) = &args.output {
        write_json(path, &out)?;
    }
    println!("value={value} queries={raw_queries} seed={}", args.seed);
    Ok(0)
}

fn eval(args: EvalArgs) -> Result<u8> {
    let inst = read_instance(&args.instance)?;
    let m = parse_strategy(&fs::read_to_string(&args.strategy)?)?.to_point(&inst)?;
    let oracle = ProfitOracle::new(inst);
    println!(
        "profit={} spread={} cost={}",
        oracle.profit(&m)?,
        oracle.influence_spread(&m)?,
        oracle.marketing_cost(&m)?
    );
    Ok(0)
}

#[derive(Serialize)]
struct SpreadCheck {
    levels: BTreeMap<String, u64>,
    closed_form: f64,
    mean: f64,
    std_error: f64,
    trials: u64,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyReport<D, L, W> {
    dr: D,
    lattice: L,
    nonmonotone: Option<W>,
    spread: SpreadCheck,
    passed: bool,
}

fn verify(args: VerifyArgs) -> Result<u8> {
    let inst = read_instance(&args.instance)?;
    let oracle = ProfitOracle::new(inst.clone());
    let config = CheckConfig {
        tol: args.tol,
        seed: RngStream::derive_seed(args.seed, StreamLabel::Sampling, 0),
        ..CheckConfig::default()
    };

    let dr = check_dr(&oracle, &config)?;
    println!(
        "dr: {} (mode {:?}, {} comparisons, {} violations)",
        pass_word(dr.passed()),
        dr.mode,
        dr.checked,
        dr.violation_count
    );
    for v in dr.violations.iter().take(10) {
        println!(
            "  x={} y={} e={} gain_x={} gain_y={}",
            v.x, v.y, v.coordinate, v.gain_at_x, v.gain_at_y
        );
    }

    let lattice = check_lattice_submodular(&oracle, &config)?;
    println!(
        "lattice: {} (mode {:?}, {} pairs, {} violations)",
        pass_word(lattice.passed()),
        lattice.mode,
        lattice.checked,
        lattice.violation_count
    );
    for v in lattice.violations.iter().take(10) {
        println!("  x={} y={} lhs={} rhs={}", v.x, v.y, v.lhs, v.rhs);
    }

    let witness = match check_nonmonotone(&oracle) {
        Ok(w) => {
            match &w {
                Some(w) => println!(
                    "nonmonotone: witness x={} y={} f(x)={} f(y)={}",
                    w.x, w.y, w.fx, w.fy
                ),
                None => println!("nonmonotone: none, objective is monotone"),
            }
            w
        }
        Err(e @ Error::BoxTooLarge { .. }) => {
            println!("nonmonotone: skipped, {e}");
            None
        }
        Err(e) => return Err(e),
    };

    let top = inst.capacities().top();
    let mut rng = RngStream::new(args.seed).child(StreamLabel::MonteCarlo, 0);
    let est = monte_carlo_spread(&inst, &top, args.mc_trials, &mut rng)?;
    let closed_form = oracle.influence_spread(&top)?;
    let spread = SpreadCheck {
        levels: StrategyDocument::from_point(&inst, &top).levels,
        closed_form,
        mean: est.mean,
        std_error: est.std_error,
        trials: est.trials,
        passed: est.agrees_with(closed_form, oracle.spread_variance(&top)?, 3.0),
    };
    println!(
        "spread: {} (closed form {}, simulated {} +/- {} over {} trials)",
        pass_word(spread.passed),
        closed_form,
        est.mean,
        est.std_error,
        est.trials
    );

    let passed = dr.passed() && lattice.passed() && spread.passed;
    if let Some(path) = &args.output {
        write_json(
            path,
            &VerifyReport {
                dr,
                lattice,
                nonmonotone: witness,
                spread,
                passed,
            },
        )?;
    }
    Ok(if passed { 0 } else { 1 })
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn bench(args: BenchArgs) -> Result<u8> {
    let suite = SuiteParams {
        instances: args.instances,
        runs: args.runs,
        ..SuiteParams::default()
    };
    let report = suite.run(args.seed)?;
    for (id, reason) in &report.skipped {
        eprintln!("skipped instance {id}: {reason}");
    }
    report.write_csv(fs::File::create(&args.output)?)?;

    let sweep = SweepParams {
        max_exp: args.sweep_max,
        min_exp: SweepParams::default().min_exp.min(args.sweep_max),
        ..SweepParams::default()
    }
    .run(args.seed)?;
    let table_path = args
        .table
        .unwrap_or_else(|| args.output.with_extension("dat"));
    sweep.write_table(fs::File::create(&table_path)?)?;

    let inv = report.invariants;
    println!(
        "instances={} runs={} flags={} skipped={} audit_failures={}",
        report.rows.len(),
        report.runs,
        report.flags(),
        report.skipped.len(),
        report.audit_failures
    );
    println!(
        "invariants: steps={} negative_pair_sums={} sandwich_violations={} iteration_overruns={} stalled_steps={}",
        inv.steps,
        inv.negative_pair_sums,
        inv.sandwich_violations,
        inv.iteration_overruns,
        inv.stalled_steps
    );
    if let Ok(fit) = sweep.bsdg_fit() {
        println!(
            "sweep: slope={} intercept={} max_residual={} relative={}",
            fit.slope,
            fit.intercept,
            fit.max_residual,
            fit.relative_residual()
        );
    }
    if let Some(ratio) = sweep.final_ratio() {
        println!("sweep: bsdg/unit at largest B = {ratio}");
    }

    let clean = report.flags() == 0 && report.audit_failures == 0 && inv.is_clean();
    Ok(if clean { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve(a),
        Command::Eval(a) => eval(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
