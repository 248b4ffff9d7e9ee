//! `schedrl`: train, evaluate and compare cluster scheduling agents.

mod config_file;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use schedrl_core::agent::{load_params, PpoConfig, SavedAgent};
use schedrl_core::env::{parse_env_spec, Env, EnvConfig, EnvVariant, Representation};
use schedrl_core::experiments::{
    emit_plots, evaluate, measure_training_time, run_training, transfer_matrix, write_csv, EvalRow,
    Manifest, PolicySpec, TrainingRun,
};
use schedrl_core::proto;
use schedrl_core::scenario::ScenarioConfig;
use schedrl_core::stats::{mean, welch_t_test};
use schedrl_core::workload::load_trace;

const PAPER_STEPS: u64 = 3_000_000;
const PAPER_TRIALS: usize = 1000;
const PAPER_SEEDS: u64 = 6;
const DESK_TRIALS: usize = 200;

#[derive(Debug, Parser)]
#[command(name = "schedrl", version, about, args_override_self = true)]
struct Cli {
    /// Flat `key = value` file of flag values; explicit flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train PPO agents, one per seed.
    Train(TrainArgs),
    /// Evaluate policies over independent trials.
    Eval(EvalArgs),
    /// Evaluate one compact agent on many scenarios without retraining.
    Transfer(TransferArgs),
    /// Time training of compact vs image agents at two horizons.
    BenchTime(BenchArgs),
    /// Render learning curves and slowdown reports as SVG.
    Plot(PlotArgs),
    /// Serve an environment over newline-delimited JSON.
    Serve(ServeArgs),
}

fn default_variant() -> String {
    EnvVariant::compact_sparse_window().to_string()
}

#[derive(Debug, Args, Serialize)]
struct TrainArgs {
    #[arg(long, default_value_t = 1)]
    scenario: u32,
    /// Environment variant, e.g. `rep=compact,trans=sparse,rew=window`.
    #[arg(long, default_value_t = default_variant())]
    env: String,
    /// Comma-separated seeds.
    #[arg(long, value_delimiter = ',')]
    seeds: Vec<u64>,
    /// Agent steps per seed.
    #[arg(long)]
    steps: Option<u64>,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    n_steps: Option<usize>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    entropy_coef: Option<f64>,
    /// Multiplier on rewards seen by the learner (curves stay unscaled).
    #[arg(long)]
    reward_scale: Option<f64>,
    /// 3M steps and six seeds per scenario.
    #[arg(long)]
    paper_scale: bool,
    #[arg(long, default_value = "runs")]
    out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
struct EvalArgs {
    /// `random`, `fcfs`, `sjf`, `packer` or `agent:<params file>`; repeat or
    /// comma-separate for several.
    #[arg(long, value_delimiter = ',', required = true)]
    policy: Vec<String>,
    /// Scenario ids, or `all`.
    #[arg(long, default_value = "1")]
    scenarios: String,
    #[arg(long, default_value_t = default_variant())]
    env: String,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Replay this trace in every trial instead of generating workloads.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Sample agent actions instead of taking the most likely one.
    #[arg(long)]
    stochastic: bool,
    #[arg(long)]
    paper_scale: bool,
    #[arg(long, default_value = "eval.csv")]
    out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
struct TransferArgs {
    /// Params file of the agent to transfer.
    #[arg(long)]
    params: PathBuf,
    #[arg(long, default_value = "all")]
    scenarios: String,
    /// `<scenario>=<params file>` specialist to compare against; repeatable.
    #[arg(long)]
    specialist: Vec<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    stochastic: bool,
    #[arg(long)]
    paper_scale: bool,
    #[arg(long, default_value = "transfer.csv")]
    out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
struct BenchArgs {
    #[arg(long, default_value_t = 6)]
    scenario: u32,
    /// Agent steps per timed run.
    #[arg(long, default_value_t = 500)]
    steps: u64,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [20, 60])]
    horizons: Vec<usize>,
    #[arg(long, default_value = "bench_time.csv")]
    out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
struct PlotArgs {
    /// Curve or report CSV files.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, default_value = "plots")]
    out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
enum Transport {
    Stdio,
    Tcp,
}

#[derive(Debug, Args, Serialize)]
struct ServeArgs {
    /// Variant string, optionally with `scenario=<id>` (default 1).
    #[arg(long, default_value_t = default_variant())]
    env: String,
    #[arg(long, value_enum, default_value_t = Transport::Stdio)]
    transport: Transport,
    /// Listen address for the tcp transport.
    #[arg(long, default_value = "127.0.0.1:7878")]
    addr: String,
}

fn parse_scenarios(s: &str) -> Result<Vec<u32>> {
    if s == "all" {
        return Ok(ScenarioConfig::all().iter().map(|c| c.id).collect());
    }
    s.split(',')
        .map(|x| {
            let id: u32 = x.trim().parse().with_context(|| format!("bad scenario id {x:?}"))?;
            ScenarioConfig::get(id)?;
            Ok(id)
        })
        .collect()
}

fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().unwrap_or_default().to_string_lossy();
    out.with_file_name(format!("{stem}_{suffix}"))
}

fn ensure_parent(path: &Path) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    Ok(())
}

fn read_agent(path: &Path) -> Result<SavedAgent> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(load_params(BufReader::new(file)).with_context(|| format!("loading {}", path.display()))?)
}

fn train_cmd(args: &TrainArgs) -> Result<()> {
    let variant: EnvVariant = args.env.parse()?;
    let mut ppo = PpoConfig {
        total_steps: if args.paper_scale { PAPER_STEPS } else { PpoConfig::default().total_steps },
        ..PpoConfig::default()
    };
    if let Some(s) = args.steps {
        ppo.total_steps = s;
    }
    if let Some(v) = args.learning_rate {
        ppo.learning_rate = v;
    }
    if let Some(v) = args.n_steps {
        ppo.n_steps = v;
    }
    if let Some(v) = args.epochs {
        ppo.epochs = v;
    }
    if let Some(v) = args.entropy_coef {
        ppo.entropy_coef = v;
    }
    if let Some(v) = args.reward_scale {
        ppo.reward_scale = v;
    }
    let seeds = match (&args.seeds[..], args.paper_scale) {
        ([], true) => (1..=PAPER_SEEDS).collect(),
        ([], false) => vec![1],
        (s, _) => s.to_vec(),
    };
    let run = TrainingRun {
        scenario: args.scenario,
        variant,
        ppo,
        seeds,
        out_dir: args.out.clone(),
    };
    let outcomes = run_training(&run)?;
    let mut failed = 0;
    for o in &outcomes {
        match &o.error {
            None => println!(
                "seed {}: {} episodes, final mean return {:.3}",
                o.seed,
                o.episodes,
                o.final_mean_return.unwrap_or(f64::NAN)
            ),
            Some(e) => {
                failed += 1;
                eprintln!("seed {}: failed: {e}", o.seed);
            }
        }
    }
    println!("aggregate curve: {}", run.aggregate_path().display());
    if failed == outcomes.len() {
        bail!("all {failed} training runs failed");
    }
    Ok(())
}

#[derive(Serialize)]
struct WelchRow {
    scenario: u32,
    policy_a: String,
    policy_b: String,
    mean_a: f64,
    mean_b: f64,
    t: Option<f64>,
    dof: Option<f64>,
    p_value: Option<f64>,
}

fn pairwise(rows: &[EvalRow]) -> Vec<WelchRow> {
    let mut out = Vec::new();
    for (i, a) in rows.iter().enumerate() {
        for b in rows[i + 1..].iter().filter(|b| b.scenario == a.scenario) {
            let w = welch_t_test(&a.slowdowns, &b.slowdowns).ok();
            out.push(WelchRow {
                scenario: a.scenario,
                policy_a: a.policy.clone(),
                policy_b: b.policy.clone(),
                mean_a: a.mean_slowdown,
                mean_b: b.mean_slowdown,
                t: w.map(|w| w.t),
                dof: w.map(|w| w.dof),
                p_value: w.map(|w| w.p),
            });
        }
    }
    out
}

fn eval_cmd(args: &EvalArgs) -> Result<()> {
    let (variant, scenario_in_spec) = parse_env_spec(&args.env)?;
    let scenarios = match scenario_in_spec {
        Some(id) => vec![id],
        None => parse_scenarios(&args.scenarios)?,
    };
    let trials = args
        .trials
        .unwrap_or(if args.paper_scale { PAPER_TRIALS } else { DESK_TRIALS });
    let policies = args
        .policy
        .iter()
        .map(|p| PolicySpec::parse(p, !args.stochastic))
        .collect::<Result<Vec<_>, _>>()?;
    let trace = args
        .trace
        .as_ref()
        .map(|p| -> Result<_> {
            let f = File::open(p).with_context(|| format!("opening {}", p.display()))?;
            Ok(load_trace(BufReader::new(f))?)
        })
        .transpose()?;

    let mut rows = Vec::new();
    for &id in &scenarios {
        let config = EnvConfig::new(variant, ScenarioConfig::get(id)?)?;
        let template = match &trace {
            Some(t) => Env::with_trace(config, t.clone())?,
            None => Env::new(config)?,
        };
        for policy in &policies {
            let row = evaluate(policy, &template, trials, args.seed)
                .with_context(|| format!("evaluating {policy} on scenario {id}"))?;
            println!(
                "scenario {:>2}  {:<20} mean slowdown {:.4}  std {:.4}  ({} trials, {} empty)",
                row.scenario, row.policy, row.mean_slowdown, row.std_slowdown, row.trials, row.empty_episodes
            );
            rows.push(row);
        }
    }
    ensure_parent(&args.out)?;
    write_csv(&args.out, &rows)?;
    let comparisons = pairwise(&rows);
    if !comparisons.is_empty() {
        write_csv(&sidecar(&args.out, "welch.csv"), &comparisons)?;
    }
    Manifest::new("eval", args).write(&sidecar(&args.out, "manifest.json"))?;
    Ok(())
}

fn transfer_cmd(args: &TransferArgs) -> Result<()> {
    let agent = read_agent(&args.params)?;
    if agent.variant.representation == Representation::Image {
        eprintln!("warning: image agents only run on clusters with the processor count they were trained on");
    }
    let scenarios = parse_scenarios(&args.scenarios)?;
    let mut specialists = BTreeMap::new();
    for s in &args.specialist {
        let (id, path) = s
            .split_once('=')
            .with_context(|| format!("--specialist expects <scenario>=<file>, got {s:?}"))?;
        specialists.insert(id.trim().parse::<u32>()?, read_agent(Path::new(path))?);
    }
    let trials = args
        .trials
        .unwrap_or(if args.paper_scale { PAPER_TRIALS } else { DESK_TRIALS });
    let rows = transfer_matrix(&agent, &scenarios, &specialists, trials, args.seed, !args.stochastic)?;
    for r in &rows {
        print!(
            "scenario {:>2}  transferred {:.4} ± {:.4}",
            r.scenario, r.transferred_mean, r.transferred_std
        );
        if let (Some(m), Some(p)) = (r.specialist_mean, r.p_value) {
            print!("  specialist {m:.4}  p = {p:.3e}");
        }
        println!();
    }
    let compared: Vec<_> = rows.iter().filter_map(|r| r.transferred_better).collect();
    if !compared.is_empty() {
        let wins = compared.iter().filter(|&&w| w).count();
        println!(
            "transferred agent beats the specialist in {wins} of {} scenarios ({:.0}%)",
            compared.len(),
            100.0 * wins as f64 / compared.len() as f64
        );
    }
    ensure_parent(&args.out)?;
    write_csv(&args.out, &rows)?;
    Manifest::new("transfer", args).write(&sidecar(&args.out, "manifest.json"))?;
    Ok(())
}

fn bench_cmd(args: &BenchArgs) -> Result<()> {
    let mut rows = Vec::new();
    let mut means = BTreeMap::new();
    for rep in [Representation::Compact, Representation::Image] {
        for &h in &args.horizons {
            let variant = EnvVariant {
                representation: rep,
                horizon: h,
                ..EnvVariant::compact_sparse_window()
            };
            let timed = measure_training_time(variant, args.scenario, args.steps, args.reps, &PpoConfig::default())?;
            let secs: Vec<f64> = timed.iter().map(|r| r.seconds).collect();
            println!(
                "{:<8} H={:<3} inputs {:>6} params {:>9}  mean {:.3}s",
                format!("{rep:?}").to_lowercase(),
                h,
                timed[0].input_len,
                timed[0].param_count,
                mean(&secs)
            );
            means.insert((format!("{rep:?}").to_lowercase(), h), mean(&secs));
            rows.extend(timed);
        }
    }
    if let [lo, hi] = args.horizons[..] {
        for rep in ["compact", "image"] {
            let ratio = means[&(rep.to_string(), hi)] / means[&(rep.to_string(), lo)];
            println!("{rep}: H={hi}/H={lo} time ratio {ratio:.2}");
        }
    }
    ensure_parent(&args.out)?;
    write_csv(&args.out, &rows)?;
    Manifest::new("bench-time", args).write(&sidecar(&args.out, "manifest.json"))?;
    Ok(())
}

fn plot_cmd(args: &PlotArgs) -> Result<()> {
    for out in emit_plots(&args.inputs, &args.out_dir)? {
        println!("{}", out.display());
    }
    Ok(())
}

fn serve_cmd(args: &ServeArgs) -> Result<()> {
    let (variant, scenario) = parse_env_spec(&args.env)?;
    let config = EnvConfig::new(variant, ScenarioConfig::get(scenario.unwrap_or(1))?)?;
    match args.transport {
        Transport::Stdio => {
            let stdin = std::io::stdin();
            proto::serve(config, stdin.lock(), BufWriter::new(std::io::stdout().lock()))?;
        }
        Transport::Tcp => {
            let listener = std::net::TcpListener::bind(&args.addr)
                .with_context(|| format!("binding {}", args.addr))?;
            eprintln!("listening on {}", listener.local_addr()?);
            for stream in listener.incoming() {
                let stream = stream?;
                let reader = BufReader::new(stream.try_clone()?);
                if let Err(e) = proto::serve(config, reader, BufWriter::new(stream)) {
                    eprintln!("session ended: {e}");
                }
            }
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    let argv = config_file::expand(std::env::args().collect())?;
    let cli = Cli::parse_from(argv);
    if let Some(path) = &cli.config {
        eprintln!("flags from {}", path.display());
    }
    match &cli.command {
        Command::Train(a) => train_cmd(a),
        Command::Eval(a) => eval_cmd(a),
        Command::Transfer(a) => transfer_cmd(a),
        Command::BenchTime(a) => bench_cmd(a),
        Command::Plot(a) => plot_cmd(a),
        Command::Serve(a) => serve_cmd(a),
    }
}
