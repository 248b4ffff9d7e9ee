use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::ExperimentError;
use crate::agent::{load_params, AgentPolicy, SavedAgent};
use crate::baselines::{HeuristicKind, HeuristicPolicy, SchedulingPolicy};
use crate::cluster::{average_slowdown, rational_to_f64, MetricError};
use crate::derive_seed;
use crate::env::{Env, EnvConfig};
use crate::stats::{mean, std_dev};

/// Policy randomness is drawn from its own stream so that every policy sees
/// the same workloads for a given report seed.
const POLICY_STREAM: u64 = 0x5EED_0F_A11CE;

/// Something that can be evaluated: a heuristic or a trained agent.
#[derive(Debug, Clone)]
pub enum PolicySpec {
    Heuristic(HeuristicKind),
    Agent {
        agent: SavedAgent,
        label: String,
        greedy: bool,
    },
}

impl PolicySpec {
    /// Parses `random`, `fcfs`, `sjf`, `packer` or `agent:<params file>`.
    pub fn parse(spec: &str, greedy: bool) -> Result<Self, ExperimentError> {
        if let Some(path) = spec.strip_prefix("agent:") {
            let file = File::open(path)
                .map_err(|e| ExperimentError::Format(format!("cannot open {path}: {e}")))?;
            let agent = load_params(BufReader::new(file))?;
            let label = Path::new(path)
                .file_stem()
                .map_or_else(|| path.to_string(), |s| s.to_string_lossy().into_owned());
            return Ok(Self::Agent {
                agent,
                label: format!("agent:{label}"),
                greedy,
            });
        }
        spec.parse::<HeuristicKind>()
            .map(Self::Heuristic)
            .map_err(ExperimentError::Format)
    }

    pub fn label(&self) -> String {
        match self {
            Self::Heuristic(kind) => kind.to_string(),
            Self::Agent { label, .. } => label.clone(),
        }
    }

    /// Instantiates the policy for `config`, checking observation width.
    pub fn build(&self, config: &EnvConfig) -> Result<Box<dyn SchedulingPolicy + Send>, ExperimentError> {
        Ok(match self {
            Self::Heuristic(kind) => Box::new(HeuristicPolicy::new(*kind, 0)),
            Self::Agent { agent, greedy, .. } => {
                agent.check_compatible(config)?;
                Box::new(AgentPolicy::new(agent.net.clone(), config, *greedy)?)
            }
        })
    }
}

impl fmt::Display for PolicySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalRow {
    pub scenario: u32,
    pub policy: String,
    pub variant: String,
    pub trials: usize,
    pub seed: u64,
    /// Mean over episodes of the per-episode average slowdown.
    pub mean_slowdown: f64,
    pub std_slowdown: f64,
    /// Episodes in which no job completed; they have no slowdown and are left
    /// out of the mean and standard deviation.
    pub empty_episodes: usize,
    #[serde(skip)]
    pub slowdowns: Vec<f64>,
}

/// Average slowdown over the jobs completed so far, `None` if there are none.
pub fn episode_slowdown(env: &Env) -> Option<f64> {
    match average_slowdown(env.completed()) {
        Ok(s) => Some(rational_to_f64(&s)),
        Err(MetricError::Empty) => None,
        Err(MetricError::NotCompleted(_)) => unreachable!("completed list holds finished jobs"),
    }
}

fn run_episode(
    env: &mut Env,
    policy: &mut dyn SchedulingPolicy,
    workload_seed: u64,
    policy_seed: u64,
) -> Result<Option<f64>, ExperimentError> {
    env.reset(workload_seed)?;
    policy.reseed(policy_seed);
    while !env.is_done() {
        let action = policy.act(env);
        env.step(action)?;
    }
    Ok(episode_slowdown(env))
}

/// Runs `trials` episodes on clones of `template` and returns each episode's
/// average slowdown. Episode `i` uses workload seed `derive_seed(seed, i)`
/// whatever the policy, so different policies face identical workloads.
pub fn evaluate_policy<P, F>(
    template: &Env,
    make_policy: F,
    trials: usize,
    seed: u64,
) -> Result<Vec<Option<f64>>, ExperimentError>
where
    P: SchedulingPolicy,
    F: Fn() -> P + Sync,
{
    let policy_base = derive_seed(seed, POLICY_STREAM);
    (0..trials)
        .into_par_iter()
        .map_init(
            || (template.clone(), make_policy()),
            |(env, policy), i| {
                run_episode(
                    env,
                    policy,
                    derive_seed(seed, i as u64),
                    derive_seed(policy_base, i as u64),
                )
            },
        )
        .collect()
}

/// Evaluates `policy` on `template` (generated or fixed-trace workloads).
pub fn evaluate(
    policy: &PolicySpec,
    template: &Env,
    trials: usize,
    seed: u64,
) -> Result<EvalRow, ExperimentError> {
    let config = template.config();
    policy.build(config)?;
    let results = evaluate_policy(template, || policy.build(config).expect("checked above"), trials, seed)?;
    let slowdowns: Vec<f64> = results.iter().flatten().copied().collect();
    let (mean_slowdown, std_slowdown) = if slowdowns.is_empty() {
        (f64::NAN, f64::NAN)
    } else {
        (mean(&slowdowns), std_dev(&slowdowns))
    };
    Ok(EvalRow {
        scenario: config.scenario.id,
        policy: policy.label(),
        variant: config.variant.to_string(),
        trials,
        seed,
        mean_slowdown,
        std_slowdown,
        empty_episodes: trials - slowdowns.len(),
        slowdowns,
    })
}

impl SchedulingPolicy for Box<dyn SchedulingPolicy + Send> {
    fn act(&mut self, env: &Env) -> usize {
        (**self).act(env)
    }

    fn reseed(&mut self, seed: u64) {
        (**self).reseed(seed)
    }
}
