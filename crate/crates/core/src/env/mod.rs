//! The scheduling simulator wrapped as a (semi-)MDP.
//!
//! Actions `0..W` pick a window slot, action `W` refuses to schedule. A
//! successful schedule yields reward 0 and does not move the clock. Anything
//! else (the no-op, an empty slot, a job that does not fit) advances the clock
//! one step and yields the configured per-step penalty.
//!
//! In sparse mode the environment only hands control back to the agent at
//! decision points, states with at least one window job that fits in the free
//! processors. Penalties of the skipped steps are summed, undiscounted, into
//! the reward of the action that triggered the fast-forward.

mod config;
mod encode;
mod reward;

pub use config::{parse_env_spec, EnvConfig, EnvVariant, Representation, RewardScope, Transitions};
pub use encode::{
    encode, encode_compact, encode_image, window_and_backlog, Observation, JOB_FEATURES,
};
pub use reward::{reward_all_jobs, reward_all_jobs_exact, reward_window, reward_window_exact};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster::{ClusterError, ClusterState};
use crate::workload::{generate_trace, Job, Trace, WorkloadError};

#[derive(Debug, Error, PartialEq)]
pub enum EnvError {
    #[error("invalid environment config: {0}")]
    Config(String),
    #[error("action {action} outside [0, {max}]")]
    InvalidAction { action: usize, max: usize },
    #[error("episode finished")]
    EpisodeFinished,
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Workload(#[from] WorkloadError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StepInfo {
    /// Simulator clock ticks consumed by this agent step.
    pub sim_steps: u64,
    pub scheduled: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepResult {
    pub observation: Observation,
    pub reward: f64,
    pub done: bool,
    pub info: StepInfo,
}

#[derive(Debug, Clone)]
enum WorkloadSource {
    Generated,
    Fixed(Trace),
}

/// One scheduling environment. Strictly sequential: `reset`, then `step`
/// until `done`.
#[derive(Debug, Clone)]
pub struct Env {
    config: EnvConfig,
    source: WorkloadSource,
    trace: Trace,
    state: ClusterState,
    done: bool,
}

impl Env {
    /// Environment drawing a fresh workload from the scenario on every reset.
    pub fn new(config: EnvConfig) -> Result<Self, EnvError> {
        Self::build(config, WorkloadSource::Generated)
    }

    /// Environment replaying the same trace on every reset.
    pub fn with_trace(config: EnvConfig, trace: Trace) -> Result<Self, EnvError> {
        trace.validate()?;
        if let Some(job) = trace.jobs.iter().find(|j| j.procs > config.scenario.processors) {
            return Err(ClusterError::Oversized {
                id: job.id,
                procs: job.procs,
                total: config.scenario.processors,
            }
            .into());
        }
        Self::build(config, WorkloadSource::Fixed(trace))
    }

    fn build(config: EnvConfig, source: WorkloadSource) -> Result<Self, EnvError> {
        config.variant.validate()?;
        let mut env = Self {
            config,
            source,
            trace: Trace {
                jobs: Vec::new(),
                horizon: config.variant.episode_length,
                seed: 0,
            },
            state: ClusterState::new(config.scenario.processors),
            done: false,
        };
        env.reset(0)?;
        Ok(env)
    }

    pub fn config(&self) -> &EnvConfig {
        &self.config
    }

    pub fn state(&self) -> &ClusterState {
        &self.state
    }

    pub fn trace(&self) -> &Trace {
        &self.trace
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    /// Empty cluster at clock 0 with the workload for `seed` loaded.
    pub fn reset(&mut self, seed: u64) -> Result<Observation, EnvError> {
        self.trace = match &self.source {
            WorkloadSource::Generated => {
                let workload = self.config.scenario.workload(seed)?;
                generate_trace(&workload, self.config.variant.episode_length)
            }
            WorkloadSource::Fixed(trace) => trace.clone(),
        };
        self.state = ClusterState::new(self.config.scenario.processors);
        self.done = false;
        Ok(self.observe())
    }

    pub fn observe(&self) -> Observation {
        encode(&self.state, &self.config)
    }

    pub fn window(&self) -> (Vec<&Job>, usize) {
        window_and_backlog(&self.state, self.config.variant.window)
    }

    /// Whether some window job fits in the free processors.
    pub fn at_decision_point(&self) -> bool {
        let free = self.state.free();
        self.window().0.iter().any(|j| j.procs <= free)
    }

    fn step_reward(&self) -> f64 {
        match self.config.variant.reward_scope {
            RewardScope::All => reward_all_jobs(&self.state),
            RewardScope::Window => reward_window(&self.state, self.config.variant.window),
        }
    }

    fn tick(&mut self) -> Result<f64, EnvError> {
        let next = self.state.clock() + 1;
        let arrivals: Vec<Job> = self.trace.arrivals_at(next).cloned().collect();
        self.state.advance_time(arrivals)?;
        Ok(self.step_reward())
    }

    fn horizon_reached(&self) -> bool {
        self.state.clock() >= self.config.variant.episode_length
    }

    fn fast_forward(&mut self, reward: &mut f64, sim_steps: &mut u64) -> Result<(), EnvError> {
        while !self.horizon_reached() && !self.at_decision_point() {
            *reward += self.tick()?;
            *sim_steps += 1;
        }
        Ok(())
    }

    pub fn step(&mut self, action: usize) -> Result<StepResult, EnvError> {
        if self.done {
            return Err(EnvError::EpisodeFinished);
        }
        let window = self.config.variant.window;
        if action > window {
            return Err(EnvError::InvalidAction {
                action,
                max: window,
            });
        }

        let target = (action < window)
            .then(|| self.state.queue().get(action))
            .flatten()
            .filter(|job| job.procs <= self.state.free())
            .map(|job| job.id);

        let mut reward = 0.0;
        let mut sim_steps = 0;
        if let Some(id) = target {
            self.state.schedule(id)?;
        } else {
            reward += self.tick()?;
            sim_steps += 1;
        }
        if self.config.variant.transitions == Transitions::Sparse {
            self.fast_forward(&mut reward, &mut sim_steps)?;
        }

        self.done = self.horizon_reached();
        Ok(StepResult {
            observation: self.observe(),
            reward,
            done: self.done,
            info: StepInfo {
                sim_steps,
                scheduled: target,
            },
        })
    }

    /// Jobs that finished during the current episode.
    pub fn completed(&self) -> &[Job] {
        self.state.completed()
    }
}
