//! Heuristic reference policies. Ties always go to the lowest slot index.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::env::Env;
use crate::workload::Job;

/// Anything that picks an action for the current environment state.
pub trait SchedulingPolicy {
    fn act(&mut self, env: &Env) -> usize;

    /// Re-seeds any internal randomness; called once per evaluation episode.
    fn reseed(&mut self, _seed: u64) {}
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeuristicKind {
    Random,
    Fcfs,
    Sjf,
    Packer,
}

impl FromStr for HeuristicKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(Self::Random),
            "fcfs" => Ok(Self::Fcfs),
            "sjf" => Ok(Self::Sjf),
            "packer" | "packer-largest-first" => Ok(Self::Packer),
            _ => Err(format!("unknown heuristic {s:?}")),
        }
    }
}

impl fmt::Display for HeuristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Random => "random",
            Self::Fcfs => "fcfs",
            Self::Sjf => "sjf",
            Self::Packer => "packer",
        })
    }
}

/// What a heuristic sees: the window jobs, the free processors, and the
/// window size `W` (which is also the no-op action).
#[derive(Debug, Clone, Copy)]
pub struct StateView<'a> {
    pub window: &'a [&'a Job],
    pub free: u32,
    pub window_size: usize,
}

pub fn act<R: Rng>(kind: HeuristicKind, view: StateView<'_>, rng: &mut R) -> usize {
    let noop = view.window_size;
    let fits = || {
        view.window
            .iter()
            .enumerate()
            .filter(move |(_, j)| j.procs <= view.free)
    };
    match kind {
        HeuristicKind::Random => {
            let mut choices: Vec<usize> = fits().map(|(i, _)| i).collect();
            choices.push(noop);
            choices[rng.random_range(0..choices.len())]
        }
        HeuristicKind::Fcfs => fits().map(|(i, _)| i).next().unwrap_or(noop),
        // min_by_key/max_by_key keep the first/last extreme respectively, so
        // the packer compares on (procs, Reverse(index)) to prefer low slots.
        HeuristicKind::Sjf => fits()
            .min_by_key(|(_, j)| j.duration)
            .map_or(noop, |(i, _)| i),
        HeuristicKind::Packer => fits()
            .max_by_key(|(i, j)| (j.procs, std::cmp::Reverse(*i)))
            .map_or(noop, |(i, _)| i),
    }
}

#[derive(Debug, Clone)]
pub struct HeuristicPolicy {
    pub kind: HeuristicKind,
    rng: ChaCha8Rng,
}

impl HeuristicPolicy {
    pub fn new(kind: HeuristicKind, seed: u64) -> Self {
        Self {
            kind,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl SchedulingPolicy for HeuristicPolicy {
    fn act(&mut self, env: &Env) -> usize {
        let (window, _) = env.window();
        let view = StateView {
            window: &window,
            free: env.state().free(),
            window_size: env.config().variant.window,
        };
        act(self.kind, view, &mut self.rng)
    }

    fn reseed(&mut self, seed: u64) {
        self.rng = ChaCha8Rng::seed_from_u64(seed);
    }
}
