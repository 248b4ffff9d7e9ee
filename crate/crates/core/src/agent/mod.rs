//! Actor-critic PPO agent built on a hand-differentiated MLP.

mod adam;
mod network;
mod params_io;
mod ppo;
mod train;

pub use adam::Adam;
pub use network::{loss_and_grad, loss_only, Activation, Forward, HeadLoss, NetworkShape, PolicyNet};
pub use params_io::{load_params, save_params, SavedAgent};
pub use ppo::{
    discounted_returns, gae, ppo_update, PpoConfig, PpoObjective, Rollout, Transition, UpdateStats,
};
pub use train::{train, train_with, CurvePoint, TrainOutcome};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::baselines::SchedulingPolicy;
use crate::env::{Env, EnvConfig, EnvError};

#[derive(Debug, Error)]
pub enum AgentError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid agent config: {0}")]
    Config(String),
    #[error("non-finite training loss: {0}")]
    NonFinite(String),
    #[error("params file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Env(#[from] EnvError),
}

/// Network shape for an environment: observation length in, `W + 1` actions out.
pub fn shape_for(config: &EnvConfig) -> NetworkShape {
    NetworkShape::new(config.observation_len(), config.variant.action_count())
}

/// Samples an index from a probability vector with one uniform draw.
pub fn sample_action<R: Rng>(probs: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    probs.len() - 1
}

pub fn argmax(xs: &[f64]) -> usize {
    xs.iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &x)| if x > best.1 { (i, x) } else { best })
        .0
}

/// A trained network acting in an environment.
#[derive(Debug, Clone)]
pub struct AgentPolicy {
    net: PolicyNet,
    greedy: bool,
    rng: ChaCha8Rng,
}

impl AgentPolicy {
    /// Fails with a shape error when the network does not match `config`.
    pub fn new(net: PolicyNet, config: &EnvConfig, greedy: bool) -> Result<Self, AgentError> {
        let expected = shape_for(config);
        if net.shape().input != expected.input || net.shape().actions != expected.actions {
            return Err(AgentError::Shape(format!(
                "agent takes {} inputs and {} actions; environment produces {} inputs and {} actions",
                net.shape().input,
                net.shape().actions,
                expected.input,
                expected.actions
            )));
        }
        Ok(Self {
            net,
            greedy,
            rng: ChaCha8Rng::seed_from_u64(0),
        })
    }

    pub fn net(&self) -> &PolicyNet {
        &self.net
    }
}

impl SchedulingPolicy for AgentPolicy {
    fn act(&mut self, env: &Env) -> usize {
        let fwd = self.net.forward_unchecked(env.observe().as_slice());
        if self.greedy {
            argmax(&fwd.probs)
        } else {
            sample_action(&fwd.probs, &mut self.rng)
        }
    }

    fn reseed(&mut self, seed: u64) {
        self.rng = ChaCha8Rng::seed_from_u64(seed);
    }
}
