use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{sample_action, shape_for, Adam, AgentError, PolicyNet, PpoConfig, Rollout, Transition, UpdateStats};
use super::ppo::ppo_update;
use crate::derive_seed;
use crate::env::{Env, EnvConfig};

/// Episodes averaged by the learning-curve moving average.
pub const CURVE_WINDOW: usize = 100;

/// Workload seeds of training episodes come from a stream separate from the
/// policy's own randomness.
const WORKLOAD_STREAM: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    /// Agent decisions taken so far.
    pub step: u64,
    /// Moving average of total episode reward.
    pub mean_return: f64,
    pub episodes: usize,
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub net: PolicyNet,
    /// One point per update.
    pub curve: Vec<CurvePoint>,
    /// Undiscounted total reward of every finished episode, in order.
    pub episode_returns: Vec<f64>,
    pub updates: usize,
    pub last_stats: UpdateStats,
}

pub fn train(env_config: EnvConfig, config: &PpoConfig, seed: u64) -> Result<TrainOutcome, AgentError> {
    train_with(env_config, config, seed, |_, _| {})
}

/// Like [`train`], calling `on_update` after every update.
pub fn train_with<F>(
    env_config: EnvConfig,
    config: &PpoConfig,
    seed: u64,
    mut on_update: F,
) -> Result<TrainOutcome, AgentError>
where
    F: FnMut(&CurvePoint, &UpdateStats),
{
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut net = PolicyNet::init(shape_for(&env_config), &mut rng);
    let mut optimizer = Adam::new(net.param_count(), config.learning_rate);

    let workload_base = derive_seed(seed, WORKLOAD_STREAM);
    let mut env = Env::new(env_config)?;
    let mut episode = 0u64;
    let mut obs = env.reset(derive_seed(workload_base, episode))?.into_vec();
    let mut running_return = 0.0;

    let mut episode_returns = Vec::new();
    let mut recent: VecDeque<f64> = VecDeque::with_capacity(CURVE_WINDOW);
    let mut curve = Vec::new();
    let mut last_stats = UpdateStats::default();
    let mut steps_done = 0u64;
    let mut updates = 0;

    while steps_done < config.total_steps {
        let n = (config.total_steps - steps_done).min(config.n_steps as u64) as usize;
        let mut rollout = Rollout {
            steps: Vec::with_capacity(n),
            bootstrap_value: 0.0,
        };
        for _ in 0..n {
            let fwd = net.forward(&obs)?;
            let action = sample_action(&fwd.probs, &mut rng);
            let result = env.step(action)?;
            running_return += result.reward;
            let next_obs = if result.done {
                episode_returns.push(running_return);
                if recent.len() == CURVE_WINDOW {
                    recent.pop_front();
                }
                recent.push_back(running_return);
                running_return = 0.0;
                episode += 1;
                env.reset(derive_seed(workload_base, episode))?.into_vec()
            } else {
                result.observation.into_vec()
            };
            rollout.steps.push(Transition {
                obs: std::mem::replace(&mut obs, next_obs),
                action,
                reward: result.reward * config.reward_scale,
                value: fwd.value,
                log_prob: fwd.log_probs[action],
                done: result.done,
            });
        }
        rollout.bootstrap_value = net.forward(&obs)?.value;
        steps_done += n as u64;

        last_stats = ppo_update(&mut net, &mut optimizer, &rollout, config, &mut rng)?;
        updates += 1;

        let mean_return = if recent.is_empty() {
            running_return
        } else {
            recent.iter().sum::<f64>() / recent.len() as f64
        };
        let point = CurvePoint {
            step: steps_done,
            mean_return,
            episodes: episode_returns.len(),
        };
        on_update(&point, &last_stats);
        curve.push(point);
    }

    Ok(TrainOutcome {
        net,
        curve,
        episode_returns,
        updates,
        last_stats,
    })
}
