//! Returns, generalized advantage estimation and the clipped-surrogate update.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::adam::Adam;
use super::network::{loss_and_grad, Forward, HeadLoss, PolicyNet};
use super::AgentError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PpoConfig {
    pub learning_rate: f64,
    /// Agent steps collected between updates.
    pub n_steps: usize,
    /// Minibatch size; capped at `n_steps`.
    pub batch_size: usize,
    pub entropy_coef: f64,
    pub gae_lambda: f64,
    pub clip_epsilon: f64,
    /// Passes over the rollout per update.
    pub epochs: usize,
    pub gamma: f64,
    pub value_coef: f64,
    /// Global gradient-norm clip; `None` disables it.
    pub max_grad_norm: Option<f64>,
    pub normalize_advantage: bool,
    /// Multiplier applied to environment rewards before they enter a rollout.
    /// Raw episode returns run into the hundreds, and unscaled value errors
    /// then swamp the shared trunk under the gradient-norm clip.
    #[serde(default = "default_reward_scale")]
    pub reward_scale: f64,
    /// Training length in agent decisions.
    pub total_steps: u64,
}

impl Default for PpoConfig {
    fn default() -> Self {
        Self {
            learning_rate: 1e-4,
            n_steps: 50,
            batch_size: 64,
            entropy_coef: 1e-2,
            gae_lambda: 0.95,
            clip_epsilon: 0.2,
            epochs: 10,
            gamma: 0.99,
            value_coef: 0.5,
            max_grad_norm: Some(0.5),
            normalize_advantage: true,
            reward_scale: default_reward_scale(),
            total_steps: 100_000,
        }
    }
}

fn default_reward_scale() -> f64 {
    0.1
}

impl PpoConfig {
    pub fn validate(&self) -> Result<(), AgentError> {
        let bad = |m: &str| Err(AgentError::Config(m.to_string()));
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return bad("gamma must lie in (0, 1]");
        }
        if !(0.0..=1.0).contains(&self.gae_lambda) {
            return bad("gae_lambda must lie in [0, 1]");
        }
        if self.clip_epsilon <= 0.0 {
            return bad("clip_epsilon must be positive");
        }
        if self.n_steps == 0 || self.batch_size == 0 || self.epochs == 0 {
            return bad("n_steps, batch_size and epochs must be positive");
        }
        if self.learning_rate <= 0.0 {
            return bad("learning_rate must be positive");
        }
        if !(self.reward_scale.is_finite() && self.reward_scale > 0.0) {
            return bad("reward_scale must be positive");
        }
        Ok(())
    }
}

/// One agent decision: `reward` is the reward that followed `action`.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub obs: Vec<f64>,
    pub action: usize,
    pub reward: f64,
    pub value: f64,
    pub log_prob: f64,
    /// The episode ended with this transition.
    pub done: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Rollout {
    pub steps: Vec<Transition>,
    /// Value estimate of the state after the last transition (ignored when
    /// that transition ended its episode).
    pub bootstrap_value: f64,
}

impl Rollout {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn rewards(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.reward).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.value).collect()
    }

    pub fn dones(&self) -> Vec<bool> {
        self.steps.iter().map(|s| s.done).collect()
    }
}

/// Discounted returns `G_t = R_{t+1} + gamma * G_{t+1}`, with the last
/// return equal to the last reward.
pub fn discounted_returns(rewards: &[f64], gamma: f64) -> Vec<f64> {
    let mut out = vec![0.0; rewards.len()];
    let mut acc = 0.0;
    for (g, r) in out.iter_mut().zip(rewards).rev() {
        acc = r + gamma * acc;
        *g = acc;
    }
    out
}

/// Generalized advantage estimates, reset at episode boundaries.
pub fn gae(
    rewards: &[f64],
    values: &[f64],
    dones: &[bool],
    bootstrap_value: f64,
    gamma: f64,
    lambda: f64,
) -> Vec<f64> {
    let n = rewards.len();
    assert!(values.len() == n && dones.len() == n, "rollout columns differ in length");
    let mut adv = vec![0.0; n];
    let mut running = 0.0;
    for t in (0..n).rev() {
        let live = if dones[t] { 0.0 } else { 1.0 };
        let next_value = if t + 1 < n { values[t + 1] } else { bootstrap_value };
        let delta = rewards[t] + gamma * next_value * live - values[t];
        running = delta + gamma * lambda * live * running;
        adv[t] = running;
    }
    adv
}

/// Clipped surrogate + value MSE - entropy bonus, averaged over a minibatch.
#[derive(Debug, Clone)]
pub struct PpoObjective<'a> {
    pub actions: &'a [usize],
    pub old_log_probs: &'a [f64],
    pub advantages: &'a [f64],
    pub returns: &'a [f64],
    pub clip_epsilon: f64,
    pub value_coef: f64,
    pub entropy_coef: f64,
}

impl HeadLoss for PpoObjective<'_> {
    fn sample_loss(&self, i: usize, fwd: &Forward, d_logits: &mut [f64]) -> (f64, f64) {
        let scale = 1.0 / self.actions.len() as f64;
        let a = self.actions[i];
        let adv = self.advantages[i];
        let ratio = (fwd.log_probs[a] - self.old_log_probs[i]).exp();
        let clipped = ratio.clamp(1.0 - self.clip_epsilon, 1.0 + self.clip_epsilon);
        let unclipped_term = ratio * adv;
        let clipped_term = clipped * adv;
        let surrogate = unclipped_term.min(clipped_term);

        let entropy = fwd.entropy();
        let value_err = fwd.value - self.returns[i];
        let loss = -surrogate + self.value_coef * value_err * value_err - self.entropy_coef * entropy;

        // d(-surrogate)/dlogp is -ratio*adv on the unclipped branch, 0 when
        // the clipped branch is the minimum
        let d_logp = if unclipped_term <= clipped_term { -ratio * adv } else { 0.0 };
        for (k, d) in d_logits.iter_mut().enumerate() {
            let p = fwd.probs[k];
            let onehot = if k == a { 1.0 } else { 0.0 };
            let d_policy = d_logp * (onehot - p);
            let d_entropy = self.entropy_coef * p * (fwd.log_probs[k] + entropy);
            *d = scale * (d_policy + d_entropy);
        }
        (scale * loss, scale * 2.0 * self.value_coef * value_err)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct UpdateStats {
    pub policy_loss: f64,
    pub value_loss: f64,
    pub entropy: f64,
    pub approx_kl: f64,
    pub clip_fraction: f64,
    pub grad_norm: f64,
}

fn normalize(xs: &mut [f64]) {
    if xs.len() < 2 {
        return;
    }
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    let std = var.sqrt() + 1e-8;
    xs.iter_mut().for_each(|x| *x = (*x - mean) / std);
}

/// Runs `epochs` passes of shuffled minibatch updates over `rollout`.
pub fn ppo_update<R: Rng>(
    net: &mut PolicyNet,
    optimizer: &mut Adam,
    rollout: &Rollout,
    config: &PpoConfig,
    rng: &mut R,
) -> Result<UpdateStats, AgentError> {
    let n = rollout.len();
    if n == 0 {
        return Err(AgentError::Config("empty rollout".into()));
    }
    let advantages = gae(
        &rollout.rewards(),
        &rollout.values(),
        &rollout.dones(),
        rollout.bootstrap_value,
        config.gamma,
        config.gae_lambda,
    );
    let returns: Vec<f64> = advantages
        .iter()
        .zip(rollout.steps.iter())
        .map(|(a, s)| a + s.value)
        .collect();

    let batch = config.batch_size.min(n);
    let mut order: Vec<usize> = (0..n).collect();
    let mut stats = UpdateStats::default();
    let mut batches = 0usize;

    for epoch in 0..config.epochs {
        order.shuffle(rng);
        for idx in order.chunks(batch) {
            let inputs: Vec<&[f64]> = idx.iter().map(|&i| rollout.steps[i].obs.as_slice()).collect();
            let actions: Vec<usize> = idx.iter().map(|&i| rollout.steps[i].action).collect();
            let old: Vec<f64> = idx.iter().map(|&i| rollout.steps[i].log_prob).collect();
            let mut adv: Vec<f64> = idx.iter().map(|&i| advantages[i]).collect();
            if config.normalize_advantage {
                normalize(&mut adv);
            }
            let ret: Vec<f64> = idx.iter().map(|&i| returns[i]).collect();
            let objective = PpoObjective {
                actions: &actions,
                old_log_probs: &old,
                advantages: &adv,
                returns: &ret,
                clip_epsilon: config.clip_epsilon,
                value_coef: config.value_coef,
                entropy_coef: config.entropy_coef,
            };
            let (loss, mut grad) = loss_and_grad(net, &inputs, &objective);
            if !loss.is_finite() || grad.iter().any(|g| !g.is_finite()) {
                return Err(AgentError::NonFinite(format!(
                    "loss {loss} on minibatch of {} (actions {:?}, advantages {:?}, returns {:?})",
                    idx.len(),
                    actions,
                    adv,
                    ret
                )));
            }

            let norm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
            if let Some(max) = config.max_grad_norm {
                if norm > max {
                    let s = max / (norm + 1e-6);
                    grad.iter_mut().for_each(|g| *g *= s);
                }
            }
            optimizer.step(net.params_mut(), &grad);

            // diagnostics from the final epoch only
            if epoch + 1 < config.epochs {
                continue;
            }
            let mut pl = 0.0;
            let mut vl = 0.0;
            let mut ent = 0.0;
            let mut kl = 0.0;
            let mut clipped = 0.0;
            for (k, obs) in inputs.iter().enumerate() {
                let fwd = net.forward_unchecked(obs);
                let log_ratio = fwd.log_probs[actions[k]] - old[k];
                let ratio = log_ratio.exp();
                let c = ratio.clamp(1.0 - config.clip_epsilon, 1.0 + config.clip_epsilon);
                pl -= (ratio * adv[k]).min(c * adv[k]);
                vl += (fwd.value - ret[k]).powi(2);
                ent += fwd.entropy();
                kl += (ratio - 1.0) - log_ratio;
                if (ratio - 1.0).abs() > config.clip_epsilon {
                    clipped += 1.0;
                }
            }
            let m = inputs.len() as f64;
            stats.policy_loss += pl / m;
            stats.value_loss += vl / m;
            stats.entropy += ent / m;
            stats.approx_kl += kl / m;
            stats.clip_fraction += clipped / m;
            stats.grad_norm += norm;
            batches += 1;
        }
    }
    let b = batches as f64;
    stats.policy_loss /= b;
    stats.value_loss /= b;
    stats.entropy /= b;
    stats.approx_kl /= b;
    stats.clip_fraction /= b;
    stats.grad_norm /= b;
    Ok(stats)
}
