//! Helpers shared by the numerics and acceptance suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use schedrl_core::agent::{loss_and_grad, loss_only, HeadLoss, NetworkShape, PolicyNet, PpoObjective};

pub fn random_net(shape: NetworkShape, rng: &mut ChaCha8Rng, scale: f64) -> PolicyNet {
    let params = (0..shape.param_count()).map(|_| rng.random_range(-scale..scale)).collect();
    PolicyNet::from_params(shape, params).unwrap()
}

/// Relative error `|a - n| / max(|a|, |n|)` over a sample of coordinates,
/// comparing analytic gradients with central differences.
pub fn gradient_check<L: HeadLoss>(net: &PolicyNet, inputs: &[&[f64]], loss: &L, rng: &mut ChaCha8Rng) -> f64 {
    let (_, grad) = loss_and_grad(net, inputs, loss);
    let h = 1e-6;
    let n = net.param_count();
    let mut coords: Vec<usize> = (0..150).map(|_| rng.random_range(0..n)).collect();
    // always include the heads, which sit at the end
    coords.extend(n - 80..n);
    let (mut diff, mut scale) = (0.0f64, 0.0f64);
    for &k in &coords {
        let mut plus = net.clone();
        plus.params_mut()[k] += h;
        let mut minus = net.clone();
        minus.params_mut()[k] -= h;
        let numeric = (loss_only(&plus, inputs, loss) - loss_only(&minus, inputs, loss)) / (2.0 * h);
        diff += (grad[k] - numeric).powi(2);
        scale = scale.max(grad[k].abs()).max(numeric.abs());
    }
    diff.sqrt() / (scale * (coords.len() as f64).sqrt()).max(1e-12)
}

pub fn ppo_case(net: &PolicyNet, inputs: &[&[f64]], rng: &mut ChaCha8Rng) -> (f64, f64) {
    let m = inputs.len();
    let actions: Vec<usize> = (0..m).map(|_| rng.random_range(0..net.shape().actions)).collect();
    // keep ratios well inside the clip range so the loss is smooth around the point
    let old: Vec<f64> = inputs
        .iter()
        .zip(&actions)
        .map(|(x, &a)| net.forward(x).unwrap().log_probs[a] + rng.random_range(-0.05..0.05))
        .collect();
    let adv: Vec<f64> = (0..m).map(|_| rng.random_range(-2.0..2.0)).collect();
    let ret: Vec<f64> = (0..m).map(|_| rng.random_range(-3.0..3.0)).collect();
    let objective = PpoObjective {
        actions: &actions,
        old_log_probs: &old,
        advantages: &adv,
        returns: &ret,
        clip_epsilon: 0.2,
        value_coef: 0.5,
        entropy_coef: 0.01,
    };
    let err = gradient_check(net, inputs, &objective, rng);
    let (loss, _) = loss_and_grad(net, inputs, &objective);
    (err, loss)
}

/// Advantage as the literal double sum over the remaining segment.
pub fn gae_oracle(r: &[f64], v: &[f64], done: &[bool], boot: f64, gamma: f64, lambda: f64) -> Vec<f64> {
    let n = r.len();
    let next_v = |t: usize| if t + 1 < n { v[t + 1] } else { boot };
    (0..n)
        .map(|t| {
            let mut total = 0.0;
            for l in 0..(n - t) {
                let k = t + l;
                let live = if done[k] { 0.0 } else { 1.0 };
                let delta = r[k] + gamma * next_v(k) * live - v[k];
                total += (gamma * lambda).powi(l as i32) * delta;
                if done[k] {
                    break;
                }
            }
            total
        })
        .collect()
}
