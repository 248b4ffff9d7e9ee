//! Two-layer shared trunk with policy and value heads, with hand-written
//! reverse-mode gradients.
//!
//! All parameters live in one flat vector. Every affine layer is stored
//! input-major: weight `(i, j)` connecting input `i` to output `j` sits at
//! `offset + i * out + j`, followed by the `out` biases. Layer order is trunk 1,
//! trunk 2, policy head (`actions` outputs), value head (1 output).

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::AgentError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Tanh,
    /// Makes the whole network affine; used for closed-form gradient checks.
    Identity,
}

impl Activation {
    fn apply(self, z: f64) -> f64 {
        match self {
            Activation::Tanh => z.tanh(),
            Activation::Identity => z,
        }
    }

    /// Derivative expressed through the activation output.
    fn derivative_from_output(self, a: f64) -> f64 {
        match self {
            Activation::Tanh => 1.0 - a * a,
            Activation::Identity => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Activation::Tanh => "tanh",
            Activation::Identity => "identity",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "tanh" => Some(Activation::Tanh),
            "identity" => Some(Activation::Identity),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkShape {
    pub input: usize,
    pub hidden: [usize; 2],
    pub actions: usize,
    pub activation: Activation,
}

impl NetworkShape {
    pub fn new(input: usize, actions: usize) -> Self {
        Self {
            input,
            hidden: [64, 64],
            actions,
            activation: Activation::Tanh,
        }
    }

    fn layers(&self) -> [(usize, usize); 4] {
        let [h1, h2] = self.hidden;
        [(self.input, h1), (h1, h2), (h2, self.actions), (h2, 1)]
    }

    /// Offsets of each layer's weight block within the flat vector.
    fn offsets(&self) -> [usize; 4] {
        let mut offsets = [0; 4];
        let mut at = 0;
        for (slot, (i, o)) in offsets.iter_mut().zip(self.layers()) {
            *slot = at;
            at += i * o + o;
        }
        offsets
    }

    pub fn param_count(&self) -> usize {
        self.layers().iter().map(|(i, o)| i * o + o).sum()
    }
}

/// Activations of one forward pass, kept for the backward pass.
#[derive(Debug, Clone, PartialEq)]
pub struct Forward {
    pub hidden1: Vec<f64>,
    pub hidden2: Vec<f64>,
    pub logits: Vec<f64>,
    pub probs: Vec<f64>,
    pub log_probs: Vec<f64>,
    pub value: f64,
}

impl Forward {
    pub fn entropy(&self) -> f64 {
        -self
            .probs
            .iter()
            .zip(&self.log_probs)
            .map(|(p, lp)| p * lp)
            .sum::<f64>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyNet {
    shape: NetworkShape,
    params: Vec<f64>,
}

fn affine(input: &[f64], block: &[f64], out: usize, dst: &mut Vec<f64>) {
    let (weights, bias) = block.split_at(input.len() * out);
    dst.clear();
    dst.extend_from_slice(bias);
    for (&x, row) in input.iter().zip(weights.chunks_exact(out)) {
        if x != 0.0 {
            for (d, w) in dst.iter_mut().zip(row) {
                *d += x * w;
            }
        }
    }
}

/// Accumulates `dW += input (x) delta`, `db += delta`.
fn affine_grad(input: &[f64], delta: &[f64], grad_block: &mut [f64]) {
    let out = delta.len();
    let (weights, bias) = grad_block.split_at_mut(input.len() * out);
    for (&x, row) in input.iter().zip(weights.chunks_exact_mut(out)) {
        if x != 0.0 {
            for (g, d) in row.iter_mut().zip(delta) {
                *g += x * d;
            }
        }
    }
    for (b, d) in bias.iter_mut().zip(delta) {
        *b += d;
    }
}

/// `W delta` for an input-major block: gradient w.r.t. the layer input.
fn affine_back(block: &[f64], in_dim: usize, delta: &[f64]) -> Vec<f64> {
    let out = delta.len();
    block[..in_dim * out]
        .chunks_exact(out)
        .map(|row| row.iter().zip(delta).map(|(w, d)| w * d).sum())
        .collect()
}

impl PolicyNet {
    pub fn zeros(shape: NetworkShape) -> Self {
        Self {
            shape,
            params: vec![0.0; shape.param_count()],
        }
    }

    pub fn from_params(shape: NetworkShape, params: Vec<f64>) -> Result<Self, AgentError> {
        if params.len() != shape.param_count() {
            return Err(AgentError::Shape(format!(
                "expected {} parameters, got {}",
                shape.param_count(),
                params.len()
            )));
        }
        Ok(Self { shape, params })
    }

    /// Orthogonal initialization: gain sqrt(2) on the trunk, 0.01 on the
    /// policy head, 1 on the value head; zero biases.
    pub fn init<R: Rng>(shape: NetworkShape, rng: &mut R) -> Self {
        let mut net = Self::zeros(shape);
        let gains = [2f64.sqrt(), 2f64.sqrt(), 0.01, 1.0];
        let offsets = shape.offsets();
        for ((in_dim, out), (offset, gain)) in shape.layers().into_iter().zip(offsets.into_iter().zip(gains)) {
            let w = orthogonal(in_dim, out, gain, rng);
            net.params[offset..offset + in_dim * out].copy_from_slice(&w);
        }
        net
    }

    pub fn shape(&self) -> &NetworkShape {
        &self.shape
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    fn block(&self, layer: usize) -> &[f64] {
        let (i, o) = self.shape.layers()[layer];
        let off = self.shape.offsets()[layer];
        &self.params[off..off + i * o + o]
    }

    pub fn check_input(&self, len: usize) -> Result<(), AgentError> {
        if len != self.shape.input {
            return Err(AgentError::Shape(format!(
                "network expects observations of length {}, got {}",
                self.shape.input, len
            )));
        }
        Ok(())
    }

    pub fn forward(&self, obs: &[f64]) -> Result<Forward, AgentError> {
        self.check_input(obs.len())?;
        Ok(self.forward_unchecked(obs))
    }

    pub(crate) fn forward_unchecked(&self, obs: &[f64]) -> Forward {
        let act = self.shape.activation;
        let [h1, h2] = self.shape.hidden;
        let mut hidden1 = Vec::with_capacity(h1);
        affine(obs, self.block(0), h1, &mut hidden1);
        hidden1.iter_mut().for_each(|z| *z = act.apply(*z));
        let mut hidden2 = Vec::with_capacity(h2);
        affine(&hidden1, self.block(1), h2, &mut hidden2);
        hidden2.iter_mut().for_each(|z| *z = act.apply(*z));
        let mut logits = Vec::with_capacity(self.shape.actions);
        affine(&hidden2, self.block(2), self.shape.actions, &mut logits);
        let mut value = Vec::with_capacity(1);
        affine(&hidden2, self.block(3), 1, &mut value);

        let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let log_norm = max + logits.iter().map(|l| (l - max).exp()).sum::<f64>().ln();
        let log_probs: Vec<f64> = logits.iter().map(|l| l - log_norm).collect();
        let probs = log_probs.iter().map(|lp| lp.exp()).collect();
        Forward {
            hidden1,
            hidden2,
            logits,
            probs,
            log_probs,
            value: value[0],
        }
    }

    /// Adds the gradient of a loss whose partials w.r.t. this sample's
    /// logits and value are `d_logits` and `d_value` into `grad`.
    pub fn backward(
        &self,
        obs: &[f64],
        fwd: &Forward,
        d_logits: &[f64],
        d_value: f64,
        grad: &mut [f64],
    ) {
        let act = self.shape.activation;
        let [h1, h2] = self.shape.hidden;
        let offsets = self.shape.offsets();
        let layers = self.shape.layers();
        let span = |l: usize| offsets[l]..offsets[l] + layers[l].0 * layers[l].1 + layers[l].1;

        affine_grad(&fwd.hidden2, d_logits, &mut grad[span(2)]);
        affine_grad(&fwd.hidden2, &[d_value], &mut grad[span(3)]);

        let mut d_h2 = affine_back(self.block(2), h2, d_logits);
        for (d, w) in d_h2.iter_mut().zip(affine_back(self.block(3), h2, &[d_value])) {
            *d += w;
        }
        let d_z2: Vec<f64> = d_h2
            .iter()
            .zip(&fwd.hidden2)
            .map(|(d, a)| d * act.derivative_from_output(*a))
            .collect();
        affine_grad(&fwd.hidden1, &d_z2, &mut grad[span(1)]);

        let d_h1 = affine_back(self.block(1), h1, &d_z2);
        let d_z1: Vec<f64> = d_h1
            .iter()
            .zip(&fwd.hidden1)
            .map(|(d, a)| d * act.derivative_from_output(*a))
            .collect();
        affine_grad(obs, &d_z1, &mut grad[span(0)]);
    }
}

/// Per-sample loss attached to the network outputs.
pub trait HeadLoss {
    /// Returns this sample's loss and writes `dL/dlogits` into `d_logits`;
    /// the second return value is `dL/dvalue`.
    fn sample_loss(&self, index: usize, fwd: &Forward, d_logits: &mut [f64]) -> (f64, f64);
}

/// Total loss over `inputs` and its exact gradient w.r.t. every parameter.
pub fn loss_and_grad<L: HeadLoss + ?Sized>(
    net: &PolicyNet,
    inputs: &[&[f64]],
    loss: &L,
) -> (f64, Vec<f64>) {
    let mut grad = vec![0.0; net.param_count()];
    let mut d_logits = vec![0.0; net.shape.actions];
    let mut total = 0.0;
    for (i, obs) in inputs.iter().enumerate() {
        let fwd = net.forward_unchecked(obs);
        d_logits.iter_mut().for_each(|d| *d = 0.0);
        let (l, d_value) = loss.sample_loss(i, &fwd, &mut d_logits);
        total += l;
        net.backward(obs, &fwd, &d_logits, d_value, &mut grad);
    }
    (total, grad)
}

pub fn loss_only<L: HeadLoss + ?Sized>(net: &PolicyNet, inputs: &[&[f64]], loss: &L) -> f64 {
    let mut scratch = vec![0.0; net.shape.actions];
    inputs
        .iter()
        .enumerate()
        .map(|(i, obs)| loss.sample_loss(i, &net.forward_unchecked(obs), &mut scratch).0)
        .sum()
}

/// `in_dim x out` input-major matrix whose (transposed) rows or columns are
/// orthonormal, scaled by `gain`.
fn orthogonal<R: Rng>(in_dim: usize, out: usize, gain: f64, rng: &mut R) -> Vec<f64> {
    // orthonormalize `k` vectors of length `n`, k <= n
    let (k, n) = if out <= in_dim { (out, in_dim) } else { (in_dim, out) };
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(k);
    while basis.len() < k {
        let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        for _ in 0..2 {
            for b in &basis {
                let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            v.iter_mut().for_each(|x| *x /= norm);
            basis.push(v);
        }
    }
    let mut w = vec![0.0; in_dim * out];
    for (a, vec) in basis.iter().enumerate() {
        for (b, x) in vec.iter().enumerate() {
            // basis vectors run along inputs when out <= in_dim
            let (i, j) = if out <= in_dim { (b, a) } else { (a, b) };
            w[i * out + j] = gain * x;
        }
    }
    w
}
