//! Cluster job-scheduling simulator and reinforcement-learning workbench.
//!
//! - [`workload`]: synthetic arrival streams and the trace file format.
//! - [`cluster`]: the discrete-time simulator and slowdown metrics.
//! - [`env`]: the simulator as dense or sparse (semi-)MDPs with image or
//!   compact observations and all-jobs or windowed rewards.
//! - [`agent`]: actor-critic PPO with a hand-written two-layer network.
//! - [`baselines`]: heuristic reference policies.
//! - [`experiments`]: training, evaluation, transfer and timing studies.
//! - [`stats`]: Welch's t-test.
//! - [`proto`]: newline-delimited JSON environment server.

pub mod agent;
pub mod baselines;
pub mod cluster;
pub mod env;
pub mod experiments;
pub mod proto;
pub mod scenario;
pub mod stats;
pub mod workload;

/// Derives an independent 64-bit seed for stream `index` of `base`
/// (SplitMix64 finalizer over the pair).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
