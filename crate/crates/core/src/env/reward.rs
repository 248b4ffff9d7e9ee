//! Per-step slowdown penalties.
//!
//! Every job that spends a step in the system contributes `1/t_e` to its
//! eventual slowdown, so the negated sum over a set of jobs is the online
//! slowdown penalty for that step.

use num::{BigInt, BigRational, Zero};

use super::encode::window_and_backlog;
use crate::cluster::ClusterState;
use crate::workload::Job;

fn penalty<'a>(jobs: impl Iterator<Item = &'a Job>) -> f64 {
    -jobs.map(|j| 1.0 / j.duration as f64).sum::<f64>()
}

fn penalty_exact<'a>(jobs: impl Iterator<Item = &'a Job>) -> BigRational {
    -jobs.fold(BigRational::zero(), |acc, j| {
        acc + BigRational::new(BigInt::from(1), BigInt::from(j.duration))
    })
}

/// `-sum 1/t_e` over running, window and backlog jobs.
pub fn reward_all_jobs(state: &ClusterState) -> f64 {
    penalty(state.jobs_in_system())
}

/// `-sum 1/t_e` over the queued jobs inside the first `window` slots.
pub fn reward_window(state: &ClusterState, window: usize) -> f64 {
    penalty(window_and_backlog(state, window).0.into_iter())
}

pub fn reward_all_jobs_exact(state: &ClusterState) -> BigRational {
    penalty_exact(state.jobs_in_system())
}

pub fn reward_window_exact(state: &ClusterState, window: usize) -> BigRational {
    penalty_exact(window_and_backlog(state, window).0.into_iter())
}
