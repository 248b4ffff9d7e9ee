//! Observation encoders.

use serde::{Deserialize, Serialize};

use super::config::EnvConfig;
use crate::cluster::ClusterState;
use crate::workload::Job;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Observation {
    /// Row-major `rows x cols` occupancy matrix with entries in {0, 1}.
    Image {
        rows: usize,
        cols: usize,
        data: Vec<f64>,
    },
    Compact(Vec<f64>),
}

impl Observation {
    pub fn as_slice(&self) -> &[f64] {
        match self {
            Observation::Image { data, .. } => data,
            Observation::Compact(v) => v,
        }
    }

    pub fn len(&self) -> usize {
        self.as_slice().len()
    }

    pub fn is_empty(&self) -> bool {
        self.as_slice().is_empty()
    }

    pub fn shape(&self) -> Vec<usize> {
        match self {
            Observation::Image { rows, cols, .. } => vec![*rows, *cols],
            Observation::Compact(v) => vec![v.len()],
        }
    }

    pub fn into_vec(self) -> Vec<f64> {
        match self {
            Observation::Image { data, .. } => data,
            Observation::Compact(v) => v,
        }
    }
}

/// First `window` queued jobs in arrival order, and the number of queued jobs
/// beyond them.
pub fn window_and_backlog(state: &ClusterState, window: usize) -> (Vec<&Job>, usize) {
    let queue = state.queue();
    let jobs: Vec<&Job> = queue.iter().take(window).collect();
    let backlog = queue.len() - jobs.len();
    (jobs, backlog)
}

pub fn encode_image(state: &ClusterState, config: &EnvConfig) -> Observation {
    let np = config.scenario.processors as usize;
    let w = config.variant.window;
    let h = config.variant.horizon;
    let cols = np + w * np + 1;
    let mut data = vec![0.0; h * cols];
    let mut fill = |row_end: usize, col_start: usize, width: usize| {
        for row in data.chunks_exact_mut(cols).take(row_end.min(h)) {
            row[col_start..col_start + width].fill(1.0);
        }
    };

    let mut col = 0;
    for r in state.running() {
        let procs = r.job.procs as usize;
        fill(r.remaining as usize, col, procs);
        col += procs;
    }

    let (slots, backlog) = window_and_backlog(state, w);
    for (i, job) in slots.iter().enumerate() {
        fill(job.duration as usize, np + i * np, job.procs as usize);
    }

    fill(backlog.min(config.backlog_view_cap), cols - 1, 1);
    Observation::Image {
        rows: h,
        cols,
        data,
    }
}

pub const JOB_FEATURES: usize = 8;

pub fn encode_compact(state: &ClusterState, config: &EnvConfig) -> Observation {
    let v = &config.variant;
    let w = v.window;
    let mut out = Vec::with_capacity(v.observation_len(config.scenario.processors));

    let (procs_scale, time_scale, work_scale, count_scale) = if v.normalize {
        let np = config.scenario.processors as f64;
        let t = v.episode_length as f64;
        (1.0 / np, 1.0 / t, 1.0 / (np * t), 1.0 / w as f64)
    } else {
        (1.0, 1.0, 1.0, 1.0)
    };

    for (used, free) in state.usage_profile(v.horizon).0 {
        out.push(used as f64 * procs_scale);
        out.push(free as f64 * procs_scale);
    }

    let (slots, backlog) = window_and_backlog(state, w);
    for job in &slots {
        let snap = job.snapshot.unwrap_or_default();
        out.extend_from_slice(&[
            job.submit as f64 * time_scale,
            job.duration as f64 * time_scale,
            job.procs as f64 * procs_scale,
            snap.queue_size as f64 * count_scale,
            snap.queued_work as f64 * work_scale,
            snap.free_procs as f64 * procs_scale,
            snap.remaining_work as f64 * work_scale,
            snap.queue_size.saturating_sub(w as u64) as f64 * count_scale,
        ]);
    }
    out.resize(out.len() + (w - slots.len()) * JOB_FEATURES, 0.0);
    out.push(backlog as f64 * count_scale);
    Observation::Compact(out)
}

pub fn encode(state: &ClusterState, config: &EnvConfig) -> Observation {
    match config.variant.representation {
        super::Representation::Image => encode_image(state, config),
        super::Representation::Compact => encode_compact(state, config),
    }
}
