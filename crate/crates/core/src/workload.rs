//! Synthetic job arrival streams and the line-oriented trace format.
//!
//! The generator follows the Bernoulli/uniform model used throughout the
//! scheduling-RL literature: on every time step a job arrives with probability
//! `new_job_rate`; it is "small" with probability `small_job_chance` (duration
//! uniform on `[1, floor(d/5)]`) and "large" otherwise (duration uniform on
//! `[ceil(2d/3), d]`); its processor demand is uniform on `[ceil(j_s/2), j_s]`.
//!
//! Draw order per [`sample_step`] call, always four `u64` draws from the
//! stream regardless of the outcome:
//!
//! 1. arrival coin
//! 2. small/large coin
//! 3. duration
//! 4. processor demand
//!
//! Each draw is turned into an `f64` in `[0, 1)` from the top 53 bits and
//! mapped onto an integer range by `lo + floor(u * (hi - lo + 1))`, so the
//! mapping never rejects and the stream position after `t` steps is `4t`.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Seedable generator used for workloads. ChaCha8 output is platform independent.
pub type WorkloadRng = ChaCha8Rng;

/// Quantities captured when a job enters the wait queue.
///
/// These back the per-job features of the compact observation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SubmitSnapshot {
    /// Jobs already waiting when this one arrived.
    pub queue_size: u64,
    /// Sum of `procs * duration` over the jobs already waiting.
    pub queued_work: u64,
    /// Free processors at arrival.
    pub free_procs: u64,
    /// Sum of `procs * remaining` over the jobs running at arrival.
    pub remaining_work: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Job {
    pub id: u64,
    /// Submission time step (`t_s`).
    pub submit: u64,
    /// Execution time (`t_e`); also the requested time.
    pub duration: u64,
    pub procs: u32,
    pub start: Option<u64>,
    pub finish: Option<u64>,
    pub snapshot: Option<SubmitSnapshot>,
}

impl Job {
    pub fn new(id: u64, submit: u64, duration: u64, procs: u32) -> Self {
        Self {
            id,
            submit,
            duration,
            procs,
            start: None,
            finish: None,
            snapshot: None,
        }
    }

    /// `procs * duration`.
    pub fn work(&self) -> u64 {
        self.procs as u64 * self.duration
    }

    /// `t_f - (t_e + t_s)`, once the job has finished.
    pub fn wait(&self) -> Option<u64> {
        self.finish.map(|f| f - self.duration - self.submit)
    }

    pub fn is_completed(&self) -> bool {
        self.finish.is_some()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum WorkloadError {
    #[error("invalid workload config: {0}")]
    InvalidConfig(String),
    #[error("trace line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("trace validation failed: {0}")]
    Validation(String),
    #[error("trace i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for WorkloadError {
    fn from(e: std::io::Error) -> Self {
        WorkloadError::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorkloadConfig {
    new_job_rate: f64,
    small_job_chance: f64,
    max_length: u64,
    max_size: u32,
    seed: u64,
}

impl WorkloadConfig {
    pub const DEFAULT_RATE: f64 = 0.3;
    pub const DEFAULT_SMALL_CHANCE: f64 = 0.8;

    /// Config with the default arrival rate (0.3) and small-job chance (0.8).
    pub fn new(max_length: u64, max_size: u32, seed: u64) -> Result<Self, WorkloadError> {
        Self::with_rates(
            Self::DEFAULT_RATE,
            Self::DEFAULT_SMALL_CHANCE,
            max_length,
            max_size,
            seed,
        )
    }

    pub fn with_rates(
        new_job_rate: f64,
        small_job_chance: f64,
        max_length: u64,
        max_size: u32,
        seed: u64,
    ) -> Result<Self, WorkloadError> {
        if !(0.0..=1.0).contains(&new_job_rate) {
            return Err(WorkloadError::InvalidConfig(format!(
                "new_job_rate {new_job_rate} outside [0, 1]"
            )));
        }
        if !(0.0..=1.0).contains(&small_job_chance) {
            return Err(WorkloadError::InvalidConfig(format!(
                "small_job_chance {small_job_chance} outside [0, 1]"
            )));
        }
        if max_length < 5 {
            return Err(WorkloadError::InvalidConfig(format!(
                "max job length {max_length} < 5 leaves the small-job range empty"
            )));
        }
        if max_size < 1 {
            return Err(WorkloadError::InvalidConfig("max job size must be >= 1".into()));
        }
        Ok(Self {
            new_job_rate,
            small_job_chance,
            max_length,
            max_size,
            seed,
        })
    }

    pub fn new_job_rate(&self) -> f64 {
        self.new_job_rate
    }

    pub fn small_job_chance(&self) -> f64 {
        self.small_job_chance
    }

    /// Maximum job length `d`.
    pub fn max_length(&self) -> u64 {
        self.max_length
    }

    /// Maximum job size `j_s`.
    pub fn max_size(&self) -> u32 {
        self.max_size
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Inclusive duration range of small jobs.
    pub fn small_range(&self) -> (u64, u64) {
        (1, self.max_length / 5)
    }

    /// Inclusive duration range of large jobs.
    pub fn large_range(&self) -> (u64, u64) {
        ((2 * self.max_length).div_ceil(3), self.max_length)
    }

    /// Inclusive processor-demand range.
    pub fn procs_range(&self) -> (u32, u32) {
        (self.max_size.div_ceil(2), self.max_size)
    }

    pub fn rng(&self) -> WorkloadRng {
        WorkloadRng::seed_from_u64(self.seed)
    }
}

fn uniform_int(u: f64, lo: u64, hi: u64) -> u64 {
    let span = hi - lo + 1;
    lo + ((u * span as f64) as u64).min(span - 1)
}

/// Draws the arrival (if any) for time step `t`. A generated job's id is `t`,
/// which is unique because at most one job arrives per step.
pub fn sample_step(config: &WorkloadConfig, rng: &mut WorkloadRng, t: u64) -> Option<Job> {
    debug_assert!(t >= 1);
    let arrival: f64 = rng.random();
    let kind: f64 = rng.random();
    let length: f64 = rng.random();
    let size: f64 = rng.random();

    if arrival >= config.new_job_rate {
        return None;
    }
    let (lo, hi) = if kind < config.small_job_chance {
        config.small_range()
    } else {
        config.large_range()
    };
    let duration = uniform_int(length, lo, hi);
    let (plo, phi) = config.procs_range();
    let procs = uniform_int(size, plo as u64, phi as u64) as u32;
    Some(Job::new(t, t, duration, procs))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    /// Jobs ordered by submission time, ties by id.
    pub jobs: Vec<Job>,
    /// Generation horizon `T`.
    pub horizon: u64,
    pub seed: u64,
}

impl Trace {
    pub fn new(mut jobs: Vec<Job>, horizon: u64, seed: u64) -> Result<Self, WorkloadError> {
        jobs.sort_by_key(|j| (j.submit, j.id));
        let trace = Self {
            jobs,
            horizon,
            seed,
        };
        trace.validate()?;
        Ok(trace)
    }

    pub fn validate(&self) -> Result<(), WorkloadError> {
        let mut seen = HashSet::new();
        for job in &self.jobs {
            if !seen.insert(job.id) {
                return Err(WorkloadError::Validation(format!("duplicate job id {}", job.id)));
            }
            if job.duration < 1 || job.procs < 1 {
                return Err(WorkloadError::Validation(format!(
                    "job {} has zero duration or processor demand",
                    job.id
                )));
            }
            if job.submit < 1 || job.submit > self.horizon {
                return Err(WorkloadError::Validation(format!(
                    "job {} submitted at {} outside [1, {}]",
                    job.id, job.submit, self.horizon
                )));
            }
        }
        if self
            .jobs
            .windows(2)
            .any(|w| (w[0].submit, w[0].id) > (w[1].submit, w[1].id))
        {
            return Err(WorkloadError::Validation("jobs not ordered by submission time".into()));
        }
        Ok(())
    }

    /// Jobs submitted at exactly time step `t`.
    pub fn arrivals_at(&self, t: u64) -> impl Iterator<Item = &Job> {
        let start = self.jobs.partition_point(|j| j.submit < t);
        self.jobs[start..].iter().take_while(move |j| j.submit == t)
    }

    pub fn len(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jobs.is_empty()
    }
}

/// Runs [`sample_step`] for `t = 1..=horizon` on a stream seeded from the config.
pub fn generate_trace(config: &WorkloadConfig, horizon: u64) -> Trace {
    let mut rng = config.rng();
    let jobs = (1..=horizon)
        .filter_map(|t| sample_step(config, &mut rng, t))
        .collect();
    Trace {
        jobs,
        horizon,
        seed: config.seed(),
    }
}

pub fn save_trace<W: Write>(trace: &Trace, mut sink: W) -> Result<(), WorkloadError> {
    writeln!(sink, "#trace v1 T={} seed={}", trace.horizon, trace.seed)?;
    for job in &trace.jobs {
        writeln!(sink, "{} {} {} {}", job.id, job.submit, job.duration, job.procs)?;
    }
    Ok(())
}

fn parse_header(line: &str) -> Result<(u64, u64), WorkloadError> {
    let err = |message: String| WorkloadError::Parse { line: 1, message };
    let mut parts = line.split_whitespace();
    if parts.next() != Some("#trace") || parts.next() != Some("v1") {
        return Err(err(format!("expected `#trace v1` header, got {line:?}")));
    }
    let mut field = |key: &str| -> Result<u64, WorkloadError> {
        let tok = parts
            .next()
            .ok_or_else(|| err(format!("missing {key}= in header")))?;
        tok.strip_prefix(key)
            .and_then(|v| v.strip_prefix('='))
            .ok_or_else(|| err(format!("expected {key}=<int>, got {tok:?}")))?
            .parse()
            .map_err(|e| err(format!("bad {key} value: {e}")))
    };
    let horizon = field("T")?;
    let seed = field("seed")?;
    if parts.next().is_some() {
        return Err(err("trailing tokens in header".into()));
    }
    Ok((horizon, seed))
}

pub fn load_trace<R: BufRead>(source: R) -> Result<Trace, WorkloadError> {
    let mut lines = source.lines();
    let header = lines.next().ok_or(WorkloadError::Parse {
        line: 1,
        message: "empty trace file".into(),
    })??;
    let (horizon, seed) = parse_header(&header)?;

    let mut jobs = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<u64> = line
            .split_whitespace()
            .map(|tok| tok.parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|e| WorkloadError::Parse {
                line: line_no,
                message: format!("{e} in {line:?}"),
            })?;
        let [id, submit, duration, procs] = fields[..] else {
            return Err(WorkloadError::Parse {
                line: line_no,
                message: format!("expected 4 fields, got {}", fields.len()),
            });
        };
        let procs = u32::try_from(procs).map_err(|_| WorkloadError::Parse {
            line: line_no,
            message: format!("processor count {procs} out of range"),
        })?;
        jobs.push(Job::new(id, submit, duration, procs));
    }
    let trace = Trace {
        jobs,
        horizon,
        seed,
    };
    trace.validate()?;
    Ok(trace)
}
