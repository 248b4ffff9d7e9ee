//! Discrete-time cluster simulator and slowdown accounting.
//!
//! Processors are fungible counts. Jobs run to completion once started and a
//! job is never started unless enough processors are free.

use std::collections::VecDeque;

use num::{BigInt, BigRational, ToPrimitive, Zero};
use thiserror::Error;

use crate::workload::{Job, SubmitSnapshot};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("job {0} is not in the wait queue")]
    NotQueued(u64),
    #[error("job {id} needs {needed} processors but only {free} are free")]
    InsufficientProcessors { id: u64, needed: u32, free: u32 },
    #[error("job {id} arrives at {got} but the next time step is {expected}")]
    ArrivalTime { id: u64, expected: u64, got: u64 },
    #[error("job {id} requests {procs} processors; the cluster has {total}")]
    Oversized { id: u64, procs: u32, total: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("job {0} has not completed")]
    NotCompleted(u64),
    #[error("average slowdown of an empty job set is undefined")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunningJob {
    pub job: Job,
    /// Time steps left; always >= 1 while the job is running.
    pub remaining: u64,
}

/// `(used, free)` processor counts for offsets `0..H` from the current clock.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageProfile(pub Vec<(u32, u32)>);

impl UsageProfile {
    pub fn horizon(&self) -> usize {
        self.0.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterState {
    processors: u32,
    running: Vec<RunningJob>,
    queue: VecDeque<Job>,
    clock: u64,
    completed: Vec<Job>,
    used: u32,
}

impl ClusterState {
    pub fn new(processors: u32) -> Self {
        assert!(processors >= 1, "a cluster needs at least one processor");
        Self {
            processors,
            running: Vec::new(),
            queue: VecDeque::new(),
            clock: 0,
            completed: Vec::new(),
            used: 0,
        }
    }

    pub fn processors(&self) -> u32 {
        self.processors
    }

    pub fn clock(&self) -> u64 {
        self.clock
    }

    /// Running jobs in allocation order.
    pub fn running(&self) -> &[RunningJob] {
        &self.running
    }

    pub fn queue(&self) -> &VecDeque<Job> {
        &self.queue
    }

    pub fn completed(&self) -> &[Job] {
        &self.completed
    }

    pub fn used(&self) -> u32 {
        self.used
    }

    pub fn free(&self) -> u32 {
        self.processors - self.used
    }

    /// Running and queued jobs.
    pub fn jobs_in_system(&self) -> impl Iterator<Item = &Job> {
        self.running.iter().map(|r| &r.job).chain(self.queue.iter())
    }

    fn queue_position(&self, id: u64) -> Result<usize, ClusterError> {
        self.queue
            .iter()
            .position(|j| j.id == id)
            .ok_or(ClusterError::NotQueued(id))
    }

    /// Whether the queued job `id` fits in the processors free right now.
    pub fn can_schedule(&self, id: u64) -> Result<bool, ClusterError> {
        let pos = self.queue_position(id)?;
        Ok(self.queue[pos].procs <= self.free())
    }

    /// Starts queued job `id` at the current clock.
    pub fn schedule(&mut self, id: u64) -> Result<(), ClusterError> {
        let pos = self.queue_position(id)?;
        let needed = self.queue[pos].procs;
        if needed > self.free() {
            return Err(ClusterError::InsufficientProcessors {
                id,
                needed,
                free: self.free(),
            });
        }
        let mut job = self.queue.remove(pos).expect("position is in bounds");
        job.start = Some(self.clock);
        self.used += job.procs;
        let remaining = job.duration;
        self.running.push(RunningJob { job, remaining });
        Ok(())
    }

    fn snapshot(&self) -> SubmitSnapshot {
        SubmitSnapshot {
            queue_size: self.queue.len() as u64,
            queued_work: self.queue.iter().map(Job::work).sum(),
            free_procs: self.free() as u64,
            remaining_work: self
                .running
                .iter()
                .map(|r| r.job.procs as u64 * r.remaining)
                .sum(),
        }
    }

    /// Moves the clock one step forward: running jobs progress, finished ones
    /// move to `completed`, then `arrivals` join the back of the queue with
    /// their submission snapshot recorded. Returns the ids of jobs that
    /// finished on this step.
    pub fn advance_time(&mut self, arrivals: Vec<Job>) -> Result<Vec<u64>, ClusterError> {
        let next = self.clock + 1;
        for job in &arrivals {
            if job.submit != next {
                return Err(ClusterError::ArrivalTime {
                    id: job.id,
                    expected: next,
                    got: job.submit,
                });
            }
            if job.procs > self.processors {
                return Err(ClusterError::Oversized {
                    id: job.id,
                    procs: job.procs,
                    total: self.processors,
                });
            }
        }

        self.clock = next;
        let mut finished = Vec::new();
        let mut still_running = Vec::with_capacity(self.running.len());
        for mut r in self.running.drain(..) {
            r.remaining -= 1;
            if r.remaining == 0 {
                r.job.finish = Some(next);
                self.used -= r.job.procs;
                finished.push(r.job.id);
                self.completed.push(r.job);
            } else {
                still_running.push(r);
            }
        }
        self.running = still_running;

        for mut job in arrivals {
            job.snapshot = Some(self.snapshot());
            self.queue.push_back(job);
        }
        Ok(finished)
    }

    /// Processors used by running jobs at each offset `0..horizon`, assuming
    /// no further scheduling.
    pub fn usage_profile(&self, horizon: usize) -> UsageProfile {
        let profile = (0..horizon as u64)
            .map(|k| {
                let used: u32 = self
                    .running
                    .iter()
                    .filter(|r| r.remaining > k)
                    .map(|r| r.job.procs)
                    .sum();
                (used, self.processors - used)
            })
            .collect();
        UsageProfile(profile)
    }
}

/// `(t_f - t_s) / t_e` as an exact rational.
pub fn slowdown(job: &Job) -> Result<BigRational, MetricError> {
    let finish = job.finish.ok_or(MetricError::NotCompleted(job.id))?;
    Ok(BigRational::new(
        BigInt::from(finish - job.submit),
        BigInt::from(job.duration),
    ))
}

pub fn average_slowdown(jobs: &[Job]) -> Result<BigRational, MetricError> {
    if jobs.is_empty() {
        return Err(MetricError::Empty);
    }
    let mut total = BigRational::zero();
    for job in jobs {
        total += slowdown(job)?;
    }
    Ok(total / BigInt::from(jobs.len()))
}

pub fn rational_to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
