//! Study orchestration: training batches, evaluation, transfer, timing,
//! CSV output and charts.

mod eval;
mod plot;
mod timing;
mod training;
mod transfer;

pub use eval::{evaluate, evaluate_policy, episode_slowdown, EvalRow, PolicySpec};
pub use plot::{bar_chart, emit_plots, line_chart, BarGroup, LineSeries};
pub use timing::{measure_training_time, TimingRow};
pub use training::{aggregate_curves, read_curve, run_training, AggregatePoint, SeedOutcome, TrainingRun};
pub use transfer::{transfer_matrix, TransferRow};

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::agent::AgentError;
use crate::env::EnvError;
use crate::scenario::UnknownScenario;
use crate::stats::StatsError;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error(transparent)]
    Agent(#[from] AgentError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Scenario(#[from] UnknownScenario),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("format error: {0}")]
    Format(String),
}

/// Reproducibility record written next to every run's outputs.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest<T: Serialize> {
    pub command: String,
    pub version: &'static str,
    pub config: T,
}

impl<T: Serialize> Manifest<T> {
    pub fn new(command: &str, config: T) -> Self {
        Self {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION"),
            config,
        }
    }

    pub fn write(&self, path: &Path) -> Result<(), ExperimentError> {
        let json = serde_json::to_string_pretty(self)
            .map_err(|e| ExperimentError::Format(e.to_string()))?;
        std::fs::write(path, json + "\n")?;
        Ok(())
    }
}

/// Writes serializable rows as a comma-separated file with a header row.
pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), ExperimentError> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
