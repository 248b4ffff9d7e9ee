use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::workload::{WorkloadConfig, WorkloadError};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown scenario {0}; valid ids are 1..=10")]
pub struct UnknownScenario(pub u32);

/// One cluster configuration from the scenario grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub id: u32,
    /// Processors in the cluster.
    pub processors: u32,
    /// Maximum job length `d`.
    pub max_length: u64,
    /// Maximum job size `j_s`.
    pub max_size: u32,
}

const GRID: [(u32, u64, u32); 10] = [
    (10, 15, 10),
    (10, 48, 10),
    (38, 15, 32),
    (38, 33, 32),
    (38, 48, 32),
    (64, 15, 64),
    (64, 33, 32),
    (64, 33, 64),
    (64, 48, 32),
    (64, 48, 64),
];

impl ScenarioConfig {
    pub fn get(id: u32) -> Result<Self, UnknownScenario> {
        let (processors, max_length, max_size) = *GRID
            .get((id as usize).wrapping_sub(1))
            .ok_or(UnknownScenario(id))?;
        Ok(Self {
            id,
            processors,
            max_length,
            max_size,
        })
    }

    pub fn all() -> Vec<Self> {
        (1..=GRID.len() as u32).map(|id| Self::get(id).unwrap()).collect()
    }

    /// Workload with the default arrival model for this scenario.
    pub fn workload(&self, seed: u64) -> Result<WorkloadConfig, WorkloadError> {
        WorkloadConfig::new(self.max_length, self.max_size, seed)
    }
}
