use std::time::Instant;

use serde::Serialize;

use super::ExperimentError;
use crate::agent::{shape_for, train, PpoConfig};
use crate::env::{EnvConfig, EnvVariant};
use crate::scenario::ScenarioConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimingRow {
    pub scenario: u32,
    pub variant: String,
    pub horizon: usize,
    pub input_len: usize,
    pub param_count: usize,
    pub steps: u64,
    pub repetition: usize,
    pub seconds: f64,
}

/// Wall-clock time of `reps` training runs of `steps` agent steps each.
pub fn measure_training_time(
    variant: EnvVariant,
    scenario: u32,
    steps: u64,
    reps: usize,
    ppo: &PpoConfig,
) -> Result<Vec<TimingRow>, ExperimentError> {
    let config = EnvConfig::new(variant, ScenarioConfig::get(scenario)?)?;
    let shape = shape_for(&config);
    let cfg = PpoConfig {
        total_steps: steps,
        ..*ppo
    };
    (0..reps)
        .map(|rep| {
            let start = Instant::now();
            if steps > 0 {
                train(config, &cfg, rep as u64)?;
            }
            Ok(TimingRow {
                scenario,
                variant: variant.to_string(),
                horizon: variant.horizon,
                input_len: shape.input,
                param_count: shape.param_count(),
                steps,
                repetition: rep,
                seconds: start.elapsed().as_secs_f64(),
            })
        })
        .collect()
}
