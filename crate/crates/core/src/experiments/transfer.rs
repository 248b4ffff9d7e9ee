use std::collections::BTreeMap;

use serde::Serialize;

use super::{evaluate, ExperimentError, PolicySpec};
use crate::agent::SavedAgent;
use crate::env::{Env, EnvConfig};
use crate::scenario::ScenarioConfig;
use crate::stats::welch_t_test;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransferRow {
    pub scenario: u32,
    pub trials: usize,
    pub transferred_mean: f64,
    pub transferred_std: f64,
    pub specialist_mean: Option<f64>,
    pub specialist_std: Option<f64>,
    /// Two-sided Welch p-value of transferred vs specialist slowdowns.
    pub p_value: Option<f64>,
    /// Transferred agent has the lower mean slowdown.
    pub transferred_better: Option<bool>,
}

/// Evaluates one agent on each scenario without retraining, comparing against
/// the per-scenario specialist agents that are provided.
pub fn transfer_matrix(
    agent: &SavedAgent,
    scenarios: &[u32],
    specialists: &BTreeMap<u32, SavedAgent>,
    trials: usize,
    seed: u64,
    greedy: bool,
) -> Result<Vec<TransferRow>, ExperimentError> {
    let spec_for = |a: &SavedAgent, label: &str| PolicySpec::Agent {
        agent: a.clone(),
        label: label.to_string(),
        greedy,
    };
    let transferred = spec_for(agent, "transferred");
    // Fail before any evaluation if some scenario is out of reach.
    let configs = scenarios
        .iter()
        .map(|&id| -> Result<EnvConfig, ExperimentError> {
            let config = EnvConfig::new(agent.variant, ScenarioConfig::get(id)?)?;
            agent.check_compatible(&config)?;
            Ok(config)
        })
        .collect::<Result<Vec<_>, _>>()?;

    configs
        .into_iter()
        .map(|config| {
            let template = Env::new(config)?;
            let ours = evaluate(&transferred, &template, trials, seed)?;
            let theirs = specialists
                .get(&config.scenario.id)
                .map(|s| evaluate(&spec_for(s, "specialist"), &template, trials, seed))
                .transpose()?;
            let p_value = theirs
                .as_ref()
                .and_then(|t| welch_t_test(&ours.slowdowns, &t.slowdowns).ok())
                .map(|w| w.p);
            Ok(TransferRow {
                scenario: config.scenario.id,
                trials,
                transferred_mean: ours.mean_slowdown,
                transferred_std: ours.std_slowdown,
                specialist_mean: theirs.as_ref().map(|t| t.mean_slowdown),
                specialist_std: theirs.as_ref().map(|t| t.std_slowdown),
                p_value,
                transferred_better: theirs.as_ref().map(|t| ours.mean_slowdown < t.mean_slowdown),
            })
        })
        .collect()
}
