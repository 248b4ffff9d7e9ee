use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::{write_csv, ExperimentError, Manifest};
use crate::agent::{save_params, train, CurvePoint, PpoConfig, SavedAgent};
use crate::env::{EnvConfig, EnvVariant};
use crate::scenario::ScenarioConfig;
use crate::stats::{mean, std_dev};

/// A batch of independent training runs sharing scenario, variant and
/// hyperparameters, one per seed.
#[derive(Debug, Clone, Serialize)]
pub struct TrainingRun {
    pub scenario: u32,
    #[serde(serialize_with = "as_display")]
    pub variant: EnvVariant,
    pub ppo: PpoConfig,
    pub seeds: Vec<u64>,
    pub out_dir: PathBuf,
}

fn as_display<S: serde::Serializer>(v: &EnvVariant, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedOutcome {
    pub seed: u64,
    pub curve_file: Option<PathBuf>,
    pub params_file: Option<PathBuf>,
    pub episodes: usize,
    pub final_mean_return: Option<f64>,
    /// Set when training for this seed failed; the other seeds still run.
    pub error: Option<String>,
    #[serde(skip)]
    pub curve: Vec<CurvePoint>,
}

/// Mean and sample standard deviation across seeds at one curve position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AggregatePoint {
    pub step: u64,
    pub mean: f64,
    pub std: f64,
    pub seeds: usize,
}

impl TrainingRun {
    pub fn curve_path(&self, seed: u64) -> PathBuf {
        self.out_dir.join(format!("curve_s{}_seed{seed}.csv", self.scenario))
    }

    pub fn params_path(&self, seed: u64) -> PathBuf {
        self.out_dir.join(format!("agent_s{}_seed{seed}.params", self.scenario))
    }

    pub fn aggregate_path(&self) -> PathBuf {
        self.out_dir.join(format!("curve_s{}_aggregate.csv", self.scenario))
    }

    pub fn manifest_path(&self) -> PathBuf {
        self.out_dir.join(format!("train_s{}_manifest.json", self.scenario))
    }
}

fn train_seed(run: &TrainingRun, env_config: EnvConfig, seed: u64) -> SeedOutcome {
    let mut outcome = SeedOutcome {
        seed,
        curve_file: None,
        params_file: None,
        episodes: 0,
        final_mean_return: None,
        error: None,
        curve: Vec::new(),
    };
    let result = (|| -> Result<(), ExperimentError> {
        let trained = train(env_config, &run.ppo, seed)?;
        let curve_path = run.curve_path(seed);
        write_csv(&curve_path, &trained.curve)?;
        let params_path = run.params_path(seed);
        let agent = SavedAgent {
            net: trained.net,
            variant: run.variant,
            scenario: Some(run.scenario),
        };
        save_params(&agent, BufWriter::new(File::create(&params_path)?))?;
        outcome.curve_file = Some(curve_path);
        outcome.params_file = Some(params_path);
        outcome.episodes = trained.episode_returns.len();
        outcome.final_mean_return = trained.curve.last().map(|p| p.mean_return);
        outcome.curve = trained.curve;
        Ok(())
    })();
    if let Err(e) = result {
        outcome.error = Some(e.to_string());
    }
    outcome
}

/// Trains one agent per seed in parallel, writing a curve CSV and a params
/// file per seed, the cross-seed aggregate curve and a JSON manifest.
pub fn run_training(run: &TrainingRun) -> Result<Vec<SeedOutcome>, ExperimentError> {
    let env_config = EnvConfig::new(run.variant, ScenarioConfig::get(run.scenario)?)?;
    run.ppo.validate()?;
    std::fs::create_dir_all(&run.out_dir)?;

    let outcomes: Vec<SeedOutcome> = run
        .seeds
        .par_iter()
        .map(|&seed| train_seed(run, env_config, seed))
        .collect();

    let curves: Vec<&[CurvePoint]> = outcomes
        .iter()
        .filter(|o| o.error.is_none())
        .map(|o| o.curve.as_slice())
        .collect();
    write_csv(&run.aggregate_path(), &aggregate_curves(&curves))?;

    #[derive(Serialize)]
    struct Record<'a> {
        run: &'a TrainingRun,
        label: String,
        outcomes: &'a [SeedOutcome],
    }
    Manifest::new(
        "train",
        Record {
            run,
            label: run.variant.label(),
            outcomes: &outcomes,
        },
    )
    .write(&run.manifest_path())?;
    Ok(outcomes)
}

/// Position-wise mean and standard deviation of several curves, truncated to
/// the shortest one.
pub fn aggregate_curves(curves: &[&[CurvePoint]]) -> Vec<AggregatePoint> {
    let len = curves.iter().map(|c| c.len()).min().unwrap_or(0);
    (0..len)
        .map(|i| {
            let ys: Vec<f64> = curves.iter().map(|c| c[i].mean_return).collect();
            AggregatePoint {
                step: curves[0][i].step,
                mean: mean(&ys),
                std: std_dev(&ys),
                seeds: ys.len(),
            }
        })
        .collect()
}

/// Reads a per-seed curve file written by [`run_training`].
pub fn read_curve(path: &Path) -> Result<Vec<CurvePoint>, ExperimentError> {
    let mut reader = csv::Reader::from_path(path)?;
    reader
        .deserialize()
        .collect::<Result<Vec<CurvePoint>, _>>()
        .map_err(|e| ExperimentError::Format(format!("{}: {e}", path.display())))
}
