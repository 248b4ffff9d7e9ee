use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::EnvError;
use crate::scenario::ScenarioConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Image,
    Compact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transitions {
    Dense,
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RewardScope {
    /// Every job in the system: running, window and backlog.
    All,
    /// Only queued jobs inside the window.
    Window,
}

/// The MDP variant, independent of the cluster it runs on.
///
/// Textual form: `rep={image|compact},trans={dense|sparse},rew={all|window},W=<int>,H=<int>,T=<int>`.
/// Keys may appear in any order and missing keys take the defaults of the
/// base variant (`rep=image,trans=dense,rew=all,W=10,H=20,T=100`). The
/// optional `norm=1` key turns on compact-feature normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnvVariant {
    pub representation: Representation,
    pub transitions: Transitions,
    pub reward_scope: RewardScope,
    /// Job-slot window `W`.
    pub window: usize,
    /// Time horizon `H` encoded in observations.
    pub horizon: usize,
    /// Episode length `T` in simulator time steps.
    pub episode_length: u64,
    pub normalize: bool,
}

impl Default for EnvVariant {
    fn default() -> Self {
        Self {
            representation: Representation::Image,
            transitions: Transitions::Dense,
            reward_scope: RewardScope::All,
            window: 10,
            horizon: 20,
            episode_length: 100,
            normalize: false,
        }
    }
}

impl EnvVariant {
    /// Compact representation, sparse transitions and windowed reward.
    pub fn compact_sparse_window() -> Self {
        Self {
            representation: Representation::Compact,
            transitions: Transitions::Sparse,
            reward_scope: RewardScope::Window,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), EnvError> {
        if self.window < 1 || self.horizon < 1 || self.episode_length < 1 {
            return Err(EnvError::Config(format!(
                "W, H and T must all be >= 1 (got W={}, H={}, T={})",
                self.window, self.horizon, self.episode_length
            )));
        }
        Ok(())
    }

    /// Number of discrete actions (`W` slots plus the no-op).
    pub fn action_count(&self) -> usize {
        self.window + 1
    }

    /// Observation length for a cluster of `processors`.
    pub fn observation_len(&self, processors: u32) -> usize {
        let (rows, cols) = self.observation_shape(processors);
        rows * cols
    }

    /// `(rows, cols)`; compact observations are a single row.
    pub fn observation_shape(&self, processors: u32) -> (usize, usize) {
        match self.representation {
            Representation::Compact => (1, 2 * self.horizon + 8 * self.window + 1),
            Representation::Image => {
                let np = processors as usize;
                (self.horizon, np + self.window * np + 1)
            }
        }
    }

    /// Human-readable label as used in chart legends.
    pub fn label(&self) -> String {
        let mut parts = vec![match self.representation {
            Representation::Image => "Image-like",
            Representation::Compact => "Compact",
        }];
        if self.transitions == Transitions::Sparse {
            parts.push("Sparse");
        }
        if self.reward_scope == RewardScope::Window {
            parts.push("Reduced");
        }
        parts.join(" + ")
    }
}

impl fmt::Display for EnvVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rep = match self.representation {
            Representation::Image => "image",
            Representation::Compact => "compact",
        };
        let trans = match self.transitions {
            Transitions::Dense => "dense",
            Transitions::Sparse => "sparse",
        };
        let rew = match self.reward_scope {
            RewardScope::All => "all",
            RewardScope::Window => "window",
        };
        write!(
            f,
            "rep={rep},trans={trans},rew={rew},W={},H={},T={}",
            self.window, self.horizon, self.episode_length
        )?;
        if self.normalize {
            write!(f, ",norm=1")?;
        }
        Ok(())
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, EnvError> {
    value
        .parse()
        .map_err(|_| EnvError::Config(format!("{key} expects an integer, got {value:?}")))
}

/// Parses a variant string that may also carry `scenario=<id>`.
pub fn parse_env_spec(spec: &str) -> Result<(EnvVariant, Option<u32>), EnvError> {
    let mut variant = EnvVariant::default();
    let mut scenario = None;
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| EnvError::Config(format!("expected key=value, got {item:?}")))?;
        match key {
            "rep" => {
                variant.representation = match value {
                    "image" => Representation::Image,
                    "compact" => Representation::Compact,
                    _ => return Err(EnvError::Config(format!("unknown representation {value:?}"))),
                }
            }
            "trans" => {
                variant.transitions = match value {
                    "dense" => Transitions::Dense,
                    "sparse" => Transitions::Sparse,
                    _ => return Err(EnvError::Config(format!("unknown transitions {value:?}"))),
                }
            }
            "rew" => {
                variant.reward_scope = match value {
                    "all" => RewardScope::All,
                    "window" => RewardScope::Window,
                    _ => return Err(EnvError::Config(format!("unknown reward scope {value:?}"))),
                }
            }
            "W" => variant.window = parse_num(key, value)?,
            "H" => variant.horizon = parse_num(key, value)?,
            "T" => variant.episode_length = parse_num(key, value)?,
            "norm" => variant.normalize = parse_num::<u8>(key, value)? != 0,
            "scenario" => scenario = Some(parse_num(key, value)?),
            _ => return Err(EnvError::Config(format!("unknown key {key:?}"))),
        }
    }
    variant.validate()?;
    Ok((variant, scenario))
}

impl FromStr for EnvVariant {
    type Err = EnvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_env_spec(s)? {
            (variant, None) => Ok(variant),
            (_, Some(_)) => Err(EnvError::Config(
                "scenario is not part of a variant string".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvConfig {
    pub variant: EnvVariant,
    pub scenario: ScenarioConfig,
    /// Backlog column cap for the image representation; the column is also
    /// clipped at `H`.
    pub backlog_view_cap: usize,
}

impl EnvConfig {
    pub fn new(variant: EnvVariant, scenario: ScenarioConfig) -> Result<Self, EnvError> {
        variant.validate()?;
        Ok(Self {
            variant,
            scenario,
            backlog_view_cap: variant.horizon,
        })
    }

    pub fn observation_len(&self) -> usize {
        self.variant.observation_len(self.scenario.processors)
    }

    pub fn observation_shape(&self) -> (usize, usize) {
        self.variant.observation_shape(self.scenario.processors)
    }
}
