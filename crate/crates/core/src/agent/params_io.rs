//! Parameter file format.
//!
//! ```text
//! schedrl-params v1 input=<n> actions=<n> W=<n> H=<n> hidden=<n>,<n> activation=<name> scenario=<id> env=<variant> count=<n>\n
//! <count little-endian f64 values>
//! ```
//!
//! The header is one UTF-8 line of space-separated `key=value` tokens in the
//! order above (`scenario=0` when unknown); `env` holds the variant string,
//! which never contains spaces. The payload is the flat parameter vector in
//! the layout documented on [`PolicyNet`](super::PolicyNet).

use std::collections::HashMap;
use std::io::{BufRead, Write};

use super::{shape_for, Activation, AgentError, NetworkShape, PolicyNet};
use crate::env::{EnvConfig, EnvVariant};

const MAGIC: &str = "schedrl-params";
const VERSION: &str = "v1";

#[derive(Debug, Clone, PartialEq)]
pub struct SavedAgent {
    pub net: PolicyNet,
    /// Variant the agent was trained on.
    pub variant: EnvVariant,
    /// Scenario the agent was trained on, when known.
    pub scenario: Option<u32>,
}

impl SavedAgent {
    /// Checks that the network accepts observations and actions of `config`.
    pub fn check_compatible(&self, config: &EnvConfig) -> Result<(), AgentError> {
        let expected = shape_for(config);
        let shape = self.net.shape();
        if shape.input != expected.input || shape.actions != expected.actions {
            return Err(AgentError::Shape(format!(
                "agent trained on {} ({} inputs, {} actions) cannot run on scenario {} with {} \
                 ({} inputs, {} actions); image observations grow with the processor count, \
                 only compact agents transfer across clusters",
                self.variant,
                shape.input,
                shape.actions,
                config.scenario.id,
                config.variant,
                expected.input,
                expected.actions
            )));
        }
        Ok(())
    }
}

pub fn save_params<W: Write>(agent: &SavedAgent, mut sink: W) -> Result<(), AgentError> {
    let shape = agent.net.shape();
    writeln!(
        sink,
        "{MAGIC} {VERSION} input={} actions={} W={} H={} hidden={},{} activation={} scenario={} env={} count={}",
        shape.input,
        shape.actions,
        agent.variant.window,
        agent.variant.horizon,
        shape.hidden[0],
        shape.hidden[1],
        shape.activation.name(),
        agent.scenario.unwrap_or(0),
        agent.variant,
        agent.net.param_count()
    )?;
    let mut payload = Vec::with_capacity(agent.net.param_count() * 8);
    for p in agent.net.params() {
        payload.extend_from_slice(&p.to_le_bytes());
    }
    sink.write_all(&payload)?;
    Ok(())
}

fn format_err(msg: impl Into<String>) -> AgentError {
    AgentError::Format(msg.into())
}

pub fn load_params<R: BufRead>(mut source: R) -> Result<SavedAgent, AgentError> {
    let mut header = Vec::new();
    source.read_until(b'\n', &mut header)?;
    let header = String::from_utf8(header).map_err(|_| format_err("header is not UTF-8"))?;
    let mut tokens = header.trim_end().split(' ');
    if tokens.next() != Some(MAGIC) {
        return Err(format_err("not a schedrl params file"));
    }
    match tokens.next() {
        Some(VERSION) => {}
        other => return Err(format_err(format!("unsupported version {other:?}"))),
    }
    let fields: HashMap<&str, &str> = tokens
        .map(|t| t.split_once('=').ok_or_else(|| format_err(format!("bad header token {t:?}"))))
        .collect::<Result<_, _>>()?;
    let get = |key: &str| -> Result<&str, AgentError> {
        fields
            .get(key)
            .copied()
            .ok_or_else(|| format_err(format!("header lacks {key}")))
    };
    let num = |key: &str| -> Result<usize, AgentError> {
        get(key)?
            .parse()
            .map_err(|_| format_err(format!("{key} is not an integer")))
    };

    let hidden: Vec<usize> = get("hidden")?
        .split(',')
        .map(|h| h.parse().map_err(|_| format_err("bad hidden sizes")))
        .collect::<Result<_, _>>()?;
    let [h1, h2] = hidden[..] else {
        return Err(format_err("expected two hidden layer sizes"));
    };
    let activation = Activation::from_name(get("activation")?)
        .ok_or_else(|| format_err("unknown activation"))?;
    let shape = NetworkShape {
        input: num("input")?,
        hidden: [h1, h2],
        actions: num("actions")?,
        activation,
    };
    let variant: EnvVariant = get("env")?
        .parse()
        .map_err(|e| format_err(format!("bad env variant: {e}")))?;
    if variant.window != num("W")? || variant.horizon != num("H")? {
        return Err(format_err("W/H disagree with the env variant"));
    }
    let count = num("count")?;
    if count != shape.param_count() {
        return Err(AgentError::Shape(format!(
            "header declares {count} parameters but the architecture has {}",
            shape.param_count()
        )));
    }
    let scenario = match num("scenario")? {
        0 => None,
        id => Some(id as u32),
    };

    let mut payload = vec![0u8; count * 8];
    source
        .read_exact(&mut payload)
        .map_err(|_| format_err("payload shorter than declared"))?;
    if source.read(&mut [0u8; 1])? != 0 {
        return Err(format_err("trailing bytes after payload"));
    }
    let params = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(SavedAgent {
        net: PolicyNet::from_params(shape, params)?,
        variant,
        scenario,
    })
}
