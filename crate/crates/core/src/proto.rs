//! Newline-delimited JSON protocol exposing one [`Env`] to another process.
//!
//! Requests are single-line objects `{"id": n, "op": "spec" | "reset" |
//! "step" | "close", "seed": n, "action": n}`. Every response is one line
//! echoing the request `id`. Failures produce `{"id": n, "error": "..."}`
//! and leave the session open. Numbers are written in shortest round-trip
//! form, so observations survive the trip bit-exactly.

use std::io::{self, BufRead, Write};

use serde::Deserialize;
use serde_json::{json, Value};

use crate::env::{Env, EnvConfig, Observation, StepResult};

pub const PROTOCOL_VERSION: &str = "v1";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Request {
    #[serde(default)]
    id: Option<u64>,
    op: String,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    action: Option<usize>,
}

fn observation_json(obs: &Observation) -> Value {
    json!({ "data": obs.as_slice(), "shape": obs.shape() })
}

fn step_json(r: &StepResult) -> Value {
    json!({
        "observation": observation_json(&r.observation),
        "reward": r.reward,
        "done": r.done,
        "info": { "sim_steps": r.info.sim_steps, "scheduled": r.info.scheduled },
    })
}

/// One protocol session over one environment.
pub struct Session {
    env: Env,
    started: bool,
    closed: bool,
}

impl Session {
    pub fn new(config: EnvConfig) -> Result<Self, crate::env::EnvError> {
        Ok(Self {
            env: Env::new(config)?,
            started: false,
            closed: false,
        })
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    fn spec(&self) -> Value {
        let c = self.env.config();
        let v = c.variant;
        let (rows, cols) = c.observation_shape();
        let shape = if rows == 1 { vec![cols] } else { vec![rows, cols] };
        json!({
            "version": PROTOCOL_VERSION,
            "shape": shape,
            "actions": v.action_count(),
            "variant": v.to_string(),
            "flags": {
                "representation": v.representation,
                "transitions": v.transitions,
                "reward_scope": v.reward_scope,
                "window": v.window,
                "horizon": v.horizon,
                "episode_length": v.episode_length,
                "normalize": v.normalize,
            },
            "scenario": c.scenario,
        })
    }

    fn dispatch(&mut self, req: &Request) -> Result<Value, String> {
        match req.op.as_str() {
            "spec" => Ok(self.spec()),
            "reset" => {
                let seed = req.seed.ok_or("reset needs a seed")?;
                let obs = self.env.reset(seed).map_err(|e| e.to_string())?;
                self.started = true;
                Ok(json!({
                    "observation": observation_json(&obs),
                    "reward": 0.0,
                    "done": false,
                    "info": {},
                }))
            }
            "step" => {
                let action = req.action.ok_or("step needs an action")?;
                if !self.started {
                    return Err("reset required before step".into());
                }
                self.env.step(action).map(|r| step_json(&r)).map_err(|e| e.to_string())
            }
            "close" => {
                self.closed = true;
                Ok(json!({ "closed": true }))
            }
            other => Err(format!("unknown op {other:?}")),
        }
    }

    /// Handles one request line and returns the response line.
    pub fn handle_line(&mut self, line: &str) -> String {
        let (id, body) = match serde_json::from_str::<Request>(line) {
            Ok(req) => (req.id, self.dispatch(&req)),
            Err(e) => {
                let id = serde_json::from_str::<Value>(line)
                    .ok()
                    .and_then(|v| v.get("id").and_then(Value::as_u64));
                (id, Err(format!("malformed request: {e}")))
            }
        };
        let mut out = match body {
            Ok(v) => v,
            Err(msg) => json!({ "error": msg }),
        };
        out["id"] = json!(id);
        out.to_string()
    }
}

/// Serves requests from `input` until `close` or end of input.
pub fn serve<R: BufRead, W: Write>(config: EnvConfig, input: R, mut output: W) -> io::Result<()> {
    let mut session = Session::new(config).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        writeln!(output, "{}", session.handle_line(&line))?;
        output.flush()?;
        if session.is_closed() {
            break;
        }
    }
    Ok(())
}
