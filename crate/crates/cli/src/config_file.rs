//! `--config <file>` support: a flat `key = value` file whose keys are flag
//! names. File values come first so that flags given on the command line win.

use std::path::Path;

use anyhow::{bail, Context, Result};

/// Turns config file text into command-line tokens.
pub fn to_args(text: &str) -> Result<Vec<String>> {
    let mut args = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected key = value, got {raw:?}", n + 1);
        };
        let (key, value) = (key.trim().trim_start_matches("--"), value.trim());
        if key.is_empty() || key == "config" {
            bail!("config line {}: invalid key {key:?}", n + 1);
        }
        match value {
            "true" => args.push(format!("--{key}")),
            "false" => {}
            _ => {
                args.push(format!("--{key}"));
                args.push(value.to_string());
            }
        }
    }
    Ok(args)
}

/// Splices the contents of any `--config` file into `argv` right after the
/// subcommand.
pub fn expand(argv: Vec<String>) -> Result<Vec<String>> {
    let mut path = None;
    let mut rest = Vec::with_capacity(argv.len());
    let mut it = argv.into_iter();
    while let Some(arg) = it.next() {
        if arg == "--config" {
            path = Some(it.next().context("--config needs a file")?);
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .with_context(|| format!("reading config file {path}"))?;
    let extra = to_args(&text).with_context(|| format!("in config file {path}"))?;
    let sub = rest
        .iter()
        .skip(1)
        .position(|a| !a.starts_with('-'))
        .map_or(rest.len(), |i| i + 2);
    rest.splice(sub..sub, extra);
    rest.extend(["--config".to_string(), path]);
    Ok(rest)
}
