//! `run --config`: a JSON description of one command, expanded into the
//! equivalent argument vector.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::report::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Subcommand path, e.g. `"dm-check"` or `"building audit ub"`.
    pub command: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub cap: Option<u64>,
    pub output: Option<String>,
}

pub fn load(path: &Path) -> CliResult<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Some(n.to_string()),
        _ => None,
    }
}

/// Flags are `--key value`; flat arrays become comma lists, nested values
/// are passed as JSON text, `true` is a bare flag and `false` is dropped.
pub fn to_args(cfg: &ExperimentConfig) -> CliResult<Vec<String>> {
    let mut args: Vec<String> = vec!["glocal".into()];
    args.extend(cfg.command.split_whitespace().map(String::from));
    if args.len() == 1 {
        return Err(CliError::invalid("config command is empty"));
    }
    for (key, value) in &cfg.parameters {
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            Value::Bool(true) => args.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
                args.push(flag);
                args.push(items.iter().filter_map(scalar).collect::<Vec<_>>().join(","));
            }
            Value::Array(_) | Value::Object(_) => {
                args.push(flag);
                args.push(value.to_string());
            }
            other => {
                let s = scalar(other).ok_or_else(|| CliError::invalid(format!("parameter {key}: floats are not accepted")))?;
                args.push(flag);
                args.push(s);
            }
        }
    }
    if let Some(seed) = cfg.seed {
        args.extend(["--seed".into(), seed.to_string()]);
    }
    if let Some(cap) = cfg.cap {
        args.extend(["--cap".into(), cap.to_string()]);
    }
    if let Some(out) = &cfg.output {
        args.extend(["--json-out".into(), out.clone()]);
    }
    Ok(args)
}
