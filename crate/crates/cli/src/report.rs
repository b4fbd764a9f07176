//! Experiment reports, verdicts, exit codes and canonical JSON output.

use std::fmt;
use std::path::Path;
use std::time::Duration;

use glocal_core::Error as CoreError;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const TOOL: &str = concat!("glocal ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A claim checked and found not to hold as stated; recorded, not fatal.
    Documented,
}

/// One checked claim, labelled by the topic it tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub anchor: String,
    pub claim: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    pub fn check(anchor: &str, claim: &str, ok: bool) -> Self {
        Verdict { anchor: anchor.into(), claim: claim.into(), status: if ok { Status::Pass } else { Status::Fail }, detail: None }
    }

    /// `Documented` when the audited claim fails, `Pass` when it holds.
    pub fn audit(anchor: &str, claim: &str, holds: bool) -> Self {
        let status = if holds { Status::Pass } else { Status::Documented };
        Verdict { anchor: anchor.into(), claim: claim.into(), status, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug)]
pub enum CliError {
    InvalidConfig(String),
    CapExceeded(String),
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 1,
            CliError::InvalidConfig(_) => 2,
            CliError::CapExceeded(_) => 3,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::InvalidConfig(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::InvalidConfig(m) => write!(f, "invalid config: {m}"),
            CliError::CapExceeded(m) => write!(f, "cap exceeded: {m}"),
            CliError::Invariant(m) => write!(f, "invariant failure: {m}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::CapExceeded { .. } => CliError::CapExceeded(msg),
            CoreError::NotPrime(_)
            | CoreError::BadSubfield { .. }
            | CoreError::UnsupportedRank(_)
            | CoreError::RankMismatch { .. }
            | CoreError::ZeroEntry
            | CoreError::ZeroValue
            | CoreError::CharacterMismatch
            | CoreError::BaseMismatch { .. }
            | CoreError::NotInvertible
            | CoreError::NotPositiveDefinite
            | CoreError::NonIntegral
            | CoreError::Invalid(_) => CliError::InvalidConfig(msg),
            _ => CliError::Invariant(msg),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Structured results plus verdicts for one command.
#[derive(Debug)]
pub struct Outcome {
    pub results: Value,
    pub verdicts: Vec<Verdict>,
}

impl Outcome {
    pub fn new(results: Value, verdicts: Vec<Verdict>) -> Self {
        Outcome { results, verdicts }
    }
}

pub fn overall(verdicts: &[Verdict]) -> Status {
    if verdicts.iter().any(|v| v.status == Status::Fail) {
        Status::Fail
    } else {
        Status::Pass
    }
}

/// Every verdict carries a nonempty topic anchor and claim.
pub fn lint(verdicts: &[Verdict]) -> Result<(), String> {
    match verdicts.iter().find(|v| v.anchor.trim().is_empty() || v.claim.trim().is_empty()) {
        Some(v) => Err(format!("verdict without anchor: {v:?}")),
        None => Ok(()),
    }
}

/// The report as canonical JSON (sorted keys, integers and strings only).
/// The digest covers everything except `timing_ms`.
pub fn render(command: &[String], seed: u64, outcome: &Outcome, took: Duration) -> String {
    let status = overall(&outcome.verdicts);
    let body = json!({
        "tool": TOOL,
        "command": command,
        "seed": seed,
        "results": outcome.results,
        "verdicts": outcome.verdicts,
        "status": status,
    });
    let digest = digest(&body);
    let mut full = body;
    let obj = full.as_object_mut().expect("report is an object");
    obj.insert("digest".into(), Value::String(digest));
    obj.insert("timing_ms".into(), json!(took.as_millis() as u64));
    let mut out = serde_json::to_string_pretty(&full).expect("values serialize");
    out.push('\n');
    out
}

pub fn digest(body: &Value) -> String {
    let bytes = serde_json::to_vec(body).expect("values serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn write_out(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::invalid(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// An error report, emitted so partial failures still leave a record.
pub fn render_error(command: &[String], seed: u64, err: &CliError) -> String {
    let body = json!({
        "tool": TOOL,
        "command": command,
        "seed": seed,
        "error": err.to_string(),
        "exit_code": err.exit_code(),
        "status": Status::Fail,
    });
    let mut out = serde_json::to_string_pretty(&body).expect("values serialize");
    out.push('\n');
    out
}
