use std::fmt;
use std::process::ExitCode;

use latpoly::polytope::DEFAULT_POINT_CAP;
use latpoly::group::DEFAULT_BALL_CAP;
use serde_json::{json, Value};

/// Default seed of the randomized verification rows.
pub const DEFAULT_SEED: u64 = 20_100_301;

#[derive(Clone, Debug)]
pub struct Settings {
    pub pretty: bool,
    pub point_cap: u64,
    pub ball_cap: usize,
    pub seed: u64,
    pub timing: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            pretty: false,
            point_cap: DEFAULT_POINT_CAP,
            ball_cap: DEFAULT_BALL_CAP,
            seed: DEFAULT_SEED,
            timing: false,
        }
    }
}

/// What a command produced: the JSON result, a human-readable rendering,
/// and whether a verification failed.
#[derive(Clone, Debug)]
pub struct Output {
    pub inputs: Value,
    pub result: Value,
    pub text: String,
    pub failed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable or malformed input. Exit code 2.
    Input(String),
    /// A configured cap was hit. Exit code 3.
    Cap(String),
    /// A consistency check failed. Exit code 1.
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Cap(m) => write!(f, "{m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<latpoly::Error> for CliError {
    fn from(e: latpoly::Error) -> Self {
        match e {
            latpoly::Error::ResourceCap { .. } => CliError::Cap(e.to_string()),
            latpoly::Error::Internal(_) => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// The JSON envelope printed by every command. Keys serialize in sorted
/// order, so output is byte-for-byte reproducible; `elapsed_ms` is only
/// present when timing was requested.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub elapsed_ms: Option<u128>,
}

impl RunReport {
    pub fn to_value(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
        });
        if let Some(ms) = self.elapsed_ms {
            v["elapsed_ms"] = json!(ms as u64);
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_value()).expect("report serializes")
    }
}

pub fn exit_code(output: &Result<Output, CliError>) -> ExitCode {
    match output {
        Ok(o) if o.failed => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => ExitCode::from(e.exit_code()),
    }
}
