use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Bumped on any change to the report layout.
pub const SCHEMA: &str = "pfol-run-report/1";

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &str, bytes: &[u8]) -> Self {
        let digest = Sha256::digest(bytes);
        InputDigest { path: path.to_string(), sha256: digest.iter().map(|b| format!("{b:02x}")).collect() }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport<'a> {
    pub schema: &'static str,
    pub command: &'a str,
    pub args: &'a [String],
    pub inputs: Vec<InputDigest>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

#[derive(Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: u8,
}

/// Failure of a command, tagged by how the process should exit.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(pfol::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(pfol::Error::Invariant(_)) => 3,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Core(pfol::Error::Invariant(_)) => "invariant",
            CliError::Core(pfol::Error::Parse(_)) => "parse",
            CliError::Core(_) => "precondition",
        }
    }
}

impl From<pfol::Error> for CliError {
    fn from(e: pfol::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

pub fn success<'a>(command: &'a str, args: &'a [String], inputs: Vec<InputDigest>, result: Value) -> RunReport<'a> {
    RunReport { schema: SCHEMA, command, args, inputs, result: Some(result), error: None }
}

pub fn failure<'a>(command: &'a str, args: &'a [String], e: &CliError) -> RunReport<'a> {
    let error = ErrorInfo { kind: e.kind(), message: e.to_string(), exit_code: e.exit_code() };
    RunReport { schema: SCHEMA, command, args, inputs: Vec::new(), result: None, error: Some(error) }
}

pub fn render(r: &RunReport<'_>, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(r).expect("serializable")
    } else {
        serde_json::to_string(r).expect("serializable")
    }
}
