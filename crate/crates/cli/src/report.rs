use daisylab::RngInfo;
use serde::Serialize;
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONTRACT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] daisylab::Error),
    #[error("{0}")]
    Contract(String),
    #[error("graph json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        use daisylab::Error as E;
        match self {
            CliError::Lib(E::Contract(_)) | CliError::Contract(_) => "contract",
            CliError::Lib(E::Capacity(_)) => "capacity",
            CliError::Lib(E::Format { .. }) | CliError::Json(_) => "format",
            CliError::Lib(E::Unrepresentable { .. }) => "unrepresentable",
            CliError::Lib(E::Inconclusive) => "inconclusive",
            CliError::Lib(E::Io(_)) => "io",
            CliError::Lib(E::Internal(_)) => "internal",
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.kind() == "internal" {
            EXIT_INTERNAL
        } else {
            EXIT_CONTRACT
        }
    }
}

pub fn contract(msg: impl Into<String>) -> CliError {
    CliError::Contract(msg.into())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Versions {
    pub daisylab: &'static str,
    pub cli: &'static str,
    pub coloring_format: u32,
}

impl Versions {
    pub fn current() -> Versions {
        Versions {
            daisylab: daisylab::VERSION,
            cli: env!("CARGO_PKG_VERSION"),
            coloring_format: daisylab::coloring::FORMAT_VERSION,
        }
    }
}

/// One line of JSON on stdout per successful run.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub command: String,
    pub argv: Vec<String>,
    pub parameters: Value,
    pub result: Value,
    pub elapsed_ms: u64,
    pub versions: Versions,
    pub rng: Option<RngInfo>,
}

/// What stderr gets when a run fails.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Diagnostic {
    pub error: &'static str,
    pub message: String,
    pub exit_code: i32,
    pub argv: Vec<String>,
}
