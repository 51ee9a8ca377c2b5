//! Self-describing run reports: every subcommand wraps its payload in one
//! schema-versioned object so runs can be diffed (timing aside) and replayed
//! from the echoed command line.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    /// argv echo; re-running it reproduces the report byte-for-byte apart
    /// from timing_ms
    pub command: Vec<String>,
    pub body: serde_json::Value,
    pub timing_ms: u128,
}

impl RunReport {
    pub fn new(command: Vec<String>, body: serde_json::Value, timing_ms: u128) -> RunReport {
        RunReport {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command,
            body,
            timing_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}
