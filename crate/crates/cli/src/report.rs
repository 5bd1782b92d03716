//! Machine-readable run reports. The JSON body is byte-stable for fixed
//! inputs; wall-clock timings live in a separate field that stability
//! checks exclude.

use serde::Serialize;

#[derive(Serialize)]
pub struct RunReport<T: Serialize> {
    pub schema: u32,
    pub command: String,
    pub cases: Vec<T>,
    pub verdict: String,
    /// (case name, milliseconds); excluded from byte-stability comparisons.
    pub timings: Vec<(String, u128)>,
}

impl<T: Serialize> RunReport<T> {
    pub fn new(command: String, cases: Vec<T>, ok: bool, timings: Vec<(String, u128)>) -> Self {
        RunReport {
            schema: 1,
            command,
            cases,
            verdict: if ok { "pass".into() } else { "fail".into() },
            timings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

#[derive(Serialize)]
pub struct CheckCaseReport {
    pub name: String,
    pub tag: String,
    pub status: String,
    pub order: i64,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Serialize)]
pub struct ConstantReport {
    pub name: String,
    pub outcome: String,
}
