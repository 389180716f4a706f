use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified claim. A failure carries the seed and the inputs that reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub claim: String,
    pub params: BTreeMap<String, Value>,
    pub seed: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(claim: &str, seed: u64) -> Self {
        Self {
            claim: claim.to_string(),
            params: BTreeMap::new(),
            seed,
            status: Status::Pass,
            witness: None,
            data: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn datum(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.data.insert(key.to_string(), v.into());
        self
    }

    pub fn fail(mut self, witness: Value) -> Self {
        self.status = Status::Fail;
        self.witness = Some(witness);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_line(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {} {}", self.claim, params.join(" "));
        if let Some(w) = &self.witness {
            line.push_str(&format!(" witness={w}"));
        }
        line
    }
}
