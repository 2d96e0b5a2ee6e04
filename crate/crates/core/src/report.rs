//! Check lists and suite reports shared by the verification layers and the CLI.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = "qhomology/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
  Pass,
  Fail,
}

/// One named identity or property with an optional witness explaining a failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
  pub id:      String,
  pub status:  Status,
  #[serde(skip_serializing_if = "Option::is_none", default)]
  pub witness: Option<String>,
}

impl Check {
  pub fn pass(id: impl Into<String>) -> Self { Check { id: id.into(), status: Status::Pass, witness: None } }

  pub fn fail(id: impl Into<String>, witness: impl Into<String>) -> Self {
    Check { id: id.into(), status: Status::Fail, witness: Some(witness.into()) }
  }

  /// Pass when `witness` is `None`.
  pub fn from_witness(id: impl Into<String>, witness: Option<String>) -> Self {
    match witness {
      None => Check::pass(id),
      Some(w) => Check::fail(id, w),
    }
  }

  pub fn expect_eq<T: PartialEq + std::fmt::Debug>(id: impl Into<String>, got: T, expected: T) -> Self {
    if got == expected {
      Check::pass(id)
    } else {
      Check::fail(id, format!("got {got:?}, expected {expected:?}"))
    }
  }

  pub fn passed(&self) -> bool { self.status == Status::Pass }
}

/// Result of one suite at one height.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
  pub suite:  String,
  pub h:      usize,
  pub checks: Vec<Check>,
  #[serde(skip_serializing_if = "Option::is_none", default)]
  pub seed:   Option<u64>,
  /// Computed quantities worth echoing (dimensions, ranks).
  #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
  pub data:   BTreeMap<String, serde_json::Value>,
}

impl SuiteReport {
  pub fn new(suite: &str, h: usize) -> Self {
    SuiteReport { suite: suite.into(), h, checks: Vec::new(), seed: None, data: BTreeMap::new() }
  }

  pub fn push(&mut self, check: Check) { self.checks.push(check); }

  pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) { self.checks.extend(checks); }

  pub fn record(&mut self, key: &str, value: impl Serialize) {
    self.data.insert(key.into(), serde_json::to_value(value).expect("serializable"));
  }

  pub fn passed(&self) -> bool { self.checks.iter().all(Check::passed) }

  pub fn failures(&self) -> impl Iterator<Item = &Check> { self.checks.iter().filter(|c| !c.passed()) }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn json_shape() {
    let mut r = SuiteReport::new("relations", 2);
    r.push(Check::pass("hecke"));
    r.push(Check::fail("det", "(1,0)"));
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["checks"][0], serde_json::json!({"id": "hecke", "status": "pass"}));
    assert_eq!(v["checks"][1]["witness"], "(1,0)");
    assert!(v.get("seed").is_none());
    assert!(!r.passed());
  }
}
