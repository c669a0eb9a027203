use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Test parameters with the SP 800-22 recommended defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteParams {
    /// Significance level.
    pub alpha: f64,
    pub block_frequency_m: usize,
    pub approx_entropy_m: usize,
    pub serial_m: usize,
    pub linear_complexity_m: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            alpha: 0.01,
            block_frequency_m: 128,
            approx_entropy_m: 10,
            serial_m: 16,
            linear_complexity_m: 500,
        }
    }
}

/// p-values of one test on one stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub test_name: String,
    pub p_values: Vec<f64>,
    /// Every p-value is at least alpha.
    pub passed: bool,
    pub parameters: BTreeMap<String, u64>,
    pub statistics: BTreeMap<String, f64>,
    /// Set when a recommended (not required) input condition is unmet; the
    /// p-values are still the exact values of the test statistic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub advisory: Option<String>,
}

impl TestResult {
    pub(crate) fn new(test_name: &str, p_values: Vec<f64>, alpha: f64) -> Self {
        debug_assert!(!p_values.is_empty());
        let p_values: Vec<f64> = p_values.into_iter().map(|p| p.clamp(0.0, 1.0)).collect();
        let passed = p_values.iter().all(|&p| p >= alpha);
        Self {
            test_name: test_name.to_string(),
            p_values,
            passed,
            parameters: BTreeMap::new(),
            statistics: BTreeMap::new(),
            advisory: None,
        }
    }

    pub(crate) fn param(mut self, name: &str, value: u64) -> Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    pub(crate) fn stat(mut self, name: &str, value: f64) -> Self {
        self.statistics.insert(name.to_string(), value);
        self
    }

    pub(crate) fn advise(mut self, notes: Vec<String>) -> Self {
        if !notes.is_empty() {
            self.advisory = Some(notes.join("; "));
        }
        self
    }
}

/// A test either ran or was skipped because a hard requirement failed.
/// Skipped tests carry no p-value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TestOutcome {
    Ran(TestResult),
    Skipped { test_name: String, reason: String },
}

impl TestOutcome {
    pub(crate) fn skipped(test_name: &str, reason: impl Into<String>) -> Self {
        TestOutcome::Skipped {
            test_name: test_name.to_string(),
            reason: reason.into(),
        }
    }

    pub fn test_name(&self) -> &str {
        match self {
            TestOutcome::Ran(r) => &r.test_name,
            TestOutcome::Skipped { test_name, .. } => test_name,
        }
    }

    pub fn result(&self) -> Option<&TestResult> {
        match self {
            TestOutcome::Ran(r) => Some(r),
            TestOutcome::Skipped { .. } => None,
        }
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self, TestOutcome::Skipped { .. })
    }

    /// Unwraps a ran test; panics on a skipped one.
    pub fn expect_ran(self) -> TestResult {
        match self {
            TestOutcome::Ran(r) => r,
            TestOutcome::Skipped { test_name, reason } => {
                panic!("{test_name} was skipped: {reason}")
            }
        }
    }
}
