//! Report assembly and serialization.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::RunConfig;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Suite {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Suite {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            checks: Vec::new(),
        }
    }

    /// value ≤ bound
    pub fn at_most(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        self.push(name, value, bound, value <= bound);
    }

    /// value ≥ bound
    pub fn at_least(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        self.push(name, value, bound, value >= bound);
    }

    pub fn push(&mut self, name: impl Into<String>, value: f64, bound: f64, pass: bool) {
        self.checks.push(Check {
            name: name.into(),
            value,
            bound,
            pass,
        });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Serialize)]
pub struct Report<'a> {
    pub config: &'a RunConfig,
    pub suites: Vec<Suite>,
    /// Plot-ready data table, written instead of the check list in CSV mode.
    #[serde(skip)]
    pub table: Option<String>,
}

impl Report<'_> {
    pub fn first_failure(&self) -> Option<(&Suite, &Check)> {
        self.suites
            .iter()
            .find_map(|s| s.checks.iter().find(|c| !c.pass).map(|c| (s, c)))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn checks_csv(&self) -> String {
        let mut s = String::from("suite,check,value,bound,pass\n");
        for suite in &self.suites {
            for c in &suite.checks {
                let _ = writeln!(s, "{},{},{:.16e},{:.16e},{}", suite.name, c.name, c.value, c.bound, c.pass);
            }
        }
        s
    }

    pub fn to_csv(&self) -> String {
        self.table.clone().unwrap_or_else(|| self.checks_csv())
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for suite in &self.suites {
            let failed = suite.checks.iter().filter(|c| !c.pass).count();
            let _ = writeln!(
                s,
                "{:<16} {} ({}/{} checks)",
                suite.name,
                if suite.pass() { "pass" } else { "FAIL" },
                suite.checks.len() - failed,
                suite.checks.len()
            );
        }
        s
    }
}
