use serde_json::Value;

use super::config::ScenarioConfig;
use crate::error::Result;

/// Whether a scenario's checks held.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Violation,
}

/// A file a scenario wants written next to its summary.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub file_name: String,
    pub contents: String,
}

#[derive(Debug, Clone)]
pub struct ScenarioOutput {
    pub summary: Value,
    pub artifacts: Vec<Artifact>,
    pub verdict: Verdict,
}

/// One runnable scenario, selected by name on the command line.
pub trait Scenario: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn run(&self, config: &ScenarioConfig) -> Result<ScenarioOutput>;
}

#[derive(Default)]
pub struct ScenarioRegistry {
    entries: Vec<Box<dyn Scenario>>,
}

impl ScenarioRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding every scenario shipped with the crate.
    pub fn builtin() -> Self {
        let mut r = Self::new();
        r.register(Box::new(super::scenarios::Simulate));
        r.register(Box::new(super::scenarios::Sweep));
        r.register(Box::new(super::scenarios::Optimize));
        r.register(Box::new(super::scenarios::Qec));
        r.register(Box::new(super::scenarios::Verify));
        r
    }

    /// Adds a scenario, replacing any existing entry with the same name.
    pub fn register(&mut self, scenario: Box<dyn Scenario>) {
        self.entries.retain(|s| s.name() != scenario.name());
        self.entries.push(scenario);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Scenario> {
        self.entries
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }
}
