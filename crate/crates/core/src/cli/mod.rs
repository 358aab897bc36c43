//! Command-line front end. Scenarios are looked up by name in a
//! [`ScenarioRegistry`] and run against a JSON [`ScenarioConfig`].

pub mod config;
pub mod output;
pub mod registry;
pub mod scenarios;

use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

pub use config::ScenarioConfig;
pub use registry::{Artifact, Scenario, ScenarioOutput, ScenarioRegistry, Verdict};

use crate::error::{Error, Result};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "gatecost",
    version,
    about = "Gate cost and marginal-information bounds"
)]
pub struct Args {
    /// Scenario to run (simulate, sweep, optimize, qec, verify).
    pub scenario: String,

    /// JSON configuration file.
    #[arg(long)]
    pub config: PathBuf,

    /// Output directory; overrides `output_path` from the config.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Overrides the config seed.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Overrides the config step count.
    #[arg(long)]
    pub steps: Option<usize>,
}

/// Loads the config, applies overrides, runs the scenario, writes its
/// artifacts and prints the summary JSON to `stdout`.
pub fn run(args: &Args, registry: &ScenarioRegistry, stdout: &mut dyn Write) -> Result<Verdict> {
    let scenario = registry.get(&args.scenario).ok_or_else(|| {
        Error::Config(format!(
            "unknown scenario '{}' (available: {})",
            args.scenario,
            registry.names().join(", ")
        ))
    })?;
    let mut config = ScenarioConfig::load(&args.config)?;
    if let Some(name) = &config.scenario {
        if name != scenario.name() {
            return Err(Error::Config(format!(
                "config is for scenario '{name}', not '{}'",
                scenario.name()
            )));
        }
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(steps) = args.steps {
        config.steps = steps;
    }
    config.validate()?;

    let out = scenario.run(&config)?;
    let dir = args
        .out
        .clone()
        .or_else(|| config.output_path.as_ref().map(PathBuf::from));
    if let Some(dir) = dir {
        output::write_artifacts(&dir, &out.artifacts)?;
    }
    let text = serde_json::to_string_pretty(&out.summary).expect("json value");
    writeln!(stdout, "{text}").map_err(|e| Error::io("<stdout>", e))?;
    Ok(out.verdict)
}

/// Process exit code for a run result.
pub fn exit_code(result: &Result<Verdict>) -> i32 {
    match result {
        Ok(Verdict::Pass) => EXIT_PASS,
        Ok(Verdict::Violation) => EXIT_VIOLATION,
        Err(Error::Io { .. }) => EXIT_IO,
        Err(Error::Config(_) | Error::Input(_) | Error::Contract(_)) => EXIT_CONFIG,
        Err(Error::Integration(_) | Error::NoConvergence { .. }) => EXIT_VIOLATION,
    }
}
