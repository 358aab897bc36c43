use clap::Parser;

use gatecost::cli::{exit_code, run, Args, ScenarioRegistry};

fn main() {
    let args = Args::parse();
    let result = run(
        &args,
        &ScenarioRegistry::builtin(),
        &mut std::io::stdout().lock(),
    );
    if let Err(e) = &result {
        eprintln!("gatecost: {e}");
    }
    std::process::exit(exit_code(&result));
}
