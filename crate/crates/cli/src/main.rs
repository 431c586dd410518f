use std::process::ExitCode;

use nuclear_cli::plan::USAGE;
use nuclear_cli::{build_plan, execute_plan, run_validation, CliError, Command};

fn run() -> Result<(), CliError> {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    if argv.iter().any(|a| a == "--help" || a == "-h") || argv.is_empty() {
        println!("{USAGE}");
        return Ok(());
    }
    let plan = build_plan(&argv)?;

    if plan.command == Command::Validate {
        let failures = run_validation(&plan)?;
        if failures > 0 {
            return Err(CliError::Computation(format!(
                "{failures} validation check(s) failed"
            )));
        }
        if plan.out.is_none() {
            return Ok(());
        }
    }

    let report = execute_plan(&plan)?;
    match &plan.out {
        Some(path) => report.write(path, plan.format)?,
        None => print!("{}", report.render(plan.format)),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("nuclear: {msg}");
            eprintln!("{USAGE}");
            ExitCode::from(1)
        }
        Err(CliError::Computation(msg)) => {
            eprintln!("nuclear: {msg}");
            ExitCode::from(2)
        }
    }
}
