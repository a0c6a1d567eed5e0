//! Runs every acceptance criterion and prints one PASS/FAIL line each.

use std::process::ExitCode;

fn main() -> ExitCode {
    let outcomes = dffv_cli::accept::run_suite(|o| println!("{}", o.line()));
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if failed.is_empty() {
        println!("all {} criteria passed", outcomes.len());
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
