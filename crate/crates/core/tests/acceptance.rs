//! Runs the nine acceptance criteria and prints one line per criterion.

use std::process::ExitCode;

use quantum_covers::acceptance::{run, Suite};

fn main() -> ExitCode {
    let report = match run(Suite::All, 0) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("acceptance suite could not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    for line in report.summary_lines() {
        println!("{line}");
    }
    for c in report.criteria.iter().filter(|c| !c.passed) {
        println!("criterion {} detail: {}", c.id, c.detail);
    }
    if report.criteria.len() == 9 && report.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
