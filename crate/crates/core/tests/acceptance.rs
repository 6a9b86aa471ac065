//! One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use replica::acceptance::{run_with, CRITERIA};

fn main() {
    let which: Vec<u8> = CRITERIA.collect();
    let reports = run_with(&which, |r| println!("{r}"));
    let failed: Vec<String> = reports.iter().filter(|r| !r.pass).map(|r| r.number.to_string()).collect();
    println!(
        "acceptance: {} passed, {} failed{}",
        reports.len() - failed.len(),
        failed.len(),
        if failed.is_empty() { String::new() } else { format!(" ({})", failed.join(", ")) }
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
