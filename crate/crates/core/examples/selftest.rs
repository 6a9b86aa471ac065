//! Runs the acceptance criteria, optionally a subset given as numbers.
//!
//!     cargo run --release --example selftest -- 1 2 3

use replica::acceptance::{run_with, CRITERIA};

fn main() {
    let mut which: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if which.is_empty() {
        which = CRITERIA.collect();
    }
    let reports = run_with(&which, |r| println!("{r}"));
    let failed = reports.iter().filter(|r| !r.pass).count();
    std::process::exit(i32::from(failed > 0));
}
