//! Parses group selectors, prints their canonical data and runs the
//! brute-force Hecke coset partition check.
//!
//!     cargo run --release --example groups -- 6+ '3|3' '3||3'

use replica::groups::{coset_partition_report, GroupSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut sels: Vec<String> = std::env::args().skip(1).collect();
    if sels.is_empty() {
        sels = ["1", "2+", "6+", "3|3", "3||3"].map(String::from).to_vec();
    }
    for sel in &sels {
        let g = GroupSpec::parse(sel)?;
        println!("{}: m = {}, h = {}, level = {}, exact = {}", g.label(), g.m(), g.h(), g.level(), g.is_exact());
        println!("  W = {:?}, one cusp = {}", g.subgroup().elements(), g.has_one_cusp());
        println!("  stabilizer of ∞: {}", g.stabilizer_generator());
        if !g.is_exact() {
            let n = (2..).find(|n| replica::num::gcd_u64(*n, g.h()) == 1).unwrap_or(1);
            let r = coset_partition_report(&g, n, 8)?;
            println!("  coset partition n = {n}: {} elements, {} violations", r.elements_checked, r.violations.len());
        }
    }
    Ok(())
}
