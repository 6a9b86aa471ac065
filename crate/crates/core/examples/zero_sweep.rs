//! Certifies zero counts over a range of degrees and prints one line each.
//!
//!     cargo run --release --example zero_sweep -- 2A 5 40

use replica::qseries::HauptmodulId;
use replica::zerocert::{certify_range, CertOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let id: HauptmodulId = args.first().map(String::as_str).unwrap_or("2A").parse()?;
    let lo: u64 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    let hi: u64 = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(lo + 5);
    let ns: Vec<u64> = (lo..=hi).collect();
    for (n, c) in ns.iter().zip(certify_range(id, &ns, &CertOptions::default())) {
        let c = c?;
        let audit = c.audit.as_ref().map(|a| format!("max margin {:.4} within {}", a.max_margin, a.within));
        println!(
            "{id} n={n:>3} status={:?} zeros={} changes={}/{} {} {}",
            c.status,
            c.zero_count,
            c.sign_changes,
            c.expected_sign_changes,
            audit.unwrap_or_default(),
            c.reason.unwrap_or_default()
        );
    }
    Ok(())
}
