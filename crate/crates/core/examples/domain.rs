//! Lower boundary, critical set and domain constants c, N and y₀.

use replica::fundomain::{constants, critical_set, lower_boundary};
use replica::groups::GroupSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut sels: Vec<String> = std::env::args().skip(1).collect();
    if sels.is_empty() {
        sels = ["1", "2+", "6+", "3|3"].map(String::from).to_vec();
    }
    for sel in &sels {
        let g = GroupSpec::parse(sel)?;
        println!("{}", g.label());
        for b in lower_boundary(&g)? {
            println!("  arc |τ − {}|² = {} on [{}, {}]", b.center(), b.sq_radius(), b.x_lo, b.x_hi);
        }
        let cs = critical_set(&g)?;
        println!("  critical set: {} classes", cs.len());
        for c in cs.non_identity() {
            println!("    {} (π = {})", c.rep, c.class.pi);
        }
        let k = constants(&g)?;
        println!("  c = {}, N = {} (N_int {}), y0 = {}", k.c, k.n, k.n_int, k.y0);
    }
    Ok(())
}
