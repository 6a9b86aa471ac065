//! Faber polynomials, replication to a fixed q-depth and the harmonic
//! identity for the catalog entries that carry one.

use replica::faber::{faber_poly, harmonic_faber, verify_replication};
use replica::qseries::{hauptmodul, HauptmodulId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = hauptmodul(HauptmodulId::T2A, 16)?;
    for n in 1..=4 {
        println!("F_{n},2A = {}", faber_poly(&f, n)?);
    }
    for id in HauptmodulId::CATALOG {
        let ok = (2..=6).map(|n| verify_replication(id, n, 40)).collect::<Result<Vec<_>, _>>()?;
        println!("T_{id} replicable for n = 2..6 to depth 40: {}", ok.iter().all(|&b| b));
        if let Some((base, d, c)) = id.harmonic() {
            let n = 3 * d as usize;
            let holds = harmonic_faber(id, base, d, c, n)?;
            println!("  F_{n},{id} = F_{},{base}(X^{d} − {c}): {holds}", n / d as usize);
        }
    }
    Ok(())
}
