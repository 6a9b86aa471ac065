//! Leading coefficients of the catalog Hauptmoduln and their values at the
//! classical special points.

use replica::qseries::{hauptmodul, special_value_suite, HauptmodulId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for id in HauptmodulId::CATALOG {
        let f = hauptmodul(id, 8)?;
        println!("T_{id:<4} {:<8} {}", id.group_label(), f.coeff_strings(f.lead()).join(" "));
    }
    println!();
    for v in special_value_suite()? {
        println!("{:<24} {:>22.12} expected {} rel err {:.1e}", v.label, v.computed, v.closed_form, v.rel_err);
    }
    Ok(())
}
