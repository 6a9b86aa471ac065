//! Writes an SVG picture of a fundamental domain, with the zeros of F_n when
//! a Hauptmodul id and degree are given.
//!
//!     cargo run --release --example domain_svg -- 6+ out.svg
//!     cargo run --release --example domain_svg -- 6A out.svg 13

use replica::groups::GroupSpec;
use replica::qseries::HauptmodulId;
use replica::svg::{render_domain_svg, SvgOptions};
use replica::zerocert::certify_zeros;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let sel = args.first().map(String::as_str).unwrap_or("6+");
    let out = args.get(1).map(String::as_str).unwrap_or("domain.svg");
    let svg = match args.get(2) {
        Some(n) => {
            let id: HauptmodulId = sel.parse()?;
            let cert = certify_zeros(id, n.parse()?)?;
            println!("{} zeros, status {}", cert.zero_count, cert.status);
            render_domain_svg(&id.group(), &SvgOptions::with_certificate(&cert))?
        }
        None => render_domain_svg(&GroupSpec::parse(sel)?, &SvgOptions::default())?,
    };
    std::fs::write(out, svg)?;
    println!("wrote {out}");
    Ok(())
}
