//! Reduces a point of ℍ into the fundamental domain, exactly when the input
//! is a quadratic point.
//!
//!     cargo run --release --example reduce -- 2+ 7/13 1/100

use replica::fundomain::{in_domain, reduce};
use replica::groups::GroupSpec;
use replica::projmat::{HPoint, QuadPoint};
use replica::Rational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let g = GroupSpec::parse(args.first().map(String::as_str).unwrap_or("2+"))?;
    let x: Rational = args.get(1).map(String::as_str).unwrap_or("7/13").parse()?;
    let y2: Rational = args.get(2).map(String::as_str).unwrap_or("1/10000").parse()?;
    let tau = HPoint::from_quad(&QuadPoint::new(x, y2)?, 256)?;
    let r = reduce(&g, &tau)?;
    match &r.point.exact {
        Some(p) => println!("τ' = {p}"),
        None => println!("τ' ≈ {} + {}i", r.point.x.to_f64(), r.point.y.to_f64()),
    }
    println!("transform {}", r.transform);
    println!("in domain: {}", in_domain(&g, &r.point)?);
    Ok(())
}
