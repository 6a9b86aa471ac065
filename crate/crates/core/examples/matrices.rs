//! Exact PGL₂⁺(ℚ) arithmetic: functionals, the involutory decomposition and
//! isometric circles.

use replica::projmat::ProjMatrix;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mats = [
        ProjMatrix::new(1, 1, 0, 1)?,
        ProjMatrix::new(2, 1, 6, 4)?,
        ProjMatrix::new(3, -1, 10, -3)?,
        ProjMatrix::s(),
    ];
    for m in &mats {
        let f = m.functionals();
        println!("{m}");
        println!("  det {} trace {} involution {}", m.det(), m.trace(), m.is_involution());
        println!("  π = {}, ρ² = {}, σ = {}, θ = {}", f.pi, f.rho_sq, f.sigma, f.theta);
        let d = m.decompose();
        println!("  {d:?}");
        assert_eq!(d.to_matrix(), *m);
        match m.arc().center_sq() {
            Some((c, r2)) => println!("  isometric circle |τ − {c}|² = {r2}"),
            None => println!("  fixes ∞"),
        }
    }
    Ok(())
}
