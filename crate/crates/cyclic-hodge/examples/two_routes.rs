//! Two independent routes to `HC⁽ᵖ⁾` of a universal envelope.
//!
//! Route 1 (cobar): the Hodge bicomplex `X⁺,⁽ᵖ⁾` of the cobar construction
//! of the Chevalley–Eilenberg coalgebra.
//! Route 2 (Kassel-style): Lie algebra homology with coefficients in
//! symmetric powers, `HC⁽ᵖ⁾ ≅ ker` of a de Rham-type map between
//! `H(a; Symᵖ a)`-complexes.
//!
//! The two implementations share no code beyond the Lie algebra input, so
//! their agreement on every (p, degree) cell is a strong end-to-end check.
//!
//! Run with: `cargo run --example two_routes`

use cyclic_hodge::fixtures;
use cyclic_hodge::hodge::WeightWindow;
use cyclic_hodge::kassel::cross_validate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (name, a) in [
        ("abelian dim 1", fixtures::abelian(1)),
        ("abelian dim 2", fixtures::abelian(2)),
        ("sl2", fixtures::sl2()),
    ] {
        println!("== {name} ==");
        println!("   {:>3} {:>7} {:>12} {:>12}", "p", "degree", "CE route", "cobar route");
        let mut all_equal = true;
        for row in cross_validate(&a, 3, 3, WeightWindow::UpTo(5))? {
            all_equal &= row.equal;
            println!(
                "   {:>3} {:>7} {:>12} {:>12}{}",
                row.p,
                row.degree,
                row.kassel_dim,
                row.cobar_dim,
                if row.equal { "" } else { "   MISMATCH" }
            );
        }
        println!("   → {}", if all_equal { "all equal" } else { "MISMATCH FOUND" });
        println!();
    }
    Ok(())
}
