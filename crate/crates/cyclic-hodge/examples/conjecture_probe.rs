//! Graded or merely filtered? An exploratory probe.
//!
//! For pairings of Poincaré-duality type it is open in general whether the
//! homology bracket is concentrated in Hodge weight `p + q − 2` (graded) or
//! only bounded by it (filtered). This probe brackets every pair of
//! `HC⁽ᵠ⁾ × HC⁽ᵖ⁾` representatives of the sphere fixture on a finite
//! truncation and tabulates the verdict per `(q, p)` — it asserts nothing,
//! it reports what the truncation shows.
//!
//! Run with: `cargo run --example conjecture_probe`

use cyclic_hodge::bracket::conjecture_probe;
use cyclic_hodge::cobar::cobar;
use cyclic_hodge::fixtures;
use cyclic_hodge::hodge::WeightWindow;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (c, pairing) = (fixtures::s2_dual_coalgebra(), fixtures::s2_dual_pairing());
    let r = cobar(&c)?;
    let rows = conjecture_probe(
        &r,
        &pairing,
        WeightWindow::UpTo(6),
        WeightWindow::UpTo(7),
        3,
    )?;

    println!("Sphere fixture (one degree-2 class, Poincaré-duality pairing), weight ≤ 6:");
    println!("   {:>3} {:>3} {:>6} {:>8}  verdict", "q", "p", "pairs", "nonzero");
    for row in &rows {
        println!(
            "   {:>3} {:>3} {:>6} {:>8}  {:?}",
            row.q, row.p, row.pairs, row.nonzero, row.verdict
        );
    }
    println!(
        "\n`NoBrackets` means every bracket of representatives vanished on this \
         truncation —\nconsistent with graded behaviour, but only a statement \
         about the window computed."
    );
    Ok(())
}
