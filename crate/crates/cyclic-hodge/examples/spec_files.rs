//! Loading algebra descriptions from `.alg` spec files.
//!
//! The `fixtures/` directory at the repository root describes every built-in
//! example in a small line-oriented text format: a `kind`, a graded basis,
//! and optional bracket / coproduct / pairing sections. This example loads
//! one Lie algebra and one pairing-equipped coalgebra, validates them, and
//! runs a small computation on each — the same path the command-line tool
//! takes.
//!
//! Run with: `cargo run --example spec_files`

use std::path::PathBuf;

use cyclic_hodge::cobar::{ce_coalgebra, cobar};
use cyclic_hodge::hodge::{hochschild_hodge, WeightWindow};
use cyclic_hodge::specfile;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a Lie algebra: sl2 with its bracket table
    let spec = specfile::load(&fixture("sl2.alg"))?;
    let lie = spec.lie.as_ref().expect("lie-algebra kind");
    println!(
        "loaded `{}` ({:?}): {} basis elements, bracket validated",
        spec.name,
        spec.kind,
        lie.basis.len()
    );
    let r = cobar(&ce_coalgebra(lie, 3))?;
    println!(
        "  HH⁽¹⁾ dims on weights ≤ 3: {:?}",
        hochschild_hodge(&r, 1, WeightWindow::UpTo(3))?
    );

    // a coalgebra with a cyclic pairing: the necklace fixture
    let spec = specfile::load(&fixture("necklace.alg"))?;
    let coalgebra = spec.coalgebra.as_ref().expect("coalgebra kind");
    let pairing = spec.pairing.as_ref().expect("pairing section");
    println!(
        "\nloaded `{}` ({:?}): letters {:?}, pairing `{}` of degree {}",
        spec.name,
        spec.kind,
        coalgebra.basis.iter().map(|b| b.label.as_str()).collect::<Vec<_>>(),
        pairing.name,
        pairing.degree
    );
    let r = cobar(coalgebra)?;
    println!(
        "  necklace HC⁽²⁾ dims on weights ≤ 4: {:?}",
        cyclic_hodge::hodge::cyclic_hodge(&r, 2, WeightWindow::UpTo(4))?
    );

    // malformed input fails with a line-numbered diagnostic
    let bad = "kind lie-algebra\nname broken\n[basis]\ne 0\n[bracket]\ne q = e\n";
    match specfile::parse(bad) {
        Err(e) => println!("\nmalformed input is rejected: {e}"),
        Ok(_) => println!("\nunexpectedly parsed a malformed spec"),
    }
    Ok(())
}
