//! The Drinfeld trace: from necklaces to functions on representation spaces.
//!
//! Evaluating cyclic words in `g = sl₂`-valued matrices (contracted with the
//! Killing form) gives a map `Tr : HC⁽²⁾ →` functions on the derived
//! representation space. The source carries the necklace bracket, the
//! target the Poisson bracket induced by the cyclic pairing; the trace is a
//! Lie homomorphism up to boundaries of the representation complex.
//!
//! Run with: `cargo run --example drinfeld_trace`

use cyclic_hodge::fixtures;
use cyclic_hodge::hodge::WeightWindow;
use cyclic_hodge::rep::{derived_rep_complex, verify_trace_lie_hom, InvariantPolynomial};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = fixtures::sl2();
    let rc = derived_rep_complex(&fixtures::necklace_coalgebra(), &g)?;
    let pairing = fixtures::necklace_pairing();
    let killing = InvariantPolynomial::killing(&g)?;

    println!(
        "Representation complex: {} generators (one per necklace letter and sl2 direction)\n",
        rc.n_generators()
    );

    let report = verify_trace_lie_hom(&rc, &pairing, &killing, WeightWindow::UpTo(2))?;
    println!("Tr({{α,β}}) − {{Tr α, Tr β}} for all HC⁽²⁾ representatives of weight ≤ 2:");
    for pair in &report.pairs {
        println!(
            "  α = {:10} β = {:10} defect {}",
            pair.a,
            pair.b,
            if pair.defect_is_zero {
                "= 0 on the nose"
            } else if pair.defect_is_boundary {
                "is a boundary (exact up to homotopy)"
            } else {
                "IS NOT A BOUNDARY"
            }
        );
    }
    println!(
        "\n→ the trace descends to a Lie algebra homomorphism on homology: {}",
        if report.ok { "verified" } else { "FAILED" }
    );
    Ok(())
}
