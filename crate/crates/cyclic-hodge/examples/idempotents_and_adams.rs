//! Eulerian idempotents, the PBW decomposition, and Adams operations.
//!
//! The group algebra `Q[Sₙ]` contains orthogonal idempotents `e⁽¹⁾, …, e⁽ⁿ⁾`
//! summing to the identity; applied to the tensor algebra they cut out the
//! symmetric powers `Symᵖ(L)` of the free Lie algebra (PBW). The Adams
//! operation `ψᵏ` (k-th Hopf power) acts on the p-th piece by `kᵖ`, which is
//! what makes the pieces an eigenspace ("Hodge") decomposition.
//!
//! Run with: `cargo run --example idempotents_and_adams`

use cyclic_hodge::cobar::{adams_operation, cobar};
use cyclic_hodge::fixtures;
use cyclic_hodge::lie::{hodge_project, lyndon_basis, sym_block_dimension, witt_dimension};
use cyclic_hodge::scalar::qi;
use cyclic_hodge::sym::eulerian_idempotent;
use cyclic_hodge::word::TensorElement;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // e⁽¹⁾ of S₃: the classical "log of the shuffle" projector.
    println!("e⁽¹⁾ in Q[S₃]:");
    for (perm, coeff) in &eulerian_idempotent(3, 1).coefficients {
        println!("  {coeff:>5}  · {perm:?}");
    }

    let r = cobar(&fixtures::necklace_coalgebra())?;
    let alphabet = &r.alphabet;

    println!("\nFree Lie algebra on two letters: Lyndon basis vs Witt formula");
    for n in 1..=6u32 {
        let lyndon = lyndon_basis(alphabet, n);
        println!(
            "  weight {n}: {} Lyndon elements, Witt formula gives {}   e.g. {}",
            lyndon.len(),
            witt_dimension(2, n),
            lyndon[0].tree.display(alphabet)
        );
    }

    println!("\nPBW: Σ_p dim(Symᵖ L ∩ V⊗ⁿ) recovers the full 2ⁿ-dimensional word space");
    for n in 1..=6u32 {
        let dims: Vec<usize> = (1..=n as usize)
            .map(|p| sym_block_dimension(alphabet, p, n, 0))
            .collect();
        println!(
            "  n = {n}: block dims {:?}, sum {}",
            dims,
            dims.iter().sum::<usize>()
        );
    }

    println!("\nAdams operations on the word vvw (weight 3):");
    let v = alphabet.index_of("v").expect("letter v");
    let w = alphabet.index_of("w").expect("letter w");
    let x = TensorElement::monomial(cyclic_hodge::word::Word(vec![v, v, w]), qi(1));
    for p in 1..=3usize {
        let comp = hodge_project(&x, p, alphabet);
        let psi2 = adams_operation(alphabet, 2, &comp);
        let eigen = psi2.sub(&comp.scaled(&qi(2i64.pow(p as u32)))).is_zero();
        println!(
            "  e⁽{p}⁾(vvw) = {}\n      ψ² acts by 2^{p} = {}: {}",
            comp.display(alphabet),
            1 << p,
            eigen
        );
    }
    Ok(())
}
