//! The necklace Lie bracket on cyclic words, and its Hodge profile.
//!
//! The cobar construction of the coalgebra with two primitive classes `v`,
//! `w` and the symplectic pairing `<v,w> = 1` is the free algebra on two
//! letters; necklaces (cyclic words) carry the classical necklace bracket.
//! This walkthrough computes `{[v³],[w³]}`, splits the answer into its
//! Hodge (symmetric-power) components, and shows the filtration
//! `{♮Symᵠ, ♮Symᵖ} ⊆ ⊕_{r ≤ p+q−2} ♮Symʳ` on a few more pairs.
//!
//! Run with: `cargo run --example necklace_bracket`

use cyclic_hodge::bracket::{chain_filtration_report, necklace_bracket, necklace_hodge_profile};
use cyclic_hodge::cobar::cobar;
use cyclic_hodge::cyclic::natural_projection;
use cyclic_hodge::fixtures;
use cyclic_hodge::scalar::qi;
use cyclic_hodge::word::{TensorElement, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = cobar(&fixtures::necklace_coalgebra())?;
    let pairing = fixtures::necklace_pairing();
    let alphabet = &r.alphabet;
    let v = alphabet.index_of("v").expect("letter v");
    let w = alphabet.index_of("w").expect("letter w");

    let class = |letters: &[_]| {
        natural_projection(
            &TensorElement::monomial(Word(letters.to_vec()), qi(1)),
            alphabet,
        )
    };

    let a = class(&[v, v, v]);
    let b = class(&[w, w, w]);
    let ab = necklace_bracket(&a, &b, &pairing, alphabet);
    println!("{{[vvv], [www]}} = {}", ab.display(alphabet));

    println!("\nHodge profile of the bracket (weight p ↦ ♮Symᵖ-component):");
    for (p, comp) in necklace_hodge_profile(&ab, alphabet)? {
        println!("  p = {p}:  {}", comp.display(alphabet));
    }
    println!(
        "The two inputs live in weight 3 each, so a graded bracket would \
         land purely in weight 3+3−2 = 4;\nthe lower-weight component shows \
         the bracket is only filtered."
    );

    println!("\nFiltration check on all Hodge-component pairs up to total weight 5:");
    let mut shown = 0;
    for case in chain_filtration_report(alphabet, &pairing, 5)? {
        if case.support.is_empty() || shown >= 10 {
            continue;
        }
        shown += 1;
        println!(
            "  {{e⁽{}⁾{}, e⁽{}⁾{}}} has Hodge support {:?} (bound p+q−2 = {}) {}",
            case.q,
            case.a,
            case.p,
            case.b,
            case.support,
            case.p + case.q - 2,
            if case.ok { "ok" } else { "VIOLATED" }
        );
    }
    Ok(())
}
