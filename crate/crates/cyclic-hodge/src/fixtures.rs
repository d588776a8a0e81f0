//! Built-in example inputs: small Lie algebras and coalgebras used across
//! the test suite, the examples, and the command-line interface.

use crate::cobar::ce_coalgebra;
use crate::input::{
    monomials_of_weight, normalize_monomial, CoalgebraBasisElement, CoalgebraSpec, LieAlgebraSpec,
    SymMonomial,
};
use crate::pairing::CyclicPairing;
use crate::scalar::qi;
use std::collections::BTreeMap;

/// The abelian Lie algebra of the given dimension (≤ 4), basis `x, y, z, u`
/// in degree 0.
pub fn abelian(dim: usize) -> LieAlgebraSpec {
    assert!((1..=4).contains(&dim));
    let names = ["x", "y", "z", "u"];
    LieAlgebraSpec {
        name: format!("abelian{dim}"),
        basis: names[..dim].iter().map(|n| (n.to_string(), 0)).collect(),
        brackets: BTreeMap::new(),
        differential: BTreeMap::new(),
    }
}

/// `sl₂` with the standard basis `e, f, h`: `[e,f] = h`, `[h,e] = 2e`,
/// `[h,f] = −2f`.
pub fn sl2() -> LieAlgebraSpec {
    let (e, f, h) = (0usize, 1usize, 2usize);
    let mut brackets = BTreeMap::new();
    brackets.insert((e, f), vec![(h, qi(1))]);
    brackets.insert((f, e), vec![(h, qi(-1))]);
    brackets.insert((h, e), vec![(e, qi(2))]);
    brackets.insert((e, h), vec![(e, qi(-2))]);
    brackets.insert((h, f), vec![(f, qi(-2))]);
    brackets.insert((f, h), vec![(f, qi(2))]);
    LieAlgebraSpec {
        name: "sl2".into(),
        basis: vec![("e".into(), 0), ("f".into(), 0), ("h".into(), 0)],
        brackets,
        differential: BTreeMap::new(),
    }
}

/// The necklace coalgebra: two primitive classes `v, w` of degree 1 and
/// weight 1 with zero coproduct and differential. Its cobar algebra is the
/// free algebra on two degree-0 letters, and necklaces in it are classical
/// necklace words.
pub fn necklace_coalgebra() -> CoalgebraSpec {
    CoalgebraSpec {
        name: "necklace".into(),
        basis: vec![
            CoalgebraBasisElement {
                label: "v".into(),
                degree: 1,
                weight: 1,
            },
            CoalgebraBasisElement {
                label: "w".into(),
                degree: 1,
                weight: 1,
            },
        ],
        coproduct: BTreeMap::new(),
        differential: BTreeMap::new(),
        cocommutative: true,
    }
}

/// The coalgebra `H_•(S²; ℚ)` (classes in degrees 0 and 2): reduced part is
/// one primitive class `e2` of degree 2, so the cobar algebra is free on one
/// degree-1 letter.
pub fn s2_dual_coalgebra() -> CoalgebraSpec {
    CoalgebraSpec {
        name: "s2-dual".into(),
        basis: vec![CoalgebraBasisElement {
            label: "e2".into(),
            degree: 2,
            weight: 1,
        }],
        coproduct: BTreeMap::new(),
        differential: BTreeMap::new(),
        cocommutative: true,
    }
}

/// The symplectic pairing `⟨v,w⟩ = 1 = −⟨w,v⟩` of degree −2 on the necklace
/// coalgebra.
pub fn necklace_pairing() -> CyclicPairing {
    CyclicPairing::new(
        "necklace-symplectic",
        -2,
        BTreeMap::from([((0, 1), qi(1)), ((1, 0), qi(-1))]),
        BTreeMap::new(),
        false,
    )
}

/// The Poincaré-duality pairing of degree −2 on `H_•(S²;ℚ)`: the fundamental
/// class pairs with the unit, and the degree rule forces `⟨e2,e2⟩ = 0`.
pub fn s2_dual_pairing() -> CyclicPairing {
    CyclicPairing::new(
        "s2-poincare",
        -2,
        BTreeMap::new(),
        BTreeMap::from([(0, qi(1))]),
        true,
    )
}

/// The Berezin (top-form) pairing of degree `−dim a` on the full
/// Chevalley–Eilenberg coalgebra `Sym^c(a[1])` of an ordinary Lie algebra:
/// `⟨ξ,η⟩` is the coefficient of the top monomial in `ξ∧η`, and the unit
/// pairs with the top class. Returns the coalgebra together with the pairing.
/// The pairing is cyclic; it is compatible with the differential exactly when
/// `a` is unimodular.
pub fn berezin_pairing(a: &LieAlgebraSpec) -> (CoalgebraSpec, CyclicPairing) {
    let m = a.dim();
    let c = ce_coalgebra(a, m as u32);
    let shifted: Vec<i64> = (0..m).map(|i| a.degree(i) + 1).collect();
    let labels: Vec<String> = (0..m).map(|i| format!("σ{}", a.label(i))).collect();
    let top = SymMonomial((0..m).collect());
    let mut monomials: Vec<(usize, SymMonomial)> = Vec::new();
    for w in 1..=m as u32 {
        for mon in monomials_of_weight(m, &shifted, w) {
            let idx = c
                .index_of(&mon.label(&labels))
                .expect("monomial present in the CE coalgebra");
            monomials.push((idx, mon));
        }
    }
    let mut entries = BTreeMap::new();
    for (i, mi) in &monomials {
        for (j, mj) in &monomials {
            if mi.0.len() + mj.0.len() != m {
                continue;
            }
            let mut seq = mi.0.clone();
            seq.extend_from_slice(&mj.0);
            if let Some((sorted, sign)) = normalize_monomial(seq, &shifted) {
                if sorted == top {
                    entries.insert((*i, *j), sign);
                }
            }
        }
    }
    let top_idx = c
        .index_of(&top.label(&labels))
        .expect("top monomial present");
    let unit = BTreeMap::from([(top_idx, qi(1))]);
    let pairing = CyclicPairing::new(format!("berezin-{}", a.name), -(m as i64), entries, unit, true);
    (c, pairing)
}

/// `Sym^c(V[1])` for the 2-dimensional abelian Lie algebra with its unique
/// (up to scale) cyclic pairing of degree −2.
pub fn abelian_dual() -> (CoalgebraSpec, CyclicPairing) {
    berezin_pairing(&abelian(2))
}

/// The Chevalley–Eilenberg coalgebra of `sl₂` with the degree −3 Berezin
/// pairing; `sl₂` is unimodular, so the pairing is compatible with the
/// differential.
pub fn sl2_unimodular() -> (CoalgebraSpec, CyclicPairing) {
    berezin_pairing(&sl2())
}

/// The 2-dimensional solvable Lie algebra `[h,x] = x` with its Berezin
/// pairing. `Tr(ad h) = 1 ≠ 0`, so the pairing fails differential
/// compatibility — used to test rejection of non-unimodular inputs.
pub fn solvable2_with_berezin_pairing() -> (CoalgebraSpec, CyclicPairing) {
    let (h, x) = (0usize, 1usize);
    let mut brackets = BTreeMap::new();
    brackets.insert((h, x), vec![(x, qi(1))]);
    brackets.insert((x, h), vec![(x, qi(-1))]);
    let a = LieAlgebraSpec {
        name: "solvable2".into(),
        basis: vec![("h".into(), 0), ("x".into(), 0)],
        brackets,
        differential: BTreeMap::new(),
    };
    a.validate().unwrap();
    berezin_pairing(&a)
}

/// The necklace coalgebra of the 2n-dimensional standard symplectic space
/// (letters `v1..vn, w1..wn`, `⟨vᵢ,wᵢ⟩ = 1`).
pub fn symplectic_necklace(n: usize) -> (CoalgebraSpec, CyclicPairing) {
    let mut basis = Vec::new();
    for i in 1..=n {
        basis.push(CoalgebraBasisElement {
            label: format!("v{i}"),
            degree: 1,
            weight: 1,
        });
    }
    for i in 1..=n {
        basis.push(CoalgebraBasisElement {
            label: format!("w{i}"),
            degree: 1,
            weight: 1,
        });
    }
    let mut entries = BTreeMap::new();
    for i in 0..n {
        entries.insert((i, n + i), qi(1));
        entries.insert((n + i, i), qi(-1));
    }
    let c = CoalgebraSpec {
        name: format!("necklace{}", 2 * n),
        basis,
        coproduct: BTreeMap::new(),
        differential: BTreeMap::new(),
        cocommutative: true,
    };
    let p = CyclicPairing::new(format!("symplectic{}", 2 * n), -2, entries, BTreeMap::new(), false);
    (c, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_validate() {
        abelian(1).validate().unwrap();
        abelian(2).validate().unwrap();
        sl2().validate().unwrap();
        necklace_coalgebra().validate().unwrap();
        s2_dual_coalgebra().validate().unwrap();
    }
}
