//! Cyclic pairings of degree `n` on coaugmented coalgebras.
//!
//! The pairing data lives on `C = k·1 ⊕ C̄`: a matrix on the reduced basis
//! plus an optional row of unit pairings `⟨1, c⟩` (Poincaré-duality pairings
//! such as the one on `Sym^c(V[1])` necessarily pair the counit with the top
//! class). Only the `C̄ × C̄` block feeds the induced double bracket; the unit
//! row participates in the cyclicity axiom and in nondegeneracy.
//!
//! Axioms checked by [`CyclicPairing::validate`]:
//! * degree: `⟨v,w⟩ ≠ 0` only when `|v| + |w| + n = 0`;
//! * graded symmetry: `⟨v,w⟩ = (−1)^{|v||w|}⟨w,v⟩`;
//! * cyclicity, with the coproduct taken on the coaugmented coalgebra
//!   (`Δc = c⊗1 + 1⊗c + Δ̄c`):
//!   `Σ (−1)^{|v″||w|}⟨v′,w⟩ v″ = (−1)^{(n+1)(|v|+|w|)} Σ (−1)^{|v||w′|}⟨v,w″⟩ w′`,
//!   the Koszul-rule signs being pinned by the symmetric-coalgebra pairings
//!   (see the module tests);
//! * differential compatibility: `⟨du,v⟩ + (−1)^{|u|+n}⟨u,dv⟩ = 0` — for the
//!   Chevalley–Eilenberg coalgebra of an ordinary Lie algebra this is exactly
//!   unimodularity (`Tr(ad x) = 0`);
//! * with the Poincaré-duality flag set: the full pairing matrix on
//!   `k·1 ⊕ C̄` is nondegenerate.

use crate::input::{CoalgebraSpec, InputError};
use crate::scalar::{sign_pow, Q};
use num::Zero;
use std::collections::BTreeMap;

/// Basis index into `C = k·1 ⊕ C̄`: `None` is the unit, `Some(i)` the `i`-th
/// reduced basis element.
pub type ExtIndex = Option<usize>;

#[derive(Debug, Clone)]
pub struct CyclicPairing {
    pub name: String,
    /// The degree `n` of the pairing.
    pub degree: i64,
    /// `⟨cᵢ, cⱼ⟩` on the reduced basis.
    entries: BTreeMap<(usize, usize), Q>,
    /// `⟨1, cᵢ⟩ = ⟨cᵢ, 1⟩`.
    unit: BTreeMap<usize, Q>,
    /// `⟨1, 1⟩` (nonzero only when `n = 0`).
    unit_unit: Q,
    /// Whether the pairing is required to be nondegenerate on `k·1 ⊕ C̄`.
    pub poincare_duality: bool,
}

impl CyclicPairing {
    pub fn new(
        name: impl Into<String>,
        degree: i64,
        entries: BTreeMap<(usize, usize), Q>,
        unit: BTreeMap<usize, Q>,
        poincare_duality: bool,
    ) -> Self {
        CyclicPairing {
            name: name.into(),
            degree,
            entries: entries.into_iter().filter(|(_, q)| !q.is_zero()).collect(),
            unit: unit.into_iter().filter(|(_, q)| !q.is_zero()).collect(),
            unit_unit: Q::zero(),
            poincare_duality,
        }
    }

    /// `⟨cᵢ, cⱼ⟩` on the reduced basis (the block that induces the bracket).
    pub fn value(&self, i: usize, j: usize) -> Q {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Q::zero)
    }

    /// Pairing on `C = k·1 ⊕ C̄`.
    pub fn value_ext(&self, a: ExtIndex, b: ExtIndex) -> Q {
        match (a, b) {
            (Some(i), Some(j)) => self.value(i, j),
            (None, Some(j)) | (Some(j), None) => {
                self.unit.get(&j).cloned().unwrap_or_else(Q::zero)
            }
            (None, None) => self.unit_unit.clone(),
        }
    }

    pub fn is_zero_on_reduced(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn validate(&self, c: &CoalgebraSpec) -> Result<(), InputError> {
        let err = |violation: String| InputError::Axiom {
            structure: "pairing",
            name: self.name.clone(),
            violation,
        };
        let n = c.dim();
        let deg = |a: ExtIndex| a.map_or(0, |i| c.degree(i));
        let lab = |a: ExtIndex| a.map_or("1".to_string(), |i| c.label(i).to_string());
        let ext: Vec<ExtIndex> = std::iter::once(None).chain((0..n).map(Some)).collect();

        // degree rule and graded symmetry
        for &a in &ext {
            for &b in &ext {
                let v = self.value_ext(a, b);
                if !v.is_zero() && deg(a) + deg(b) + self.degree != 0 {
                    return Err(err(format!(
                        "⟨{},{}⟩ ≠ 0 violates the degree-{} rule",
                        lab(a),
                        lab(b),
                        self.degree
                    )));
                }
                let sym = self.value_ext(b, a) * sign_pow(deg(a) * deg(b));
                if v != sym {
                    return Err(err(format!(
                        "graded symmetry fails at ⟨{},{}⟩",
                        lab(a),
                        lab(b)
                    )));
                }
            }
        }

        // full (coaugmented) coproduct of an extended index
        let full_coproduct = |a: ExtIndex| -> Vec<(ExtIndex, ExtIndex, Q)> {
            match a {
                None => vec![(None, None, Q::from_integer(1.into()))],
                Some(i) => {
                    let mut out = vec![
                        (Some(i), None, Q::from_integer(1.into())),
                        (None, Some(i), Q::from_integer(1.into())),
                    ];
                    for (l, r, q) in c.reduced_coproduct(i) {
                        out.push((Some(l), Some(r), q));
                    }
                    out
                }
            }
        };

        // cyclicity: Σ (−1)^{|v″||w|}⟨v′,w⟩ v″ − (−1)^{|v|+|w|} Σ
        // (−1)^{|v||w′|}⟨v,w″⟩ w′ = 0 in C, for all v,w in the extended basis
        for &v in &ext {
            for &w in &ext {
                let mut acc: BTreeMap<ExtIndex, Q> = BTreeMap::new();
                for (v1, v2, q) in full_coproduct(v) {
                    let coeff =
                        self.value_ext(v1, w) * &q * sign_pow(deg(v2) * deg(w));
                    if !coeff.is_zero() {
                        *acc.entry(v2).or_insert_with(Q::zero) += coeff;
                    }
                }
                let outer = sign_pow((self.degree + 1) * (deg(v) + deg(w)));
                for (w1, w2, q) in full_coproduct(w) {
                    let coeff = self.value_ext(v, w2)
                        * &q
                        * sign_pow(deg(v) * deg(w1))
                        * &outer;
                    if !coeff.is_zero() {
                        *acc.entry(w1).or_insert_with(Q::zero) -= coeff;
                    }
                }
                if acc.values().any(|q| !q.is_zero()) {
                    return Err(err(format!(
                        "cyclicity fails at the pair ({}, {})",
                        lab(v),
                        lab(w)
                    )));
                }
            }
        }

        // differential compatibility: ⟨du,v⟩ + (−1)^{|u|+n}⟨u,dv⟩ = 0
        let d_ext = |a: ExtIndex| -> Vec<(usize, Q)> {
            a.map_or_else(Vec::new, |i| c.d(i))
        };
        for &u in &ext {
            for &v in &ext {
                let mut acc = Q::zero();
                for (k, q) in d_ext(u) {
                    acc += self.value_ext(Some(k), v) * q;
                }
                let s = sign_pow(deg(u) + self.degree);
                for (k, q) in d_ext(v) {
                    acc += self.value_ext(u, Some(k)) * q * &s;
                }
                if !acc.is_zero() {
                    return Err(err(format!(
                        "differential compatibility fails at ({}, {})",
                        lab(u),
                        lab(v)
                    )));
                }
            }
        }

        // Poincaré duality: full matrix nondegenerate
        if self.poincare_duality {
            let dim = n + 1;
            let mut cols = Vec::with_capacity(dim);
            for &b in &ext {
                cols.push(ext.iter().map(|&a| self.value_ext(a, b)).collect());
            }
            let mat = crate::linalg::SparseMat::from_columns(dim, cols);
            if mat.rank() != dim {
                return Err(err(
                    "Poincaré-duality flag set but the pairing is degenerate".into(),
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_pairings_validate() {
        let nc = fixtures::necklace_coalgebra();
        fixtures::necklace_pairing().validate(&nc).unwrap();

        let s2 = fixtures::s2_dual_coalgebra();
        fixtures::s2_dual_pairing().validate(&s2).unwrap();

        let (c2, p2) = fixtures::abelian_dual();
        p2.validate(&c2).unwrap();

        let (csl2, psl2) = fixtures::sl2_unimodular();
        psl2.validate(&csl2).unwrap();

        // abelian duals of odd and even dimension pin the sign convention
        for dim in 1..=3 {
            let (c, p) = fixtures::berezin_pairing(&fixtures::abelian(dim));
            p.validate(&c).unwrap();
        }

        let (c4, p4) = fixtures::symplectic_necklace(2);
        p4.validate(&c4).unwrap();
    }

    #[test]
    fn necklace_pairing_is_symplectic() {
        let p = fixtures::necklace_pairing();
        assert_eq!(p.value(0, 1), crate::scalar::qi(1));
        assert_eq!(p.value(1, 0), crate::scalar::qi(-1));
        assert_eq!(p.value(0, 0), Q::zero());
        assert_eq!(p.degree, -2);
    }

    #[test]
    fn s2_dual_pairs_only_with_unit() {
        let p = fixtures::s2_dual_pairing();
        // the degree rule forces ⟨e2,e2⟩ = 0: only ⟨1,e2⟩ survives
        assert!(p.is_zero_on_reduced());
        assert_eq!(p.value_ext(None, Some(0)), crate::scalar::qi(1));
        assert!(p.poincare_duality);
    }

    #[test]
    fn broken_pairings_are_rejected() {
        let nc = fixtures::necklace_coalgebra();
        // wrong degree
        let p = CyclicPairing::new(
            "bad-degree",
            -1,
            BTreeMap::from([((0, 1), crate::scalar::qi(1)), ((1, 0), crate::scalar::qi(-1))]),
            BTreeMap::new(),
            false,
        );
        assert!(p.validate(&nc).is_err());
        // broken graded symmetry: |v|=|w|=1 demands antisymmetry
        let p = CyclicPairing::new(
            "bad-symmetry",
            -2,
            BTreeMap::from([((0, 1), crate::scalar::qi(1)), ((1, 0), crate::scalar::qi(1))]),
            BTreeMap::new(),
            false,
        );
        assert!(p.validate(&nc).is_err());
        // degenerate but flagged as Poincaré duality
        let p = CyclicPairing::new("degenerate", -2, BTreeMap::new(), BTreeMap::new(), true);
        assert!(p.validate(&nc).is_err());
    }

    #[test]
    fn non_unimodular_lie_algebra_is_rejected() {
        // the 2-dim solvable algebra [h,x] = x has Tr(ad h) = 1 ≠ 0
        let (c, p) = fixtures::solvable2_with_berezin_pairing();
        let e = p.validate(&c).unwrap_err();
        assert!(e.to_string().contains("differential compatibility"), "{e}");
    }
}
