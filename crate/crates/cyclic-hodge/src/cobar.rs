//! Koszul models: the Chevalley–Eilenberg coalgebra of a DG Lie algebra and
//! the cobar construction `R = Ω(C) = (T(C̄[−1]), d)`, together with the
//! Hopf-algebra coproduct on `R` (making primitives a Lie model of the
//! enveloping algebra) and the Adams ψ-operations.

use crate::input::{
    monomials_of_weight, normalize_monomial, CoalgebraBasisElement, CoalgebraSpec, InputError,
    LieAlgebraSpec, SymMonomial,
};
use crate::scalar::{sign_pow, Q};
#[cfg(test)]
use crate::scalar::qi;
use crate::word::{extend_derivation, koszul_sign, Alphabet, Letter, LetterId, TensorElement, Word};
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CobarError {
    #[error("cobar differential fails d² = 0 on letter `{letter}`: d²(letter) = {value}")]
    NotSquareZero { letter: String, value: String },
    #[error(transparent)]
    Input(#[from] InputError),
}

// ---------------------------------------------------------------------------
// Chevalley–Eilenberg coalgebra
// ---------------------------------------------------------------------------

/// The Chevalley–Eilenberg coalgebra `C = Λ(a[1])` of a DG Lie algebra `a`,
/// truncated at the given homogeneity weight (= exterior word length). Basis
/// elements are graded-commutative monomials in suspended generators `σx_i`
/// of degree `|x_i| + 1`; the reduced coproduct is the unshuffle coproduct
/// and the differential combines the internal differential of `a` with the
/// bracket term.
pub fn ce_coalgebra(a: &LieAlgebraSpec, max_weight: u32) -> CoalgebraSpec {
    let n = a.dim();
    let shifted: Vec<i64> = (0..n).map(|i| a.degree(i) + 1).collect();
    let labels: Vec<String> = (0..n).map(|i| format!("σ{}", a.label(i))).collect();

    let mut basis = Vec::new();
    let mut monomials: Vec<SymMonomial> = Vec::new();
    for w in 1..=max_weight {
        for m in monomials_of_weight(n, &shifted, w) {
            basis.push(CoalgebraBasisElement {
                label: m.label(&labels),
                degree: m.degree(&shifted),
                weight: w,
            });
            monomials.push(m);
        }
    }
    let index: BTreeMap<SymMonomial, usize> = monomials
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();

    // Reduced (unshuffle) coproduct: sum over proper position subsets, with
    // the Koszul sign of pulling the subset to the front. Position subsets of
    // a sorted multiset produce exactly the polynomial-coalgebra
    // multiplicities (e.g. Δ̄(x²) = 2·x⊗x).
    let mut coproduct: BTreeMap<usize, Vec<(usize, usize, Q)>> = BTreeMap::new();
    for (i, m) in monomials.iter().enumerate() {
        let w = m.0.len();
        if w < 2 {
            continue;
        }
        let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
        let degrees: Vec<i64> = m.0.iter().map(|&g| shifted[g]).collect();
        for mask in 1..((1usize << w) - 1) {
            let left: Vec<usize> = (0..w).filter(|&p| mask & (1 << p) != 0).collect();
            let right: Vec<usize> = (0..w).filter(|&p| mask & (1 << p) == 0).collect();
            let mut perm = left.clone();
            perm.extend_from_slice(&right);
            let sign = koszul_sign(&perm, &degrees);
            // sub-monomials of a sorted monomial stay sorted: look up directly
            let lm = SymMonomial(left.iter().map(|&p| m.0[p]).collect());
            let rm = SymMonomial(right.iter().map(|&p| m.0[p]).collect());
            let (li, ri) = (index[&lm], index[&rm]);
            *acc.entry((li, ri)).or_insert_with(Q::zero) += sign;
        }
        let terms: Vec<(usize, usize, Q)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((l, r), c)| (l, r, c))
            .collect();
        if !terms.is_empty() {
            coproduct.insert(i, terms);
        }
    }

    // Differential: internal part (from d_a) + bracket part. Signs follow the
    // "pull to the front, operate, re-sort" Koszul discipline; the coderivation
    // and d² = 0 axioms are enforced by `CoalgebraSpec::validate`.
    let mut differential: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
    for (i, m) in monomials.iter().enumerate() {
        let w = m.0.len();
        let degrees: Vec<i64> = m.0.iter().map(|&g| shifted[g]).collect();
        let prefix_deg = |upto: usize| -> i64 { degrees[..upto].iter().sum() };
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        // internal: Σ_s ± y_1…σ(d x_s)…y_w
        for s in 0..w {
            let sgn = sign_pow(prefix_deg(s));
            for (k, c) in a.d(m.0[s]) {
                let mut gens = m.0.clone();
                gens[s] = k;
                if let Some((sorted, nsign)) = normalize_monomial(gens, &shifted) {
                    if let Some(&j) = index.get(&sorted) {
                        *acc.entry(j).or_insert_with(Q::zero) += &c * &sgn * nsign;
                    }
                }
            }
        }
        // bracket: Σ_{s<t} ± σ[x_s,x_t]·(rest)
        for s in 0..w {
            for t in (s + 1)..w {
                let exp = degrees[s] * prefix_deg(s) + degrees[t] * (prefix_deg(t) - degrees[s]);
                let sgn = sign_pow(exp);
                for (k, c) in a.bracket(m.0[s], m.0[t]) {
                    let mut gens = vec![k];
                    for (p, &g) in m.0.iter().enumerate() {
                        if p != s && p != t {
                            gens.push(g);
                        }
                    }
                    if let Some((sorted, nsign)) = normalize_monomial(gens, &shifted) {
                        if let Some(&j) = index.get(&sorted) {
                            *acc.entry(j).or_insert_with(Q::zero) += &c * &sgn * nsign;
                        }
                    }
                }
            }
        }
        let terms: Vec<(usize, Q)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if !terms.is_empty() {
            differential.insert(i, terms);
        }
    }

    CoalgebraSpec {
        name: format!("CE({})", a.name),
        basis,
        coproduct,
        differential,
        cocommutative: true,
    }
}

// ---------------------------------------------------------------------------
// Cobar construction
// ---------------------------------------------------------------------------

/// The cobar construction `Ω(C) = (T(C̄[−1]), d)`. Letters are the basis of
/// `C̄` desuspended by one; the differential is the degree −1 derivation with
/// `d(s⁻¹c) = −s⁻¹(d_C c) + Σ (−1)^{|c'|} (s⁻¹c')(s⁻¹c'')` over the reduced
/// coproduct. Construction fails loudly if `d² ≠ 0` on some letter.
#[derive(Debug, Clone)]
pub struct CobarAlgebra {
    pub coalgebra: CoalgebraSpec,
    pub alphabet: Alphabet,
    letter_differentials: Vec<TensorElement>,
}

pub fn cobar(c: &CoalgebraSpec) -> Result<CobarAlgebra, CobarError> {
    c.validate()?;
    let alphabet = Alphabet::new(
        (0..c.dim())
            .map(|i| Letter {
                id: c.label(i).to_string(),
                degree: c.degree(i) - 1,
                weight: c.weight(i),
            })
            .collect(),
    );
    let mut letter_differentials = Vec::with_capacity(c.dim());
    for i in 0..c.dim() {
        let mut d = TensorElement::zero();
        for (k, coeff) in c.d(i) {
            d.add_term(Word(vec![k]), -coeff);
        }
        for (a, b, coeff) in c.reduced_coproduct(i) {
            let sign = sign_pow(c.degree(a));
            d.add_term(Word(vec![a, b]), coeff * sign);
        }
        letter_differentials.push(d);
    }
    let algebra = CobarAlgebra {
        coalgebra: c.clone(),
        alphabet,
        letter_differentials,
    };
    for i in 0..c.dim() {
        let dd = algebra.differential(&algebra.differential(&TensorElement::letter(i)));
        if !dd.is_zero() {
            return Err(CobarError::NotSquareZero {
                letter: c.label(i).to_string(),
                value: dd.display(&algebra.alphabet),
            });
        }
    }
    Ok(algebra)
}

impl CobarAlgebra {
    /// Extend the letter differentials as a degree −1 (odd) derivation.
    pub fn differential(&self, x: &TensorElement) -> TensorElement {
        let images = |l: LetterId| self.letter_differentials[l].clone();
        extend_derivation(&self.alphabet, &images, 1, x)
    }

    pub fn letter_differential(&self, l: LetterId) -> &TensorElement {
        &self.letter_differentials[l]
    }

    /// Whether the differential is weight-homogeneous (every term of `d(letter)`
    /// has the letter's weight). True whenever the input coalgebra has zero
    /// differential; false e.g. for Chevalley–Eilenberg coalgebras of
    /// non-abelian ordinary Lie algebras, where weight is only a filtration.
    pub fn weight_preserving(&self) -> bool {
        (0..self.alphabet.len()).all(|l| {
            let w = self.alphabet.weight(l);
            self.letter_differentials[l]
                .terms
                .keys()
                .all(|word| word.weight(&self.alphabet) == w)
        })
    }
}

// ---------------------------------------------------------------------------
// Hopf coproduct and Adams operations on T(V)
// ---------------------------------------------------------------------------

/// An element of `T(V) ⊗ T(V)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorSquare {
    pub terms: BTreeMap<(Word, Word), Q>,
}

impl TensorSquare {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, left: Word, right: Word, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry((left, right)).or_insert_with(Q::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The Hopf coproduct on `T(V)` for which letters are primitive:
/// `Δ(v_1…v_k) = Σ_{S} ± (v_S) ⊗ (v_{S^c})` over all position subsets, with
/// the Koszul sign of the unshuffle.
pub fn hopf_coproduct(alphabet: &Alphabet, x: &TensorElement) -> TensorSquare {
    let mut out = TensorSquare::zero();
    for (word, coeff) in &x.terms {
        let k = word.len();
        let degrees: Vec<i64> = word.0.iter().map(|&l| alphabet.degree(l)).collect();
        for mask in 0..(1usize << k) {
            let left: Vec<usize> = (0..k).filter(|&p| mask & (1 << p) != 0).collect();
            let right: Vec<usize> = (0..k).filter(|&p| mask & (1 << p) == 0).collect();
            let mut perm = left.clone();
            perm.extend_from_slice(&right);
            let sign = koszul_sign(&perm, &degrees);
            out.add_term(
                Word(left.iter().map(|&p| word.0[p]).collect()),
                Word(right.iter().map(|&p| word.0[p]).collect()),
                coeff * sign,
            );
        }
    }
    out
}

/// The Adams operation `ψⁿ = m⁽ⁿ⁾ ∘ Δ⁽ⁿ⁾` on `T(V)`:
/// `ψⁿ(v_1…v_k) = Σ_{f: {1..k}→{1..n}} ± (letters grouped stably by f)`,
/// with the Koszul sign of the regrouping. `ψ¹ = id`, `ψⁿ(v) = n·v` on
/// letters, and `ψⁿ ∘ ψᵐ = ψⁿᵐ`.
pub fn adams_operation(alphabet: &Alphabet, n: u32, x: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (word, coeff) in &x.terms {
        let k = word.len();
        if k == 0 {
            out.add_term(word.clone(), coeff.clone());
            continue;
        }
        let degrees: Vec<i64> = word.0.iter().map(|&l| alphabet.degree(l)).collect();
        let mut f = vec![0u32; k];
        loop {
            // stable grouping of positions by f-value
            let mut perm: Vec<usize> = Vec::with_capacity(k);
            for v in 0..n {
                for (p, &fp) in f.iter().enumerate() {
                    if fp == v {
                        perm.push(p);
                    }
                }
            }
            let sign = koszul_sign(&perm, &degrees);
            out.add_term(
                Word(perm.iter().map(|&p| word.0[p]).collect()),
                coeff * sign,
            );
            // next assignment
            let mut pos = 0;
            loop {
                if pos == k {
                    break;
                }
                f[pos] += 1;
                if f[pos] < n {
                    break;
                }
                f[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn ce_of_abelian_two_is_exterior_coalgebra() {
        let c = ce_coalgebra(&fixtures::abelian(2), 2);
        assert_eq!(c.dim(), 3);
        c.validate().unwrap();
        // top class has Δ̄ = σx⊗σy − σy⊗σx (up to overall normalization ±1)
        let top = c.index_of("σx∧σy").unwrap();
        let cp = c.reduced_coproduct(top);
        assert_eq!(cp.len(), 2);
        let m: BTreeMap<(usize, usize), Q> =
            cp.into_iter().map(|(a, b, q)| ((a, b), q)).collect();
        let x = c.index_of("σx").unwrap();
        let y = c.index_of("σy").unwrap();
        assert_eq!(m[&(x, y)], -m[&(y, x)].clone());
    }

    #[test]
    fn ce_of_sl2_validates_and_has_expected_dims() {
        let c = ce_coalgebra(&fixtures::sl2(), 3);
        c.validate().unwrap();
        let dims: Vec<usize> = (1..=3)
            .map(|w| (0..c.dim()).filter(|&i| c.weight(i) == w).count())
            .collect();
        assert_eq!(dims, vec![3, 3, 1]);
    }

    #[test]
    fn cobar_of_sl2_square_zero() {
        let c = ce_coalgebra(&fixtures::sl2(), 3);
        let r = cobar(&c).unwrap();
        // letters carry degrees 0, 1, 2
        let mut degs: Vec<i64> = r.alphabet.letters().iter().map(|l| l.degree).collect();
        degs.sort();
        degs.dedup();
        assert_eq!(degs, vec![0, 1, 2]);
    }

    #[test]
    fn cobar_differential_of_abelian_two_top_class() {
        let c = ce_coalgebra(&fixtures::abelian(2), 2);
        let r = cobar(&c).unwrap();
        let s = r.alphabet.index_of("σx∧σy").unwrap();
        let x = r.alphabet.index_of("σx").unwrap();
        let y = r.alphabet.index_of("σy").unwrap();
        let d = r.differential(&TensorElement::letter(s));
        // d(s̃) = ±(x̃ỹ − ỹx̃): the graded commutator of the two letters
        let xy = d.terms.get(&Word(vec![x, y])).cloned().unwrap();
        let yx = d.terms.get(&Word(vec![y, x])).cloned().unwrap();
        assert_eq!(xy, -yx);
        assert!(!xy.is_zero());
        assert!(r.differential(&d).is_zero());
    }

    #[test]
    fn hopf_coproduct_primitive_letters_and_counit() {
        let c = ce_coalgebra(&fixtures::abelian(2), 2);
        let r = cobar(&c).unwrap();
        let x = TensorElement::letter(0);
        let cp = hopf_coproduct(&r.alphabet, &x);
        assert_eq!(cp.terms.len(), 2);
        assert_eq!(cp.terms[&(Word(vec![0]), Word::empty())], qi(1));
        assert_eq!(cp.terms[&(Word::empty(), Word(vec![0]))], qi(1));
    }

    #[test]
    fn adams_identities() {
        let c = ce_coalgebra(&fixtures::abelian(2), 2);
        let r = cobar(&c).unwrap();
        let a = &r.alphabet;
        let x = TensorElement::letter(0);
        assert_eq!(adams_operation(a, 1, &x), x);
        assert_eq!(adams_operation(a, 3, &x), x.scaled(&qi(3)));
        let xy = TensorElement::monomial(Word(vec![0, 1]), qi(1));
        let psi6 = adams_operation(a, 6, &xy);
        let psi23 = adams_operation(a, 2, &adams_operation(a, 3, &xy));
        assert_eq!(psi6, psi23);
    }
}
