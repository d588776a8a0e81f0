//! The cyclic quotient `R_♮ = R/(k + [R,R])` with its canonical signed
//! necklace basis, noncommutative one-forms `Ω¹R_♮ ≅ R⊗V`, and the maps
//! `∂̄` (cyclic de Rham) and `β` connecting them.

use crate::cobar::CobarAlgebra;
use crate::scalar::{format_rational, sign_pow, Q};
use crate::word::{Alphabet, LetterId, TensorElement, Word};
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CyclicError {
    #[error("cyclic de Rham differential rejects elements with a constant term")]
    ConstantTerm,
}

/// Canonical form of the cyclic class of a nonempty word: the
/// lexicographically minimal rotation, plus the Koszul sign relating the
/// input to it. Returns `None` when the class vanishes (odd degenerate
/// words: some rotation returns the word to itself with sign −1).
pub fn canonical_cyclic(word: &Word, alphabet: &Alphabet) -> Option<(Word, Q)> {
    let m = word.len();
    assert!(m > 0, "the empty word has no cyclic class");
    let degrees: Vec<i64> = word.0.iter().map(|&l| alphabet.degree(l)).collect();
    let total: i64 = degrees.iter().sum();
    // rotation by i sends (v₁…v_m) to (v_{i+1}…v_m v₁…v_i) with the Koszul
    // sign (−1)^{|v₁…v_i|·|v_{i+1}…v_m|}
    let mut best: Option<(Word, Q)> = None;
    let mut zero = false;
    let mut prefix: i64 = 0;
    for i in 0..m {
        let rotated = Word({
            let mut v = word.0[i..].to_vec();
            v.extend_from_slice(&word.0[..i]);
            v
        });
        let sign = sign_pow(prefix * (total - prefix));
        match &best {
            Some((w, s)) => {
                if rotated < *w {
                    best = Some((rotated, sign));
                } else if rotated == *w && *s != sign {
                    zero = true;
                }
            }
            None => best = Some((rotated, sign)),
        }
        prefix += degrees[i];
    }
    if zero {
        return None;
    }
    best
}

/// An element of `R_♮ = R/(k + [R,R])`: a finitely supported combination of
/// canonical cyclic words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NecklaceElement {
    pub terms: BTreeMap<Word, Q>,
}

impl NecklaceElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add the cyclic class of `word` with the given coefficient.
    pub fn add_word(&mut self, word: &Word, coeff: Q, alphabet: &Alphabet) {
        if coeff.is_zero() || word.is_empty() {
            return;
        }
        if let Some((canon, sign)) = canonical_cyclic(word, alphabet) {
            let e = self.terms.entry(canon).or_insert_with(Q::zero);
            *e += coeff * sign;
            if e.is_zero() {
                self.terms.retain(|_, v| !v.is_zero());
            }
        }
    }

    pub fn add(&self, other: &NecklaceElement) -> NecklaceElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            let e = out.terms.entry(w.clone()).or_insert_with(Q::zero);
            *e += c;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn sub(&self, other: &NecklaceElement) -> NecklaceElement {
        self.add(&other.scaled(&-crate::scalar::qi(1)))
    }

    pub fn scaled(&self, s: &Q) -> NecklaceElement {
        if s.is_zero() {
            return NecklaceElement::zero();
        }
        NecklaceElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    /// Any representative in `R` (the canonical words themselves).
    pub fn representative(&self) -> TensorElement {
        TensorElement {
            terms: self.terms.clone(),
        }
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("{}·[{}]", format_rational(c), w.display(alphabet)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The projection `♮ : R → R_♮` (kills constants and commutators).
pub fn natural_projection(x: &TensorElement, alphabet: &Alphabet) -> NecklaceElement {
    let mut out = NecklaceElement::zero();
    for (w, c) in &x.terms {
        if !w.is_empty() {
            out.add_word(w, c.clone(), alphabet);
        }
    }
    out
}

/// All canonical cyclic words of the given weight (and optionally a fixed
/// degree), i.e. a basis of the corresponding block of `R_♮`.
pub fn necklace_basis(alphabet: &Alphabet, weight: u32, degree: Option<i64>) -> Vec<Word> {
    let mut set = std::collections::BTreeSet::new();
    for w in alphabet.words_of_weight(weight) {
        if w.is_empty() {
            continue;
        }
        if let Some(d) = degree {
            if w.degree(alphabet) != d {
                continue;
            }
        }
        if let Some((canon, _)) = canonical_cyclic(&w, alphabet) {
            set.insert(canon);
        }
    }
    set.into_iter().collect()
}

// ---------------------------------------------------------------------------
// One-forms
// ---------------------------------------------------------------------------

/// An element of `Ω¹R_♮ ≅ R⊗V`: finitely supported `(Word, Letter) → ℚ`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OneFormElement {
    pub terms: BTreeMap<(Word, LetterId), Q>,
}

impl OneFormElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Word, letter: LetterId, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry((word, letter)).or_insert_with(Q::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &OneFormElement) -> OneFormElement {
        let mut out = self.clone();
        for ((w, l), c) in &other.terms {
            out.add_term(w.clone(), *l, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &OneFormElement) -> OneFormElement {
        self.add(&other.scaled(&-crate::scalar::qi(1)))
    }

    pub fn scaled(&self, s: &Q) -> OneFormElement {
        if s.is_zero() {
            return OneFormElement::zero();
        }
        OneFormElement {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * s))
                .collect(),
        }
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|((w, l), c)| {
                format!(
                    "{}·{}⊗{}",
                    format_rational(c),
                    w.display(alphabet),
                    alphabet.letter(*l).id
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Fold a one-form term `a·dv·b` of `Ω¹R` through the identification
/// `Ω¹R_♮ ≅ R⊗V`: `a·dv·b ↦ (−1)^{|b|(|a|+|v|)} (b·a) ⊗ v`.
pub fn fold_one_form_term(
    out: &mut OneFormElement,
    a: &Word,
    v: LetterId,
    b: &Word,
    coeff: Q,
    alphabet: &Alphabet,
) {
    let sign = sign_pow(b.degree(alphabet) * (a.degree(alphabet) + alphabet.degree(v)));
    out.add_term(b.concat(a), v, coeff * sign);
}

/// `♮ ∘ ∂` where `∂ : R → Ω¹R` is the universal derivation
/// (`∂(v₁…v_k) = Σᵢ v₁…dvᵢ…v_k`, no signs).
pub fn universal_derivation_folded(x: &TensorElement, alphabet: &Alphabet) -> OneFormElement {
    let mut out = OneFormElement::zero();
    for (word, coeff) in &x.terms {
        for i in 0..word.len() {
            let a = Word(word.0[..i].to_vec());
            let b = Word(word.0[i + 1..].to_vec());
            fold_one_form_term(&mut out, &a, word.0[i], &b, coeff.clone(), alphabet);
        }
    }
    out
}

/// The cyclic de Rham differential `∂̄ : R̄ → Ω¹R_♮ ≅ R⊗V`:
/// `∂̄(v₁…v_m) = Σᵢ (−1)^{|v₁…vᵢ|·|vᵢ₊₁…v_m|} (vᵢ₊₁…v_m v₁…vᵢ₋₁) ⊗ vᵢ`.
/// Kills commutators, hence descends to `R_♮`.
pub fn cyclic_derham(x: &TensorElement, alphabet: &Alphabet) -> Result<OneFormElement, CyclicError> {
    if !x.constant_term().is_zero() {
        return Err(CyclicError::ConstantTerm);
    }
    let mut out = OneFormElement::zero();
    for (word, coeff) in &x.terms {
        let m = word.len();
        let degrees: Vec<i64> = word.0.iter().map(|&l| alphabet.degree(l)).collect();
        let total: i64 = degrees.iter().sum();
        let mut prefix: i64 = 0; // |v₁…vᵢ| accumulated below
        for i in 1..=m {
            prefix += degrees[i - 1];
            let sign = sign_pow(prefix * (total - prefix));
            let rest = Word({
                let mut v = word.0[i..].to_vec();
                v.extend_from_slice(&word.0[..i - 1]);
                v
            });
            out.add_term(rest, word.0[i - 1], coeff * sign);
        }
    }
    Ok(out)
}

/// `∂̄` on a necklace class (via its canonical representative).
pub fn cyclic_derham_necklace(x: &NecklaceElement, alphabet: &Alphabet) -> OneFormElement {
    cyclic_derham(&x.representative(), alphabet).expect("necklaces have no constant term")
}

/// `β : Ω¹R_♮ → R̄`, `α⊗y ↦ αy − (−1)^{|α||y|} yα` (graded commutator,
/// landing in the augmentation ideal).
pub fn beta(omega: &OneFormElement, alphabet: &Alphabet) -> TensorElement {
    let mut out = TensorElement::zero();
    for ((alpha, y), c) in &omega.terms {
        let yw = Word(vec![*y]);
        out.add_term(alpha.concat(&yw), c.clone());
        let sign = sign_pow(alpha.degree(alphabet) * alphabet.degree(*y));
        out.add_term(yw.concat(alpha), -(c * sign));
    }
    out.augmentation_ideal_part()
}

/// The differential on `Ω¹R_♮ ≅ R⊗V` induced by the cobar differential:
/// `δ(r⊗v) = ♮[d(r)·dv] + (−1)^{|r|} ♮[r·∂(d v)]`.
pub fn one_form_differential(r: &CobarAlgebra, omega: &OneFormElement) -> OneFormElement {
    let alphabet = &r.alphabet;
    let mut out = OneFormElement::zero();
    for ((word, v), c) in &omega.terms {
        // first term: d(r)·dv folds to d(r)⊗v (empty b, no sign)
        let dr = r.differential(&TensorElement {
            terms: [(word.clone(), c.clone())].into_iter().collect(),
        });
        for (w, cw) in &dr.terms {
            out.add_term(w.clone(), *v, cw.clone());
        }
        // second term: (−1)^{|r|} ♮[r·∂(dv)]
        let rs = sign_pow(word.degree(alphabet));
        let dv = r.letter_differential(*v);
        for (x, cx) in &dv.terms {
            for i in 0..x.len() {
                let a = word.concat(&Word(x.0[..i].to_vec()));
                let b = Word(x.0[i + 1..].to_vec());
                fold_one_form_term(&mut out, &a, x.0[i], &b, c * cx * &rs, alphabet);
            }
        }
    }
    out
}

/// The differential on `R_♮` induced by the cobar differential.
pub fn necklace_differential(r: &CobarAlgebra, x: &NecklaceElement) -> NecklaceElement {
    natural_projection(&r.differential(&x.representative()), &r.alphabet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobar::{cobar, ce_coalgebra};
    use crate::fixtures;
    use crate::scalar::qi;

    fn necklace_cobar() -> CobarAlgebra {
        cobar(&fixtures::necklace_coalgebra()).unwrap()
    }

    #[test]
    fn commutator_dies_in_necklace_space() {
        let r = necklace_cobar();
        let a = &r.alphabet;
        let v = TensorElement::letter(0);
        let w = TensorElement::letter(1);
        let c = v.commutator(&w, a);
        assert!(natural_projection(&c, a).is_zero());
        let vvv = TensorElement::monomial(Word(vec![0, 0, 0]), qi(1));
        assert_eq!(natural_projection(&vvv, a).terms.len(), 1);
    }

    #[test]
    fn weight_three_necklace_count_over_two_letters() {
        // Burnside: (2³ + 2·2)/3 = 4 cyclic words of length 3
        let r = necklace_cobar();
        assert_eq!(necklace_basis(&r.alphabet, 3, None).len(), 4);
    }

    #[test]
    fn odd_degenerate_necklace_vanishes() {
        // one odd letter s (degree 1): the class [ss] is rotation-degenerate
        // with sign (−1)^{1·1} = −1, hence zero
        let r = cobar(&fixtures::s2_dual_coalgebra()).unwrap();
        let ss = TensorElement::monomial(Word(vec![0, 0]), qi(1));
        assert!(natural_projection(&ss, &r.alphabet).is_zero());
        // [sss]: rotations have sign (−1)^{1·2} = +1 → survives
        let sss = TensorElement::monomial(Word(vec![0, 0, 0]), qi(1));
        assert!(!natural_projection(&sss, &r.alphabet).is_zero());
    }

    #[test]
    fn cyclic_derham_examples() {
        let r = necklace_cobar();
        let a = &r.alphabet;
        // ∂̄(v) = 1⊗v
        let d = cyclic_derham(&TensorElement::letter(0), a).unwrap();
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.terms[&(Word::empty(), 0)], qi(1));
        // ∂̄(vw) = w⊗v + v⊗w for degree-0 letters
        let vw = TensorElement::monomial(Word(vec![0, 1]), qi(1));
        let d = cyclic_derham(&vw, a).unwrap();
        assert_eq!(d.terms[&(Word(vec![1]), 0)], qi(1));
        assert_eq!(d.terms[&(Word(vec![0]), 1)], qi(1));
        // constant rejected
        assert!(cyclic_derham(&TensorElement::one(), a).is_err());
    }

    #[test]
    fn cyclic_derham_kills_commutators() {
        let r = necklace_cobar();
        let a = &r.alphabet;
        for (w1, w2) in [
            (Word(vec![0]), Word(vec![1])),
            (Word(vec![0, 1]), Word(vec![1])),
            (Word(vec![0, 1]), Word(vec![1, 0])),
            (Word(vec![0, 0, 1]), Word(vec![1])),
        ] {
            let x = TensorElement::monomial(w1, qi(1));
            let y = TensorElement::monomial(w2, qi(1));
            let c = x.commutator(&y, a);
            assert!(cyclic_derham(&c, a).unwrap().is_zero());
        }
        // and with odd letters too
        let rs = cobar(&fixtures::s2_dual_coalgebra()).unwrap();
        let s = TensorElement::letter(0);
        let ss = TensorElement::monomial(Word(vec![0, 0]), qi(1));
        let c = s.commutator(&ss, &rs.alphabet);
        assert!(cyclic_derham(&c, &rs.alphabet).unwrap().is_zero());
    }

    #[test]
    fn beta_examples() {
        let r = necklace_cobar();
        let a = &r.alphabet;
        let mut omega = OneFormElement::zero();
        omega.add_term(Word::empty(), 0, qi(1));
        assert!(beta(&omega, a).is_zero());
        let mut omega = OneFormElement::zero();
        omega.add_term(Word(vec![0]), 1, qi(1));
        let b = beta(&omega, a);
        assert_eq!(b.terms[&Word(vec![0, 1])], qi(1));
        assert_eq!(b.terms[&Word(vec![1, 0])], qi(-1));
    }

    #[test]
    fn beta_after_derham_vanishes_on_necklaces() {
        // β∘∂̄ = 0 (telescoping): check on all weight ≤ 4 words over the
        // abelian-2 model (mixed degrees included)
        let c = ce_coalgebra(&fixtures::abelian(2), 2);
        let r = cobar(&c).unwrap();
        let a = &r.alphabet;
        for w in 1..=4u32 {
            for word in a.words_of_weight(w) {
                if word.is_empty() {
                    continue;
                }
                let x = TensorElement::monomial(word, qi(1));
                let b = beta(&cyclic_derham(&x, a).unwrap(), a);
                // β∘∂̄(x) = Σ commutator telescopes: must be m·x − m·x = 0
                // only after projecting to R_♮:
                assert!(natural_projection(&b, a).is_zero());
            }
        }
    }
}
