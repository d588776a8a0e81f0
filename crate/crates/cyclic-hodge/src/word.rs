//! Letters, words, and the free (tensor) algebra `T(V)`.
//!
//! Letters model a basis of `V = C̄[−1]`: each carries a homological degree
//! and a strictly positive internal weight. Words are ordered letter lists;
//! a [`TensorElement`] is a finitely supported exact-rational combination of
//! words. The tensor-algebra product is concatenation (no sign); Koszul
//! signs enter through permutation actions, coproducts, and derivations.

use crate::scalar::{qi, sign_pow, Q};
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A generator of `V`. Weight must be ≥ 1: the weight grading is what makes
/// every total-weight block of `T(V)` finite-dimensional (and encodes
/// conilpotence of the coalgebra the letters come from).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Letter {
    pub id: String,
    pub degree: i64,
    pub weight: u32,
}

/// An indexed letter set. Letter order (by index) fixes the lexicographic
/// order used for canonical cyclic words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<Letter>,
}

pub type LetterId = usize;

impl Alphabet {
    pub fn new(letters: Vec<Letter>) -> Self {
        let mut seen = std::collections::BTreeSet::new();
        for l in &letters {
            assert!(l.weight >= 1, "weight-0 letter `{}` forbidden", l.id);
            assert!(seen.insert(l.id.clone()), "duplicate letter `{}`", l.id);
        }
        Alphabet { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, id: LetterId) -> &Letter {
        &self.letters[id]
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn index_of(&self, id: &str) -> Option<LetterId> {
        self.letters.iter().position(|l| l.id == id)
    }

    pub fn degree(&self, id: LetterId) -> i64 {
        self.letters[id].degree
    }

    pub fn weight(&self, id: LetterId) -> u32 {
        self.letters[id].weight
    }

    /// All words of the given total weight, in lexicographic order.
    pub fn words_of_weight(&self, weight: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut stack: Vec<(Vec<LetterId>, u32)> = vec![(Vec::new(), weight)];
        while let Some((prefix, remaining)) = stack.pop() {
            if remaining == 0 {
                out.push(Word(prefix));
                continue;
            }
            // depth-first in reverse letter order so the output is lex-sorted
            for id in (0..self.letters.len()).rev() {
                let w = self.letters[id].weight;
                if w <= remaining {
                    let mut p = prefix.clone();
                    p.push(id);
                    stack.push((p, remaining - w));
                }
            }
        }
        out.sort();
        out
    }

    /// Words of the given total weight grouped by homological degree.
    pub fn words_by_degree(&self, weight: u32) -> BTreeMap<i64, Vec<Word>> {
        let mut map: BTreeMap<i64, Vec<Word>> = BTreeMap::new();
        for w in self.words_of_weight(weight) {
            map.entry(w.degree(self)).or_default().push(w);
        }
        map
    }
}

/// A word in `T(V)`: an ordered list of letter indices. The empty word is
/// the algebra unit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<LetterId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self, alphabet: &Alphabet) -> i64 {
        self.0.iter().map(|&l| alphabet.degree(l)).sum()
    }

    pub fn weight(&self, alphabet: &Alphabet) -> u32 {
        self.0.iter().map(|&l| alphabet.weight(l)).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&l| alphabet.letter(l).id.clone())
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// Koszul sign of the rearrangement `(x_1,…,x_n) → (x_{σ(1)},…,x_{σ(n)})`
/// for homogeneous symbols with the given degrees: one factor `(−1)^{|a||b|}`
/// for every pair that crosses.
pub fn koszul_sign(perm: &[usize], degrees: &[i64]) -> Q {
    assert_eq!(perm.len(), degrees.len());
    let mut exponent: i64 = 0;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                exponent += degrees[perm[i]] * degrees[perm[j]];
            }
        }
    }
    sign_pow(exponent)
}

/// An exact-rational element of `T(V)`: finitely supported `Word → ℚ`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    pub terms: BTreeMap<Word, Q>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), qi(1))
    }

    pub fn letter(id: LetterId) -> Self {
        Self::monomial(Word(vec![id]), qi(1))
    }

    pub fn monomial(word: Word, coeff: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        TensorElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Word, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(word).or_insert_with(Q::zero);
        *entry += coeff;
        if entry.is_zero() {
            // re-fetch key to remove; find-and-remove via retain is simplest
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.scaled(&qi(-1)))
    }

    pub fn scaled(&self, s: &Q) -> TensorElement {
        if s.is_zero() {
            return TensorElement::zero();
        }
        TensorElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    /// Tensor-algebra product: bilinear extension of concatenation.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }

    /// Graded commutator `[a, b] = ab − (−1)^{|a||b|} ba`, termwise on
    /// homogeneous words.
    pub fn commutator(&self, other: &TensorElement, alphabet: &Alphabet) -> TensorElement {
        let mut out = TensorElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1 * c2);
                let sign = sign_pow(w1.degree(alphabet) * w2.degree(alphabet));
                out.add_term(w2.concat(w1), -(c1 * c2) * sign);
            }
        }
        out
    }

    /// Drop the constant (empty-word) term: projection `R → R̄`.
    pub fn augmentation_ideal_part(&self) -> TensorElement {
        let mut out = self.clone();
        out.terms.remove(&Word::empty());
        out
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&Word::empty()).cloned().unwrap_or_else(Q::zero)
    }

    /// True if all words share one (weight, length); `None` on zero.
    pub fn homogeneous_weight_length(&self, alphabet: &Alphabet) -> Option<(u32, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let key = (first.weight(alphabet), first.len());
        for w in it {
            if (w.weight(alphabet), w.len()) != key {
                return None;
            }
        }
        Some(key)
    }

    /// The single homological degree of all words, if homogeneous.
    pub fn homogeneous_degree(&self, alphabet: &Alphabet) -> Option<i64> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree(alphabet);
        for w in it {
            if w.degree(alphabet) != d {
                return None;
            }
        }
        Some(d)
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("{}·{}", crate::scalar::format_rational(c), w.display(alphabet)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.0
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Extend letter images to a (left) derivation of `T(V)` with the Koszul
/// rule: for a derivation `D` of degree parity `parity` (odd parities pick
/// up `(−1)^{|prefix|}` when passing a prefix),
/// `D(v_1…v_k) = Σ_i ± v_1…v_{i−1}·D(v_i)·v_{i+1}…v_k`.
pub fn extend_derivation(
    alphabet: &Alphabet,
    images: &dyn Fn(LetterId) -> TensorElement,
    parity: i64,
    x: &TensorElement,
) -> TensorElement {
    let mut out = TensorElement::zero();
    for (word, coeff) in &x.terms {
        let mut prefix_degree: i64 = 0;
        for (i, &l) in word.0.iter().enumerate() {
            let sign = if parity.rem_euclid(2) == 1 {
                sign_pow(prefix_degree)
            } else {
                qi(1)
            };
            let image = images(l);
            if !image.is_zero() {
                let prefix = Word(word.0[..i].to_vec());
                let suffix = Word(word.0[i + 1..].to_vec());
                for (wm, cm) in &image.terms {
                    out.add_term(
                        prefix.concat(wm).concat(&suffix),
                        coeff * cm * &sign,
                    );
                }
            }
            prefix_degree += alphabet.degree(l);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;

    fn two_letter_alphabet() -> Alphabet {
        Alphabet::new(vec![
            Letter {
                id: "v".into(),
                degree: 0,
                weight: 1,
            },
            Letter {
                id: "w".into(),
                degree: 0,
                weight: 1,
            },
        ])
    }

    #[test]
    fn koszul_sign_basics() {
        assert_eq!(koszul_sign(&[0, 1], &[1, 1]), qi(1));
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]), qi(-1));
        assert_eq!(koszul_sign(&[1, 0], &[0, 1]), qi(1));
        // 3-cycle taking (x1,x2,x3) to (x2,x3,x1) with degrees (1,1,2):
        // crossings (x2,x1),(x3,x1): exponent 1·1 + 2·1 = 3 → −1;
        // but the spec's example is the inverse arrangement (x3,x1,x2):
        // crossings (x3,x1),(x3,x2): 2·1 + 2·1 = 4 → +1.
        assert_eq!(koszul_sign(&[2, 0, 1], &[1, 1, 2]), qi(1));
    }

    #[test]
    fn word_enumeration_matches_weights() {
        let a = two_letter_alphabet();
        assert_eq!(a.words_of_weight(3).len(), 8);
        let mixed = Alphabet::new(vec![
            Letter {
                id: "x".into(),
                degree: 0,
                weight: 1,
            },
            Letter {
                id: "s".into(),
                degree: 1,
                weight: 2,
            },
        ]);
        // weight 4 over {x(1), s(2)}: xxxx, xxs, xsx, sxx, ss → 5
        assert_eq!(mixed.words_of_weight(4).len(), 5);
        let by_degree = mixed.words_by_degree(4);
        assert_eq!(by_degree[&0].len(), 1);
        assert_eq!(by_degree[&1].len(), 3);
        assert_eq!(by_degree[&2].len(), 1);
    }

    #[test]
    fn tensor_arithmetic() {
        let a = two_letter_alphabet();
        let v = TensorElement::letter(0);
        let w = TensorElement::letter(1);
        let c = v.commutator(&w, &a);
        // [v,w] = vw − wv for degree-0 letters
        assert_eq!(c.terms.len(), 2);
        assert_eq!(c.terms[&Word(vec![0, 1])], qi(1));
        assert_eq!(c.terms[&Word(vec![1, 0])], qi(-1));
        let sum = c.add(&c.scaled(&qr(-1, 1)));
        assert!(sum.is_zero());
        assert_eq!(v.mul(&w).terms[&Word(vec![0, 1])], qi(1));
    }

    #[test]
    fn odd_commutator_sign() {
        let a = Alphabet::new(vec![Letter {
            id: "s".into(),
            degree: 1,
            weight: 1,
        }]);
        let s = TensorElement::letter(0);
        // [s,s] = ss + ss = 2ss for odd s
        let c = s.commutator(&s, &a);
        assert_eq!(c.terms[&Word(vec![0, 0])], qi(2));
    }

    #[test]
    fn derivation_extension_leibniz() {
        let a = two_letter_alphabet();
        // D(v) = w, D(w) = 0; even parity
        let images = |l: LetterId| {
            if l == 0 {
                TensorElement::letter(1)
            } else {
                TensorElement::zero()
            }
        };
        let vv = TensorElement::monomial(Word(vec![0, 0]), qi(1));
        let d = extend_derivation(&a, &images, 0, &vv);
        assert_eq!(d.terms[&Word(vec![1, 0])], qi(1));
        assert_eq!(d.terms[&Word(vec![0, 1])], qi(1));
    }
}
