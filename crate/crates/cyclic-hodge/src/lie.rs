//! The free graded Lie algebra `L(V)` inside `T(V)`: (super-)Lyndon bases,
//! the Witt formula, PBW symmetrization, and the Eulerian weight projectors.
//!
//! Lie elements are represented by their commutator expansions in `T(V)`;
//! membership in `L(V)` (and more generally in `Sym^p(L)`) is decided by the
//! Eulerian projectors, which act with word length as arity regardless of
//! the letters' internal weights.

use crate::scalar::qi;
use crate::sym::eulerian_idempotent;
use crate::word::{koszul_sign, Alphabet, LetterId, TensorElement};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("element is not weight/length homogeneous")]
    NotHomogeneous,
    #[error("factor {0} is not a Lie element")]
    NotLie(usize),
    #[error("element does not lie in Sym^{0}(L)")]
    NotInSymP(usize),
}

/// A Lie monomial as an explicit bracketing tree over letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LieTree {
    Leaf(LetterId),
    Bracket(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
    /// Commutator expansion in `T(V)`.
    pub fn expand(&self, alphabet: &Alphabet) -> TensorElement {
        match self {
            LieTree::Leaf(l) => TensorElement::letter(*l),
            LieTree::Bracket(a, b) => a
                .expand(alphabet)
                .commutator(&b.expand(alphabet), alphabet),
        }
    }

    /// The underlying word (foliage), left to right.
    pub fn foliage(&self) -> Vec<LetterId> {
        match self {
            LieTree::Leaf(l) => vec![*l],
            LieTree::Bracket(a, b) => {
                let mut v = a.foliage();
                v.extend(b.foliage());
                v
            }
        }
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        match self {
            LieTree::Leaf(l) => alphabet.letter(*l).id.clone(),
            LieTree::Bracket(a, b) => {
                format!("[{},{}]", a.display(alphabet), b.display(alphabet))
            }
        }
    }
}

/// A basis element of the free graded Lie algebra: the bracketing tree plus
/// its expansion in `T(V)`.
#[derive(Debug, Clone)]
pub struct LieBasisElement {
    pub tree: LieTree,
    pub element: TensorElement,
    pub degree: i64,
    pub weight: u32,
}

fn is_lyndon(word: &[LetterId]) -> bool {
    if word.is_empty() {
        return false;
    }
    let n = word.len();
    for r in 1..n {
        let rotated: Vec<LetterId> = word[r..].iter().chain(&word[..r]).copied().collect();
        if rotated.as_slice() <= word {
            return false;
        }
    }
    true
}

/// Standard (right) factorization bracketing of a Lyndon word: `w = u·v`
/// with `v` the longest proper Lyndon suffix; `b(w) = [b(u), b(v)]`.
fn lyndon_bracketing(word: &[LetterId]) -> LieTree {
    if word.len() == 1 {
        return LieTree::Leaf(word[0]);
    }
    let mut split = None;
    for s in 1..word.len() {
        if is_lyndon(&word[s..]) {
            split = Some(s);
            break;
        }
    }
    let s = split.expect("Lyndon word must have a Lyndon proper suffix");
    LieTree::Bracket(
        Box::new(lyndon_bracketing(&word[..s])),
        Box::new(lyndon_bracketing(&word[s..])),
    )
}

/// (Super-)Lyndon basis of the internal-weight-`weight` component of the
/// free graded Lie algebra on the alphabet: bracketed Lyndon words, plus
/// `[x,x]` for each Lyndon monomial `x` of odd homological degree with
/// doubled weight equal to the requested one.
pub fn lyndon_basis(alphabet: &Alphabet, weight: u32) -> Vec<LieBasisElement> {
    assert!(weight >= 1);
    let mut out = Vec::new();
    for word in alphabet.words_of_weight(weight) {
        if is_lyndon(&word.0) {
            let tree = lyndon_bracketing(&word.0);
            let element = tree.expand(alphabet);
            out.push(LieBasisElement {
                degree: word.degree(alphabet),
                weight,
                tree,
                element,
            });
        }
    }
    // super part: [x,x] for odd-degree Lyndon x of half the weight
    if weight % 2 == 0 {
        for word in alphabet.words_of_weight(weight / 2) {
            if is_lyndon(&word.0) && word.degree(alphabet).rem_euclid(2) == 1 {
                let half = lyndon_bracketing(&word.0);
                let tree = LieTree::Bracket(Box::new(half.clone()), Box::new(half));
                let element = tree.expand(alphabet);
                if !element.is_zero() {
                    out.push(LieBasisElement {
                        degree: 2 * word.degree(alphabet),
                        weight,
                        tree,
                        element,
                    });
                }
            }
        }
    }
    out
}

/// Möbius function, brute force (arguments stay tiny here).
fn moebius(mut n: u32) -> i64 {
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Witt formula: dimension of the degree-`n` component of the free Lie
/// algebra on `k` (ungraded) generators, `(1/n) Σ_{d|n} μ(d) k^{n/d}`.
pub fn witt_dimension(k: u32, n: u32) -> u64 {
    assert!(n >= 1);
    let mut total: i64 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += moebius(d) * (k as i64).pow(n / d);
        }
    }
    assert!(total >= 0 && total % n as i64 == 0);
    (total / n as i64) as u64
}

/// Split a tensor element by word length.
pub fn split_by_length(x: &TensorElement) -> BTreeMap<usize, TensorElement> {
    let mut out: BTreeMap<usize, TensorElement> = BTreeMap::new();
    for (w, c) in &x.terms {
        out.entry(w.len())
            .or_insert_with(TensorElement::zero)
            .add_term(w.clone(), c.clone());
    }
    out
}

/// Project onto the `Sym^p(L)` component: apply `e⁽ᵖ⁾ₙ` to each
/// word-length-`n` piece (`p > n` pieces project to zero; the empty word is
/// kept only for `p = 0`).
pub fn hodge_project(x: &TensorElement, p: usize, alphabet: &Alphabet) -> TensorElement {
    let mut out = TensorElement::zero();
    for (n, piece) in split_by_length(x) {
        if n == 0 {
            if p == 0 {
                out = out.add(&piece);
            }
            continue;
        }
        if p >= 1 && p <= n {
            out = out.add(&eulerian_idempotent(n, p).apply(&piece, alphabet));
        }
    }
    out
}

/// Full PBW decomposition of a length-homogeneous element: the map
/// `p ↦ x·e⁽ᵖ⁾ₙ`. Components sum back to `x`.
pub fn pbw_decompose(
    x: &TensorElement,
    alphabet: &Alphabet,
) -> Result<BTreeMap<usize, TensorElement>, LieError> {
    if x.is_zero() {
        return Ok(BTreeMap::new());
    }
    let (_, n) = x
        .homogeneous_weight_length(alphabet)
        .ok_or(LieError::NotHomogeneous)?;
    let mut out = BTreeMap::new();
    for p in 1..=n {
        let comp = eulerian_idempotent(n, p).apply(x, alphabet);
        if !comp.is_zero() {
            out.insert(p, comp);
        }
    }
    Ok(out)
}

/// True iff every word-length piece of `x` is fixed by its `e⁽ᵖ⁾` and
/// killed by all other idempotents.
pub fn is_in_sym_p(x: &TensorElement, p: usize, alphabet: &Alphabet) -> bool {
    hodge_project(x, p, alphabet) == *x
}

/// Lie membership: the weight-1 PBW component is everything.
pub fn is_lie(x: &TensorElement, alphabet: &Alphabet) -> bool {
    is_in_sym_p(x, 1, alphabet)
}

/// PBW symmetrization `(1/p!) Σ_σ ± f_{σ(1)}⋯f_{σ(p)}` of Lie factors.
/// Every factor must be a homogeneous-degree Lie element.
pub fn symmetrize(
    factors: &[TensorElement],
    alphabet: &Alphabet,
) -> Result<TensorElement, LieError> {
    let mut degrees = Vec::with_capacity(factors.len());
    for (i, f) in factors.iter().enumerate() {
        if !is_lie(f, alphabet) {
            return Err(LieError::NotLie(i));
        }
        degrees.push(f.homogeneous_degree(alphabet).ok_or(LieError::NotHomogeneous)?);
    }
    let p = factors.len();
    let mut out = TensorElement::zero();
    for perm in crate::sym::all_perms(p) {
        let sign = koszul_sign(&perm, &degrees);
        let mut prod = TensorElement::one();
        for &i in &perm {
            prod = prod.mul(&factors[i]);
        }
        out = out.add(&prod.scaled(&sign));
    }
    let mut factorial = qi(1);
    for t in 2..=p {
        factorial *= qi(t as i64);
    }
    Ok(out.scaled(&(qi(1) / factorial)))
}

///// Dimension of `Sym^p(L) ∩ (weight w, degree d)` block: rank of the
/// projector on the word basis of that block.
pub fn sym_block_dimension(alphabet: &Alphabet, p: usize, weight: u32, degree: i64) -> usize {
    crate::hodge::sym_block_basis(alphabet, p, weight, degree).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{Letter, Word};

    fn two_letters() -> Alphabet {
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
    fn lyndon_counts_match_witt() {
        let a = two_letters();
        let expected = [2u64, 1, 2, 3, 6, 9];
        for n in 1..=6u32 {
            assert_eq!(
                lyndon_basis(&a, n).len() as u64,
                expected[(n - 1) as usize],
                "weight {n}"
            );
            assert_eq!(witt_dimension(2, n), expected[(n - 1) as usize]);
        }
    }

    #[test]
    fn weight2_brackets() {
        let a = two_letters();
        let basis = lyndon_basis(&a, 2);
        assert_eq!(basis.len(), 1);
        // [v,w]
        assert_eq!(basis[0].element.terms[&Word(vec![0, 1])], qi(1));
        assert_eq!(basis[0].element.terms[&Word(vec![1, 0])], qi(-1));
        // single even letter, weight 2 → empty
        let one = Alphabet::new(vec![Letter {
            id: "v".into(),
            degree: 0,
            weight: 1,
        }]);
        assert!(lyndon_basis(&one, 2).is_empty());
    }

    #[test]
    fn super_lyndon_square_of_odd_letter() {
        let a = Alphabet::new(vec![Letter {
            id: "s".into(),
            degree: 1,
            weight: 1,
        }]);
        let basis = lyndon_basis(&a, 2);
        // [s,s] = 2 s·s ≠ 0 for odd s
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].element.terms[&Word(vec![0, 0])], qi(2));
        assert!(is_lie(&basis[0].element, &a));
    }

    #[test]
    fn lyndon_elements_are_lie() {
        let a = two_letters();
        for w in 1..=4u32 {
            for b in lyndon_basis(&a, w) {
                assert!(is_lie(&b.element, &a), "{}", b.tree.display(&a));
            }
        }
    }

    #[test]
    fn pbw_of_two_letter_word() {
        let a = two_letters();
        let vw = TensorElement::monomial(Word(vec![0, 1]), qi(1));
        let comps = pbw_decompose(&vw, &a).unwrap();
        // vw = ½[v,w] + ½(vw+wv)
        let p1 = &comps[&1];
        let p2 = &comps[&2];
        assert_eq!(p1.terms[&Word(vec![0, 1])], crate::scalar::qr(1, 2));
        assert_eq!(p1.terms[&Word(vec![1, 0])], crate::scalar::qr(-1, 2));
        assert_eq!(p2.terms[&Word(vec![0, 1])], crate::scalar::qr(1, 2));
        assert_eq!(p2.terms[&Word(vec![1, 0])], crate::scalar::qr(1, 2));
        assert_eq!(p1.add(p2), vw);
        assert!(is_in_sym_p(p1, 1, &a));
        assert!(is_in_sym_p(p2, 2, &a));
    }

    #[test]
    fn symmetrize_examples() {
        let a = two_letters();
        let v = TensorElement::letter(0);
        let w = TensorElement::letter(1);
        assert_eq!(symmetrize(&[v.clone()], &a).unwrap(), v);
        let s = symmetrize(&[v.clone(), w.clone()], &a).unwrap();
        assert_eq!(s.terms[&Word(vec![0, 1])], crate::scalar::qr(1, 2));
        assert_eq!(s.terms[&Word(vec![1, 0])], crate::scalar::qr(1, 2));
        let vvv = symmetrize(&[v.clone(), v.clone(), v.clone()], &a).unwrap();
        assert_eq!(vvv.terms[&Word(vec![0, 0, 0])], qi(1));
        // non-Lie factor rejected
        let vw = TensorElement::monomial(Word(vec![0, 1]), qi(1));
        assert!(symmetrize(&[vw], &a).is_err());
    }

    #[test]
    fn symmetrized_products_land_in_sym_p() {
        let a = two_letters();
        let v = TensorElement::letter(0);
        let w = TensorElement::letter(1);
        let vw = v.commutator(&w, &a);
        let s = symmetrize(&[vw.clone(), v.clone()], &a).unwrap();
        assert!(is_in_sym_p(&s, 2, &a));
        let s3 = symmetrize(&[v.clone(), v.clone(), w.clone()], &a).unwrap();
        assert!(is_in_sym_p(&s3, 3, &a));
    }
}
