//! The symmetric-group algebra ℚ[Sₙ], descent statistics, and the Eulerian
//! idempotents `e⁽ᵖ⁾ₙ` built from them.
//!
//! Permutations act on words on the **right** with Koszul signs:
//! `(v_1…v_n)·σ = ±(v_{σ(1)},…,v_{σ(n)})`, so that `(x·σ)·τ = x·(σ∘τ)` with
//! `(σ∘τ)(i) = σ(τ(i))`; the group-algebra product matches this composition.
//!
//! The idempotents are defined by descent classes and Stirling-type
//! coefficients: `e⁽ᵖ⁾ₙ = Σ_j a^{p,j}_n l^j_n`, where `l^j_n` sums the
//! permutations with `j−1` descents and the coefficients are read off from
//! `Σ_p a^{p,j}_n X^p = binomial(X−j+n, n)`.

use crate::scalar::{qi, Q};
use crate::word::{koszul_sign, Alphabet, TensorElement, Word};
use num::Zero;
use once_cell::sync::Lazy;
use std::collections::BTreeMap;
use std::sync::Mutex;

/// A permutation of `{0,…,n−1}` stored as its image list: position `i` of
/// the rearranged word holds the letter from position `perm[i]`.
pub type Perm = Vec<usize>;

/// All of Sₙ in lexicographic order of image lists.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut current: Perm = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let mut i = n.wrapping_sub(1);
        loop {
            if i == 0 || i == usize::MAX {
                return out;
            }
            if current[i - 1] < current[i] {
                break;
            }
            i -= 1;
        }
        let pivot = i - 1;
        let mut j = n - 1;
        while current[j] <= current[pivot] {
            j -= 1;
        }
        current.swap(pivot, j);
        current[pivot + 1..].reverse();
    }
}

/// Number of descents: positions `i` with `perm[i] > perm[i+1]`.
pub fn descents(perm: &[usize]) -> usize {
    perm.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Composition for the right action: `(σ∘τ)(i) = σ(τ(i))`.
pub fn compose_perms(sigma: &[usize], tau: &[usize]) -> Perm {
    tau.iter().map(|&i| sigma[i]).collect()
}

/// An element of ℚ[Sₙ] acting on `V^⊗n` on the right with Koszul signs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymOperator {
    pub arity: usize,
    pub coefficients: BTreeMap<Perm, Q>,
}

impl SymOperator {
    pub fn zero(arity: usize) -> Self {
        SymOperator {
            arity,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn identity(arity: usize) -> Self {
        let mut coefficients = BTreeMap::new();
        coefficients.insert((0..arity).collect(), qi(1));
        SymOperator {
            arity,
            coefficients,
        }
    }

    pub fn single(perm: Perm, coeff: Q) -> Self {
        let arity = perm.len();
        let mut coefficients = BTreeMap::new();
        if !coeff.is_zero() {
            coefficients.insert(perm, coeff);
        }
        SymOperator {
            arity,
            coefficients,
        }
    }

    pub fn add_term(&mut self, perm: Perm, coeff: Q) {
        assert_eq!(perm.len(), self.arity);
        if coeff.is_zero() {
            return;
        }
        let e = self.coefficients.entry(perm).or_insert_with(Q::zero);
        *e += coeff;
        if e.is_zero() {
            self.coefficients.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &SymOperator) -> SymOperator {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (p, c) in &other.coefficients {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, s: &Q) -> SymOperator {
        if s.is_zero() {
            return SymOperator::zero(self.arity);
        }
        SymOperator {
            arity: self.arity,
            coefficients: self
                .coefficients
                .iter()
                .map(|(p, c)| (p.clone(), c * s))
                .collect(),
        }
    }

    /// Group-algebra product compatible with the right action:
    /// `x·(e*f) = (x·e)·f`.
    pub fn compose(&self, other: &SymOperator) -> SymOperator {
        assert_eq!(self.arity, other.arity);
        let mut out = SymOperator::zero(self.arity);
        for (sigma, a) in &self.coefficients {
            for (tau, b) in &other.coefficients {
                out.add_term(compose_perms(sigma, tau), a * b);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Right action on a tensor element, word by word, with Koszul signs.
    /// Every word must have length equal to the arity.
    pub fn apply(&self, x: &TensorElement, alphabet: &Alphabet) -> TensorElement {
        let mut out = TensorElement::zero();
        for (word, coeff) in &x.terms {
            assert_eq!(
                word.len(),
                self.arity,
                "word length must equal operator arity"
            );
            let degrees: Vec<i64> = word.0.iter().map(|&l| alphabet.degree(l)).collect();
            for (perm, c) in &self.coefficients {
                let sign = koszul_sign(perm, &degrees);
                let permuted = Word(perm.iter().map(|&i| word.0[i]).collect());
                out.add_term(permuted, coeff * c * sign);
            }
        }
        out
    }

    /// Embed into ℚ[Sₙ₊₁] fixing position 0 (acting on the last `n`
    /// symbols).
    pub fn embed_fixing_first(&self) -> SymOperator {
        let mut out = SymOperator::zero(self.arity + 1);
        for (perm, c) in &self.coefficients {
            let mut p = Vec::with_capacity(self.arity + 1);
            p.push(0);
            p.extend(perm.iter().map(|&i| i + 1));
            out.add_term(p, c.clone());
        }
        out
    }

    /// Embed into ℚ[Sₙ₊₁] fixing the last position (acting on the first `n`
    /// symbols).
    pub fn embed_fixing_last(&self) -> SymOperator {
        let mut out = SymOperator::zero(self.arity + 1);
        for (perm, c) in &self.coefficients {
            let mut p = perm.clone();
            p.push(self.arity);
            out.add_term(p, c.clone());
        }
        out
    }
}

/// Coefficients of `binomial(X−j+n, n)` as a polynomial in `X`:
/// `Π_{t=1..n} (X − j + t) / n!`, exact over ℚ. Index `p` of the returned
/// vector is the coefficient of `X^p` (length `n+1`).
pub fn stirling_coefficients(n: usize, j: usize) -> Vec<Q> {
    // polynomial product, coefficients low-to-high
    let mut poly = vec![qi(1)];
    for t in 1..=n {
        let constant = qi(t as i64 - j as i64);
        // multiply by (X + constant)
        let mut next = vec![Q::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] += c * &constant;
        }
        poly = next;
    }
    let mut factorial = qi(1);
    for t in 2..=n {
        factorial *= qi(t as i64);
    }
    poly.into_iter().map(|c| c / &factorial).collect()
}

/// Sum of the permutations in Sₙ with exactly `j−1` descents.
pub fn descent_class(n: usize, j: usize) -> SymOperator {
    let mut out = SymOperator::zero(n);
    for p in all_perms(n) {
        if descents(&p) == j - 1 {
            out.add_term(p, qi(1));
        }
    }
    out
}

static EULERIAN_CACHE: Lazy<Mutex<BTreeMap<(usize, usize), SymOperator>>> =
    Lazy::new(|| Mutex::new(BTreeMap::new()));

/// The Eulerian idempotent `e⁽ᵖ⁾ₙ ∈ ℚ[Sₙ]`, `1 ≤ p ≤ n`.
pub fn eulerian_idempotent(n: usize, p: usize) -> SymOperator {
    assert!(n >= 1, "arity must be ≥ 1");
    assert!(1 <= p && p <= n, "p must lie in 1..=n (got p={p}, n={n})");
    if let Some(e) = EULERIAN_CACHE.lock().unwrap().get(&(n, p)) {
        return e.clone();
    }
    let mut out = SymOperator::zero(n);
    for j in 1..=n {
        let coeffs = stirling_coefficients(n, j);
        let a = coeffs[p].clone();
        if a.is_zero() {
            continue;
        }
        out = out.add(&descent_class(n, j).scaled(&a));
    }
    EULERIAN_CACHE
        .lock()
        .unwrap()
        .insert((n, p), out.clone());
    out
}

/// The rotation sum `N = Σ_{i=0}^{n−1} τ^i` with `τ` the `n`-cycle sending
/// position `i` to `i+1 (mod n)`.
pub fn rotation_sum(n: usize) -> SymOperator {
    let tau: Perm = (0..n).map(|i| (i + 1) % n).collect();
    let mut out = SymOperator::zero(n);
    let mut power: Perm = (0..n).collect();
    for _ in 0..n {
        out.add_term(power.clone(), qi(1));
        power = compose_perms(&tau, &power);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;
    use crate::word::Letter;

    #[test]
    fn perm_enumeration_and_descents() {
        assert_eq!(all_perms(3).len(), 6);
        assert_eq!(all_perms(4).len(), 24);
        assert_eq!(descents(&[0, 1, 2]), 0);
        assert_eq!(descents(&[2, 1, 0]), 2);
        // Eulerian numbers for n=4: 1, 11, 11, 1 by descent count
        let counts: Vec<usize> = (1..=4)
            .map(|j| descent_class(4, j).coefficients.len())
            .collect();
        assert_eq!(counts, vec![1, 11, 11, 1]);
    }

    #[test]
    fn composition_matches_right_action() {
        let a = Alphabet::new(vec![
            Letter {
                id: "a".into(),
                degree: 1,
                weight: 1,
            },
            Letter {
                id: "b".into(),
                degree: 2,
                weight: 1,
            },
            Letter {
                id: "c".into(),
                degree: 1,
                weight: 1,
            },
        ]);
        let x = TensorElement::monomial(Word(vec![0, 1, 2]), qi(1));
        for sigma in all_perms(3) {
            for tau in all_perms(3) {
                let e = SymOperator::single(sigma.clone(), qi(1));
                let f = SymOperator::single(tau.clone(), qi(1));
                let lhs = f.apply(&e.apply(&x, &a), &a);
                let rhs = e.compose(&f).apply(&x, &a);
                assert_eq!(lhs, rhs, "σ={sigma:?}, τ={tau:?}");
            }
        }
    }

    #[test]
    fn stirling_expansion_n2() {
        // binomial(X−1+2, 2) = (X+1)X/2 = X²/2 + X/2
        let c = stirling_coefficients(2, 1);
        assert_eq!(c, vec![qi(0), qr(1, 2), qr(1, 2)]);
        // binomial(X−2+2, 2) = X(X−1)/2 = X²/2 − X/2
        let c = stirling_coefficients(2, 2);
        assert_eq!(c, vec![qi(0), qr(-1, 2), qr(1, 2)]);
    }

    #[test]
    fn eulerian_n1_and_n2() {
        assert_eq!(eulerian_idempotent(1, 1), SymOperator::identity(1));
        let e1 = eulerian_idempotent(2, 1);
        let e2 = eulerian_idempotent(2, 2);
        assert_eq!(e1.coefficients[&vec![0, 1]], qr(1, 2));
        assert_eq!(e1.coefficients[&vec![1, 0]], qr(-1, 2));
        assert_eq!(e2.coefficients[&vec![0, 1]], qr(1, 2));
        assert_eq!(e2.coefficients[&vec![1, 0]], qr(1, 2));
    }

    #[test]
    fn eulerian_idempotency_orthogonality_completeness_small() {
        // full n ≤ 6 suite lives in the integration tests; here n ≤ 4 keeps
        // the unit tests fast
        for n in 1..=4usize {
            let idems: Vec<SymOperator> =
                (1..=n).map(|p| eulerian_idempotent(n, p)).collect();
            let mut total = SymOperator::zero(n);
            for (pi, e) in idems.iter().enumerate() {
                total = total.add(e);
                for (qi_, f) in idems.iter().enumerate() {
                    let prod = e.compose(f);
                    if pi == qi_ {
                        assert_eq!(prod, *e, "idempotency fails n={n} p={}", pi + 1);
                    } else {
                        assert!(prod.is_zero(), "orthogonality fails n={n}");
                    }
                }
            }
            assert_eq!(total, SymOperator::identity(n), "completeness fails n={n}");
        }
    }
}
