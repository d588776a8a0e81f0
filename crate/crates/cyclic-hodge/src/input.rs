//! Finite presentations of the engine's inputs: DG Lie algebras and
//! coaugmented, conilpotent, cocommutative DG coalgebras — with full
//! load-time validation of every axiom (graded antisymmetry, Jacobi,
//! coassociativity, cocommutativity, coderivation, d² = 0, weight rules).

use crate::scalar::{qi, sign_pow, Q};
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{structure} `{name}`: {violation}")]
    Axiom {
        structure: &'static str,
        name: String,
        violation: String,
    },
}

fn axiom(structure: &'static str, name: &str, violation: String) -> InputError {
    InputError::Axiom {
        structure,
        name: name.to_string(),
        violation,
    }
}

/// Sparse vector over a basis, used for structure constants.
pub type Sparse = Vec<(usize, Q)>;

fn sparse_add(acc: &mut BTreeMap<usize, Q>, v: &Sparse, scale: &Q) {
    for (i, c) in v {
        let e = acc.entry(*i).or_insert_with(Q::zero);
        *e += c * scale;
    }
}

fn sparse_is_zero(acc: &BTreeMap<usize, Q>) -> bool {
    acc.values().all(|v| v.is_zero())
}

// ---------------------------------------------------------------------------
// DG Lie algebras
// ---------------------------------------------------------------------------

/// A finite-dimensional (per degree) DG Lie algebra given by structure
/// constants on a homogeneous basis.
#[derive(Debug, Clone)]
pub struct LieAlgebraSpec {
    pub name: String,
    /// `(label, homological degree)` per basis element.
    pub basis: Vec<(String, i64)>,
    /// `[e_i, e_j] = Σ c·e_k`, stored for all ordered pairs that are nonzero.
    pub brackets: BTreeMap<(usize, usize), Sparse>,
    /// Optional differential `d e_i = Σ c·e_k` (degree −1).
    pub differential: BTreeMap<usize, Sparse>,
}

impl LieAlgebraSpec {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].1
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].0
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|(l, _)| l == label)
    }

    pub fn bracket(&self, i: usize, j: usize) -> Sparse {
        self.brackets.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn d(&self, i: usize) -> Sparse {
        self.differential.get(&i).cloned().unwrap_or_default()
    }

    /// `[x, y]` on coordinate vectors.
    pub fn bracket_vec(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                for (k, c) in self.bracket(i, j) {
                    out[k] += a * b * &c;
                }
            }
        }
        out
    }

    /// Validate all axioms; call after construction or parsing.
    pub fn validate(&self) -> Result<(), InputError> {
        let n = self.dim();
        let deg = |i: usize| self.degree(i);
        let err = |v: String| axiom("Lie algebra", &self.name, v);
        // degree compatibility + graded antisymmetry
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.bracket(i, j) {
                    if c.is_zero() {
                        continue;
                    }
                    if deg(k) != deg(i) + deg(j) {
                        return Err(err(format!(
                            "bracket [{},{}] has degree-incompatible term {}",
                            self.label(i),
                            self.label(j),
                            self.label(k)
                        )));
                    }
                }
                // [x,y] + (−1)^{|x||y|}[y,x] = 0
                let mut acc = BTreeMap::new();
                sparse_add(&mut acc, &self.bracket(i, j), &qi(1));
                sparse_add(&mut acc, &self.bracket(j, i), &sign_pow(deg(i) * deg(j)));
                if !sparse_is_zero(&acc) {
                    return Err(err(format!(
                        "graded antisymmetry fails on ({}, {})",
                        self.label(i),
                        self.label(j)
                    )));
                }
            }
        }
        // graded Jacobi:
        // (−1)^{|x||z|}[x,[y,z]] + (−1)^{|y||x|}[y,[z,x]] + (−1)^{|z||y|}[z,[x,y]] = 0
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut acc = BTreeMap::new();
                    let mut term = |a: usize, b: usize, c_: usize, s: Q| {
                        for (m, cm) in self.bracket(b, c_) {
                            for (k, ck) in self.bracket(a, m) {
                                let e = acc.entry(k).or_insert_with(Q::zero);
                                *e += &cm * &ck * &s;
                            }
                        }
                    };
                    term(x, y, z, sign_pow(deg(x) * deg(z)));
                    term(y, z, x, sign_pow(deg(y) * deg(x)));
                    term(z, x, y, sign_pow(deg(z) * deg(y)));
                    if !sparse_is_zero(&acc) {
                        return Err(err(format!(
                            "graded Jacobi fails on ({}, {}, {})",
                            self.label(x),
                            self.label(y),
                            self.label(z)
                        )));
                    }
                }
            }
        }
        // differential: degree −1, d² = 0, derivation of the bracket
        for i in 0..n {
            for (k, c) in self.d(i) {
                if !c.is_zero() && deg(k) != deg(i) - 1 {
                    return Err(err(format!(
                        "differential of {} is not degree −1",
                        self.label(i)
                    )));
                }
            }
            let mut acc = BTreeMap::new();
            for (k, c) in self.d(i) {
                sparse_add(&mut acc, &self.d(k), &c);
            }
            if !sparse_is_zero(&acc) {
                return Err(err(format!("d² ≠ 0 on {}", self.label(i))));
            }
        }
        for i in 0..n {
            for j in 0..n {
                // d[x,y] = [dx,y] + (−1)^{|x|}[x,dy]
                let mut acc = BTreeMap::new();
                for (k, c) in self.bracket(i, j) {
                    sparse_add(&mut acc, &self.d(k), &c);
                }
                for (m, cm) in self.d(i) {
                    sparse_add(&mut acc, &self.bracket(m, j), &-cm);
                }
                for (m, cm) in self.d(j) {
                    let s = sign_pow(deg(i));
                    sparse_add(&mut acc, &self.bracket(i, m), &-(cm * s));
                }
                if !sparse_is_zero(&acc) {
                    return Err(err(format!(
                        "differential is not a bracket derivation on ({}, {})",
                        self.label(i),
                        self.label(j)
                    )));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Graded symmetric monomials (shared by the CE constructions)
// ---------------------------------------------------------------------------

/// A graded-commutative monomial: a sorted list of generator indices.
/// Generators of odd degree square to zero and may appear at most once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymMonomial(pub Vec<usize>);

impl SymMonomial {
    pub fn weight(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn degree(&self, degrees: &[i64]) -> i64 {
        self.0.iter().map(|&g| degrees[g]).sum()
    }

    pub fn label(&self, labels: &[String]) -> String {
        self.0
            .iter()
            .map(|&g| labels[g].clone())
            .collect::<Vec<_>>()
            .join("∧")
    }
}

/// Sort a generator sequence into a monomial, accumulating the Koszul sign;
/// `None` when an odd generator repeats.
pub fn normalize_monomial(mut seq: Vec<usize>, degrees: &[i64]) -> Option<(SymMonomial, Q)> {
    let mut sign = qi(1);
    // insertion sort counting odd–odd crossings
    for i in 1..seq.len() {
        let mut j = i;
        while j > 0 && seq[j - 1] > seq[j] {
            if degrees[seq[j - 1]].rem_euclid(2) == 1 && degrees[seq[j]].rem_euclid(2) == 1 {
                sign = -sign;
            }
            seq.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in seq.windows(2) {
        if w[0] == w[1] && degrees[w[0]].rem_euclid(2) == 1 {
            return None;
        }
    }
    Some((SymMonomial(seq), sign))
}

/// All graded-commutative monomials of the given length over `n` generators
/// with the given degrees.
pub fn monomials_of_weight(n: usize, degrees: &[i64], weight: u32) -> Vec<SymMonomial> {
    let mut out = Vec::new();
    fn rec(
        start: usize,
        remaining: u32,
        current: &mut Vec<usize>,
        n: usize,
        degrees: &[i64],
        out: &mut Vec<SymMonomial>,
    ) {
        if remaining == 0 {
            out.push(SymMonomial(current.clone()));
            return;
        }
        for g in start..n {
            let odd = degrees[g].rem_euclid(2) == 1;
            if odd && current.last() == Some(&g) {
                continue;
            }
            current.push(g);
            rec(g, remaining - 1, current, n, degrees, out);
            current.pop();
        }
    }
    rec(0, weight, &mut Vec::new(), n, degrees, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Conilpotent DG coalgebras
// ---------------------------------------------------------------------------

/// One basis element of the reduced part `C̄` of a coaugmented coalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraBasisElement {
    pub label: String,
    pub degree: i64,
    pub weight: u32,
}

/// A coaugmented, conilpotent DG coalgebra, stored by its reduced part:
/// basis of `C̄` with a strictly positive weight grading (the weight-0 part
/// is the implicit coaugmentation), the **reduced** coproduct
/// `Δ̄(c) = Δ(c) − c⊗1 − 1⊗c`, and an optional differential.
#[derive(Debug, Clone)]
pub struct CoalgebraSpec {
    pub name: String,
    pub basis: Vec<CoalgebraBasisElement>,
    /// `Δ̄(c_i) = Σ q · c_j ⊗ c_k`.
    pub coproduct: BTreeMap<usize, Vec<(usize, usize, Q)>>,
    /// `d c_i = Σ q · c_j` (degree −1, weight preserving).
    pub differential: BTreeMap<usize, Sparse>,
    pub cocommutative: bool,
}

impl CoalgebraSpec {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.basis[i].weight
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn reduced_coproduct(&self, i: usize) -> Vec<(usize, usize, Q)> {
        self.coproduct.get(&i).cloned().unwrap_or_default()
    }

    pub fn d(&self, i: usize) -> Sparse {
        self.differential.get(&i).cloned().unwrap_or_default()
    }

    pub fn max_weight(&self) -> u32 {
        self.basis.iter().map(|b| b.weight).max().unwrap_or(0)
    }

    pub fn validate(&self) -> Result<(), InputError> {
        let err = |v: String| axiom("coalgebra", &self.name, v);
        let n = self.dim();
        for b in &self.basis {
            if b.weight == 0 {
                return Err(err(format!(
                    "basis element `{}` has weight 0; the weight-0 part is reserved for the coaugmentation",
                    b.label
                )));
            }
        }
        // coproduct: degree and weight bookkeeping
        for i in 0..n {
            for (a, b, c) in self.reduced_coproduct(i) {
                if c.is_zero() {
                    continue;
                }
                if self.degree(a) + self.degree(b) != self.degree(i) {
                    return Err(err(format!(
                        "Δ̄({}) violates degree additivity at {}⊗{}",
                        self.label(i),
                        self.label(a),
                        self.label(b)
                    )));
                }
                if self.weight(a) + self.weight(b) != self.weight(i) {
                    return Err(err(format!(
                        "Δ̄({}) violates weight additivity at {}⊗{}",
                        self.label(i),
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        // coassociativity of the reduced coproduct:
        // (Δ̄⊗id)Δ̄ = (id⊗Δ̄)Δ̄ (counit terms cancel pairwise)
        for i in 0..n {
            let mut acc: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
            for (a, b, c) in self.reduced_coproduct(i) {
                for (a1, a2, c2) in self.reduced_coproduct(a) {
                    let e = acc.entry((a1, a2, b)).or_insert_with(Q::zero);
                    *e += &c * &c2;
                }
                for (b1, b2, c2) in self.reduced_coproduct(b) {
                    let e = acc.entry((a, b1, b2)).or_insert_with(Q::zero);
                    *e -= &c * &c2;
                }
            }
            if !acc.values().all(|v| v.is_zero()) {
                return Err(err(format!("coassociativity fails on {}", self.label(i))));
            }
        }
        // graded cocommutativity
        if self.cocommutative {
            for i in 0..n {
                let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
                for (a, b, c) in self.reduced_coproduct(i) {
                    *acc.entry((a, b)).or_insert_with(Q::zero) += &c;
                    let s = sign_pow(self.degree(a) * self.degree(b));
                    *acc.entry((b, a)).or_insert_with(Q::zero) -= &c * s;
                }
                if !acc.values().all(|v| v.is_zero()) {
                    return Err(err(format!("cocommutativity fails on {}", self.label(i))));
                }
            }
        }
        // differential: degree −1, weight preserving, d² = 0, coderivation
        for i in 0..n {
            for (k, c) in self.d(i) {
                if c.is_zero() {
                    continue;
                }
                if self.degree(k) != self.degree(i) - 1 {
                    return Err(err(format!("d({}) is not degree −1", self.label(i))));
                }
                // Weight is a filtration: d may lower it (e.g. a Chevalley–
                // Eilenberg differential drops symmetric-power weight by one)
                // but must never raise it.
                if self.weight(k) > self.weight(i) {
                    return Err(err(format!("d({}) increases weight", self.label(i))));
                }
            }
            let mut acc = BTreeMap::new();
            for (k, c) in self.d(i) {
                sparse_add(&mut acc, &self.d(k), &c);
            }
            if !sparse_is_zero(&acc) {
                return Err(err(format!("d² ≠ 0 on {}", self.label(i))));
            }
        }
        // coderivation: Δ̄(dc) = (d⊗1)Δ̄c + (−1)^{|c'|}(1⊗d)Δ̄c
        for i in 0..n {
            let mut acc: BTreeMap<(usize, usize), Q> = BTreeMap::new();
            for (k, c) in self.d(i) {
                for (a, b, c2) in self.reduced_coproduct(k) {
                    *acc.entry((a, b)).or_insert_with(Q::zero) += &c * &c2;
                }
            }
            for (a, b, c) in self.reduced_coproduct(i) {
                for (a2, ca) in self.d(a) {
                    *acc.entry((a2, b)).or_insert_with(Q::zero) -= &c * &ca;
                }
                let s = sign_pow(self.degree(a));
                for (b2, cb) in self.d(b) {
                    *acc.entry((a, b2)).or_insert_with(Q::zero) -= &c * &cb * &s;
                }
            }
            if !acc.values().all(|v| v.is_zero()) {
                return Err(err(format!(
                    "differential is not a coderivation on {}",
                    self.label(i)
                )));
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
    fn sl2_validates() {
        fixtures::sl2().validate().unwrap();
    }

    #[test]
    fn abelian_validates() {
        fixtures::abelian(1).validate().unwrap();
        fixtures::abelian(2).validate().unwrap();
    }

    #[test]
    fn broken_jacobi_rejected() {
        let mut a = fixtures::sl2();
        // corrupt [e,f]
        a.brackets.insert((0, 1), vec![(2, qi(1)), (0, qi(1))]);
        a.brackets.insert((1, 0), vec![(2, qi(-1)), (0, qi(-1))]);
        assert!(a.validate().is_err());
    }

    #[test]
    fn monomial_normalization_signs() {
        // two odd generators: swapping introduces −1; repetition kills
        let degrees = [1, 1];
        let (m, s) = normalize_monomial(vec![1, 0], &degrees).unwrap();
        assert_eq!(m, SymMonomial(vec![0, 1]));
        assert_eq!(s, qi(-1));
        assert!(normalize_monomial(vec![0, 0], &degrees).is_none());
        // even generator repeats freely
        let degrees = [2];
        let (m, s) = normalize_monomial(vec![0, 0], &degrees).unwrap();
        assert_eq!(m, SymMonomial(vec![0, 0]));
        assert_eq!(s, qi(1));
    }

    #[test]
    fn monomial_enumeration() {
        // Λ on 3 odd generators: weights 1,2,3 have dims 3,3,1
        let degrees = [1, 1, 1];
        assert_eq!(monomials_of_weight(3, &degrees, 1).len(), 3);
        assert_eq!(monomials_of_weight(3, &degrees, 2).len(), 3);
        assert_eq!(monomials_of_weight(3, &degrees, 3).len(), 1);
        assert_eq!(monomials_of_weight(3, &degrees, 4).len(), 0);
        // Sym on 2 even generators: weight 2 has dim 3
        let degrees = [2, 2];
        assert_eq!(monomials_of_weight(2, &degrees, 2).len(), 3);
    }
}
