//! Representation algebras and the Drinfeld trace.
//!
//! For a coalgebra `C` Koszul dual to a (DG) Lie algebra `a` and a
//! finite-dimensional ordinary Lie algebra `g`, the derived representation
//! scheme `DRep_g(a)` is modelled by the commutative DG algebra
//! `P = Sym(g* ⊗ C̄[−1])`: one polynomial generator `θ_{i,c}` per pair of a
//! `g`-basis index and a cobar letter. The differential is transported from
//! the cobar differential through the universal representation
//! `π : v_c ↦ Σ_i e_i ⊗ θ_{i,c}`; its quadratic part contracts the reduced
//! coproduct of `C` with the structure constants of `g`.
//!
//! A cyclic pairing on `C̄` and a nondegenerate invariant form on `g` combine
//! to a cyclic pairing on `g*(C̄)`, giving `P` a Poisson bracket of the same
//! degree conventions as the necklace bracket. The cyclicity axiom involves
//! the coaugmented coproduct, so when the pairing has a nonzero unit row
//! (Poincaré-duality pairings pair the counit with the top class) the
//! chain-level Leibniz compatibility of the bracket with the differential
//! holds on the full model [`derived_rep_complex_full`], which keeps the
//! degree −1 generators `θ(i,1)` of the coaugmentation; the reduced model is
//! its quotient by the DG ideal they generate. The Drinfeld trace associated
//! to an ad-invariant polynomial `P ∈ Sym^p(g*)` sends the `Sym^p(L)` Hodge
//! component of cyclic words to polynomials of degree `p` in the generators;
//! on weight-2 classes with the Killing form it intertwines the necklace
//! bracket with the Poisson bracket up to boundaries.

use crate::cobar::{cobar, CobarAlgebra, CobarError};
use crate::cyclic::NecklaceElement;
use crate::hodge::WeightWindow;
use crate::input::{normalize_monomial, CoalgebraSpec, InputError, LieAlgebraSpec, SymMonomial};
use crate::lie::{hodge_project, lyndon_basis, symmetrize, LieError, LieTree};
use crate::linalg::{SparseMat, Solver};
use crate::pairing::CyclicPairing;
use crate::scalar::{qi, sign_pow, Q};
use crate::word::{Alphabet, LetterId, TensorElement, Word};
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Cobar(#[from] CobarError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("representation-complex structure error: {0}")]
    Structure(String),
    #[error("the invariant form on g is degenerate")]
    DegenerateForm,
    #[error("element is not expressible in the free Lie algebra / Sym^p basis")]
    NotExpressible,
}

// ---------------------------------------------------------------------------
// Polynomial elements in the generators θ_{i,c}
// ---------------------------------------------------------------------------

/// An element of `Sym(g* ⊗ C̄[−1])`. Monomials are sorted sequences of flat
/// generator indices (`flat = letter·dim g + g-index`), normalized with
/// Koszul signs; squares of odd generators vanish.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RepElement {
    pub terms: BTreeMap<SymMonomial, Q>,
}

impl RepElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut e = Self::default();
        e.terms.insert(SymMonomial(Vec::new()), qi(1));
        e
    }

    pub fn generator(flat: usize) -> Self {
        let mut e = Self::default();
        e.terms.insert(SymMonomial(vec![flat]), qi(1));
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Add a term given by an arbitrary (possibly unsorted) generator
    /// sequence; normalization signs are applied.
    pub fn add_seq(&mut self, seq: Vec<usize>, coeff: Q, degrees: &[i64]) {
        if coeff.is_zero() {
            return;
        }
        if let Some((mono, sign)) = normalize_monomial(seq, degrees) {
            let e = self.terms.entry(mono).or_insert_with(Q::zero);
            *e += coeff * sign;
            if e.is_zero() {
                self.terms.retain(|_, v| !v.is_zero());
            }
        }
    }

    pub fn add(&self, other: &RepElement) -> RepElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let e = out.terms.entry(m.clone()).or_insert_with(Q::zero);
            *e += c;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn sub(&self, other: &RepElement) -> RepElement {
        self.add(&other.scaled(&qi(-1)))
    }

    pub fn scaled(&self, s: &Q) -> RepElement {
        if s.is_zero() {
            return RepElement::zero();
        }
        RepElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &RepElement, degrees: &[i64]) -> RepElement {
        let mut out = RepElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut seq = m1.0.clone();
                seq.extend_from_slice(&m2.0);
                out.add_seq(seq, c1 * c2, degrees);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// The derived representation complex
// ---------------------------------------------------------------------------

/// `Sym(g* ⊗ C̄[−1])` with the differential transported from the cobar
/// construction of `C` through the universal representation.
///
/// With `with_unit` set, the model is built on the full coaugmented coalgebra
/// `C = k·1 ⊕ C̄`: there is an extra odd generator `θ(i,1)` of degree −1 and
/// weight 0 for each basis element of `g`, and the quadratic part of the
/// differential runs over the full coproduct `Δc = c⊗1 + 1⊗c + Δ̄c`. The
/// reduced model is the quotient by the differential ideal `(θ(i,1))`; the
/// quotient map is what all representation-scheme invariants (`H₀`, traces)
/// use, but a Poisson bracket induced by a pairing whose unit row is nonzero
/// (Poincaré duality forces `⟨1, top⟩ ≠ 0`) only satisfies the Leibniz
/// compatibility with the differential on the full model.
#[derive(Debug, Clone)]
pub struct RepComplex {
    pub cobar: CobarAlgebra,
    pub g: LieAlgebraSpec,
    /// Whether the generators `θ(i,1)` on the coaugmentation are included.
    pub with_unit: bool,
    /// Homological degree of each flat generator (= degree of its letter).
    pub gen_degrees: Vec<i64>,
    /// Internal weight of each flat generator (= weight of its letter).
    pub gen_weights: Vec<u32>,
    pub gen_labels: Vec<String>,
    gen_diffs: Vec<RepElement>,
}

impl RepComplex {
    pub fn flat(&self, letter: LetterId, i: usize) -> usize {
        letter * self.g.dim() + i
    }

    /// The extended coalgebra index of the letter carrying a flat generator:
    /// `None` is the coaugmentation unit, `Some(l)` a reduced letter.
    pub fn letter_ext(&self, flat: usize) -> crate::pairing::ExtIndex {
        let l = flat / self.g.dim();
        if l < self.cobar.alphabet.len() {
            Some(l)
        } else {
            None
        }
    }

    pub fn n_generators(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn monomial_degree(&self, m: &SymMonomial) -> i64 {
        m.0.iter().map(|&f| self.gen_degrees[f]).sum()
    }

    pub fn monomial_weight(&self, m: &SymMonomial) -> u32 {
        m.0.iter().map(|&f| self.gen_weights[f]).sum()
    }

    /// The differential, extended from generators as an odd derivation.
    pub fn differential(&self, x: &RepElement) -> RepElement {
        let mut out = RepElement::zero();
        for (m, c) in &x.terms {
            for s in 0..m.0.len() {
                let prefix: i64 = m.0[..s].iter().map(|&f| self.gen_degrees[f]).sum();
                let sgn = sign_pow(prefix);
                for (dm, dc) in &self.gen_diffs[m.0[s]].terms {
                    let mut seq: Vec<usize> = m.0[..s].to_vec();
                    seq.extend_from_slice(&dm.0);
                    seq.extend_from_slice(&m.0[s + 1..]);
                    out.add_seq(seq, c * dc * &sgn, &self.gen_degrees);
                }
            }
        }
        out
    }

    pub fn gen_diff(&self, flat: usize) -> &RepElement {
        &self.gen_diffs[flat]
    }

    pub fn display(&self, x: &RepElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in &x.terms {
            let mono = if m.0.is_empty() {
                "1".to_string()
            } else {
                m.0.iter()
                    .map(|&f| self.gen_labels[f].clone())
                    .collect::<Vec<_>>()
                    .join("·")
            };
            parts.push(format!("({})·{}", crate::scalar::format_rational(c), mono));
        }
        parts.join(" + ")
    }

    /// All monomials of total weight ≤ `max_weight`, grouped by homological
    /// degree.
    pub fn monomials_by_degree(&self, max_weight: u32) -> BTreeMap<i64, Vec<SymMonomial>> {
        let mut out: BTreeMap<i64, Vec<SymMonomial>> = BTreeMap::new();
        let mut current: Vec<usize> = Vec::new();
        self.enumerate(0, max_weight, &mut current, &mut out);
        out
    }

    fn enumerate(
        &self,
        from: usize,
        budget: u32,
        current: &mut Vec<usize>,
        out: &mut BTreeMap<i64, Vec<SymMonomial>>,
    ) {
        let m = SymMonomial(current.clone());
        out.entry(self.monomial_degree(&m)).or_default().push(m);
        for f in from..self.n_generators() {
            if self.gen_weights[f] > budget {
                continue;
            }
            // odd generators square to zero
            if self.gen_degrees[f] % 2 != 0 && current.last() == Some(&f) {
                continue;
            }
            current.push(f);
            self.enumerate(f, budget - self.gen_weights[f], current, out);
            current.pop();
        }
    }
}

/// Build the derived representation complex of `C` with values in the
/// ordinary Lie algebra `g`. Fails loudly if the transported differential is
/// not `g`-linear or does not square to zero.
pub fn derived_rep_complex(c: &CoalgebraSpec, g: &LieAlgebraSpec) -> Result<RepComplex, RepError> {
    build_rep_complex(c, g, false)
}

/// The same complex built on the full coaugmented coalgebra `k·1 ⊕ C̄`,
/// including the degree −1 generators `θ(i,1)`. This is the model on which a
/// Poisson bracket induced by a pairing with a nonzero unit row is compatible
/// with the differential at chain level.
pub fn derived_rep_complex_full(
    c: &CoalgebraSpec,
    g: &LieAlgebraSpec,
) -> Result<RepComplex, RepError> {
    build_rep_complex(c, g, true)
}

fn build_rep_complex(
    c: &CoalgebraSpec,
    g: &LieAlgebraSpec,
    with_unit: bool,
) -> Result<RepComplex, RepError> {
    g.validate()?;
    if (0..g.dim()).any(|i| g.degree(i) != 0) {
        return Err(RepError::Structure(
            "the representation Lie algebra g must be concentrated in degree 0".into(),
        ));
    }
    let r = cobar(c)?;
    let gd = g.dim();
    let nl = r.alphabet.len();
    let total = if with_unit { nl + 1 } else { nl };
    let mut gen_degrees = Vec::with_capacity(total * gd);
    let mut gen_weights = Vec::with_capacity(total * gd);
    let mut gen_labels = Vec::with_capacity(total * gd);
    for l in 0..nl {
        for i in 0..gd {
            gen_degrees.push(r.alphabet.degree(l));
            gen_weights.push(r.alphabet.weight(l));
            gen_labels.push(format!("θ({},{})", g.label(i), r.alphabet.letter(l).id));
        }
    }
    if with_unit {
        for i in 0..gd {
            gen_degrees.push(-1);
            gen_weights.push(0);
            gen_labels.push(format!("θ({},1)", g.label(i)));
        }
    }

    // Transport the cobar differential of each letter through the universal
    // representation π(v_c) = Σ_i e_i ⊗ θ_{i,c}: words of length 1 give
    // g-linear terms directly; words of length 2 give U(g)-quadratic terms
    // which must reduce to g-linear ones after PBW rewriting
    // e_j e_k = e_k e_j + [e_j, e_k] (j > k). On the full model the
    // quadratic words additionally run over the unit terms of the coproduct,
    // with the same left-factor Koszul sign (`|1| = 0`):
    // `Δc ⊇ c⊗1 + 1⊗c` contributes `(−1)^{|c|} v_c v_1 + v_1 v_c`, and the
    // unit letter itself has `Δ1 = 1⊗1`.
    let mut gen_diffs = vec![RepElement::zero(); total * gd];
    for l in 0..total {
        let mut lin = vec![RepElement::zero(); gd];
        let mut quad: BTreeMap<(usize, usize), RepElement> = BTreeMap::new();
        let mut words: Vec<(Vec<usize>, Q)> = Vec::new();
        if l < nl {
            for (word, q) in &r.letter_differential(l).terms {
                words.push((word.0.clone(), q.clone()));
            }
            if with_unit {
                let cdeg = r.alphabet.degree(l) + 1;
                words.push((vec![l, nl], sign_pow(cdeg)));
                words.push((vec![nl, l], qi(1)));
            }
        } else {
            words.push((vec![nl, nl], qi(1)));
        }
        for (word, q) in &words {
            match word.as_slice() {
                [m] => {
                    for (i, entry) in lin.iter_mut().enumerate() {
                        let mut t = RepElement::zero();
                        t.add_seq(vec![*m * gd + i], q.clone(), &gen_degrees);
                        *entry = entry.add(&t);
                    }
                }
                [m1, m2] => {
                    for j in 0..gd {
                        for k in 0..gd {
                            let mut t = RepElement::zero();
                            t.add_seq(vec![*m1 * gd + j, *m2 * gd + k], q.clone(), &gen_degrees);
                            let e = quad.entry((j, k)).or_insert_with(RepElement::zero);
                            *e = e.add(&t);
                        }
                    }
                }
                _ => {
                    return Err(RepError::Structure(format!(
                        "cobar differential of a letter has a word of length {}",
                        word.len()
                    )))
                }
            }
        }
        // PBW-reduce the quadratic part
        let keys: Vec<(usize, usize)> = quad.keys().cloned().collect();
        for (j, k) in keys {
            if j > k {
                if let Some(a) = quad.remove(&(j, k)) {
                    let e = quad.entry((k, j)).or_insert_with(RepElement::zero);
                    *e = e.add(&a);
                    for (i, cc) in g.bracket(j, k) {
                        lin[i] = lin[i].add(&a.scaled(&cc));
                    }
                }
            }
        }
        for ((j, k), a) in &quad {
            if !a.is_zero() {
                return Err(RepError::Structure(format!(
                    "transported differential of letter `{}` has a non-Lie quadratic \
                     remainder at (e_{}, e_{})",
                    if l < nl {
                        r.alphabet.letter(l).id.clone()
                    } else {
                        "1".to_string()
                    },
                    g.label(*j),
                    g.label(*k)
                )));
            }
        }
        for (i, e) in lin.into_iter().enumerate() {
            gen_diffs[l * gd + i] = e;
        }
    }

    let rc = RepComplex {
        cobar: r,
        g: g.clone(),
        with_unit,
        gen_degrees,
        gen_weights,
        gen_labels,
        gen_diffs,
    };
    for f in 0..rc.n_generators() {
        let dd = rc.differential(&rc.differential(&RepElement::generator(f)));
        if !dd.is_zero() {
            return Err(RepError::Structure(format!(
                "d² ≠ 0 on generator {}: {}",
                rc.gen_labels[f],
                rc.display(&dd)
            )));
        }
    }
    Ok(rc)
}

/// Coordinates of a `RepElement` in an indexed monomial basis; `None` if a
/// monomial falls outside the basis.
fn rep_coords(
    x: &RepElement,
    index: &BTreeMap<SymMonomial, usize>,
    dim: usize,
) -> Option<Vec<Q>> {
    let mut v = vec![Q::zero(); dim];
    for (m, c) in &x.terms {
        v[*index.get(m)?] = c.clone();
    }
    Some(v)
}

/// Dimension of `H₀` of the weight-≤`max_weight` truncation: degree-0
/// monomials modulo images of degree-1 monomials.
pub fn h0_dimension(rc: &RepComplex, max_weight: u32) -> Result<usize, RepError> {
    let by_degree = rc.monomials_by_degree(max_weight);
    let empty = Vec::new();
    let deg0 = by_degree.get(&0).unwrap_or(&empty);
    let deg1 = by_degree.get(&1).unwrap_or(&empty);
    let index: BTreeMap<SymMonomial, usize> = deg0
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut solver = Solver::new(deg0.len());
    for m in deg1 {
        let mut x = RepElement::zero();
        x.terms.insert(m.clone(), qi(1));
        let dx = rc.differential(&x);
        let v = rep_coords(&dx, &index, deg0.len()).ok_or_else(|| {
            RepError::Structure("differential image leaves the weight truncation".into())
        })?;
        solver.insert(v);
    }
    Ok(deg0.len() - solver.rank())
}

/// Whether `x` is a boundary within the weight-≤`max_weight` truncation.
pub fn is_boundary(rc: &RepComplex, x: &RepElement, max_weight: u32) -> Result<bool, RepError> {
    if x.is_zero() {
        return Ok(true);
    }
    let degrees: Vec<i64> = x.terms.keys().map(|m| rc.monomial_degree(m)).collect();
    let deg = degrees[0];
    if degrees.iter().any(|&d| d != deg) {
        return Err(RepError::Structure(
            "boundary test requires a degree-homogeneous element".into(),
        ));
    }
    let by_degree = rc.monomials_by_degree(max_weight);
    let empty = Vec::new();
    let target = by_degree.get(&deg).unwrap_or(&empty);
    let sources = by_degree.get(&(deg + 1)).unwrap_or(&empty);
    let index: BTreeMap<SymMonomial, usize> = target
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let xv = match rep_coords(x, &index, target.len()) {
        Some(v) => v,
        None => return Ok(false),
    };
    let mut solver = Solver::new(target.len());
    for m in sources {
        let mut e = RepElement::zero();
        e.terms.insert(m.clone(), qi(1));
        let dm = rc.differential(&e);
        if let Some(v) = rep_coords(&dm, &index, target.len()) {
            solver.insert(v);
        }
    }
    Ok(solver.contains(&xv))
}

// ---------------------------------------------------------------------------
// Invariant polynomials on g
// ---------------------------------------------------------------------------

/// A symmetric ad-invariant `p`-linear form on `g`, stored by sorted basis
/// multi-indices.
#[derive(Debug, Clone)]
pub struct InvariantPolynomial {
    pub name: String,
    pub p: usize,
    coeffs: BTreeMap<Vec<usize>, Q>,
}

impl InvariantPolynomial {
    pub fn new(
        name: impl Into<String>,
        p: usize,
        coeffs: BTreeMap<Vec<usize>, Q>,
        g: &LieAlgebraSpec,
    ) -> Result<Self, RepError> {
        let out = InvariantPolynomial {
            name: name.into(),
            p,
            coeffs: coeffs
                .into_iter()
                .map(|(mut k, v)| {
                    k.sort_unstable();
                    (k, v)
                })
                .collect(),
        };
        out.check_invariance(g)?;
        Ok(out)
    }

    pub fn eval(&self, tuple: &[usize]) -> Q {
        let mut k = tuple.to_vec();
        k.sort_unstable();
        self.coeffs.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    /// ad-invariance: `Σ_s P(x₁, …, [z, x_s], …, x_p) = 0` for all basis
    /// tuples and all basis `z`.
    fn check_invariance(&self, g: &LieAlgebraSpec) -> Result<(), RepError> {
        let n = g.dim();
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..self.p {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..n).map(move |i| {
                        let mut u = t.clone();
                        u.push(i);
                        u
                    })
                })
                .collect();
        }
        for z in 0..n {
            for t in &tuples {
                let mut acc = Q::zero();
                for s in 0..self.p {
                    for (y, c) in g.bracket(z, t[s]) {
                        let mut u = t.clone();
                        u[s] = y;
                        acc += self.eval(&u) * c;
                    }
                }
                if !acc.is_zero() {
                    return Err(RepError::Structure(format!(
                        "form `{}` is not ad-invariant",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// The Killing form `κ(x, y) = Tr(ad x · ad y)`, computed from the
    /// structure constants.
    pub fn killing(g: &LieAlgebraSpec) -> Result<Self, RepError> {
        let n = g.dim();
        let mut coeffs = BTreeMap::new();
        for i in 0..n {
            for j in i..n {
                let mut tr = Q::zero();
                for m in 0..n {
                    for (k, c1) in g.bracket(j, m) {
                        for (mm, c2) in g.bracket(i, k) {
                            if mm == m {
                                tr += &c1 * c2;
                            }
                        }
                    }
                }
                if !tr.is_zero() {
                    coeffs.insert(vec![i, j], tr);
                }
            }
        }
        Self::new(format!("killing-{}", g.name), 2, coeffs, g)
    }

    /// The defining symmetric form `Σ ξ_i²` of an abelian Lie algebra.
    pub fn defining(g: &LieAlgebraSpec) -> Result<Self, RepError> {
        let coeffs = (0..g.dim()).map(|i| (vec![i, i], qi(1))).collect();
        Self::new(format!("defining-{}", g.name), 2, coeffs, g)
    }

    /// A linear invariant `P(x) = Σ c_i ξ_i(x)` (requires `P([x,y]) = 0`).
    pub fn linear(g: &LieAlgebraSpec, coeffs: Vec<Q>) -> Result<Self, RepError> {
        let coeffs = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (vec![i], c))
            .collect();
        Self::new(format!("linear-{}", g.name), 1, coeffs, g)
    }

    /// The matrix of a bilinear form (`p = 2` only).
    pub fn matrix(&self, n: usize) -> SparseMat {
        assert_eq!(self.p, 2);
        let cols = (0..n)
            .map(|j| (0..n).map(|i| self.eval(&[i, j])).collect())
            .collect();
        SparseMat::from_columns(n, cols)
    }
}

// ---------------------------------------------------------------------------
// The Poisson bracket on the representation complex
// ---------------------------------------------------------------------------

/// The Poisson structure on `Sym(g* ⊗ C̄[−1])` induced by the cyclic pairing
/// on `C̄` tensored with the dual of a nondegenerate invariant form on `g`:
/// `{θ_{i,c}, θ_{j,c'}} = (−1)^{|c'|_V(|c|_V+1)} (K⁻¹)_{ij} ⟨c, c'⟩`,
/// extended as a biderivation with the shifted-degree signs of the necklace
/// bracket. On a full model the pairing includes the unit row, so the odd
/// generators `θ(i,1)` bracket nontrivially with the top-class generators.
pub struct PoissonStructure<'a> {
    pub rc: &'a RepComplex,
    pub pairing: &'a CyclicPairing,
    form_inverse: Vec<Vec<Q>>,
}

impl<'a> PoissonStructure<'a> {
    pub fn new(
        rc: &'a RepComplex,
        pairing: &'a CyclicPairing,
        form: &InvariantPolynomial,
    ) -> Result<Self, RepError> {
        if form.p != 2 {
            return Err(RepError::Structure(
                "the Poisson structure requires a bilinear invariant form".into(),
            ));
        }
        let n = rc.g.dim();
        let k = form.matrix(n);
        let mut form_inverse = vec![vec![Q::zero(); n]; n];
        for j in 0..n {
            let mut e = vec![Q::zero(); n];
            e[j] = qi(1);
            let col = k.solve(&e).ok_or(RepError::DegenerateForm)?;
            for (i, v) in col.into_iter().enumerate() {
                form_inverse[i][j] = v;
            }
        }
        Ok(PoissonStructure {
            rc,
            pairing,
            form_inverse,
        })
    }

    fn gen_bracket(&self, a: usize, b: usize) -> Q {
        let gd = self.rc.g.dim();
        let (ia, ib) = (a % gd, b % gd);
        let (da, db) = (self.rc.gen_degrees[a], self.rc.gen_degrees[b]);
        sign_pow(db * (da + 1))
            * &self.form_inverse[ia][ib]
            * self
                .pairing
                .value_ext(self.rc.letter_ext(a), self.rc.letter_ext(b))
    }

    fn bracket_mono(&self, a: &[usize], b: &[usize]) -> RepElement {
        let n = self.pairing.degree;
        let degs = &self.rc.gen_degrees;
        if a.is_empty() || b.is_empty() {
            return RepElement::zero();
        }
        if a.len() == 1 {
            // Leibniz in the second slot
            let mut out = RepElement::zero();
            let mut prefix = 0i64;
            for t in 0..b.len() {
                let coeff = self.gen_bracket(a[0], b[t]) * sign_pow((degs[a[0]] + n) * prefix);
                let mut rest = b[..t].to_vec();
                rest.extend_from_slice(&b[t + 1..]);
                out.add_seq(rest, coeff, degs);
                prefix += degs[b[t]];
            }
            return out;
        }
        // derivation in the first slot: {a₀·rest, B} = a₀{rest, B} +
        // (−1)^{|rest|(|B|+n)} {a₀, B}·rest
        let head = RepElement::generator(a[0]);
        let rest = &a[1..];
        let rest_deg: i64 = rest.iter().map(|&f| degs[f]).sum();
        let b_deg: i64 = b.iter().map(|&f| degs[f]).sum();
        let mut rest_el = RepElement::zero();
        rest_el.add_seq(rest.to_vec(), qi(1), degs);
        let first = head.mul(&self.bracket_mono(rest, b), degs);
        let second = self
            .bracket_mono(&a[..1], b)
            .mul(&rest_el, degs)
            .scaled(&sign_pow(rest_deg * (b_deg + n)));
        first.add(&second)
    }

    pub fn bracket(&self, x: &RepElement, y: &RepElement) -> RepElement {
        let mut out = RepElement::zero();
        for (ma, ca) in &x.terms {
            for (mb, cb) in &y.terms {
                out = out.add(&self.bracket_mono(&ma.0, &mb.0).scaled(&(ca * cb)));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// The universal representation and the Drinfeld trace
// ---------------------------------------------------------------------------

/// `π` of a Lie monomial: a `g`-indexed vector of polynomials, with
/// `π(v_c) = Σ_i e_i ⊗ θ_{i,c}` and `π([u, v]) = [πu, πv]`.
pub fn pi_tree(rc: &RepComplex, tree: &LieTree) -> Vec<RepElement> {
    let gd = rc.g.dim();
    match tree {
        LieTree::Leaf(l) => (0..gd)
            .map(|i| RepElement::generator(rc.flat(*l, i)))
            .collect(),
        LieTree::Bracket(u, v) => {
            let pu = pi_tree(rc, u);
            let pv = pi_tree(rc, v);
            let mut out = vec![RepElement::zero(); gd];
            for j in 0..gd {
                for k in 0..gd {
                    if pu[j].is_zero() || pv[k].is_zero() {
                        continue;
                    }
                    let prod = pu[j].mul(&pv[k], &rc.gen_degrees);
                    for (i, c) in rc.g.bracket(j, k) {
                        out[i] = out[i].add(&prod.scaled(&c));
                    }
                }
            }
            out
        }
    }
}

/// Express a Lie element (not necessarily length-homogeneous) in the Lyndon
/// tree basis, block by block.
pub fn express_lie(
    x: &TensorElement,
    alphabet: &Alphabet,
) -> Result<Vec<(Q, LieTree)>, RepError> {
    let mut blocks: BTreeMap<(u32, usize), TensorElement> = BTreeMap::new();
    for (w, c) in &x.terms {
        blocks
            .entry((w.weight(alphabet), w.len()))
            .or_insert_with(TensorElement::zero)
            .add_term(w.clone(), c.clone());
    }
    let mut out = Vec::new();
    for ((weight, len), part) in blocks {
        let candidates: Vec<_> = lyndon_basis(alphabet, weight)
            .into_iter()
            .filter(|b| b.tree.foliage().len() == len)
            .collect();
        out.extend(express_in_span(
            &part,
            candidates.iter().map(|b| (&b.element, &b.tree)),
        )?);
    }
    Ok(out)
}

/// Solve `part = Σ q_i elems_i` and return `(q_i, tree_i)` pairs.
fn express_in_span<'b>(
    part: &TensorElement,
    candidates: impl Iterator<Item = (&'b TensorElement, &'b LieTree)> + Clone,
) -> Result<Vec<(Q, LieTree)>, RepError> {
    let mut word_index: BTreeMap<Word, usize> = BTreeMap::new();
    let mut register = |e: &TensorElement| {
        for w in e.terms.keys() {
            let next = word_index.len();
            word_index.entry(w.clone()).or_insert(next);
        }
    };
    for (e, _) in candidates.clone() {
        register(e);
    }
    register(part);
    let dim = word_index.len();
    let vecify = |e: &TensorElement| {
        let mut v = vec![Q::zero(); dim];
        for (w, c) in &e.terms {
            v[word_index[w]] = c.clone();
        }
        v
    };
    let mut solver = Solver::new(dim);
    let mut kept: Vec<&LieTree> = Vec::new();
    let mut cols: Vec<Vec<Q>> = Vec::new();
    for (e, t) in candidates {
        let v = vecify(e);
        solver.insert(v.clone());
        kept.push(t);
        cols.push(v);
    }
    // coordinates against the (possibly dependent) candidate list: use a
    // fresh independent solver to express, then map back
    let mut indep = Solver::new(dim);
    let mut indep_idx: Vec<usize> = Vec::new();
    for (i, v) in cols.iter().enumerate() {
        if let crate::linalg::Inserted::Independent = indep.insert(v.clone()) {
            indep_idx.push(i);
        }
    }
    let coords = indep.express(&vecify(part)).ok_or(RepError::NotExpressible)?;
    Ok(coords
        .into_iter()
        .zip(indep_idx)
        .filter(|(q, _)| !q.is_zero())
        .map(|(q, i)| (q, kept[i].clone()))
        .collect())
}

/// A `Sym^p(L)` element presented as a combination of symmetrized products
/// of Lyndon-basis Lie monomials.
pub type SymLieExpression = Vec<(Q, Vec<LieTree>)>;

/// Express a `Sym^p(L)` element in the symmetrized Lyndon product basis.
pub fn express_in_sym_p(
    x: &TensorElement,
    p: usize,
    alphabet: &Alphabet,
) -> Result<SymLieExpression, RepError> {
    let mut blocks: BTreeMap<(u32, usize), TensorElement> = BTreeMap::new();
    for (w, c) in &x.terms {
        blocks
            .entry((w.weight(alphabet), w.len()))
            .or_insert_with(TensorElement::zero)
            .add_term(w.clone(), c.clone());
    }
    let mut out: SymLieExpression = Vec::new();
    for ((weight, len), part) in blocks {
        // all Lyndon elements of weight ≤ weight − p + 1
        let mut pool: Vec<crate::lie::LieBasisElement> = Vec::new();
        for w in 1..=weight.saturating_sub(p as u32 - 1) {
            pool.extend(lyndon_basis(alphabet, w));
        }
        // p-multisets with matching total weight and leaf count
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        let mut current = Vec::new();
        collect_multisets(&pool, p, 0, weight, len, &mut current, &mut tuples);
        let mut elems: Vec<TensorElement> = Vec::new();
        let mut trees: Vec<Vec<LieTree>> = Vec::new();
        for t in &tuples {
            let factors: Vec<TensorElement> =
                t.iter().map(|&i| pool[i].element.clone()).collect();
            let s = symmetrize(&factors, alphabet)?;
            if s.is_zero() {
                continue;
            }
            elems.push(s);
            trees.push(t.iter().map(|&i| pool[i].tree.clone()).collect());
        }
        let pairs = express_in_span_products(&part, &elems, &trees)?;
        out.extend(pairs);
    }
    Ok(out)
}

fn collect_multisets(
    pool: &[crate::lie::LieBasisElement],
    slots: usize,
    from: usize,
    weight_left: u32,
    len_left: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if slots == 0 {
        if weight_left == 0 && len_left == 0 {
            out.push(current.clone());
        }
        return;
    }
    for i in from..pool.len() {
        let w = pool[i].weight;
        let l = pool[i].tree.foliage().len();
        if w > weight_left || l > len_left {
            continue;
        }
        current.push(i);
        collect_multisets(pool, slots - 1, i, weight_left - w, len_left - l, current, out);
        current.pop();
    }
}

fn express_in_span_products(
    part: &TensorElement,
    elems: &[TensorElement],
    trees: &[Vec<LieTree>],
) -> Result<SymLieExpression, RepError> {
    let mut word_index: BTreeMap<Word, usize> = BTreeMap::new();
    for e in elems.iter().chain(std::iter::once(part)) {
        for w in e.terms.keys() {
            let next = word_index.len();
            word_index.entry(w.clone()).or_insert(next);
        }
    }
    let dim = word_index.len();
    let vecify = |e: &TensorElement| {
        let mut v = vec![Q::zero(); dim];
        for (w, c) in &e.terms {
            v[word_index[w]] = c.clone();
        }
        v
    };
    let mut indep = Solver::new(dim);
    let mut indep_idx = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        if let crate::linalg::Inserted::Independent = indep.insert(vecify(e)) {
            indep_idx.push(i);
        }
    }
    let coords = indep.express(&vecify(part)).ok_or(RepError::NotExpressible)?;
    Ok(coords
        .into_iter()
        .zip(indep_idx)
        .filter(|(q, _)| !q.is_zero())
        .map(|(q, i)| (q, trees[i].clone()))
        .collect())
}

/// The Drinfeld trace of a presented `Sym^p(L)` element:
/// `Tr(u₁⋯u_p) = Σ P(e_{j₁},…,e_{j_p}) · (πu₁)_{j₁} ⋯ (πu_p)_{j_p}`.
pub fn drinfeld_trace(
    rc: &RepComplex,
    p_form: &InvariantPolynomial,
    expr: &SymLieExpression,
) -> RepElement {
    let gd = rc.g.dim();
    let mut out = RepElement::zero();
    for (q, factors) in expr {
        let pis: Vec<Vec<RepElement>> = factors.iter().map(|t| pi_tree(rc, t)).collect();
        let mut tuple = vec![0usize; factors.len()];
        loop {
            let coeff = p_form.eval(&tuple) * q;
            if !coeff.is_zero() {
                let mut prod = RepElement::one();
                for (s, &j) in tuple.iter().enumerate() {
                    prod = prod.mul(&pis[s][j], &rc.gen_degrees);
                }
                out = out.add(&prod.scaled(&coeff));
            }
            // advance the tuple
            let mut s = 0;
            loop {
                if s == tuple.len() {
                    break;
                }
                tuple[s] += 1;
                if tuple[s] < gd {
                    break;
                }
                tuple[s] = 0;
                s += 1;
            }
            if s == tuple.len() {
                break;
            }
        }
    }
    out
}

/// Trace of the `Sym^p` Hodge component of a chain-level element.
pub fn trace_of_tensor(
    rc: &RepComplex,
    p_form: &InvariantPolynomial,
    x: &TensorElement,
) -> Result<RepElement, RepError> {
    let comp = hodge_project(x, p_form.p, &rc.cobar.alphabet);
    if comp.is_zero() {
        return Ok(RepElement::zero());
    }
    let expr = express_in_sym_p(&comp, p_form.p, &rc.cobar.alphabet)?;
    Ok(drinfeld_trace(rc, p_form, &expr))
}

// ---------------------------------------------------------------------------
// Trace-as-Lie-homomorphism verification
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct TracePair {
    pub a: String,
    pub b: String,
    pub defect_is_zero: bool,
    pub defect_is_boundary: bool,
}

#[derive(Debug)]
pub struct TraceReport {
    pub pairs: Vec<TracePair>,
    pub ok: bool,
}

/// For all pairs of `HC⁽²⁾` representatives in the window, check that
/// `Tr({α,β}) − {Tr α, Tr β}` is a boundary in the representation complex.
pub fn verify_trace_lie_hom(
    rc: &RepComplex,
    pairing: &CyclicPairing,
    form: &InvariantPolynomial,
    window: WeightWindow,
) -> Result<TraceReport, RepError> {
    let r = &rc.cobar;
    let alphabet = &r.alphabet;
    let poisson = PoissonStructure::new(rc, pairing, form)?;
    let homology = crate::hodge::cyclic_hodge_necklace(r, 2, window)
        .map_err(|e| RepError::Structure(format!("HC⁽²⁾ computation failed: {e}")))?;
    let mut classes: Vec<NecklaceElement> = Vec::new();
    for reps in homology.representatives.values() {
        classes.extend(reps.iter().cloned());
    }
    let mut pairs = Vec::new();
    let mut ok = true;
    for a in &classes {
        for b in &classes {
            let gamma = crate::bracket::necklace_bracket(a, b, pairing, alphabet);
            let gamma2 = hodge_project(&gamma.representative(), 2, alphabet);
            // {R⁽²⁾, R⁽²⁾} ⊆ R⁽²⁾: the weight-2 rule leaves no other component
            let remainder = gamma.representative().sub(&gamma2);
            if !crate::cyclic::natural_projection(&remainder, alphabet).is_zero() {
                return Err(RepError::Structure(
                    "bracket of weight-2 classes is not concentrated in Sym²".into(),
                ));
            }
            let lhs = trace_of_tensor(rc, form, &gamma.representative())?;
            let tr_a = trace_of_tensor(rc, form, &a.representative())?;
            let tr_b = trace_of_tensor(rc, form, &b.representative())?;
            let rhs = poisson.bracket(&tr_a, &tr_b);
            let defect = lhs.sub(&rhs);
            let defect_is_zero = defect.is_zero();
            let max_w = defect
                .terms
                .keys()
                .map(|m| rc.monomial_weight(m))
                .max()
                .unwrap_or(0);
            let defect_is_boundary = defect_is_zero || is_boundary(rc, &defect, max_w + 2)?;
            ok &= defect_is_boundary;
            pairs.push(TracePair {
                a: a.display(alphabet),
                b: b.display(alphabet),
                defect_is_zero,
                defect_is_boundary,
            });
        }
    }
    Ok(TraceReport { pairs, ok })
}

// ---------------------------------------------------------------------------
// The underived representation algebra presentation
// ---------------------------------------------------------------------------

/// Generators `a ⊗ g*` with the quadratic-linear relations expressing that
/// the generator matrices define a Lie homomorphism `a → g`.
pub struct RepAlgebraPresentation {
    /// The polynomial algebra on the generators, as the weight-1 part of the
    /// derived model (with zero differential).
    pub ring: RepComplex,
    pub relations: Vec<RepElement>,
}

pub fn rep_algebra(
    a: &LieAlgebraSpec,
    g: &LieAlgebraSpec,
) -> Result<RepAlgebraPresentation, RepError> {
    a.validate()?;
    if (0..a.dim()).any(|i| a.degree(i) != 0) {
        return Err(RepError::Structure(
            "the underived presentation requires an ordinary Lie algebra".into(),
        ));
    }
    let c1 = crate::cobar::ce_coalgebra(a, 1);
    let ring = derived_rep_complex(&c1, g)?;
    let gd = g.dim();
    let mut relations = Vec::new();
    for x in 0..a.dim() {
        for y in (x + 1)..a.dim() {
            for i in 0..gd {
                // Σ_{j,k} c^i_{jk} (x⊗ξ_j)(y⊗ξ_k) − Σ_z a^z_{xy} (z⊗ξ_i)
                let mut rel = RepElement::zero();
                for j in 0..gd {
                    for k in 0..gd {
                        for (ii, c) in g.bracket(j, k) {
                            if ii == i {
                                rel.add_seq(
                                    vec![ring.flat(x, j), ring.flat(y, k)],
                                    c,
                                    &ring.gen_degrees,
                                );
                            }
                        }
                    }
                }
                for (z, c) in a.bracket(x, y) {
                    rel.add_seq(vec![ring.flat(z, i)], -c, &ring.gen_degrees);
                }
                relations.push(rel);
            }
        }
    }
    Ok(RepAlgebraPresentation { ring, relations })
}

impl RepAlgebraPresentation {
    /// Dimension of the quotient at polynomial filtration ≤ `max_degree`:
    /// monomials of degree ≤ D modulo `{m · rel : deg m ≤ D − 2}`.
    pub fn quotient_dimension(&self, max_degree: u32) -> Result<usize, RepError> {
        let by_degree = self.ring.monomials_by_degree(max_degree);
        let empty = Vec::new();
        let monos = by_degree.get(&0).unwrap_or(&empty);
        let index: BTreeMap<SymMonomial, usize> = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut solver = Solver::new(monos.len());
        for m in monos {
            if m.0.len() + 2 > max_degree as usize {
                continue;
            }
            let mut me = RepElement::zero();
            me.terms.insert(m.clone(), qi(1));
            for rel in &self.relations {
                let prod = me.mul(rel, &self.ring.gen_degrees);
                let v = rep_coords(&prod, &index, monos.len()).ok_or_else(|| {
                    RepError::Structure("relation product leaves the truncation".into())
                })?;
                solver.insert(v);
            }
        }
        Ok(monos.len() - solver.rank())
    }
}
