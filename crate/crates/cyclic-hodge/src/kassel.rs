//! The second, independent route to the Hodge pieces: Chevalley–Eilenberg
//! complexes with `Sym^p(a)` coefficients and the de Rham differential
//! between them, forming the mixed complex `(Ω_{Sym(a)}, δ, d)`.
//!
//! For a finite-dimensional ordinary Lie algebra `a`:
//! * `HH⁽ᵖ⁾_•(Ua) ≅ H_•(a; Sym^p(a))` — homology of the CE complex with
//!   coefficients in the `p`-th symmetric power of the adjoint module;
//! * `HC⁽ᵖ⁾_•(a) ≅ H_{•+1}[ker(d : C(a;Sym^{p−1}a) → C(a;Sym^{p−2}a)[−1])]`
//!   where `d` is the de Rham differential (with `Sym^{−1} = 0`).
//!
//! These are computed by exact nullspace extraction and used as a
//! cross-validation oracle against the cobar-side Hodge complexes: the two
//! routes share no code beyond the linear algebra, so a dimension mismatch
//! at any `(p, degree)` localizes a bug to exactly one route.

use crate::hodge::WeightWindow;
use crate::input::LieAlgebraSpec;
use crate::linalg::{
    homology, ChainComplex, GradedSpace, LinalgError, LinearMap, Solver, SparseMat,
};
use crate::scalar::{sign_pow, Q};
use itertools::Itertools;
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KasselError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Input(#[from] crate::input::InputError),
    #[error("{0}")]
    Structure(String),
}

/// A basis monomial `x_{s₁}⋯x_{s_p} ⊗ x_{e₁}∧…∧x_{e_k}` of
/// `Sym^p(a) ⊗ Λ^k(a)`: `sym` non-decreasing, `ext` strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CeBasisElement {
    pub sym: Vec<usize>,
    pub ext: Vec<usize>,
}

impl CeBasisElement {
    pub fn label(&self, a: &LieAlgebraSpec) -> String {
        let sym = if self.sym.is_empty() {
            "1".to_string()
        } else {
            self.sym.iter().map(|&i| a.label(i)).join("·")
        };
        let ext = if self.ext.is_empty() {
            "1".to_string()
        } else {
            self.ext.iter().map(|&i| a.label(i)).join("∧")
        };
        format!("{sym}⊗{ext}")
    }
}

/// An element of `Sym^p(a) ⊗ Λ^•(a)` with exact rational coefficients.
type CeElement = BTreeMap<CeBasisElement, Q>;

fn add_term(out: &mut CeElement, elt: CeBasisElement, coeff: Q) {
    if coeff.is_zero() {
        return;
    }
    let e = out.entry(elt).or_insert_with(Q::zero);
    *e += coeff;
    if e.is_zero() {
        out.retain(|_, v| !v.is_zero());
    }
}

/// Normalize an exterior sequence: sorted form and transposition sign,
/// `None` if an index repeats.
fn ext_normalize(mut seq: Vec<usize>) -> Option<(Vec<usize>, Q)> {
    let mut swaps = 0u32;
    // insertion sort, counting transpositions
    for i in 1..seq.len() {
        let mut j = i;
        while j > 0 && seq[j - 1] > seq[j] {
            seq.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    if seq.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((seq, sign_pow(i64::from(swaps))))
}

/// Right adjoint action of `x` on a `Sym^p` monomial, as a derivation:
/// `(y₁⋯y_p)·x = Σ_l y₁⋯[y_l,x]⋯y_p` (the CE homology differential uses
/// the right-module convention).
fn adjoint_on_sym(a: &LieAlgebraSpec, x: usize, sym: &[usize]) -> Vec<(Vec<usize>, Q)> {
    let mut out: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
    for l in 0..sym.len() {
        for (z, c) in a.bracket(sym[l], x) {
            let mut m = sym.to_vec();
            m[l] = z;
            m.sort_unstable();
            let e = out.entry(m).or_insert_with(Q::zero);
            *e += c;
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// The CE differential with `Sym^p(a)` coefficients:
/// `δ(m ⊗ x₁∧…∧x_k) = Σ_i (−1)^{i+1} (m·x_i) ⊗ (…x̂_i…)
///  + Σ_{s<t} (−1)^{s+t} m ⊗ ([x_s,x_t] ∧ …x̂_s…x̂_t…)`.
fn ce_differential(a: &LieAlgebraSpec, elt: &CeBasisElement) -> CeElement {
    let mut out = CeElement::new();
    let k = elt.ext.len();
    for i in 0..k {
        let sign = sign_pow(i as i64); // (−1)^{i+1} with 1-based i
        let mut ext = elt.ext.clone();
        let x = ext.remove(i);
        for (sym, c) in adjoint_on_sym(a, x, &elt.sym) {
            add_term(&mut out, CeBasisElement { sym, ext: ext.clone() }, c * &sign);
        }
    }
    for s in 0..k {
        for t in (s + 1)..k {
            let sign = sign_pow((s + 1 + t + 1) as i64);
            let mut rest: Vec<usize> = elt.ext.clone();
            // remove t first so s's index stays valid
            let xt = rest.remove(t);
            let xs = rest.remove(s);
            for (z, c) in a.bracket(xs, xt) {
                let mut seq = vec![z];
                seq.extend_from_slice(&rest);
                if let Some((ext, esign)) = ext_normalize(seq) {
                    add_term(
                        &mut out,
                        CeBasisElement { sym: elt.sym.clone(), ext },
                        &c * &sign * esign,
                    );
                }
            }
        }
    }
    out
}

/// The de Rham differential `Sym^p ⊗ Λ^k → Sym^{p−1} ⊗ Λ^{k+1}`:
/// `x₁⋯x_p ⊗ ξ ↦ Σ_i x₁⋯x̂_i⋯x_p ⊗ (x_i ∧ ξ)`.
fn derham_of(elt: &CeBasisElement) -> CeElement {
    let mut out = CeElement::new();
    for i in 0..elt.sym.len() {
        let mut sym = elt.sym.clone();
        let x = sym.remove(i);
        let mut seq = vec![x];
        seq.extend_from_slice(&elt.ext);
        if let Some((ext, sign)) = ext_normalize(seq) {
            add_term(&mut out, CeBasisElement { sym, ext }, sign);
        }
    }
    out
}

/// The CE complex `C(a; Sym^p(a)) = Sym^p(a) ⊗ Λ^•(a)` (homological degree
/// = exterior degree) with its enumerated monomial basis.
pub struct CeCoefficientComplex {
    pub p: usize,
    pub complex: ChainComplex,
    pub basis: BTreeMap<i64, Vec<CeBasisElement>>,
}

impl CeCoefficientComplex {
    fn coords(&self, degree: i64, x: &CeElement) -> Option<Vec<Q>> {
        let basis = self.basis.get(&degree)?;
        let mut v = vec![Q::zero(); basis.len()];
        for (b, c) in x {
            let i = basis.binary_search(b).ok()?;
            v[i] = c.clone();
        }
        Some(v)
    }
}

/// Build `C(a; Sym^p(a))` with the adjoint action on coefficients; the
/// `δ² = 0` gate is enforced by the chain-complex constructor.
pub fn ce_with_coefficients(
    a: &LieAlgebraSpec,
    p: usize,
) -> Result<CeCoefficientComplex, KasselError> {
    a.validate()?;
    if a.basis.iter().any(|(_, d)| *d != 0) {
        return Err(KasselError::Structure(
            "the Chevalley–Eilenberg coefficient route supports ordinary (degree-0) Lie algebras"
                .into(),
        ));
    }
    let m = a.dim();
    let mut basis: BTreeMap<i64, Vec<CeBasisElement>> = BTreeMap::new();
    let mut blocks: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for k in 0..=m {
        let mut elts = Vec::new();
        for sym in (0..m).combinations_with_replacement(p) {
            for ext in (0..m).combinations(k) {
                elts.push(CeBasisElement { sym: sym.clone(), ext });
            }
        }
        elts.sort();
        blocks.insert(k as i64, elts.iter().map(|e| e.label(a)).collect());
        basis.insert(k as i64, elts);
    }
    let space = GradedSpace::from_blocks(blocks);
    let mut diff = LinearMap::zero(space.clone(), space.clone(), -1);
    let out = CeCoefficientComplex {
        p,
        complex: ChainComplex::empty(),
        basis,
    };
    for (k, elts) in &out.basis {
        if *k == 0 {
            continue;
        }
        let rows = space.dim(k - 1);
        let mut cols = Vec::with_capacity(elts.len());
        for e in elts {
            let image = ce_differential(a, e);
            let v = out
                .coords(k - 1, &image)
                .ok_or_else(|| KasselError::Structure("differential leaves the basis".into()))?;
            debug_assert_eq!(v.len(), rows);
            cols.push(v);
        }
        diff.set_block(*k, SparseMat::from_columns(rows, cols));
    }
    let complex = ChainComplex::new(space, diff)?;
    Ok(CeCoefficientComplex { complex, ..out })
}

/// The de Rham map `d : C(a; Sym^p) → C(a; Sym^{p−1})[−1]` as a degree `+1`
/// linear map between the two CE complexes. Anticommutes with `δ` and
/// squares to zero (mixed-complex axioms, checked in the tests).
pub fn derham_map(
    source: &CeCoefficientComplex,
    target: &CeCoefficientComplex,
) -> Result<LinearMap, KasselError> {
    if source.p != target.p + 1 {
        return Err(KasselError::Structure(format!(
            "de Rham map lowers the symmetric weight by one (got {} → {})",
            source.p, target.p
        )));
    }
    let mut map = LinearMap::zero(
        source.complex.space.clone(),
        target.complex.space.clone(),
        1,
    );
    for (k, elts) in &source.basis {
        let rows = target.complex.space.dim(k + 1);
        let mut cols = Vec::with_capacity(elts.len());
        for e in elts {
            let image = derham_of(e);
            let v = if image.is_empty() {
                vec![Q::zero(); rows]
            } else {
                target.coords(k + 1, &image).ok_or_else(|| {
                    KasselError::Structure("de Rham image leaves the basis".into())
                })?
            };
            cols.push(v);
        }
        map.set_block(*k, SparseMat::from_columns(rows, cols));
    }
    Ok(map)
}

/// `HH⁽ᵖ⁾_•(Ua) ≅ H_•(a; Sym^p(a))`: homology dimensions per degree.
pub fn hh_via_coefficients(
    a: &LieAlgebraSpec,
    p: usize,
) -> Result<BTreeMap<i64, usize>, KasselError> {
    let ce = ce_with_coefficients(a, p)?;
    let mut out = BTreeMap::new();
    for d in ce.complex.space.degrees().collect::<Vec<_>>() {
        let (dim, _) = homology(&ce.complex, d);
        if dim > 0 {
            out.insert(d, dim);
        }
    }
    Ok(out)
}

/// `HC⁽ᵖ⁾_•(a) ≅ H_{•+1}[ker(d : C(a;Sym^{p−1}) → C(a;Sym^{p−2})[−1])]`:
/// the kernel subcomplex is extracted degreewise by exact nullspace
/// computation, `δ` is restricted to it, and the homology is shifted down
/// by one degree. For `p = 1` the kernel is the whole of `C(a; k)`.
pub fn hc_via_kernel(a: &LieAlgebraSpec, p: usize) -> Result<BTreeMap<i64, usize>, KasselError> {
    if p == 0 {
        return Ok(BTreeMap::new());
    }
    let source = ce_with_coefficients(a, p - 1)?;
    let kernel_complex = if p == 1 {
        source.complex
    } else {
        let target = ce_with_coefficients(a, p - 2)?;
        let d = derham_map(&source, &target)?;
        // kernel basis per degree
        let mut kernels: BTreeMap<i64, Vec<Vec<Q>>> = BTreeMap::new();
        let mut blocks: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for k in source.complex.space.degrees().collect::<Vec<_>>() {
            let ker = d.block(k).kernel_basis();
            blocks.insert(k, (0..ker.len()).map(|i| format!("ker{k}:{i}")).collect());
            kernels.insert(k, ker);
        }
        let space = GradedSpace::from_blocks(blocks);
        let mut diff = LinearMap::zero(space.clone(), space.clone(), -1);
        let empty: Vec<Vec<Q>> = Vec::new();
        for (k, ker) in &kernels {
            let below = kernels.get(&(k - 1)).unwrap_or(&empty);
            let dim_below = source.complex.space.dim(k - 1);
            let mut solver = Solver::new(dim_below);
            for v in below {
                solver.insert(v.clone());
            }
            let delta = source.complex.differential.block(*k);
            let mut cols = Vec::with_capacity(ker.len());
            for v in ker {
                let image = delta.mul_vec(v);
                let coords = solver.express(&image).ok_or_else(|| {
                    KasselError::Structure(
                        "δ does not preserve ker(d): mixed-complex axiom violated".into(),
                    )
                })?;
                cols.push(coords);
            }
            diff.set_block(*k, SparseMat::from_columns(below.len(), cols));
        }
        ChainComplex::new(space, diff)?
    };
    let mut out = BTreeMap::new();
    for k in kernel_complex.space.degrees().collect::<Vec<_>>() {
        // k = 0 would land in HC degree −1; cyclic homology is reduced, so
        // only non-negative degrees are reported
        if k == 0 {
            continue;
        }
        let (dim, _) = homology(&kernel_complex, k);
        if dim > 0 {
            out.insert(k - 1, dim);
        }
    }
    Ok(out)
}

/// Exactness of the de Rham rows `Sym^p⊗Λ^k → Sym^{p−1}⊗Λ^{k+1} → …` of
/// fixed total weight `p + k = w`: returns the homology defects (all zero
/// for `w ≥ 1` by the acyclicity of the polynomial de Rham complex).
pub fn derham_row_defects(a: &LieAlgebraSpec, w: usize) -> Result<Vec<usize>, KasselError> {
    let m = a.dim();
    let complexes: Vec<CeCoefficientComplex> = (0..=w)
        .map(|p| ce_with_coefficients(a, p))
        .collect::<Result<_, _>>()?;
    let mut defects = Vec::new();
    // position j in the row: Sym^{w−j} ⊗ Λ^j, for j = 0..=min(w, m)
    let jmax = w.min(m);
    for j in 0..=jmax {
        let p = w - j;
        let incoming = if p + 1 <= w {
            derham_map(&complexes[p + 1], &complexes[p])?.block((j as i64) - 1)
        } else {
            SparseMat::zero(complexes[p].complex.space.dim(j as i64), 0)
        };
        let outgoing = if p >= 1 && j < m {
            derham_map(&complexes[p], &complexes[p - 1])?.block(j as i64)
        } else {
            SparseMat::zero(0, complexes[p].complex.space.dim(j as i64))
        };
        let dim = complexes[p].complex.space.dim(j as i64);
        let cycles = dim - outgoing.rank();
        defects.push(cycles - incoming.rank());
    }
    Ok(defects)
}

/// One row of the two-route comparison.
#[derive(Debug, Clone)]
pub struct CrossRow {
    pub p: usize,
    pub degree: i64,
    pub kassel_dim: usize,
    pub cobar_dim: usize,
    pub equal: bool,
}

/// Compare `HC⁽ᵖ⁾` dimensions from this module against the cobar-side Hodge
/// complexes, per `(p, degree)` with `p ≤ max_p` and `degree ≤ max_degree`.
/// The cobar route is truncated to `window`; this route is exact, so any
/// disagreement within the safe range indicates a bug in exactly one route.
pub fn cross_validate(
    a: &LieAlgebraSpec,
    max_p: usize,
    max_degree: i64,
    window: WeightWindow,
) -> Result<Vec<CrossRow>, KasselError> {
    let c = crate::cobar::ce_coalgebra(a, window.max());
    let r = crate::cobar::cobar(&c)
        .map_err(|e| KasselError::Structure(format!("cobar side failed: {e}")))?;
    let mut out = Vec::new();
    for p in 1..=max_p {
        let kassel = hc_via_kernel(a, p)?;
        let cobar_dims = crate::hodge::cyclic_hodge(&r, p, window)
            .map_err(|e| KasselError::Structure(format!("cobar side failed: {e}")))?;
        for degree in 0..=max_degree {
            let kd = kassel.get(&degree).copied().unwrap_or(0);
            let cd = cobar_dims.get(&degree).copied().unwrap_or(0);
            out.push(CrossRow {
                p,
                degree,
                kassel_dim: kd,
                cobar_dim: cd,
                equal: kd == cd,
            });
        }
    }
    Ok(out)
}

/// Same comparison for `HH⁽ᵖ⁾`: `H_•(a; Sym^p a)` against the cobar-side
/// two-column complex.
pub fn cross_validate_hochschild(
    a: &LieAlgebraSpec,
    max_p: usize,
    max_degree: i64,
    window: WeightWindow,
) -> Result<Vec<CrossRow>, KasselError> {
    let c = crate::cobar::ce_coalgebra(a, window.max());
    let r = crate::cobar::cobar(&c)
        .map_err(|e| KasselError::Structure(format!("cobar side failed: {e}")))?;
    let mut out = Vec::new();
    for p in 1..=max_p {
        let kassel = hh_via_coefficients(a, p)?;
        let cobar_dims = crate::hodge::hochschild_hodge(&r, p, window)
            .map_err(|e| KasselError::Structure(format!("cobar side failed: {e}")))?;
        for degree in 0..=max_degree {
            let kd = kassel.get(&degree).copied().unwrap_or(0);
            let cd = cobar_dims.get(&degree).copied().unwrap_or(0);
            out.push(CrossRow {
                p,
                degree,
                kassel_dim: kd,
                cobar_dim: cd,
                equal: kd == cd,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn mixed_complex_axioms_hold() {
        for a in [fixtures::abelian(2), fixtures::sl2()] {
            for p in 1..=3usize {
                let src = ce_with_coefficients(&a, p).unwrap();
                let tgt = ce_with_coefficients(&a, p - 1).unwrap();
                let d = derham_map(&src, &tgt).unwrap();
                // δd + dδ = 0
                let anti = d
                    .compose(&src.complex.differential)
                    .unwrap()
                    .add(&tgt.complex.differential.compose(&d).unwrap());
                assert!(anti.is_zero(), "{}: δd + dδ ≠ 0 at p = {p}", a.name);
                // d² = 0
                if p >= 2 {
                    let tgt2 = ce_with_coefficients(&a, p - 2).unwrap();
                    let d2 = derham_map(&tgt, &tgt2).unwrap();
                    assert!(d2.compose(&d).unwrap().is_zero(), "{}: d² ≠ 0", a.name);
                }
            }
        }
    }

    #[test]
    fn derham_rows_are_exact_in_positive_weight() {
        for a in [fixtures::abelian(1), fixtures::abelian(2), fixtures::sl2()] {
            for w in 1..=4usize {
                let defects = derham_row_defects(&a, w).unwrap();
                assert!(
                    defects.iter().all(|&d| d == 0),
                    "{}: row {w} defects {defects:?}",
                    a.name
                );
            }
        }
    }

    #[test]
    fn abelian_dimension_counts() {
        // abelian dim-1: Sym^p ⊗ Λ^k is 1-dimensional for k ≤ 1, δ = 0
        let a1 = fixtures::abelian(1);
        for p in 1..=4usize {
            assert_eq!(
                hh_via_coefficients(&a1, p).unwrap(),
                BTreeMap::from([(0, 1), (1, 1)])
            );
            // HC⁽ᵖ⁾₀ = k, nothing above
            assert_eq!(hc_via_kernel(&a1, p).unwrap(), BTreeMap::from([(0, 1)]));
        }
        // abelian dim-2, p = 2: dims (3, 6, 3), all surviving (δ = 0)
        let a2 = fixtures::abelian(2);
        assert_eq!(
            hh_via_coefficients(&a2, 2).unwrap(),
            BTreeMap::from([(0, 3), (1, 6), (2, 3)])
        );
    }

    #[test]
    fn sl2_homology_matches_whitehead_and_shift() {
        let a = fixtures::sl2();
        // H_•(sl₂; sl₂) = 0 (Whitehead), computed not assumed
        assert!(hh_via_coefficients(&a, 1).unwrap().is_empty());
        // HC⁽¹⁾_• = H_{•+1}(sl₂; k): H₃ = k gives dim 1 in degree 2
        assert_eq!(hc_via_kernel(&a, 1).unwrap(), BTreeMap::from([(2, 1)]));
    }

    #[test]
    fn two_routes_agree() {
        use WeightWindow::UpTo;
        let cases = [
            (fixtures::abelian(1), 4usize, 3i64, UpTo(6)),
            (fixtures::abelian(2), 3, 3, UpTo(5)),
            (fixtures::sl2(), 2, 3, UpTo(5)),
        ];
        for (a, max_p, max_degree, window) in cases {
            for row in cross_validate(&a, max_p, max_degree, window).unwrap() {
                assert!(
                    row.equal,
                    "{}: HC⁽{}⁾ degree {}: kassel {} ≠ cobar {}",
                    a.name, row.p, row.degree, row.kassel_dim, row.cobar_dim
                );
            }
            for row in cross_validate_hochschild(&a, max_p, max_degree, window).unwrap() {
                assert!(
                    row.equal,
                    "{}: HH⁽{}⁾ degree {}: kassel {} ≠ cobar {}",
                    a.name, row.p, row.degree, row.kassel_dim, row.cobar_dim
                );
            }
        }
    }
}
