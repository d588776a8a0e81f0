//! Polynomial differential forms on affine space — the classical de Rham /
//! Hochschild–Kostant–Rosenberg model, used as an independent oracle for the
//! homology bracket of the abelian fixtures.
//!
//! For `A = ℚ[x₁,…,x_n]` reduced cyclic homology is
//! `H̄C_m(A) ≅ Ω^m(A)/dΩ^{m−1}(A)` (the higher de Rham summands vanish on
//! affine space), and the piece with polynomial coefficients in `Sym^p(V)`
//! — the block `Ω^{m,(p)}/dΩ^{m−1,(p+1)}`, sitting in weight `p + m` of the
//! cyclic complex — corresponds to the `Sym^p` Hodge component computed by
//! the necklace engine on the Koszul-dual coalgebra `Sym^c(V[1])`.
//!
//! The constant volume form `ω = dx₁∧…∧dx_n` identifies polyvector fields
//! with forms, `Ψ: Θ_p ≅ Ω^{n−p}`, `Ψ(ξ) = ι_ξ ω`, and transports the
//! canonical Poisson structure to a bracket of forms
//!
//! ```text
//! {α, β} = (−1)^{(n−|α|−1)(n−|β|)} ι_η dα,   η = Ψ⁻¹(dβ).
//! ```
//!
//! On functions (`n = 2`) this is the symplectic Poisson bracket
//! `{f,g} = f_x g_y − f_y g_x`. It descends to `Ω^•/dΩ^{•−1}` on the nose:
//! replacing `β` by `β + dδ` leaves `dβ` unchanged, and `{dγ, β} = ±ι_η d²γ
//! = 0`. Hodge bookkeeping is automatic: both `d`'s lower the coefficient
//! degree by one each and the contraction adds them, so the bracket of
//! coefficient degrees `p` and `q` lands in coefficient degree `p + q − 2` —
//! the graded law `{HC⁽ᵖ⁾, HC⁽q⁾} ⊆ HC⁽ᵖ⁺q⁻²⁾` verified against the engine
//! below.

use crate::linalg::Solver;
use crate::scalar::{qi, sign_pow, Q};
use num::Zero;
use std::collections::BTreeMap;

/// Exponent vector of a monomial in `n` variables.
pub type Mono = Vec<u32>;
/// Strictly increasing list of form (or polyvector) directions.
pub type Dirs = Vec<usize>;

fn mono_degree(m: &Mono) -> u32 {
    m.iter().sum()
}

fn mul_mono(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Insert direction `i` into a sorted direction list (wedge from the left):
/// `dx_i ∧ dx_S`. Returns the merged list and the Koszul sign.
fn insert_dir(dirs: &[usize], i: usize) -> Option<(Dirs, i64)> {
    if dirs.contains(&i) {
        return None;
    }
    let pos = dirs.partition_point(|&j| j < i);
    let mut out = dirs.to_vec();
    out.insert(pos, i);
    Some((out, if pos % 2 == 0 { 1 } else { -1 }))
}

/// Contract direction `i` out of a sorted direction list:
/// `ι_{∂_i}(dx_S)`. Returns the remaining list and the Koszul sign.
fn remove_dir(dirs: &[usize], i: usize) -> Option<(Dirs, i64)> {
    let pos = dirs.iter().position(|&j| j == i)?;
    let mut out = dirs.to_vec();
    out.remove(pos);
    Some((out, if pos % 2 == 0 { 1 } else { -1 }))
}

/// A polynomial differential form `Σ c · x^e · dx_S` on `ℚ[x₁,…,x_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyForm {
    pub n: usize,
    pub terms: BTreeMap<(Mono, Dirs), Q>,
}

/// A polynomial polyvector field `Σ c · x^e · ∂_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVector {
    pub n: usize,
    pub terms: BTreeMap<(Mono, Dirs), Q>,
}

fn add_term(terms: &mut BTreeMap<(Mono, Dirs), Q>, mono: Mono, dirs: Dirs, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = terms.entry((mono, dirs)).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        let key = terms
            .iter()
            .find(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone())
            .expect("zero entry present");
        terms.remove(&key);
    }
}

impl PolyForm {
    pub fn zero(n: usize) -> Self {
        PolyForm {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// A single term `c · x^e · dx_S`.
    pub fn term(n: usize, mono: Mono, dirs: Dirs, c: Q) -> Self {
        assert_eq!(mono.len(), n);
        assert!(dirs.windows(2).all(|w| w[0] < w[1]) && dirs.iter().all(|&i| i < n));
        let mut f = PolyForm::zero(n);
        add_term(&mut f.terms, mono, dirs, c);
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: Mono, dirs: Dirs, c: Q) {
        add_term(&mut self.terms, mono, dirs, c);
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for ((m, d), c) in &other.terms {
            out.add_term(m.clone(), d.clone(), c.clone());
        }
        out
    }

    pub fn scaled(&self, s: &Q) -> PolyForm {
        let mut out = PolyForm::zero(self.n);
        for ((m, d), c) in &self.terms {
            out.add_term(m.clone(), d.clone(), c * s);
        }
        out
    }

    /// Form degree, when homogeneous (`None` for 0 or mixed).
    pub fn form_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|(_, d)| d.len());
        let first = it.next()?;
        it.all(|l| l == first).then_some(first)
    }

    /// Total weight (coefficient degree + form degree), when homogeneous.
    pub fn total_weight(&self) -> Option<u32> {
        let mut it = self
            .terms
            .keys()
            .map(|(m, d)| mono_degree(m) + d.len() as u32);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// The exterior (de Rham) differential.
    pub fn d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.n);
        for ((mono, dirs), c) in &self.terms {
            for i in 0..self.n {
                if mono[i] == 0 {
                    continue;
                }
                if let Some((merged, sign)) = insert_dir(dirs, i) {
                    let mut m = mono.clone();
                    m[i] -= 1;
                    out.add_term(m, merged, c * qi(i64::from(mono[i])) * qi(sign));
                }
            }
        }
        out
    }
}

impl PolyVector {
    pub fn zero(n: usize) -> Self {
        PolyVector {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(n: usize, mono: Mono, dirs: Dirs, c: Q) -> Self {
        assert_eq!(mono.len(), n);
        assert!(dirs.windows(2).all(|w| w[0] < w[1]) && dirs.iter().all(|&i| i < n));
        let mut v = PolyVector::zero(n);
        add_term(&mut v.terms, mono, dirs, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Contraction `ι_ξ α` of a polyvector field into a form, with
/// `ι_{∂_{i₁}∧…∧∂_{i_k}} = ι_{∂_{i₁}}∘…∘ι_{∂_{i_k}}` for `i₁ < … < i_k`.
/// Contraction with a 0-vector (a function) is multiplication.
pub fn iota(xi: &PolyVector, alpha: &PolyForm) -> PolyForm {
    assert_eq!(xi.n, alpha.n);
    let mut out = PolyForm::zero(alpha.n);
    for ((mv, dv), cv) in &xi.terms {
        'form: for ((mf, df), cf) in &alpha.terms {
            let mut dirs = df.clone();
            let mut sign = 1i64;
            for &i in dv.iter().rev() {
                match remove_dir(&dirs, i) {
                    Some((rest, s)) => {
                        dirs = rest;
                        sign *= s;
                    }
                    None => continue 'form,
                }
            }
            out.add_term(mul_mono(mv, mf), dirs, cv * cf * qi(sign));
        }
    }
    out
}

/// The constant volume form `ω = dx₁∧…∧dx_n`.
pub fn volume_form(n: usize) -> PolyForm {
    PolyForm::term(n, vec![0; n], (0..n).collect(), qi(1))
}

/// `Ψ(ξ) = ι_ξ ω : Θ_p ≅ Ω^{n−p}`.
pub fn psi(xi: &PolyVector) -> PolyForm {
    iota(xi, &volume_form(xi.n))
}

/// The inverse of `Ψ`, computed from the images of the basis polyvectors.
pub fn psi_inv(alpha: &PolyForm) -> PolyVector {
    let n = alpha.n;
    // basis ∂_S ↦ (complementary dirs, sign)
    let mut table: BTreeMap<Dirs, (Dirs, Q)> = BTreeMap::new();
    for mask in 0..(1u32 << n) {
        let s: Dirs = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let image = psi(&PolyVector::term(n, vec![0; n], s.clone(), qi(1)));
        let ((_, t), c) = image.terms.iter().next().expect("ι_{∂_S} ω is a basis form");
        table.insert(t.clone(), (s, c.clone()));
    }
    let mut out = PolyVector::zero(n);
    for ((mono, dirs), c) in &alpha.terms {
        let (s, sign) = &table[dirs];
        add_term(&mut out.terms, mono.clone(), s.clone(), c / sign);
    }
    out
}

/// The transported bracket `{α, β} = (−1)^{(n−|α|−1)(n−|β|)} ι_{Ψ⁻¹(dβ)} dα`
/// of forms homogeneous in form degree.
pub fn forms_bracket(alpha: &PolyForm, beta: &PolyForm) -> PolyForm {
    assert_eq!(alpha.n, beta.n);
    let n = alpha.n;
    if alpha.is_zero() || beta.is_zero() {
        return PolyForm::zero(n);
    }
    let m1 = alpha.form_degree().expect("first argument homogeneous") as i64;
    let m2 = beta.form_degree().expect("second argument homogeneous") as i64;
    let n = n as i64;
    let s = sign_pow((n - m1 - 1) * (n - m2));
    iota(&psi_inv(&beta.d()), &alpha.d()).scaled(&s)
}

// ---------------------------------------------------------------------------
// Weight blocks and the quotient Ω^m/dΩ^{m−1}
// ---------------------------------------------------------------------------

fn monos(n: usize, deg: u32) -> Vec<Mono> {
    if n == 1 {
        return vec![vec![deg]];
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in monos(n - 1, deg - first) {
            let mut m = vec![first];
            m.append(&mut rest);
            out.push(m);
        }
    }
    out
}

fn subsets(n: usize, m: usize) -> Vec<Dirs> {
    (0..(1u32 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect::<Dirs>())
        .filter(|s| s.len() == m)
        .collect()
}

/// Basis keys of the block `Ω^{m}` with coefficient degree `a`.
fn block_keys(n: usize, m: usize, a: u32) -> Vec<(Mono, Dirs)> {
    let mut out = Vec::new();
    for dirs in subsets(n, m) {
        for mono in monos(n, a) {
            out.push((mono, dirs.clone()));
        }
    }
    out
}

fn block_coords(alpha: &PolyForm, index: &BTreeMap<(Mono, Dirs), usize>) -> Vec<Q> {
    let mut v = vec![Q::zero(); index.len()];
    for (key, c) in &alpha.terms {
        v[index[key]] = c.clone();
    }
    v
}

/// Solver spanned by the exact forms `d(Ω^{m−1})` inside the block
/// `(form degree m, coefficient degree a)`. For `m = 0, a = 0` the span of
/// the constants is used instead (reduced homology kills the unit).
fn exact_solver(n: usize, m: usize, a: u32, index: &BTreeMap<(Mono, Dirs), usize>) -> Solver {
    let mut solver = Solver::new(index.len());
    if m == 0 {
        if a == 0 {
            solver.insert(block_coords(
                &PolyForm::term(n, vec![0; n], vec![], qi(1)),
                index,
            ));
        }
        return solver;
    }
    for (mono, dirs) in block_keys(n, m - 1, a + 1) {
        let df = PolyForm::term(n, mono, dirs, qi(1)).d();
        solver.insert(block_coords(&df, index));
    }
    solver
}

/// Representatives of a basis of `Ω^{m}_{(a)} / dΩ^{m−1}_{(a+1)}` — the
/// Hodge weight `a`, homological degree `m` part of `H̄C(ℚ[x₁,…,x_n])`
/// under HKR (it sits in weight `a + m` of the cyclic complex).
pub fn hkr_block_basis(n: usize, m: usize, a: u32) -> Vec<PolyForm> {
    let keys = block_keys(n, m, a);
    let index: BTreeMap<(Mono, Dirs), usize> =
        keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut solver = exact_solver(n, m, a, &index);
    let mut out = Vec::new();
    for (mono, dirs) in keys {
        let f = PolyForm::term(n, mono, dirs, qi(1));
        if let crate::linalg::Inserted::Independent = solver.insert(block_coords(&f, &index)) {
            out.push(f);
        }
    }
    out
}

/// Whether the class of `α` in `Ω^•/dΩ^{•−1}` (reduced: constants are zero)
/// vanishes. Checked block by block, so `α` need not be homogeneous.
pub fn reduced_class_is_zero(alpha: &PolyForm) -> bool {
    let n = alpha.n;
    let mut blocks: BTreeMap<(usize, u32), PolyForm> = BTreeMap::new();
    for ((mono, dirs), c) in &alpha.terms {
        blocks
            .entry((dirs.len(), mono_degree(mono)))
            .or_insert_with(|| PolyForm::zero(n))
            .add_term(mono.clone(), dirs.clone(), c.clone());
    }
    for ((m, a), part) in blocks {
        let keys = block_keys(n, m, a);
        let index: BTreeMap<(Mono, Dirs), usize> =
            keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let solver = exact_solver(n, m, a, &index);
        if !solver.contains(&block_coords(&part, &index)) {
            return false;
        }
    }
    true
}

/// Dimensions of the weight-`p` Hodge piece of `H̄C_•(ℚ[x₁,…,x_n])` by
/// homological degree, via HKR: degree `m` contributes
/// `dim Ω^{m,(p)}/dΩ^{m−1,(p+1)}`.
pub fn hkr_dims(n: usize, p: usize) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for m in 0..=n {
        let dim = hkr_block_basis(n, m, p as u32).len();
        if dim > 0 {
            out.insert(m as i64, dim);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobar::cobar;
    use crate::fixtures;
    use crate::hodge::WeightWindow;

    fn f2(coeffs: &[(i64, u32, u32)]) -> PolyForm {
        // Σ c·x^i y^j as a 0-form on ℚ[x,y]
        let mut f = PolyForm::zero(2);
        for &(c, i, j) in coeffs {
            f.add_term(vec![i, j], vec![], qi(c));
        }
        f
    }

    #[test]
    fn derham_calculus_identities() {
        // d² = 0 on every monomial form of ℚ[x,y,z] up to coefficient degree 3
        for n in 2..=3usize {
            for m in 0..=n {
                for a in 0..=3u32 {
                    for (mono, dirs) in block_keys(n, m, a) {
                        let f = PolyForm::term(n, mono, dirs, qi(1));
                        assert!(f.d().d().is_zero(), "d² ≠ 0 on {f:?}");
                    }
                }
            }
        }
        // Ψ∘Ψ⁻¹ = id on every basis form
        for n in 2..=3usize {
            for m in 0..=n {
                for (mono, dirs) in block_keys(n, m, 2) {
                    let f = PolyForm::term(n, mono, dirs, qi(7));
                    assert_eq!(psi(&psi_inv(&f)), f);
                }
            }
        }
        // contraction squares to zero for a constant vector field
        let n = 3;
        let xi = PolyVector::term(n, vec![0; n], vec![1], qi(1));
        for m in 0..=n {
            for (mono, dirs) in block_keys(n, m, 1) {
                let f = PolyForm::term(n, mono, dirs, qi(1));
                assert!(iota(&xi, &iota(&xi, &f)).is_zero());
            }
        }
    }

    #[test]
    fn poisson_bracket_on_functions() {
        let x = f2(&[(1, 1, 0)]);
        let y = f2(&[(1, 0, 1)]);
        assert_eq!(forms_bracket(&x, &y), f2(&[(1, 0, 0)]));
        assert_eq!(forms_bracket(&y, &x), f2(&[(-1, 0, 0)]));

        // {f,g} = f_x g_y − f_y g_x on samples, plus Leibniz and Jacobi
        let f = f2(&[(2, 3, 0), (1, 1, 1)]);
        let g = f2(&[(1, 0, 2), (-3, 2, 1)]);
        let h = f2(&[(5, 1, 2), (1, 2, 0)]);
        let classical = |u: &PolyForm, v: &PolyForm| {
            let du = u.d();
            let dv = v.d();
            let pick = |w: &PolyForm, i: usize| {
                let mut out = PolyForm::zero(2);
                for ((m, d), c) in &w.terms {
                    if d == &vec![i] {
                        out.add_term(m.clone(), vec![], c.clone());
                    }
                }
                out
            };
            let prod = |u: &PolyForm, v: &PolyForm| {
                let mut out = PolyForm::zero(2);
                for ((mu, _), cu) in &u.terms {
                    for ((mv, _), cv) in &v.terms {
                        out.add_term(mul_mono(mu, mv), vec![], cu * cv);
                    }
                }
                out
            };
            prod(&pick(&du, 0), &pick(&dv, 1)).add(&prod(&pick(&du, 1), &pick(&dv, 0)).scaled(&qi(-1)))
        };
        for (u, v) in [(&f, &g), (&g, &h), (&f, &h)] {
            assert_eq!(forms_bracket(u, v), classical(u, v));
        }
        // Leibniz {f, g·h} = {f,g}·h + g·{f,h}
        let prod = |u: &PolyForm, v: &PolyForm| {
            let mut out = PolyForm::zero(2);
            for ((mu, _), cu) in &u.terms {
                for ((mv, _), cv) in &v.terms {
                    out.add_term(mul_mono(mu, mv), vec![], cu * cv);
                }
            }
            out
        };
        let lhs = forms_bracket(&f, &prod(&g, &h));
        let rhs = prod(&forms_bracket(&f, &g), &h).add(&prod(&g, &forms_bracket(&f, &h)));
        assert_eq!(lhs, rhs);
        // Jacobi on functions is strict
        let jac = forms_bracket(&f, &forms_bracket(&g, &h))
            .add(&forms_bracket(&g, &forms_bracket(&h, &f)))
            .add(&forms_bracket(&h, &forms_bracket(&f, &g)));
        assert!(jac.is_zero());
    }

    #[test]
    fn bracket_descends_and_is_antisymmetric_modulo_exact() {
        // replacing an argument by an exact form changes nothing at all
        let beta = PolyForm::term(2, vec![2, 0], vec![1], qi(1)); // x² dy
        let gamma = PolyForm::term(2, vec![1, 2], vec![], qi(1)); // x y²
        let alpha = f2(&[(1, 3, 0), (2, 1, 2)]);
        assert_eq!(
            forms_bracket(&alpha, &beta.add(&gamma.d())),
            forms_bracket(&alpha, &beta)
        );
        assert!(forms_bracket(&gamma.d(), &beta).is_zero());

        // antisymmetry modulo exact forms across mixed degrees
        let samples = [
            f2(&[(1, 2, 1)]),
            PolyForm::term(2, vec![1, 1], vec![0], qi(1)),
            PolyForm::term(2, vec![0, 2], vec![1], qi(3)),
        ];
        for a in &samples {
            for b in &samples {
                let s = forms_bracket(a, b).add(&forms_bracket(b, a));
                assert!(reduced_class_is_zero(&s), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn bracket_lands_exactly_in_weight_p_plus_q_minus_2() {
        // classes of Hodge weight p and degree m live in Ω^{m,(p)}
        for p in 1..=4usize {
            for q in 1..=4usize {
                let mut nonzero_fn = false;
                for m1 in 0..=1usize {
                    for m2 in 0..=1usize {
                        let ba = hkr_block_basis(2, m1, p as u32);
                        let bb = hkr_block_basis(2, m2, q as u32);
                        for a in &ba {
                            for b in &bb {
                                let br = forms_bracket(a, b);
                                if br.is_zero() {
                                    continue;
                                }
                                assert_eq!(
                                    br.total_weight(),
                                    Some((p + q - 2 + m1 + m2) as u32),
                                    "{a:?} vs {b:?}"
                                );
                                assert_eq!(br.form_degree(), Some(m1 + m2));
                                if m1 == 0 && m2 == 0 && !reduced_class_is_zero(&br) {
                                    nonzero_fn = true;
                                }
                            }
                        }
                    }
                }
                // function-function brackets survive in homology exactly when
                // the target weight p+q−2 is positive (constants die)
                assert_eq!(nonzero_fn, p + q >= 3, "p={p}, q={q}");
            }
        }
    }

    #[test]
    fn hkr_dimensions_match_the_necklace_engine() {
        let (c, _) = fixtures::abelian_dual();
        let r = cobar(&c).unwrap();
        for p in 1..=3usize {
            let engine = crate::hodge::cyclic_hodge(&r, p, WeightWindow::UpTo(p as u32 + 2)).unwrap();
            let oracle = hkr_dims(2, p);
            assert_eq!(engine, oracle, "p = {p}");
        }
        // and the closed form for n = 2: degree 0 has dim p+1, degree 1 has p
        for p in 1..=4usize {
            let dims = hkr_dims(2, p);
            assert_eq!(dims.get(&0), Some(&(p + 1)));
            assert_eq!(dims.get(&1), Some(&p));
            assert_eq!(dims.get(&2), None);
        }
    }

    #[test]
    fn homology_bracket_pattern_matches_the_necklace_engine() {
        let (c, pairing) = fixtures::abelian_dual();
        let r = cobar(&c).unwrap();
        let entries = crate::bracket::homology_filtration_report(
            &r,
            &pairing,
            WeightWindow::UpTo(3),
            WeightWindow::UpTo(4),
            3,
        )
        .unwrap();
        // does the induced bilinear map {HC^{(q)}_{da}, HC^{(p)}_{db}} vanish?
        let mut engine: BTreeMap<(usize, usize, i64, i64), bool> = BTreeMap::new();
        for e in &entries {
            *engine.entry((e.q, e.p, e.deg_a, e.deg_b)).or_insert(false) |=
                !e.support.is_empty();
        }
        assert!(!engine.is_empty());
        assert!(engine.values().any(|&v| v));
        for (&(q, p, da, db), &engine_nonzero) in &engine {
            let (ma, mb) = (da as usize, db as usize);
            let ba = hkr_block_basis(2, ma, q as u32);
            let bb = hkr_block_basis(2, mb, p as u32);
            assert_eq!(ba.len() * bb.len() > 0, true, "engine found classes we lack");
            let oracle_nonzero = ba.iter().any(|a| {
                bb.iter()
                    .any(|b| !reduced_class_is_zero(&forms_bracket(a, b)))
            });
            assert_eq!(
                oracle_nonzero, engine_nonzero,
                "q={q}, p={p}, deg_a={da}, deg_b={db}"
            );
        }
    }
}
